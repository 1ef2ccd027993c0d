#pragma once

#include <string>

#include "strat/dg.hpp"
#include "strat/support.hpp"

namespace strat {

/// Schema version stamped on every emitted document.
inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

std::string matrix_to_json(const Mat& m);
Mat matrix_from_json(const std::string& text, const Field& f);

std::string module_to_json(const FdModule& m);
FdModule module_from_json(const std::string& text);

std::string embedding_to_json(const SubgroupEmbedding& e);
SubgroupEmbedding embedding_from_json(const std::string& text, int p);

std::string ideal_to_json(const Ideal& i);
Ideal ideal_from_json(const std::string& text);

std::string variety_to_json(const Variety& v);

/// Ring descriptor, generator degrees and the presentation matrix in the
/// polynomial text format.
std::string ext_presentation_to_json(const ExtPresentation& p);

/// Per-degree dimension table and differential matrices of a dg module.
std::string dg_module_debug_json(const DgModule& m);

/// FNV-1a over the canonical JSON, for the report input digests.
std::string content_hash(const std::string& canonical_json);

}  // namespace strat
