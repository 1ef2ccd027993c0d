#pragma once

#include <string>

#include "strat/resolution.hpp"

namespace strat {

/// Support variety as a homogeneous ideal representative; the semantics is
/// the zero set over the algebraic closure, so equality is mutual radical
/// membership of generators.
struct Variety {
    Ring ring;
    Ideal ideal;
};

Variety variety_everything(const Ring& r);               // V(0)
Variety variety_irrelevant(const Ring& r);               // V(x_1..x_r)
Variety variety_of(const Ideal& i);

bool variety_equals(const Variety& a, const Variety& b);
/// a ⊆ b as zero sets (every generator of b's ideal is in the radical of a's).
bool variety_subset(const Variety& a, const Variety& b);
Variety variety_intersect(const Variety& a, const Variety& b);  // V(sum)
Variety variety_union(const Variety& a, const Variety& b);      // V(intersection)
/// Empty in Proj: every ring variable lies in the radical.
bool is_proj_empty(const Variety& a);

std::vector<std::string> variety_generator_strings(const Variety& v);

/// V_E(m) via the 0-th Fitting ideal of the truncated Ext presentation;
/// projective modules give the irrelevant variety.
struct SupportResult {
    Variety variety;
    int D_used = 0;
    bool stable = false;
};
SupportResult support_of_module(const FdModule& m, int D = 0);

/// Rank-variety oracle: the ideal of (dim/p x dim/p) symbolic minors of
/// (sum_i x_i Z_i)^{p-1}, after a variety-preserving simultaneous strict
/// triangularization; V(0) when p does not divide dim.
Variety rank_variety_oracle(const FdModule& m);

/// Restriction map on reduced cohomology induced by a subgroup embedding
/// (linear substitution by the transpose of the embedding matrix).
RingMap restriction_map(const CohomRing& target_of_E, const CohomRing& of_subgroup,
                        const SubgroupEmbedding& e);

struct CheckReport {
    bool pass = false;
    std::vector<std::pair<std::string, std::vector<std::string>>> varieties;
    std::vector<int> D_used;
    std::string detail;
};

CheckReport check_tensor_theorem(const FdModule& m, const FdModule& n, Hopf hopf = Hopf::Group);
CheckReport check_subgroup_theorem(const FdModule& m, const SubgroupEmbedding& e);
CheckReport check_induction_support(const FdModule& n, const SubgroupEmbedding& e);
/// supp(m) ⊆ V: membership predicate of the thick-subcategory classification.
bool thick_membership(const FdModule& m, const Variety& V);

/// Chouinard-style detection: projectivity over a small p-group is detected
/// on the listed elementary abelian subgroups (each given by generators).
CheckReport check_chouinard(const GroupModule& m,
                            const std::vector<std::vector<int>>& elementary_subgroups);

}  // namespace strat
