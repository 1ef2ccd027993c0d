#include "strat/json_io.hpp"

#include <json.hpp>
#include <sstream>

namespace strat {

using nlohmann::json;

namespace {

json matrix_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_parse(const json& rows, const Field& f, int expect_rows = -1, int expect_cols = -1) {
    if (!rows.is_array()) throw std::invalid_argument("matrix JSON must be an array of rows");
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : (expect_cols >= 0 ? expect_cols : 0);
    if (expect_rows >= 0 && r != expect_rows) throw std::invalid_argument("matrix row count mismatch");
    if (expect_cols >= 0 && c != expect_cols) throw std::invalid_argument("matrix col count mismatch");
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix JSON");
        for (int j = 0; j < c; ++j) {
            int v = rows[i][j].get<int>();
            if (v < 0 || v >= f.size()) throw std::invalid_argument("matrix entry out of field range");
            m.set(i, j, v);
        }
    }
    return m;
}

}  // namespace

std::string matrix_to_json(const Mat& m) { return matrix_json(m).dump(); }

Mat matrix_from_json(const std::string& text, const Field& f) {
    return matrix_parse(json::parse(text), f);
}

std::string module_to_json(const FdModule& m) {
    json j;
    j["schema"] = kSchemaVersion;
    j["p"] = m.alg.p;
    j["rank"] = m.alg.r;
    j["dim"] = m.dim;
    json acts = json::array();
    for (const auto& Z : m.Z) acts.push_back(matrix_json(Z));
    j["z_actions"] = std::move(acts);
    return j.dump();
}

FdModule module_from_json(const std::string& text) {
    json j = json::parse(text);
    FdModule m;
    m.alg.p = j.at("p").get<int>();
    m.alg.r = j.at("rank").get<int>();
    m.dim = j.at("dim").get<int>();
    if (!is_prime(m.alg.p)) throw std::invalid_argument("p must be prime");
    if (m.alg.r < 1 || m.dim < 0) throw std::invalid_argument("bad module parameters");
    Field f = Field::prime(m.alg.p);
    const json& acts = j.at("z_actions");
    if (static_cast<int>(acts.size()) != m.alg.r)
        throw std::invalid_argument("need one action matrix per generator");
    for (const auto& a : acts) m.Z.push_back(matrix_parse(a, f, m.dim, m.dim));
    m.validate();
    return m;
}

std::string embedding_to_json(const SubgroupEmbedding& e) {
    json j;
    j["schema"] = kSchemaVersion;
    j["matrix"] = matrix_json(e.B);
    return j.dump();
}

SubgroupEmbedding embedding_from_json(const std::string& text, int p) {
    json j = json::parse(text);
    Field f = Field::prime(p);
    Mat B = matrix_parse(j.at("matrix"), f);
    SubgroupEmbedding e{B.rows(), B.cols(), B};
    e.validate(p);
    return e;
}

std::string ideal_to_json(const Ideal& i) {
    json j;
    j["schema"] = kSchemaVersion;
    j["ring"] = {{"p", i.ring()->p}, {"r", i.ring()->nvars}, {"gen_degree", i.ring()->gen_degree}};
    json gens = json::array();
    for (const auto& g : i.generators()) gens.push_back(g.str());
    j["generators"] = std::move(gens);
    return j.dump();
}

Ideal ideal_from_json(const std::string& text) {
    json j = json::parse(text);
    const json& rj = j.at("ring");
    Ring ring = make_ring(rj.at("p").get<int>(), rj.at("r").get<int>(),
                          rj.value("gen_degree", 1), "x");
    std::vector<Poly> gens;
    for (const auto& g : j.at("generators")) gens.push_back(Poly::parse(ring, g.get<std::string>()));
    return Ideal(ring, std::move(gens));
}

std::string variety_to_json(const Variety& v) {
    json j;
    j["schema"] = kSchemaVersion;
    j["ring"] = {{"p", v.ring->p}, {"r", v.ring->nvars}, {"gen_degree", v.ring->gen_degree}};
    json gens = json::array();
    for (const auto& s : variety_generator_strings(v)) gens.push_back(s);
    j["generators"] = std::move(gens);
    return j.dump();
}

std::string ext_presentation_to_json(const ExtPresentation& p) {
    json j;
    j["schema"] = kSchemaVersion;
    j["ring"] = {{"p", p.ring.ring->p}, {"r", p.ring.ring->nvars}, {"gen_degree", p.ring.gen_degree()}};
    j["generator_degrees"] = p.gen_degrees;
    json rows = json::array();
    for (const auto& row : p.matrix) {
        json r = json::array();
        for (const auto& q : row) r.push_back(q.str());
        rows.push_back(std::move(r));
    }
    j["presentation"] = std::move(rows);
    j["D"] = p.D_used;
    j["stable"] = p.stable;
    j["split_free_rank"] = p.split_free_rank;
    j["ext_dims"] = p.ext_dims;
    return j.dump();
}

std::string dg_module_debug_json(const DgModule& m) {
    json j;
    j["schema"] = kSchemaVersion;
    j["lo"] = m.lo;
    j["hi"] = m.hi;
    j["dims"] = m.dims;
    json diffs = json::array();
    for (const auto& d : m.d) diffs.push_back(matrix_json(d));
    j["differentials"] = std::move(diffs);
    return j.dump();
}

std::string content_hash(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string resolution_debug_json(const MinimalResolution& res) {
    json j;
    j["schema"] = kSchemaVersion;
    j["betti"] = res.betti;
    j["augmentation"] = matrix_json(res.augmentation);
    json diffs = json::array();
    for (const auto& d : res.diff) diffs.push_back(matrix_json(d));
    j["differentials"] = std::move(diffs);
    return j.dump();
}

}  // namespace strat
