#include "strat/support.hpp"

#include <algorithm>

namespace strat {

Variety variety_everything(const Ring& r) { return {r, Ideal::zero(r)}; }

Variety variety_irrelevant(const Ring& r) {
    std::vector<Poly> gens;
    for (int v = 0; v < r->nvars; ++v) gens.push_back(Poly::variable(r, v));
    return {r, Ideal(r, std::move(gens))};
}

Variety variety_of(const Ideal& i) { return {i.ring(), i}; }

bool variety_subset(const Variety& a, const Variety& b) {
    if (!same_ring(a.ring, b.ring)) throw std::invalid_argument("varieties in different rings");
    for (const Poly& g : b.ideal.generators())
        if (!a.ideal.radical_contains(g)) return false;
    return true;
}

bool variety_equals(const Variety& a, const Variety& b) {
    return variety_subset(a, b) && variety_subset(b, a);
}

Variety variety_intersect(const Variety& a, const Variety& b) {
    return {a.ring, Ideal::sum(a.ideal, b.ideal)};
}

Variety variety_union(const Variety& a, const Variety& b) {
    return {a.ring, Ideal::intersection(a.ideal, b.ideal)};
}

bool is_proj_empty(const Variety& a) {
    for (int v = 0; v < a.ring->nvars; ++v)
        if (!a.ideal.radical_contains(Poly::variable(a.ring, v))) return false;
    return true;
}

std::vector<std::string> variety_generator_strings(const Variety& v) {
    std::vector<std::string> out;
    for (const Poly& g : v.ideal.generators()) out.push_back(g.str());
    return out;
}

SupportResult support_of_module(const FdModule& m, int D) {
    ExtPresentation pres = ext_presentation(m, D);
    SupportResult out;
    out.D_used = pres.D_used;
    out.stable = pres.stable;
    // the stable convention: trivial Ext (projective module) supports only
    // the irrelevant maximal ideal
    out.variety = pres.support_ideal.is_unit() ? variety_irrelevant(pres.ring.ring)
                                               : variety_of(pres.support_ideal);
    return out;
}

namespace {

// simultaneous strict triangularization through the common-kernel flag;
// conjugation by a constant matrix does not move the rank-drop locus
std::vector<Mat> oracle_triangularize(const FdModule& m) {
    Field f = Field::prime(m.alg.p);
    std::vector<Mat> cur = m.Z;
    Mat embed = Mat::identity(f, m.dim);
    Mat T(f, m.dim, 0);
    int remaining = m.dim;
    while (remaining > 0) {
        Mat stacked(f, 0, remaining);
        for (const auto& A : cur) stacked = stacked.vcat(A);
        Mat K = stacked.kernel();
        if (K.cols() == 0) throw std::logic_error("commuting nilpotents without common kernel");
        T = T.hcat(embed * K);
        Mat e = K.transpose();
        std::vector<int> piv = e.echelonize();
        int s = static_cast<int>(piv.size());
        Mat erows(f, s, remaining);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < remaining; ++j) erows.set(i, j, e(i, j));
        std::vector<int> comp = complete_basis(erows, remaining);
        int qdim = static_cast<int>(comp.size());
        Mat U(f, remaining, remaining);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < remaining; ++j) U.set(j, i, erows(i, j));
        for (int c = 0; c < qdim; ++c) U.set(comp[c], s + c, 1);
        Mat Uinv = *U.inverse();
        std::vector<Mat> next;
        for (const auto& A : cur) {
            Mat Tm = Uinv * A * U;
            Mat Q(f, qdim, qdim);
            for (int i = 0; i < qdim; ++i)
                for (int j = 0; j < qdim; ++j) Q.set(i, j, Tm(s + i, s + j));
            next.push_back(Q);
        }
        Mat sec(f, remaining, qdim);
        for (int c = 0; c < qdim; ++c) sec.set(comp[c], c, 1);
        embed = embed * sec;
        cur = next;
        remaining = qdim;
    }
    Mat Tinv = *T.inverse();
    std::vector<Mat> out;
    for (const auto& A : m.Z) out.push_back(Tinv * A * T);
    return out;
}

}  // namespace

Variety rank_variety_oracle(const FdModule& m) {
    CohomRing R = make_cohom_ring(m.alg);
    if (m.dim == 0) return variety_irrelevant(R.ring);
    if (m.dim % m.alg.p != 0) return variety_everything(R.ring);
    int t = m.dim / m.alg.p;

    std::vector<Mat> Z = oracle_triangularize(m);
    // generic matrix U = (sum_i x_i Z_i)^{p-1} with polynomial entries
    std::vector<std::vector<Poly>> U(m.dim, std::vector<Poly>(m.dim, Poly::zero(R.ring)));
    for (int i = 0; i < m.alg.r; ++i) {
        Poly xi = Poly::variable(R.ring, i);
        for (int a = 0; a < m.dim; ++a)
            for (int b = 0; b < m.dim; ++b)
                if (Z[i](a, b)) U[a][b] = U[a][b] + xi.scaled(Z[i](a, b));
    }
    std::vector<std::vector<Poly>> P = U;
    for (int k = 1; k < m.alg.p - 1; ++k) {
        std::vector<std::vector<Poly>> Q(m.dim, std::vector<Poly>(m.dim, Poly::zero(R.ring)));
        for (int a = 0; a < m.dim; ++a)
            for (int c = 0; c < m.dim; ++c) {
                if (P[a][c].is_zero()) continue;
                for (int b = 0; b < m.dim; ++b) {
                    if (U[c][b].is_zero()) continue;
                    Q[a][b] = Q[a][b] + P[a][c] * U[c][b];
                }
            }
        P = std::move(Q);
    }
    // drop identically-zero rows and columns before enumerating minors
    std::vector<int> rows, cols;
    for (int a = 0; a < m.dim; ++a) {
        bool nz = false;
        for (int b = 0; b < m.dim; ++b) nz = nz || !P[a][b].is_zero();
        if (nz) rows.push_back(a);
    }
    for (int b = 0; b < m.dim; ++b) {
        bool nz = false;
        for (int a = 0; a < m.dim; ++a) nz = nz || !P[a][b].is_zero();
        if (nz) cols.push_back(b);
    }
    if (static_cast<int>(rows.size()) < t || static_cast<int>(cols.size()) < t)
        return variety_everything(R.ring);  // rank can never reach t: minors ideal is zero
    std::vector<std::vector<Poly>> Pc(rows.size(), std::vector<Poly>(cols.size(), Poly::zero(R.ring)));
    for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = 0; b < cols.size(); ++b) Pc[a][b] = P[rows[a]][cols[b]];
    Ideal minors = symbolic_minors(R.ring, Pc, t);
    if (minors.is_unit()) return variety_irrelevant(R.ring);  // cannot happen for nilpotent actions; guard
    return variety_of(minors);
}

RingMap restriction_map(const CohomRing& big, const CohomRing& small, const SubgroupEmbedding& e) {
    if (big.alg.r != e.r_target || small.alg.r != e.r_source)
        throw std::invalid_argument("restriction map rank mismatch");
    RingMap map{big.ring, small.ring, {}};
    for (int i = 0; i < big.alg.r; ++i) {
        Poly img = Poly::zero(small.ring);
        for (int j = 0; j < small.alg.r; ++j) {
            int c = e.B(i, j);
            if (c) img = img + Poly::variable(small.ring, j).scaled(c);
        }
        map.images.push_back(img);
    }
    return map;
}

CheckReport check_tensor_theorem(const FdModule& m, const FdModule& n, Hopf hopf) {
    if (m.alg != n.alg) throw std::invalid_argument("tensor check across algebras");
    FdModule t = tensor_diagonal(m, n, hopf);
    SupportResult sm = support_of_module(m);
    SupportResult sn = support_of_module(n);
    SupportResult st = support_of_module(t);
    Variety rhs = variety_intersect(sm.variety, sn.variety);
    CheckReport rep;
    rep.pass = variety_equals(st.variety, rhs);
    rep.varieties = {{"supp_m", variety_generator_strings(sm.variety)},
                     {"supp_n", variety_generator_strings(sn.variety)},
                     {"supp_tensor", variety_generator_strings(st.variety)}};
    rep.D_used = {sm.D_used, sn.D_used, st.D_used};
    return rep;
}

CheckReport check_subgroup_theorem(const FdModule& m, const SubgroupEmbedding& e) {
    if (e.r_target != m.alg.r) throw std::invalid_argument("embedding rank mismatch");
    CohomRing RE = make_cohom_ring(m.alg);
    CohomRing RE2 = make_cohom_ring({m.alg.p, e.r_source});
    FdModule res = restrict_module(m, e);
    SupportResult lhs = support_of_module(res);
    SupportResult sm = support_of_module(m);
    RingMap f = restriction_map(RE, RE2, e);
    Variety rhs = variety_of(f.apply_ideal(sm.variety.ideal));
    CheckReport rep;
    rep.pass = variety_equals(lhs.variety, rhs);
    rep.varieties = {{"supp_restriction", variety_generator_strings(lhs.variety)},
                     {"supp_m", variety_generator_strings(sm.variety)},
                     {"preimage", variety_generator_strings(rhs)}};
    rep.D_used = {lhs.D_used, sm.D_used};
    return rep;
}

CheckReport check_induction_support(const FdModule& n, const SubgroupEmbedding& e) {
    if (e.r_source != n.alg.r) throw std::invalid_argument("embedding source rank mismatch");
    CohomRing RE = make_cohom_ring({n.alg.p, e.r_target});
    CohomRing RE2 = make_cohom_ring(n.alg);
    FdModule ind = induce_module(n, e);
    SupportResult lhs = support_of_module(ind);
    SupportResult sn = support_of_module(n);
    RingMap f = restriction_map(RE, RE2, e);
    Variety rhs = variety_of(f.kernel_mod(sn.variety.ideal));
    CheckReport rep;
    rep.pass = variety_equals(lhs.variety, rhs);
    rep.varieties = {{"supp_induced", variety_generator_strings(lhs.variety)},
                     {"supp_n", variety_generator_strings(sn.variety)},
                     {"image", variety_generator_strings(rhs)}};
    rep.D_used = {lhs.D_used, sn.D_used};
    return rep;
}

bool thick_membership(const FdModule& m, const Variety& V) {
    SupportResult s = support_of_module(m);
    if (!same_ring(s.variety.ring, V.ring)) throw std::invalid_argument("thick membership across rings");
    return variety_subset(s.variety, V);
}

CheckReport check_chouinard(const GroupModule& m,
                            const std::vector<std::vector<int>>& elementary_subgroups) {
    if (m.G.order > 64) throw std::invalid_argument("group order cap is 64");
    bool proj_G = group_is_projective(m);
    bool proj_all = true;
    CheckReport rep;
    for (const auto& gens : elementary_subgroups) {
        FdModule res = group_restrict_elementary(m, gens);
        bool pe = is_projective(res);
        proj_all = proj_all && pe;
        rep.varieties.push_back({"subgroup_projective", {pe ? "true" : "false"}});
    }
    rep.pass = (proj_G == proj_all);
    rep.detail = proj_G ? "projective over G" : "not projective over G";
    return rep;
}

}  // namespace strat
