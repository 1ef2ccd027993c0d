#include "strat/dg.hpp"

#include <algorithm>
#include <functional>

namespace strat {

namespace {

Field fp(int p) { return Field::prime(p); }

int popcount(unsigned b) { return __builtin_popcount(b); }

// sign of xi_i . f_S = eps_i(S) f_{S\i} under (a.f)(x) = (-1)^{|a||f|} f(x.a)
int eps(unsigned S, int i) {
    int above = 0;
    for (int t = i + 1; t < 16; ++t)
        if (S & (1u << t)) ++above;
    int e = popcount(S) + above;
    return (e % 2 == 0) ? 1 : -1;
}

// sign of the exterior product xi_S . xi_T (disjoint), ascending bases
int ext_sign(unsigned S, unsigned T) {
    int inv = 0;
    for (int i = 0; i < 16; ++i)
        if (S & (1u << i))
            for (int j = 0; j < i; ++j)
                if (T & (1u << j)) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

std::vector<unsigned> masks_of_weight(int r, int w) {
    std::vector<unsigned> out;
    for (unsigned b = 0; b < (1u << r); ++b)
        if (popcount(b) == w) out.push_back(b);
    return out;
}

void monomials_of_weight(int r, int w, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(r, 0);
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == r - 1) {
            cur[var] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[var] = e;
            rec(var + 1, left - e);
        }
    };
    if (w >= 0) rec(0, w);
}

std::vector<int> zexp_of(int a, int p, int r) {
    std::vector<int> e(r);
    for (int i = 0; i < r; ++i) {
        e[i] = a % p;
        a /= p;
    }
    return e;
}

int zexp_index(const std::vector<int>& e, int p) {
    int a = 0;
    for (int i = static_cast<int>(e.size()) - 1; i >= 0; --i) a = a * p + e[i];
    return a;
}

int mono_pos(const std::vector<std::vector<int>>& list, const std::vector<int>& m) {
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == m) return static_cast<int>(i);
    return -1;
}

}  // namespace

int dg_num_generators(const DgAlgebraRef& a) {
    switch (a.kind) {
        case DgKind::Lambda: return a.r;
        case DgKind::KoszulA: return 2 * a.r;  // z_1..z_r then y_1..y_r
        case DgKind::PolyS: return a.r;
        case DgKind::GroupEA: return a.r;
    }
    return 0;
}

int dg_generator_degree(const DgAlgebraRef& a, int g) {
    switch (a.kind) {
        case DgKind::Lambda: return -1;
        case DgKind::KoszulA: return g < a.r ? 0 : -1;
        case DgKind::PolyS: return 2;
        case DgKind::GroupEA: return 0;
    }
    return 0;
}

std::string dg_generator_name(const DgAlgebraRef& a, int g) {
    switch (a.kind) {
        case DgKind::Lambda: return "xi" + std::to_string(g + 1);
        case DgKind::KoszulA:
            return g < a.r ? "z" + std::to_string(g + 1) : "y" + std::to_string(g - a.r + 1);
        case DgKind::PolyS: return "x" + std::to_string(g + 1);
        case DgKind::GroupEA: return "z" + std::to_string(g + 1);
    }
    return "?";
}

Mat DgModule::dmat(int degree) const {
    Field f = fp(A.p);
    int src = dim(degree), tgt = dim(degree + 1);
    if (degree >= lo && degree < hi) return d[degree - lo];
    return Mat::zero(f, tgt, src);
}

Mat DgModule::gact(int g, int degree) const {
    Field f = fp(A.p);
    int gd = dg_generator_degree(A, g);
    int src = dim(degree), tgt = dim(degree + gd);
    if (degree >= lo && degree <= hi) {
        const Mat& m = act[g][degree - lo];
        if (m.rows() == tgt && m.cols() == src) return m;
    }
    return Mat::zero(f, tgt, src);
}

namespace {

// compare operator composites on every window degree where the composite
// cannot be cut off by a truncated edge
void check_identity(const DgModule& M, const std::function<Mat(int)>& lhs,
                    const std::function<Mat(int)>& rhs, int min_between, int max_between,
                    const char* what) {
    for (int n = M.lo; n <= M.hi; ++n) {
        if (M.truncated_lo && n + min_between < M.lo) continue;
        if (M.truncated_hi && n + max_between > M.hi) continue;
        if (!(lhs(n) == rhs(n))) throw std::logic_error(std::string("dg validation failed: ") + what);
    }
}

}  // namespace

void DgModule::validate() const {
    if (hi < lo) return;
    if (static_cast<int>(dims.size()) != hi - lo + 1) throw std::logic_error("dg module dims mismatch");
    int ng = dg_num_generators(A);
    if (static_cast<int>(act.size()) != ng) throw std::logic_error("dg module needs one action per generator");
    Field f = fp(A.p);
    // d^2 = 0
    check_identity(*this, [&](int n) { return dmat(n + 1) * dmat(n); },
                   [&](int n) { return Mat::zero(f, dim(n + 2), dim(n)); }, 0, 2, "d^2 = 0");
    auto X = [&](int g) { return [this, g](int n) { return gact(g, n); }; };
    auto compose = [&](int g1, int g2) {  // act(g1) after act(g2)
        int d2 = dg_generator_degree(A, g2);
        return [this, g1, g2, d2](int n) { return gact(g1, n + d2) * gact(g2, n); };
    };
    auto zero2 = [&](int g1, int g2) {
        int dd = dg_generator_degree(A, g1) + dg_generator_degree(A, g2);
        return [this, dd, &f](int n) { return Mat::zero(f, dim(n + dd), dim(n)); };
    };
    auto dX = [&](int g) {  // d . X
        int gd = dg_generator_degree(A, g);
        return [this, g, gd](int n) { return dmat(n + gd) * gact(g, n); };
    };
    auto Xd = [&](int g) {  // X . d
        return [this, g](int n) { return gact(g, n + 1) * dmat(n); };
    };
    int r = A.r;
    switch (A.kind) {
        case DgKind::Lambda:
            for (int i = 0; i < r; ++i) {
                check_identity(*this, compose(i, i), zero2(i, i), -2, 0, "xi^2 = 0");
                for (int j = i + 1; j < r; ++j)
                    check_identity(*this, [&, i, j](int n) { return compose(i, j)(n) + compose(j, i)(n); },
                                   zero2(i, j), -2, 0, "xi anticommute");
                check_identity(*this, [&, i](int n) { return dX(i)(n) + Xd(i)(n); },
                               [&, i](int n) { return Mat::zero(f, dim(n), dim(n)); }, -1, 1,
                               "d xi + xi d = 0");
            }
            break;
        case DgKind::KoszulA: {
            for (int i = 0; i < r; ++i) {
                // z_i^p = 0
                check_identity(*this, [&, i](int n) {
                    Mat m = Mat::identity(f, dim(n));
                    for (int k = 0; k < A.p; ++k) m = gact(i, n) * m;
                    return m;
                }, [&](int n) { return Mat::zero(f, dim(n), dim(n)); }, 0, 0, "z^p = 0");
                check_identity(*this, dX(i), Xd(i), 0, 1, "d z = z d");
                for (int j = 0; j < r; ++j) {
                    if (j > i)
                        check_identity(*this, compose(i, j), compose(j, i), 0, 0, "z commute");
                    check_identity(*this, compose(i, r + j), compose(r + j, i), -1, 0, "z y commute");
                }
            }
            for (int i = 0; i < r; ++i) {
                check_identity(*this, compose(r + i, r + i), zero2(r + i, r + i), -2, 0, "y^2 = 0");
                for (int j = i + 1; j < r; ++j)
                    check_identity(*this,
                                   [&, i, j](int n) { return compose(r + i, r + j)(n) + compose(r + j, r + i)(n); },
                                   zero2(r + i, r + j), -2, 0, "y anticommute");
                check_identity(*this, [&, i](int n) { return dX(r + i)(n) + Xd(r + i)(n); }, X(i), -1, 1,
                               "d y + y d = z");
            }
            break;
        }
        case DgKind::PolyS:
            for (int i = 0; i < r; ++i) {
                check_identity(*this, dX(i), Xd(i), 0, 3, "d x = x d");
                for (int j = i + 1; j < r; ++j)
                    check_identity(*this, compose(i, j), compose(j, i), 0, 4, "x commute");
            }
            break;
        case DgKind::GroupEA:
            for (int i = 0; i < r; ++i) {
                check_identity(*this, [&, i](int n) {
                    Mat m = Mat::identity(f, dim(n));
                    for (int k = 0; k < A.p; ++k) m = gact(i, n) * m;
                    return m;
                }, [&](int n) { return Mat::zero(f, dim(n), dim(n)); }, 0, 0, "z^p = 0");
                check_identity(*this, dX(i), Xd(i), 0, 1, "d z = z d");
                for (int j = i + 1; j < r; ++j)
                    check_identity(*this, compose(i, j), compose(j, i), 0, 0, "z commute");
            }
            break;
    }
}

DgModule dg_zero(const DgAlgebraRef& A) {
    DgModule m;
    m.A = A;
    m.lo = 0;
    m.hi = -1;
    m.act.resize(dg_num_generators(A));
    return m;
}

DgModule dg_field_module(const DgAlgebraRef& A) {
    DgModule m;
    m.A = A;
    m.lo = m.hi = 0;
    m.dims = {1};
    Field f = fp(A.p);
    int ng = dg_num_generators(A);
    m.act.resize(ng);
    for (int g = 0; g < ng; ++g) {
        int gd = dg_generator_degree(A, g);
        m.act[g].push_back(Mat::zero(f, gd == 0 ? 1 : 0, 1));
    }
    m.validate();
    return m;
}

DgModule dg_algebra_module(const DgAlgebraRef& A) {
    Field f = fp(A.p);
    if (A.kind == DgKind::Lambda) {
        DgModule m;
        m.A = A;
        m.lo = -A.r;
        m.hi = 0;
        std::vector<std::vector<unsigned>> basis(A.r + 1);
        for (int j = 0; j <= A.r; ++j) basis[j] = masks_of_weight(A.r, j);
        for (int n = -A.r; n <= 0; ++n) m.dims.push_back(static_cast<int>(basis[-n].size()));
        for (int n = -A.r; n < 0; ++n) m.d.push_back(Mat::zero(f, m.dim(n + 1), m.dim(n)));
        m.act.resize(A.r);
        for (int t = 0; t < A.r; ++t)
            for (int n = -A.r; n <= 0; ++n) {
                int j = -n;
                Mat a(f, m.dim(n - 1), m.dim(n));
                for (size_t bi = 0; bi < basis[j].size(); ++bi) {
                    unsigned S = basis[j][bi];
                    if (S & (1u << t)) continue;
                    int sign = ext_sign(1u << t, S);
                    unsigned T = S | (1u << t);
                    const auto& tgt = basis[j + 1];
                    for (size_t ti = 0; ti < tgt.size(); ++ti)
                        if (tgt[ti] == T) a.set(static_cast<int>(ti), static_cast<int>(bi),
                                                sign > 0 ? 1 : f.neg(1));
                }
                m.act[t].push_back(a);
            }
        m.validate();
        return m;
    }
    if (A.kind == DgKind::KoszulA) {
        KoszulAlgebra K = build_koszul_A(A.p, A.r);
        DgModule m;
        m.A = A;
        m.lo = -A.r;
        m.hi = 0;
        for (int n = -A.r; n <= 0; ++n) m.dims.push_back(K.basis_dim(n));
        for (int n = -A.r; n < 0; ++n) {
            Mat d(f, K.basis_dim(n + 1), K.basis_dim(n));
            for (int i = 0; i < K.basis_dim(n); ++i)
                for (auto [j, c] : K.diff(n, i)) d.set(j, i, c);
            m.d.push_back(d);
        }
        m.act.resize(2 * A.r);
        for (int g = 0; g < 2 * A.r; ++g) {
            int gd = (g < A.r) ? 0 : -1;
            int zidx = 0;
            unsigned ymask = 0;
            if (g < A.r) {
                std::vector<int> e(A.r, 0);
                e[g] = 1;
                zidx = zexp_index(e, A.p);
            } else {
                ymask = 1u << (g - A.r);
            }
            for (int n = -A.r; n <= 0; ++n) {
                Mat a(f, m.dim(n + gd), m.dim(n));
                for (int i = 0; i < m.dim(n); ++i)
                    for (auto [j, c] : K.mul(gd, K.index(gd, zidx, ymask), n, i))
                        a.set(j, i, f.add(a(j, i), c));
                m.act[g].push_back(a);
            }
        }
        m.validate();
        return m;
    }
    throw std::invalid_argument("dg_algebra_module supports Lambda and KoszulA");
}

DgModule dg_shift(const DgModule& M, int s) {
    DgModule out = M;
    out.lo = M.lo + s;
    out.hi = M.hi + s;
    if (s % 2 != 0) {
        for (auto& dm : out.d) dm = dm.negated();
        for (int g = 0; g < dg_num_generators(M.A); ++g)
            if (dg_generator_degree(M.A, g) % 2 != 0)
                for (auto& am : out.act[g]) am = am.negated();
    }
    return out;
}

DgModule dg_direct_sum(const DgModule& a, const DgModule& b) {
    if (!(a.A == b.A)) throw std::invalid_argument("dg direct sum across algebras");
    Field f = fp(a.A.p);
    DgModule out;
    out.A = a.A;
    out.lo = std::min(a.lo, b.lo);
    out.hi = std::max(a.hi, b.hi);
    if (a.hi < a.lo) return b;
    if (b.hi < b.lo) return a;
    out.truncated_lo = a.truncated_lo || b.truncated_lo;
    out.truncated_hi = a.truncated_hi || b.truncated_hi;
    for (int n = out.lo; n <= out.hi; ++n) out.dims.push_back(a.dim(n) + b.dim(n));
    auto embed = [&](const Mat& am, const Mat& bm) {
        Mat m(f, am.rows() + bm.rows(), am.cols() + bm.cols());
        for (int i = 0; i < am.rows(); ++i)
            for (int j = 0; j < am.cols(); ++j) m.set(i, j, am(i, j));
        for (int i = 0; i < bm.rows(); ++i)
            for (int j = 0; j < bm.cols(); ++j) m.set(am.rows() + i, am.cols() + j, bm(i, j));
        return m;
    };
    for (int n = out.lo; n < out.hi; ++n) out.d.push_back(embed(a.dmat(n), b.dmat(n)));
    int ng = dg_num_generators(a.A);
    out.act.resize(ng);
    for (int g = 0; g < ng; ++g)
        for (int n = out.lo; n <= out.hi; ++n) out.act[g].push_back(embed(a.gact(g, n), b.gact(g, n)));
    out.validate();
    return out;
}

DgModule dg_dual(const DgModule& M) {
    // (M^v)^n = (M^{-n})^v; d(f) = -(-1)^{|f|} f.d; generators act through the
    // antipode a -> -a: (a.f)(x) = (-1)^{|a||f|} f(S(a) x)
    Field f = fp(M.A.p);
    DgModule out;
    out.A = M.A;
    out.lo = -M.hi;
    out.hi = -M.lo;
    out.truncated_lo = M.truncated_hi;
    out.truncated_hi = M.truncated_lo;
    for (int n = out.lo; n <= out.hi; ++n) out.dims.push_back(M.dim(-n));
    for (int n = out.lo; n < out.hi; ++n) {
        Mat dm = M.dmat(-n - 1).transpose();
        if (n % 2 == 0) dm = dm.negated();  // -(-1)^n
        out.d.push_back(dm);
    }
    int ng = dg_num_generators(M.A);
    out.act.resize(ng);
    for (int g = 0; g < ng; ++g) {
        int gd = dg_generator_degree(M.A, g);
        for (int n = out.lo; n <= out.hi; ++n) {
            Mat am = M.gact(g, -n - gd).transpose();  // (M^{-n})^v -> (M^{-n-gd})^v
            // sign: (-1)^{|a||f|} times the antipode's -1
            bool flip = true;  // antipode
            if ((gd % 2 != 0) && (((n % 2) + 2) % 2 == 1)) flip = !flip;
            if (flip) am = am.negated();
            out.act[g].push_back(am);
        }
    }
    out.validate();
    return out;
}

Mat DgMap::fmat(int degree) const {
    Field fl = fp(src->A.p);
    if (degree >= src->lo && degree <= src->hi) {
        const Mat& m = f[degree - src->lo];
        if (m.rows() == tgt->dim(degree) && m.cols() == src->dim(degree)) return m;
    }
    return Mat::zero(fl, tgt->dim(degree), src->dim(degree));
}

DgModule dg_cone(const DgMap& fm, const DgModule& src, const DgModule& tgt) {
    if (!(src.A == tgt.A)) throw std::invalid_argument("cone across algebras");
    Field f = fp(src.A.p);
    DgModule out;
    out.A = src.A;
    out.lo = std::min(src.lo - 1, tgt.lo);
    out.hi = std::max(src.hi - 1, tgt.hi);
    out.truncated_lo = src.truncated_lo || tgt.truncated_lo;
    out.truncated_hi = src.truncated_hi || tgt.truncated_hi;
    for (int n = out.lo; n <= out.hi; ++n) out.dims.push_back(src.dim(n + 1) + tgt.dim(n));
    for (int n = out.lo; n < out.hi; ++n) {
        int sr = src.dim(n + 2), tr = tgt.dim(n + 1);
        int sc = src.dim(n + 1), tc = tgt.dim(n);
        Mat d(f, sr + tr, sc + tc);
        Mat ds = src.dmat(n + 1).negated();
        for (int i = 0; i < sr; ++i)
            for (int j = 0; j < sc; ++j) d.set(i, j, ds(i, j));
        Mat fm1 = fm.fmat(n + 1);
        for (int i = 0; i < tr; ++i)
            for (int j = 0; j < sc; ++j) d.set(sr + i, j, fm1(i, j));
        Mat dt = tgt.dmat(n);
        for (int i = 0; i < tr; ++i)
            for (int j = 0; j < tc; ++j) d.set(sr + i, sc + j, dt(i, j));
        out.d.push_back(d);
    }
    int ng = dg_num_generators(src.A);
    out.act.resize(ng);
    for (int g = 0; g < ng; ++g) {
        int gd = dg_generator_degree(src.A, g);
        for (int n = out.lo; n <= out.hi; ++n) {
            Mat as = src.gact(g, n + 1);
            if (gd % 2 != 0) as = as.negated();  // shifted copy twists odd actions
            Mat at = tgt.gact(g, n);
            Mat m(f, src.dim(n + 1 + gd) + tgt.dim(n + gd), src.dim(n + 1) + tgt.dim(n));
            for (int i = 0; i < as.rows(); ++i)
                for (int j = 0; j < as.cols(); ++j) m.set(i, j, as(i, j));
            for (int i = 0; i < at.rows(); ++i)
                for (int j = 0; j < at.cols(); ++j)
                    m.set(src.dim(n + 1 + gd) + i, src.dim(n + 1) + j, at(i, j));
            out.act[g].push_back(m);
        }
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// the Koszul dg algebra A

int KoszulAlgebra::basis_dim(int degree) const {
    if (degree > 0 || degree < -r) return 0;
    int j = -degree;
    int c = 1;
    for (int i = 0; i < j; ++i) c = c * (r - i) / (i + 1);
    return c * zcount;
}

int KoszulAlgebra::index(int degree, int a, unsigned b) const {
    std::vector<unsigned> masks = masks_of_weight(r, -degree);
    for (size_t i = 0; i < masks.size(); ++i)
        if (masks[i] == b) return static_cast<int>(i) * zcount + a;
    throw std::logic_error("bad Koszul basis element");
}

std::pair<int, unsigned> KoszulAlgebra::element(int degree, int idx) const {
    std::vector<unsigned> masks = masks_of_weight(r, -degree);
    return {idx % zcount, masks[idx / zcount]};
}

std::vector<std::pair<int, int>> KoszulAlgebra::diff(int degree, int idx) const {
    auto [a, b] = element(degree, idx);
    std::vector<int> ze = zexp_of(a, p, r);
    std::vector<std::pair<int, int>> out;
    int pos = 0;
    for (int i = 0; i < r; ++i) {
        if (!(b & (1u << i))) continue;
        int sign = (pos % 2 == 0) ? 1 : -1;
        ++pos;
        if (ze[i] + 1 < p) {
            std::vector<int> ze2 = ze;
            ze2[i] += 1;
            int idx2 = index(degree + 1, zexp_index(ze2, p), b & ~(1u << i));
            out.push_back({idx2, sign > 0 ? 1 : p - 1});
        }
    }
    return out;
}

std::vector<std::pair<int, int>> KoszulAlgebra::mul(int d1, int i1, int d2, int i2) const {
    auto [a1, b1] = element(d1, i1);
    auto [a2, b2] = element(d2, i2);
    if (b1 & b2) return {};
    std::vector<int> e1 = zexp_of(a1, p, r), e2 = zexp_of(a2, p, r);
    for (int i = 0; i < r; ++i) {
        e1[i] += e2[i];
        if (e1[i] >= p) return {};
    }
    int sign = ext_sign(b1, b2);
    int coeff = (sign > 0) ? 1 : p - 1;
    return {{index(d1 + d2, zexp_index(e1, p), b1 | b2), coeff}};
}

KoszulAlgebra build_koszul_A(int p, int r, int window_lo, int window_hi) {
    if (window_lo != 0 || window_hi != 0) {
        if (window_lo > -r || window_hi < 0)
            throw std::invalid_argument("window must cover [-r, 0]");
    }
    if (!is_prime(p) || r < 1) throw std::invalid_argument("build_koszul_A: bad parameters");
    KoszulAlgebra A;
    A.p = p;
    A.r = r;
    A.zcount = 1;
    for (int i = 0; i < r; ++i) A.zcount *= p;
    // construction checks: d^2 = 0 and the Leibniz rule on all basis pairs
    Field f = fp(p);
    for (int deg = -r; deg <= 0; ++deg) {
        for (int i = 0; i < A.basis_dim(deg); ++i) {
            std::map<int, int> dd;
            for (auto [j, c] : A.diff(deg, i))
                for (auto [k, c2] : A.diff(deg + 1, j)) dd[k] = f.add(dd[k], f.mul(c, c2));
            for (auto [k, c] : dd)
                if (c) throw VerificationError("Koszul algebra: d^2 != 0");
        }
    }
    for (int dx = -r; dx <= 0; ++dx)
        for (int dy = -r; dy <= 0; ++dy) {
            if (dx + dy < -r) continue;
            for (int ix = 0; ix < A.basis_dim(dx); ++ix)
                for (int iy = 0; iy < A.basis_dim(dy); ++iy) {
                    // d(ab) = da.b + (-1)^{|a|} a.db
                    std::map<int, int> lhs, rhs;
                    for (auto [m, c] : A.mul(dx, ix, dy, iy))
                        for (auto [k, c2] : A.diff(dx + dy, m)) lhs[k] = f.add(lhs[k], f.mul(c, c2));
                    for (auto [da, c] : A.diff(dx, ix))
                        for (auto [m, c2] : A.mul(dx + 1, da, dy, iy)) rhs[m] = f.add(rhs[m], f.mul(c, c2));
                    int sgn = (dx % 2 == 0) ? 1 : -1;  // |a| parity = degree parity
                    for (auto [db, c] : A.diff(dy, iy))
                        for (auto [m, c2] : A.mul(dx, ix, dy + 1, db)) {
                            int v = f.mul(c, c2);
                            if (sgn < 0) v = f.neg(v);
                            rhs[m] = f.add(rhs[m], v);
                        }
                    for (auto& [k, c] : rhs) lhs[k] = f.sub(lhs[k], c);
                    for (auto [k, c] : lhs)
                        if (c) throw VerificationError("Koszul algebra: Leibniz rule failed");
                }
        }
    return A;
}

Mat ChainComplex::dmat(int degree) const {
    int src = dim(degree), tgt = dim(degree + 1);
    if (degree >= lo && degree < hi) return d[degree - lo];
    return Mat::zero(fld, tgt, src);
}

ChainComplex complex_of(const DgModule& M) {
    ChainComplex c;
    c.fld = fp(M.A.p);
    c.lo = M.lo;
    c.hi = M.hi;
    c.dims = M.dims;
    c.d = M.d;
    return c;
}

ChainComplex koszul_A_complex(const KoszulAlgebra& A) {
    ChainComplex c;
    c.fld = fp(A.p);
    c.lo = -A.r;
    c.hi = 0;
    for (int deg = -A.r; deg <= 0; ++deg) c.dims.push_back(A.basis_dim(deg));
    for (int deg = -A.r; deg < 0; ++deg) {
        Mat d(c.fld, A.basis_dim(deg + 1), A.basis_dim(deg));
        for (int i = 0; i < A.basis_dim(deg); ++i)
            for (auto [j, coef] : A.diff(deg, i)) d.set(j, i, coef);
        c.d.push_back(d);
    }
    return c;
}

PhiMap phi_lambda_to_A(int p, int r) {
    PhiMap phi;
    phi.A = build_koszul_A(p, r);
    Field f = fp(p);
    phi.lambda.fld = f;
    phi.lambda.lo = -r;
    phi.lambda.hi = 0;
    for (int j = r; j >= 0; --j) {
        int c = 1;
        for (int i = 0; i < j; ++i) c = c * (r - i) / (i + 1);
        phi.lambda.dims.push_back(c);
    }
    for (int deg = -r; deg < 0; ++deg)
        phi.lambda.d.push_back(Mat::zero(f, phi.lambda.dim(deg + 1), phi.lambda.dim(deg)));
    phi.target = koszul_A_complex(phi.A);

    // phi(xi_S) = z^{(p-1) 1_S} y^S
    auto image = [&](unsigned S) {
        std::vector<int> ze(r, 0);
        for (int i = 0; i < r; ++i)
            if (S & (1u << i)) ze[i] = p - 1;
        return std::pair<int, unsigned>{zexp_index(ze, p), S};
    };
    for (int deg = -r; deg <= 0; ++deg) {
        std::vector<unsigned> masks = masks_of_weight(r, -deg);
        Mat m(f, phi.target.dim(deg), phi.lambda.dim(deg));
        for (size_t i = 0; i < masks.size(); ++i) {
            auto [za, yb] = image(masks[i]);
            m.set(phi.A.index(deg, za, yb), static_cast<int>(i), 1);
        }
        phi.f.push_back(m);
    }

    // multiplicativity on all basis pairs (and cycles: d(phi(xi_i)) = 0, which
    // Leibniz reduces to the pair checks)
    for (unsigned S = 0; S < (1u << r); ++S)
        for (unsigned T = 0; T < (1u << r); ++T) {
            auto [za, yb] = image(S);
            auto [za2, yb2] = image(T);
            auto prod = phi.A.mul(-popcount(S), phi.A.index(-popcount(S), za, yb), -popcount(T),
                                  phi.A.index(-popcount(T), za2, yb2));
            if (S & T) {
                if (!prod.empty()) throw VerificationError("phi not multiplicative (overlap)");
                continue;
            }
            int sign = ext_sign(S, T);
            auto [zu, yu] = image(S | T);
            int expect_idx = phi.A.index(-popcount(S | T), zu, yu);
            if (prod.size() != 1 || prod[0].first != expect_idx ||
                prod[0].second != ((sign > 0) ? 1 : p - 1))
                throw VerificationError("phi not multiplicative");
        }
    // image elements are cycles
    for (int i = 0; i < r; ++i) {
        auto [za, yb] = image(1u << i);
        if (!phi.A.diff(-1, phi.A.index(-1, za, yb)).empty())
            throw VerificationError("phi image is not a cycle");
    }
    return phi;
}

std::vector<int> homology_dims(const ChainComplex& c) {
    std::vector<int> out;
    for (int n = c.lo; n <= c.hi; ++n) {
        Mat z = c.dmat(n).kernel();
        int b = c.dmat(n - 1).rank();
        out.push_back(z.cols() - b);
    }
    return out;
}

QuasiIsoReport verify_quasi_iso(const ChainComplex& src, const ChainComplex& tgt,
                                const std::vector<Mat>& maps, int maps_lo) {
    QuasiIsoReport rep;
    int lo = std::min(src.lo, tgt.lo), hi = std::max(src.hi, tgt.hi);
    rep.certified_lo = lo;
    rep.certified_hi = hi;
    if (rep.certified_lo > rep.certified_hi)
        throw std::invalid_argument("window too small to certify any degree");
    rep.pass = true;
    for (int n = lo; n <= hi; ++n) {
        Mat zs = src.dmat(n).kernel();
        Mat zt = tgt.dmat(n).kernel();
        Mat bs = column_space_basis(src.dmat(n - 1));
        Mat bt = column_space_basis(tgt.dmat(n - 1));
        int hs = zs.cols() - bs.cols();
        int ht = zt.cols() - bt.cols();
        rep.h_src.push_back(hs);
        rep.h_tgt.push_back(ht);
        // induced map on homology
        Mat fmap = (n >= maps_lo && n - maps_lo < static_cast<int>(maps.size()))
                       ? maps[n - maps_lo]
                       : Mat::zero(src.fld, tgt.dim(n), src.dim(n));
        Mat img = fmap * zs;  // cocycles map to cocycles
        auto coords = zt.solve(img);
        if (!coords) {
            rep.pass = false;
            rep.detail = "map does not send cocycles to cocycles";
            continue;
        }
        QuotientCoords qt;
        Mat w(tgt.fld, zt.cols(), 0);
        if (bt.cols() > 0) {
            auto sol = zt.solve(bt);
            if (!sol) throw std::logic_error("boundaries outside cocycles");
            w = *sol;
        }
        qt.init(w, zt.cols(), tgt.fld);
        Mat induced = qt.project(*coords);
        // kill the source boundaries' images too: they project to zero
        // automatically, so bijectivity is rank = hs = ht
        if (hs != ht || induced.rank() != hs) {
            rep.pass = false;
            rep.detail = "induced map not bijective in degree " + std::to_string(n);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// the BGG module J

TruncatedJ build_truncated_J(int p, int r, int m) {
    if (m < 1) throw std::invalid_argument("truncation bound must be >= 1");
    Field f = fp(p);
    // symbolic delta^2 = 0 in Lambda ⊗ S before truncating
    {
        std::map<std::pair<unsigned, std::pair<int, int>>, int> acc;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (i == j) continue;  // xi_i xi_i = 0
                unsigned S = (1u << i) | (1u << j);
                int sign = (i < j) ? ext_sign(1u << i, 1u << j) : ext_sign(1u << i, 1u << j);
                std::pair<int, int> xm = {std::min(i, j), std::max(i, j)};
                int c = sign > 0 ? 1 : p - 1;
                auto key = std::make_pair(S, xm);
                acc[key] = f.add(acc[key], c);
            }
        for (auto& [k, c] : acc)
            if (c) throw VerificationError("delta^2 != 0");
    }

    TruncatedJ J;
    J.r = r;
    J.m = m;
    DgModule& M = J.module;
    M.A = {DgKind::Lambda, p, r};
    M.lo = 0;
    M.hi = r + 2 * (m - 1);
    M.truncated_hi = true;  // the S^{>=m} tail is a sub-dg-module; we quotient by it

    // basis per degree: (S mask, monomial a with |a| < m), degree |S| + 2|a|
    struct B {
        unsigned S;
        std::vector<int> a;
    };
    std::vector<std::vector<B>> basis(M.hi + 1);
    std::vector<std::map<std::pair<unsigned, std::vector<int>>, int>> index(M.hi + 1);
    for (int w = 0; w < m; ++w) {
        std::vector<std::vector<int>> monos;
        monomials_of_weight(r, w, monos);
        for (unsigned S = 0; S < (1u << r); ++S) {
            int deg = popcount(S) + 2 * w;
            for (const auto& a : monos) {
                index[deg][{S, a}] = static_cast<int>(basis[deg].size());
                basis[deg].push_back({S, a});
            }
        }
    }
    for (int n = 0; n <= M.hi; ++n) M.dims.push_back(static_cast<int>(basis[n].size()));
    for (int n = 0; n < M.hi; ++n) {
        Mat d(f, M.dims[n + 1], M.dims[n]);
        for (size_t bi = 0; bi < basis[n].size(); ++bi) {
            const B& b = basis[n][bi];
            for (int i = 0; i < r; ++i) {
                if (!(b.S & (1u << i))) continue;
                std::vector<int> a2 = b.a;
                a2[i] += 1;
                int w2 = 0;
                for (int v : a2) w2 += v;
                if (w2 >= m) continue;  // truncated tail
                int e = eps(b.S, i);
                int row = index[n + 1].at({b.S & ~(1u << i), a2});
                d.set(row, static_cast<int>(bi), e > 0 ? 1 : p - 1);
            }
        }
        M.d.push_back(d);
    }
    M.act.resize(r);
    for (int t = 0; t < r; ++t) {
        for (int n = 0; n <= M.hi; ++n) {
            int tgt_deg = n - 1;
            Mat a(f, tgt_deg >= 0 ? M.dims[tgt_deg] : 0, M.dims[n]);
            if (tgt_deg >= 0) {
                for (size_t bi = 0; bi < basis[n].size(); ++bi) {
                    const B& b = basis[n][bi];
                    if (!(b.S & (1u << t))) continue;
                    int e = eps(b.S, t);
                    int row = index[tgt_deg].at({b.S & ~(1u << t), b.a});
                    a.set(row, static_cast<int>(bi), e > 0 ? 1 : p - 1);
                }
            }
            M.act[t].push_back(a);
        }
    }
    M.validate();
    // S-action: x_t shifts the monomial, truncated
    J.s_action.resize(r);
    for (int t = 0; t < r; ++t)
        for (int n = 0; n <= M.hi; ++n) {
            int tgt_deg = n + 2;
            Mat a(f, tgt_deg <= M.hi ? M.dims[tgt_deg] : 0, M.dims[n]);
            if (tgt_deg <= M.hi) {
                for (size_t bi = 0; bi < basis[n].size(); ++bi) {
                    const B& b = basis[n][bi];
                    std::vector<int> a2 = b.a;
                    a2[t] += 1;
                    int w2 = 0;
                    for (int v : a2) w2 += v;
                    if (w2 >= m) continue;
                    a.set(index[tgt_deg].at({b.S, a2}), static_cast<int>(bi), 1);
                }
            }
            J.s_action[t].push_back(a);
        }
    return J;
}

DgModule hom_J(const DgModule& M, int out_lo, int out_hi) {
    if (M.A.kind != DgKind::Lambda) throw std::invalid_argument("hom_J expects a Lambda-module");
    int r = M.A.r;
    Field f = fp(M.A.p);
    DgModule N;
    N.A = {DgKind::PolyS, M.A.p, r};
    N.lo = out_lo;
    N.hi = out_hi;
    N.truncated_lo = true;
    N.truncated_hi = true;
    if (out_hi < out_lo) throw std::invalid_argument("hom_J: empty window");

    // coordinates of N^n: (monomial a, M-basis vector of degree n + r + 2|a|)
    struct Coord {
        std::vector<int> a;
        int mdeg;
        int moff;  // offset of this a-block
    };
    std::vector<std::vector<Coord>> coords(out_hi - out_lo + 1);
    std::vector<std::map<std::vector<int>, int>> block(out_hi - out_lo + 1);
    for (int n = out_lo; n <= out_hi; ++n) {
        int total = 0;
        for (int w = 0;; ++w) {
            int mdeg = n + r + 2 * w;
            if (mdeg > M.hi) break;
            if (mdeg < M.lo) continue;
            std::vector<std::vector<int>> monos;
            monomials_of_weight(r, w, monos);
            for (const auto& a : monos) {
                block[n - out_lo][a] = total;
                coords[n - out_lo].push_back({a, mdeg, total});
                total += M.dim(mdeg);
            }
        }
        N.dims.push_back(total);
    }

    auto block_of = [&](int n, const std::vector<int>& a) -> int {
        auto& mp = block[n - out_lo];
        auto it = mp.find(a);
        return it == mp.end() ? -1 : it->second;
    };

    // differential: (d phi)_a = d_M(phi_a) - sum_i X_i(phi_{a+e_i})
    for (int n = out_lo; n < out_hi; ++n) {
        Mat d(f, N.dims[n + 1 - out_lo], N.dims[n - out_lo]);
        for (const Coord& c : coords[n + 1 - out_lo]) {
            // from phi_a via d_M
            int src_blk = block_of(n, c.a);
            if (src_blk >= 0) {
                Mat dm = M.dmat(c.mdeg - 1);
                for (int i = 0; i < dm.rows(); ++i)
                    for (int j = 0; j < dm.cols(); ++j)
                        if (dm(i, j)) d.set(c.moff + i, src_blk + j, dm(i, j));
            }
            // from phi_{a+e_i} via -X_i
            for (int i = 0; i < r; ++i) {
                std::vector<int> a2 = c.a;
                a2[i] += 1;
                int src2 = block_of(n, a2);
                if (src2 < 0) continue;
                Mat xi = M.gact(i, c.mdeg + 1);
                for (int x = 0; x < xi.rows(); ++x)
                    for (int y = 0; y < xi.cols(); ++y)
                        if (xi(x, y)) d.set(c.moff + x, src2 + y, f.sub(d(c.moff + x, src2 + y), xi(x, y)));
            }
        }
        N.d.push_back(d);
    }
    // S-action: (x_t phi)_a = phi_{a+e_t}
    N.act.resize(r);
    for (int t = 0; t < r; ++t)
        for (int n = out_lo; n <= out_hi; ++n) {
            int tgt = n + 2;
            Mat a(f, tgt <= out_hi ? N.dims[tgt - out_lo] : 0, N.dims[n - out_lo]);
            if (tgt <= out_hi) {
                for (const Coord& c : coords[tgt - out_lo]) {
                    std::vector<int> a2 = c.a;
                    a2[t] += 1;
                    int src = block_of(n, a2);
                    if (src < 0) continue;
                    for (int i = 0; i < M.dim(c.mdeg); ++i) a.set(c.moff + i, src + i, 1);
                }
            }
            N.act[t].push_back(a);
        }
    N.validate();
    return N;
}

DgModule tensor_S_J(const DgModule& N) {
    if (N.A.kind != DgKind::PolyS) throw std::invalid_argument("tensor_S_J expects an S-module");
    int r = N.A.r;
    Field f = fp(N.A.p);
    DgModule T;
    T.A = {DgKind::Lambda, N.A.p, r};
    T.lo = N.lo;
    T.hi = N.hi + r;
    T.truncated_lo = N.truncated_lo;
    T.truncated_hi = N.truncated_hi;

    // basis of T^n: (q, S) with q + |S| = n; within a fixed n ordered by q
    auto offset = [&](int n, int q, unsigned S) -> int {
        int off = 0;
        for (int qq = std::max(N.lo, n - r); qq <= std::min(N.hi, n); ++qq) {
            int j = n - qq;
            if (j < 0 || j > r) continue;
            std::vector<unsigned> masks = masks_of_weight(r, j);
            if (qq == q) {
                for (size_t i = 0; i < masks.size(); ++i)
                    if (masks[i] == S) return off + static_cast<int>(i) * N.dim(qq);
                return -1;
            }
            off += static_cast<int>(masks.size()) * N.dim(qq);
        }
        return -1;
    };
    for (int n = T.lo; n <= T.hi; ++n) {
        int total = 0;
        for (int q = std::max(N.lo, n - r); q <= std::min(N.hi, n); ++q) {
            int j = n - q;
            if (j < 0 || j > r) continue;
            total += static_cast<int>(masks_of_weight(r, j).size()) * N.dim(q);
        }
        T.dims.push_back(total);
    }
    // d(nu ⊗ f_S) = d_N nu ⊗ f_S + (-1)^{|nu|} sum_{i in S} eps_i(S) x_i nu ⊗ f_{S\i}
    for (int n = T.lo; n < T.hi; ++n) {
        Mat d(f, T.dims[n + 1 - T.lo], T.dims[n - T.lo]);
        for (int q = std::max(N.lo, n - r); q <= std::min(N.hi, n); ++q) {
            int j = n - q;
            if (j < 0 || j > r) continue;
            for (unsigned S : masks_of_weight(r, j)) {
                int src = offset(n, q, S);
                // d_N part: (q+1, S)
                int dst = offset(n + 1, q + 1, S);
                if (dst >= 0) {
                    Mat dn = N.dmat(q);
                    for (int x = 0; x < dn.rows(); ++x)
                        for (int y = 0; y < dn.cols(); ++y)
                            if (dn(x, y)) d.set(dst + x, src + y, f.add(d(dst + x, src + y), dn(x, y)));
                }
                // twisted part
                for (int i = 0; i < r; ++i) {
                    if (!(S & (1u << i))) continue;
                    int dst2 = offset(n + 1, q + 2, S & ~(1u << i));
                    if (dst2 < 0) continue;
                    int e = eps(S, i);
                    if (q % 2 != 0) e = -e;
                    Mat xi = N.gact(i, q);
                    for (int x = 0; x < xi.rows(); ++x)
                        for (int y = 0; y < xi.cols(); ++y) {
                            if (!xi(x, y)) continue;
                            int v = (e > 0) ? xi(x, y) : f.neg(xi(x, y));
                            d.set(dst2 + x, src + y, f.add(d(dst2 + x, src + y), v));
                        }
                }
            }
        }
        T.d.push_back(d);
    }
    // xi_t action: (-1)^{|nu|} eps_t(S) nu ⊗ f_{S\t}
    T.act.resize(r);
    for (int t = 0; t < r; ++t)
        for (int n = T.lo; n <= T.hi; ++n) {
            Mat a(f, T.dim(n - 1), T.dims[n - T.lo]);
            for (int q = std::max(N.lo, n - r); q <= std::min(N.hi, n); ++q) {
                int j = n - q;
                if (j < 0 || j > r) continue;
                for (unsigned S : masks_of_weight(r, j)) {
                    if (!(S & (1u << t))) continue;
                    int src = offset(n, q, S);
                    int dst = offset(n - 1, q, S & ~(1u << t));
                    if (dst < 0) continue;
                    int e = eps(S, t);
                    if (q % 2 != 0) e = -e;
                    for (int i = 0; i < N.dim(q); ++i) a.set(dst + i, src + i, e > 0 ? 1 : f.neg(1));
                }
            }
            T.act[t].push_back(a);
        }
    T.validate();
    return T;
}

// ---------------------------------------------------------------------------
// lambda_support via the exact Koszul-dual complex Hom_Λ(Λ⊗Γ, M)

namespace {

// Hom(P, M)^n has coordinates (a, M^{n-2|a|}); exact in every degree.
struct PriddyComplex {
    const DgModule* M;
    int r;
    Field f;

    struct Coord {
        std::vector<int> a;
        int mdeg;
        int moff;
    };
    std::map<int, std::vector<Coord>> coords;
    std::map<int, std::map<std::vector<int>, int>> blocks;
    std::map<int, int> dims;

    explicit PriddyComplex(const DgModule& m) : M(&m), r(m.A.r), f(fp(m.A.p)) {}

    int dim(int n) {
        ensure(n);
        return dims[n];
    }

    void ensure(int n) {
        if (dims.count(n)) return;
        int total = 0;
        std::vector<Coord> cs;
        std::map<std::vector<int>, int> blk;
        for (int w = 0;; ++w) {
            int mdeg = n - 2 * w;
            if (mdeg < M->lo) break;
            if (mdeg > M->hi) continue;
            std::vector<std::vector<int>> monos;
            monomials_of_weight(r, w, monos);
            for (const auto& a : monos) {
                blk[a] = total;
                cs.push_back({a, mdeg, total});
                total += M->dim(mdeg);
            }
        }
        dims[n] = total;
        coords[n] = std::move(cs);
        blocks[n] = std::move(blk);
    }

    int block_of(int n, const std::vector<int>& a) {
        ensure(n);
        auto it = blocks[n].find(a);
        return it == blocks[n].end() ? -1 : it->second;
    }

    // (d phi)_a = d_M(phi_a) - sum_i X_i(phi_{a-e_i})
    Mat delta(int n) {
        ensure(n);
        ensure(n + 1);
        Mat d(f, dims[n + 1], dims[n]);
        for (const Coord& c : coords[n + 1]) {
            int src = block_of(n, c.a);
            if (src >= 0) {
                Mat dm = M->dmat(c.mdeg - 1);
                for (int x = 0; x < dm.rows(); ++x)
                    for (int y = 0; y < dm.cols(); ++y)
                        if (dm(x, y)) d.set(c.moff + x, src + y, dm(x, y));
            }
            for (int i = 0; i < r; ++i) {
                if (c.a[i] == 0) continue;
                std::vector<int> a2 = c.a;
                a2[i] -= 1;
                int src2 = block_of(n, a2);
                if (src2 < 0) continue;
                Mat xi = M->gact(i, c.mdeg + 1);
                for (int x = 0; x < xi.rows(); ++x)
                    for (int y = 0; y < xi.cols(); ++y)
                        if (xi(x, y)) d.set(c.moff + x, src2 + y, f.sub(d(c.moff + x, src2 + y), xi(x, y)));
            }
        }
        return d;
    }

    // x_t: coordinate a of the image reads coordinate a - e_t of the source
    Mat shift(int t, int n) {
        ensure(n);
        ensure(n + 2);
        Mat a(f, dims[n + 2], dims[n]);
        for (const Coord& c : coords[n + 2]) {
            if (c.a[t] == 0) continue;
            std::vector<int> a2 = c.a;
            a2[t] -= 1;
            int src = block_of(n, a2);
            if (src < 0) continue;
            for (int i = 0; i < M->dim(c.mdeg); ++i) a.set(c.moff + i, src + i, 1);
        }
        return a;
    }
};

struct HomologyDatum {
    Mat cocycles;
    QuotientCoords hq;
    Mat reps;
};

class PriddyHomology {
public:
    explicit PriddyHomology(const DgModule& m) : px_(m), f_(fp(m.A.p)) {}

    int h_dim(int n) { return ensure(n).hq.dim(); }

    Mat action(int t, int n) {
        const HomologyDatum& lo = ensure(n);
        const HomologyDatum& hi = ensure(n + 2);
        Mat shifted = px_.shift(t, n) * lo.reps;
        auto coords = hi.cocycles.solve(shifted);
        if (!coords) throw std::logic_error("x action does not preserve cocycles");
        return hi.hq.project(*coords);
    }

    void drop_below(int n) {
        for (auto it = data_.begin(); it != data_.end();)
            it = (it->first < n) ? data_.erase(it) : std::next(it);
        for (auto it = deltas_.begin(); it != deltas_.end();)
            it = (it->first < n - 1) ? deltas_.erase(it) : std::next(it);
    }

private:
    PriddyComplex px_;
    Field f_;
    std::map<int, HomologyDatum> data_;
    std::map<int, Mat> deltas_;

    const Mat& delta(int n) {
        auto it = deltas_.find(n);
        if (it != deltas_.end()) return it->second;
        return deltas_.emplace(n, px_.delta(n)).first->second;
    }

    const HomologyDatum& ensure(int n) {
        auto it = data_.find(n);
        if (it != data_.end()) return it->second;
        Mat K = delta(n).kernel();
        Mat B = column_space_basis(delta(n - 1));
        HomologyDatum d;
        d.cocycles = K;
        Mat W(f_, K.cols(), 0);
        if (B.cols() > 0) {
            auto sol = K.solve(B);
            if (!sol) throw std::logic_error("boundary outside cocycles");
            W = *sol;
        }
        d.hq.init(W, K.cols(), f_);
        Mat reps(f_, K.rows(), d.hq.dim());
        for (int j = 0; j < d.hq.dim(); ++j)
            for (int i = 0; i < K.rows(); ++i) reps.set(i, j, K(i, d.hq.free_pos[j]));
        d.reps = reps;
        return data_.emplace(n, std::move(d)).first->second;
    }
};

}  // namespace

LambdaSupportResult lambda_support(const DgModule& M, std::optional<int> D) {
    if (M.A.kind != DgKind::Lambda) throw std::invalid_argument("lambda_support expects a Lambda-module");
    int r = M.A.r;
    Ring S = make_ring(M.A.p, r, 2, "x");
    LambdaSupportResult out;
    out.lo = M.lo;
    if (M.hi < M.lo) {  // zero module
        out.variety = variety_irrelevant(S);
        out.stable = true;
        return out;
    }
    bool auto_policy = !D.has_value();
    int span = M.hi - M.lo + 1;
    int cap = auto_policy ? M.hi + 2 * span + 2 * r + 4 : *D;
    int hard_cap = auto_policy ? M.hi + 2 * (2 * span + 2 * r + 4) : *D;
    int dmin = M.hi + 2;

    PriddyHomology machine(M);
    GradedPresenter presenter(S, M.lo);
    std::vector<int> dims;
    int n = M.lo;
    for (;; ++n) {
        int hd = machine.h_dim(n);
        dims.push_back(hd);
        std::vector<Mat> acts;
        if (n - M.lo >= 2)
            for (int t = 0; t < r; ++t) acts.push_back(machine.action(t, n - 2));
        presenter.feed(hd, acts);
        machine.drop_below(n - 2);
        if (auto_policy && n >= dmin) {
            int cutoff = M.lo + (2 * (n - M.lo)) / 3;
            bool gen_ok = presenter.num_generators() == 0 || presenter.max_gen_degree() <= cutoff;
            bool rel_ok = presenter.num_relations() == 0 || presenter.max_rel_degree() <= cutoff;
            if (gen_ok && rel_ok) break;
        }
        if (n >= cap) {
            if (auto_policy && cap < hard_cap) {
                cap = std::min(cap + span, hard_cap);
                continue;
            }
            break;
        }
    }
    out.D_used = n;
    int cutoff = M.lo + (2 * (n - M.lo)) / 3;
    out.stable = (presenter.num_generators() == 0 || presenter.max_gen_degree() <= cutoff) &&
                 (presenter.num_relations() == 0 || presenter.max_rel_degree() <= cutoff);
    out.h_dims = dims;
    Ideal supp = presenter.support_ideal();
    out.variety = supp.is_unit() ? variety_irrelevant(S) : variety_of(supp);
    return out;
}

Variety graded_s_support(const GradedSModule& N, int p) {
    Ring S = make_ring(p, N.r, 2, "x");
    GradedPresenter presenter(S, N.lo);
    for (size_t i = 0; i < N.dims.size(); ++i) {
        std::vector<Mat> acts;
        if (static_cast<int>(i) >= 2)
            for (int t = 0; t < N.r; ++t) acts.push_back(N.act[t][i - 2]);
        presenter.feed(N.dims[i], acts);
    }
    Ideal supp = presenter.support_ideal();
    return supp.is_unit() ? variety_irrelevant(S) : variety_of(supp);
}

DgModule graded_s_to_dg(const GradedSModule& N, int p) {
    Field f = fp(p);
    DgModule out;
    out.A = {DgKind::PolyS, p, N.r};
    out.lo = N.lo;
    out.hi = N.lo + static_cast<int>(N.dims.size()) - 1;
    out.dims = N.dims;
    for (int i = 0; i + 1 < static_cast<int>(N.dims.size()); ++i)
        out.d.push_back(Mat::zero(f, N.dims[i + 1], N.dims[i]));
    out.act.resize(N.r);
    for (int t = 0; t < N.r; ++t)
        for (size_t i = 0; i < N.dims.size(); ++i) {
            int tgt = static_cast<int>(i) + 2;
            if (tgt < static_cast<int>(N.dims.size()))
                out.act[t].push_back(N.act[t][i]);
            else
                out.act[t].push_back(Mat::zero(f, 0, N.dims[i]));
        }
    out.validate();
    return out;
}

std::vector<int> ext_A_hilbert(int p, int r, int D) {
    PhiMap phi = phi_lambda_to_A(p, r);
    QuasiIsoReport rep = verify_quasi_iso(phi.lambda, phi.target, phi.f, -r);
    if (!rep.pass) throw VerificationError("phi is not a quasi-isomorphism");
    DgModule k = dg_field_module({DgKind::Lambda, p, r});
    PriddyHomology machine(k);
    std::vector<int> dims;
    for (int n = 0; n <= D; ++n) {
        int h = machine.h_dim(n);
        int expect = 0;
        if (n % 2 == 0) {
            expect = 1;
            for (int i = 0; i < r - 1; ++i) expect = expect * (n / 2 + i + 1) / (i + 1);
        }
        if (h != expect) throw VerificationError("Ext_A(k,k) dimension mismatch");
        dims.push_back(h);
    }
    return dims;
}

// ---------------------------------------------------------------------------
// coinduction to A and the adjunction bridge

DgModule coinduce_to_A(const FdModule& m) {
    int p = m.alg.p, r = m.alg.r;
    Field f = fp(p);
    DgModule out;
    out.A = {DgKind::KoszulA, p, r};
    out.lo = 0;
    out.hi = r;
    // component n: coordinates (b with |b| = n, v in m)
    std::vector<std::vector<unsigned>> masks(r + 1);
    for (int n = 0; n <= r; ++n) masks[n] = masks_of_weight(r, n);
    auto pos_of = [&](int n, unsigned b) {
        for (size_t i = 0; i < masks[n].size(); ++i)
            if (masks[n][i] == b) return static_cast<int>(i);
        return -1;
    };
    for (int n = 0; n <= r; ++n) out.dims.push_back(static_cast<int>(masks[n].size()) * m.dim);
    // differential: (d phi)_b = -(-1)^n sum_{i in b} (-1)^{#{j in b, j<i}} Z_i phi_{b \ i}
    for (int n = 0; n < r; ++n) {
        Mat d(f, out.dims[n + 1], out.dims[n]);
        for (size_t bi = 0; bi < masks[n + 1].size(); ++bi) {
            unsigned b = masks[n + 1][bi];
            int pos = 0;
            for (int i = 0; i < r; ++i) {
                if (!(b & (1u << i))) continue;
                int sign = ((n % 2 == 0) ? -1 : 1) * ((pos % 2 == 0) ? 1 : -1);
                ++pos;
                int src = pos_of(n, b & ~(1u << i));
                for (int x = 0; x < m.dim; ++x)
                    for (int y = 0; y < m.dim; ++y) {
                        int v = m.Z[i](x, y);
                        if (!v) continue;
                        if (sign < 0) v = f.neg(v);
                        d.set(static_cast<int>(bi) * m.dim + x, src * m.dim + y,
                              f.add(d(static_cast<int>(bi) * m.dim + x, src * m.dim + y), v));
                    }
            }
        }
        out.d.push_back(d);
    }
    out.act.resize(2 * r);
    // z_t acts componentwise
    for (int t = 0; t < r; ++t)
        for (int n = 0; n <= r; ++n) {
            Mat a(f, out.dims[n], out.dims[n]);
            for (size_t bi = 0; bi < masks[n].size(); ++bi)
                for (int x = 0; x < m.dim; ++x)
                    for (int y = 0; y < m.dim; ++y)
                        if (m.Z[t](x, y)) a.set(static_cast<int>(bi) * m.dim + x,
                                                static_cast<int>(bi) * m.dim + y, m.Z[t](x, y));
            out.act[t].push_back(a);
        }
    // y_t: (y_t phi)_c = (-1)^{|phi|} (-1)^{#{j in c: j > t}} phi_{c ∪ t}, t not in c
    for (int t = 0; t < r; ++t)
        for (int n = 0; n <= r; ++n) {
            Mat a(f, n >= 1 ? out.dims[n - 1] : 0, out.dims[n]);
            if (n >= 1) {
                for (size_t ci = 0; ci < masks[n - 1].size(); ++ci) {
                    unsigned c = masks[n - 1][ci];
                    if (c & (1u << t)) continue;
                    int above = 0;
                    for (int j = t + 1; j < r; ++j)
                        if (c & (1u << j)) ++above;
                    int sign = ((n % 2 == 0) ? 1 : -1) * ((above % 2 == 0) ? 1 : -1);
                    int src = pos_of(n, c | (1u << t));
                    int v = (sign > 0) ? 1 : f.neg(1);
                    for (int x = 0; x < m.dim; ++x)
                        a.set(static_cast<int>(ci) * m.dim + x, src * m.dim + x, v);
                }
            }
            out.act[r + t].push_back(a);
        }
    out.validate();
    return out;
}

DgModule restrict_A_to_kE(const DgModule& X) {
    if (X.A.kind != DgKind::KoszulA) throw std::invalid_argument("expected a Koszul A-module");
    DgModule out = X;
    out.A = {DgKind::GroupEA, X.A.p, X.A.r};
    out.act.assign(X.act.begin(), X.act.begin() + X.A.r);
    out.validate();
    return out;
}

int dg_chain_map_dim(const DgModule& X, const DgModule& Y) {
    if (!(X.A == Y.A)) throw std::invalid_argument("chain maps across algebras");
    Field f = fp(X.A.p);
    // unknowns: f_n: X^n -> Y^n for n in the union window
    int lo = std::min(X.lo, Y.lo), hi = std::max(X.hi, Y.hi);
    std::vector<int> offs;
    int total = 0;
    for (int n = lo; n <= hi; ++n) {
        offs.push_back(total);
        total += X.dim(n) * Y.dim(n);
    }
    if (total == 0) return 0;
    auto var = [&](int n, int row, int col) { return offs[n - lo] + col * Y.dim(n) + row; };
    std::vector<std::vector<int>> rows;  // sparse equations
    auto add_block_eq = [&](int n, const Mat& pre, const Mat& post, int ndst) {
        // equation: post . f_n - f_{ndst} . pre = 0 where pre: X^n -> X^{ndst},
        // post: Y^n -> Y^{ndst}
        for (int i = 0; i < Y.dim(ndst); ++i)
            for (int j = 0; j < X.dim(n); ++j) {
                std::vector<int> eq(total, 0);
                bool nz = false;
                for (int k = 0; k < Y.dim(n); ++k)
                    if (post(i, k)) {
                        eq[var(n, k, j)] = f.add(eq[var(n, k, j)], post(i, k));
                        nz = true;
                    }
                for (int k = 0; k < X.dim(ndst); ++k)
                    if (pre(k, j)) {
                        int idx = var(ndst, i, k);
                        eq[idx] = f.sub(eq[idx], pre(k, j));
                        nz = true;
                    }
                if (nz) rows.push_back(std::move(eq));
            }
    };
    for (int n = lo; n <= hi; ++n) {
        add_block_eq(n, X.dmat(n), Y.dmat(n), n + 1);
        for (int g = 0; g < dg_num_generators(X.A); ++g)
            add_block_eq(n, X.gact(g, n), Y.gact(g, n), n + dg_generator_degree(X.A, g));
    }
    Mat sys(f, static_cast<int>(rows.size()), total);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < total; ++j) sys.set(static_cast<int>(i), j, rows[i][j]);
    return sys.kernel().cols();
}

int koszul_A_dual_shift(int p, int r) {
    KoszulAlgebra A = build_koszul_A(p, r);
    Field f = fp(p);
    DgModule M = dg_algebra_module({DgKind::KoszulA, p, r});
    DgModule D = dg_dual(M);
    // a free generator must sit in degree d with d - r = D.lo = 0, so d = r;
    // search for v in D^r with A . v spanning all of D
    int d = r;
    int top = D.dim(r);
    auto spans = [&](const Mat& v) {
        // apply all basis operators z^a y^b (composed from generators; sign
        // irrelevant for spanning)
        std::vector<Mat> vecs;
        for (int deg = -r; deg <= 0; ++deg) {
            for (int idx = 0; idx < A.basis_dim(deg); ++idx) {
                auto [za, yb] = A.element(deg, idx);
                std::vector<int> ze = zexp_of(za, p, r);
                Mat cur = v;
                int curdeg = r;
                for (int i = 0; i < r; ++i)
                    for (int k = 0; k < ze[i]; ++k) {
                        cur = D.gact(i, curdeg) * cur;
                    }
                for (int i = 0; i < r; ++i)
                    if (yb & (1u << i)) {
                        cur = D.gact(r + i, curdeg) * cur;
                        curdeg -= 1;
                    }
                // stack into the big coordinate vector
                Mat big(f, 0, 1);
                for (int n = 0; n <= r; ++n) {
                    if (n == curdeg)
                        big = big.vcat(cur);
                    else
                        big = big.vcat(Mat::zero(f, D.dim(n), 1));
                }
                vecs.push_back(big);
            }
        }
        Mat all(f, vecs.empty() ? 0 : vecs[0].rows(), static_cast<int>(vecs.size()));
        for (size_t j = 0; j < vecs.size(); ++j)
            for (int i = 0; i < all.rows(); ++i) all.set(i, static_cast<int>(j), vecs[j](i, 0));
        int want = 0;
        for (int n = 0; n <= r; ++n) want += D.dim(n);
        return all.rank() == want;
    };
    for (int cand = 0; cand < top; ++cand) {
        Mat v(f, top, 1);
        v.set(cand, 0, 1);
        if (spans(v)) return d;
    }
    Rng rng(12345);
    for (int tries = 0; tries < 200; ++tries) {
        Mat v(f, top, 1);
        for (int i = 0; i < top; ++i) v.set(i, 0, static_cast<int>(rng.below(p)));
        if (!v.is_zero() && spans(v)) return d;
    }
    throw VerificationError("no free generator found for the dual of A");
}

}  // namespace strat
