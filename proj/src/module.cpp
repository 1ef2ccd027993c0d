#include "strat/module.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace strat {

namespace {

Field fp(int p) { return Field::prime(p); }

// monomial z^a index in the regular basis: a_1 least significant, base p
int mono_index(const std::vector<int>& a, int p) {
    int idx = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) idx = idx * p + a[i];
    return idx;
}

std::vector<int> index_mono(int idx, int p, int r) {
    std::vector<int> a(r);
    for (int i = 0; i < r; ++i) {
        a[i] = idx % p;
        idx /= p;
    }
    return a;
}

// span closure of the given columns under the action matrices; returns a
// basis matrix (columns) of the generated submodule
Mat submodule_closure(const std::vector<Mat>& acts, const Mat& seed) {
    if (seed.cols() == 0) return seed;
    const Field& f = seed.field();
    int dim = seed.rows();
    Mat echelon(f, 0, dim);  // row space of the vectors collected so far
    int rank = 0;
    std::vector<Mat> basis_cols;
    std::vector<Mat> queue;
    for (int j = 0; j < seed.cols(); ++j) queue.push_back(seed.col(j));
    size_t head = 0;
    while (head < queue.size()) {
        Mat v = queue[head++];
        Mat cand = echelon.vcat(v.transpose());
        std::vector<int> piv = cand.echelonize();
        if (static_cast<int>(piv.size()) == rank) continue;
        rank = static_cast<int>(piv.size());
        Mat rows(f, rank, dim);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < dim; ++j) rows.set(i, j, cand(i, j));
        echelon = rows;
        basis_cols.push_back(v);
        for (const auto& A : acts) queue.push_back(A * v);
    }
    Mat out(f, dim, static_cast<int>(basis_cols.size()));
    for (size_t j = 0; j < basis_cols.size(); ++j)
        for (int i = 0; i < dim; ++i) out.set(i, static_cast<int>(j), basis_cols[j](i, 0));
    return out;
}

// Quotient of k^dim by the column span of S: returns (projection-composed)
// actions on a complement basis.
std::vector<Mat> quotient_actions(const std::vector<Mat>& acts, const Mat& S, int& qdim) {
    const Field& f = acts.empty() ? S.field() : acts[0].field();
    int dim = S.rows();
    Mat e = S.transpose();
    std::vector<int> pivots = e.echelonize();
    int s = static_cast<int>(pivots.size());
    Mat erows(f, s, dim);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < dim; ++j) erows.set(i, j, e(i, j));
    std::vector<int> comp = complete_basis(erows, dim);
    qdim = static_cast<int>(comp.size());
    // change of basis U = [S-basis | complement standard vectors]
    Mat U(f, dim, dim);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < dim; ++j) U.set(j, i, erows(i, j));
    for (int c = 0; c < qdim; ++c) U.set(comp[c], s + c, 1);
    Mat Uinv = *U.inverse();
    std::vector<Mat> out;
    for (const auto& A : acts) {
        Mat T = Uinv * A * U;
        Mat Q(f, qdim, qdim);
        for (int i = 0; i < qdim; ++i)
            for (int j = 0; j < qdim; ++j) Q.set(i, j, T(s + i, s + j));
        out.push_back(Q);
    }
    return out;
}

}  // namespace

void FdModule::validate() const {
    if (static_cast<int>(Z.size()) != alg.r) throw std::invalid_argument("module needs r action matrices");
    for (const auto& m : Z) {
        if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("action matrix shape mismatch");
        if (m.field().p() != alg.p || m.field().e() != 1)
            throw std::invalid_argument("module data must be over F_p");
    }
    for (size_t i = 0; i < Z.size(); ++i) {
        if (!Z[i].pow(alg.p).is_zero()) throw std::invalid_argument("action is not p-nilpotent");
        for (size_t j = i + 1; j < Z.size(); ++j)
            if (!(Z[i] * Z[j] == Z[j] * Z[i])) throw std::invalid_argument("actions do not commute");
    }
}

Mat FdModule::group_action(int i) const { return Z[i] + Mat::identity(Z[i].field(), dim); }

Mat FdModule::z_monomial(const std::vector<int>& a) const {
    Mat m = Mat::identity(fp(alg.p), dim);
    for (int i = 0; i < alg.r; ++i)
        for (int k = 0; k < a[i]; ++k) m = m * Z[i];
    return m;
}

FdModule trivial_module(const Algebra& alg) {
    FdModule m{alg, 1, {}};
    for (int i = 0; i < alg.r; ++i) m.Z.push_back(Mat::zero(fp(alg.p), 1, 1));
    return m;
}

FdModule regular_module(const Algebra& alg) {
    int d = alg.dim();
    FdModule m{alg, d, {}};
    for (int i = 0; i < alg.r; ++i) {
        Mat Z(fp(alg.p), d, d);
        for (int idx = 0; idx < d; ++idx) {
            std::vector<int> a = index_mono(idx, alg.p, alg.r);
            if (a[i] + 1 < alg.p) {
                a[i]++;
                Z.set(mono_index(a, alg.p), idx, 1);
            }
        }
        m.Z.push_back(Z);
    }
    return m;
}

FdModule direct_sum(const FdModule& a, const FdModule& b) {
    if (a.alg != b.alg) throw std::invalid_argument("direct sum across algebras");
    FdModule m{a.alg, a.dim + b.dim, {}};
    for (int i = 0; i < a.alg.r; ++i) {
        Mat Z(fp(a.alg.p), m.dim, m.dim);
        for (int r = 0; r < a.dim; ++r)
            for (int c = 0; c < a.dim; ++c) Z.set(r, c, a.Z[i](r, c));
        for (int r = 0; r < b.dim; ++r)
            for (int c = 0; c < b.dim; ++c) Z.set(a.dim + r, a.dim + c, b.Z[i](r, c));
        m.Z.push_back(Z);
    }
    return m;
}

FdModule quotient_by_z(const Algebra& alg, int which) {
    FdModule reg = regular_module(alg);
    Mat seed = reg.Z[which].cols_selected([&] {
        std::vector<int> all;
        for (int j = 0; j < reg.dim; ++j) all.push_back(j);
        return all;
    }());
    Mat sub = submodule_closure(reg.Z, seed);
    int qdim = 0;
    std::vector<Mat> acts = quotient_actions(reg.Z, sub, qdim);
    FdModule m{alg, qdim, acts};
    m.validate();
    return m;
}

FdModule tensor_diagonal(const FdModule& m, const FdModule& n, Hopf hopf) {
    if (m.alg != n.alg) throw std::invalid_argument("tensor across algebras");
    FdModule t{m.alg, m.dim * n.dim, {}};
    Mat im = Mat::identity(fp(m.alg.p), m.dim);
    Mat in = Mat::identity(fp(m.alg.p), n.dim);
    for (int i = 0; i < m.alg.r; ++i) {
        Mat Z = m.Z[i].kron(in) + im.kron(n.Z[i]);
        if (hopf == Hopf::Group) Z = Z + m.Z[i].kron(n.Z[i]);
        t.Z.push_back(Z);
    }
    return t;
}

FdModule dual_module(const FdModule& m) {
    FdModule d{m.alg, m.dim, {}};
    for (int i = 0; i < m.alg.r; ++i) {
        // antipode: z -> (1+z)^{-1} - 1 = sum_{j>=1} (-z)^j, truncated by z^p = 0
        Mat s = Mat::zero(fp(m.alg.p), m.dim, m.dim);
        Mat zpow = Mat::identity(fp(m.alg.p), m.dim);
        for (int j = 1; j < m.alg.p; ++j) {
            zpow = zpow * m.Z[i];
            s = (j % 2 == 1) ? s - zpow : s + zpow;
        }
        d.Z.push_back(s.transpose());
    }
    return d;
}

void SubgroupEmbedding::validate(int p) const {
    if (B.rows() != r_target || B.cols() != r_source) throw std::invalid_argument("embedding shape mismatch");
    if (B.field().p() != p || B.field().e() != 1) throw std::invalid_argument("embedding must be over F_p");
    if (r_source < 1 || r_source > r_target) throw std::invalid_argument("embedding rank out of range");
    if (B.rank() != r_source) throw std::invalid_argument("embedding matrix must have full column rank");
}

SubgroupEmbedding identity_embedding(const Algebra& alg) {
    return SubgroupEmbedding{alg.r, alg.r, Mat::identity(fp(alg.p), alg.r)};
}

FdModule restrict_module(const FdModule& m, const SubgroupEmbedding& e) {
    if (e.r_target != m.alg.r) throw std::invalid_argument("embedding rank mismatch");
    e.validate(m.alg.p);
    FdModule out{{m.alg.p, e.r_source}, m.dim, {}};
    Mat id = Mat::identity(fp(m.alg.p), m.dim);
    for (int i = 0; i < e.r_source; ++i) {
        Mat g = id;
        for (int j = 0; j < m.alg.r; ++j) {
            int exp = e.B(j, i);
            for (int k = 0; k < exp; ++k) g = g * m.group_action(j);
        }
        out.Z.push_back(g - id);
    }
    out.validate();
    return out;
}

namespace {

struct Transversal {
    std::vector<int> pivot_rows;  // size r'
    std::vector<int> free_rows;   // size r - r'
    Mat Bp_inv;                   // inverse of the pivot-rows square block
};

Transversal transversal_data(const SubgroupEmbedding& e, int p) {
    Mat bt = e.B.transpose();
    std::vector<int> pivots = bt.echelonize();  // pivot columns of B^T = pivot rows of B
    Transversal t;
    t.pivot_rows = pivots;
    std::vector<bool> isp(e.r_target, false);
    for (int r : pivots) isp[r] = true;
    for (int r = 0; r < e.r_target; ++r)
        if (!isp[r]) t.free_rows.push_back(r);
    Mat Bp(fp(p), e.r_source, e.r_source);
    for (int i = 0; i < e.r_source; ++i)
        for (int j = 0; j < e.r_source; ++j) Bp.set(i, j, e.B(t.pivot_rows[i], j));
    t.Bp_inv = *Bp.inverse();
    return t;
}

}  // namespace

FdModule induce_module(const FdModule& n, const SubgroupEmbedding& e) {
    if (e.r_source != n.alg.r) throw std::invalid_argument("embedding source rank mismatch");
    int p = n.alg.p;
    e.validate(p);
    Transversal tr = transversal_data(e, p);
    int corank = e.r_target - e.r_source;
    int ncosets = 1;
    for (int i = 0; i < corank; ++i) ncosets *= p;
    int dim = ncosets * n.dim;
    Field f = fp(p);

    auto coset_index = [&](const std::vector<int>& tau) {
        int idx = 0;
        for (int k = corank - 1; k >= 0; --k) idx = idx * p + tau[tr.free_rows[k]];
        return idx;
    };
    auto coset_vector = [&](int idx) {
        std::vector<int> tau(e.r_target, 0);
        for (int k = 0; k < corank; ++k) {
            tau[tr.free_rows[k]] = idx % p;
            idx /= p;
        }
        return tau;
    };

    // source group generators act on n through g'_j = 1 + Z'_j
    std::vector<Mat> gsrc;
    for (int j = 0; j < e.r_source; ++j) gsrc.push_back(n.group_action(j));

    FdModule out{{p, e.r_target}, dim, {}};
    for (int i = 0; i < e.r_target; ++i) {
        Mat G(f, dim, dim);
        for (int c = 0; c < ncosets; ++c) {
            std::vector<int> v = coset_vector(c);
            v[i] = (v[i] + 1) % p;  // multiply by g_i
            // split v = tau' + B h: h = Bp^{-1} * v_pivots
            Mat vp(f, e.r_source, 1);
            for (int k = 0; k < e.r_source; ++k) vp.set(k, 0, v[tr.pivot_rows[k]]);
            Mat h = tr.Bp_inv * vp;
            std::vector<int> bh(e.r_target, 0);
            for (int rrow = 0; rrow < e.r_target; ++rrow) {
                int acc = 0;
                for (int k = 0; k < e.r_source; ++k) acc = f.add(acc, f.mul(e.B(rrow, k), h(k, 0)));
                bh[rrow] = acc;
            }
            std::vector<int> tau(e.r_target);
            for (int rrow = 0; rrow < e.r_target; ++rrow) tau[rrow] = f.sub(v[rrow], bh[rrow]);
            int cprime = coset_index(tau);
            Mat hact = Mat::identity(f, n.dim);
            for (int k = 0; k < e.r_source; ++k)
                for (int t = 0; t < h(k, 0); ++t) hact = hact * gsrc[k];
            for (int a = 0; a < n.dim; ++a)
                for (int b = 0; b < n.dim; ++b)
                    if (hact(a, b)) G.set(cprime * n.dim + a, c * n.dim + b, hact(a, b));
        }
        out.Z.push_back(G - Mat::identity(f, dim));
    }
    out.validate();
    return out;
}

ProjectiveCover projective_cover(const FdModule& m) {
    Field f = fp(m.alg.p);
    int pr = m.alg.dim();
    // radical = sum of images of the Z_i
    Mat stacked(f, m.dim, 0);
    for (const auto& Z : m.Z) stacked = stacked.hcat(Z);
    Mat e = stacked.transpose();
    std::vector<int> pivots = e.echelonize();
    int s = static_cast<int>(pivots.size());
    Mat erows(f, s, m.dim);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < m.dim; ++j) erows.set(i, j, e(i, j));
    std::vector<int> tops = complete_basis(erows, m.dim);
    int b = static_cast<int>(tops.size());
    Mat cover(f, m.dim, b * pr);
    for (int j = 0; j < b; ++j) {
        Mat v(f, m.dim, 1);
        v.set(tops[j], 0, 1);
        for (int idx = 0; idx < pr; ++idx) {
            Mat w = m.z_monomial(index_mono(idx, m.alg.p, m.alg.r)) * v;
            for (int i = 0; i < m.dim; ++i) cover.set(i, j * pr + idx, w(i, 0));
        }
    }
    return {b, cover};
}

bool is_projective(const FdModule& m) {
    if (m.dim == 0) return true;
    ProjectiveCover c = projective_cover(m);
    return m.dim == c.b * m.alg.dim() && c.map.rank() == m.dim;
}

int free_rank(const FdModule& m) {
    Mat t = Mat::identity(fp(m.alg.p), m.dim);
    for (const auto& Z : m.Z) t = t * Z.pow(m.alg.p - 1);
    return t.rank();
}

FdModule syzygy(const FdModule& m) {
    ProjectiveCover c = projective_cover(m);
    Mat K = c.map.kernel();  // (b*p^r) x nk
    FdModule reg = regular_module(m.alg);
    Field f = fp(m.alg.p);
    FdModule out{m.alg, K.cols(), {}};
    Mat ib = Mat::identity(f, c.b);
    for (int i = 0; i < m.alg.r; ++i) {
        Mat PZ = ib.kron(reg.Z[i]);
        auto X = K.solve(PZ * K);
        if (!X) throw std::logic_error("syzygy: kernel not invariant");
        out.Z.push_back(*X);
    }
    out.validate();
    return out;
}

SplitProjectives split_projectives(const FdModule& m) {
    Field f = fp(m.alg.p);
    int pr = m.alg.dim();
    Mat ztop = Mat::identity(f, m.dim);
    for (const auto& Z : m.Z) ztop = ztop * Z.pow(m.alg.p - 1);
    std::vector<int> pivcols;
    {
        Mat tmp = ztop;
        pivcols = tmp.echelonize();
    }
    // pivot columns of the échelon of ztop give independent socle images
    // (columns of ztop at those indices are independent)
    int fr = static_cast<int>(pivcols.size());
    if (fr == 0) return {0, m};

    // columns Z^a v_j of the free submodule, copy-major
    Mat V(f, m.dim, fr * pr);
    for (int j = 0; j < fr; ++j) {
        Mat v(f, m.dim, 1);
        v.set(pivcols[j], 0, 1);
        for (int idx = 0; idx < pr; ++idx) {
            Mat w = m.z_monomial(index_mono(idx, m.alg.p, m.alg.r)) * v;
            for (int i = 0; i < m.dim; ++i) V.set(i, j * pr + idx, w(i, 0));
        }
    }
    if (V.rank() != fr * pr) throw std::logic_error("split_projectives: free part not free");

    // functionals f_j with f_j(Z^a v_i) = delta_{ij} delta_{a,top}
    int top_idx = pr - 1;  // monomial (p-1,...,p-1)
    Mat rhs(f, fr * pr, fr);
    for (int j = 0; j < fr; ++j) rhs.set(j * pr + top_idx, j, 1);
    auto sols = V.transpose().solve(rhs);
    if (!sols) throw std::logic_error("split_projectives: retraction solve failed");
    // phi: m -> kE^{fr}: row (j, c) = f_j . Z^{top - c}
    Mat phi(f, fr * pr, m.dim);
    for (int cidx = 0; cidx < pr; ++cidx) {
        std::vector<int> c = index_mono(cidx, m.alg.p, m.alg.r);
        std::vector<int> rest(m.alg.r);
        for (int i = 0; i < m.alg.r; ++i) rest[i] = (m.alg.p - 1) - c[i];
        Mat zr = m.z_monomial(rest);
        for (int j = 0; j < fr; ++j) {
            // f_j as a row vector times zr
            for (int col = 0; col < m.dim; ++col) {
                int acc = 0;
                for (int i = 0; i < m.dim; ++i) acc = f.add(acc, f.mul(sols->operator()(i, j), zr(i, col)));
                phi.set(j * pr + cidx, col, acc);
            }
        }
    }
    Mat K = phi.kernel();
    if (K.cols() != m.dim - fr * pr) throw std::logic_error("split_projectives: unexpected core dimension");
    FdModule core{m.alg, K.cols(), {}};
    for (int i = 0; i < m.alg.r; ++i) {
        auto X = K.solve(m.Z[i] * K);
        if (!X) throw std::logic_error("split_projectives: core not invariant");
        core.Z.push_back(*X);
    }
    core.validate();
    return {fr, core};
}

std::vector<Mat> module_hom_basis(const FdModule& m, const FdModule& n) {
    if (m.alg != n.alg) throw std::invalid_argument("hom across algebras");
    long long vars = static_cast<long long>(m.dim) * n.dim;
    if (vars > 400) throw std::invalid_argument("hom space exceeds the dimension cutoff (400)");
    Field f = fp(m.alg.p);
    int nv = static_cast<int>(vars);
    Mat sys(f, 0, nv);
    Mat in = Mat::identity(f, n.dim), im = Mat::identity(f, m.dim);
    for (int i = 0; i < m.alg.r; ++i) {
        Mat block = m.Z[i].transpose().kron(in) - im.kron(n.Z[i]);
        sys = sys.vcat(block);
    }
    Mat K = sys.kernel();
    std::vector<Mat> out;
    for (int c = 0; c < K.cols(); ++c) {
        Mat X(f, n.dim, m.dim);
        for (int a = 0; a < m.dim; ++a)
            for (int b = 0; b < n.dim; ++b) X.set(b, a, K(a * n.dim + b, c));
        out.push_back(X);
    }
    return out;
}

bool splits_off(const FdModule& big, const FdModule& small, const Mat& inclusion) {
    if (big.alg != small.alg) throw std::invalid_argument("splits_off across algebras");
    long long vars = static_cast<long long>(big.dim) * small.dim;
    if (vars > 40000) throw std::invalid_argument("splits_off: hom space too large");
    Field f = fp(big.alg.p);
    int nv = static_cast<int>(vars);
    // unknown X: small.dim x big.dim with X Z^big = Z^small X and X*inclusion = I
    Mat sys(f, 0, nv);
    Mat rhs(f, 0, 1);
    Mat ib = Mat::identity(f, big.dim), is = Mat::identity(f, small.dim);
    for (int i = 0; i < big.alg.r; ++i) {
        Mat block = big.Z[i].transpose().kron(is) - ib.kron(small.Z[i]);
        sys = sys.vcat(block);
        rhs = rhs.vcat(Mat::zero(f, block.rows(), 1));
    }
    // X * inclusion = I: vec over columns of inclusion
    Mat blk = inclusion.transpose().kron(is);
    sys = sys.vcat(blk);
    Mat id_vec(f, small.dim * small.dim, 1);
    for (int c = 0; c < small.dim; ++c) id_vec.set(c * small.dim + c, 0, 1);
    rhs = rhs.vcat(id_vec);
    return sys.solve(rhs).has_value();
}

namespace {

Mat random_matrix(Rng& rng, const Field& f, int rows, int cols) {
    Mat m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, static_cast<int>(rng.below(f.size())));
    return m;
}

Mat random_invertible(Rng& rng, const Field& f, int n) {
    for (int tries = 0; tries < 1000; ++tries) {
        Mat m = random_matrix(rng, f, n, n);
        if (m.rank() == n) return m;
    }
    return Mat::identity(f, n);
}

// simultaneous strict triangularization via the common-kernel flag
std::vector<Mat> flag_triangularize(const std::vector<Mat>& Z, int dim, const Field& f) {
    if (dim == 0) return Z;
    // levels: W_1 = common kernel, W_2 = preimage of common kernel of the
    // quotient, ...; basis ordered by level gives strictly upper matrices
    std::vector<Mat> cur = Z;
    std::vector<Mat> lifts;  // columns in the original space, grouped by level
    Mat embed = Mat::identity(f, dim);  // current space -> original
    int remaining = dim;
    while (remaining > 0) {
        Mat stacked(f, 0, remaining);
        for (const auto& A : cur) stacked = stacked.vcat(A);
        Mat K = stacked.kernel();
        if (K.cols() == 0) throw std::logic_error("commuting nilpotents with no common kernel");
        Mat K0 = embed * K;
        lifts.push_back(K0);
        // pass to the quotient of the current space by K
        int qdim = 0;
        Mat S = K;
        Mat e = S.transpose();
        std::vector<int> piv = e.echelonize();
        int s = static_cast<int>(piv.size());
        Mat erows(f, s, remaining);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < remaining; ++j) erows.set(i, j, e(i, j));
        std::vector<int> comp = complete_basis(erows, remaining);
        qdim = static_cast<int>(comp.size());
        Mat U(f, remaining, remaining);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < remaining; ++j) U.set(j, i, erows(i, j));
        for (int c = 0; c < qdim; ++c) U.set(comp[c], s + c, 1);
        Mat Uinv = *U.inverse();
        std::vector<Mat> next;
        for (const auto& A : cur) {
            Mat T = Uinv * A * U;
            Mat Q(f, qdim, qdim);
            for (int i = 0; i < qdim; ++i)
                for (int j = 0; j < qdim; ++j) Q.set(i, j, T(s + i, s + j));
            next.push_back(Q);
        }
        // section of the quotient: complement standard vectors, embedded
        Mat sec(f, remaining, qdim);
        for (int c = 0; c < qdim; ++c) sec.set(comp[c], c, 1);
        embed = embed * sec;
        cur = next;
        remaining = qdim;
    }
    Mat T(f, dim, 0);
    for (const auto& L : lifts) T = T.hcat(L);
    Mat Tinv = *T.inverse();
    std::vector<Mat> out;
    for (const auto& A : Z) out.push_back(Tinv * A * T);
    return out;
}

FdModule random_module_raw(Rng rng, int p, int r, int dim_max, int depth);

FdModule random_quotient_of_free(Rng& rng, const Algebra& alg, int copies, int nrel) {
    FdModule reg = regular_module(alg);
    Field f = fp(alg.p);
    // kE^copies with copy-major regular action
    int dim = copies * reg.dim;
    std::vector<Mat> acts;
    Mat ic = Mat::identity(f, copies);
    for (int i = 0; i < alg.r; ++i) acts.push_back(ic.kron(reg.Z[i]));
    Mat seeds = random_matrix(rng, f, dim, nrel);
    Mat sub = submodule_closure(acts, seeds);
    int qdim = 0;
    std::vector<Mat> q = quotient_actions(acts, sub, qdim);
    FdModule m{alg, qdim, q};
    return m;
}

FdModule random_submodule_of_free(Rng& rng, const Algebra& alg, int copies, int ngen) {
    FdModule reg = regular_module(alg);
    Field f = fp(alg.p);
    int dim = copies * reg.dim;
    std::vector<Mat> acts;
    Mat ic = Mat::identity(f, copies);
    for (int i = 0; i < alg.r; ++i) acts.push_back(ic.kron(reg.Z[i]));
    Mat seeds = random_matrix(rng, f, dim, ngen);
    Mat sub = submodule_closure(acts, seeds);
    FdModule m{alg, sub.cols(), {}};
    for (int i = 0; i < alg.r; ++i) {
        auto X = sub.solve(acts[i] * sub);
        if (!X) throw std::logic_error("submodule not invariant");
        m.Z.push_back(*X);
    }
    return m;
}

FdModule random_module_raw(Rng rng, int p, int r, int dim_max, int depth) {
    Algebra alg{p, r};
    for (uint64_t attempt = 0;; ++attempt) {
        Rng sub = rng.stream("attempt", attempt);
        int strategy = depth > 0 ? static_cast<int>(sub.below(3)) : static_cast<int>(sub.below(10));
        FdModule m = trivial_module(alg);
        switch (strategy) {
            case 0:
            case 1:
            case 2: {  // quotient of a free module
                int copies = 1 + static_cast<int>(sub.below(2));
                int nrel = 1 + static_cast<int>(sub.below(static_cast<uint64_t>(r) + 1));
                m = random_quotient_of_free(sub, alg, copies, nrel);
                break;
            }
            case 3:
            case 4: {  // cyclic quotient kE/(w), hypersurface-like supports
                m = random_quotient_of_free(sub, alg, 1, 1);
                break;
            }
            case 5:
            case 6: {  // submodule of a free module
                int copies = 1 + static_cast<int>(sub.below(2));
                int ngen = 1 + static_cast<int>(sub.below(2));
                m = random_submodule_of_free(sub, alg, copies, ngen);
                break;
            }
            case 7:
            case 8: {  // direct sum of two smaller modules
                FdModule a = random_module_raw(sub.stream("a"), p, r, std::max(1, dim_max / 2), depth + 1);
                FdModule b = random_module_raw(sub.stream("b"), p, r, std::max(1, dim_max - a.dim), depth + 1);
                m = direct_sum(a, b);
                break;
            }
            default: {  // shallow module: trivials plus a small quotient
                FdModule a = trivial_module(alg);
                int extra = static_cast<int>(sub.below(3));
                for (int i = 0; i < extra; ++i) a = direct_sum(a, trivial_module(alg));
                FdModule b = random_quotient_of_free(sub, alg, 1, 1 + static_cast<int>(sub.below(2)));
                m = (b.dim > 0) ? direct_sum(a, b) : a;
                break;
            }
        }
        if (m.dim >= 1 && m.dim <= dim_max) return m;
    }
}

}  // namespace

FdModule random_module(Rng rng, int p, int r, int dim_max) {
    if (!is_prime(p) || r < 1 || dim_max < 1) throw std::invalid_argument("random_module: bad parameters");
    FdModule raw = random_module_raw(rng.stream("shape"), p, r, dim_max, 0);
    Field f = fp(p);
    std::vector<Mat> upper = flag_triangularize(raw.Z, raw.dim, f);
    Rng conj = rng.stream("conj");
    Mat g = random_invertible(conj, f, raw.dim);
    Mat ginv = *g.inverse();
    FdModule out{{p, r}, raw.dim, {}};
    for (const auto& N : upper) out.Z.push_back(g * N * ginv);
    out.validate();
    return out;
}

SubgroupEmbedding random_embedding(Rng rng, int p, int r_target, int r_source) {
    Field f = fp(p);
    for (uint64_t attempt = 0;; ++attempt) {
        Rng sub = rng.stream("embed", attempt);
        Mat B = random_matrix(sub, f, r_target, r_source);
        if (B.rank() == r_source) return SubgroupEmbedding{r_target, r_source, B};
    }
}

int GroupTable::inverse(int a) const {
    for (int b = 0; b < order; ++b)
        if (at(a, b) == 0) return b;
    throw std::logic_error("group element without inverse");
}

GroupTable cyclic_group(int n) {
    GroupTable t;
    t.name = "Z/" + std::to_string(n);
    t.order = n;
    t.mul.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t.mul[a * n + b] = (a + b) % n;
    return t;
}

GroupTable quaternion_group() {
    // elements: 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
    GroupTable t;
    t.name = "Q8";
    t.order = 8;
    auto neg = [](int a) { return a ^ 1; };
    auto unit = [&](int a, int b) -> int {
        // products of {1,i,j,k} as signed units
        static const int tab[4][4] = {{0, 2, 4, 6}, {2, 1, 6, 5}, {4, 7, 1, 2}, {6, 4, 3, 1}};
        // tab in terms of codes 0:1,1:-1,2:i,3:-i,4:j,5:-j,6:k,7:-k
        int ia = a / 2, ib = b / 2;
        int base = tab[ia][ib];
        bool flip = ((a % 2) + (b % 2)) % 2 == 1;
        return flip ? neg(base) : base;
    };
    t.mul.resize(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) t.mul[a * 8 + b] = unit(a, b);
    return t;
}

void GroupModule::validate() const {
    if (static_cast<int>(act.size()) != G.order) throw std::invalid_argument("group module needs one matrix per element");
    Mat id = Mat::identity(fp(p), dim);
    if (!(act[0] == id)) throw std::invalid_argument("identity must act as identity");
    for (int a = 0; a < G.order; ++a)
        for (int b = 0; b < G.order; ++b)
            if (!(act[a] * act[b] == act[G.at(a, b)]))
                throw std::invalid_argument("group action is not multiplicative");
}

GroupModule group_trivial(const GroupTable& G, int p) {
    GroupModule m{G, p, 1, {}};
    for (int g = 0; g < G.order; ++g) m.act.push_back(Mat::identity(fp(p), 1));
    return m;
}

GroupModule group_regular(const GroupTable& G, int p) {
    GroupModule m{G, p, G.order, {}};
    for (int g = 0; g < G.order; ++g) {
        Mat A(fp(p), G.order, G.order);
        for (int h = 0; h < G.order; ++h) A.set(G.at(g, h), h, 1);
        m.act.push_back(A);
    }
    return m;
}

GroupModule group_tensor(const GroupModule& a, const GroupModule& b) {
    if (a.G.order != b.G.order || a.p != b.p) throw std::invalid_argument("group tensor mismatch");
    GroupModule m{a.G, a.p, a.dim * b.dim, {}};
    for (int g = 0; g < a.G.order; ++g) m.act.push_back(a.act[g].kron(b.act[g]));
    return m;
}

GroupModule group_restrict(const GroupModule& m, const std::vector<int>& subgroup_elements) {
    // reindex the subgroup as its own table
    std::vector<int> elems = subgroup_elements;
    std::sort(elems.begin(), elems.end());
    if (elems.empty() || elems[0] != 0) throw std::invalid_argument("subgroup must contain the identity");
    std::vector<int> pos(m.G.order, -1);
    for (size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
    GroupTable t;
    t.name = m.G.name + "-sub";
    t.order = static_cast<int>(elems.size());
    t.mul.resize(static_cast<size_t>(t.order) * t.order);
    for (int a = 0; a < t.order; ++a)
        for (int b = 0; b < t.order; ++b) {
            int prod = m.G.at(elems[a], elems[b]);
            if (pos[prod] < 0) throw std::invalid_argument("element list is not a subgroup");
            t.mul[a * t.order + b] = pos[prod];
        }
    GroupModule out{t, m.p, m.dim, {}};
    for (int a = 0; a < t.order; ++a) out.act.push_back(m.act[elems[a]]);
    return out;
}

bool group_is_projective(const GroupModule& m) {
    if (m.dim == 0) return true;
    Field f = fp(m.p);
    // radical of the module: span (g-1) m over all g
    Mat id = Mat::identity(f, m.dim);
    Mat stacked(f, m.dim, 0);
    for (int g = 1; g < m.G.order; ++g) stacked = stacked.hcat(m.act[g] - id);
    Mat e = stacked.transpose();
    std::vector<int> piv = e.echelonize();
    int s = static_cast<int>(piv.size());
    Mat erows(f, s, m.dim);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < m.dim; ++j) erows.set(i, j, e(i, j));
    std::vector<int> tops = complete_basis(erows, m.dim);
    int b = static_cast<int>(tops.size());
    if (m.dim != b * m.G.order) return false;
    Mat cover(f, m.dim, b * m.G.order);
    for (int j = 0; j < b; ++j)
        for (int g = 0; g < m.G.order; ++g) {
            for (int i = 0; i < m.dim; ++i) cover.set(i, j * m.G.order + g, m.act[g](i, tops[j]));
        }
    return cover.rank() == m.dim;
}

GroupModule random_group_module(Rng rng, const GroupTable& G, int p, int dim_max) {
    GroupModule reg = group_regular(G, p);
    Field f = fp(p);
    for (uint64_t attempt = 0;; ++attempt) {
        Rng sub = rng.stream("gmod", attempt);
        int copies = 1 + static_cast<int>(sub.below(2));
        int dim = copies * G.order;
        std::vector<Mat> acts;
        Mat ic = Mat::identity(f, copies);
        for (int g = 0; g < G.order; ++g) acts.push_back(ic.kron(reg.act[g]));
        int nrel = 1 + static_cast<int>(sub.below(3));
        Mat seeds(f, dim, nrel);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < nrel; ++j) seeds.set(i, j, static_cast<int>(sub.below(p)));
        Mat subm = submodule_closure(acts, seeds);
        int qdim = 0;
        std::vector<Mat> q = quotient_actions(acts, subm, qdim);
        if (qdim < 1 || qdim > dim_max) continue;
        GroupModule m{G, p, qdim, q};
        m.validate();
        return m;
    }
}

FdModule group_restrict_elementary(const GroupModule& m, const std::vector<int>& generators) {
    int r = static_cast<int>(generators.size());
    Field f = fp(m.p);
    Mat id = Mat::identity(f, m.dim);
    FdModule out{{m.p, r}, m.dim, {}};
    for (int g : generators) {
        // each generator must have order p and commute with the others
        int power = g;
        for (int k = 1; k < m.p; ++k) power = m.G.at(power, g);
        if (power != 0) throw std::invalid_argument("subgroup generator does not have order p");
        out.Z.push_back(m.act[g] - id);
    }
    out.validate();  // also catches non-commuting generators
    return out;
}

}  // namespace strat
