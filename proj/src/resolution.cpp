#include "strat/resolution.hpp"

#include <algorithm>
#include <functional>

namespace strat {

namespace {

Field fp(int p) { return Field::prime(p); }

void gen_compositions(int n, int r, std::vector<int>& cur, int pos,
                      std::vector<std::vector<int>>& out) {
    if (pos == r - 1) {
        cur[pos] = n;
        out.push_back(cur);
        return;
    }
    for (int v = n; v >= 0; --v) {
        cur[pos] = v;
        gen_compositions(n - v, r, cur, pos + 1, out);
    }
}

int mono_lex_index(const std::vector<int>& a, int p) {
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

}  // namespace

KResolution::KResolution(Algebra alg, int upto) : alg_(alg) { extend(upto); }

void KResolution::extend(int upto) {
    for (int n = static_cast<int>(comps_.size()); n <= upto; ++n) {
        std::vector<std::vector<int>> list;
        std::vector<int> cur(alg_.r, 0);
        gen_compositions(n, alg_.r, cur, 0, list);
        std::map<std::vector<int>, int> idx;
        for (size_t i = 0; i < list.size(); ++i) idx[list[i]] = static_cast<int>(i);
        comps_.push_back(std::move(list));
        index_.push_back(std::move(idx));
    }
}

int KResolution::component_index(int n, const std::vector<int>& w) const {
    auto it = index_[n].find(w);
    if (it == index_[n].end()) throw std::logic_error("unknown resolution component");
    return it->second;
}

int KResolution::block_sign(const std::vector<int>& w, int i) const {
    int s = 0;
    for (int j = 0; j < i; ++j) s += w[j];
    return (s % 2 == 0) ? 1 : -1;
}

Mat KResolution::diff_mat(int n) const {
    int pr = alg_.dim();
    Field f = fp(alg_.p);
    FdModule reg = regular_module(alg_);
    Mat d(f, betti(n - 1) * pr, betti(n) * pr);
    for (int src = 0; src < betti(n); ++src) {
        const std::vector<int>& w = comps_[n][src];
        for (int i = 0; i < alg_.r; ++i) {
            if (w[i] == 0) continue;
            std::vector<int> u = w;
            u[i] -= 1;
            int tgt = component_index(n - 1, u);
            int power = block_power(w, i);
            int sign = block_sign(w, i);
            Mat blk = reg.Z[i].pow(power);
            if (sign < 0) blk = blk.negated();
            for (int a = 0; a < pr; ++a)
                for (int b = 0; b < pr; ++b)
                    if (blk(a, b)) d.set(tgt * pr + a, src * pr + b, blk(a, b));
        }
    }
    return d;
}

namespace {

// full module map kE^{b_src} -> target free module from generator images
// (columns are the images of z^c e_j, copy-major)
Mat module_map_from_gens(const Algebra& alg, const Mat& gen_images) {
    int pr = alg.dim();
    int b_src = gen_images.cols();
    int dim_tgt = gen_images.rows();
    if (dim_tgt % pr != 0) throw std::logic_error("target is not a free module");
    int b_tgt = dim_tgt / pr;
    Field f = fp(alg.p);
    FdModule reg = regular_module(alg);
    Mat ib = Mat::identity(f, b_tgt);
    // monomial action matrices on the target free module
    Mat out(f, dim_tgt, b_src * pr);
    for (int idx = 0; idx < pr; ++idx) {
        std::vector<int> c = index_mono(idx, alg.p, alg.r);
        Mat zc = Mat::identity(f, pr);
        FdModule reg2 = reg;
        for (int i = 0; i < alg.r; ++i)
            for (int k = 0; k < c[i]; ++k) zc = zc * reg2.Z[i];
        Mat act = ib.kron(zc);
        Mat cols = act * gen_images;
        for (int j = 0; j < b_src; ++j)
            for (int i = 0; i < dim_tgt; ++i) out.set(i, j * pr + idx, cols(i, j));
    }
    return out;
}

}  // namespace

MinimalResolution minimal_resolution(const FdModule& m, int length) {
    if (length < 0) throw std::invalid_argument("resolution length must be >= 0");
    MinimalResolution res;
    res.module = m;
    Field f = fp(m.alg.p);
    int pr = m.alg.dim();
    FdModule reg = regular_module(m.alg);

    ProjectiveCover cover = projective_cover(m);
    res.betti.push_back(cover.b);
    res.augmentation = cover.map;

    Mat kernel = cover.map.kernel();  // inside P_0 = kE^{b_0}
    int cur_b = cover.b;
    for (int n = 1; n <= length; ++n) {
        // generators of the kernel submodule: complement of its radical
        Mat ib = Mat::identity(f, cur_b);
        std::vector<Mat> PZ;
        for (int i = 0; i < m.alg.r; ++i) PZ.push_back(ib.kron(reg.Z[i]));
        int kd = kernel.cols();
        Mat rad_coords(f, kd, 0);
        if (kd > 0) {
            for (int i = 0; i < m.alg.r; ++i) {
                auto W = kernel.solve(PZ[i] * kernel);
                if (!W) throw std::logic_error("kernel not invariant");
                rad_coords = rad_coords.hcat(*W);
            }
        }
        Mat e = rad_coords.transpose();
        std::vector<int> piv = e.echelonize();
        Mat erows(f, static_cast<int>(piv.size()), kd);
        for (size_t i = 0; i < piv.size(); ++i)
            for (int j = 0; j < kd; ++j) erows.set(static_cast<int>(i), j, e(static_cast<int>(i), j));
        std::vector<int> tops = complete_basis(erows, kd);
        int b = static_cast<int>(tops.size());
        res.betti.push_back(b);
        Mat gen_images(f, cur_b * pr, b);
        for (int j = 0; j < b; ++j)
            for (int i = 0; i < cur_b * pr; ++i) gen_images.set(i, j, kernel(i, tops[j]));
        Mat diff = module_map_from_gens(m.alg, gen_images);
        res.diff.push_back(diff);
        kernel = diff.kernel();
        cur_b = b;
    }
    return res;
}

MinimalResolution k_structured_resolution(const Algebra& alg, int length) {
    KResolution kres(alg, length);
    MinimalResolution res;
    res.module = trivial_module(alg);
    Field f = fp(alg.p);
    int pr = alg.dim();
    for (int n = 0; n <= length; ++n) res.betti.push_back(kres.betti(n));
    Mat aug(f, 1, pr);
    aug.set(0, 0, 1);  // coefficient of the monomial 1 in the single component
    res.augmentation = aug;
    for (int n = 1; n <= length; ++n) res.diff.push_back(kres.diff_mat(n));
    return res;
}

CohomRing make_cohom_ring(const Algebra& alg) {
    int dg = (alg.p == 2) ? 1 : 2;
    return CohomRing{alg, make_ring(alg.p, alg.r, dg, "x")};
}

Ideal irrelevant_ideal(const CohomRing& R) {
    std::vector<Poly> gens;
    for (int v = 0; v < R.alg.r; ++v) gens.push_back(Poly::variable(R.ring, v));
    return Ideal(R.ring, std::move(gens));
}

std::pair<Cocycle, Poly> cocycle_from_linear(const CohomRing& R, const std::vector<int>& coeffs) {
    if (static_cast<int>(coeffs.size()) != R.alg.r) throw std::invalid_argument("coefficient arity mismatch");
    int dg = R.gen_degree();
    KResolution kres(R.alg, dg);
    Cocycle z;
    z.degree = dg;
    z.row.assign(kres.betti(dg), 0);
    Poly poly = Poly::zero(R.ring);
    for (int t = 0; t < R.alg.r; ++t) {
        int c = ((coeffs[t] % R.alg.p) + R.alg.p) % R.alg.p;
        if (!c) continue;
        std::vector<int> w(R.alg.r, 0);
        w[t] = dg;
        z.row[kres.component_index(dg, w)] = c;
        poly = poly + Poly::variable(R.ring, t).scaled(c);
    }
    return {z, poly};
}

std::vector<Mat> yoneda_action(const Cocycle& zeta, const MinimalResolution& res) {
    const Algebra& alg = res.module.alg;
    Field f = fp(alg.p);
    int d = zeta.degree;
    int len = static_cast<int>(res.betti.size()) - 1;
    if (d > len) throw std::invalid_argument("resolution too short for this cocycle");
    if (static_cast<int>(zeta.row.size()) != res.betti[d])
        throw std::invalid_argument("cocycle row length mismatch");
    std::vector<Mat> maps;
    int pr = alg.dim();

    // maps[0]: P_d -> P_0 with aug . maps[0] = zeta on generators
    Mat zrow(f, res.augmentation.rows(), res.betti[d]);
    for (int j = 0; j < res.betti[d]; ++j) zrow.set(0, j, zeta.row[j]);
    auto U0 = res.augmentation.solve(zrow);
    if (!U0) throw std::logic_error("yoneda lift: augmentation solve failed");
    maps.push_back(module_map_from_gens(alg, *U0));

    for (int n = 1; n + d <= len; ++n) {
        // solve diff[n-1] . X = maps[n-1] . diff[n+d-1] on generators
        const Mat& up = res.diff[n + d - 1];
        Mat rhs_full = maps[n - 1] * up;
        Mat rhs(f, rhs_full.rows(), res.betti[n + d]);
        for (int j = 0; j < res.betti[n + d]; ++j)
            for (int i = 0; i < rhs_full.rows(); ++i) rhs.set(i, j, rhs_full(i, j * pr));
        auto U = res.diff[n - 1].solve(rhs);
        if (!U) throw std::logic_error("yoneda lift: inconsistent system");
        maps.push_back(module_map_from_gens(alg, *U));
    }
    return maps;
}

CohomologyData cohomology_ring(const Algebra& alg, int D) {
    int dg = (alg.p == 2) ? 1 : 2;
    if (D < dg) throw std::invalid_argument("cohomology window must reach the generator degree");
    CohomologyData data{make_cohom_ring(alg), {}, {}};
    KResolution kres(alg, D);
    for (int n = 0; n <= D; ++n) data.hilbert.push_back(kres.betti(n));
    for (int t = 0; t < alg.r; ++t) {
        std::vector<int> coeffs(alg.r, 0);
        coeffs[t] = 1;
        data.generators.push_back(cocycle_from_linear(data.ring, coeffs).first);
    }

    // verification: products of the generators, computed with solved chain
    // lifts, must reproduce the dual basis of the predicted monomial
    // components; their count per degree is the Hilbert function of the
    // reduced ring.
    int Dv = std::min(D, 3 * dg);
    MinimalResolution resk = k_structured_resolution(alg, Dv);
    std::vector<std::vector<Mat>> lifts;
    for (int t = 0; t < alg.r; ++t) lifts.push_back(yoneda_action(data.generators[t], resk));
    int pr = alg.dim();
    // all monomials of weighted degree <= Dv
    std::vector<std::vector<int>> monos = {std::vector<int>(alg.r, 0)};
    for (size_t head = 0; head < monos.size(); ++head) {
        std::vector<int> cur = monos[head];
        int wd = 0;
        for (int v : cur) wd += v * dg;
        // extend by one more factor (nondecreasing variable index keeps each
        // monomial listed once)
        int first = 0;
        for (int t = 0; t < alg.r; ++t)
            if (cur[t] > 0) {
                first = t;
                break;
            }
        if (wd + dg > Dv) continue;
        for (int t = 0; t <= (wd == 0 ? alg.r - 1 : first); ++t) {
            std::vector<int> nxt = cur;
            nxt[t] += 1;
            monos.push_back(nxt);
        }
    }
    KResolution kv(alg, Dv);
    for (const auto& a : monos) {
        int wd = 0;
        for (int v : a) wd += v * dg;
        if (wd == 0 || wd > Dv) continue;
        // functional = x_{t1} lifted, composed in ascending variable order
        // against the remaining monomial's functional
        // compute iteratively: start from the counit row and apply lifts
        Mat row(fp(alg.p), 1, resk.betti[0] * pr);
        row.set(0, 0, 1);  // counit: coefficient of the degree-0 generator
        // wait: augmentation of the k-resolution is 1 x (b_0 p^r); counit row
        // equals it
        row = resk.augmentation;
        int deg_so_far = 0;
        for (int t = 0; t < alg.r; ++t)
            for (int k = 0; k < a[t]; ++k) {
                // row: functional on P_{deg_so_far}; compose with lift of x_t
                const Mat& lift = lifts[t][deg_so_far];
                row = row * lift;
                deg_so_far += dg;
            }
        // restrict to generators and compare with the dual of component dg*a
        std::vector<int> expected(kv.betti(wd), 0);
        std::vector<int> w(alg.r);
        for (int t = 0; t < alg.r; ++t) w[t] = dg * a[t];
        expected[kv.component_index(wd, w)] = 1;
        for (int j = 0; j < kv.betti(wd); ++j)
            if (row(0, j * pr) != expected[j])
                throw VerificationError("cohomology generator product failed verification");
    }
    return data;
}

FdModule carlson_module(const Algebra& alg, const Cocycle& zeta) {
    if (zeta.is_zero()) throw std::invalid_argument("zeta must be a nonzero cocycle");
    int d = zeta.degree;
    Field f = fp(alg.p);
    MinimalResolution res = k_structured_resolution(alg, d);
    if (static_cast<int>(zeta.row.size()) != res.betti[d])
        throw std::invalid_argument("cocycle row length mismatch");
    int pr = alg.dim();
    FdModule reg = regular_module(alg);
    // Omega^d k = ker(P_{d-1} -> P_{d-2}) (augmentation for d = 1)
    Mat bound = (d == 1) ? res.augmentation : res.diff[d - 2];
    Mat omega = bound.kernel();  // dim P_{d-1} x w
    const Mat& del = res.diff[d - 1];
    auto pre = del.solve(omega);
    if (!pre) throw std::logic_error("carlson_module: omega not in the image");
    // zeta-hat on the kernel basis: functional row on P_d applied to preimages
    Mat zrow(f, 1, res.betti[d] * pr);
    for (int j = 0; j < res.betti[d]; ++j) zrow.set(0, j * pr, zeta.row[j]);
    Mat zhat = zrow * (*pre);  // 1 x w
    Mat lcoords = zhat.kernel();
    Mat L = omega * lcoords;  // columns: basis of L_zeta inside P_{d-1}
    FdModule out{alg, L.cols(), {}};
    Mat ib = Mat::identity(f, res.betti[d - 1]);
    for (int i = 0; i < alg.r; ++i) {
        Mat PZ = ib.kron(reg.Z[i]);
        auto X = L.solve(PZ * L);
        if (!X) throw std::logic_error("carlson_module: not a submodule");
        out.Z.push_back(*X);
    }
    out.validate();
    return out;
}

FdModule koszul_module(const FdModule& m, const Cocycle& zeta) {
    FdModule L = carlson_module(m.alg, zeta);
    return tensor_diagonal(m, L, Hopf::Group);
}

// ---------------------------------------------------------------------------
// GradedPresenter

GradedPresenter::GradedPresenter(Ring ring, int lo)
    : ring_(std::move(ring)), fld_(Field::prime(ring_->p)), lo_(lo), dg_(ring_->gen_degree) {}

std::vector<int> GradedPresenter::gen_degrees() const {
    std::vector<int> out;
    for (const auto& g : gens_) out.push_back(g.degree);
    return out;
}

void GradedPresenter::feed(int dim, const std::vector<Mat>& act_from_below) {
    int pos = static_cast<int>(dims_.size());
    int n = lo_ + pos;
    dims_.push_back(dim);
    cols_.emplace_back();
    col_index_.emplace_back();

    // columns from one gen_degree below (all (gen, monomial) pairs of this
    // degree, value computed along the canonical first-variable path)
    std::vector<Mat> colvals;
    auto push_col = [&](const Col& c, Mat value) {
        col_index_[pos][{c.gen, c.mono}] = static_cast<int>(cols_[pos].size());
        cols_[pos].push_back(c);
        colvals.push_back(std::move(value));
    };
    if (pos >= dg_) {
        int below = pos - dg_;
        for (size_t ci = 0; ci < cols_[below].size(); ++ci) {
            const Col& c = cols_[below][ci];
            int first = ring_->nvars - 1;
            for (int v = 0; v < ring_->nvars; ++v)
                if (mono_exp(c.mono, v)) {
                    first = v;
                    break;
                }
            for (int t = 0; t <= first; ++t) {
                Col nc{c.gen, mono_set(c.mono, t, mono_exp(c.mono, t) + 1)};
                push_col(nc, act_from_below[t] * col_mats_[below].col(static_cast<int>(ci)));
            }
        }
    }
    int n_old_cols = static_cast<int>(cols_[pos].size());
    Mat G(fld_, dim, n_old_cols);
    for (int j = 0; j < n_old_cols; ++j)
        for (int i = 0; i < dim; ++i) G.set(i, j, colvals[j](i, 0));

    // full syzygy space at this degree
    Mat K = G.kernel();  // n_old_cols x z

    // shifts of the full syzygy space one gen_degree below
    Mat S(fld_, n_old_cols, 0);
    if (pos >= dg_ && syz_basis_[pos - dg_].cols() > 0) {
        int below = pos - dg_;
        const Mat& Kb = syz_basis_[below];
        S = Mat(fld_, n_old_cols, Kb.cols() * ring_->nvars);
        for (int s = 0; s < Kb.cols(); ++s) {
            for (int t = 0; t < ring_->nvars; ++t) {
                for (int ci = 0; ci < Kb.rows(); ++ci) {
                    int coef = Kb(ci, s);
                    if (!coef) continue;
                    const Col& c = cols_[below][ci];
                    Mono m2 = mono_set(c.mono, t, mono_exp(c.mono, t) + 1);
                    auto it = col_index_[pos].find({c.gen, m2});
                    if (it == col_index_[pos].end()) throw std::logic_error("missing shifted column");
                    int row = it->second;
                    int cidx = s * ring_->nvars + t;
                    S.set(row, cidx, fld_.add(S(row, cidx), coef));
                }
            }
        }
    }

    if (K.cols() > 0) {
        Mat W(fld_, K.cols(), 0);
        if (S.cols() > 0) {
            auto sol = K.solve(S);
            if (!sol) throw std::logic_error("shifted relation is not a syzygy");
            W = *sol;
        }
        Mat e = W.transpose();
        std::vector<int> piv = e.echelonize();
        Mat erows(fld_, static_cast<int>(piv.size()), K.cols());
        for (size_t i = 0; i < piv.size(); ++i)
            for (int j = 0; j < K.cols(); ++j) erows.set(static_cast<int>(i), j, e(static_cast<int>(i), j));
        std::vector<int> fresh = complete_basis(erows, K.cols());
        for (int idx : fresh) {
            Rel rel;
            rel.degree = n;
            for (int ci = 0; ci < K.rows(); ++ci) {
                int coef = K(ci, idx);
                if (coef) rel.coeffs.push_back({cols_[pos][ci], coef});
            }
            rels_.push_back(rel);
            max_rel_degree_ = std::max(max_rel_degree_, n);
        }
    }

    // new generators: complement of the column span inside E_n
    Mat e = G.transpose();
    std::vector<int> piv = e.echelonize();
    Mat erows(fld_, static_cast<int>(piv.size()), dim);
    for (size_t i = 0; i < piv.size(); ++i)
        for (int j = 0; j < dim; ++j) erows.set(static_cast<int>(i), j, e(static_cast<int>(i), j));
    std::vector<int> tops = complete_basis(erows, dim);
    for (int idx : tops) {
        int gid = static_cast<int>(gens_.size());
        gens_.push_back({n});
        max_gen_degree_ = std::max(max_gen_degree_, n);
        Mat v(fld_, dim, 1);
        v.set(idx, 0, 1);
        push_col(Col{gid, 0}, v);
    }

    // store the column matrix and the padded syzygy basis
    int n_cols = static_cast<int>(cols_[pos].size());
    Mat full(fld_, dim, n_cols);
    for (int j = 0; j < n_cols; ++j)
        for (int i = 0; i < dim; ++i) full.set(i, j, colvals[j](i, 0));
    col_mats_.push_back(full);
    Mat Kpad(fld_, n_cols, K.cols());
    for (int j = 0; j < K.cols(); ++j)
        for (int i = 0; i < K.rows(); ++i) Kpad.set(i, j, K(i, j));
    syz_basis_.push_back(Kpad);
}

std::vector<std::vector<Poly>> GradedPresenter::presentation() const {
    std::vector<std::vector<Poly>> mat(gens_.size());
    for (size_t g = 0; g < gens_.size(); ++g)
        mat[g].assign(rels_.size(), Poly::zero(ring_));
    for (size_t j = 0; j < rels_.size(); ++j)
        for (const auto& [col, coef] : rels_[j].coeffs)
            mat[col.gen][j] = mat[col.gen][j] + Poly::term(ring_, col.mono, coef);
    return mat;
}

Ideal GradedPresenter::annihilator_support_ideal() const {
    if (gens_.empty()) return Ideal::unit(ring_);
    std::vector<Ideal> anns;
    for (size_t g = 0; g < gens_.size(); ++g) {
        // degreewise kernels of (coefficients of f) -> f(X) . g
        std::vector<Poly> found;
        std::vector<Poly> gb;
        for (size_t pos = 0; pos < dims_.size(); ++pos) {
            std::vector<int> colidx;
            std::vector<Mono> monos;
            for (size_t ci = 0; ci < cols_[pos].size(); ++ci)
                if (cols_[pos][ci].gen == static_cast<int>(g)) {
                    colidx.push_back(static_cast<int>(ci));
                    monos.push_back(cols_[pos][ci].mono);
                }
            if (colidx.empty()) continue;
            Mat C = col_mats_[pos].cols_selected(colidx);
            Mat K = C.kernel();
            for (int kc = 0; kc < K.cols(); ++kc) {
                std::vector<Term> terms;
                for (size_t mi = 0; mi < monos.size(); ++mi)
                    if (K(static_cast<int>(mi), kc))
                        terms.push_back({monos[mi], K(static_cast<int>(mi), kc)});
                Poly f(ring_, std::move(terms));
                if (f.is_zero()) continue;
                Poly r = normal_form(f, gb);
                if (r.is_zero()) continue;
                found.push_back(r.monic());
                gb = buchberger_reduced(ring_, found);
                found = gb;
            }
        }
        anns.push_back(Ideal(ring_, found));
    }
    // iterated intersection, skipping factors that already contain the result
    Ideal acc = anns[0];
    for (size_t j = 1; j < anns.size(); ++j) {
        bool covered = true;
        for (const Poly& f : acc.generators())
            if (!anns[j].contains(f)) {
                covered = false;
                break;
            }
        if (covered) continue;
        acc = Ideal::intersection(acc, anns[j]);
    }
    return acc;
}

Ideal GradedPresenter::support_ideal() const {
    int g = static_cast<int>(gens_.size());
    int rels = static_cast<int>(rels_.size());
    if (g == 0) return Ideal::unit(ring_);
    if (rels < g) return Ideal::zero(ring_);
    // minor-enumeration work bound: C(rels, g) subsets, 2^g expansion states
    double work = 1.0;
    for (int i = 0; i < g; ++i) work *= static_cast<double>(rels - i) / (i + 1);
    if (g <= 8 && work <= 20000.0) return fitting_ideal_0(ring_, presentation(), g);
    return annihilator_support_ideal();
}

std::vector<int> presentation_coker_dims(const Ring& ring, const std::vector<int>& gen_degrees,
                                         const std::vector<std::vector<Poly>>& matrix, int lo,
                                         int hi) {
    Field fld = Field::prime(ring->p);
    int dg = ring->gen_degree;
    int ngens = static_cast<int>(gen_degrees.size());
    int nrels = ngens ? static_cast<int>(matrix[0].size()) : 0;
    // relation degrees (homogeneous columns)
    std::vector<int> rel_deg(nrels, std::numeric_limits<int>::min());
    for (int j = 0; j < nrels; ++j)
        for (int g = 0; g < ngens; ++g) {
            const Poly& q = matrix[g][j];
            if (q.is_zero()) continue;
            int d = gen_degrees[g] + q.weighted_degree();
            if (rel_deg[j] == std::numeric_limits<int>::min()) rel_deg[j] = d;
            if (rel_deg[j] != d || !q.is_homogeneous())
                throw std::invalid_argument("presentation columns must be homogeneous");
        }
    // monomials of each exponent weight
    auto monomials_of_weight = [&](int w) {
        std::vector<Mono> out;
        std::function<void(int, int, Mono)> rec = [&](int var, int left, Mono m) {
            if (var == ring->nvars - 1) {
                out.push_back(mono_set(m, var, left));
                return;
            }
            for (int e = 0; e <= left; ++e) rec(var + 1, left - e, mono_set(m, var, e));
        };
        if (w >= 0) rec(0, w, 0);
        return out;
    };

    std::vector<int> dims;
    for (int n = lo; n <= hi; ++n) {
        // columns of F_0 in degree n
        std::vector<std::pair<int, Mono>> cols;
        std::map<std::pair<int, Mono>, int> colindex;
        for (int g = 0; g < ngens; ++g) {
            int w = n - gen_degrees[g];
            if (w < 0 || w % dg != 0) continue;
            for (Mono m : monomials_of_weight(w / dg)) {
                colindex[{g, m}] = static_cast<int>(cols.size());
                cols.push_back({g, m});
            }
        }
        // image of F_1 in degree n: all monomial shifts of the relations
        std::vector<std::vector<std::pair<int, int>>> shift_cols;
        for (int j = 0; j < nrels; ++j) {
            if (rel_deg[j] == std::numeric_limits<int>::min()) continue;
            int w = n - rel_deg[j];
            if (w < 0 || w % dg != 0) continue;
            for (Mono b : monomials_of_weight(w / dg)) {
                std::vector<std::pair<int, int>> vec;
                for (int g = 0; g < ngens; ++g)
                    for (const auto& t : matrix[g][j].terms()) {
                        Mono m = mono_mul(t.mono, b, ring->nvars);
                        vec.push_back({colindex.at({g, m}), t.coeff});
                    }
                shift_cols.push_back(std::move(vec));
            }
        }
        Mat S(fld, static_cast<int>(cols.size()), static_cast<int>(shift_cols.size()));
        for (size_t j = 0; j < shift_cols.size(); ++j)
            for (const auto& [row, coef] : shift_cols[j])
                S.set(row, static_cast<int>(j), fld.add(S(row, static_cast<int>(j)), coef));
        dims.push_back(static_cast<int>(cols.size()) - S.rank());
    }
    return dims;
}

// ---------------------------------------------------------------------------
// Ext over the reduced cohomology ring, through the structured k-resolution

namespace {

struct ExtDegreeData {
    Mat cocycles;        // Hom_n x z_n
    QuotientCoords hq;   // H_n = cocycles / boundaries (z_n-coordinates)
    Mat h_reps;          // Hom_n x dim H_n, lifted representatives
};

class ExtMachine {
public:
    explicit ExtMachine(const FdModule& core)
        : Y_(core), kres_(core.alg, 0), fld_(fp(core.alg.p)), dg_(core.alg.p == 2 ? 1 : 2) {
        for (int i = 0; i < core.alg.r; ++i) {
            zpow1_.push_back(core.Z[i]);
            zpowp1_.push_back(core.Z[i].pow(core.alg.p - 1));
        }
    }

    int gen_degree() const { return dg_; }

    int hom_dim(int n) {
        kres_.extend(n);
        return Y_.dim * kres_.betti(n);
    }

    // delta_n: Hom(P_n, Y) -> Hom(P_{n+1}, Y)
    const Mat& delta(int n) {
        auto it = delta_cache_.find(n);
        if (it != delta_cache_.end()) return it->second;
        kres_.extend(n + 1);
        Mat d(fld_, hom_dim(n + 1), hom_dim(n));
        int yd = Y_.dim;
        for (int src = 0; src < kres_.betti(n + 1); ++src) {
            const std::vector<int>& u = kres_.components(n + 1)[src];
            for (int i = 0; i < Y_.alg.r; ++i) {
                if (u[i] == 0) continue;
                std::vector<int> w = u;
                w[i] -= 1;
                int tgt = kres_.component_index(n, w);
                const Mat& blk0 = (kres_.block_power(u, i) == 1) ? zpow1_[i] : zpowp1_[i];
                int sign = kres_.block_sign(u, i);
                for (int a = 0; a < yd; ++a)
                    for (int b = 0; b < yd; ++b) {
                        int v = blk0(a, b);
                        if (!v) continue;
                        if (sign < 0) v = fld_.neg(v);
                        d.set(src * yd + a, tgt * yd + b, fld_.add(d(src * yd + a, tgt * yd + b), v));
                    }
            }
        }
        return delta_cache_.emplace(n, std::move(d)).first->second;
    }

    const ExtDegreeData& ensure(int n) {
        auto it = data_.find(n);
        if (it != data_.end()) return it->second;
        Mat K = delta(n).kernel();
        Mat B(fld_, hom_dim(n), 0);
        if (n > 0) B = column_space_basis(delta(n - 1));
        ExtDegreeData d;
        d.cocycles = K;
        Mat W(fld_, K.cols(), 0);
        if (B.cols() > 0) {
            auto sol = K.solve(B);
            if (!sol) throw std::logic_error("boundary outside cocycles");
            W = *sol;
        }
        d.hq.init(W, K.cols(), fld_);
        Mat reps(fld_, hom_dim(n), d.hq.dim());
        for (int j = 0; j < d.hq.dim(); ++j) {
            int kc = d.hq.free_pos[j];
            for (int i = 0; i < hom_dim(n); ++i) reps.set(i, j, K(i, kc));
        }
        d.h_reps = reps;
        return data_.emplace(n, std::move(d)).first->second;
    }

    int ext_dim(int n) { return ensure(n).hq.dim(); }

    // x_t action: H_n -> H_{n+dg} (precomposition with the periodicity shift)
    Mat action(int t, int n) {
        const ExtDegreeData& lo = ensure(n);
        const ExtDegreeData& hi = ensure(n + dg_);
        int yd = Y_.dim;
        Mat shifted(fld_, hom_dim(n + dg_), lo.hq.dim());
        for (int src = 0; src < kres_.betti(n + dg_); ++src) {
            std::vector<int> u = kres_.components(n + dg_)[src];
            if (u[t] < dg_) continue;
            u[t] -= dg_;
            int w = kres_.component_index(n, u);
            for (int j = 0; j < lo.hq.dim(); ++j)
                for (int a = 0; a < yd; ++a) shifted.set(src * yd + a, j, lo.h_reps(w * yd + a, j));
        }
        auto coords = hi.cocycles.solve(shifted);
        if (!coords) throw std::logic_error("shifted cocycle is not a cocycle");
        return hi.hq.project(*coords);
    }

    void drop_below(int n) {
        for (auto it = data_.begin(); it != data_.end();)
            it = (it->first < n) ? data_.erase(it) : std::next(it);
        for (auto it = delta_cache_.begin(); it != delta_cache_.end();)
            it = (it->first < n - 1) ? delta_cache_.erase(it) : std::next(it);
    }

private:
    FdModule Y_;
    KResolution kres_;
    Field fld_;
    int dg_;
    std::vector<Mat> zpow1_, zpowp1_;
    std::map<int, ExtDegreeData> data_;
    std::map<int, Mat> delta_cache_;
};

}  // namespace

std::vector<int> ext_dims(const FdModule& m, int D) {
    if (m.dim == 0) return std::vector<int>(D + 1, 0);
    ExtMachine machine(m);
    std::vector<int> out;
    for (int n = 0; n <= D; ++n) out.push_back(machine.ext_dim(n));
    return out;
}

ExtPresentation ext_presentation(const FdModule& m, int D) {
    SplitProjectives split = split_projectives(m);
    const FdModule& core = split.core;
    CohomRing R = make_cohom_ring(m.alg);
    int dg = R.gen_degree();

    ExtPresentation out;
    out.ring = R;
    out.split_free_rank = split.free_rank;
    if (core.dim == 0) {
        out.D_used = 0;
        out.stable = true;
        out.ext_dims = {0};
        out.support_ideal = Ideal::unit(R.ring);
        return out;
    }

    bool auto_policy = (D <= 0);
    int cap = auto_policy ? 2 * core.dim + 2 * m.alg.r : D;
    int hard_cap = auto_policy ? 4 * cap : D;
    int dmin = std::max(2 * dg, 4);

    ExtMachine machine(core);
    GradedPresenter presenter(R.ring, 0);
    std::vector<int> dims;
    int n = 0;
    for (;; ++n) {
        int hd = machine.ext_dim(n);
        dims.push_back(hd);
        std::vector<Mat> acts;
        if (n >= dg)
            for (int t = 0; t < m.alg.r; ++t) acts.push_back(machine.action(t, n - dg));
        presenter.feed(hd, acts);
        machine.drop_below(n - dg);
        if (auto_policy && n >= dmin) {
            int cutoff = (2 * n) / 3;
            bool gen_ok = presenter.max_gen_degree() <= cutoff;
            bool rel_ok = presenter.num_relations() == 0 || presenter.max_rel_degree() <= cutoff;
            if (gen_ok && rel_ok) break;
        }
        if (n >= cap) {
            if (auto_policy && cap < hard_cap) {
                cap = std::min(2 * cap, hard_cap);
                continue;
            }
            break;
        }
    }
    out.D_used = n;
    int cutoff = (2 * n) / 3;
    out.stable = presenter.max_gen_degree() <= cutoff &&
                 (presenter.num_relations() == 0 || presenter.max_rel_degree() <= cutoff);
    out.gen_degrees = presenter.gen_degrees();
    out.matrix = presenter.presentation();
    out.ext_dims = dims;
    out.support_ideal = presenter.support_ideal();
    return out;
}

}  // namespace strat
