#include "strat/ideal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace strat {

namespace {

// Remap the variables of f into a ring with nvars >= f's, variable v of the
// source landing at position perm[v].
Poly remap_vars(const Poly& f, const Ring& target, const std::vector<int>& perm) {
    std::vector<Term> out;
    out.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        Mono m = 0;
        for (int v = 0; v < f.ring()->nvars; ++v) {
            int e = mono_exp(t.mono, v);
            if (e) m = mono_set(m, perm[v], e);
        }
        out.push_back({m, t.coeff});
    }
    return Poly(target, std::move(out));
}

struct Pair {
    int i, j;
    Mono lcm;
    int deg;
};

}  // namespace

std::vector<Poly> buchberger_reduced(const Ring& ring, std::vector<Poly> gens) {
    std::vector<Poly> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(g.monic());
    // interreduce the input first (cheap, keeps the pair queue small)
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < basis.size(); ++i) {
                std::vector<Poly> others;
                for (size_t j = 0; j < basis.size(); ++j)
                    if (j != i) others.push_back(basis[j]);
                Poly r = normal_form(basis[i], others);
                if (!(r == basis[i])) {
                    changed = true;
                    if (r.is_zero()) {
                        basis.erase(basis.begin() + static_cast<long>(i));
                        --i;
                    } else {
                        basis[i] = r.monic();
                    }
                }
            }
        }
    }

    auto push_pairs = [&](std::vector<Pair>& pairs, size_t upto) {
        size_t j = upto;
        for (size_t i = 0; i < j; ++i) {
            Mono a = basis[i].lead().mono, b = basis[j].lead().mono;
            if (mono_coprime(a, b)) continue;  // Buchberger's first criterion
            Mono l = mono_lcm(a, b);
            pairs.push_back({static_cast<int>(i), static_cast<int>(j), l,
                             mono_total_degree(l, ring->nvars)});
        }
    };

    std::vector<Pair> pairs;
    for (size_t j = 1; j < basis.size(); ++j) push_pairs(pairs, j);

    auto pair_less = [&](const Pair& a, const Pair& b) {
        if (a.deg != b.deg) return a.deg > b.deg;  // process small degree first (pop_back)
        if (a.lcm != b.lcm) return ring->mono_greater(a.lcm, b.lcm);
        if (a.j != b.j) return a.j > b.j;
        return a.i > b.i;
    };

    while (!pairs.empty()) {
        std::sort(pairs.begin(), pairs.end(), pair_less);
        Pair pr = pairs.back();
        pairs.pop_back();
        Poly s = s_poly(basis[pr.i], basis[pr.j]);
        Poly r = normal_form(s, basis);
        if (!r.is_zero()) {
            basis.push_back(r.monic());
            push_pairs(pairs, basis.size() - 1);
        }
    }

    // reduce: drop redundant leads, fully reduce tails, sort
    std::vector<Poly> reduced;
    for (size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            if (mono_divides(basis[j].lead().mono, basis[i].lead().mono)) {
                if (basis[j].lead().mono != basis[i].lead().mono || j < i) {
                    redundant = true;
                    break;
                }
            }
        }
        if (!redundant) reduced.push_back(basis[i]);
    }
    for (size_t i = 0; i < reduced.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < reduced.size(); ++j)
            if (j != i) others.push_back(reduced[j]);
        reduced[i] = normal_form(reduced[i], others).monic();
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const Poly& a, const Poly& b) { return ring->mono_greater(a.lead().mono, b.lead().mono); });
    return reduced;
}

Ideal::Ideal(Ring r, std::vector<Poly> gens)
    : ring_(std::move(r)), gens_(std::move(gens)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens_)
        if (!same_ring(g.ring(), ring_)) throw std::invalid_argument("generator from wrong ring");
    gens_.erase(std::remove_if(gens_.begin(), gens_.end(), [](const Poly& p) { return p.is_zero(); }),
                gens_.end());
}

Ideal Ideal::unit(Ring r) {
    Poly one = Poly::constant(r, 1);
    return Ideal(std::move(r), {one});
}

const std::vector<Poly>& Ideal::groebner() const {
    std::call_once(cache_->flag, [this]() {
        std::vector<Poly> gb = buchberger_reduced(ring_, gens_);
        // cache guard: the basis generates the same ideal as the generators.
        // Every generator must reduce to zero, and rerunning on gens ∪ gb must
        // reproduce gb verbatim (reduced bases are unique per ideal).
        for (const auto& g : gens_)
            if (!normal_form(g, gb).is_zero()) throw std::logic_error("groebner cache check failed (gen)");
        std::vector<Poly> both = gens_;
        both.insert(both.end(), gb.begin(), gb.end());
        std::vector<Poly> gb2 = buchberger_reduced(ring_, both);
        if (gb2.size() != gb.size()) throw std::logic_error("groebner cache check failed (size)");
        for (size_t i = 0; i < gb.size(); ++i)
            if (!(gb2[i] == gb[i])) throw std::logic_error("groebner cache check failed (mismatch)");
        cache_->gb = std::move(gb);
    });
    return cache_->gb;
}

bool Ideal::contains(const Poly& f) const {
    if (!same_ring(f.ring(), ring_)) throw std::invalid_argument("membership across rings");
    return normal_form(f, groebner()).is_zero();
}

bool Ideal::is_unit() const {
    const auto& gb = groebner();
    return gb.size() == 1 && gb[0].lead().mono == 0;
}

bool Ideal::is_zero_ideal() const { return groebner().empty(); }

namespace {

// Ring with one extra variable t in front, forming its own elimination block.
Ring aux_ring(const Ring& r) {
    auto d = std::make_shared<PolyRingData>(*r);
    d->nvars = r->nvars + 1;
    if (d->nvars > 8) throw std::invalid_argument("too many variables for auxiliary ring");
    d->names.insert(d->names.begin(), "t_");
    d->weights.insert(d->weights.begin(), 0);
    d->block_split = 1;
    return d;
}

std::vector<int> shift_perm(int nvars, int by) {
    std::vector<int> p(nvars);
    for (int i = 0; i < nvars; ++i) p[i] = i + by;
    return p;
}

std::vector<int> identity_perm(int nvars) { return shift_perm(nvars, 0); }

// keep only GB elements free of the first `block` variables and map back.
std::vector<Poly> eliminate_block(const Ring& big, const std::vector<Poly>& gb, int block,
                                  const Ring& small_ring, const std::vector<int>& back_perm) {
    std::vector<Poly> out;
    for (const auto& g : gb) {
        bool pure = true;
        for (const auto& t : g.terms())
            for (int v = 0; v < block && pure; ++v)
                if (mono_exp(t.mono, v)) pure = false;
        if (!pure) continue;
        std::vector<Term> terms;
        for (const auto& t : g.terms()) {
            Mono m = 0;
            for (int v = block; v < big->nvars; ++v) {
                int e = mono_exp(t.mono, v);
                if (e) m = mono_set(m, back_perm[v], e);
            }
            terms.push_back({m, t.coeff});
        }
        out.push_back(Poly(small_ring, std::move(terms)));
    }
    return out;
}

}  // namespace

bool Ideal::radical_contains(const Poly& f) const {
    if (!same_ring(f.ring(), ring_)) throw std::invalid_argument("membership across rings");
    if (f.is_zero()) return true;
    if (contains(f)) return true;  // common fast path
    Ring big = aux_ring(ring_);
    std::vector<int> perm = shift_perm(ring_->nvars, 1);
    std::vector<Poly> gens;
    for (const auto& g : gens_) gens.push_back(remap_vars(g, big, perm));
    Poly tf = remap_vars(f, big, perm) * Poly::variable(big, 0);
    gens.push_back(Poly::constant(big, 1) - tf);
    std::vector<Poly> gb = buchberger_reduced(big, std::move(gens));
    return gb.size() == 1 && gb[0].lead().mono == 0;
}

Ideal Ideal::sum(const Ideal& a, const Ideal& b) {
    if (!same_ring(a.ring_, b.ring_)) throw std::invalid_argument("ideal sum across rings");
    std::vector<Poly> gens = a.gens_;
    gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
    return Ideal(a.ring_, std::move(gens));
}

Ideal Ideal::intersection(const Ideal& a, const Ideal& b) {
    if (!same_ring(a.ring_, b.ring_)) throw std::invalid_argument("ideal intersection across rings");
    Ring big = aux_ring(a.ring_);
    std::vector<int> perm = shift_perm(a.ring_->nvars, 1);
    Poly t = Poly::variable(big, 0);
    Poly one_minus_t = Poly::constant(big, 1) - t;
    std::vector<Poly> gens;
    for (const auto& g : a.gens_) gens.push_back(remap_vars(g, big, perm) * t);
    for (const auto& g : b.gens_) gens.push_back(remap_vars(g, big, perm) * one_minus_t);
    std::vector<Poly> gb = buchberger_reduced(big, std::move(gens));
    std::vector<int> back(big->nvars, -1);
    for (int v = 1; v < big->nvars; ++v) back[v] = v - 1;
    return Ideal(a.ring_, eliminate_block(big, gb, 1, a.ring_, back));
}

Ideal Ideal::eliminate(const std::vector<int>& vars) const {
    if (vars.empty()) return *this;
    std::vector<bool> kill(ring_->nvars, false);
    for (int v : vars) {
        if (v < 0 || v >= ring_->nvars) throw std::invalid_argument("eliminate: bad variable");
        kill[v] = true;
    }
    int nk = 0;
    for (bool b : kill) nk += b;
    // permuted ring: eliminated variables first, block order
    auto d = std::make_shared<PolyRingData>();
    d->p = ring_->p;
    d->nvars = ring_->nvars;
    d->gen_degree = ring_->gen_degree;
    d->block_split = nk;
    std::vector<int> perm(ring_->nvars);
    int front = 0, backp = nk;
    for (int v = 0; v < ring_->nvars; ++v) perm[v] = kill[v] ? front++ : backp++;
    d->names.resize(ring_->nvars);
    d->weights.resize(ring_->nvars);
    for (int v = 0; v < ring_->nvars; ++v) {
        d->names[perm[v]] = ring_->names[v];
        d->weights[perm[v]] = ring_->weights[v];
    }
    Ring big = d;
    std::vector<Poly> gens;
    for (const auto& g : gens_) gens.push_back(remap_vars(g, big, perm));
    std::vector<Poly> gb = buchberger_reduced(big, std::move(gens));
    std::vector<int> back(ring_->nvars, -1);
    for (int v = 0; v < ring_->nvars; ++v) back[perm[v]] = v;
    return Ideal(ring_, eliminate_block(big, gb, nk, ring_, back));
}

Poly RingMap::apply(const Poly& f) const {
    if (!same_ring(f.ring(), source)) throw std::invalid_argument("ringmap: wrong source ring");
    Poly acc(target);
    for (const auto& t : f.terms()) {
        Poly prod = Poly::constant(target, t.coeff);
        for (int v = 0; v < source->nvars; ++v) {
            int e = mono_exp(t.mono, v);
            for (int k = 0; k < e; ++k) prod = prod * images[v];
        }
        acc = acc + prod;
    }
    return acc;
}

Ideal RingMap::apply_ideal(const Ideal& i) const {
    if (!same_ring(i.ring(), source)) throw std::invalid_argument("ringmap: ideal from wrong ring");
    std::vector<Poly> gens;
    for (const auto& g : i.generators()) gens.push_back(apply(g));
    return Ideal(target, std::move(gens));
}

Ideal RingMap::kernel_mod(const Ideal& i_target) const {
    if (!same_ring(i_target.ring(), target)) throw std::invalid_argument("ringmap: ideal from wrong ring");
    // joint ring [target vars | source vars], target block eliminated
    int nt = target->nvars, ns = source->nvars;
    if (nt + ns > 8) throw std::invalid_argument("joint ring too large");
    auto d = std::make_shared<PolyRingData>();
    d->p = source->p;
    d->nvars = nt + ns;
    d->gen_degree = source->gen_degree;
    d->block_split = nt;
    d->names = target->names;
    d->names.insert(d->names.end(), source->names.begin(), source->names.end());
    d->weights = target->weights;
    d->weights.insert(d->weights.end(), source->weights.begin(), source->weights.end());
    // joint ring: disambiguate duplicated names (cosmetic only)
    for (int v = 0; v < nt; ++v) d->names[v] += "~";
    Ring big = d;
    std::vector<int> tperm = identity_perm(nt);
    std::vector<int> sperm = shift_perm(ns, nt);
    std::vector<Poly> gens;
    for (const auto& g : i_target.generators()) gens.push_back(remap_vars(g, big, tperm));
    for (int v = 0; v < ns; ++v) {
        Poly xv = Poly::variable(big, nt + v);
        gens.push_back(xv - remap_vars(images[v], big, tperm));
    }
    std::vector<Poly> gb = buchberger_reduced(big, std::move(gens));
    std::vector<int> back(big->nvars, -1);
    for (int v = 0; v < ns; ++v) back[nt + v] = v;
    return Ideal(source, eliminate_block(big, gb, nt, source, back));
}

RingMap identity_map(const Ring& r) {
    RingMap m{r, r, {}};
    for (int v = 0; v < r->nvars; ++v) m.images.push_back(Poly::variable(r, v));
    return m;
}

namespace {

// Determinant by expansion along the first row, memoized per column subset.
// rows/cols index into the entry matrix; subsets are bitmasks over columns.
class MinorTable {
public:
    MinorTable(const Ring& ring, const std::vector<std::vector<Poly>>& e,
               const std::vector<int>& rows, const std::vector<int>& cols)
        : ring_(ring), e_(e), rows_(rows), cols_(cols) {}

    Poly det() { return expand(static_cast<uint32_t>((1u << cols_.size()) - 1), 0); }

private:
    const Ring& ring_;
    const std::vector<std::vector<Poly>>& e_;
    std::vector<int> rows_, cols_;
    std::map<uint32_t, Poly> memo_;

    Poly expand(uint32_t colmask, int row) {
        if (colmask == 0) return Poly::constant(ring_, 1);
        auto it = memo_.find(colmask);
        if (it != memo_.end()) return it->second;
        Poly acc(ring_);
        int sign = 1;
        for (size_t ci = 0; ci < cols_.size(); ++ci) {
            if (!(colmask & (1u << ci))) continue;
            const Poly& entry = e_[rows_[row]][cols_[ci]];
            if (!entry.is_zero()) {
                Poly sub = expand(colmask & ~(1u << ci), row + 1);
                Poly contrib = entry * sub;
                acc = (sign > 0) ? acc + contrib : acc - contrib;
            }
            sign = -sign;
        }
        memo_.emplace(colmask, acc);
        return acc;
    }
};

// Hall-style pruning: a minor is identically zero unless the nonzero pattern
// of the selected submatrix admits a perfect matching.
bool has_perfect_matching(const std::vector<std::vector<Poly>>& e, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
    int n = static_cast<int>(rows.size());
    std::vector<int> match_col(n, -1);
    std::vector<char> seen;
    std::function<bool(int)> try_row = [&](int r) -> bool {
        for (int c = 0; c < n; ++c) {
            if (seen[c] || e[rows[r]][cols[c]].is_zero()) continue;
            seen[c] = 1;
            if (match_col[c] < 0 || try_row(match_col[c])) {
                match_col[c] = r;
                return true;
            }
        }
        return false;
    };
    for (int r = 0; r < n; ++r) {
        seen.assign(n, 0);
        if (!try_row(r)) return false;
    }
    return true;
}

// Accumulate minors while interreducing against a running Groebner basis so
// the output generator list stays small.
class MinorAccumulator {
public:
    explicit MinorAccumulator(Ring ring) : ring_(std::move(ring)) {}

    void add(const Poly& f) {
        if (f.is_zero()) return;
        Poly r = normal_form(f, gb_);
        if (r.is_zero()) return;
        gens_.push_back(r.monic());
        gb_ = buchberger_reduced(ring_, gens_);
        gens_ = gb_;
    }

    Ideal ideal() const { return Ideal(ring_, gens_); }

private:
    Ring ring_;
    std::vector<Poly> gens_;
    std::vector<Poly> gb_;
};

void foreach_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) {
        fn(idx);
        return;
    }
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Ideal fitting_ideal_0(const Ring& ring, const std::vector<std::vector<Poly>>& presentation,
                      int n_generators) {
    if (n_generators == 0) return Ideal::unit(ring);
    if (static_cast<int>(presentation.size()) != n_generators)
        throw std::invalid_argument("fitting_ideal_0: row count mismatch");
    int cols = presentation.empty() ? 0 : static_cast<int>(presentation[0].size());
    if (cols < n_generators) return Ideal::zero(ring);
    return symbolic_minors(ring, presentation, n_generators);
}

Ideal symbolic_minors(const Ring& ring, const std::vector<std::vector<Poly>>& entries, int t) {
    int nrows = static_cast<int>(entries.size());
    int ncols = nrows ? static_cast<int>(entries[0].size()) : 0;
    if (t < 0 || t > std::min(nrows, ncols)) throw std::invalid_argument("minor size out of range");
    if (t == 0) return Ideal::unit(ring);
    MinorAccumulator acc(ring);
    std::set<std::vector<std::pair<Mono, int>>> seen;  // dedupe repeated minors cheaply
    foreach_subset(nrows, t, [&](const std::vector<int>& rows) {
        foreach_subset(ncols, t, [&](const std::vector<int>& cols) {
            if (!has_perfect_matching(entries, rows, cols)) return;
            MinorTable mt(ring, entries, rows, cols);
            Poly d = mt.det();
            if (d.is_zero()) return;
            Poly dm = d.monic();
            std::vector<std::pair<Mono, int>> key;
            key.reserve(dm.terms().size());
            for (const auto& tm : dm.terms()) key.emplace_back(tm.mono, tm.coeff);
            if (!seen.insert(std::move(key)).second) return;
            acc.add(dm);
        });
    });
    return acc.ideal();
}

Ideal reinterpret_ring(const Ideal& i, const Ring& target) {
    if (i.ring()->nvars != target->nvars || i.ring()->p != target->p)
        throw std::invalid_argument("reinterpret_ring: incompatible rings");
    std::vector<Poly> gens;
    for (const auto& g : i.generators()) {
        std::vector<Term> terms(g.terms().begin(), g.terms().end());
        gens.push_back(Poly(target, std::move(terms)));
    }
    return Ideal(target, std::move(gens));
}

}  // namespace strat
