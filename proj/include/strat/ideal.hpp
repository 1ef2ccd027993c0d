#pragma once

#include <mutex>
#include <vector>

#include "strat/poly.hpp"

namespace strat {

/// Ideal in a graded polynomial ring, with a compute-once reduced Groebner
/// basis (grevlex / the ring's block order). The cache fill is synchronized;
/// everything else is immutable.
class Ideal {
public:
    Ideal() = default;
    explicit Ideal(Ring r) : ring_(std::move(r)), cache_(std::make_shared<Cache>()) {}
    Ideal(Ring r, std::vector<Poly> gens);

    static Ideal zero(Ring r) { return Ideal(std::move(r)); }
    static Ideal unit(Ring r);

    const Ring& ring() const { return ring_; }
    const std::vector<Poly>& generators() const { return gens_; }

    /// Reduced Groebner basis; computed once, verified against the
    /// generators, then frozen.
    const std::vector<Poly>& groebner() const;

    bool contains(const Poly& f) const;
    /// Rabinowitsch membership in the radical: 1 in I + (1 - t*f).
    bool radical_contains(const Poly& f) const;
    bool is_unit() const;
    bool is_zero_ideal() const;

    static Ideal sum(const Ideal& a, const Ideal& b);
    /// t*a + (1-t)*b with t eliminated.
    static Ideal intersection(const Ideal& a, const Ideal& b);

    /// Generators of I ∩ k[vars not in `vars`], as an ideal of the same ring.
    Ideal eliminate(const std::vector<int>& vars) const;

private:
    Ring ring_;
    std::vector<Poly> gens_;
    struct Cache {
        std::once_flag flag;
        std::vector<Poly> gb;
    };
    std::shared_ptr<Cache> cache_;
};

/// Reduced Groebner basis of the given generators (monic, interreduced,
/// sorted; unique for the ideal and order).
std::vector<Poly> buchberger_reduced(const Ring& ring, std::vector<Poly> gens);

/// Degree-preserving ring map determined by images of the source generators.
struct RingMap {
    Ring source;
    Ring target;
    std::vector<Poly> images;  // one per source variable

    Poly apply(const Poly& f) const;
    /// Extension ideal f(I) * target.
    Ideal apply_ideal(const Ideal& i) const;
    /// Kernel of source -> target/i_target via the graph ideal and block
    /// elimination of the target variables.
    Ideal kernel_mod(const Ideal& i_target) const;
};

RingMap identity_map(const Ring& r);

/// Ideal of all n_generators x n_generators minors of the presentation
/// (rows = generators); zero ideal when there are fewer columns than rows,
/// unit ideal when n_generators = 0.
Ideal fitting_ideal_0(const Ring& ring, const std::vector<std::vector<Poly>>& presentation,
                      int n_generators);

/// Ideal of all t x t minors. Minors are computed with a memoized expansion
/// over column subsets and interreduced on the fly so the returned generator
/// list stays small.
Ideal symbolic_minors(const Ring& ring, const std::vector<std::vector<Poly>>& entries, int t);

/// Transport an ideal to a ring with the same variable count and
/// characteristic but a different grading convention (the declared
/// degree-doubling map between the degree-1 and degree-2 worlds at p = 2).
Ideal reinterpret_ring(const Ideal& i, const Ring& target);

}  // namespace strat
