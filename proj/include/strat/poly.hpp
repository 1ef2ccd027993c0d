#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "strat/field.hpp"

namespace strat {

/// Exponent vector packed one byte per variable (at most 8 variables).
using Mono = uint64_t;

inline int mono_exp(Mono m, int v) { return static_cast<int>((m >> (8 * v)) & 0xff); }
inline Mono mono_set(Mono m, int v, int e) {
    return (m & ~(0xffULL << (8 * v))) | (static_cast<uint64_t>(e) << (8 * v));
}
int mono_total_degree(Mono m, int nvars);
Mono mono_mul(Mono a, Mono b, int nvars);  // throws on exponent overflow
bool mono_divides(Mono a, Mono b);         // a | b componentwise
Mono mono_div(Mono b, Mono a);
Mono mono_lcm(Mono a, Mono b);
bool mono_coprime(Mono a, Mono b);

/// Graded polynomial ring over F_p. All ring variables share one grading
/// weight (1 or 2 per the cohomology convention); internal auxiliary
/// variables (the radical trick's t, elimination blocks) carry weight 0 and
/// never appear in exposed ideals.
struct PolyRingData {
    int p = 2;
    int nvars = 1;
    int gen_degree = 1;
    std::vector<std::string> names;    // size nvars
    std::vector<int> weights;          // size nvars, grading weight per variable
    int block_split = 0;               // >0: vars [0, block_split) are an elimination block

    /// true iff a > b in the ring's order (grevlex, or block-then-grevlex).
    bool mono_greater(Mono a, Mono b) const;
};

using Ring = std::shared_ptr<const PolyRingData>;

Ring make_ring(int p, int r, int gen_degree, const std::string& prefix = "x");
bool same_ring(const Ring& a, const Ring& b);

struct Term {
    Mono mono;
    int coeff;  // in 1..p-1
};

/// Sparse polynomial: terms sorted descending in the ring order, leading
/// term first, no zero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(Ring r) : ring_(std::move(r)) {}
    Poly(Ring r, std::vector<Term> terms);

    static Poly zero(Ring r) { return Poly(std::move(r)); }
    static Poly constant(Ring r, int c);
    static Poly variable(Ring r, int v, int exp = 1);
    static Poly term(Ring r, Mono m, int c);

    const Ring& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    const Term& lead() const { return terms_.front(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly times_term(Mono m, int c) const;
    Poly scaled(int c) const;
    Poly monic() const;

    bool operator==(const Poly& o) const;

    int total_degree() const;     // max total exponent degree, -1 for zero
    int weighted_degree() const;  // max weighted degree, -1 for zero
    bool is_homogeneous() const;  // w.r.t. ring weights

    /// Evaluate at a point with coordinates in an extension of F_p
    /// (coefficients embed as 0..p-1).
    int eval(const Field& f, const std::vector<int>& point) const;

    std::string str() const;
    /// Parse the text format `c*x1^a1*...*xr^ar + ...`; coefficients 0..p-1,
    /// omitted exponent = 1, omitted variable = exponent 0.
    static Poly parse(Ring r, const std::string& text);

private:
    Ring ring_;
    std::vector<Term> terms_;

    void normalize();  // sort + combine + drop zeros
};

/// Normal form of f modulo the list of divisors (full reduction of every
/// term); divisors need not be a Groebner basis.
Poly normal_form(const Poly& f, const std::vector<Poly>& basis);

Poly s_poly(const Poly& f, const Poly& g);

}  // namespace strat
