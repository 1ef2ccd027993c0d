#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "strat/ideal.hpp"
#include "strat/module.hpp"

namespace strat {

/// Internal consistency failure (a bug guard, distinct from bad input).
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The minimal free resolution of k over kE as the tensor product of the r
/// periodic factor resolutions. P_n = kE^{b_n} with components indexed by
/// compositions w of n into r parts; the differential on component w sends
/// direction i to w - e_i by multiplication with z_i (w_i odd) or z_i^{p-1}
/// (w_i even), with the usual tensor-complex sign.
class KResolution {
public:
    KResolution(Algebra alg, int upto);

    const Algebra& alg() const { return alg_; }
    int max_degree() const { return static_cast<int>(comps_.size()) - 1; }
    void extend(int upto);

    int betti(int n) const { return static_cast<int>(comps_[n].size()); }
    const std::vector<std::vector<int>>& components(int n) const { return comps_[n]; }
    int component_index(int n, const std::vector<int>& w) const;

    /// z-power on the block (w - e_i, w): 1 for odd w_i, p-1 for even.
    int block_power(const std::vector<int>& w, int i) const {
        return (w[i] % 2 == 1) ? 1 : alg_.p - 1;
    }
    int block_sign(const std::vector<int>& w, int i) const;

    /// Differential P_n -> P_{n-1} as a plain matrix over k in the regular
    /// basis (copy-major); for small-degree constructions and tests.
    Mat diff_mat(int n) const;

private:
    Algebra alg_;
    std::vector<std::vector<std::vector<int>>> comps_;
    std::vector<std::map<std::vector<int>, int>> index_;
};

/// Minimal free resolution of an arbitrary module, built by iterated
/// projective covers; differentials are plain matrices over k.
struct MinimalResolution {
    FdModule module;
    std::vector<int> betti;  // b_0..b_N
    Mat augmentation;        // dim(m) x (b_0 * p^r)
    std::vector<Mat> diff;   // diff[n-1]: P_n -> P_{n-1}, n = 1..N
};

MinimalResolution minimal_resolution(const FdModule& m, int length);

/// The structured tensor-product resolution of k in matrix form; its
/// generator basis matches KResolution's component order (cocycle rows index
/// against it).
MinimalResolution k_structured_resolution(const Algebra& alg, int length);

/// Cohomology class of degree d, as a functional on the generators of P_d of
/// the k-resolution (row of length b_d).
struct Cocycle {
    int degree = 0;
    std::vector<int> row;
    bool is_zero() const {
        for (int v : row)
            if (v) return false;
        return true;
    }
};

/// The reduced cohomology ring k[x_1..x_r], degree 1 generators at p = 2 and
/// degree 2 otherwise.
struct CohomRing {
    Algebra alg;
    Ring ring;
    int gen_degree() const { return ring->gen_degree; }
};

CohomRing make_cohom_ring(const Algebra& alg);

/// The irrelevant ideal (x_1, ..., x_r).
Ideal irrelevant_ideal(const CohomRing& R);

struct CohomologyData {
    CohomRing ring;
    std::vector<Cocycle> generators;  // degree gen_degree, x_i dual to z_i
    std::vector<int> hilbert;         // dim H^n(E, k) for n = 0..D
};

/// Generators plus an internal verification that their Yoneda products
/// realize the predicted Hilbert function up to D (VerificationError
/// otherwise).
CohomologyData cohomology_ring(const Algebra& alg, int D);

/// Cocycle (and its polynomial) for a linear combination of the chosen
/// degree-gen_degree generators.
std::pair<Cocycle, Poly> cocycle_from_linear(const CohomRing& R, const std::vector<int>& coeffs);

/// Chain self-map of the k-resolution lifting zeta, computed by solving the
/// lifting systems degree by degree: maps[n]: P_{n+d} -> P_n for
/// n = 0..length-d.
std::vector<Mat> yoneda_action(const Cocycle& zeta, const MinimalResolution& res_of_k);

/// Carlson module L_zeta = ker(Omega^d k -> k) for a nonzero cocycle.
FdModule carlson_module(const Algebra& alg, const Cocycle& zeta);

/// m ⊗ L_zeta (group diagonal).
FdModule koszul_module(const FdModule& m, const Cocycle& zeta);

/// Truncated graded presentation of Ext*_{kE}(k, m) over the reduced
/// cohomology ring (projective summands split off first; degree 0 included).
struct ExtPresentation {
    CohomRing ring;
    std::vector<int> gen_degrees;
    std::vector<std::vector<Poly>> matrix;  // rows = generators, cols = relations
    int D_used = 0;
    bool stable = false;
    int split_free_rank = 0;
    std::vector<int> ext_dims;  // dim Ext^n(k, core) for n <= D_used
    Ideal support_ideal;        // Fitting or annihilator representative
};

/// D <= 0 selects the automatic policy: grow until the generator/relation
/// degrees are stable over the last third of the window (smallest stable D
/// wins), capped at 2*dim + 2r with at most two doublings.
ExtPresentation ext_presentation(const FdModule& m, int D = 0);

/// dim Ext^n(k, m) for n = 0..D (no projective splitting).
std::vector<int> ext_dims(const FdModule& m, int D);

/// Incremental presenter for a graded module over a graded polynomial ring,
/// fed one internal degree at a time. Degrees run lo, lo+1, ...; the action
/// of each ring variable raises degree by the ring's gen_degree.
class GradedPresenter {
public:
    GradedPresenter(Ring ring, int lo);

    /// Feed degree n = lo + (number of previous feeds). act_from_below[t] is
    /// the x_t action (dim_n x dim_{n-gen_degree}); ignored while n - lo <
    /// gen_degree.
    void feed(int dim, const std::vector<Mat>& act_from_below);

    int degrees_fed() const { return static_cast<int>(dims_.size()); }
    int lo() const { return lo_; }
    std::vector<int> gen_degrees() const;
    int max_gen_degree() const { return max_gen_degree_; }
    int max_rel_degree() const { return max_rel_degree_; }
    int num_relations() const { return static_cast<int>(rels_.size()); }
    int num_generators() const { return static_cast<int>(gens_.size()); }

    /// Presentation matrix (rows = generators, columns = relations).
    std::vector<std::vector<Poly>> presentation() const;

    /// Representative of the support ideal: the 0-th Fitting ideal when the
    /// minor enumeration is small, else the intersection over generators of
    /// their degreewise annihilators (same radical: Fitt_0 ⊆ ann ⊆ √Fitt_0,
    /// and supp of a sum of cyclic submodules is the union of their supports).
    Ideal support_ideal() const;

    /// ∩_j ann(g_j) from the degreewise column data.
    Ideal annihilator_support_ideal() const;

private:
    Ring ring_;
    Field fld_;
    int lo_;
    int dg_;
    std::vector<int> dims_;
    struct Gen {
        int degree;
    };
    std::vector<Gen> gens_;
    int max_gen_degree_ = std::numeric_limits<int>::min();
    int max_rel_degree_ = std::numeric_limits<int>::min();
    struct Col {
        int gen;
        Mono mono;
    };
    std::vector<std::vector<Col>> cols_;  // per fed degree
    std::vector<Mat> col_mats_;           // per fed degree: dim x #cols
    std::vector<std::map<std::pair<int, Mono>, int>> col_index_;
    std::vector<Mat> syz_basis_;  // per fed degree: full syzygy space in column coords
    struct Rel {
        int degree;
        std::vector<std::pair<Col, int>> coeffs;
    };
    std::vector<Rel> rels_;  // fresh relations only (the presentation columns)
};

/// Degreewise dims of coker of a presentation, recomputed from the
/// polynomial matrix alone (independent Hilbert cross-check).
std::vector<int> presentation_coker_dims(const Ring& ring, const std::vector<int>& gen_degrees,
                                         const std::vector<std::vector<Poly>>& matrix, int lo,
                                         int hi);

/// Debug export of a resolution: Betti numbers and differential matrices.
std::string resolution_debug_json(const MinimalResolution& res);

}  // namespace strat
