#pragma once

#include <optional>
#include <string>

#include "strat/support.hpp"

namespace strat {

/// The dg algebras of the chain: the exterior algebra Λ on ξ_1..ξ_r in
/// degree -1 (zero differential), the Koszul dg algebra A of kE (exterior on
/// y_i over kE, d(y_i) = z_i), the polynomial algebra S with |x_i| = 2 (zero
/// differential), and kE itself in degree 0. Λ and A carry the Lie-type
/// comultiplication (primitive generators); kE may carry either.
enum class DgKind { Lambda, KoszulA, PolyS, GroupEA };

struct DgAlgebraRef {
    DgKind kind;
    int p;  // field characteristic of all module data
    int r;
    bool operator==(const DgAlgebraRef& o) const {
        return kind == o.kind && p == o.p && r == o.r;
    }
};

int dg_num_generators(const DgAlgebraRef& a);
int dg_generator_degree(const DgAlgebraRef& a, int g);
std::string dg_generator_name(const DgAlgebraRef& a, int g);

/// Bounded-window dg module: components in degrees lo..hi, differential
/// raising degree by one, generator action matrices. Components outside the
/// window are zero; truncation markers record which edges were cut.
struct DgModule {
    DgAlgebraRef A{DgKind::Lambda, 2, 1};
    int lo = 0;
    int hi = -1;
    std::vector<int> dims;
    std::vector<Mat> d;                 // d[i]: M^{lo+i} -> M^{lo+i+1}
    std::vector<std::vector<Mat>> act;  // act[g][i]: M^{lo+i} -> M^{lo+i+deg g}
    bool truncated_lo = false;
    bool truncated_hi = false;

    int dim(int degree) const {
        return (degree < lo || degree > hi) ? 0 : dims[degree - lo];
    }
    /// Differential out of the given degree, zero-padded outside the window.
    Mat dmat(int degree) const;
    /// Generator action out of the given degree, zero-padded.
    Mat gact(int g, int degree) const;

    /// d^2 = 0, generator relations of the algebra, and the module Leibniz
    /// rule (throws on violation).
    void validate() const;
};

DgModule dg_zero(const DgAlgebraRef& A);
DgModule dg_shift(const DgModule& M, int s);                 // Σ^s M
DgModule dg_direct_sum(const DgModule& a, const DgModule& b);
/// Hom_k(M, k) with the standard dual dg module structure.
DgModule dg_dual(const DgModule& M);
/// Mapping cone of a degree-0 chain map.
struct DgMap {
    const DgModule* src;
    const DgModule* tgt;
    std::vector<Mat> f;  // one per source window degree, tgt.dim x src.dim
    Mat fmat(int degree) const;
};
DgModule dg_cone(const DgMap& f, const DgModule& src, const DgModule& tgt);

/// k concentrated in degree 0.
DgModule dg_field_module(const DgAlgebraRef& A);
/// The algebra as a dg module over itself (finite kinds only).
DgModule dg_algebra_module(const DgAlgebraRef& A);

/// ---- the Koszul dg algebra A and the quasi-isomorphism φ: Λ → A ----

/// Basis bookkeeping for A: elements z^a y^b, degree -|b|.
struct KoszulAlgebra {
    int p, r;
    int zcount;  // p^r
    int basis_dim(int degree) const;
    int index(int degree, int a, unsigned b) const;   // within the degree
    std::pair<int, unsigned> element(int degree, int idx) const;
    /// d(z^a y^b) as sparse (index, coeff) pairs in degree+1.
    std::vector<std::pair<int, int>> diff(int degree, int idx) const;
    /// product of two basis elements, sparse in the sum degree.
    std::vector<std::pair<int, int>> mul(int d1, int i1, int d2, int i2) const;
};

KoszulAlgebra build_koszul_A(int p, int r, int window_lo = 0, int window_hi = 0);

struct ChainComplex {
    Field fld = Field::prime(2);
    int lo = 0, hi = -1;
    std::vector<int> dims;
    std::vector<Mat> d;
    int dim(int degree) const { return (degree < lo || degree > hi) ? 0 : dims[degree - lo]; }
    Mat dmat(int degree) const;
};

ChainComplex complex_of(const DgModule& M);
ChainComplex koszul_A_complex(const KoszulAlgebra& A);

/// φ(ξ_i) = z_i^{p-1} y_i, extended multiplicatively; verified to be a
/// morphism of dg algebras on all basis pairs.
struct PhiMap {
    KoszulAlgebra A;
    ChainComplex lambda;  // Λ as a complex
    ChainComplex target;
    std::vector<Mat> f;  // per Λ-degree -r..0
};
PhiMap phi_lambda_to_A(int p, int r);

struct QuasiIsoReport {
    bool pass = false;
    int certified_lo = 0, certified_hi = -1;
    std::vector<int> h_src, h_tgt;  // per degree in the checked window
    std::string detail;
};

/// Homology of both complexes and bijectivity of the induced map in every
/// certified degree ([n-1, n+1] inside both windows).
QuasiIsoReport verify_quasi_iso(const ChainComplex& src, const ChainComplex& tgt,
                                const std::vector<Mat>& maps, int maps_lo);

std::vector<int> homology_dims(const ChainComplex& c);

/// ---- the BGG module J and its truncations ----

/// Λ∨ ⊗ S^{<m} with differential left multiplication by δ = Σ ξ_i ⊗ x_i.
/// The Λ-action uses (a·f)(x) = (-1)^{|a||f|} f(x·a); δ² = 0 is checked
/// symbolically in Λ ⊗ S before truncating.
struct TruncatedJ {
    int r;
    int m;  // S-degree truncation bound
    DgModule module;            // over Lambda
    std::vector<std::vector<Mat>> s_action;  // x_t per degree
};

TruncatedJ build_truncated_J(int p, int r, int m);

/// Hom_Λ(J, M) over the requested output window, as a dg module over S (J
/// untruncated; each component is a finite sum because M is bounded).
DgModule hom_J(const DgModule& M, int out_lo, int out_hi);

/// N ⊗_S J realized as N ⊗_k Λ∨ with the twisted differential.
DgModule tensor_S_J(const DgModule& N);

/// S-support of H(hom_J(i M)) for finite-dimensional M over Λ, computed via
/// the exact Koszul-dual complex Hom_Λ(P, M) with P the semi-free resolution
/// Λ ⊗ Γ of k (coordinates are finite in every degree, so no window
/// truncation enters); D bounds the S-degree window of the presentation.
struct LambdaSupportResult {
    Variety variety;
    int D_used = 0;
    bool stable = false;
    std::vector<int> h_dims;  // homology dims over the inspected degrees
    int lo = 0;
};
LambdaSupportResult lambda_support(const DgModule& M, std::optional<int> D = std::nullopt);

/// Graded S-module data (zero differential) for support comparisons.
struct GradedSModule {
    int r;
    int lo = 0;
    std::vector<int> dims;
    std::vector<std::vector<Mat>> act;  // act[t][i]: degree lo+i -> lo+i+2
};
Variety graded_s_support(const GradedSModule& N, int p);
DgModule graded_s_to_dg(const GradedSModule& N, int p);

/// dim Ext^n_A(k,k) for n <= D, computed on the Λ side after verifying the
/// quasi-isomorphism φ at this (p, r); equals the number of monomials of
/// weight n/2 (and 0 in odd degrees), which is asserted.
std::vector<int> ext_A_hilbert(int p, int r, int D);

/// Hom_{kE}(A, m) with its dg A-module structure (total dimension 2^r dim m).
DgModule coinduce_to_A(const FdModule& m);

/// Restriction of an A-module to kE = A^0 (forgets the y-actions).
DgModule restrict_A_to_kE(const DgModule& X);

/// Dimension of the space of degree-0 chain maps commuting with the
/// generator actions.
int dg_chain_map_dim(const DgModule& X, const DgModule& Y);

/// The empirical shift in Hom_k(A, k) ≅ Σ^d A, found by locating a free
/// generator of the dual; returns d or throws if no shift works.
int koszul_A_dual_shift(int p, int r);

}  // namespace strat
