#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strat/matrix.hpp"
#include "strat/rng.hpp"

namespace strat {

/// kE = k[z_1..z_r]/(z_i^p), the group algebra of an elementary abelian
/// p-group of rank r; z_i = g_i - 1.
struct Algebra {
    int p;
    int r;
    bool operator==(const Algebra& o) const { return p == o.p && r == o.r; }
    bool operator!=(const Algebra& o) const { return !(*this == o); }
    int dim() const {  // p^r
        int d = 1;
        for (int i = 0; i < r; ++i) d *= p;
        return d;
    }
};

/// Finite-dimensional kE-module given by the commuting nilpotent actions of
/// the z_i on column vectors.
struct FdModule {
    Algebra alg;
    int dim = 0;
    std::vector<Mat> Z;  // r matrices, dim x dim

    /// Throws unless the Z_i pairwise commute and satisfy Z_i^p = 0.
    void validate() const;

    /// Action of g_i = 1 + z_i.
    Mat group_action(int i) const;
    /// Action of the monomial z^a (a componentwise < p).
    Mat z_monomial(const std::vector<int>& a) const;
};

FdModule trivial_module(const Algebra& alg);          // k
FdModule regular_module(const Algebra& alg);          // kE, basis = monomials z^a, lex index
FdModule direct_sum(const FdModule& a, const FdModule& b);
FdModule quotient_by_z(const Algebra& alg, int i);    // kE/(z_i)

enum class Hopf { Group, Lie };

/// Diagonal tensor product: z_i acts by Z⊗I + I⊗Z (+ Z⊗Z in group mode).
FdModule tensor_diagonal(const FdModule& m, const FdModule& n, Hopf hopf);

/// k-linear dual with the antipode convention g -> g^{-1}:
/// z_i acts by (sum_{j>=1} (-z_i)^j)^T.
FdModule dual_module(const FdModule& m);

/// Embedding of a rank r' elementary abelian subgroup: the i-th source
/// generator maps to prod_j g_j^{B[j][i]}; B is r x r' over F_p of full
/// column rank.
struct SubgroupEmbedding {
    int r_target;
    int r_source;
    Mat B;
    void validate(int p) const;
};

SubgroupEmbedding identity_embedding(const Algebra& alg);

/// Restriction along the embedding: z'_i acts by prod_j (1+Z_j)^{B[j][i]} - 1.
FdModule restrict_module(const FdModule& m, const SubgroupEmbedding& e);

/// Induction kE ⊗_{kE'} n along the embedding, with the lexicographically
/// fixed coset transversal.
FdModule induce_module(const FdModule& n, const SubgroupEmbedding& e);

/// Projective over the local algebra kE <=> free <=> the basis lift through
/// the radical quotient is bijective.
bool is_projective(const FdModule& m);

/// Multiplicity of kE as a direct summand (= rank of prod_i Z_i^{p-1}).
int free_rank(const FdModule& m);

/// m decomposed as kE^{free_rank} ⊕ core, core without projective summands.
struct SplitProjectives {
    int free_rank;
    FdModule core;
};
SplitProjectives split_projectives(const FdModule& m);

/// Kernel of the projective cover kE^{b} -> m, b = dim(m / rad m); has no
/// projective summands.
FdModule syzygy(const FdModule& m);

/// The projective cover data: map kE^b -> m as a (dim m) x (b*p^r) matrix,
/// columns ordered (copy-major, monomial index within each copy).
struct ProjectiveCover {
    int b;
    Mat map;  // dim(m) x (b * p^r)
};
ProjectiveCover projective_cover(const FdModule& m);

/// Basis of Hom_{kE}(m, n) as module maps (matrices n.dim x m.dim), found by
/// linear algebra; guarded by a dimension cutoff.
std::vector<Mat> module_hom_basis(const FdModule& m, const FdModule& n);

/// Whether `small` splits off `big` along the given map small -> big (a
/// retraction exists).
bool splits_off(const FdModule& big, const FdModule& small, const Mat& inclusion);

/// Deterministic random module: a random commuting strictly-upper-triangular
/// family conjugated by a random invertible matrix.
FdModule random_module(Rng rng, int p, int r, int dim_max);

/// Deterministic random subgroup embedding of the given source rank.
SubgroupEmbedding random_embedding(Rng rng, int p, int r_target, int r_source);

/// ---- small p-group algebras by multiplication table (Chouinard check) ----

/// Finite group of order n given by its multiplication table; element 0 is
/// the identity.
struct GroupTable {
    std::string name;
    int order = 0;
    std::vector<int> mul;  // order x order, mul[a*order+b] = a*b
    int at(int a, int b) const { return mul[a * order + b]; }
    int inverse(int a) const;
};

GroupTable cyclic_group(int n);
GroupTable quaternion_group();  // Q_8

/// Module over kG for a table group: one action matrix per group element.
struct GroupModule {
    GroupTable G;
    int p = 2;
    int dim = 0;
    std::vector<Mat> act;  // order matrices, dim x dim
    void validate() const;
};

GroupModule group_trivial(const GroupTable& G, int p);
GroupModule group_regular(const GroupTable& G, int p);
GroupModule group_tensor(const GroupModule& a, const GroupModule& b);
GroupModule group_restrict(const GroupModule& m, const std::vector<int>& subgroup_elements);
bool group_is_projective(const GroupModule& m);
GroupModule random_group_module(Rng rng, const GroupTable& G, int p, int dim_max);

/// Restrict to an elementary abelian subgroup generated by the given
/// commuting elements of order p; returns the FdModule with z_i = g_i - 1.
FdModule group_restrict_elementary(const GroupModule& m, const std::vector<int>& generators);

}  // namespace strat
