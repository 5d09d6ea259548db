#ifndef ZETAREG_ABGROUP_HPP
#define ZETAREG_ABGROUP_HPP

#include <optional>
#include <vector>

#include "zetareg/rational.hpp"

namespace zetareg {

struct IntMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Int> a; // row-major

    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

    Int& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& at(size_t i, size_t j) const { return a[i * cols + j]; }

    static IntMatrix identity(size_t n);
    bool operator==(const IntMatrix& o) const = default;
};

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);
Int mat_det(const IntMatrix& A); // square matrices, Bareiss

struct SNFResult {
    IntMatrix U, D, V; // U * A * V = D
};

// Smith normal form with unimodular transforms; contract is re-verified on
// every call (U*A*V = D, |det| = 1, divisibility chain).
SNFResult snf(const IntMatrix& A);

// Finitely generated abelian group, invariant-factor form. Generator
// convention everywhere: torsion generators first (orders ascending by
// divisibility), then free generators.
struct FGAbGroup {
    size_t free_rank = 0;
    std::vector<Int> torsion; // d_1 | d_2 | ..., each >= 2

    Int torsion_order() const;
    size_t ngens() const { return torsion.size() + free_rank; }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const FGAbGroup& o) const = default;
};

FGAbGroup fg_free(size_t rank);
FGAbGroup fg_cyclic(const Int& n); // Z/n (n = 0 gives Z)

// Relation matrix of the standard presentation (ngens x ntorsion).
IntMatrix fg_relations(const FGAbGroup& G);

// Presentation Z^gens / column span of rels, with the change of coordinates
// into canonical invariant-factor form.
struct Presentation {
    size_t gens = 0;
    IntMatrix rels; // gens x nrels
};

struct Canon {
    FGAbGroup group;
    IntMatrix to_can;   // group.ngens() x presentation gens
    IntMatrix from_can; // presentation gens x group.ngens()
};

Canon canonicalize(const Presentation& P);
FGAbGroup group_from_presentation(size_t gens, const IntMatrix& rels);

// Column-span membership and integer kernels.
bool in_image(const IntMatrix& A, const std::vector<Int>& v);
std::optional<std::vector<Int>> solve_in_image(const IntMatrix& A,
                                               const std::vector<Int>& v);
IntMatrix integer_kernel(const IntMatrix& A);
// Generators of the lattice {y : B*y in column span of C}.
IntMatrix lattice_preimage(const IntMatrix& B, const IntMatrix& C);

// Homomorphism between FG groups, matrix acting on the standard generators
// (target gens x source gens). Well-formedness is checked on construction.
struct FGMap {
    FGAbGroup source, target;
    IntMatrix matrix;
};

FGMap make_fg_map(FGAbGroup source, FGAbGroup target, IntMatrix matrix);
FGMap fg_zero_map(FGAbGroup source, FGAbGroup target);
FGMap fg_identity_map(const FGAbGroup& G);
FGMap fg_compose(const FGMap& g, const FGMap& f); // g after f

std::pair<FGAbGroup, FGAbGroup> ker_coker(const FGMap& f);

Rat chi(const FGMap& f);

// FQ bookkeeping: finite part plus a uniquely divisible summand whose rank
// may be symbolic.
struct FQGroup {
    FGAbGroup finite; // may carry free rank for catalog entries like CH_0 = Z
    std::optional<Int> divisible_rank; // nullopt = unknown

    bool operator==(const FQGroup&) const = default;
};

enum class DivisibleBehavior { Zero, Iso, Unspecified };

struct FQMap {
    FQGroup source, target;
    FGMap finite_map;
    DivisibleBehavior divisible = DivisibleBehavior::Unspecified;
};

Rat chi(const FQMap& f);

struct ChiCompositionReport {
    Rat chi_f, chi_g, chi_gf;
    bool ok = false;
};
ChiCompositionReport chi_compose_check(const FGMap& f, const FGMap& g);

// Snake diagram: two short exact rows, vertical maps f, g, h.
struct SnakeDiagram {
    FGMap top_incl, top_proj;    // A -> B -> C
    FGMap bot_incl, bot_proj;    // A' -> B' -> C'
    FGMap f, g, h;               // A -> A', B -> B', C -> C'
};
struct ChiSnakeReport {
    Rat chi_f, chi_g, chi_h;
    bool ok = false;
};
ChiSnakeReport chi_snake_check(const SnakeDiagram& d);

// Bounded homological complex; diffs[i] : groups[i+1] -> groups[i], so
// groups[i] sits in degree lowest + i.
struct FGComplex {
    int lowest = 0;
    std::vector<FGAbGroup> groups;
    std::vector<FGMap> diffs;
};

void validate_complex(const FGComplex& C);
std::vector<FGAbGroup> homology(const FGComplex& C);

// Homology with retained cycle bases, for computing induced maps.
struct HomologyData {
    std::vector<IntMatrix> cycle_basis; // chain gens x homology gens, per degree
    std::vector<Canon> canon;           // presentation on the cycle basis
};
HomologyData homology_detailed(const FGComplex& C);

// Level maps f[i] : C.groups[i] -> D.groups[i] (complexes aligned at the
// same lowest degree).
struct FGComplexMap {
    FGComplex source, target;
    std::vector<FGMap> levels;
};

FGMap induced_homology_map(const FGComplexMap& f, const HomologyData& hs,
                           const HomologyData& ht, size_t index);

// Induced map between homology groups of two (possibly different) complexes,
// given any chain-level matrix that sends cycles to cycles and boundaries to
// boundaries at the chosen spots.
FGMap induced_map_between(const HomologyData& hs, size_t si,
                          const HomologyData& ht, size_t ti,
                          const IntMatrix& chain_matrix);

// im(g) == ker(h) for composable maps g : A -> B, h : B -> C.
bool exact_at(const FGMap& g, const FGMap& h);

struct ChiComplexReport {
    Rat level_product, homology_product;
    bool ok = false;
};
ChiComplexReport chi_complex_check(const FGComplexMap& f);

FGAbGroup localize(const FGAbGroup& G, const Int& p);

} // namespace zetareg

#endif
