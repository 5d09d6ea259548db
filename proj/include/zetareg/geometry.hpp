#ifndef ZETAREG_GEOMETRY_HPP
#define ZETAREG_GEOMETRY_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "zetareg/ffield.hpp"

namespace zetareg {

// Multivariate polynomial over the base field F_{p^e}. Coefficients are
// scalar-encoded base-field elements (base-p digits = coefficient vector).
struct MultiPoly {
    struct Term {
        std::vector<unsigned> exponents; // length nvars
        unsigned long long coeff;        // in [0, p^e), nonzero
    };
    unsigned nvars = 0;
    std::vector<Term> terms;

    bool is_homogeneous() const;
    unsigned total_degree() const;
};

MultiPoly make_poly(unsigned nvars, std::vector<MultiPoly::Term> terms);

struct VarietySpec;
using SpecPtr = std::shared_ptr<const VarietySpec>;

// Compositional variety description over a fixed base field.
struct VarietySpec {
    enum class Kind {
        AffineSpace,
        ProjectiveSpace,
        AffineSub,
        ProjectiveSub,
        Product,
        DisjointUnion,
        Complement,
        BaseRestriction,
    };

    Kind kind;
    FieldRef base;
    int ambient = 0;              // space / sub kinds
    std::vector<MultiPoly> polys; // sub kinds
    SpecPtr left, right;          // Product
    std::vector<SpecPtr> parts;   // DisjointUnion
    SpecPtr ambient_spec, closed_spec; // Complement
    SpecPtr inner;                // BaseRestriction
    unsigned restrict_degree = 1; // BaseRestriction
    int dim = 0;
};

SpecPtr affine_space(const FieldRef& base, int n);
SpecPtr projective_space(const FieldRef& base, int n);
SpecPtr affine_sub(const FieldRef& base, int n, std::vector<MultiPoly> polys,
                   std::optional<int> declared_dim = std::nullopt);
SpecPtr projective_sub(const FieldRef& base, int n, std::vector<MultiPoly> polys,
                       std::optional<int> declared_dim = std::nullopt);
SpecPtr product(const SpecPtr& a, const SpecPtr& b);
SpecPtr disjoint_union(std::vector<SpecPtr> parts);
SpecPtr complement(const SpecPtr& ambient, const SpecPtr& closed);
SpecPtr base_restriction(const SpecPtr& inner, unsigned degree);

// Exact #X(F_{q^n}) by enumeration. `jobs` bounds worker threads for the
// brute-force kernels (0 = serial).
Int count_points(const SpecPtr& spec, unsigned n, unsigned jobs = 0);

// Closed-point counts a_d for d = 1..D via Moebius inversion of N_1..N_D.
std::map<unsigned, Int> closed_point_census(const SpecPtr& spec, unsigned D,
                                            unsigned jobs = 0);

// Per-level stratum counts N_n(Y^{(a)}) for n = 1..D.
struct SNCCensus {
    // counts[a][n-1] = N_n(Y^{(a)}), a = 0..max level
    std::vector<std::vector<Int>> counts;
};
SNCCensus snc_census(const std::vector<std::pair<SpecPtr, unsigned>>& strata,
                     unsigned D, unsigned jobs = 0);

int moebius(unsigned n);

} // namespace zetareg

#endif
