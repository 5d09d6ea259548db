#ifndef ZETAREG_CHOWCAT_HPP
#define ZETAREG_CHOWCAT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zetareg/abgroup.hpp"
#include "zetareg/weight.hpp"

namespace zetareg {

// Table of known higher Chow groups of a catalog variety, keyed by
// (cycle dimension r, homological degree i). Absent entries mean "unknown",
// never zero; catalog builders therefore write explicit zero entries across
// their declared range.
struct ChowProfile {
    std::string tag;
    Int q;      // cardinality of the base field
    int dim = 0;
    std::map<std::pair<long, long>, FQGroup> table;
    std::vector<Int> component_degrees; // constant-field degree per component

    std::optional<FQGroup> entry(long r, long i) const;
};

// Classical cyclic values for twists over a finite field of cardinality q:
// Z at (j, i) = (0, 0), cyclic of order q^j - 1 at i = 2j - 1 for j >= 1,
// trivial otherwise.
FQGroup tate_chow(const Int& q, long j, long i);

// Profile of a one-point scheme, populated down to cycle dimension -r_depth
// and up to homological degree i_max (explicit zeros included).
ChowProfile point_profile(const Int& q, long r_depth, long i_max);

// Profile of base x P^n via the direct-sum decomposition of the bundle
// formula. Throws IncompleteBase if a needed base entry is missing.
ChowProfile projective_bundle_profile(const ChowProfile& base, int n);

// Profile of a smooth projective curve with zeta numerator P over a base
// field of cardinality q, constant field of degree e. Throws NonIntegralP1
// if P(1) <= 0.
ChowProfile curve_profile(const std::vector<Int>& P, const Int& q, long e);

// One connected smooth projective piece inside a term of the assembly. The
// profile lives over the piece's constant field; degree_image_index is the
// index of the image of the degree map over that field (nullopt = unknown,
// 0 = image of infinite index, i.e. a cokernel with free rank).
struct RegComponent {
    ChowProfile profile;
    Int constant_field_degree = 1;
    std::optional<Int> degree_image_index = Int(1);
};

struct RegTerm {
    std::vector<RegComponent> components;
};

// Bounded complex of smooth projective terms carrying the degree maps whose
// Euler characteristics assemble the special-value product.
struct RegulatorAssembly {
    int dim = 0;
    std::vector<RegTerm> terms; // term a in degree a
    std::optional<std::vector<Int>> weight_ranks; // rank of H_i, if supplied
};

void validate_assembly(const RegulatorAssembly& A);

struct RegulatorChiReport {
    struct TermFactor {
        size_t term = 0;
        Rat chi_deg{1};      // #coker/#ker of the term's degree map
        Rat higher{1};       // contribution of degrees i >= 1
        Rat contribution{1}; // signed-exponent contribution to the product
    };
    std::vector<TermFactor> factors;
    Rat product{1};
};

// Alternating product over the assembly:
//   prod_a chi(deg_a)^{(-1)^{a+1}} * prod_{a, b>0} (#CH_0(X_a,b)_tor)^{(-1)^{a+b}}
// with all orders taken prime-to-p when lambda inverts p. The exponent
// convention is fixed once, calibrated against the point and curve cases
// where both sides are independently computable.
RegulatorChiReport regulator_chi(const RegulatorAssembly& A, const Lambda& lambda);

enum class SpadeStatus { Satisfied, Failed, Unknown };

struct SpadeReport {
    SpadeStatus status = SpadeStatus::Unknown;
    std::string reason;
};

// Three-valued check of rational surjectivity of the regulator in degrees
// 2..dim, certified from supplied rank data where possible.
SpadeReport spadesuit_check(const RegulatorAssembly& A);

} // namespace zetareg

#endif
