#ifndef ZETAREG_WEIGHT_HPP
#define ZETAREG_WEIGHT_HPP

#include <map>
#include <vector>

#include "zetareg/abgroup.hpp"

namespace zetareg {

// Coefficient ring: Z, or Z[1/p].
struct Lambda {
    bool invert_p = false;
    Int p = 0;

    static Lambda Z() { return {}; }
    static Lambda Z_inv(const Int& prime) { return {true, prime}; }
};

// Incidence data of a simple-normal-crossing boundary. Level 0 is the
// compactification itself; a stratum at level a+1 has faces indexed by drop
// positions 0..a into level a.
struct SNCConfig {
    int dim = 0;
    std::vector<std::vector<int>> levels;         // stratum ids per level
    std::map<std::pair<int, int>, int> faces;     // (stratum id, drop) -> id

    int face(int stratum, int drop) const;
};

// Throws IncoherentIncidence if face targets are missing/misplaced or the
// simplicial identity fails.
void validate_snc(const SNCConfig& cfg);

struct WeightComplex {
    FGComplex complex; // free groups, degree a = level a
    Lambda lambda;
};

WeightComplex build_snc_complex(const SNCConfig& cfg, const Lambda& lambda);

std::vector<FGAbGroup> weight_homology(const WeightComplex& W);

// Mapping-cone localization: checks exactness of
//   ... -> H_i(Y) -> H_i(Xbar) -> H_i(U) -> H_{i-1}(Y) -> ...
// where the boundary Y carries the level >= 1 part of cfg and U the cone.
struct LocalizationReport {
    bool exact = true;
    int failing_degree = 0;
    std::vector<FGAbGroup> homology_U;
};
LocalizationReport localization_check(const SNCConfig& cfg, const Lambda& lambda);

// Bounded double complex; horiz[a][b] : entry[a][b] -> entry[a-1][b],
// vert[a][b] : entry[a][b] -> entry[a][b-1]. Stored maps commute; the
// totalization applies the sign twist (-1)^a to vertical maps.
struct DoubleComplexFG {
    std::vector<std::vector<FGAbGroup>> entry; // [a][b]
    std::vector<std::vector<FGMap>> horiz;     // defined for a >= 1
    std::vector<std::vector<FGMap>> vert;      // defined for b >= 1
};

void validate_double_complex(const DoubleComplexFG& D);

FGComplex total_complex(const DoubleComplexFG& D);

struct SpectralPages {
    std::vector<std::vector<FGAbGroup>> e1; // [a][b]
    std::vector<std::vector<FGAbGroup>> e2; // [a][b]
    bool degenerate = false;   // E2 concentrated in one row or column
    bool convergence_ok = true; // degenerate case only
};
SpectralPages ss_pages(const DoubleComplexFG& D);

struct VanishingAudit {
    struct Flag {
        size_t scenario;
        int degree;
    };
    std::vector<Flag> out_of_range; // H_j != 0 with j > d
    std::vector<size_t> a1_product_failures;
};
struct VanishingInput {
    std::vector<FGAbGroup> homology; // H_0.. upward
    int dim = 0;
    bool a1_product = false; // scenario is a product with the affine line
};
VanishingAudit vanishing_audit(const std::vector<VanishingInput>& results);

} // namespace zetareg

#endif
