#ifndef ZETAREG_TEST_UTIL_HPP
#define ZETAREG_TEST_UTIL_HPP

#include <numeric>
#include <random>
#include <vector>

#include "zetareg/abgroup.hpp"
#include "zetareg/weight.hpp"

namespace zetareg_test {

using namespace zetareg;
using Rng = std::mt19937;

inline long rnd(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline IntMatrix random_matrix(Rng& rng, size_t rows, size_t cols, long mag) {
    IntMatrix M(rows, cols);
    for (auto& x : M.a) x = Int(rnd(rng, -mag, mag));
    return M;
}

inline FGAbGroup random_group(Rng& rng, size_t max_free = 2,
                              size_t max_torsion = 3) {
    FGAbGroup g;
    g.free_rank = static_cast<size_t>(rnd(rng, 0, static_cast<long>(max_free)));
    size_t nt = static_cast<size_t>(rnd(rng, 0, static_cast<long>(max_torsion)));
    Int d = 1;
    for (size_t i = 0; i < nt; ++i) {
        d *= Int(rnd(rng, 2, 5));
        g.torsion.push_back(d);
    }
    return g;
}

inline FGAbGroup random_finite_group(Rng& rng, size_t max_torsion = 3) {
    FGAbGroup g = random_group(rng, 0, max_torsion);
    g.free_rank = 0;
    return g;
}

// Arbitrary valid homomorphism: entry (j, i) is constrained so that each
// source relation lands in the target relation lattice.
inline FGMap random_map(Rng& rng, const FGAbGroup& S, const FGAbGroup& T,
                        long mag = 3) {
    IntMatrix M(T.ngens(), S.ngens());
    auto order_of = [](const FGAbGroup& g, size_t i) -> Int {
        return i < g.torsion.size() ? g.torsion[i] : Int(0);
    };
    for (size_t j = 0; j < T.ngens(); ++j)
        for (size_t i = 0; i < S.ngens(); ++i) {
            Int di = order_of(S, i), dj = order_of(T, j);
            Int step;
            if (dj == 0) step = (di == 0) ? Int(1) : Int(0);
            else if (di == 0) step = 1;
            else step = dj / gcd(dj, di);
            M.at(j, i) = step * Int(rnd(rng, -mag, mag));
        }
    return make_fg_map(S, T, std::move(M));
}

// Nonsingular square matrix (finite kernel and cokernel as a map Z^n -> Z^n).
inline IntMatrix random_nonsingular(Rng& rng, size_t n, long mag = 5) {
    for (;;) {
        IntMatrix M = random_matrix(rng, n, n, mag);
        if (mat_det(M) != 0) return M;
    }
}

// Random valid boundary configuration built from a downward-closed family of
// divisor subsets (one stratum per subset), which satisfies the simplicial
// identity by construction.
inline SNCConfig random_snc(Rng& rng, int max_dim = 3, int max_divisors = 5) {
    SNCConfig cfg;
    cfg.dim = static_cast<int>(rnd(rng, 1, max_dim));
    int ndiv = static_cast<int>(rnd(rng, 0, max_divisors));
    int next_id = 0;

    // subsets encoded as bitmasks; family[mask] = stratum id or -1
    std::vector<int> stratum(1u << ndiv, -1);
    cfg.levels.push_back({next_id});
    int top_id = next_id++;
    (void)top_id;

    std::vector<std::vector<unsigned>> by_size(
        static_cast<size_t>(cfg.dim) + 1);
    for (unsigned mask = 1; mask < (1u << ndiv); ++mask) {
        int sz = __builtin_popcount(mask);
        if (sz <= cfg.dim) by_size[static_cast<size_t>(sz)].push_back(mask);
    }
    for (int sz = 1; sz <= cfg.dim; ++sz) {
        std::vector<int> level;
        for (unsigned mask : by_size[static_cast<size_t>(sz)]) {
            bool facets_ok = true;
            for (int b = 0; b < ndiv; ++b)
                if ((mask >> b) & 1u) {
                    unsigned facet = mask & ~(1u << b);
                    if (facet != 0 && stratum[facet] < 0) facets_ok = false;
                }
            if (!facets_ok) continue;
            if (sz > 1 && rnd(rng, 0, 1) == 0) continue;
            stratum[mask] = next_id;
            level.push_back(next_id);
            ++next_id;
        }
        if (level.empty()) break;
        cfg.levels.push_back(level);
    }
    // faces: dropping the j-th smallest divisor of the subset
    for (unsigned mask = 1; mask < (1u << ndiv); ++mask) {
        if (stratum[mask] < 0) continue;
        int j = 0;
        for (int b = 0; b < ndiv; ++b)
            if ((mask >> b) & 1u) {
                unsigned facet = mask & ~(1u << b);
                int target = facet == 0 ? 0 : stratum[facet];
                cfg.faces[{stratum[mask], j}] = target;
                ++j;
            }
    }
    return cfg;
}

} // namespace zetareg_test

#endif
