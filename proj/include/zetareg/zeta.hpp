#ifndef ZETAREG_ZETA_HPP
#define ZETAREG_ZETA_HPP

#include <map>
#include <optional>
#include <vector>

#include "zetareg/rational.hpp"

namespace zetareg {

// Truncated power series over Q, coefficient k = coeffs[k].
struct PowerSeriesQ {
    std::vector<Rat> coeffs;
    size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

// Integer-coefficient polynomial, ascending degree. Trailing zeros trimmed.
using PolyZ = std::vector<Int>;
using PolyQ = std::vector<Rat>;

// Z(t) = num/den with gcd(num, den) = 1 over Q, den(0) = 1, content(den) = 1.
struct RationalFunctionQ {
    PolyZ num;
    PolyZ den;
};

// Z(t) = leading * (t - point)^order * (1 + O(t - point)).
struct LaurentData {
    Rat point;
    long order;  // pole = negative
    Rat leading;
};

// Z(t) = exp(sum_{n>=1} N_n t^n / n) to order m = counts.size(). All
// coefficients must come out integral.
PowerSeriesQ zeta_series(const std::vector<Int>& counts);

// Expansion of prod_d (1 - t^d)^(-a_d) to order m.
PowerSeriesQ euler_product_check(const std::map<unsigned, Int>& census, size_t m);

PowerSeriesQ series_mul(const PowerSeriesQ& a, const PowerSeriesQ& b);
PowerSeriesQ series_of(const RationalFunctionQ& f, size_t m);

RationalFunctionQ reconstruct_rational(
    const PowerSeriesQ& series,
    std::optional<std::pair<size_t, size_t>> bound = std::nullopt,
    size_t guard = 2);

LaurentData special_value(const RationalFunctionQ& Z, const Int& q, long r);

RationalFunctionQ base_change(const RationalFunctionQ& Z, unsigned e);

RationalFunctionQ rf_mul(const RationalFunctionQ& a, const RationalFunctionQ& b);
RationalFunctionQ rf_inv(const RationalFunctionQ& a);
RationalFunctionQ rf_one();
bool rf_equal(const RationalFunctionQ& a, const RationalFunctionQ& b);
RationalFunctionQ make_rational_function(PolyZ num, PolyZ den);

// |x| with all p-adic content removed.
Rat strip_sign_ppower(const Rat& x, const Int& p);

Rat poly_eval(const PolyZ& f, const Rat& t);

} // namespace zetareg

#endif
