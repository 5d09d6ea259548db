#ifndef ZETAREG_RATIONAL_HPP
#define ZETAREG_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

#include "zetareg/errors.hpp"

namespace zetareg {

using Int = mpz_class;
using Rat = mpq_class;

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// q^r for any integer r, as an exact rational.
inline Rat rat_pow(const Int& q, long r) {
    if (r >= 0) return Rat(ipow(q, static_cast<unsigned long>(r)));
    return Rat(1) / Rat(ipow(q, static_cast<unsigned long>(-r)));
}

// p-adic valuation of a nonzero rational.
inline long p_valuation(const Rat& x, const Int& p) {
    if (x == 0) throw ZeroInput("p_valuation of zero");
    long v = 0;
    Int n = abs(x.get_num());
    Int d = x.get_den();
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) { n /= p; ++v; }
    while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) { d /= p; --v; }
    return v;
}

// Stable wire format: "num/den" in lowest terms, den > 0.
inline std::string rat_string(const Rat& x) {
    Rat c = x;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational: " + s);
    }
}

} // namespace zetareg

#endif
