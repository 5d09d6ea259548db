#include "zetareg/zeta.hpp"

#include <algorithm>

namespace zetareg {

namespace {

PolyQ trimq(PolyQ a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

PolyQ to_q(const PolyZ& a) {
    PolyQ out;
    out.reserve(a.size());
    for (const auto& c : a) out.emplace_back(c);
    return out;
}

PolyQ q_mul(const PolyQ& a, const PolyQ& b) {
    if (a.empty() || b.empty()) return {};
    PolyQ c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return trimq(std::move(c));
}

// Remainder of a by b (b nonzero).
PolyQ q_rem(PolyQ a, const PolyQ& b) {
    a = trimq(std::move(a));
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a = trimq(std::move(a));
    }
    return a;
}

PolyQ q_gcd(PolyQ a, PolyQ b) {
    a = trimq(std::move(a));
    b = trimq(std::move(b));
    while (!b.empty()) {
        PolyQ r = q_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Exact division a / b, throws if not exact.
PolyQ q_div_exact(const PolyQ& a, const PolyQ& b) {
    PolyQ rem = trimq(a);
    PolyQ quot(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rat(0));
    while (rem.size() >= b.size() && !rem.empty()) {
        Rat f = rem.back() / b.back();
        size_t shift = rem.size() - b.size();
        quot[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= f * b[i];
        rem = trimq(std::move(rem));
    }
    if (!rem.empty()) throw Error("inexact polynomial division");
    return trimq(std::move(quot));
}

RationalFunctionQ normalize_rf(PolyQ num, PolyQ den) {
    num = trimq(std::move(num));
    den = trimq(std::move(den));
    if (den.empty()) throw DivisionByZero("zero denominator");
    if (!num.empty()) {
        PolyQ g = q_gcd(num, den);
        if (g.size() > 1) {
            num = q_div_exact(num, g);
            den = q_div_exact(den, g);
        }
    }
    if (den.empty() || den.front() == 0)
        throw Error("denominator must not vanish at 0");
    Rat c = den.front();
    for (auto& x : num) x /= c;
    for (auto& x : den) x /= c;
    // Clear denominators; for zeta-style data everything is already integral.
    Int L = 1;
    for (const auto& x : num) L = lcm(L, x.get_den());
    for (const auto& x : den) L = lcm(L, x.get_den());
    if (L != 1)
        throw Error("rational function not expressible with integer "
                    "coefficients and den(0) = 1");
    RationalFunctionQ out;
    for (const auto& x : num) out.num.push_back(x.get_num());
    for (const auto& x : den) out.den.push_back(x.get_num());
    if (out.den.empty()) out.den.push_back(1);
    if (out.num.empty()) out.num.push_back(0);
    return out;
}

} // namespace

RationalFunctionQ make_rational_function(PolyZ num, PolyZ den) {
    return normalize_rf(to_q(num), to_q(den));
}

PowerSeriesQ zeta_series(const std::vector<Int>& counts) {
    const size_t m = counts.size();
    PowerSeriesQ z;
    z.coeffs.assign(m + 1, Rat(0));
    z.coeffs[0] = 1;
    for (size_t k = 1; k <= m; ++k) {
        Rat sum = 0;
        for (size_t j = 1; j <= k; ++j)
            sum += Rat(counts[j - 1]) * z.coeffs[k - j];
        z.coeffs[k] = sum / Rat(static_cast<long>(k));
        if (z.coeffs[k].get_den() != 1)
            throw NonIntegralSeries("coefficient " + std::to_string(k) +
                                    " = " + rat_string(z.coeffs[k]));
    }
    return z;
}

PowerSeriesQ euler_product_check(const std::map<unsigned, Int>& census, size_t m) {
    PowerSeriesQ z;
    z.coeffs.assign(m + 1, Rat(0));
    z.coeffs[0] = 1;
    for (const auto& [d, a_d] : census) {
        if (d > m) continue;
        if (a_d < 0) throw NegativeCensus();
        unsigned long reps = a_d.get_ui();
        for (unsigned long r = 0; r < reps; ++r)
            for (size_t k = d; k <= m; ++k)
                z.coeffs[k] += z.coeffs[k - d]; // multiply by 1/(1 - t^d)
    }
    return z;
}

PowerSeriesQ series_mul(const PowerSeriesQ& a, const PowerSeriesQ& b) {
    size_t m = std::min(a.order(), b.order());
    PowerSeriesQ c;
    c.coeffs.assign(m + 1, Rat(0));
    for (size_t i = 0; i <= m; ++i)
        for (size_t j = 0; i + j <= m && j < b.coeffs.size(); ++j)
            if (i < a.coeffs.size())
                c.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return c;
}

PowerSeriesQ series_of(const RationalFunctionQ& f, size_t m) {
    // den(0) = 1, so the inverse series exists.
    PowerSeriesQ inv;
    inv.coeffs.assign(m + 1, Rat(0));
    inv.coeffs[0] = 1;
    for (size_t k = 1; k <= m; ++k) {
        Rat s = 0;
        for (size_t j = 1; j <= k && j < f.den.size(); ++j)
            s += Rat(f.den[j]) * inv.coeffs[k - j];
        inv.coeffs[k] = -s;
    }
    PowerSeriesQ numser;
    numser.coeffs.assign(m + 1, Rat(0));
    for (size_t i = 0; i < f.num.size() && i <= m; ++i)
        numser.coeffs[i] = Rat(f.num[i]);
    return series_mul(numser, inv);
}

namespace {

// Berlekamp-Massey over Q: minimal connection polynomial C with C[0] = 1 and
// sum_j C[j] c[k-j] = 0 for all k >= len(C)-1 within the data.
struct BMResult {
    PolyQ connection;
    size_t length = 0;
    size_t last_change = 0; // index of the last discrepancy that grew L
};

BMResult berlekamp_massey(const std::vector<Rat>& c) {
    PolyQ C{Rat(1)}, B{Rat(1)};
    size_t L = 0, m = 1;
    Rat b = 1;
    BMResult res;
    for (size_t n = 0; n < c.size(); ++n) {
        Rat d = c[n];
        for (size_t j = 1; j <= L && j < C.size(); ++j) d += C[j] * c[n - j];
        if (d == 0) {
            ++m;
        } else if (2 * L <= n) {
            PolyQ T = C;
            Rat coef = d / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, Rat(0));
            for (size_t j = 0; j < B.size(); ++j) C[j + m] -= coef * B[j];
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            m = 1;
            res.last_change = n;
        } else {
            Rat coef = d / b;
            if (C.size() < B.size() + m) C.resize(B.size() + m, Rat(0));
            for (size_t j = 0; j < B.size(); ++j) C[j + m] -= coef * B[j];
            ++m;
            res.last_change = n;
        }
    }
    res.connection = trimq(std::move(C));
    if (res.connection.empty()) res.connection.push_back(Rat(1));
    res.length = L;
    return res;
}

} // namespace

namespace {

// Denominator of degree <= D with den[0] = 1 such that series * den is a
// polynomial of degree <= N, found by solving the linear system given by the
// vanishing of coefficients N+1 .. m. Throws NotStabilized if none exists.
PolyQ pade_denominator(const std::vector<Rat>& c, size_t N, size_t D,
                       size_t m) {
    size_t rows = m - N, cols = D;
    // Unknowns x_1..x_D; equation k (for k = N+1..m):
    //   sum_j x_j c[k-j] = -c[k]   (terms with k - j < 0 dropped)
    std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(cols + 1, Rat(0)));
    for (size_t r = 0; r < rows; ++r) {
        size_t k = N + 1 + r;
        for (size_t j = 1; j <= D; ++j)
            if (k >= j) A[r][j - 1] = c[k - j];
        A[r][cols] = -c[k];
    }
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t sel = rank;
        while (sel < rows && A[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(A[sel], A[rank]);
        Rat inv = A[rank][col];
        for (auto& x : A[rank]) x /= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            Rat f = A[r][col];
            for (size_t j = col; j <= cols; ++j) A[r][j] -= f * A[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (A[r][cols] != 0)
            throw NotStabilized("series does not fit the declared bound");
    PolyQ den(D + 1, Rat(0));
    den[0] = 1;
    for (size_t r = 0; r < rank; ++r) den[pivot_col[r] + 1] = A[r][cols];
    return trimq(std::move(den));
}

} // namespace

RationalFunctionQ reconstruct_rational(
    const PowerSeriesQ& series,
    std::optional<std::pair<size_t, size_t>> bound, size_t guard) {
    const size_t m = series.order();
    if (bound && bound->first + bound->second + guard > m)
        throw InsufficientOrder("need order >= deg_num + deg_den + guard");

    PolyQ den;
    size_t num_deg_cap;
    if (!bound) {
        BMResult bm = berlekamp_massey(series.coeffs);
        const size_t L = bm.length;
        // The recurrence must be over-determined by at least `guard`
        // coefficients beyond the 2L needed to pin it down.
        if (2 * L + guard > m + 1)
            throw NotStabilized("recurrence of length " + std::to_string(L) +
                                " not supported by " + std::to_string(m + 1) +
                                " coefficients");
        den = bm.connection;
        num_deg_cap = L == 0 ? 0 : L - 1;
    } else {
        den = pade_denominator(series.coeffs, bound->first, bound->second, m);
        num_deg_cap = bound->first;
    }

    PolyQ numser;
    numser.reserve(series.coeffs.size());
    for (const auto& x : series.coeffs) numser.push_back(x);
    PolyQ prod = q_mul(numser, den);
    PolyQ num;
    for (size_t i = 0; i <= num_deg_cap && i < prod.size(); ++i)
        num.push_back(prod[i]);
    // Everything between the numerator cap and the truncation horizon must
    // vanish, or the data does not fit the announced shape.
    for (size_t i = num_deg_cap + 1; i <= m && i < prod.size(); ++i)
        if (prod[i] != 0)
            throw NotStabilized("series does not satisfy the recurrence");

    RationalFunctionQ f = normalize_rf(std::move(num), std::move(den));
    PowerSeriesQ back = series_of(f, m);
    for (size_t i = 0; i <= m; ++i)
        if (back.coeffs[i] != series.coeffs[i])
            throw NotStabilized("round trip mismatch at coefficient " +
                                std::to_string(i));
    return f;
}

Rat poly_eval(const PolyZ& f, const Rat& t) {
    Rat acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = acc * t + Rat(f[i]);
    return acc;
}

namespace {

// Multiplicity of root t0 and the deflated polynomial.
std::pair<unsigned, PolyQ> deflate(const PolyZ& f, const Rat& t0) {
    PolyQ cur = to_q(f);
    cur = trimq(std::move(cur));
    unsigned mult = 0;
    for (;;) {
        // Evaluate; if zero, synthetic-divide by (t - t0).
        Rat val = 0;
        for (size_t i = cur.size(); i-- > 0;) val = val * t0 + cur[i];
        if (val != 0 || cur.empty()) break;
        PolyQ quot(cur.size() - 1, Rat(0));
        Rat carry = 0;
        for (size_t i = cur.size(); i-- > 1;) {
            carry = cur[i] + carry * t0;
            quot[i - 1] = carry;
        }
        cur = trimq(std::move(quot));
        ++mult;
        if (cur.empty()) break;
    }
    return {mult, cur};
}

} // namespace

LaurentData special_value(const RationalFunctionQ& Z, const Int& q, long r) {
    bool num_zero = true;
    for (const auto& c : Z.num)
        if (c != 0) { num_zero = false; break; }
    if (num_zero) throw ZeroFunction();
    Rat t0 = rat_pow(q, -r);
    auto [mn, num_red] = deflate(Z.num, t0);
    auto [md, den_red] = deflate(Z.den, t0);
    Rat nv = 0, dv = 0;
    for (size_t i = num_red.size(); i-- > 0;) nv = nv * t0 + num_red[i];
    for (size_t i = den_red.size(); i-- > 0;) dv = dv * t0 + den_red[i];
    LaurentData out;
    out.point = t0;
    out.order = static_cast<long>(mn) - static_cast<long>(md);
    out.leading = nv / dv;
    return out;
}

RationalFunctionQ base_change(const RationalFunctionQ& Z, unsigned e) {
    if (e < 1) throw Error("base change degree must be >= 1");
    auto substitute = [e](const PolyZ& f) {
        PolyZ out(f.empty() ? 0 : (f.size() - 1) * e + 1, Int(0));
        for (size_t i = 0; i < f.size(); ++i) out[i * e] = f[i];
        return out;
    };
    return make_rational_function(substitute(Z.num), substitute(Z.den));
}

RationalFunctionQ rf_one() {
    return {{Int(1)}, {Int(1)}};
}

RationalFunctionQ rf_mul(const RationalFunctionQ& a, const RationalFunctionQ& b) {
    return normalize_rf(q_mul(to_q(a.num), to_q(b.num)),
                        q_mul(to_q(a.den), to_q(b.den)));
}

RationalFunctionQ rf_inv(const RationalFunctionQ& a) {
    return normalize_rf(to_q(a.den), to_q(a.num));
}

bool rf_equal(const RationalFunctionQ& a, const RationalFunctionQ& b) {
    return a.num == b.num && a.den == b.den;
}

Rat strip_sign_ppower(const Rat& x, const Int& p) {
    if (x == 0) throw ZeroInput("strip_sign_ppower(0)");
    Rat a = abs(x);
    long v = p_valuation(a, p);
    return a / rat_pow(p, v);
}

} // namespace zetareg
