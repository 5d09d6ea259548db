#include "zetareg/ffield.hpp"

#include <cstdlib>
#include <map>
#include <mutex>

#include "zetareg/config.hpp"

namespace zetareg {

namespace {

unsigned long long g_budget = 0;
bool g_budget_init = false;
std::mutex g_budget_mutex;

} // namespace

unsigned long long enumeration_budget() {
    std::lock_guard<std::mutex> lock(g_budget_mutex);
    if (!g_budget_init) {
        g_budget = 100000000ULL;
        if (const char* env = std::getenv("ZETAREG_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) g_budget = v;
        }
        g_budget_init = true;
    }
    return g_budget;
}

void set_enumeration_budget(unsigned long long budget) {
    std::lock_guard<std::mutex> lock(g_budget_mutex);
    g_budget = budget;
    g_budget_init = true;
}

namespace {

bool is_prime_ul(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over F_p, low-degree-first, used only for modulus search
// and inversion.
using Poly = std::vector<unsigned long>;

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

// Remainder of a by monic b.
Poly poly_mod(Poly a, const Poly& b, unsigned long p) {
    a = trim(std::move(a));
    const size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        unsigned long lead = a.back();
        size_t shift = a.size() - 1 - db;
        for (size_t i = 0; i <= db; ++i) {
            unsigned long sub = (b[i] * lead) % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        a = trim(std::move(a));
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned long p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return trim(std::move(c));
}

unsigned long inv_mod_p(unsigned long a, unsigned long p) {
    long t = 0, nt = 1;
    long r = static_cast<long>(p), nr = static_cast<long>(a % p);
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw DivisionByZero("not invertible mod p");
    return static_cast<unsigned long>((t % static_cast<long>(p) + p) % p);
}

// Divisor test by all monic polynomials of degree 1..deg/2.
bool is_irreducible(const Poly& f, unsigned long p) {
    const size_t deg = f.size() - 1;
    if (deg == 1) return true;
    for (size_t d = 1; 2 * d <= deg; ++d) {
        unsigned long long count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (unsigned long long idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            g[d] = 1;
            unsigned long long rest = idx;
            for (size_t i = 0; i < d; ++i) { g[i] = rest % p; rest /= p; }
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::map<std::pair<unsigned long, unsigned>, FieldRef> g_field_cache;
std::mutex g_field_mutex;

} // namespace

FieldRef build_field(unsigned long p, unsigned e) {
    if (!is_prime_ul(p)) throw NotPrime("p = " + std::to_string(p));
    if (e < 1) throw Error("extension degree must be >= 1");
    {
        std::lock_guard<std::mutex> lock(g_field_mutex);
        auto it = g_field_cache.find({p, e});
        if (it != g_field_cache.end()) return it->second;
    }
    // Scan monic degree-e candidates in lexicographic order of their
    // coefficient vectors, constant term most significant.
    unsigned long long count = 1;
    for (unsigned i = 0; i < e; ++i) count *= p;
    Poly found;
    for (unsigned long long idx = 0; idx < count; ++idx) {
        Poly f(e + 1, 0);
        f[e] = 1;
        unsigned long long rest = idx;
        for (unsigned i = e; i-- > 0;) { f[i] = rest % p; rest /= p; }
        if (is_irreducible(f, p)) { found = f; break; }
    }
    auto desc = std::make_shared<FieldDesc>();
    desc->p = p;
    desc->e = e;
    desc->modulus = found;
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto [it, inserted] = g_field_cache.emplace(std::make_pair(p, e), desc);
    return it->second;
}

bool FFElem::is_zero() const {
    for (unsigned long c : coeffs)
        if (c != 0) return false;
    return true;
}

bool FFElem::operator==(const FFElem& o) const {
    return field.get() == o.field.get() && coeffs == o.coeffs;
}

FFElem ff_zero(const FieldRef& f) {
    return {f, std::vector<unsigned long>(f->e, 0)};
}

FFElem ff_one(const FieldRef& f) {
    std::vector<unsigned long> c(f->e, 0);
    c[0] = f->p > 1 ? 1 : 0;
    return {f, std::move(c)};
}

FFElem ff_from_scalar(const FieldRef& f, unsigned long long scalar) {
    std::vector<unsigned long> c(f->e, 0);
    for (unsigned i = 0; i < f->e; ++i) { c[i] = scalar % f->p; scalar /= f->p; }
    if (scalar != 0) throw Error("scalar encoding out of range");
    return {f, std::move(c)};
}

namespace {

void check_same_field(const FFElem& a, const FFElem& b) {
    if (a.field.get() != b.field.get())
        throw FieldMismatch();
}

} // namespace

FFElem ff_add(const FFElem& a, const FFElem& b) {
    check_same_field(a, b);
    FFElem r = a;
    const unsigned long p = a.field->p;
    for (size_t i = 0; i < r.coeffs.size(); ++i)
        r.coeffs[i] = (r.coeffs[i] + b.coeffs[i]) % p;
    return r;
}

FFElem ff_neg(const FFElem& a) {
    FFElem r = a;
    const unsigned long p = a.field->p;
    for (auto& c : r.coeffs) c = (p - c) % p;
    return r;
}

FFElem ff_sub(const FFElem& a, const FFElem& b) {
    return ff_add(a, ff_neg(b));
}

FFElem ff_mul(const FFElem& a, const FFElem& b) {
    check_same_field(a, b);
    const unsigned long p = a.field->p;
    const unsigned e = a.field->e;
    std::vector<unsigned long> prod(2 * e - 1, 0);
    for (unsigned i = 0; i < e; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (unsigned j = 0; j < e; ++j)
            prod[i + j] = (prod[i + j] + a.coeffs[i] * b.coeffs[j]) % p;
    }
    // Reduce x^k for k >= e using the monic modulus.
    const auto& m = a.field->modulus;
    for (unsigned k = 2 * e - 2; k >= e && k < prod.size(); --k) {
        unsigned long lead = prod[k];
        if (lead != 0) {
            prod[k] = 0;
            for (unsigned i = 0; i < e; ++i) {
                unsigned long sub = (m[i] * lead) % p;
                prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
            }
        }
        if (k == e) break;
    }
    prod.resize(e);
    return {a.field, std::move(prod)};
}

FFElem ff_inv(const FFElem& a) {
    if (a.is_zero()) throw DivisionByZero("inv(0)");
    const unsigned long p = a.field->p;
    // Extended Euclid in F_p[x] against the modulus.
    std::vector<unsigned long> r0(a.field->modulus), r1(a.coeffs);
    std::vector<unsigned long> t0, t1{1};
    auto trim_vec = [](std::vector<unsigned long>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim_vec(r1);
    while (!r1.empty()) {
        // Divide r0 by r1.
        std::vector<unsigned long> q(r0.size() > r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        std::vector<unsigned long> rem = r0;
        trim_vec(rem);
        unsigned long lead_inv = inv_mod_p(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            unsigned long c = (rem.back() * lead_inv) % p;
            size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = (rem[shift + i] + p - (r1[i] * c) % p) % p;
            trim_vec(rem);
        }
        // t2 = t0 - q * t1
        std::vector<unsigned long> qt1(q.size() + (t1.empty() ? 0 : t1.size() - 1) + 1, 0);
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < t1.size(); ++j)
                qt1[i + j] = (qt1[i + j] + q[i] * t1[j]) % p;
        std::vector<unsigned long> t2(std::max(t0.size(), qt1.size()), 0);
        for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
        for (size_t i = 0; i < qt1.size(); ++i) t2[i] = (t2[i] + p - qt1[i]) % p;
        trim_vec(t2);
        t0 = std::move(t1);
        t1 = std::move(t2);
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    // r0 is the gcd (nonzero constant since the modulus is irreducible).
    if (r0.size() != 1) throw DivisionByZero("gcd with modulus not constant");
    unsigned long scale = inv_mod_p(r0[0], p);
    std::vector<unsigned long> out(a.field->e, 0);
    for (size_t i = 0; i < t0.size() && i < out.size(); ++i)
        out[i] = (t0[i] * scale) % p;
    return {a.field, std::move(out)};
}

FFElem ff_pow(const FFElem& a, unsigned long long n) {
    FFElem base = a;
    FFElem acc = ff_one(a.field);
    while (n > 0) {
        if (n & 1ULL) acc = ff_mul(acc, base);
        base = ff_mul(base, base);
        n >>= 1ULL;
    }
    return acc;
}

FFElem ff_element_at(const FieldRef& f, unsigned long long index) {
    std::vector<unsigned long> c(f->e, 0);
    for (unsigned i = f->e; i-- > 0;) { c[i] = index % f->p; index /= f->p; }
    return {f, std::move(c)};
}

std::vector<FFElem> ff_enumerate(const FieldRef& f) {
    Int card = f->cardinality();
    if (card > Int(static_cast<unsigned long>(enumeration_budget())))
        throw BudgetExceeded("field of size " + card.get_str());
    unsigned long long n = card.get_ui();
    std::vector<FFElem> out;
    out.reserve(n);
    for (unsigned long long i = 0; i < n; ++i)
        out.push_back(ff_element_at(f, i));
    return out;
}

} // namespace zetareg
