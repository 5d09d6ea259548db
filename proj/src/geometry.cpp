#include "zetareg/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "zetareg/config.hpp"

namespace zetareg {

bool MultiPoly::is_homogeneous() const {
    if (terms.empty()) return true;
    unsigned d = 0;
    for (unsigned e : terms.front().exponents) d += e;
    for (const auto& t : terms) {
        unsigned td = 0;
        for (unsigned e : t.exponents) td += e;
        if (td != d) return false;
    }
    return true;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms) {
        unsigned td = 0;
        for (unsigned e : t.exponents) td += e;
        d = std::max(d, td);
    }
    return d;
}

MultiPoly make_poly(unsigned nvars, std::vector<MultiPoly::Term> terms) {
    MultiPoly p;
    p.nvars = nvars;
    for (auto& t : terms) {
        if (t.exponents.size() != nvars)
            throw Error("term exponent vector length mismatch");
        if (t.coeff == 0) continue;
        for (const auto& existing : p.terms)
            if (existing.exponents == t.exponents)
                throw Error("duplicate exponent vector in term list");
        p.terms.push_back(std::move(t));
    }
    return p;
}

namespace {

SpecPtr make_spec(VarietySpec s) {
    return std::make_shared<const VarietySpec>(std::move(s));
}

} // namespace

SpecPtr affine_space(const FieldRef& base, int n) {
    VarietySpec s;
    s.kind = VarietySpec::Kind::AffineSpace;
    s.base = base;
    s.ambient = n;
    s.dim = n;
    return make_spec(std::move(s));
}

SpecPtr projective_space(const FieldRef& base, int n) {
    VarietySpec s;
    s.kind = VarietySpec::Kind::ProjectiveSpace;
    s.base = base;
    s.ambient = n;
    s.dim = n;
    return make_spec(std::move(s));
}

SpecPtr affine_sub(const FieldRef& base, int n, std::vector<MultiPoly> polys,
                   std::optional<int> declared_dim) {
    VarietySpec s;
    s.kind = VarietySpec::Kind::AffineSub;
    s.base = base;
    s.ambient = n;
    for (const auto& p : polys)
        if (static_cast<int>(p.nvars) != n)
            throw Error("polynomial variable count != ambient dimension");
    s.polys = std::move(polys);
    s.dim = declared_dim ? *declared_dim
                         : n - static_cast<int>(s.polys.size());
    return make_spec(std::move(s));
}

SpecPtr projective_sub(const FieldRef& base, int n, std::vector<MultiPoly> polys,
                       std::optional<int> declared_dim) {
    VarietySpec s;
    s.kind = VarietySpec::Kind::ProjectiveSub;
    s.base = base;
    s.ambient = n;
    for (const auto& p : polys) {
        if (static_cast<int>(p.nvars) != n + 1)
            throw Error("projective polynomial must have ambient+1 variables");
        if (!p.is_homogeneous()) throw NonHomogeneous();
    }
    s.polys = std::move(polys);
    s.dim = declared_dim ? *declared_dim
                         : n - static_cast<int>(s.polys.size());
    return make_spec(std::move(s));
}

SpecPtr product(const SpecPtr& a, const SpecPtr& b) {
    if (a->base.get() != b->base.get())
        throw FieldMismatch("product factors over different base fields");
    VarietySpec s;
    s.kind = VarietySpec::Kind::Product;
    s.base = a->base;
    s.left = a;
    s.right = b;
    s.dim = a->dim + b->dim;
    return make_spec(std::move(s));
}

SpecPtr disjoint_union(std::vector<SpecPtr> parts) {
    if (parts.empty()) throw Error("disjoint union needs at least one part");
    VarietySpec s;
    s.kind = VarietySpec::Kind::DisjointUnion;
    s.base = parts.front()->base;
    s.dim = 0;
    for (const auto& p : parts) {
        if (p->base.get() != s.base.get())
            throw FieldMismatch("union parts over different base fields");
        s.dim = std::max(s.dim, p->dim);
    }
    s.parts = std::move(parts);
    return make_spec(std::move(s));
}

SpecPtr complement(const SpecPtr& ambient, const SpecPtr& closed) {
    if (ambient->base.get() != closed->base.get())
        throw FieldMismatch("complement parts over different base fields");
    VarietySpec s;
    s.kind = VarietySpec::Kind::Complement;
    s.base = ambient->base;
    s.ambient_spec = ambient;
    s.closed_spec = closed;
    s.dim = ambient->dim;
    return make_spec(std::move(s));
}

SpecPtr base_restriction(const SpecPtr& inner, unsigned degree) {
    if (degree < 1) throw Error("restriction degree must be >= 1");
    VarietySpec s;
    s.kind = VarietySpec::Kind::BaseRestriction;
    // The spec is viewed over the subfield F_{p^{e/degree}} of its own base.
    const auto& K = inner->base;
    if (K->e % degree != 0)
        throw Error("restriction degree must divide the extension degree");
    s.base = build_field(K->p, K->e / degree);
    s.inner = inner;
    s.restrict_degree = degree;
    s.dim = inner->dim;
    return make_spec(std::move(s));
}

namespace {

// Evaluate a polynomial at a point of F_{p^{e*n}}. Coefficients are
// re-reduced into the counting field: the base-field coefficient vector is
// interpreted in the counting field's generator.
FFElem eval_poly(const MultiPoly& poly, const FieldRef& field,
                 unsigned base_e, const std::vector<FFElem>& point) {
    FFElem acc = ff_zero(field);
    for (const auto& term : poly.terms) {
        // Decode the coefficient's base-p digits into the counting field.
        unsigned long long enc = term.coeff;
        FFElem coeff = ff_zero(field);
        FFElem gen_pow = ff_one(field);
        FFElem gen = field->e > 1 ? ff_element_at(field, field->p) /* x */
                                  : ff_one(field);
        for (unsigned i = 0; i < base_e; ++i) {
            unsigned long digit = static_cast<unsigned long>(enc % field->p);
            enc /= field->p;
            if (digit != 0) {
                FFElem d = ff_from_scalar(field, digit);
                coeff = ff_add(coeff, ff_mul(d, gen_pow));
            }
            gen_pow = ff_mul(gen_pow, gen);
        }
        FFElem val = coeff;
        for (size_t v = 0; v < term.exponents.size(); ++v)
            if (term.exponents[v] > 0)
                val = ff_mul(val, ff_pow(point[v], term.exponents[v]));
        acc = ff_add(acc, val);
    }
    return acc;
}

// Count common zeros of `polys` on {prefix} x F^free_vars by chunked
// enumeration with a deterministic reduction.
Int count_zeros_fixed(const std::vector<MultiPoly>& polys, const FieldRef& field,
                      unsigned base_e, const std::vector<FFElem>& prefix,
                      unsigned free_vars, unsigned jobs) {
    const unsigned nvars = static_cast<unsigned>(prefix.size()) + free_vars;
    Int total_candidates = ipow(field->cardinality(), free_vars);
    if (total_candidates > Int(static_cast<unsigned long>(enumeration_budget())))
        throw BudgetExceeded("candidate count " + total_candidates.get_str());
    const unsigned long long total = total_candidates.get_ui();
    const unsigned long long card = field->cardinality().get_ui();

    auto count_range = [&](unsigned long long lo, unsigned long long hi) {
        unsigned long long hits = 0;
        std::vector<FFElem> point(nvars, ff_zero(field));
        for (size_t v = 0; v < prefix.size(); ++v) point[v] = prefix[v];
        for (unsigned long long idx = lo; idx < hi; ++idx) {
            unsigned long long rest = idx;
            for (unsigned v = static_cast<unsigned>(prefix.size()); v < nvars; ++v) {
                point[v] = ff_element_at(field, rest % card);
                rest /= card;
            }
            bool all_zero = true;
            for (const auto& poly : polys) {
                if (!eval_poly(poly, field, base_e, point).is_zero()) {
                    all_zero = false;
                    break;
                }
            }
            if (all_zero) ++hits;
        }
        return hits;
    };

    const unsigned long long chunk = 1ULL << 16;
    if (jobs <= 1 || total <= chunk)
        return Int(static_cast<unsigned long>(count_range(0, total)));

    const unsigned long long nchunks = (total + chunk - 1) / chunk;
    std::vector<unsigned long long> partial(nchunks, 0);
    std::atomic<unsigned long long> next{0};
    std::vector<std::thread> workers;
    unsigned nthreads = std::min<unsigned long long>(jobs, nchunks);
    for (unsigned t = 0; t < nthreads; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                unsigned long long c = next.fetch_add(1);
                if (c >= nchunks) return;
                unsigned long long lo = c * chunk;
                unsigned long long hi = std::min(total, lo + chunk);
                partial[c] = count_range(lo, hi);
            }
        });
    }
    for (auto& w : workers) w.join();
    Int sum = 0;
    for (unsigned long long c = 0; c < nchunks; ++c)
        sum += Int(static_cast<unsigned long>(partial[c]));
    return sum;
}

Int count_zeros(const std::vector<MultiPoly>& polys, const FieldRef& field,
                unsigned base_e, unsigned nvars, unsigned jobs) {
    return count_zeros_fixed(polys, field, base_e, {}, nvars, jobs);
}

// Projective zero count by enumerating the one representative per point
// whose first nonzero coordinate is 1. Used when the full cone is too large;
// exact because vanishing of homogeneous polynomials is scale-invariant.
Int count_projective_reps(const std::vector<MultiPoly>& polys,
                          const FieldRef& field, unsigned base_e,
                          unsigned ambient, unsigned jobs) {
    Int total = 0;
    for (unsigned k = 0; k <= ambient; ++k) {
        std::vector<FFElem> prefix(k, ff_zero(field));
        prefix.push_back(ff_one(field));
        total += count_zeros_fixed(polys, field, base_e, prefix, ambient - k, jobs);
    }
    return total;
}

} // namespace

Int count_points(const SpecPtr& spec, unsigned n, unsigned jobs) {
    if (n < 1) throw Error("extension degree n must be >= 1");
    const auto& base = spec->base;
    switch (spec->kind) {
    case VarietySpec::Kind::AffineSpace:
        return ipow(ipow(base->cardinality(), n), spec->ambient);
    case VarietySpec::Kind::ProjectiveSpace: {
        Int qn = ipow(base->cardinality(), n);
        Int sum = 0;
        for (int i = 0; i <= spec->ambient; ++i) sum += ipow(qn, i);
        return sum;
    }
    case VarietySpec::Kind::AffineSub: {
        FieldRef field = build_field(base->p, base->e * n);
        return count_zeros(spec->polys, field, base->e,
                           static_cast<unsigned>(spec->ambient), jobs);
    }
    case VarietySpec::Kind::ProjectiveSub: {
        FieldRef field = build_field(base->p, base->e * n);
        Int qn1 = ipow(base->cardinality(), n) - 1;
        Int cone_size = ipow(field->cardinality(),
                             static_cast<unsigned>(spec->ambient) + 1);
        // Small instances: count over the affine cone and enforce the
        // (q^n - 1)-fold exact quotient, which doubles as a homogeneity
        // audit. Large instances: enumerate one representative per point
        // (first nonzero coordinate = 1), exact by scale invariance.
        if (cone_size <= Int(1) << 22) {
            Int cone = count_zeros(spec->polys, field, base->e,
                                   static_cast<unsigned>(spec->ambient) + 1,
                                   jobs);
            Int num = cone - 1;
            if (num % qn1 != 0)
                throw InexactQuotient("cone count " + cone.get_str() +
                                      " not congruent 1 mod q^n - 1");
            return num / qn1;
        }
        return count_projective_reps(spec->polys, field, base->e,
                                     static_cast<unsigned>(spec->ambient),
                                     jobs);
    }
    case VarietySpec::Kind::Product:
        return count_points(spec->left, n, jobs) *
               count_points(spec->right, n, jobs);
    case VarietySpec::Kind::DisjointUnion: {
        Int sum = 0;
        for (const auto& part : spec->parts) sum += count_points(part, n, jobs);
        return sum;
    }
    case VarietySpec::Kind::Complement: {
        Int big = count_points(spec->ambient_spec, n, jobs);
        Int small = count_points(spec->closed_spec, n, jobs);
        if (small > big)
            throw Error("complement count negative (closed part not inside ambient?)");
        return big - small;
    }
    case VarietySpec::Kind::BaseRestriction: {
        // Z_{X/k}(t) = Z_{X/K}(t^f): N_n over k is f * N_{n/f} over K when
        // f | n, else 0.
        unsigned f = spec->restrict_degree;
        if (n % f != 0) return 0;
        return Int(static_cast<long>(f)) * count_points(spec->inner, n / f, jobs);
    }
    }
    throw Error("unreachable spec kind");
}

int moebius(unsigned n) {
    int mu = 1;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

std::map<unsigned, Int> closed_point_census(const SpecPtr& spec, unsigned D,
                                            unsigned jobs) {
    std::vector<Int> N(D + 1, 0);
    for (unsigned m = 1; m <= D; ++m) N[m] = count_points(spec, m, jobs);
    std::map<unsigned, Int> census;
    for (unsigned d = 1; d <= D; ++d) {
        Int sum = 0;
        for (unsigned m = 1; m <= d; ++m) {
            if (d % m != 0) continue;
            sum += Int(moebius(d / m)) * N[m];
        }
        if (sum % Int(static_cast<long>(d)) != 0 || sum < 0)
            throw NegativeCensus("a_" + std::to_string(d) + " not a natural number");
        census[d] = sum / Int(static_cast<long>(d));
    }
    return census;
}

SNCCensus snc_census(const std::vector<std::pair<SpecPtr, unsigned>>& strata,
                     unsigned D, unsigned jobs) {
    unsigned max_level = 0;
    for (const auto& [spec, level] : strata) max_level = std::max(max_level, level);
    SNCCensus out;
    out.counts.assign(max_level + 1, std::vector<Int>(D, 0));
    for (const auto& [spec, level] : strata)
        for (unsigned n = 1; n <= D; ++n)
            out.counts[level][n - 1] += count_points(spec, n, jobs);
    return out;
}

} // namespace zetareg
