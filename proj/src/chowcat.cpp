#include "zetareg/chowcat.hpp"

#include <algorithm>

namespace zetareg {

std::optional<FQGroup> ChowProfile::entry(long r, long i) const {
    auto it = table.find({r, i});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

FQGroup tate_chow(const Int& q, long j, long i) {
    if (j < 0 || i < 0) return FQGroup{FGAbGroup{}, Int(0)};
    if (j == 0 && i == 0) return FQGroup{fg_free(1), Int(0)};
    if (j >= 1 && i == 2 * j - 1) {
        Int order = ipow(q, static_cast<unsigned long>(j)) - 1;
        return FQGroup{fg_cyclic(order), Int(0)};
    }
    return FQGroup{FGAbGroup{}, Int(0)};
}

ChowProfile point_profile(const Int& q, long r_depth, long i_max) {
    ChowProfile P;
    P.tag = "point";
    P.q = q;
    P.dim = 0;
    P.component_degrees = {Int(1)};
    for (long r = -r_depth; r <= 0; ++r)
        for (long i = 0; i <= i_max; ++i)
            P.table[{r, i}] = tate_chow(q, -r, i);
    return P;
}

namespace {

FGAbGroup fg_direct_sum(const FGAbGroup& A, const FGAbGroup& B) {
    size_t gens = A.ngens() + B.ngens();
    IntMatrix ra = fg_relations(A), rb = fg_relations(B);
    IntMatrix R(gens, ra.cols + rb.cols);
    for (size_t i = 0; i < ra.rows; ++i)
        for (size_t j = 0; j < ra.cols; ++j) R.at(i, j) = ra.at(i, j);
    for (size_t i = 0; i < rb.rows; ++i)
        for (size_t j = 0; j < rb.cols; ++j)
            R.at(ra.rows + i, ra.cols + j) = rb.at(i, j);
    return group_from_presentation(gens, R);
}

FQGroup fq_direct_sum(const FQGroup& A, const FQGroup& B) {
    FQGroup out;
    out.finite = fg_direct_sum(A.finite, B.finite);
    if (A.divisible_rank && B.divisible_rank)
        out.divisible_rank = *A.divisible_rank + *B.divisible_rank;
    return out;
}

} // namespace

ChowProfile projective_bundle_profile(const ChowProfile& base, int n) {
    if (n < 0) throw IncompleteBase("negative fiber dimension");
    if (n == 0) return base;
    ChowProfile P;
    P.tag = base.tag + " x P^" + std::to_string(n);
    P.q = base.q;
    P.dim = base.dim + n;
    P.component_degrees = base.component_degrees;

    long rmin = 0, rmax = 0, imax = 0;
    bool any = false;
    for (const auto& [key, _] : base.table) {
        if (!any || key.first < rmin) rmin = key.first;
        if (!any || key.first > rmax) rmax = key.first;
        if (!any || key.second > imax) imax = key.second;
        any = true;
    }
    if (!any) throw IncompleteBase("empty base profile");

    for (long r = rmin + n; r <= rmax + n; ++r) {
        // CH_r(base x P^n) = sum of CH_{r'}(base) for r' = r-n .. min(r, dim_base),
        // the dimension re-indexing of the codimension bundle formula.
        long lo = r - n;
        long hi = std::min<long>(r, base.dim);
        for (long i = 0; i <= imax; ++i) {
            FQGroup sum{FGAbGroup{}, Int(0)};
            bool complete = true;
            for (long rp = lo; rp <= hi; ++rp) {
                if (rp > base.dim) continue;
                auto e = base.entry(rp, i);
                if (!e) {
                    if (rp < rmin) continue; // below the base's declared range
                    complete = false;
                    break;
                }
                sum = fq_direct_sum(sum, *e);
            }
            if (!complete)
                throw IncompleteBase("base entry missing at r=" + std::to_string(lo) +
                                     ", i=" + std::to_string(i));
            P.table[{r, i}] = sum;
        }
    }
    return P;
}

namespace {

Int poly_at_one(const std::vector<Int>& P) {
    Int s = 0;
    for (const auto& c : P) s += c;
    return s;
}

} // namespace

ChowProfile curve_profile(const std::vector<Int>& P, const Int& q, long e) {
    if (P.empty() || P[0] != 1)
        throw NonIntegralP1("numerator must have constant term 1");
    size_t deg = P.size();
    while (deg > 0 && P[deg - 1] == 0) --deg;
    if ((deg > 0 ? deg - 1 : 0) % 2 != 0)
        throw NonIntegralP1("numerator degree must be even");
    if (e < 1) throw NonIntegralP1("constant-field degree must be positive");
    Int p1 = poly_at_one(P);
    if (p1 <= 0) throw NonIntegralP1("P(1) must be positive");

    ChowProfile prof;
    prof.tag = "curve";
    prof.q = q;
    prof.dim = 1;
    prof.component_degrees = {Int(e)};

    FGAbGroup ch00 = fg_free(1);
    if (p1 >= 2) ch00 = fg_direct_sum(ch00, fg_cyclic(p1));
    prof.table[{0, 0}] = FQGroup{ch00, Int(0)};
    Int units = ipow(q, static_cast<unsigned long>(e)) - 1;
    prof.table[{0, 1}] = FQGroup{fg_cyclic(units), Int(0)};
    for (long i = 2; i <= 3; ++i)
        prof.table[{0, i}] = FQGroup{FGAbGroup{}, Int(0)};
    return prof;
}

void validate_assembly(const RegulatorAssembly& A) {
    if (A.terms.size() > static_cast<size_t>(A.dim) + 1)
        throw HypothesisViolated("assembly longer than dim + 1");
}

namespace {

Int strip_p(Int n, const Lambda& lambda) {
    if (!lambda.invert_p || n == 0) return n;
    while (n % lambda.p == 0) n /= lambda.p;
    return n;
}

} // namespace

RegulatorChiReport regulator_chi(const RegulatorAssembly& A, const Lambda& lambda) {
    validate_assembly(A);
    RegulatorChiReport rep;
    for (size_t a = 0; a < A.terms.size(); ++a) {
        RegulatorChiReport::TermFactor tf;
        tf.term = a;
        for (const auto& comp : A.terms[a].components) {
            auto ch00 = comp.profile.entry(0, 0);
            if (!ch00)
                throw IncompleteProfile("CH_0(X, 0) unknown in term " +
                                        std::to_string(a));
            if (ch00->finite.free_rank != 1)
                throw NotFQ("degree map of a connected piece must have a "
                            "rank-one source modulo torsion");
            if (!comp.degree_image_index)
                throw IncompleteProfile("degree image index unknown in term " +
                                        std::to_string(a));
            if (*comp.degree_image_index == 0)
                throw NotFQ("degree cokernel has positive free rank in term " +
                            std::to_string(a));
            Int ker = strip_p(ch00->finite.torsion_order(), lambda);
            Int cok = strip_p(comp.constant_field_degree *
                                  *comp.degree_image_index,
                              lambda);
            tf.chi_deg *= Rat(cok) / Rat(ker);

            long i_limit = std::max<long>(1, 2 * comp.profile.dim + 1);
            for (long b = 1; b <= i_limit; ++b)
                if (!comp.profile.entry(0, b))
                    throw IncompleteProfile("CH_0(X, " + std::to_string(b) +
                                            ") unknown in term " +
                                            std::to_string(a));
            for (const auto& [key, g] : comp.profile.table) {
                if (key.first != 0 || key.second <= 0) continue;
                Int t = strip_p(g.finite.torsion_order(), lambda);
                if ((a + static_cast<size_t>(key.second)) % 2 == 0)
                    tf.higher *= Rat(t);
                else
                    tf.higher /= Rat(t);
            }
        }
        tf.contribution = (a % 2 == 0) ? Rat(1) / tf.chi_deg : tf.chi_deg;
        tf.contribution *= tf.higher;
        tf.contribution.canonicalize();
        tf.chi_deg.canonicalize();
        tf.higher.canonicalize();
        rep.product *= tf.contribution;
        rep.factors.push_back(std::move(tf));
    }
    rep.product.canonicalize();
    return rep;
}

SpadeReport spadesuit_check(const RegulatorAssembly& A) {
    validate_assembly(A);
    SpadeReport rep;
    if (A.dim <= 1) {
        rep.status = SpadeStatus::Satisfied;
        rep.reason = "no degrees between 2 and dim";
        return rep;
    }
    if (A.terms.size() <= 1) {
        rep.status = SpadeStatus::Satisfied;
        rep.reason = "complex concentrated in degree 0";
        return rep;
    }
    if (!A.weight_ranks) {
        rep.status = SpadeStatus::Unknown;
        rep.reason = "no weight homology ranks supplied";
        return rep;
    }
    const auto& ranks = *A.weight_ranks;
    bool all_zero = true;
    for (size_t i = 2; i < ranks.size() && i <= static_cast<size_t>(A.dim); ++i)
        if (ranks[i] != 0) all_zero = false;
    if (all_zero) {
        rep.status = SpadeStatus::Satisfied;
        rep.reason = "target homology vanishes in degrees 2..dim";
        return rep;
    }
    for (size_t i = 2; i < ranks.size() && i <= static_cast<size_t>(A.dim); ++i) {
        if (ranks[i] == 0) continue;
        if (i >= A.terms.size()) {
            rep.status = SpadeStatus::Failed;
            rep.reason = "nonzero target in degree " + std::to_string(i) +
                         " with no source term";
            return rep;
        }
        Int source_rank = 0;
        for (const auto& comp : A.terms[i].components) {
            auto e = comp.profile.entry(0, static_cast<long>(i));
            if (!e || !e->divisible_rank) {
                rep.status = SpadeStatus::Unknown;
                rep.reason = "unknown rational rank of a source in degree " +
                             std::to_string(i);
                return rep;
            }
            source_rank += *e->divisible_rank + Int(e->finite.free_rank);
        }
        if (source_rank < ranks[i]) {
            rep.status = SpadeStatus::Failed;
            rep.reason = "source rank below target rank in degree " +
                         std::to_string(i);
            return rep;
        }
    }
    rep.status = SpadeStatus::Unknown;
    rep.reason = "rank data alone cannot certify surjectivity";
    return rep;
}

} // namespace zetareg
