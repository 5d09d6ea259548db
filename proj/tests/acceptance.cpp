#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "test_util.hpp"
#include "zetareg/chowcat.hpp"
#include "zetareg/geometry.hpp"
#include "zetareg/scenario.hpp"
#include "zetareg/weight.hpp"
#include "zetareg/zeta.hpp"

using namespace zetareg;
using namespace zetareg_test;

namespace {

bool announce(int n, bool ok) {
    std::printf("ACCEPTANCE %d: %s\n", n, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    return ok;
}

RationalFunctionQ zeta_from_counts(
    const SpecPtr& spec, size_t m,
    std::optional<std::pair<size_t, size_t>> bound = std::nullopt,
    size_t guard = 2, unsigned jobs = 0) {
    std::vector<Int> counts;
    for (size_t n = 1; n <= m; ++n)
        counts.push_back(count_points(spec, static_cast<unsigned>(n), jobs));
    return reconstruct_rational(zeta_series(counts), bound, guard);
}

Rat torsion_alternating_product(const ChowProfile& prof, long r, long i_max) {
    Rat out(1);
    for (long i = 0; i <= i_max; ++i) {
        Int t = prof.entry(r, i)->finite.torsion_order();
        if (i % 2 == 0) out *= Rat(t);
        else out /= Rat(t);
    }
    out.canonicalize();
    return out;
}

RegulatorAssembly one_term_assembly(ChowProfile prof, Int e = Int(1)) {
    RegulatorAssembly A;
    A.dim = prof.dim;
    RegComponent comp;
    comp.profile = std::move(prof);
    comp.constant_field_degree = e;
    comp.degree_image_index = Int(1);
    A.terms.push_back({{comp}});
    return A;
}

SpecPtr plane_cubic_f2() {
    FieldRef f2 = build_field(2, 1);
    MultiPoly f = make_poly(3, {{{3, 0, 0}, 1}, {{0, 2, 1}, 1}, {{0, 1, 2}, 1}});
    return projective_sub(f2, 2, {f});
}

} // namespace

TEST_CASE("criterion 1: cubic curve pipeline end to end") {
    bool ok = true;
    try {
        SpecPtr E = plane_cubic_f2();
        std::vector<Int> counts;
        for (unsigned n = 1; n <= 6; ++n) counts.push_back(count_points(E, n));
        ok &= counts == std::vector<Int>{3, 9, 9, 9, 33, 81};

        RationalFunctionQ Z = reconstruct_rational(
            zeta_series(counts), std::make_pair<size_t>(2, 2));
        ok &= Z.num == PolyZ{1, 0, 2};
        ok &= Z.den == PolyZ{1, -3, 2};

        LaurentData lv = special_value(Z, Int(2), 0);
        ok &= lv.order == -1;
        ok &= lv.leading == Rat(3); // (t-1)-expansion; magnitude 3 is what matters

        RegulatorAssembly A =
            one_term_assembly(curve_profile({Int(1), Int(0), Int(2)}, Int(2), 1));
        ok &= regulator_chi(A, Lambda::Z()).product == Rat(3);

        // two independent cross-checks on the same quantity
        ok &= poly_eval(Z.num, Rat(1)) == Rat(3);
        ok &= counts[0] == 3;
    } catch (const Error&) {
        ok = false;
    }
    REQUIRE(announce(1, ok));
}

TEST_CASE("criterion 2: projective line over F_3") {
    bool ok = true;
    try {
        FieldRef f3 = build_field(3, 1);
        RationalFunctionQ Z = zeta_from_counts(projective_space(f3, 1), 8);
        LaurentData lv = special_value(Z, Int(3), 0);
        ok &= lv.order == -1;
        ok &= lv.leading == Rat(1, 2);
        ChowProfile prof = curve_profile({Int(1)}, Int(3), 1);
        Rat rhs = torsion_alternating_product(prof, 0, 2);
        ok &= rhs == Rat(1, 2);
        Rat lhs_abs = lv.leading < 0 ? Rat(-lv.leading) : lv.leading;
        ok &= lhs_abs == rhs;
    } catch (const Error&) {
        ok = false;
    }
    REQUIRE(announce(2, ok));
}

TEST_CASE("criterion 3: negative arguments against the twist catalog") {
    bool ok = true;
    try {
        FieldRef f2 = build_field(2, 1);
        RationalFunctionQ Zpt = zeta_from_counts(affine_space(f2, 0), 8);
        ChowProfile pt = point_profile(Int(2), 6, 13);
        const Rat expected[] = {Rat(1), Rat(1, 3), Rat(1, 7)};
        for (long r = -1; r >= -3; --r) {
            LaurentData lv = special_value(Zpt, Int(2), r);
            ok &= lv.order == 0;
            Rat lhs = strip_sign_ppower(lv.leading, Int(2));
            Rat rhs = torsion_alternating_product(pt, r, 2 * (0 - r));
            ok &= lhs == rhs;
            ok &= rhs == expected[-r - 1];
        }

        RationalFunctionQ Zp1 = zeta_from_counts(projective_space(f2, 1), 8);
        LaurentData lv = special_value(Zp1, Int(2), -1);
        ok &= lv.order == 0;
        ok &= lv.leading == Rat(1, 3);
        ChowProfile p1 = projective_bundle_profile(pt, 1);
        ok &= torsion_alternating_product(p1, -1, 4) == Rat(1, 3);
    } catch (const Error&) {
        ok = false;
    }
    REQUIRE(announce(3, ok));
}

TEST_CASE("criterion 4: degree-2 point and base change") {
    bool ok = true;
    try {
        FieldRef f4 = build_field(2, 2);
        SpecPtr inner = affine_space(f4, 0);
        SpecPtr X = base_restriction(inner, 2);

        RationalFunctionQ Zk = zeta_from_counts(X, 8);
        RationalFunctionQ ZK = zeta_from_counts(inner, 8);
        ok &= rf_equal(Zk, base_change(ZK, 2));

        LaurentData lk = special_value(Zk, Int(2), 0);
        LaurentData lK = special_value(ZK, Int(4), 0);
        ok &= lk.order == -1 && lK.order == -1;
        ok &= lk.leading == Rat(-1, 2);
        ok &= lK.leading == Rat(2) * lk.leading;

        RegulatorAssembly A =
            one_term_assembly(point_profile(Int(4), 6, 13), Int(2));
        Rat reg = regulator_chi(A, Lambda::Z()).product;
        ok &= reg == Rat(1, 2);
        Rat lhs_abs = lk.leading < 0 ? Rat(-lk.leading) : lk.leading;
        ok &= lhs_abs == reg;
    } catch (const Error&) {
        ok = false;
    }
    REQUIRE(announce(4, ok));
}

TEST_CASE("criterion 5: stratified multiplicativity for two lines in the plane") {
    bool ok = true;
    try {
        for (unsigned long p : {2ul, 3ul}) {
            FieldRef f = build_field(p, 1);
            MultiPoly xy = make_poly(3, {{{1, 1, 0}, 1}});
            SpecPtr U = complement(projective_space(f, 2),
                                   projective_sub(f, 2, {xy}));
            RationalFunctionQ lhs = zeta_from_counts(U, 7, std::nullopt, 2, 4);

            RationalFunctionQ plane =
                zeta_from_counts(projective_space(f, 2), 7);
            RationalFunctionQ line = zeta_from_counts(projective_space(f, 1), 7);
            RationalFunctionQ point = zeta_from_counts(affine_space(f, 0), 7);
            RationalFunctionQ rhs =
                rf_mul(rf_mul(plane, rf_inv(rf_mul(line, line))), point);
            ok &= rf_equal(lhs, rhs);
        }
    } catch (const Error&) {
        ok = false;
    }
    REQUIRE(announce(5, ok));
}

TEST_CASE("criterion 6: boundary homology suite") {
    bool ok = true;
    try {
        SNCConfig solo;
        solo.dim = 2;
        solo.levels = {{0}};

        SNCConfig gm;
        gm.dim = 1;
        gm.levels = {{0}, {1, 2}};
        gm.faces[{1, 0}] = 0;
        gm.faces[{2, 0}] = 0;

        SNCConfig two;
        two.dim = 2;
        two.levels = {{0}, {1, 2}, {3}};
        two.faces[{1, 0}] = 0;
        two.faces[{2, 0}] = 0;
        two.faces[{3, 0}] = 2;
        two.faces[{3, 1}] = 1;

        auto hs = weight_homology(build_snc_complex(solo, Lambda::Z()));
        ok &= hs.size() == 1 && hs[0] == fg_free(1);

        auto hg = weight_homology(build_snc_complex(gm, Lambda::Z()));
        ok &= hg[0].is_trivial() && hg[1] == fg_free(1);

        auto ht = weight_homology(build_snc_complex(two, Lambda::Z()));
        for (const auto& h : ht) ok &= h.is_trivial();

        for (const SNCConfig& cfg : {solo, gm, two})
            ok &= localization_check(cfg, Lambda::Z()).exact;

        Rng rng(60601);
        for (int it = 0; it < 200; ++it) {
            SNCConfig cfg = random_snc(rng);
            validate_snc(cfg);
            auto hz = weight_homology(build_snc_complex(cfg, Lambda::Z()));
            auto hl =
                weight_homology(build_snc_complex(cfg, Lambda::Z_inv(Int(2))));
            for (size_t i = 0; i < hz.size(); ++i)
                ok &= localize(hz[i], 2) == hl[i];
            ok &= localization_check(cfg, Lambda::Z()).exact;
        }
    } catch (const Error&) {
        ok = false;
    }
    REQUIRE(announce(6, ok));
}

TEST_CASE("criterion 7: multiplicativity of the order ratio") {
    bool ok = true;
    try {
        Rng rng(777001);

        // 1000 connecting-homomorphism diagrams
        for (int it = 0; it < 1000 && ok; ++it) {
            SnakeDiagram d;
            int variant = it % 3;
            if (variant == 0) {
                size_t m = static_cast<size_t>(rnd(rng, 1, 3));
                size_t k = static_cast<size_t>(rnd(rng, 1, 3));
                FGAbGroup A = fg_free(m), C = fg_free(k), B = fg_free(m + k);
                IntMatrix incl(m + k, m), proj(k, m + k);
                for (size_t i = 0; i < m; ++i) incl.at(i, i) = 1;
                for (size_t i = 0; i < k; ++i) proj.at(i, m + i) = 1;
                IntMatrix f = random_nonsingular(rng, m);
                IntMatrix h = random_nonsingular(rng, k);
                IntMatrix g(m + k, m + k);
                for (size_t i = 0; i < m; ++i)
                    for (size_t j = 0; j < m; ++j) g.at(i, j) = f.at(i, j);
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = 0; j < k; ++j)
                        g.at(m + i, m + j) = h.at(i, j);
                for (size_t i = 0; i < m; ++i)
                    for (size_t j = 0; j < k; ++j)
                        g.at(i, m + j) = Int(rnd(rng, -3, 3)); // shear block
                d.top_incl = make_fg_map(A, B, incl);
                d.top_proj = make_fg_map(B, C, proj);
                d.f = make_fg_map(A, A, f);
                d.g = make_fg_map(B, B, g);
                d.h = make_fg_map(C, C, h);
            } else if (variant == 1) {
                Int a = Int(rnd(rng, 2, 6));
                Int c = a * Int(rnd(rng, 1, 5));
                FGAbGroup A = fg_cyclic(a), C = fg_cyclic(c);
                FGAbGroup B;
                B.torsion = {a, c};
                IntMatrix incl(2, 1), proj(1, 2);
                incl.at(0, 0) = 1;
                proj.at(1 - 1, 1) = 1;
                IntMatrix f(1, 1), h(1, 1), g(2, 2);
                f.at(0, 0) = Int(rnd(rng, 0, 6));
                h.at(0, 0) = Int(rnd(rng, 0, 6));
                g.at(0, 0) = f.at(0, 0);
                g.at(1, 1) = h.at(0, 0);
                g.at(0, 1) = Int(rnd(rng, -3, 3)); // shear C -> A, valid: a | c
                d.top_incl = make_fg_map(A, B, incl);
                d.top_proj = make_fg_map(B, C, proj);
                d.f = make_fg_map(A, A, f);
                d.g = make_fg_map(B, B, g);
                d.h = make_fg_map(C, C, h);
            } else {
                size_t m = static_cast<size_t>(rnd(rng, 1, 2));
                Int c = Int(rnd(rng, 2, 7));
                FGAbGroup A = fg_free(m), C = fg_cyclic(c);
                FGAbGroup B; // torsion generator first, then the free part
                B.free_rank = m;
                B.torsion = {c};
                IntMatrix incl(1 + m, m), proj(1, 1 + m);
                for (size_t i = 0; i < m; ++i) incl.at(1 + i, i) = 1;
                proj.at(0, 0) = 1;
                IntMatrix f = random_nonsingular(rng, m);
                IntMatrix h(1, 1);
                h.at(0, 0) = Int(rnd(rng, 0, 6));
                IntMatrix g(1 + m, 1 + m);
                g.at(0, 0) = h.at(0, 0);
                for (size_t i = 0; i < m; ++i)
                    for (size_t j = 0; j < m; ++j)
                        g.at(1 + i, 1 + j) = f.at(i, j);
                d.top_incl = make_fg_map(A, B, incl);
                d.top_proj = make_fg_map(B, C, proj);
                d.f = make_fg_map(A, A, f);
                d.g = make_fg_map(B, B, g);
                d.h = make_fg_map(C, C, h);
            }
            d.bot_incl = d.top_incl;
            d.bot_proj = d.top_proj;
            ok &= chi_snake_check(d).ok;
        }

        // 1000 composition pairs
        for (int it = 0; it < 1000 && ok; ++it) {
            if (it % 2 == 0) {
                size_t n = static_cast<size_t>(rnd(rng, 1, 4));
                FGAbGroup Zn = fg_free(n);
                FGMap f = make_fg_map(Zn, Zn, random_nonsingular(rng, n));
                FGMap g = make_fg_map(Zn, Zn, random_nonsingular(rng, n));
                ok &= chi_compose_check(f, g).ok;
            } else {
                FGAbGroup A = random_finite_group(rng);
                FGAbGroup B = random_finite_group(rng);
                FGAbGroup C = random_finite_group(rng);
                ok &= chi_compose_check(random_map(rng, A, B),
                                        random_map(rng, B, C))
                          .ok;
            }
        }

        // 1000 complex maps: level product vs homology product
        for (int it = 0; it < 1000 && ok; ++it) {
            size_t g2 = static_cast<size_t>(rnd(rng, 0, 2));
            size_t a = static_cast<size_t>(rnd(rng, 0, 2));
            size_t b = static_cast<size_t>(rnd(rng, 0, 2));
            size_t g1 = a + b, g0 = static_cast<size_t>(rnd(rng, 0, 2));
            // d1 lands in the first block of the middle level, d0 reads only
            // the second block, so d0 * d1 = 0 by construction
            IntMatrix d1(g1, g2), d0(g0, g1);
            for (size_t i = 0; i < a; ++i)
                for (size_t j = 0; j < g2; ++j)
                    d1.at(i, j) = Int(rnd(rng, -3, 3));
            for (size_t i = 0; i < g0; ++i)
                for (size_t j = 0; j < b; ++j)
                    d0.at(i, a + j) = Int(rnd(rng, -3, 3));
            Int n2 = Int(rnd(rng, 1, 3));
            Int n1 = n2 * Int(rnd(rng, 1, 3));
            Int n0 = n1 * Int(rnd(rng, 1, 3));
            auto scaled = [](const IntMatrix& M, const Int& s) {
                IntMatrix R = M;
                for (auto& x : R.a) x *= s;
                return R;
            };
            FGComplex C;
            C.groups = {fg_free(g0), fg_free(g1), fg_free(g2)};
            C.diffs = {make_fg_map(C.groups[1], C.groups[0], d0),
                       make_fg_map(C.groups[2], C.groups[1], d1)};
            FGComplex Cp;
            Cp.groups = C.groups;
            Cp.diffs = {
                make_fg_map(C.groups[1], C.groups[0], scaled(d0, n0 / n1)),
                make_fg_map(C.groups[2], C.groups[1], scaled(d1, n1 / n2))};
            auto scalar_map = [&](size_t g, const Int& s) {
                IntMatrix M(g, g);
                for (size_t i = 0; i < g; ++i) M.at(i, i) = s;
                return make_fg_map(fg_free(g), fg_free(g), M);
            };
            FGComplexMap phi{C, Cp,
                             {scalar_map(g0, n0), scalar_map(g1, n1),
                              scalar_map(g2, n2)}};
            ok &= chi_complex_check(phi).ok;
        }
    } catch (const Error&) {
        ok = false;
    }
    REQUIRE(announce(7, ok));
}

TEST_CASE("criterion 8: diagonalization contract on random matrices") {
    bool ok = true;
    try {
        Rng rng(888001);
        for (int it = 0; it < 1000 && ok; ++it) {
            size_t r = static_cast<size_t>(rnd(rng, 1, 8));
            size_t c = static_cast<size_t>(rnd(rng, 1, 8));
            IntMatrix A = random_matrix(rng, r, c, 1000000);
            SNFResult s = snf(A);
            ok &= mat_mul(mat_mul(s.U, A), s.V) == s.D;
            ok &= abs(mat_det(s.U)) == 1;
            ok &= abs(mat_det(s.V)) == 1;
            Int prev = 0;
            for (size_t i = 0; i < std::min(s.D.rows, s.D.cols); ++i) {
                for (size_t j = 0; j < s.D.cols; ++j)
                    if (j != i) ok &= s.D.at(i, j) == 0;
                for (size_t j = 0; j < s.D.rows; ++j)
                    if (j != i) ok &= s.D.at(j, i) == 0;
                Int d = s.D.at(i, i);
                ok &= d >= 0;
                if (prev != 0 && d != 0) ok &= d % prev == 0;
                if (prev == 0 && i > 0) ok &= d == 0; // zeros only at the end
                prev = d;
            }
        }
    } catch (const Error&) {
        ok = false;
    }
    REQUIRE(announce(8, ok));
}

TEST_CASE("criterion 9: boundary complex length is bounded by dimension") {
    bool ok = true;
    try {
        Rng rng(999001);
        SNCConfig witness;
        bool have_witness = false;
        for (int it = 0; it < 200 && ok; ++it) {
            SNCConfig cfg = random_snc(rng);
            validate_snc(cfg);
            ok &= cfg.levels.size() <= static_cast<size_t>(cfg.dim) + 1;
            WeightComplex W = build_snc_complex(cfg, Lambda::Z());
            ok &= W.complex.groups.size() == cfg.levels.size();
            if (!have_witness && cfg.levels.size() >= 2) {
                witness = cfg;
                have_witness = true;
            }
        }
        ok &= have_witness;
        if (have_witness) {
            witness.dim = static_cast<int>(witness.levels.size()) - 2;
            bool threw = false;
            try {
                validate_snc(witness);
            } catch (const IncoherentIncidence&) {
                threw = true;
            }
            ok &= threw;
        }
    } catch (const Error&) {
        ok = false;
    }
    REQUIRE(announce(9, ok));
}
