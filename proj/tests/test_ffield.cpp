#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "zetareg/config.hpp"
#include "zetareg/ffield.hpp"

using namespace zetareg;

TEST_CASE("field construction is deterministic with least moduli") {
    FieldRef f2 = build_field(2, 1);
    CHECK(f2->modulus == std::vector<unsigned long>{0, 1});

    FieldRef f4 = build_field(2, 2);
    CHECK(f4->modulus == std::vector<unsigned long>{1, 1, 1}); // x^2 + x + 1

    FieldRef again = build_field(2, 2);
    CHECK(f4->modulus == again->modulus);

    CHECK(build_field(3, 2)->cardinality() == 9);
    CHECK_THROWS_AS(build_field(4, 1), NotPrime);
    CHECK_THROWS_AS(build_field(1, 1), NotPrime);
}

TEST_CASE("enumeration yields all distinct elements") {
    for (auto [p, e] : {std::pair<unsigned long, unsigned>{2, 1},
                        {2, 2},
                        {3, 2},
                        {5, 1}}) {
        FieldRef f = build_field(p, e);
        auto all = ff_enumerate(f);
        CHECK(Int(all.size()) == f->cardinality());
        std::set<std::vector<unsigned long>> seen;
        for (const auto& x : all) seen.insert(x.coeffs);
        CHECK(Int(seen.size()) == f->cardinality());
    }
    FieldRef f2 = build_field(2, 1);
    auto elems = ff_enumerate(f2);
    CHECK(elems[0].is_zero());
    CHECK(elems[1] == ff_one(f2));
}

TEST_CASE("basic arithmetic identities") {
    FieldRef f5 = build_field(5, 1);
    CHECK(ff_inv(ff_from_scalar(f5, 2)) == ff_from_scalar(f5, 3));

    FieldRef f4 = build_field(2, 2);
    FFElem x = ff_from_scalar(f4, 2); // the generator
    CHECK(ff_pow(x, 4) == x);
    CHECK(ff_pow(x, 3) == ff_one(f4));

    FieldRef f9 = build_field(3, 2);
    for (const auto& a : ff_enumerate(f9)) {
        CHECK(ff_add(a, ff_neg(a)).is_zero());
        if (!a.is_zero()) CHECK(ff_mul(a, ff_inv(a)) == ff_one(f9));
    }
}

TEST_CASE("unit group order annihilates every nonzero element") {
    for (auto [p, e] : {std::pair<unsigned long, unsigned>{2, 1},
                        {2, 2},
                        {2, 4},
                        {3, 2},
                        {5, 1},
                        {7, 2},
                        {13, 1}}) {
        FieldRef f = build_field(p, e);
        unsigned long long order = f->cardinality().get_ui() - 1;
        for (const auto& a : ff_enumerate(f))
            if (!a.is_zero()) CHECK(ff_pow(a, order) == ff_one(f));
    }
}

TEST_CASE("arithmetic error conditions") {
    FieldRef f5 = build_field(5, 1);
    FieldRef f7 = build_field(7, 1);
    CHECK_THROWS_AS(ff_inv(ff_zero(f5)), DivisionByZero);
    CHECK_THROWS_AS(ff_add(ff_one(f5), ff_one(f7)), FieldMismatch);
}

TEST_CASE("enumeration respects the global budget") {
    unsigned long long saved = enumeration_budget();
    set_enumeration_budget(8);
    CHECK_THROWS_AS(ff_enumerate(build_field(3, 2)), BudgetExceeded);
    set_enumeration_budget(saved);
    CHECK(ff_enumerate(build_field(3, 2)).size() == 9);
}
