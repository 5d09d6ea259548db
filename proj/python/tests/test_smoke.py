"""Smoke tests for the zetareg Python module.

Each test pins a small exact value that is also checked independently by the
C++ suites, so a pass here mostly certifies that the bindings round-trip
integers, fractions, and reports correctly.
"""

import json
import os
from fractions import Fraction

import pytest

import zetareg as zr

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "scenarios")


def test_field_and_counts():
    f2 = zr.field(2)
    assert f2.p == 2 and f2.e == 1 and f2.cardinality == 2
    p1 = zr.projective_space(f2, 1)
    assert zr.count_points(p1, 1) == 3
    assert zr.count_points(p1, 2) == 5
    assert zr.closed_point_census(p1, 2) == {1: 3, 2: 1}


def test_variety_builders_and_json_round_trip():
    f3 = zr.field(3)
    gm = zr.complement(zr.affine_space(f3, 1), zr.affine_sub(f3, 1, [([1], 1)]))
    assert zr.count_points(gm, 1) == 2
    again = zr.variety_from_json(gm.to_json(), f3)
    assert zr.count_points(again, 2) == 8


def test_elliptic_zeta_and_special_value():
    f2 = zr.field(2)
    # projective closure of y^2 + y = x^3
    cubic = zr.projective_sub(
        f2, 2, [([3, 0, 0], 1), ([0, 2, 1], 1), ([0, 1, 2], 1)]
    )
    counts = [zr.count_points(cubic, n, jobs=2) for n in range(1, 7)]
    assert counts == [3, 9, 9, 9, 33, 81]

    Z = zr.zeta(cubic, 6, bound=(2, 2))
    assert Z.num == [1, 0, 2] and Z.den == [1, -3, 2]

    sv = zr.special_value(Z, 2, 0)
    assert sv["order"] == -1
    assert sv["leading"] == Fraction(3)
    assert zr.strip_sign_ppower(sv["leading"], 2) == Fraction(3)


def test_zeta_from_counts_matches_base_change():
    # a point over the quadratic extension, seen from the small field
    Zk = zr.zeta_from_counts([0, 2, 0, 2, 0, 2])
    ZK = zr.zeta_from_counts([1] * 6)  # the same point over the big field
    assert zr.base_change(ZK, 2) == Zk


def test_weight_homology_and_localization():
    snc = zr.snc_from_json(
        json.dumps(
            {
                "dim": 2,
                "levels": [[0], [1, 2], [3]],
                "faces": [
                    {"from": 1, "drop": 0, "to": 0},
                    {"from": 2, "drop": 0, "to": 0},
                    {"from": 3, "drop": 0, "to": 2},
                    {"from": 3, "drop": 1, "to": 1},
                ],
            }
        )
    )
    # plane with two crossing lines: every homology group vanishes
    hs = zr.weight_homology(snc)
    assert hs == [{"free_rank": 0, "torsion": []}] * 3
    assert zr.localization_check(snc)["exact"]

    # two boundary points on a curve: H_1 survives
    gm = zr.snc_from_json(
        json.dumps(
            {
                "dim": 1,
                "levels": [[0], [1, 2]],
                "faces": [
                    {"from": 1, "drop": 0, "to": 0},
                    {"from": 2, "drop": 0, "to": 0},
                ],
            }
        )
    )
    assert zr.weight_homology(gm) == [
        {"free_rank": 0, "torsion": []},
        {"free_rank": 1, "torsion": []},
    ]


def test_snc_validation_rejects_bad_faces():
    with pytest.raises(zr.ZetaregError):
        zr.snc_from_json(
            json.dumps({"dim": 1, "levels": [[0], [1]], "faces": []})
        )


def test_regulator_products():
    point = zr.point_profile(2, 6, 13)
    assert zr.regulator_product(point) == Fraction(1)

    elliptic = zr.curve_profile([1, 0, 2], 2, 1)
    assert zr.regulator_product(elliptic) == Fraction(3)

    p1_over_f3 = zr.curve_profile([1], 3, 1)
    assert zr.regulator_product(p1_over_f3, invert_p=3) == Fraction(1, 2)


def test_run_scenarios():
    paths = [
        os.path.join(SCENARIO_DIR, "point_f2.json"),
        os.path.join(SCENARIO_DIR, "elliptic_f2.json"),
    ]
    code, reports, table = zr.run_scenarios(paths, jobs=2)
    assert code == 0
    assert len(reports) == 2
    for report in reports:
        assert all(t["verdict"] == "match" for t in report["targets"])
    assert "match" in table

    code, _, _ = zr.run_scenarios(
        [os.path.join(SCENARIO_DIR, "negative", "mismatched_profile.json")]
    )
    assert code == 1
    code, _, _ = zr.run_scenarios([os.path.join(SCENARIO_DIR, "no_such.json")])
    assert code == 2


def test_budget_round_trip():
    saved = zr.enumeration_budget()
    try:
        zr.set_enumeration_budget(10)
        f5 = zr.field(5)
        surf = zr.affine_sub(f5, 3, [([1, 1, 1], 1)])
        with pytest.raises(zr.ZetaregError):
            zr.count_points(surf, 1)
    finally:
        zr.set_enumeration_budget(saved)
