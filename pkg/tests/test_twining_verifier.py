"""Tests for twining traces, folded multiplicities, and the verifier."""

import pytest

from satake_fold import (
    Coweight,
    builtin_datum,
    builtin_sigma,
    character,
    double_fold,
    double_fold_roots,
    dual_datum,
    dual_sigma,
    fold,
    folded_multiplicity,
    folded_weyl,
    freudenthal_multiplicity,
    twining_character,
    twining_trace,
    validate_pinned_aut,
    verify_jantzen,
    weyl_dimension,
)


def cw(*coords):
    return Coweight(tuple(coords))


def pair(datum_name, sigma_name):
    datum = builtin_datum(datum_name)
    return datum, builtin_sigma(sigma_name, datum)


def test_twining_trace_a2_swap_adjoint():
    a2, swap = pair("A2", "A2-swap")
    mu = cw(1, 1)
    assert twining_trace(a2, swap, mu, mu) == 1
    assert twining_trace(a2, swap, mu, cw(0, 0)) == 0
    assert twining_trace(a2, swap, mu, cw(-1, -1)) == 1
    # Not a weight of the module at all.
    assert twining_trace(a2, swap, mu, cw(3, 3)) == 0


def test_twining_trace_input_checks():
    a2, swap = pair("A2", "A2-swap")
    with pytest.raises(ValueError) as excinfo:
        twining_trace(a2, swap, cw(-1, -1), cw(0, 0))
    assert "mu must be dominant" in str(excinfo.value)

    a4, flip = pair("A4", "A4-flip")
    with pytest.raises(ValueError) as excinfo:
        twining_trace(a4, flip, cw(1, 2, 3, 2), cw(0, 0, 0, 0))
    assert "must be invariant under the automorphism" in str(excinfo.value)
    with pytest.raises(ValueError) as excinfo:
        twining_trace(a2, swap, cw(1, 1), cw(1, 0))
    assert "must be invariant under the automorphism" in str(excinfo.value)


def test_folded_multiplicity_a2_swap_adjoint():
    a2, swap = pair("A2", "A2-swap")
    mu = cw(1, 1)
    assert folded_multiplicity(a2, swap, mu, mu) == 1
    assert folded_multiplicity(a2, swap, mu, cw(0, 0)) == 0
    assert folded_multiplicity(a2, swap, mu, cw(-1, -1)) == 1


def test_twining_character_a2_swap_adjoint():
    a2, swap = pair("A2", "A2-swap")
    poly = twining_character(a2, swap, cw(1, 1))
    assert [(lam.coords, m) for lam, m in poly.terms] == [((-1, -1), 1), ((1, 1), 1)]


def test_twining_character_identity_is_the_character():
    a2 = builtin_datum("A2")
    ident = builtin_sigma("identity", a2)
    for mu in [cw(0, 0), cw(1, 1), cw(2, 1)]:
        assert twining_character(a2, ident, mu) == character(a2, mu)


def test_twining_character_is_stable_under_the_folded_group():
    a2, swap = pair("A2", "A2-swap")
    poly = twining_character(a2, swap, cw(2, 2))
    fw = folded_weyl(a2, swap)
    for w in fw.elements:
        for lam, m in poly.terms:
            assert poly.multiplicity(w.apply(lam)) == m


def test_verify_jantzen_a2_swap_adjoint():
    a2, swap = pair("A2", "A2-swap")
    report = verify_jantzen(a2, swap, cw(1, 1))
    assert report.overall
    assert [(r.lam.coords, r.lhs_trace, r.rhs_mult, r.passed) for r in report.rows] == [
        ((1, 1), 1, 1, True),
        ((0, 0), 0, 0, True),
        ((-1, -1), 1, 1, True),
    ]
    assert [(p.lam.coords, p.image.coords, p.mult) for p in report.non_invariant] == [
        ((0, 1), (1, 0), 1),
        ((-1, 0), (0, -1), 1),
    ]


def test_verify_jantzen_a4_flip_adjoint():
    a4, flip = pair("A4", "A4-flip")
    mu = cw(1, 1, 1, 1)
    report = verify_jantzen(a4, flip, mu)
    assert report.overall
    assert [(r.lam.coords, r.lhs_trace, r.rhs_mult) for r in report.rows] == [
        ((1, 1, 1, 1), 1, 1),
        ((0, 1, 1, 0), 1, 1),
        ((0, 0, 0, 0), 0, 0),
        ((0, -1, -1, 0), 1, 1),
        ((-1, -1, -1, -1), 1, 1),
    ]
    assert len(report.non_invariant) == 8
    for p in report.non_invariant:
        assert flip.apply_to_coweight(p.lam) == p.image
        assert p.lam.coords < p.image.coords
        assert p.mult == 1


def test_verify_jantzen_identity_degenerates_to_freudenthal():
    a2 = builtin_datum("A2")
    ident = builtin_sigma("identity", a2)
    report = verify_jantzen(a2, ident, cw(1, 1))
    assert report.overall
    assert report.non_invariant == ()
    assert len(report.rows) == 7
    for r in report.rows:
        assert r.lhs_trace == freudenthal_multiplicity(a2, cw(1, 1), r.lam)


def test_verify_jantzen_d4_triality_adjoint():
    d4, rot = pair("D4", "D4-rot3")
    mu = cw(1, 2, 1, 1)
    report = verify_jantzen(d4, rot, mu)
    assert report.overall
    assert len(report.rows) == 7
    assert [r.lam.coords for r in report.rows] == [
        (1, 2, 1, 1),
        (1, 1, 1, 1),
        (0, 1, 0, 0),
        (0, 0, 0, 0),
        (0, -1, 0, 0),
        (-1, -1, -1, -1),
        (-1, -2, -1, -1),
    ]
    for r in report.rows:
        assert r.lhs_trace == r.rhs_mult == 1
    assert len(report.non_invariant) == 9


def test_row_order_is_by_descending_height():
    a4, flip = pair("A4", "A4-flip")
    report = verify_jantzen(a4, flip, cw(1, 1, 1, 1))
    keys = [(-a4.height2(r.lam), r.lam.coords) for r in report.rows]
    assert keys == sorted(keys)


def test_mass_accounting_for_involutions():
    # Row weights plus swapped pairs cover every weight of the module, so
    # Freudenthal masses reassemble the dimension.
    for datum_name, sigma_name, mu in [
        ("A2", "A2-swap", cw(1, 1)),
        ("A2", "A2-swap", cw(2, 2)),
        ("A4", "A4-flip", cw(1, 1, 1, 1)),
    ]:
        datum, sigma = pair(datum_name, sigma_name)
        report = verify_jantzen(datum, sigma, mu)
        assert 2 * len(report.non_invariant) + len(report.rows) == len(datum.weight_set(mu))
        mass = sum(freudenthal_multiplicity(datum, mu, r.lam) for r in report.rows)
        mass += 2 * sum(p.mult for p in report.non_invariant)
        assert mass == weyl_dimension(datum, mu)


def test_trace_is_bounded_by_the_plain_multiplicity():
    a4, flip = pair("A4", "A4-flip")
    mu = cw(1, 1, 1, 1)
    report = verify_jantzen(a4, flip, mu)
    for r in report.rows:
        assert 0 <= r.lhs_trace <= freudenthal_multiplicity(a4, mu, r.lam)


def test_report_json_shape():
    a2, swap = pair("A2", "A2-swap")
    report = verify_jantzen(a2, swap, cw(1, 1))
    obj = report.to_json_dict()
    assert obj["mu"] == [1, 1]
    assert obj["overall"] is True
    assert obj["rows"][0] == {
        "lambda": [1, 1],
        "lhs_trace": 1,
        "rhs_mult": 1,
        "pass": True,
    }
    assert obj["non_invariant"][0] == {"lambda": [0, 1], "image": [1, 0], "mult": 1}


def test_dual_datum_is_an_involution():
    for name in ("A1", "A2", "A3", "A4", "D4", "pgl3"):
        datum = builtin_datum(name)
        assert dual_datum(dual_datum(datum)) == datum
    assert dual_datum(builtin_datum("pgl3")) == builtin_datum("A2")


def test_dual_sigma_is_pinned_for_the_dual_datum():
    for datum_name, sigma_name in [
        ("A2", "A2-swap"),
        ("A3", "A3-flip"),
        ("A4", "A4-flip"),
        ("D4", "D4-rot3"),
    ]:
        datum, sigma = pair(datum_name, sigma_name)
        dd = dual_datum(datum)
        ds = dual_sigma(datum, sigma)
        validate_pinned_aut(dd, ds)
        assert ds.perm == sigma.perm


def test_double_fold_cartans_and_roots():
    a2, swap = pair("A2", "A2-swap")
    df = double_fold(a2, swap)
    assert df.datum.cartan == ((2,),)
    assert df.include_coweight(df.datum.simple_coroots[0]).coords == (2, 2)
    assert tuple(r.coords for r in double_fold_roots(a2, swap)) == ((-1,), (1,))

    a3, flip = pair("A3", "A3-flip")
    df = double_fold(a3, flip)
    assert df.datum.cartan == ((2, -1), (-2, 2))
    roots = double_fold_roots(a3, flip)
    assert len(roots) == 8
    assert {r.coords for r in roots} == {
        (-1, -2), (-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1), (1, 2),
    }

    d4, rot = pair("D4", "D4-rot3")
    df = double_fold(d4, rot)
    assert df.datum.cartan == ((2, -1), (-3, 2))
    roots = double_fold_roots(d4, rot)
    assert len(roots) == 12
    assert {r.coords for r in roots} == {
        (-2, -3), (-1, -3), (-1, -2), (-1, -1), (-1, 0), (0, -1),
        (0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 3),
    }


def test_double_fold_identity_gives_the_dual():
    a2 = builtin_datum("A2")
    ident = builtin_sigma("identity", a2)
    df = double_fold(a2, ident)
    assert df.datum == dual_datum(a2)
    roots = double_fold_roots(a2, ident)
    assert {r.coords for r in roots} == {
        (-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1),
    }


def test_double_fold_root_list_is_height_sorted_negatives_first():
    a3, flip = pair("A3", "A3-flip")
    roots = double_fold_roots(a3, flip)
    df = double_fold(a3, flip)
    n = len(roots)
    for idx in range(n // 2):
        assert roots[idx].coords == (-roots[n - 1 - idx]).coords
    positives = {r.coords for r in df.datum.positive_roots()}
    assert {r.coords for r in roots[n // 2 :]} == positives
