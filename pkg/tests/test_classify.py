import itertools
from fractions import Fraction

import pytest
from helpers import SD_S, affine_data, corrupted_fixtures, h4_data

from nwfree.classify import (
    Classified,
    Rejected,
    UnsupportedIso,
    UnsupportedTwist,
    WindowMismatch,
    classify,
    classify_affine,
    classify_h4,
    iso_check,
    twist,
)
from nwfree.exactpoly import Poly, monomials_upto, negate_var
from nwfree.liealg import AFFINE_H4, H4, P, Q, R, S, VIR00, LieElement, eta, sym
from nwfree.modfam import (
    ActionData,
    MalformedData,
    Vir00Spec,
    act,
    actions_of,
    m0,
    m0g,
    mab,
    mbh,
    mg0,
    mhb,
    mtilde,
    mtilde_f,
)
from nwfree.verify import verify_module

S_POLY = Poly.var(("s",), "s")
ONE = Poly.one(("s",))


def test_classify_h4_mhb_example():
    data = h4_data(S_POLY + 2 * ONE, 3, -3)
    got = classify_h4(data)
    assert got == Classified(mhb(1, 2, 3))


def test_classify_h4_zero_module():
    assert classify_h4(h4_data(0, 0, 0)) == Classified(m0())


def test_classify_h4_degree_rejection():
    got = classify_h4(h4_data(S_POLY ** 2, 1, 0))
    assert isinstance(got, Rejected)
    assert got.anchor == "degree-dichotomy"
    assert "(2, 0)" in got.reason


def test_classify_h4_all_families_round_trip():
    fams = [
        mg0(2),
        mg0(S_POLY ** 2 - S_POLY),
        m0g(S_POLY ** 2 + ONE),
        mhb(1, 0, 1),
        mhb(2, -1, 3),
        mbh(Fraction(1, 2), 5, Fraction(-2, 3)),
        mab(2, 3),
        m0(),
    ]
    for fam in fams:
        assert classify(actions_of(fam)) == Classified(fam)


def test_classify_dispatch_and_malformed():
    with pytest.raises(MalformedData):
        classify(actions_of(Vir00Spec(Fraction(2), Poly.var(("w0",), "w0"))))
    with pytest.raises(MalformedData):
        classify_h4(ActionData(H4, 0, {P: S_POLY, Q: ONE, R: 0}))  # no s slot
    bad_s = ActionData(H4, 0, {P: 0, Q: 0, R: 0, S: S_POLY + ONE})
    with pytest.raises(MalformedData):
        classify_h4(bad_s)
    with pytest.raises(MalformedData):
        classify_affine(actions_of(mg0(1)))


def test_classify_affine_round_trip_example():
    spec = mtilde(mhb(1, 0, 1), 2, {1: 5, -1: 0}, window=1)
    assert classify_affine(actions_of(spec)) == Classified(spec)


def test_classify_affine_window_two_round_trip():
    spec = mtilde(mbh(2, -1, 3), Fraction(1, 2), {2: 1, 1: 5, -1: 0, -2: Fraction(2, 7)}, window=2)
    assert classify(actions_of(spec)) == Classified(spec)


def test_classify_mtilde_f_round_trip():
    spec = mtilde_f({1: S_POLY ** 2, -1: S_POLY + 2 * ONE}, window=1)
    assert classify(actions_of(spec)) == Classified(spec)


def test_zero_base_canonicalizes_to_mtilde_f():
    spec = mtilde(m0(), 2, {1: 5, -1: 0}, window=1)
    got = classify(actions_of(spec))
    assert isinstance(got, Classified)
    expected = mtilde_f(
        {1: 2 * S_POLY + 5 * ONE, -1: Fraction(1, 2) * S_POLY}, window=1
    )
    assert got.spec == expected


def test_classify_affine_deg_d_rejection():
    spec = mtilde(mhb(1, 0, 1), 2, {1: 5, -1: 0}, window=1)
    data = actions_of(spec).with_assignment(sym("s", 1), SD_S * Poly.var(("s", "d"), "d"))
    got = classify_affine(data)
    assert isinstance(got, Rejected) and got.anchor == "deg-d-f"
    assert "f_1" in got.reason


def test_classify_affine_alpha_inverse_rejection():
    data = affine_data(
        p={-1: Fraction(1, 2) * SD_S, 0: SD_S, 1: 2 * SD_S},
        q={},
        r={},
        f={-1: 3 * SD_S, 0: SD_S, 1: 2 * SD_S},
    )
    got = classify_affine(data)
    assert isinstance(got, Rejected) and got.anchor == "alpha-power"
    assert "f_-1" in got.reason


def test_classify_affine_f0_side_condition():
    spec = mtilde(mab(1, 2), 3, {1: 0, -1: 1}, window=1)
    data = actions_of(spec).with_assignment(sym("s", 0), SD_S + Poly.one(("s", "d")))
    got = classify_affine(data)
    assert isinstance(got, Rejected) and got.anchor == "f0-side-condition"


@pytest.mark.parametrize("anchor,data", corrupted_fixtures())
def test_rejection_anchors(anchor, data):
    got = classify(data)
    assert isinstance(got, Rejected)
    assert got.anchor == anchor


@pytest.mark.parametrize("anchor,data", corrupted_fixtures())
def test_rejection_soundness(anchor, data):
    # every rejected datum really does break the module axiom somewhere
    report = verify_module(data, window=1, test_degree=2)
    assert not report.passed, anchor


def test_twist_images():
    assert twist(mg0(S_POLY ** 2 + S_POLY)) == m0g(S_POLY ** 2 - S_POLY)
    assert twist(mg0(5 * ONE)) == m0g(5)
    assert twist(mhb(1, 0, 2)) == mbh(-1, 0, -2)
    for fam in (m0g(1), mbh(1, 0, 1), mab(2, 3), m0()):
        with pytest.raises(UnsupportedTwist):
            twist(fam)


@pytest.mark.parametrize(
    "fam", [mg0(S_POLY ** 2 + S_POLY), mg0(5 * ONE), mhb(1, 0, 2), mhb(2, -1, 3)]
)
def test_twist_intertwines_actions(fam):
    target = twist(fam)
    for x in (P, Q, R, S):
        twisted = eta(LieElement.basis(x))
        for v in monomials_upto(("s",), 4):
            lhs = negate_var(act(fam, twisted, v), "s")
            rhs = act(target, x, negate_var(v, "s"))
            assert lhs == rhs, (fam.variant, x)


def test_iso_check_criteria():
    base = mhb(1, 1, 2)
    beta = {2: 5, 1: 0, -1: 0, -2: 0}
    a = mtilde(base, 2, beta, window=2)
    assert iso_check(a, mtilde(base, 2, dict(beta), window=2))
    b2 = dict(beta)
    b2[2] = 6
    assert not iso_check(a, mtilde(base, 2, b2, window=2))
    assert not iso_check(a, mtilde(mhb(1, 1, 3), 2, beta, window=2))
    assert not iso_check(a, mtilde(base, Fraction(1, 2), beta, window=2))
    with pytest.raises(WindowMismatch):
        iso_check(a, mtilde(base, 2, {1: 0, -1: 0}, window=1))
    with pytest.raises(UnsupportedIso):
        iso_check(a, mtilde_f({2: 0, 1: 0, -1: 0, -2: 0}, window=2))
    with pytest.raises(UnsupportedIso):
        iso_check(mhb(1, 0, 1), a)


def test_iso_check_is_equivalence():
    specs = [
        mtilde(mhb(1, 0, 1), 2, {1: 5, -1: 0}, window=1),
        mtilde(mhb(1, 0, 1), 2, {1: 5, -1: 0}, window=1),
        mtilde(mhb(1, 0, 1), 2, {1: 6, -1: 0}, window=1),
        mtilde(mab(2, 3), 2, {1: 5, -1: 0}, window=1),
        mtilde(mab(2, 3), Fraction(1, 2), {1: 0, -1: 0}, window=1),
    ]
    for x in specs:
        assert iso_check(x, x)
    for x, y in itertools.product(specs, specs):
        assert iso_check(x, y) == iso_check(y, x)
    for x, y, z in itertools.product(specs, specs, specs):
        if iso_check(x, y) and iso_check(y, z):
            assert iso_check(x, z)


def test_classified_spec_regenerates_data():
    fixtures = [
        actions_of(mhb(1, 2, 3)),
        actions_of(mtilde(m0g(S_POLY), 3, {1: 1, -1: 2}, window=1)),
    ]
    for data in fixtures:
        got = classify(data)
        assert isinstance(got, Classified)
        assert actions_of(got.spec, data.window) == data
