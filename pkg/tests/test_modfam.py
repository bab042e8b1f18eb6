from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nwfree.exactpoly import Poly, change_variables
from nwfree.liealg import (
    AFFINE_H4,
    D,
    K,
    LieElement,
    P,
    Q,
    R,
    S,
    SymbolNotInAlgebra,
    bracket,
    sym,
)
from nwfree.modfam import (
    ActionData,
    AffVirSpec,
    AffineSpec,
    H4Family,
    MalformedData,
    SpecInvalid,
    Vir00Spec,
    WindowExceeded,
    act,
    act_affine,
    act_affvir,
    act_h4,
    act_vir00,
    actions_of,
    affvir,
    generators,
    h4_base_values,
    m0,
    m0g,
    mab,
    mbh,
    mg0,
    mhb,
    mtilde,
    mtilde_f,
    value_on_one,
)

S_POLY = Poly.var(("s",), "s")
ONE_S = Poly.one(("s",))


def sd(text_terms):
    # tiny builder: dict {(es,ed): coeff} over (s, d)
    return Poly(("s", "d"), {k: Fraction(v) for k, v in text_terms.items()})


def test_mhb_generator_values():
    fam = mhb(1, 0, 1)
    assert act_h4(fam, P, ONE_S) == S_POLY
    assert act_h4(fam, Q, ONE_S) == ONE_S
    assert act_h4(fam, R, ONE_S) == Poly.const(("s",), -1)
    assert act_h4(fam, S, ONE_S) == S_POLY


def test_mg0_kills_q():
    fam = mg0(Poly(("s",), {(2,): 1}))
    assert act_h4(fam, Q, S_POLY ** 5).is_zero()
    assert act_h4(fam, R, S_POLY ** 2).is_zero()


def test_mhb_pq_commutator_matches_r():
    fam = mhb(1, 0, 1)
    v = ONE_S
    got = act_h4(fam, P, act_h4(fam, Q, v)) - act_h4(fam, Q, act_h4(fam, P, v))
    assert got == Poly.const(("s",), -1)
    assert got == act_h4(fam, R, v)


def test_base_values_table():
    assert h4_base_values(mg0(2)) == (Poly.const(("s",), 2), Poly.zero(("s",)), 0)
    p1, q1, r1 = h4_base_values(mbh(2, -1, 3))
    assert p1 == Poly.const(("s",), 3)
    assert q1 == 2 * S_POLY - ONE_S
    assert r1 == -6
    assert h4_base_values(m0()) == (Poly.zero(("s",)), Poly.zero(("s",)), 0)


@pytest.fixture
def affine_demo():
    return mtilde(mhb(1, 0, 1), 2, {1: 5, -1: 0}, window=1)


def test_affine_s_loop_action(affine_demo):
    v = sd({(1, 0): Fraction(1, 2)})
    got = act_affine(affine_demo, sym("s", 1), v)
    assert got == sd({(2, 0): 1, (1, 0): Fraction(5, 2)})


def test_affine_k_annihilates(affine_demo):
    v = sd({(3, 2): 1})
    assert act_affine(affine_demo, K, v).is_zero()
    assert act_affine(affine_demo, D, v) == sd({(3, 3): 1})


def test_affine_sp_commutator_realizes_bracket(affine_demo):
    one = Poly.one(("s", "d"))
    x, y = sym("s", 1), sym("p", -1)
    got = act(affine_demo, x, act(affine_demo, y, one)) - act(
        affine_demo, y, act(affine_demo, x, one)
    )
    assert got == sd({(1, 0): 1})
    assert got == act(affine_demo, bracket(AFFINE_H4, x, y), one)


def test_affine_window_rejected(affine_demo):
    with pytest.raises(WindowExceeded):
        act_affine(affine_demo, sym("p", 2), Poly.one(("s", "d")))


def test_mtilde_f_values():
    spec = mtilde_f({1: S_POLY ** 2, -1: 7}, window=1)
    one = Poly.one(("s", "d"))
    assert act_affine(spec, sym("p", 1), one).is_zero()
    assert act_affine(spec, sym("s", 0), one) == sd({(1, 0): 1})
    assert act_affine(spec, sym("s", 1), one) == sd({(2, 0): 1})
    # sigma shows up once the argument involves d
    v = sd({(0, 1): 1})
    assert act_affine(spec, sym("s", 1), v) == sd({(2, 1): 1, (2, 0): -1})


def test_vir00_actions():
    spec = Vir00Spec(Fraction(2), Poly.var(("w0",), "w0"))
    one = Poly.one(("d0", "w0"))
    d0 = Poly.var(("d0", "w0"), "d0")
    w0 = Poly.var(("d0", "w0"), "w0")
    assert act_vir00(spec, sym("dvir", 1), one) == 2 * (d0 + w0)
    v = d0 * w0 + w0
    assert act_vir00(spec, sym("s", 0), v) == w0 * v
    assert act_vir00(spec, K, v).is_zero()


def test_vir00_dw_commutator():
    spec = Vir00Spec(Fraction(2), Poly.var(("w0",), "w0"))
    one = Poly.one(("d0", "w0"))
    w0 = Poly.var(("d0", "w0"), "w0")
    d1, wm1 = sym("dvir", 1), sym("s", -1)
    got = act_vir00(spec, d1, act_vir00(spec, wm1, one)) - act_vir00(
        spec, wm1, act_vir00(spec, d1, one)
    )
    assert got == -w0
    assert got == act(spec, LieElement.basis(sym("s", 0), -1), one)


def test_affvir_actions():
    spec = affvir(mhb(1, 0, 1), alpha=2, lam=3, window=2)
    one = Poly.one(("s", "d"))
    assert act_affvir(spec, sym("dvir", 1), one) == sd({(0, 1): 2, (0, 0): 6})
    v = sd({(1, 1): 1})
    assert act_affvir(spec, sym("dvir", 0), v) == sd({(1, 2): 1})


def test_affvir_dd_commutator():
    spec = affvir(mhb(1, 0, 1), alpha=2, lam=3, window=2)
    one = Poly.one(("s", "d"))
    d1, dm1 = sym("dvir", 1), sym("dvir", -1)
    got = act_affvir(spec, d1, act_affvir(spec, dm1, one)) - act_affvir(
        spec, dm1, act_affvir(spec, d1, one)
    )
    assert got == sd({(0, 1): -2})


def test_affvir_loop_generators_scale():
    spec = affvir(mab(2, 3), alpha=2, lam=1, window=2)
    one = Poly.one(("s", "d"))
    assert act_affvir(spec, sym("p", 1), one) == sd({(0, 0): 4})
    assert act_affvir(spec, sym("s", 1), one) == sd({(1, 0): 2})


def test_spec_validation_errors():
    with pytest.raises(SpecInvalid):
        mg0(0)
    with pytest.raises(SpecInvalid):
        mhb(0, 1, 1)
    with pytest.raises(SpecInvalid):
        mhb(1, 0, 0)
    with pytest.raises(SpecInvalid):
        mab(0, 1)
    with pytest.raises(SpecInvalid):
        mtilde(mhb(1, 0, 1), 0, {1: 1, -1: 0}, window=1)
    with pytest.raises(SpecInvalid, match="beta.0"):
        mtilde(mhb(1, 0, 1), 2, {0: 1, 1: 0, -1: 0}, window=1)
    with pytest.raises(SpecInvalid, match="missing"):
        mtilde(mhb(1, 0, 1), 2, {1: 1}, window=1)
    with pytest.raises(SpecInvalid, match="outside"):
        mtilde(mhb(1, 0, 1), 2, {1: 1, -1: 0, 5: 2}, window=1)
    with pytest.raises(SpecInvalid, match="f.0"):
        mtilde_f({0: S_POLY + ONE_S, 1: 0, -1: 0}, window=1)
    with pytest.raises(SpecInvalid):
        Vir00Spec(Fraction(0), Poly.var(("w0",), "w0"))
    with pytest.raises(SpecInvalid, match="vanish"):
        AffVirSpec(mtilde(mhb(1, 0, 1), 2, {1: 5, -1: 0}, window=1), Fraction(1))
    with pytest.raises(SpecInvalid):
        H4Family("Mg0", g=S_POLY, a1=Fraction(1))


def test_membership_errors():
    with pytest.raises(SymbolNotInAlgebra):
        act_h4(mg0(1), sym("p", 1), ONE_S)
    with pytest.raises(SymbolNotInAlgebra):
        act_h4(mg0(1), K, ONE_S)
    with pytest.raises(SymbolNotInAlgebra):
        act_vir00(Vir00Spec(Fraction(1), Poly.zero(("w0",))), P, Poly.one(("d0", "w0")))


def test_act_type_guards():
    with pytest.raises(SpecInvalid):
        act_h4(mtilde(m0(), 1, {1: 0, -1: 0}, 1), P, ONE_S)
    with pytest.raises(SpecInvalid):
        act_vir00(mg0(1), P, ONE_S)


def test_generators_ordering_and_window():
    spec = mtilde(m0(), 1, {1: 0, -1: 0}, window=1)
    gens = generators(spec)
    assert gens[0] == sym("p", -1)
    assert gens[-2:] == [K, D]
    assert len(gens) == 4 * 3 + 2
    assert generators(spec, window=1) == gens
    with pytest.raises(WindowExceeded):
        generators(spec, window=2)
    assert generators(mg0(1), window=3) == [P, Q, R, S]


def test_actions_of_round_trip_evaluation():
    spec = mtilde(mhb(1, 2, 3), Fraction(1, 2), {1: 5, -1: 1}, window=1)
    data = actions_of(spec)
    assert data.algebra == AFFINE_H4
    assert data.window == 1
    one = Poly.one(("s", "d"))
    for x in generators(spec):
        assert act(data, x, one) == act(spec, x, one)
    v = sd({(2, 1): 1, (0, 0): 3})
    for x in generators(spec):
        assert act(data, x, v) == act(spec, x, v)


def test_action_data_lookup_errors():
    data = actions_of(mtilde(mab(1, 1), 2, {1: 0, -1: 0}, window=1))
    with pytest.raises(WindowExceeded):
        act(data, sym("p", 2), Poly.one(("s", "d")))
    incomplete = ActionData(AFFINE_H4, 1, {sym("s", 0): S_POLY})
    with pytest.raises(MalformedData):
        act(incomplete, sym("p", 0), Poly.one(("s", "d")))


def test_with_assignment_replaces():
    data = actions_of(mhb(1, 0, 1))
    bumped = data.with_assignment(R, Poly.zero(("s",)))
    assert value_on_one(bumped, R).is_zero()
    assert value_on_one(bumped, P) == value_on_one(data, P)


def test_vir00_data_window_defaults_to_two():
    data = actions_of(Vir00Spec(Fraction(3), Poly.one(("w0",))))
    assert data.window == 2
    assert data.has(sym("dvir", -2)) and data.has(sym("s", 2)) and data.has(K)


coeffs = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def poly_st(variables, max_degree=3):
    count = len(variables)
    exps = st.tuples(*(st.integers(min_value=0, max_value=max_degree),) * count)
    return st.dictionaries(exps, coeffs, max_size=4).map(lambda d: Poly(variables, d))


@settings(max_examples=40, deadline=None)
@given(poly_st(("s", "d")), poly_st(("s", "d")), coeffs)
def test_linearity(u, v, c):
    spec = mtilde(mhb(2, -1, 3), Fraction(1, 2), {1: 5, -1: 1}, window=1)
    for x in (sym("p", 1), sym("s", -1), D):
        assert act(spec, x, u + c * v) == act(spec, x, u) + c * act(spec, x, v)


@settings(max_examples=30, deadline=None)
@given(poly_st(("s",)))
def test_freeness_anchor_h4(v):
    assert act_h4(mab(2, 3), S, v) == S_POLY * v


@settings(max_examples=30, deadline=None)
@given(poly_st(("s", "d")))
def test_freeness_anchor_affine(v):
    spec = mtilde(mg0(S_POLY), 3, {1: 1, -1: 2}, window=1)
    assert act_affine(spec, D, v) == Poly.var(("s", "d"), "d") * v


@settings(max_examples=30, deadline=None)
@given(poly_st(("d0", "w0")))
def test_freeness_anchor_vir00(v):
    spec = Vir00Spec(Fraction(5), Poly.var(("w0",), "w0") ** 2)
    assert act_vir00(spec, sym("dvir", 0), v) == Poly.var(("d0", "w0"), "d0") * v
    assert act_vir00(spec, sym("s", 0), v) == Poly.var(("d0", "w0"), "w0") * v


def test_loop_scaling_property():
    spec = mtilde(mbh(1, 1, 2), Fraction(3, 2), {k: k for k in range(-2, 3)}, window=2)
    one = Poly.one(("s", "d"))
    for kind in ("p", "q", "r"):
        base = act(spec, sym(kind, 0), one)
        for k in range(-2, 3):
            assert act(spec, sym(kind, k), one) == Fraction(3, 2) ** k * base


def test_r_acts_by_constant():
    for fam in (mg0(S_POLY ** 2), m0g(5), mhb(1, 0, 1), mbh(2, -1, 3), mab(2, 3), m0()):
        got = act_h4(fam, R, S_POLY ** 3 + ONE_S)
        _, _, r1 = h4_base_values(fam)
        assert got == r1 * (S_POLY ** 3 + ONE_S)
        if fam.variant in ("Mg0", "M0g", "Mab", "M0"):
            assert r1 == 0
