"""Shared test fixtures: one canonical spec per family, plus data corruption."""

from fractions import Fraction

from nwfree.exactpoly import Poly
from nwfree.liealg import AFF_VIR, AFFINE_H4, H4, VIR00, D, K, P, Q, R, sym
from nwfree.liealg import S as S_SYM
from nwfree.modfam import (
    MODULE_VARIABLES,
    ActionData,
    Vir00Spec,
    actions_of,
    affvir,
    m0,
    m0g,
    mab,
    mbh,
    mg0,
    mhb,
    mtilde,
    mtilde_f,
)

S = Poly.var(("s",), "s")
W0 = Poly.var(("w0",), "w0")
SD_S = Poly.var(("s", "d"), "s")
SD_D = Poly.var(("s", "d"), "d")

# the slot whose +1 bump breaks the axiom in every family of that algebra
CORRUPTION_SLOT = {
    H4: R,
    AFFINE_H4: K,
    VIR00: sym("dvir", 1),
    AFF_VIR: sym("dvir", 1),
}


def corrupted_data(spec, window=None):
    """Action data of `spec` with one scalar slot bumped by +1."""
    data = actions_of(spec, window)
    target = CORRUPTION_SLOT[data.algebra]
    one = Poly.one(MODULE_VARIABLES[data.algebra])
    return data.with_assignment(target, data.value(target) + one)


def sample_specs():
    """One representative spec per family, all passing verify."""
    return [
        ("Mg0", mg0(S ** 2 - S)),
        ("M0g", m0g(5)),
        ("Mhb", mhb(1, 0, 1)),
        ("Mbh", mbh(2, -1, 3)),
        ("Mab", mab(2, 3)),
        ("M0", m0()),
        ("MTildeAlphaBeta", mtilde(mhb(1, 0, 1), 2, {1: 5, -1: 0}, window=1)),
        ("MTildeF", mtilde_f({1: S ** 2, -1: S + Poly.const(("s",), 2)}, window=1)),
        ("Vir00", Vir00Spec(Fraction(2), W0)),
        ("AffVir", affvir(mhb(1, 0, 1), alpha=2, lam=3, window=1)),
    ]


def h4_data(p, q, r):
    return ActionData(H4, 0, {P: p, Q: q, R: r, S_SYM: S})


def affine_data(p, q, r, f, window=1):
    """Raw affine data from loop tables (dicts loop index -> value)."""
    table = {}
    for kind, tab in (("p", p), ("q", q), ("r", r), ("s", f)):
        for k in range(-window, window + 1):
            table[sym(kind, k)] = tab.get(k, 0)
    table[K] = 0
    table[D] = SD_D
    return ActionData(AFFINE_H4, window, table)


def corrupted_fixtures():
    """(anchor, data) pairs: each classifies as Rejected(anchor) and fails verify."""
    demo = mtilde(mhb(1, 0, 1), 2, {1: 5, -1: 0}, window=1)
    demo_data = actions_of(demo)
    half = Fraction(1, 2)
    return [
        ("r1-constant", actions_of(mab(2, 3)).with_assignment(R, S)),
        ("r1-zero-when-pq-degenerate", actions_of(mg0(S ** 2)).with_assignment(R, 1)),
        ("degree-dichotomy", h4_data(S ** 2, 1, 0)),
        ("r1-product-rule", actions_of(mhb(1, 2, 3)).with_assignment(R, 3)),
        ("deg-d-f", demo_data.with_assignment(sym("s", 1), SD_S * SD_D)),
        ("deg-s-f", demo_data.with_assignment(sym("s", 1), SD_S ** 2)),
        (
            "alpha-power",
            affine_data(
                p={-1: half * SD_S, 0: SD_S, 1: 2 * SD_S},
                q={},
                r={},
                f={-1: 3 * SD_S, 0: SD_S, 1: 2 * SD_S},
            ),
        ),
        (
            "loop-scaling",
            actions_of(mtilde(mab(2, 3), 2, {1: 0, -1: 0}, window=1)).with_assignment(
                sym("p", 1), 5
            ),
        ),
        ("central-k", demo_data.with_assignment(K, 1)),
        (
            "deg-d-base",
            affine_data(
                p={-1: half * SD_D, 0: SD_D, 1: 2 * SD_D},
                q={-1: Fraction(3, 2), 0: 3, 1: 6},
                r={},
                f={-1: half * SD_S, 0: SD_S, 1: 2 * SD_S},
            ),
        ),
    ]
