"""Classify raw action data into module families, twist, and compare.

`classify_h4` and `classify_affine` invert `actions_of`: given the values
of the generators on 1 they either rebuild the unique spec that generates
the data or reject it, naming the violated constraint through a stable
anchor token.  Rejections are decisions, not exceptions; structurally
unusable data (missing generators, wrong ring, denormalized s or d slot)
raises MalformedData instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .exactpoly import (
    Poly,
    Shift,
    apply_shift,
    change_variables,
    coefficient_in,
    degree_in,
    format_poly,
    negate_var,
)
from .liealg import AFFINE_H4, H4, BasisSymbol, D, K, P, Q, R, S, format_symbol, sym
from .modfam import (
    ActionData,
    AffineSpec,
    H4Family,
    MalformedData,
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

__all__ = [
    "ActionData",
    "Classified",
    "Rejected",
    "UnsupportedTwist",
    "UnsupportedIso",
    "WindowMismatch",
    "actions_of",
    "classify",
    "classify_h4",
    "classify_affine",
    "twist",
    "iso_check",
]


@dataclass(frozen=True)
class Classified:
    spec: Union[H4Family, AffineSpec]


@dataclass(frozen=True)
class Rejected:
    anchor: str
    reason: str


ClassificationResult = Union[Classified, Rejected]


class UnsupportedTwist(ValueError):
    """Twist images are only recorded for the Mg0 and Mhb variants."""


class UnsupportedIso(ValueError):
    """Isomorphism is only decided within the MTildeAlphaBeta variant."""


class WindowMismatch(ValueError):
    """The two specs live on different loop windows."""


TAU = Shift.of(s=-1)
TAU_INV = Shift.of(s=1)


def _require(data: ActionData, symbol: BasisSymbol) -> Poly:
    if not data.has(symbol):
        raise MalformedData(f"missing generator {format_symbol(symbol)}")
    return data.value(symbol)


def classify(data: ActionData) -> ClassificationResult:
    if data.algebra == H4:
        return classify_h4(data)
    if data.algebra == AFFINE_H4:
        return classify_affine(data)
    raise MalformedData(f"no classification for {data.algebra} data")


def classify_h4(data: ActionData) -> ClassificationResult:
    if data.algebra != H4:
        raise MalformedData("classify_h4 needs H4 data")
    p1 = _require(data, P)
    q1 = _require(data, Q)
    r1_poly = _require(data, R)
    s1 = _require(data, S)
    if s1 != Poly.var(("s",), "s"):
        raise MalformedData("s must act as multiplication by s")

    if not r1_poly.is_constant():
        return Rejected("r1-constant", f"r.1 = {format_poly(r1_poly)} is not a constant")
    r1 = r1_poly.constant_value()

    if p1.is_zero() or q1.is_zero():
        if r1 != 0:
            return Rejected(
                "r1-zero-when-pq-degenerate",
                f"r.1 = {format_poly(r1_poly)} must vanish when p.1 or q.1 is zero",
            )
        if p1.is_zero() and q1.is_zero():
            return Classified(m0())
        return Classified(mg0(p1) if q1.is_zero() else m0g(q1))

    dp, dq = degree_in(p1, "s"), degree_in(q1, "s")
    if (dp, dq) not in ((0, 0), (1, 0), (0, 1)):
        return Rejected(
            "degree-dichotomy",
            f"degree pair ({dp}, {dq}) is not (0,0), (1,0) or (0,1)",
        )
    forced = apply_shift(TAU, q1) * p1 - apply_shift(TAU_INV, p1) * q1
    if forced != Poly.const(("s",), r1):
        return Rejected(
            "r1-product-rule",
            f"r.1 = {format_poly(r1_poly)} but [p,q] forces {format_poly(forced)}",
        )
    if (dp, dq) == (0, 0):
        return Classified(mab(p1.constant_value(), q1.constant_value()))
    if (dp, dq) == (1, 0):
        h, b = p1, q1.constant_value()
        builder = mhb
    else:
        h, b = q1, p1.constant_value()
        builder = mbh
    a1 = h.coefficient((1,))
    a2 = h.coefficient((0,))
    return Classified(builder(a1, a2, b))


def _restrict_s(value: Poly) -> Poly:
    return change_variables(value, ("s",))


def classify_affine(data: ActionData) -> ClassificationResult:
    if data.algebra != AFFINE_H4:
        raise MalformedData("classify_affine needs affine data")
    w = data.window
    loops = range(-w, w + 1)
    table = {
        kind: {k: _require(data, sym(kind, k)) for k in loops}
        for kind in ("p", "q", "r", "s")
    }
    k_val = _require(data, K)
    d_val = _require(data, D)
    if d_val != Poly.var(("s", "d"), "d"):
        raise MalformedData("d must act as multiplication by d")
    fseq = table["s"]
    s_var = Poly.var(("s", "d"), "s")

    if all(table[kind][k].is_zero() for kind in ("p", "q", "r") for k in loops):
        for k in loops:
            fk = fseq[k]
            if not fk.is_zero() and degree_in(fk, "d") > 0:
                return Rejected("deg-d-f", f"f_{k} = {format_poly(fk)} depends on d")
        if fseq[0] != s_var:
            return Rejected("f0-side-condition", f"f_0 = {format_poly(fseq[0])} must equal s")
        if not k_val.is_zero():
            return Rejected("central-k", f"k.1 = {format_poly(k_val)} must be 0")
        return Classified(mtilde_f({k: _restrict_s(fseq[k]) for k in loops}, w))

    for k in loops:
        fk = fseq[k]
        if degree_in(fk, "d") > 0:
            return Rejected("deg-d-f", f"f_{k} = {format_poly(fk)} depends on d")
        if degree_in(fk, "s") > 1:
            return Rejected(
                "deg-s-f", f"f_{k} = {format_poly(fk)} has s-degree above 1"
            )
    if fseq[0] != s_var:
        return Rejected("f0-side-condition", f"f_0 = {format_poly(fseq[0])} must equal s")
    alpha = coefficient_in(fseq[1], "s", 1).constant_value()
    if alpha == 0:
        return Rejected("alpha-nonzero", "the s-coefficient of f_1 must be invertible")
    for k in loops:
        scale = coefficient_in(fseq[k], "s", 1).constant_value()
        if scale != alpha ** k:
            return Rejected(
                "alpha-power",
                f"s-coefficient of f_{k} is {scale}, expected alpha^{k} = {alpha ** k}",
            )
    for kind in ("p", "q", "r"):
        if degree_in(table[kind][0], "d") > 0:
            return Rejected(
                "deg-d-base", f"{kind}.1 = {format_poly(table[kind][0])} depends on d"
            )
        for k in loops:
            if table[kind][k] != alpha ** k * table[kind][0]:
                return Rejected(
                    "loop-scaling",
                    f"{kind} at loop {k} is not alpha^{k} times its loop-0 value",
                )
    if not k_val.is_zero():
        return Rejected("central-k", f"k.1 = {format_poly(k_val)} must be 0")

    base_data = ActionData(
        H4,
        0,
        {
            P: _restrict_s(table["p"][0]),
            Q: _restrict_s(table["q"][0]),
            R: _restrict_s(table["r"][0]),
            S: Poly.var(("s",), "s"),
        },
    )
    base = classify_h4(base_data)
    if isinstance(base, Rejected):
        return base
    beta = {k: coefficient_in(fseq[k], "s", 0).constant_value() for k in loops}
    return Classified(mtilde(base.spec, alpha, beta, w))


def twist(spec: H4Family) -> H4Family:
    """Image family under the order-four automorphism, for Mg0 and Mhb."""
    if spec.variant == "Mg0":
        return m0g(negate_var(spec.g, "s"))
    if spec.variant == "Mhb":
        # h(s) goes to h(-s), b to -b
        return mbh(-spec.a1, spec.a2, -spec.b)
    raise UnsupportedTwist(f"no twist image recorded for {spec.variant}")


def iso_check(a: AffineSpec, b: AffineSpec) -> bool:
    for spec in (a, b):
        if not isinstance(spec, AffineSpec) or spec.variant != "MTildeAlphaBeta":
            raise UnsupportedIso("iso_check compares MTildeAlphaBeta specs only")
    if a.window != b.window:
        raise WindowMismatch(f"windows {a.window} and {b.window} differ")
    return a.base == b.base and a.alpha == b.alpha and a.beta == b.beta
