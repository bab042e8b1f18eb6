"""Rank one Cartan-free module families as executable actions.

Six families over the Nappi-Witten algebra act on Q[s], two families over
its affinization act on Q[s,d], one family for Vir(0,0) acts on Q[d0,w0],
and the affine-Virasoro family acts on Q[s,d] again.

Every action here has the same shape: a generator x sends v to
shift_x(v) * (x.1), where shift_x is a variable shift forced by the
brackets with the Cartan part and x.1 is the value of x on the constant
polynomial 1.  The families differ only in those values, so `act` funnels
everything through `value_on_one` plus `shift_of`.  Raw `ActionData`
(values on 1 without a family attached) evaluates through the same
funnel, which is what classification and corruption tests rely on.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Tuple, Union

from .exactpoly import (
    Poly,
    Shift,
    SHIFT_IDENTITY,
    apply_shift,
    change_variables,
)
from .liealg import (
    AFF_VIR,
    AFFINE_H4,
    H4,
    VIR00,
    BasisSymbol,
    D,
    K,
    LieElement,
    P,
    Q,
    R,
    S,
    check_in_algebra,
    format_symbol,
    sort_key,
    sym,
)

_F0 = Fraction(0)


class ConstraintViolation(ValueError):
    """A named invariant failed; may carry a source position."""

    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col


class SpecInvalid(ConstraintViolation):
    """A module spec failed construction-time validation."""


class WindowExceeded(Exception):
    """A loop index fell outside the spec's finite window."""


class MalformedData(ValueError):
    """Action data is structurally unusable (missing generators, wrong ring)."""


MODULE_VARIABLES = {
    H4: ("s",),
    AFFINE_H4: ("s", "d"),
    VIR00: ("d0", "w0"),
    AFF_VIR: ("s", "d"),
}

H4_VARIANTS = ("Mg0", "M0g", "Mhb", "Mbh", "Mab", "M0")
AFFINE_VARIANTS = ("MTildeAlphaBeta", "MTildeF")

Scalar = Union[int, Fraction, str]


def _fraction(value: Scalar, what: str) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise SpecInvalid(f"{what} must be rational, got {value!r}") from exc


def _poly_in(value, variables: Tuple[str, ...], what: str) -> Poly:
    if isinstance(value, Poly):
        try:
            return change_variables(value, variables)
        except Exception as exc:
            raise SpecInvalid(f"{what} must be a polynomial in {variables}") from exc
    return Poly.const(variables, _fraction(value, what))


def _int_keyed(entries, coerce, what: str):
    if isinstance(entries, Mapping):
        items = entries.items()
    else:
        items = entries
    out = {}
    for key, value in items:
        k = int(key)
        if k in out:
            raise SpecInvalid(f"duplicate {what}.{k}")
        out[k] = coerce(value, f"{what}.{k}")
    return out


@dataclass(frozen=True)
class H4Family:
    """One of the six families: Mg0, M0g, Mhb, Mbh, Mab, M0."""

    variant: str
    g: Optional[Poly] = None
    a1: Optional[Fraction] = None
    a2: Optional[Fraction] = None
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None

    def __post_init__(self):
        if self.variant not in H4_VARIANTS:
            raise SpecInvalid(f"unknown H4 family {self.variant!r}")
        given = {
            name
            for name in ("g", "a1", "a2", "a", "b")
            if getattr(self, name) is not None
        }
        wanted = {
            "Mg0": {"g"},
            "M0g": {"g"},
            "Mhb": {"a1", "a2", "b"},
            "Mbh": {"a1", "a2", "b"},
            "Mab": {"a", "b"},
            "M0": set(),
        }[self.variant]
        if given != wanted:
            raise SpecInvalid(
                f"{self.variant} takes exactly {sorted(wanted) or 'no parameters'}, got {sorted(given)}"
            )
        if self.variant in ("Mg0", "M0g"):
            g = _poly_in(self.g, ("s",), "g")
            if g.is_zero():
                raise SpecInvalid("g must be a non-zero polynomial in s")
            object.__setattr__(self, "g", g)
        elif self.variant in ("Mhb", "Mbh"):
            a1 = _fraction(self.a1, "a1")
            if a1 == 0:
                raise SpecInvalid("a1 != 0: h must be a non-zero one-degree polynomial")
            b = _fraction(self.b, "b")
            if b == 0:
                raise SpecInvalid("b != 0 is required")
            object.__setattr__(self, "a1", a1)
            object.__setattr__(self, "a2", _fraction(self.a2, "a2"))
            object.__setattr__(self, "b", b)
        elif self.variant == "Mab":
            a = _fraction(self.a, "a")
            b = _fraction(self.b, "b")
            if a == 0 or b == 0:
                raise SpecInvalid("a != 0 and b != 0 are required")
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)


def mg0(g) -> H4Family:
    return H4Family("Mg0", g=_poly_in(g, ("s",), "g"))


def m0g(g) -> H4Family:
    return H4Family("M0g", g=_poly_in(g, ("s",), "g"))


def mhb(a1: Scalar, a2: Scalar, b: Scalar) -> H4Family:
    return H4Family("Mhb", a1=Fraction(a1), a2=Fraction(a2), b=Fraction(b))


def mbh(a1: Scalar, a2: Scalar, b: Scalar) -> H4Family:
    return H4Family("Mbh", a1=Fraction(a1), a2=Fraction(a2), b=Fraction(b))


def mab(a: Scalar, b: Scalar) -> H4Family:
    return H4Family("Mab", a=Fraction(a), b=Fraction(b))


def m0() -> H4Family:
    return H4Family("M0")


@functools.lru_cache(maxsize=None)
def h4_base_values(fam: H4Family) -> Tuple[Poly, Poly, Fraction]:
    """(p.1, q.1, r.1) for the family; r.1 is always a constant."""
    s = Poly.var(("s",), "s")
    zero = Poly.zero(("s",))
    if fam.variant == "Mg0":
        return fam.g, zero, Fraction(0)
    if fam.variant == "M0g":
        return zero, fam.g, Fraction(0)
    if fam.variant == "Mhb":
        h = fam.a1 * s + Poly.const(("s",), fam.a2)
        return h, Poly.const(("s",), fam.b), -fam.a1 * fam.b
    if fam.variant == "Mbh":
        h = fam.a1 * s + Poly.const(("s",), fam.a2)
        return Poly.const(("s",), fam.b), h, -fam.a1 * fam.b
    if fam.variant == "Mab":
        return Poly.const(("s",), fam.a), Poly.const(("s",), fam.b), Fraction(0)
    return zero, zero, Fraction(0)


@dataclass(frozen=True)
class AffineSpec:
    """Affinized module: MTildeAlphaBeta over a base family, or MTildeF."""

    variant: str
    window: int
    alpha: Optional[Fraction] = None
    base: Optional[H4Family] = None
    beta: Tuple[Tuple[int, Fraction], ...] = ()
    fseq: Tuple[Tuple[int, Poly], ...] = ()

    def __post_init__(self):
        if self.variant not in AFFINE_VARIANTS:
            raise SpecInvalid(f"unknown affine family {self.variant!r}")
        if not isinstance(self.window, int) or self.window < 1:
            raise SpecInvalid("window must be a positive integer")
        keys = set(range(-self.window, self.window + 1))
        if self.variant == "MTildeAlphaBeta":
            if not isinstance(self.base, H4Family):
                raise SpecInvalid("MTildeAlphaBeta needs a base H4 family")
            alpha = _fraction(self.alpha, "alpha")
            if alpha == 0:
                raise SpecInvalid("alpha must be non-zero")
            beta = _int_keyed(self.beta, lambda v, w: _fraction(v, w), "beta")
            beta.setdefault(0, Fraction(0))
            if beta[0] != 0:
                raise SpecInvalid("beta.0 must be 0")
            self._check_coverage(set(beta), keys, "beta")
            if self.fseq:
                raise SpecInvalid("f.<k> entries belong to MTildeF only")
            object.__setattr__(self, "alpha", alpha)
            object.__setattr__(self, "beta", tuple(sorted(beta.items())))
            object.__setattr__(self, "fseq", ())
        else:
            if self.base is not None or self.alpha is not None or self.beta:
                raise SpecInvalid("MTildeF takes only window and f.<k> entries")
            fseq = _int_keyed(self.fseq, lambda v, w: _poly_in(v, ("s",), w), "f")
            fseq.setdefault(0, Poly.var(("s",), "s"))
            if fseq[0] != Poly.var(("s",), "s"):
                raise SpecInvalid("f.0 must be s")
            self._check_coverage(set(fseq), keys, "f")
            object.__setattr__(self, "fseq", tuple(sorted(fseq.items())))

    @staticmethod
    def _check_coverage(have, want, name):
        missing = sorted(want - have)
        extra = sorted(have - want)
        if missing:
            raise SpecInvalid(f"{name}.{missing[0]} missing inside window")
        if extra:
            raise SpecInvalid(f"{name}.{extra[0]} lies outside the window")

    def beta_at(self, k: int) -> Fraction:
        return dict(self.beta)[k]

    def f_at(self, k: int) -> Poly:
        return dict(self.fseq)[k]


def mtilde(base: H4Family, alpha: Scalar, beta, window: int) -> AffineSpec:
    return AffineSpec("MTildeAlphaBeta", window, alpha=Fraction(alpha), base=base, beta=beta)


def mtilde_f(fseq, window: int) -> AffineSpec:
    return AffineSpec("MTildeF", window, fseq=fseq)


@dataclass(frozen=True)
class Vir00Spec:
    """Vir(0,0) module M(lambda, f) on Q[d0, w0]."""

    lam: Fraction
    fpoly: Poly

    def __post_init__(self):
        lam = _fraction(self.lam, "lambda")
        if lam == 0:
            raise SpecInvalid("lambda must be non-zero")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "fpoly", _poly_in(self.fpoly, ("w0",), "fpoly"))


@dataclass(frozen=True)
class AffVirSpec:
    """Affine-Virasoro module: a beta-free MTildeAlphaBeta plus d_n actions."""

    base: AffineSpec
    lambda_shift: Fraction

    def __post_init__(self):
        if not isinstance(self.base, AffineSpec) or self.base.variant != "MTildeAlphaBeta":
            raise SpecInvalid("affine-Virasoro base must be an MTildeAlphaBeta spec")
        if any(v != 0 for _, v in self.base.beta):
            raise SpecInvalid("beta must vanish for the affine-Virasoro family")
        object.__setattr__(self, "lambda_shift", _fraction(self.lambda_shift, "lambda"))


def affvir(base: H4Family, alpha: Scalar, lam: Scalar, window: int) -> AffVirSpec:
    zero_beta = {k: Fraction(0) for k in range(-window, window + 1)}
    inner = mtilde(base, alpha, zero_beta, window)
    return AffVirSpec(base=inner, lambda_shift=Fraction(lam))


@dataclass(frozen=True)
class ActionData:
    """Raw generator values on 1, detached from any family."""

    algebra: str
    window: int
    assignments: Tuple[Tuple[BasisSymbol, Poly], ...]

    def __post_init__(self):
        if self.algebra not in MODULE_VARIABLES:
            raise MalformedData(f"unknown algebra {self.algebra!r}")
        if not isinstance(self.window, int) or self.window < 0:
            raise MalformedData("window must be a non-negative integer")
        variables = MODULE_VARIABLES[self.algebra]
        if isinstance(self.assignments, Mapping):
            items = self.assignments.items()
        else:
            items = self.assignments
        seen = {}
        for symbol, value in items:
            if not isinstance(symbol, BasisSymbol):
                raise MalformedData(f"assignment key {symbol!r} is not a generator")
            check_in_algebra(self.algebra, symbol)
            if abs(symbol.loop_index) > self.window:
                raise MalformedData(
                    f"{format_symbol(symbol)} lies outside window {self.window}"
                )
            if symbol in seen:
                raise MalformedData(f"duplicate assignment for {format_symbol(symbol)}")
            if isinstance(value, Poly):
                try:
                    value = change_variables(value, variables)
                except Exception as exc:
                    raise MalformedData(
                        f"{format_symbol(symbol)} value must live in Q{list(variables)}"
                    ) from exc
            else:
                value = Poly.const(variables, Fraction(value))
            seen[symbol] = value
        ordered = tuple(sorted(seen.items(), key=lambda kv: sort_key(kv[0])))
        object.__setattr__(self, "assignments", ordered)

    def value(self, symbol: BasisSymbol) -> Poly:
        for key, poly in self.assignments:
            if key == symbol:
                return poly
        raise KeyError(symbol)

    def has(self, symbol: BasisSymbol) -> bool:
        return any(key == symbol for key, _ in self.assignments)

    def with_assignment(self, symbol: BasisSymbol, value) -> "ActionData":
        kept = [(k, v) for k, v in self.assignments if k != symbol]
        kept.append((symbol, value))
        return ActionData(self.algebra, self.window, tuple(kept))


AnySpec = Union[H4Family, AffineSpec, Vir00Spec, AffVirSpec, ActionData]


def algebra_of(spec: AnySpec) -> str:
    if isinstance(spec, H4Family):
        return H4
    if isinstance(spec, AffineSpec):
        return AFFINE_H4
    if isinstance(spec, Vir00Spec):
        return VIR00
    if isinstance(spec, AffVirSpec):
        return AFF_VIR
    if isinstance(spec, ActionData):
        return spec.algebra
    raise SpecInvalid(f"not a module spec: {spec!r}")


def module_variables(spec: AnySpec) -> Tuple[str, ...]:
    return MODULE_VARIABLES[algebra_of(spec)]


def spec_window(spec: AnySpec) -> Optional[int]:
    """Largest usable loop index; None when unbounded, 0 for plain H4."""
    if isinstance(spec, H4Family):
        return 0
    if isinstance(spec, AffineSpec):
        return spec.window
    if isinstance(spec, AffVirSpec):
        return spec.base.window
    if isinstance(spec, ActionData):
        return spec.window
    return None


def shift_of(algebra: str, symbol: BasisSymbol) -> Shift:
    """The variable shift the algebra forces on x's action, value aside."""
    kind, n = symbol.kind, symbol.loop_index
    s_off = {"p": -1, "q": 1}.get(kind, 0)
    if algebra == H4:
        return Shift.of(s=s_off)
    if algebra == AFFINE_H4:
        if kind in ("k", "d"):
            return SHIFT_IDENTITY
        return Shift.of(s=s_off, d=-n)
    if algebra == VIR00:
        if kind == "k":
            return SHIFT_IDENTITY
        return Shift.of(d0=-n)
    if algebra == AFF_VIR:
        if kind == "k":
            return SHIFT_IDENTITY
        if kind == "dvir":
            return Shift.of(d=-n)
        return Shift.of(s=s_off, d=-n)
    raise SpecInvalid(f"unknown algebra {algebra!r}")


@functools.lru_cache(maxsize=None)
def value_on_one(spec: AnySpec, symbol: BasisSymbol) -> Poly:
    """x.1 as a polynomial in the module variables."""
    algebra = algebra_of(spec)
    check_in_algebra(algebra, symbol)
    variables = MODULE_VARIABLES[algebra]
    kind, n = symbol.kind, symbol.loop_index

    if isinstance(spec, ActionData):
        if spec.has(symbol):
            return spec.value(symbol)
        if abs(n) > spec.window:
            raise WindowExceeded(f"{format_symbol(symbol)} outside window {spec.window}")
        raise MalformedData(f"no assignment for {format_symbol(symbol)}")

    if isinstance(spec, H4Family):
        p1, q1, r1 = h4_base_values(spec)
        if kind == "p":
            return p1
        if kind == "q":
            return q1
        if kind == "r":
            return Poly.const(variables, r1)
        return Poly.var(variables, "s")

    if isinstance(spec, AffineSpec):
        if kind == "k":
            return Poly.zero(variables)
        if kind == "d":
            return Poly.var(variables, "d")
        if abs(n) > spec.window:
            raise WindowExceeded(f"{format_symbol(symbol)} outside window {spec.window}")
        if spec.variant == "MTildeF":
            if kind == "s":
                return change_variables(spec.f_at(n), variables)
            return Poly.zero(variables)
        scale = spec.alpha ** n
        if kind == "s":
            return scale * Poly.var(variables, "s") + Poly.const(variables, spec.beta_at(n))
        p1, q1, r1 = h4_base_values(spec.base)
        if kind == "p":
            return scale * change_variables(p1, variables)
        if kind == "q":
            return scale * change_variables(q1, variables)
        return Poly.const(variables, scale * r1)

    if isinstance(spec, Vir00Spec):
        if kind == "k":
            return Poly.zero(variables)
        scale = spec.lam ** n
        if kind == "s":
            return scale * Poly.var(variables, "w0")
        f = change_variables(spec.fpoly, variables)
        return scale * (Poly.var(variables, "d0") + n * f)

    if isinstance(spec, AffVirSpec):
        if kind == "k":
            return Poly.zero(variables)
        if kind == "dvir":
            scale = spec.base.alpha ** n
            mu = n * scale * spec.lambda_shift
            return scale * Poly.var(variables, "d") + Poly.const(variables, mu)
        return value_on_one(spec.base, symbol)

    raise SpecInvalid(f"not a module spec: {spec!r}")


# Keyed by id(spec); the stored spec reference keeps the id stable.
_ACT_CACHE: dict = {}


def _act_monomial(spec: AnySpec, symbol: BasisSymbol, exps: Tuple[int, ...]) -> Poly:
    entry = _ACT_CACHE.get(id(spec))
    if entry is None or entry[0] is not spec:
        entry = (spec, {})
        _ACT_CACHE[id(spec)] = entry
    table = entry[1]
    key = (symbol, exps)
    cached = table.get(key)
    if cached is None:
        variables = module_variables(spec)
        value = value_on_one(spec, symbol)
        if value.is_zero():
            cached = value
        else:
            shift = shift_of(algebra_of(spec), symbol)
            cached = apply_shift(shift, Poly.monomial(variables, exps)) * value
        table[key] = cached
    return cached


def act(spec: AnySpec, x: Union[BasisSymbol, LieElement], v: Poly) -> Poly:
    """Evaluate x on v; linear in both x and v."""
    variables = module_variables(spec)
    acc: dict = {}
    if isinstance(x, LieElement):
        for symbol, coeff in x.terms:
            for exps, c in act(spec, symbol, v).terms:
                acc[exps] = acc.get(exps, _F0) + coeff * c
        return Poly(variables, acc)
    check_in_algebra(algebra_of(spec), x)
    if v.variables != variables:
        v = change_variables(v, variables)
    for exps, coeff in v.terms:
        for pexps, pcoeff in _act_monomial(spec, x, exps).terms:
            acc[pexps] = acc.get(pexps, _F0) + coeff * pcoeff
    return Poly(variables, acc)


def _typed(spec, cls, what: str):
    if not isinstance(spec, cls):
        raise SpecInvalid(f"expected {what}, got {type(spec).__name__}")


def act_h4(fam: H4Family, x, v: Poly) -> Poly:
    _typed(fam, H4Family, "an H4 family")
    return act(fam, x, v)


def act_affine(spec: AffineSpec, x, v: Poly) -> Poly:
    _typed(spec, AffineSpec, "an affine spec")
    return act(spec, x, v)


def act_vir00(spec: Vir00Spec, x, v: Poly) -> Poly:
    _typed(spec, Vir00Spec, "a Vir(0,0) spec")
    return act(spec, x, v)


def act_affvir(spec: AffVirSpec, x, v: Poly) -> Poly:
    _typed(spec, AffVirSpec, "an affine-Virasoro spec")
    return act(spec, x, v)


def _resolve_window(spec: AnySpec, window: Optional[int]) -> int:
    limit = spec_window(spec)
    if algebra_of(spec) == H4:
        # plain H4 has no loop directions; any requested window collapses
        return 0
    if window is None:
        # Vir00 carries no window of its own; 2 reaches the first nonzero cocycle.
        return limit if limit is not None else 2
    if limit is not None and window > limit:
        raise WindowExceeded(f"window {window} exceeds the spec's window {limit}")
    return window


def generators(spec: AnySpec, window: Optional[int] = None):
    """Basis symbols the spec can evaluate, in canonical order."""
    algebra = algebra_of(spec)
    w = _resolve_window(spec, window)
    loops = range(-w, w + 1)
    if isinstance(spec, ActionData):
        out = [key for key, _ in spec.assignments if abs(key.loop_index) <= w]
    elif algebra == H4:
        out = [P, Q, R, S]
    elif algebra == AFFINE_H4:
        out = [sym(kind, i) for kind in ("p", "q", "r", "s") for i in loops]
        out += [K, D]
    elif algebra == VIR00:
        out = [sym("dvir", i) for i in loops] + [sym("s", i) for i in loops] + [K]
    else:
        out = [sym(kind, i) for kind in ("p", "q", "r", "s") for i in loops]
        out += [sym("dvir", i) for i in loops] + [K]
    return sorted(out, key=sort_key)


def actions_of(spec: AnySpec, window: Optional[int] = None) -> ActionData:
    """Freeze the spec's generator values on 1 into raw data."""
    if isinstance(spec, ActionData):
        return spec
    w = _resolve_window(spec, window)
    table = {x: value_on_one(spec, x) for x in generators(spec, w)}
    return ActionData(algebra_of(spec), w, tuple(table.items()))
