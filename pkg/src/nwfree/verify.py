"""Mechanical check of the module axiom against the bracket tables.

For every unordered generator pair (x, y) inside a loop window and every
monomial v up to a test degree, the residual

    act(x, act(y, v)) - act(y, act(x, v)) - act([x, y], v)

must vanish identically.  Pairs whose bracket lands outside the spec's
own window cannot be evaluated and are recorded as skipped rather than
silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from .exactpoly import Poly, format_poly, monomials_upto
from .liealg import BasisSymbol, bracket, format_symbol
from .modfam import (
    ActionData,
    AffVirSpec,
    AnySpec,
    SpecInvalid,
    Vir00Spec,
    WindowExceeded,
    act,
    algebra_of,
    generators,
    module_variables,
    _resolve_window,
)

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"


@dataclass(frozen=True)
class ReportEntry:
    x: BasisSymbol
    y: BasisSymbol
    test_poly: Poly
    residual: Poly
    status: str

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def skipped(self) -> bool:
        return self.status == SKIP


@dataclass(frozen=True)
class VerificationReport:
    algebra: str
    window: int
    test_degree: int
    entries: Tuple[ReportEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.status != FAIL for e in self.entries)

    @property
    def checked(self) -> int:
        return sum(1 for e in self.entries if e.status != SKIP)

    @property
    def skipped(self) -> int:
        return sum(1 for e in self.entries if e.status == SKIP)

    def failures(self) -> Tuple[ReportEntry, ...]:
        return tuple(e for e in self.entries if e.status == FAIL)


def verify_module(spec: AnySpec, window: int = 3, test_degree: int = 3) -> VerificationReport:
    """Check the axiom over pairs within `window` and monomials up to `test_degree`.

    Raises WindowExceeded only when the spec's own window is smaller
    than the requested one.
    """
    if not isinstance(window, int) or window < 1:
        raise SpecInvalid("window must be at least 1")
    if not isinstance(test_degree, int) or test_degree < 1:
        raise SpecInvalid("test degree must be at least 1")
    algebra = algebra_of(spec)
    gens = generators(spec, window)
    monos = monomials_upto(module_variables(spec), test_degree)
    zero = Poly.zero(module_variables(spec))
    entries = []
    for i, x in enumerate(gens):
        for y in gens[i + 1:]:
            br = bracket(algebra, x, y)
            for v in monos:
                try:
                    residual = (
                        act(spec, x, act(spec, y, v))
                        - act(spec, y, act(spec, x, v))
                        - act(spec, br, v)
                    )
                    status = PASS if residual.is_zero() else FAIL
                except WindowExceeded:
                    residual = zero
                    status = SKIP
                entries.append(ReportEntry(x, y, v, residual, status))
    return VerificationReport(algebra, _resolve_window(spec, window), test_degree, tuple(entries))


def verify_vir(spec: Union[Vir00Spec, AffVirSpec, ActionData], window: int = 3, test_degree: int = 3) -> VerificationReport:
    """verify_module restricted to the Virasoro-type specs."""
    from .liealg import VIR00, AFF_VIR

    ok = isinstance(spec, (Vir00Spec, AffVirSpec)) or (
        isinstance(spec, ActionData) and spec.algebra in (VIR00, AFF_VIR)
    )
    if not ok:
        raise SpecInvalid("verify_vir expects a Vir(0,0) or affine-Virasoro spec")
    return verify_module(spec, window, test_degree)


def format_report(report: VerificationReport) -> str:
    lines = []
    for e in report.entries:
        lines.append(
            "PAIR {} {} POLY {} RESIDUAL {} {}".format(
                format_symbol(e.x, report.algebra),
                format_symbol(e.y, report.algebra),
                format_poly(e.test_poly),
                format_poly(e.residual),
                e.status,
            )
        )
    lines.append(
        "SUMMARY pass={} checked={} skipped={}".format(
            "true" if report.passed else "false", report.checked, report.skipped
        )
    )
    return "\n".join(lines)
