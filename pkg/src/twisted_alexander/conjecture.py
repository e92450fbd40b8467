"""Mechanical check of the conjectured shape of the ell-twisted Alexander polynomial.

For a knot with Alexander polynomial ``Delta`` and twisted polynomial ``Dt`` the
claim is ``Dt = Delta / (t-1) * f(t) f(-t)`` for some integer Laurent ``f``
with ``f = (Delta / (t+1))^((ell-1)/2)`` modulo ``ell``, both up to units.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InexactDivision, NotDivisibleModEll
from .laurent import (
    IntLaurent,
    exact_div,
    mod_ell_exact_div,
    mod_ell_pow,
    mod_ell_reduce,
    unit_between,
)
from .twisted import TwistedResult
from .twobridge import TwoBridgeFraction

T = IntLaurent.t()


@dataclass(frozen=True)
class Unit:
    """``sign * t**exponent``."""

    sign: int
    exponent: int

    def is_ell_unit(self, ell: int) -> bool:
        return self.exponent % ell == 0

    def as_laurent(self) -> IntLaurent:
        return IntLaurent.monomial(self.exponent, self.sign)

    def __str__(self):
        return f"{'+' if self.sign > 0 else '-'}t^{self.exponent}"


def unit_window(g: IntLaurent, ell: int) -> int:
    """Bound ``R`` on ``|r|`` for units ``±t^(r ell)``: ``2 + span(g) // ell``."""
    return 2 + g.span // ell


def quotient_g(result: TwistedResult) -> IntLaurent:
    """``g`` with ``g * Delta = Dt * (t - 1)``; raises InexactDivision otherwise."""
    return exact_div(result.twisted * (T - 1), result.delta)


def f_times_f_neg(f: IntLaurent) -> IntLaurent:
    return f * f.substitute_neg()


def _unit_mod(a: IntLaurent, b: IntLaurent, ell: int) -> Unit | None:
    """``u`` with ``a = u * b`` modulo ``ell``, if any."""
    a, b = mod_ell_reduce(a, ell), mod_ell_reduce(b, ell)
    found = unit_between(a, b)
    if found is not None:
        return Unit(*found)
    found = unit_between(a, mod_ell_reduce(-b, ell))
    if found is not None:
        return Unit(-1, found[1])
    return None


def _within(unit: Unit | None, ell: int, window: int) -> bool:
    return unit is not None and unit.is_ell_unit(ell) and abs(unit.exponent // ell) <= window


def check_form(g: IntLaurent, f: IntLaurent, ell: int, window: int | None = None):
    """Whether ``g = ±t^(r ell) f(t) f(-t)`` with ``|r|`` inside the window.

    Returns ``(holds, unit)``.  The unit relating the two sides is unique when
    it exists, so it is reported even when its exponent is not a multiple of
    ``ell`` (in which case ``holds`` is false).
    """
    if g.is_zero() or f.is_zero():
        return False, None
    found = unit_between(g, f_times_f_neg(f))
    unit = Unit(*found) if found else None
    if window is None:
        window = unit_window(g, ell)
    return _within(unit, ell, window), unit


def reduced_target(delta: IntLaurent, ell: int) -> IntLaurent:
    """``(Delta / (1+t))^((ell-1)/2)`` computed over the field with ``ell`` elements."""
    try:
        h = mod_ell_exact_div(delta, 1 + T, ell)
    except InexactDivision as exc:
        raise NotDivisibleModEll(f"Delta is not divisible by 1+t modulo {ell}") from exc
    return mod_ell_pow(h, (ell - 1) // 2, ell)


def check_congruence(f: IntLaurent, delta: IntLaurent, ell: int, window: int | None = None):
    """Whether ``f = ±t^(r ell) (Delta/(1+t))^((ell-1)/2)`` modulo ``ell``.

    Returns ``(holds, unit)``; raises NotDivisibleModEll when ``1+t`` does not
    divide ``Delta`` modulo ``ell``.
    """
    target = reduced_target(delta, ell)
    unit = _unit_mod(f, target, ell)
    if window is None:
        window = unit_window(f, ell)
    return _within(unit, ell, window), unit


def g_evenness(g: IntLaurent) -> bool:
    return g.substitute_neg() == g


@dataclass
class ConjectureReport:
    fraction: TwoBridgeFraction
    ell: int
    delta: IntLaurent
    twisted: IntLaurent
    f: IntLaurent | None
    g: IntLaurent | None
    form_holds: bool
    congruence_holds: bool
    form_unit: Unit | None
    congruence_unit: Unit | None
    g_is_even: bool | None
    notes: list[str] = field(default_factory=list)

    @property
    def strong(self) -> bool:
        """Both clauses hold with units of the shape ``±t^(r ell)``."""
        return self.form_holds and self.congruence_holds

    @property
    def weak(self) -> bool:
        """Both clauses hold once arbitrary units ``±t^c`` are allowed."""
        return self.form_unit is not None and self.congruence_unit is not None

    @property
    def verdict(self) -> str:
        if self.strong:
            return "strong"
        if self.weak:
            return "weak"
        return "fail"


def verify_conjecture(result: TwistedResult, f: IntLaurent | None) -> ConjectureReport:
    ell = result.ell
    notes: list[str] = []
    try:
        g = quotient_g(result)
    except InexactDivision:
        g = None
        notes.append("Delta does not divide Dt * (t-1)")
    form_holds = congruence_holds = False
    form_unit = congruence_unit = None
    if f is None:
        notes.append("no f supplied; only g is reported")
    else:
        if g is not None:
            form_holds, form_unit = check_form(g, f, ell)
            if form_unit is None:
                notes.append("g is not a unit multiple of f(t) f(-t)")
        try:
            congruence_holds, congruence_unit = check_congruence(f, result.delta, ell)
            if congruence_unit is None:
                notes.append("f is not congruent to a unit multiple of (Delta/(1+t))^((ell-1)/2)")
        except NotDivisibleModEll as exc:
            notes.append(str(exc))
    even = g_evenness(g) if g is not None else None
    if form_holds and not even:
        notes.append("inconsistent: form holds but g is not even")
    return ConjectureReport(
        fraction=result.fraction,
        ell=ell,
        delta=result.delta,
        twisted=result.twisted,
        f=f,
        g=g,
        form_holds=form_holds,
        congruence_holds=congruence_holds,
        form_unit=form_unit,
        congruence_unit=congruence_unit,
        g_is_even=even,
        notes=notes,
    )
