"""Exact integer Laurent polynomials in one variable ``t``.

Values are immutable.  Internally a polynomial is a valuation plus a dense
tuple of coefficients with nonzero ends; large products are computed by
Kronecker substitution so Python's big-integer multiplication does the work.
"""
from __future__ import annotations

import json
import re
from typing import Iterable, Mapping

from .errors import InexactDivision, ZeroPolynomial

# Below this length schoolbook multiplication beats packing.
_KRONECKER_MIN = 12


def _digit_bytes(bits: int) -> int:
    return (bits + 7) // 8


def kronecker_pack(coeffs, nbytes: int) -> int:
    """Evaluate ``sum c_i X**i`` at ``X = 256**nbytes``.

    Every coefficient must satisfy ``|c| < 2**(8*nbytes - 1)``.
    """
    half = 1 << (8 * nbytes - 1)
    buf = b"".join((c + half).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(buf, "little") - _bias(len(coeffs), nbytes)


def kronecker_unpack(value: int, n: int, nbytes: int) -> list[int]:
    """Inverse of :func:`kronecker_pack` for ``n`` balanced digits."""
    half = 1 << (8 * nbytes - 1)
    shifted = value + _bias(n, nbytes)
    if shifted < 0 or shifted.bit_length() > 8 * nbytes * n:
        raise OverflowError("value does not fit the requested digit layout")
    raw = shifted.to_bytes(n * nbytes, "little")
    return [
        int.from_bytes(raw[i:i + nbytes], "little") - half
        for i in range(0, n * nbytes, nbytes)
    ]


def _bias(n: int, nbytes: int) -> int:
    chunk = b"\x00" * (nbytes - 1) + b"\x80"
    return int.from_bytes(chunk * n, "little")


def _max_bits(coeffs) -> int:
    return max((abs(c).bit_length() for c in coeffs), default=0)


def _mul_dense(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    bits = _max_bits(a) + _max_bits(b) + min(len(a), len(b)).bit_length() + 2
    nbytes = _digit_bytes(bits)
    prod = kronecker_pack(a, nbytes) * kronecker_pack(b, nbytes)
    return kronecker_unpack(prod, len(a) + len(b) - 1, nbytes)


class IntLaurent:
    """A Laurent polynomial in ``t`` with integer coefficients.

    >>> t = IntLaurent.t()
    >>> (1 + t) * (1 - t)
    IntLaurent('1 - t^2')
    """

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, low: int = 0, coeffs: Iterable[int] = ()):
        coeffs = list(coeffs)
        lo, hi = 0, len(coeffs)
        while lo < hi and coeffs[lo] == 0:
            lo += 1
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.low = 0
            self.coeffs: tuple[int, ...] = ()
        else:
            self.low = low + lo
            self.coeffs = tuple(int(c) for c in coeffs[lo:hi])
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Mapping[int, int] | Iterable[tuple[int, int]]) -> IntLaurent:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        acc = {e: c for e, c in acc.items() if c}
        if not acc:
            return cls()
        lo, hi = min(acc), max(acc)
        return cls(lo, [acc.get(e, 0) for e in range(lo, hi + 1)])

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> IntLaurent:
        return cls(exponent, (coeff,))

    @classmethod
    def constant(cls, c: int) -> IntLaurent:
        return cls(0, (c,))

    @classmethod
    def t(cls) -> IntLaurent:
        return cls(1, (1,))

    @classmethod
    def coerce(cls, other) -> IntLaurent:
        if isinstance(other, IntLaurent):
            return other
        if isinstance(other, int):
            return cls(0, (other,))
        return NotImplemented

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> dict[int, int]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def term_list(self) -> list[list[int]]:
        """Ascending ``[exponent, coefficient]`` pairs; the serialized form."""
        return [[e, c] for e, c in sorted(self.terms().items())]

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no valuation")
        return self.low

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no degree")
        return self.low + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def coefficient(self, exponent: int) -> int:
        i = exponent - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def __call__(self, x):
        """Evaluate at ``x``; negative powers need an invertible ``x``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc * x ** self.low if self.low >= 0 else acc / x ** (-self.low)

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] in (1, -1)

    # -- ring operations ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntLaurent.constant(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    def __neg__(self):
        return IntLaurent(self.low, [-c for c in self.coeffs])

    def __add__(self, other):
        other = IntLaurent.coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs, self.low - lo):
            out[i] += c
        for i, c in enumerate(other.coeffs, other.low - lo):
            out[i] += c
        return IntLaurent(lo, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = IntLaurent.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = IntLaurent.coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = IntLaurent.coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntLaurent()
        return IntLaurent(self.low + other.low, _mul_dense(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_unit():
                return IntLaurent(-self.low * (-n), (self.coeffs[0] ** (-n),))
            raise ValueError("negative power of a non-unit")
        result = IntLaurent.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> IntLaurent:
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return IntLaurent(self.low + k, self.coeffs)

    def scale(self, c: int) -> IntLaurent:
        return IntLaurent(self.low, [c * x for x in self.coeffs])

    def substitute_neg(self) -> IntLaurent:
        """The polynomial ``p(-t)``."""
        return IntLaurent(
            self.low,
            [c if (self.low + i) % 2 == 0 else -c for i, c in enumerate(self.coeffs)],
        )

    def substitute_power(self, k: int) -> IntLaurent:
        """The polynomial ``p(t**k)`` for ``k >= 1``."""
        return IntLaurent.from_terms({e * k: c for e, c in self.terms().items()})

    def __floordiv__(self, other):
        return exact_div(self, IntLaurent.coerce(other))

    # -- display ------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"IntLaurent('{format_poly(self, compact=True)}')"

    def to_json(self) -> str:
        return json.dumps(self.term_list())

    @classmethod
    def from_json(cls, text: str) -> IntLaurent:
        return cls.from_terms((e, c) for e, c in json.loads(text))

    @classmethod
    def parse(cls, text: str) -> IntLaurent:
        return parse_poly(text)


# -- free functions ------------------------------------------------------------


def laurent_mul(a: IntLaurent, b: IntLaurent) -> IntLaurent:
    return a * b


def _long_division(num: IntLaurent, den: IntLaurent) -> IntLaurent:
    # Division from the lowest exponent; the lowest coefficient of den must
    # divide each successive leading remainder coefficient.
    rem = list(num.coeffs)
    dc = den.coeffs
    d0 = dc[0]
    n_quot = len(rem) - len(dc) + 1
    if n_quot <= 0:
        raise InexactDivision(f"{num} is not divisible by {den}")
    quot = [0] * n_quot
    for i in range(n_quot):
        r = rem[i]
        if r == 0:
            continue
        qc, leftover = divmod(r, d0)
        if leftover:
            raise InexactDivision(f"{num} is not divisible by {den}")
        quot[i] = qc
        for j, c in enumerate(dc):
            rem[i + j] -= qc * c
    if any(rem[n_quot:]):
        raise InexactDivision(f"{num} is not divisible by {den}")
    return IntLaurent(num.low - den.low, quot)


def exact_div(num: IntLaurent, den: IntLaurent) -> IntLaurent:
    """Return ``q`` with ``num == q * den``; raise :class:`InexactDivision` otherwise."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return IntLaurent()
    if len(den.coeffs) == 1:
        c = den.coeffs[0]
        if any(x % c for x in num.coeffs):
            raise InexactDivision(f"{num} is not divisible by {den}")
        return IntLaurent(num.low - den.low, [x // c for x in num.coeffs])
    n_quot = len(num.coeffs) - len(den.coeffs) + 1
    if n_quot <= 0:
        raise InexactDivision(f"{num} is not divisible by {den}")
    if min(n_quot, len(den.coeffs)) >= _KRONECKER_MIN:
        # Fast path: divide the Kronecker images, then confirm by multiplying back.
        bits = _max_bits(num.coeffs) + len(num.coeffs).bit_length() + 16
        nbytes = _digit_bytes(bits)
        q, r = divmod(kronecker_pack(num.coeffs, nbytes), kronecker_pack(den.coeffs, nbytes))
        if r == 0:
            try:
                cand = IntLaurent(num.low - den.low, kronecker_unpack(q, n_quot, nbytes))
            except OverflowError:
                cand = None
            if cand is not None and cand * den == num:
                return cand
    return _long_division(num, den)


laurent_exact_div = exact_div


def canonical_unit_normalize(a: IntLaurent, ell: int) -> IntLaurent:
    """Pick the representative of ``a`` up to ``±t**(r*ell)``.

    The result has its lowest exponent in ``[0, ell)`` and a positive lowest
    coefficient.
    """
    if a.is_zero():
        raise ZeroPolynomial("the zero polynomial has no canonical unit form")
    shifted = a.shift(-ell * (a.low // ell))
    return -shifted if shifted.coeffs[0] < 0 else shifted


def unit_between(a: IntLaurent, b: IntLaurent) -> tuple[int, int] | None:
    """Return ``(sign, k)`` with ``a == sign * t**k * b``, or ``None``."""
    if a.is_zero() or b.is_zero() or len(a.coeffs) != len(b.coeffs):
        return None
    if a.coeffs == b.coeffs:
        sign = 1
    elif a.coeffs == tuple(-c for c in b.coeffs):
        sign = -1
    else:
        return None
    return sign, a.low - b.low


def mod_ell_reduce(a: IntLaurent, ell: int) -> IntLaurent:
    """Reduce coefficients into ``{0, ..., ell-1}``, dropping zeros."""
    return IntLaurent(a.low, [c % ell for c in a.coeffs])


def mod_ell_mul(a: IntLaurent, b: IntLaurent, ell: int) -> IntLaurent:
    return mod_ell_reduce(a * b, ell)


def mod_ell_pow(a: IntLaurent, n: int, ell: int) -> IntLaurent:
    result = IntLaurent.constant(1)
    base = mod_ell_reduce(a, ell)
    while n:
        if n & 1:
            result = mod_ell_mul(result, base, ell)
        n >>= 1
        if n:
            base = mod_ell_mul(base, base, ell)
    return result


def mod_ell_exact_div(num: IntLaurent, den: IntLaurent, ell: int) -> IntLaurent:
    """Exact division of Laurent polynomials over the field with ``ell`` elements."""
    num = mod_ell_reduce(num, ell)
    den = mod_ell_reduce(den, ell)
    if den.is_zero():
        raise ZeroDivisionError("divisor vanishes modulo ell")
    if num.is_zero():
        return IntLaurent()
    rem = list(num.coeffs)
    dc = den.coeffs
    inv = pow(dc[0], -1, ell)
    n_quot = len(rem) - len(dc) + 1
    if n_quot <= 0:
        raise InexactDivision(f"{num} is not divisible by {den} mod {ell}")
    quot = [0] * n_quot
    for i in range(n_quot):
        r = rem[i] % ell
        if r == 0:
            continue
        qc = r * inv % ell
        quot[i] = qc
        for j, c in enumerate(dc):
            rem[i + j] -= qc * c
    if any(x % ell for x in rem[n_quot:]):
        raise InexactDivision(f"{num} is not divisible by {den} mod {ell}")
    return IntLaurent(num.low - den.low, quot)


# -- text format ---------------------------------------------------------------


def format_poly(a: IntLaurent, compact: bool = False) -> str:
    """Ascending display.

    The default form prints every exponent (``5*t^0 - 7*t^1``) so output is
    stable under diffing; ``compact`` gives the usual human form.
    """
    if a.is_zero():
        return "0"
    parts = []
    for e, c in sorted(a.terms().items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if compact:
            if e == 0:
                body = str(mag)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = f"{mag}*t^{e}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+)\s*\*?\s*)?
        (?P<var>t(?:\s*\^\s*(?P<exp>\(?-?\d+\)?))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> IntLaurent:
    """Parse either text display form, e.g. ``-t^-1 + 5 - 7*t^1``."""
    text = text.strip()
    if text == "0":
        return IntLaurent()
    pos = 0
    acc: dict[int, int] = {}
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        c = int(m.group("coef")) if m.group("coef") else 1
        if m.group("sign") == "-":
            c = -c
        if m.group("var"):
            e = int(m.group("exp").strip("()")) if m.group("exp") else 1
        else:
            e = 0
        acc[e] = acc.get(e, 0) + c
        pos = m.end()
    return IntLaurent.from_terms(acc)
