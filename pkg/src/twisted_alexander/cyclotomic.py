"""Cyclotomic integers and Laurent polynomials over them.

``CycInt`` is an element of ``Z[x] / Phi_ell(x)`` in the power basis
``1, x, ..., x**(ell-2)``; ``x`` plays the role of a primitive ``ell``-th root
of unity ``lambda``.  Reduction is modulo ``Phi_ell`` rather than ``x**ell - 1``
because only the former is an integral domain.
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping

from .errors import MismatchedEll, NotCoprime, NotLambdaFree
from .laurent import IntLaurent, kronecker_pack, kronecker_unpack


def _reduce_cyclic(v: list[int], ell: int) -> tuple[int, ...]:
    """Map a coefficient vector of any length to canonical Phi_ell coordinates."""
    folded = [0] * ell
    for i, c in enumerate(v):
        folded[i % ell] += c
    top = folded[ell - 1]
    return tuple(c - top for c in folded[: ell - 1])


class CycInt:
    """Element of the ring of integers of the ``ell``-th cyclotomic field."""

    __slots__ = ("ell", "coords")

    def __init__(self, ell: int, coords: Iterable[int]):
        coords = list(coords)
        self.ell = ell
        if len(coords) == ell - 1:
            self.coords = tuple(coords)
        else:
            self.coords = _reduce_cyclic(coords, ell)

    @classmethod
    def from_int(cls, ell: int, n: int) -> CycInt:
        return cls(ell, [n] + [0] * (ell - 2))

    @classmethod
    def zeta_power(cls, ell: int, k: int, coeff: int = 1) -> CycInt:
        """``coeff * lambda**k``."""
        v = [0] * ell
        v[k % ell] = coeff
        return cls(ell, _reduce_cyclic(v, ell))

    def _check(self, other: CycInt):
        if self.ell != other.ell:
            raise MismatchedEll(f"ell {self.ell} vs {other.ell}")

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.ell == other.ell and self.coords == other.coords

    def __hash__(self):
        return hash((self.ell, self.coords))

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.ell, other)
        self._check(other)
        return CycInt(self.ell, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.ell, tuple(-a for a in self.coords))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.ell, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.ell, tuple(other * a for a in self.coords))
        self._check(other)
        ell = self.ell
        v = [0] * ell
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    v[(i + j) % ell] += a * b
        return CycInt(ell, _reduce_cyclic(v, ell))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = CycInt.from_int(self.ell, 1)
        for _ in range(n):
            result = result * self
        return result

    def substitute(self, i: int) -> CycInt:
        """Apply the Galois automorphism ``lambda -> lambda**i``."""
        if gcd(i, self.ell) != 1:
            raise NotCoprime(f"{i} is not coprime to {self.ell}")
        v = [0] * self.ell
        for j, a in enumerate(self.coords):
            v[(i * j) % self.ell] += a
        return CycInt(self.ell, _reduce_cyclic(v, self.ell))

    def conjugate(self) -> CycInt:
        return self.substitute(self.ell - 1)

    def __repr__(self):
        return f"CycInt({self.ell}, {list(self.coords)})"

    def __str__(self):
        parts = []
        for j, a in enumerate(self.coords):
            if a:
                parts.append(f"{a}" if j == 0 else f"{a}*L^{j}")
        return " + ".join(parts) if parts else "0"


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


class CycLaurent:
    """Laurent polynomial in ``t`` with ``CycInt`` coefficients over a fixed ``ell``."""

    __slots__ = ("ell", "_terms")

    def __init__(self, ell: int, terms: Mapping[int, CycInt] | None = None):
        self.ell = ell
        clean = {}
        for e, c in (terms or {}).items():
            if c.ell != ell:
                raise MismatchedEll(f"coefficient over {c.ell} in a polynomial over {ell}")
            if not c.is_zero():
                clean[e] = c
        self._terms = clean

    @classmethod
    def from_vectors(cls, ell: int, vectors: Mapping[int, list[int]]) -> CycLaurent:
        """Build from raw (unreduced, any length) coefficient vectors in ``lambda``."""
        return cls(ell, {e: CycInt(ell, _reduce_cyclic(v, ell)) for e, v in vectors.items()})

    @classmethod
    def from_int_laurent(cls, p: IntLaurent, ell: int) -> CycLaurent:
        return cls(ell, {e: CycInt.from_int(ell, c) for e, c in p.terms().items()})

    @classmethod
    def monomial(cls, ell: int, t_exp: int, lambda_exp: int, coeff: int = 1) -> CycLaurent:
        return cls(ell, {t_exp: CycInt.zeta_power(ell, lambda_exp, coeff)})

    def terms(self) -> dict[int, CycInt]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, e: int) -> CycInt:
        return self._terms.get(e, CycInt.from_int(self.ell, 0))

    def _coerce(self, other) -> CycLaurent:
        if isinstance(other, CycLaurent):
            if other.ell != self.ell:
                raise MismatchedEll(f"ell {self.ell} vs {other.ell}")
            return other
        if isinstance(other, IntLaurent):
            return CycLaurent.from_int_laurent(other, self.ell)
        if isinstance(other, int):
            return CycLaurent.from_int_laurent(IntLaurent.constant(other), self.ell)
        if isinstance(other, CycInt):
            return CycLaurent(self.ell, {0: other})
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (IntLaurent, int)):
            other = self._coerce(other)
        if not isinstance(other, CycLaurent):
            return NotImplemented
        return self.ell == other.ell and self._terms == other._terms

    def __hash__(self):
        return hash((self.ell, frozenset(self._terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return CycLaurent(self.ell, out)

    __radd__ = __add__

    def __neg__(self):
        return CycLaurent(self.ell, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return CycLaurent(self.ell)
        return _mul_cyc_laurent(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = CycLaurent.from_int_laurent(IntLaurent.constant(1), self.ell)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> CycLaurent:
        return CycLaurent(self.ell, {e + k: c for e, c in self._terms.items()})

    def substitute(self, i: int) -> CycLaurent:
        """Apply ``lambda -> lambda**i`` coefficientwise."""
        if gcd(i, self.ell) != 1:
            raise NotCoprime(f"{i} is not coprime to {self.ell}")
        return CycLaurent(self.ell, {e: c.substitute(i) for e, c in self._terms.items()})

    def conjugate(self) -> CycLaurent:
        return self.substitute(self.ell - 1)

    def evaluate_t(self, x: int) -> CycInt:
        """Value at the integer ``t = x`` (``x = ±1`` for Laurent terms)."""
        acc = CycInt.from_int(self.ell, 0)
        for e, c in self._terms.items():
            if e < 0 and x not in (1, -1):
                raise ValueError("negative exponents need t = ±1")
            acc = acc + c * (x ** abs(e))
        return acc

    def is_lambda_free(self) -> bool:
        return all(c.is_rational() for c in self._terms.values())

    def __repr__(self):
        return f"CycLaurent({self.ell}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*t^{e}" for e, c in sorted(self._terms.items()))

    def serialize(self) -> list:
        return [[e, list(c.coords)] for e, c in sorted(self._terms.items())]

    @classmethod
    def deserialize(cls, ell: int, data) -> CycLaurent:
        return cls(ell, {int(e): CycInt(ell, coords) for e, coords in data})


def _mul_cyc_laurent(a: CycLaurent, b: CycLaurent) -> CycLaurent:
    # Pack t**e * x**j as y**(e*W + j) and multiply as integer polynomials.
    ell = a.ell
    width = 2 * ell - 3
    a_lo, b_lo = min(a._terms), min(b._terms)
    a_flat = _flatten(a, a_lo, width)
    b_flat = _flatten(b, b_lo, width)
    bits = (
        max(abs(c) for c in a_flat).bit_length()
        + max(abs(c) for c in b_flat).bit_length()
        + min(len(a_flat), len(b_flat)).bit_length()
        + 2
    )
    nbytes = (bits + 7) // 8
    n = len(a_flat) + len(b_flat) - 1
    prod = kronecker_unpack(kronecker_pack(a_flat, nbytes) * kronecker_pack(b_flat, nbytes), n, nbytes)
    out = {}
    base = a_lo + b_lo
    for block in range(0, (n + width - 1) // width):
        chunk = prod[block * width:(block + 1) * width]
        if any(chunk):
            out[base + block] = CycInt(ell, _reduce_cyclic(chunk, ell))
    return CycLaurent(ell, out)


def _flatten(p: CycLaurent, lo: int, width: int) -> list[int]:
    hi = max(p._terms)
    flat = [0] * ((hi - lo) * width + p.ell - 1)
    for e, c in p._terms.items():
        off = (e - lo) * width
        flat[off:off + p.ell - 1] = c.coords
    return flat


def cyc_laurent_substitute(a: CycLaurent, i: int) -> CycLaurent:
    return a.substitute(i)


def lambda_free_part(a: CycLaurent) -> IntLaurent:
    """Return ``a`` as an integer Laurent polynomial; raise if any coefficient involves ``lambda``."""
    out = {}
    for e, c in a.terms().items():
        if not c.is_rational():
            raise NotLambdaFree(f"coefficient of t^{e} is {c}")
        out[e] = c.coords[0]
    return IntLaurent.from_terms(out)
