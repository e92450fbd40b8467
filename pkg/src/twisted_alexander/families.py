"""Closed forms and recursive families of 2-bridge knots.

Covers torus knots ``K_{1/q}``, genus-one knots, the ``q -> q + 2 k ell p``
recursion, the ``(p, q) -> (p + 2 ell j r1, q + 2 ell j a1 r1)`` cluster shift,
root fractions and the tabulated family polynomials ``f(t)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from math import gcd
from pathlib import Path

from .conjecture import ConjectureReport, verify_conjecture
from .cyclotomic import CycLaurent
from .errors import EllDoesNotDivideQ, JRestricted
from .laurent import IntLaurent, canonical_unit_normalize, exact_div, mod_ell_reduce
from .twisted import alexander, d_e_polynomials, twisted_alexander_product
from .twobridge import TwoBridgeFraction, check_ell

T = IntLaurent.t()


def alpha_k(ell: int, k: int) -> IntLaurent:
    """``1 + t^(2 ell) + ... + t^(2 ell (k-1))``; zero for ``k = 0``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return IntLaurent.from_terms({2 * ell * i: 1 for i in range(k)})


@dataclass(frozen=True)
class AlphaPoly:
    """Polynomial in ``t`` (Laurent) and a formal ``alpha``, as ``{(t_exp, alpha_deg): coeff}``."""

    terms: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_triples(cls, triples) -> AlphaPoly:
        acc: dict[tuple[int, int], int] = {}
        for te, ad, c in triples:
            acc[(te, ad)] = acc.get((te, ad), 0) + c
        return cls(tuple(sorted((te, ad, c) for (te, ad), c in acc.items() if c)))

    def coefficient_in_alpha(self, deg: int) -> IntLaurent:
        return IntLaurent.from_terms({te: c for te, ad, c in self.terms if ad == deg})

    @property
    def alpha_degree(self) -> int:
        return max((ad for _, ad, _ in self.terms), default=0)

    def substitute(self, ell: int, k: int) -> IntLaurent:
        """Replace ``alpha`` by ``alpha_k``."""
        a = alpha_k(ell, k)
        out = IntLaurent()
        power = IntLaurent.constant(1)
        for deg in range(self.alpha_degree + 1):
            out = out + self.coefficient_in_alpha(deg) * power
            power = power * a
        return out


# -- torus knots ---------------------------------------------------------------


def torus_f(q: int, ell: int) -> IntLaurent:
    """``(1+t)(1+t^q)^((ell-1)/2) / (1+t^ell)``."""
    check_ell(ell, q)
    half = (ell - 1) // 2
    return exact_div((1 + T) * (1 + T ** q) ** half, 1 + T ** ell)


def torus_twisted(q: int, ell: int) -> IntLaurent:
    check_ell(ell, q)
    half = (ell - 1) // 2
    delta = exact_div(1 + T ** q, 1 + T)
    plus = torus_f(q, ell)
    minus = exact_div((1 - T) * (1 - T ** q) ** half, 1 - T ** ell)
    return exact_div(delta * plus * minus, T - 1)


# -- genus one -----------------------------------------------------------------


def genus_one_fraction(r: int, s: int, sign: int) -> TwoBridgeFraction:
    """``(4rs - 2s + sign) / (4rs + sign)``."""
    if sign not in (1, -1) or r < 1 or s < 1:
        raise ValueError("need r, s >= 1 and sign = ±1")
    return TwoBridgeFraction(4 * r * s - 2 * s + sign, 4 * r * s + sign)


def genus_one_sigma(r: int, s: int, sign: int) -> tuple[int, ...]:
    """Segment lengths: runs of ones separated by ``2s - 1`` isolated twos."""
    genus_one_fraction(r, s, sign)
    inner = [1] * (2 * r - 2)
    outer = [1] * (2 * r - 1) if sign == 1 else inner
    seq = list(outer)
    for n in range(2 * s - 1):
        seq.append(2)
        seq.extend(outer if n == 2 * s - 2 else inner)
    return tuple(seq)


def genus_one_parameters(f: TwoBridgeFraction) -> tuple[int, int, int] | None:
    """``(r, s, sign)`` with ``f = genus_one_fraction(r, s, sign)``, if any."""
    s = (f.q - f.p) // 2
    for sign in (1, -1):
        rs, rem = divmod(f.q - sign, 4)
        if rem == 0 and rs % s == 0 and f.p == 4 * rs - 2 * s + sign:
            return rs // s, s, sign
    return None


def genus_one_alexander(r: int, s: int, sign: int) -> IntLaurent:
    rs = r * s
    if sign == -1:
        return IntLaurent(0, (rs, -(2 * rs - 1), rs))
    return IntLaurent(-1, (-rs, 2 * rs + 1, -rs))


def genus_one_f(r: int, s: int, sign: int, ell: int) -> IntLaurent:
    half = (ell - 1) // 2
    f = (1 + T) ** half
    return f if sign == -1 else f.shift(-half)


def genus_one_twisted(r: int, s: int, sign: int, ell: int) -> IntLaurent:
    frac = genus_one_fraction(r, s, sign)
    check_ell(ell, frac.q)
    half = (ell - 1) // 2
    delta = alexander(frac)
    body = (1 + T) ** half * (1 - T) ** half
    if sign == 1:
        # ((1+t)/t)^h ((1-t)/(-t))^h
        body = body.shift(-2 * half).scale((-1) ** half)
    return exact_div(delta * body, T - 1)


# -- recursion in q ---------------------------------------------------------------


def recursion_q(f: TwoBridgeFraction, ell: int, k: int):
    """d, e and Alexander polynomial of ``p / (q + 2 k ell p)`` from the values at ``q`` and ``q + 2 ell p``.

    Valid for every ``k >= 0``: ``alpha_0 = 0`` and ``alpha_1 = 1`` make the
    first two cases identities.
    """
    check_ell(ell, f.q)
    nxt = TwoBridgeFraction(f.p, f.q + 2 * ell * f.p)
    a = alpha_k(ell, k)
    one_minus = 1 - a
    d0, e0 = d_e_polynomials(f, ell)
    d1, e1 = d_e_polynomials(nxt, ell)
    a_c = CycLaurent.from_int_laurent(a, ell)
    om_c = CycLaurent.from_int_laurent(one_minus, ell)
    d = a_c * d1 + om_c * d0 if not a.is_zero() else d0
    e = a_c * e1 + om_c * e0 if not a.is_zero() else e0
    delta = a * alexander(nxt) + one_minus * alexander(f)
    return d, e, delta


# -- cluster shift ------------------------------------------------------------------


@dataclass
class ClusterShiftReport:
    root: TwoBridgeFraction
    shifted: TwoBridgeFraction
    ell: int
    j: int
    a1: int
    r1: int
    alexander_congruent: bool
    twisted_congruent: bool
    ratio_applicable: bool
    ratio_equal: bool | None

    @property
    def ok(self) -> bool:
        return self.alexander_congruent and self.twisted_congruent and self.ratio_equal is not False


def _congruent(a: IntLaurent, b: IntLaurent, ell: int) -> bool:
    a, b = canonical_unit_normalize(a, ell), canonical_unit_normalize(b, ell)
    return mod_ell_reduce(a, ell) == mod_ell_reduce(b, ell)


def shift_fraction(f: TwoBridgeFraction, ell: int, j: int) -> TwoBridgeFraction:
    a1, r1 = divmod(f.q, f.p)
    return TwoBridgeFraction(f.p + 2 * ell * j * r1, f.q + 2 * ell * j * a1 * r1)


def cluster_shift(f: TwoBridgeFraction, ell: int, j: int) -> ClusterShiftReport:
    check_ell(ell, f.q)
    if f.p == 1:
        raise ValueError("the cluster shift needs p > 1")
    if j < 1:
        raise ValueError("j must be positive")
    a1, r1 = divmod(f.q, f.p)
    g = shift_fraction(f, ell, j)
    base = twisted_alexander_product(f, ell)
    new = twisted_alexander_product(g, ell)
    ratio_applicable = gcd(a1, ell) == 1
    ratio_equal = None
    if ratio_applicable:
        ratio_equal = new.twisted * base.delta == base.twisted * new.delta
    return ClusterShiftReport(
        root=f,
        shifted=g,
        ell=ell,
        j=j,
        a1=a1,
        r1=r1,
        alexander_congruent=_congruent(new.delta, base.delta, ell),
        twisted_congruent=_congruent(new.twisted, base.twisted, ell),
        ratio_applicable=ratio_applicable,
        ratio_equal=ratio_equal,
    )


# -- root fractions and the family table ----------------------------------------------


def root_fractions(p: int, ell: int) -> list[TwoBridgeFraction]:
    """Valid ``p/q`` with ``ell | q`` and ``p < q < p + 2 ell p``: one per recursion class."""
    check_ell(ell)
    if p < 1 or p % 2 == 0:
        raise ValueError("p must be a positive odd integer")
    return [
        TwoBridgeFraction(p, q)
        for q in range(p + 1, p + 2 * ell * p)
        if q % 2 and q % ell == 0 and gcd(p, q) == 1
    ]


@dataclass(frozen=True)
class AppendixRow:
    root: TwoBridgeFraction
    ell: int
    f: AlphaPoly
    j_zero_only: bool

    def __str__(self):
        return f"{self.root} (ell={self.ell}{', j=0 only' if self.j_zero_only else ''})"


APPENDIX_FILE = "appendix.txt"


def appendix_path() -> Path:
    return Path(str(resources.files("twisted_alexander") / "data" / APPENDIX_FILE))


def parse_appendix(text: str) -> list[AppendixRow]:
    rows = []
    header = None
    triples: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("row "):
            if header is not None:
                raise ValueError(f"line {lineno}: row started before previous 'end'")
            fields = line.split()
            p, q = fields[1].split("/")
            opts = dict(item.split("=") for item in fields[2:])
            header = (TwoBridgeFraction(int(p), int(q)), int(opts["ell"]), opts["j_zero_only"] == "1")
            triples = []
        elif line == "end":
            if header is None:
                raise ValueError(f"line {lineno}: 'end' without a row")
            root, ell, bold = header
            check_ell(ell, root.q)
            rows.append(AppendixRow(root, ell, AlphaPoly.from_triples(triples), bold))
            header = None
        else:
            if header is None:
                raise ValueError(f"line {lineno}: term outside a row")
            te, ad, c = (int(x) for x in line.split())
            triples.append((te, ad, c))
    if header is not None:
        raise ValueError("unterminated row at end of file")
    return rows


def load_appendix(path: str | Path | None = None) -> list[AppendixRow]:
    path = Path(path) if path is not None else appendix_path()
    return parse_appendix(path.read_text())


def find_row(rows, root: TwoBridgeFraction, ell: int) -> AppendixRow:
    for row in rows:
        if row.root == root and row.ell == ell:
            return row
    raise KeyError(f"no appendix row for {root} with ell={ell}")


@dataclass(frozen=True)
class FamilyPoint:
    root: TwoBridgeFraction
    ell: int
    j: int
    k: int
    fraction: TwoBridgeFraction
    a: int
    r: int

    @property
    def gcd_a_ell(self) -> int:
        return gcd(self.a, self.ell)

    @property
    def remainder_readings_agree(self) -> bool:
        """Whether ``q = a p + r`` with ``0 < r < p`` also has ``r < a``."""
        return 0 < self.r < self.a


def family_point(root: TwoBridgeFraction, ell: int, j: int, k: int) -> FamilyPoint:
    """``(p + 2 ell j r) / (q + 2 ell (k p + j a r + 2 ell j k r))`` with ``q = a p + r``, ``0 < r < p``."""
    check_ell(ell, root.q)
    if j < 0 or k < 0:
        raise ValueError("j and k must be non-negative")
    p, q = root.p, root.q
    a, r = divmod(q, p)
    new = TwoBridgeFraction(p + 2 * ell * j * r, q + 2 * ell * (k * p + j * a * r + 2 * ell * j * k * r))
    return FamilyPoint(root, ell, j, k, new, a, r)


@dataclass
class FamilyReport:
    point: FamilyPoint
    f: IntLaurent
    conjecture: ConjectureReport
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.conjecture.strong


def verify_family_point(row: AppendixRow, j: int, k: int) -> FamilyReport:
    if row.j_zero_only and j > 0:
        raise JRestricted(f"{row.root} with ell={row.ell} is only valid for j = 0")
    point = family_point(row.root, row.ell, j, k)
    if point.fraction.q % row.ell:
        raise EllDoesNotDivideQ(f"ell={row.ell} does not divide {point.fraction.q}")
    result = twisted_alexander_product(point.fraction, row.ell)
    f = row.f.substitute(row.ell, k)
    report = FamilyReport(point, f, verify_conjecture(result, f))
    if not point.remainder_readings_agree and j > 0:
        report.notes.append(f"q = a p + r gives a={point.a}, r={point.r}, so 0 < r < a fails")
    return report


def locate_in_family(f: TwoBridgeFraction, ell: int, rows) -> tuple[AppendixRow, int, int] | None:
    """Find ``(row, j, k)`` with ``family_point(row.root, ell, j, k) == f``."""
    for row in rows:
        if row.ell != ell:
            continue
        p, q = row.root.p, row.root.q
        a, r = divmod(q, p)
        dj, rem = divmod(f.p - p, 2 * ell * r)
        if rem or dj < 0 or (dj > 0 and row.j_zero_only):
            continue
        num, rem = divmod(f.q - q, 2 * ell)
        if rem:
            continue
        num -= dj * a * r
        k, rem = divmod(num, p + 2 * ell * dj * r)
        if rem == 0 and k >= 0:
            return row, dj, k
    return None


def known_f(f: TwoBridgeFraction, ell: int, rows=None) -> tuple[IntLaurent, str] | None:
    """A candidate ``f(t)`` from a closed form or the family table, with its source."""
    if f.p == 1:
        return torus_f(f.q, ell), "torus"
    found = genus_one_parameters(f)
    if found is not None:
        r, s, sign = found
        return genus_one_f(r, s, sign, ell), f"genus-one r={r} s={s} sign={sign:+d}"
    found = locate_in_family(f, ell, rows if rows is not None else load_appendix())
    if found is not None:
        row, j, k = found
        return row.f.substitute(ell, k), f"family {row.root} j={j} k={k}"
    return None


def _verify_job(job):
    row, j, k = job
    return verify_family_point(row, j, k)


def appendix_jobs(rows, kmax: int, jmax: int):
    """Every ``(row, j, k)`` to check; bold rows only get ``j = 0``."""
    return [
        (row, j, k)
        for row in rows
        for j in range(0 if row.j_zero_only else jmax, -1, -1)[::-1]
        for k in range(kmax + 1)
    ]


def verify_appendix(rows, kmax: int = 3, jmax: int = 2, workers: int = 1) -> list[FamilyReport]:
    """Verify every family point; results come back in job order whatever ``workers`` is."""
    jobs = appendix_jobs(rows, kmax, jmax)
    if workers <= 1:
        return [_verify_job(job) for job in jobs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_job, jobs, chunksize=4))
