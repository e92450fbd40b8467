"""Two-bridge fractions, epsilon graphs, sigma sequences and vertex labels."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from .cyclotomic import CycLaurent
from .errors import EllDoesNotDivideQ, NotCoprime, NotOdd, NotOddPrime, OutOfRange


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_ell(ell: int, q: int | None = None) -> None:
    if not is_odd_prime(ell):
        raise NotOddPrime(f"ell={ell} must be an odd prime")
    if q is not None and q % ell:
        raise EllDoesNotDivideQ(f"ell={ell} does not divide q={q}")


@dataclass(frozen=True)
class TwoBridgeFraction:
    """The fraction p/q naming the 2-bridge knot K_{p/q}.

    Construct through :func:`make_fraction` (or directly; validation runs either way).
    """

    p: int
    q: int

    def __post_init__(self):
        if self.p % 2 == 0 or self.q % 2 == 0:
            raise NotOdd(f"p={self.p} and q={self.q} must both be odd")
        if not 0 < self.p < self.q:
            raise OutOfRange(f"need 0 < p < q, got p={self.p}, q={self.q}")
        if gcd(self.p, self.q) != 1:
            raise NotCoprime(f"gcd(p, q) = {gcd(self.p, self.q)} for p={self.p}, q={self.q}")

    def __str__(self):
        return f"{self.p}/{self.q}"

    @classmethod
    def parse(cls, text: str) -> TwoBridgeFraction:
        p, q = text.split("/")
        return cls(int(p), int(q))

    @cached_property
    def epsilon_graph(self) -> EpsilonGraph:
        return epsilon_sequence(self)

    def euclid_chain(self) -> list[tuple[int, int]]:
        """Successive (quotient, remainder) pairs of the Euclidean algorithm on q, p."""
        chain = []
        a, b = self.q, self.p
        while b:
            chain.append((a // b, a % b))
            a, b = b, a % b
        return chain


def make_fraction(p: int, q: int) -> TwoBridgeFraction:
    return TwoBridgeFraction(p, q)


def valid_fractions(q: int):
    """All valid p for a given odd q, ascending."""
    return [TwoBridgeFraction(p, q) for p in range(1, q, 2) if gcd(p, q) == 1]


@dataclass(frozen=True)
class Segment:
    start: int  # index of the first edge, 1-based
    length: int
    slope: int


@dataclass(frozen=True)
class EpsilonGraph:
    fraction: TwoBridgeFraction
    epsilons: tuple[int, ...]  # epsilons[i-1] is epsilon_i
    levels: tuple[int, ...]    # levels[i] is the height of vertex v_i
    segments: tuple[Segment, ...]

    def epsilon(self, i: int) -> int:
        return self.epsilons[i - 1]

    def level_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for v in self.levels:
            counts[v] = counts.get(v, 0) + 1
        return counts

    def render(self) -> str:
        """Flat text drawing of the sawtooth, highest level on top."""
        lo, hi = min(self.levels), max(self.levels)
        rows = []
        for h in range(hi, lo - 1, -1):
            row = "".join("o" if v == h else " " for v in self.levels)
            rows.append(f"{h:>4} |{row.rstrip()}")
        return "\n".join(rows)


def epsilon_sequence(f: TwoBridgeFraction) -> EpsilonGraph:
    p, q = f.p, f.q
    eps = tuple(-1 if (i * p // q) % 2 else 1 for i in range(1, q))
    levels = [0]
    for e in eps:
        levels.append(levels[-1] + e)
    segments = []
    start = 1
    for i in range(2, q + 1):
        if i == q or eps[i - 1] != eps[start - 1]:
            segments.append(Segment(start, i - start, eps[start - 1]))
            start = i
    return EpsilonGraph(f, eps, tuple(levels), tuple(segments))


def sigma_sequence(f: TwoBridgeFraction) -> tuple[int, ...]:
    """Segment lengths of the epsilon graph; ``(q-1,)`` when ``p == 1``."""
    return tuple(s.length for s in f.epsilon_graph.segments)


def clusters(sigma) -> list[tuple[int, int]]:
    """Maximal runs of equal values as (value, run length)."""
    out: list[tuple[int, int]] = []
    for s in sigma:
        if out and out[-1][0] == s:
            out[-1] = (s, out[-1][1] + 1)
        else:
            out.append((s, 1))
    return out


# -- structural property report -------------------------------------------------


@dataclass
class PropertyReport:
    fraction: TwoBridgeFraction
    sigma: tuple[int, ...]
    euclid: dict[str, int | None]
    results: dict[str, tuple[str, str]] = field(default_factory=dict)

    def record(self, name: str, ok: bool, detail: str = ""):
        self.results[name] = ("pass" if ok else "fail", detail)

    def skip(self, name: str, reason: str):
        self.results[name] = ("skipped", reason)

    @property
    def failures(self) -> list[str]:
        return [k for k, (status, _) in self.results.items() if status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures


def _euclid_values(f: TwoBridgeFraction) -> dict[str, int | None]:
    chain = f.euclid_chain()
    vals: dict[str, int | None] = {}
    for n in range(3):
        a, r = chain[n] if n < len(chain) else (None, None)
        vals[f"a{n + 1}"] = a
        vals[f"r{n + 1}"] = r
    # A zero remainder ends the chain: the next quotient does not exist.
    if vals["r2"] == 0:
        vals["a3"] = vals["r3"] = None
    return vals


def check_sigma_properties(f: TwoBridgeFraction) -> PropertyReport:
    """Evaluate the segment-structure facts for ``E(p, q)``.

    Names ``p32.n`` refer to the six general facts (symmetry, central even
    segment, edge count, partial sums, individual lengths, consecutive sums);
    ``p33.n`` to the seven short/long cluster facts.  A fact whose hypothesis
    does not hold is reported as skipped, never as failed.
    """
    p, q = f.p, f.q
    sigma = sigma_sequence(f)
    report = PropertyReport(f, sigma, _euclid_values(f))
    names32 = [f"p32.{n}" for n in range(1, 7)]
    names33 = [f"p33.{n}" for n in range(1, 8)]
    if p == 1:
        for name in names32 + names33:
            report.skip(name, "p = 1: single segment of length q-1")
        return report

    ev = report.euclid
    a1, r1, a2, r2, a3, r3 = (ev[k] for k in ("a1", "r1", "a2", "r2", "a3", "r3"))

    report.record("p32.1", sigma == sigma[::-1])
    even = [s for s in sigma if s % 2 == 0]
    report.record(
        "p32.2",
        sigma[len(sigma) // 2] % 2 == 0 and len(even) % 2 == 1 and (len(sigma) - len(even)) % 2 == 0,
    )
    report.record("p32.3", sum(sigma) == q - 1)
    partial = [sum(sigma[:k]) for k in range(1, p + 1)]
    report.record(
        "p32.4",
        all(partial[k - 1] == (k * q - 1) // p for k in range(1, p + 1)) and sigma[0] == a1,
    )
    # floor((i-1)q - 1)/p) is read as the empty partial sum 0 when i = 1
    floors = [0] + [(i * q - 1) // p for i in range(1, p + 1)]
    report.record("p32.5", all(sigma[i - 1] == floors[i] - floors[i - 1] for i in range(1, p + 1)))
    ok6 = True
    for k in range(1, p + 1):
        base = partial[k - 1]
        for j in range(0, p - k + 1):
            if sum(sigma[j:j + k]) not in (base, base + 1):
                ok6 = False
    report.record("p32.6", ok6 and all(s in (sigma[0], sigma[0] + 1) for s in sigma))

    short = sigma[0]
    runs = clusters(sigma)
    short_runs = [n for v, n in runs if v == short]
    long_runs = [n for v, n in runs if v != short]
    longs_isolated = all(n == 1 for n in long_runs)
    shorts_isolated = all(n == 1 for n in short_runs)

    report.record("p33.1", longs_isolated or shorts_isolated)
    n_long = sum(long_runs)
    report.record("p33.2", n_long == r1 - 1 and p - n_long == p - r1 + 1,
                  f"long={n_long}, r1-1={r1 - 1}")
    report.record("p33.3", short_runs[0] == a2, f"initial short cluster {short_runs[0]}, a2={a2}")
    if longs_isolated:
        report.record("p33.4", all(n in (a2, a2 - 1) for n in short_runs))
    else:
        report.skip("p33.4", "some long segment is not isolated")
    ok5 = short_runs.count(a2) == r2 + 1
    if a2 > 1:
        ok5 = ok5 and short_runs.count(a2 - 1) == r1 - r2 - 1
    report.record("p33.5", ok5)
    if longs_isolated or len(long_runs) <= 1:
        for name in ("p33.6", "p33.7"):
            report.skip(name, "needs a nonisolated long segment and more than one long cluster")
    elif a3 is None:
        for name in ("p33.6", "p33.7"):
            report.skip(name, "Euclidean chain ends before a3")
    else:
        report.record("p33.6", long_runs[0] == a3 and all(n in (a3, a3 + 1) for n in long_runs))
        report.record(
            "p33.7",
            long_runs.count(a3) == r2 - r3 + 1 and long_runs.count(a3 + 1) == r3 - 1,
        )
    return report


# -- vertex labelling ------------------------------------------------------------


@dataclass(frozen=True)
class VertexLabel:
    index: int
    level: int          # power of t
    label: int          # signed power of lambda
    target: str         # "d" for odd vertices, "e" for even ones


@dataclass(frozen=True)
class VertexLabeling:
    fraction: TwoBridgeFraction
    ell: int
    vertices: tuple[VertexLabel, ...]

    def read_d_e(self) -> tuple[CycLaurent, CycLaurent]:
        acc = {"d": {}, "e": {}}
        for v in self.vertices:
            vec = acc[v.target].setdefault(v.level, [0] * self.ell)
            vec[v.label % self.ell] += 1
        return (CycLaurent.from_vectors(self.ell, acc["d"]),
                CycLaurent.from_vectors(self.ell, acc["e"]))


def vertex_labeling(f: TwoBridgeFraction, ell: int) -> VertexLabeling:
    """Label each vertex of ``E(p, q)`` by the segment rule.

    Vertex ``k`` gets ``±floor((k+1)/2)``: plus inside a rising segment, minus
    inside a falling one, and at the end of the ``i``-th segment the sign
    ``(-1)**(k+i+1)``.  Vertex 0 carries 0.
    """
    check_ell(ell)
    graph = f.epsilon_graph
    sign_at = {}
    k = 0
    for i, seg in enumerate(graph.segments, start=1):
        for inner in range(1, seg.length):
            sign_at[k + inner] = seg.slope
        k += seg.length
        sign_at[k] = (-1) ** (k + i + 1)
    verts = [VertexLabel(0, 0, 0, "e")]
    for k in range(1, f.q):
        verts.append(VertexLabel(k, graph.levels[k], sign_at[k] * ((k + 1) // 2),
                                 "d" if k % 2 else "e"))
    return VertexLabeling(f, ell, tuple(verts))
