"""The epsilon-graph product formula for the ell-twisted Alexander polynomial."""
from __future__ import annotations

from dataclasses import dataclass, field

from .cyclotomic import CycLaurent, lambda_free_part
from .laurent import IntLaurent, exact_div
from .twobridge import TwoBridgeFraction, check_ell

T = IntLaurent.t()


@dataclass(frozen=True)
class TwistedResult:
    fraction: TwoBridgeFraction
    ell: int
    method: str                      # "product-formula" or "fox-oracle"
    delta: IntLaurent
    twisted: IntLaurent
    d_factors: tuple[CycLaurent, ...] = ()
    e_factors: tuple[CycLaurent, ...] = ()
    big_d: tuple[CycLaurent, ...] = ()
    big_d_product: IntLaurent | None = None
    # whether each big_d factor is divisible by t^2 - 1 (recorded, never assumed)
    factor_divisible: tuple[bool, ...] = ()
    m: int | None = None
    extra: dict = field(default_factory=dict, compare=False)


def alexander(f: TwoBridgeFraction) -> IntLaurent:
    """Alternating sum ``1 - t^eps1 + t^(eps1+eps2) - ...`` over the graph's vertices."""
    acc: dict[int, int] = {}
    for i, v in enumerate(f.epsilon_graph.levels):
        acc[v] = acc.get(v, 0) + (-1) ** i
    return IntLaurent.from_terms(acc)


def d_e_polynomials(f: TwoBridgeFraction, ell: int) -> tuple[CycLaurent, CycLaurent]:
    """The polynomials ``d_{p/q}(lambda, t)`` and ``e_{p/q}(lambda, t)``."""
    check_ell(ell, f.q)
    graph = f.epsilon_graph
    d_vec: dict[int, list[int]] = {}
    e_vec: dict[int, list[int]] = {0: [1] + [0] * (ell - 1)}
    for k in range(1, (f.q - 1) // 2 + 1):
        lam = (k * graph.epsilon(2 * k)) % ell
        d_vec.setdefault(graph.levels[2 * k - 1], [0] * ell)[lam] += 1
        e_vec.setdefault(graph.levels[2 * k], [0] * ell)[lam] += 1
    return CycLaurent.from_vectors(ell, d_vec), CycLaurent.from_vectors(ell, e_vec)


def determinant_from_de(d: CycLaurent, e: CycLaurent, i: int = 1) -> CycLaurent:
    """``d(lambda^i) d(lambda^-i) - e(lambda^i) e(lambda^-i)``."""
    di, ei = d.substitute(i), e.substitute(i)
    return di * di.conjugate() - ei * ei.conjugate()


def big_determinant(f: TwoBridgeFraction, ell: int, i: int) -> CycLaurent:
    if not 1 <= i <= (ell - 1) // 2:
        raise ValueError(f"i={i} outside 1..{(ell - 1) // 2}")
    d, e = d_e_polynomials(f, ell)
    return determinant_from_de(d, e, i)


def product_denominator(ell: int) -> IntLaurent:
    """``(t - 1) (t^2 - 1)^((ell-1)/2)``."""
    return (T - 1) * (T * T - 1) ** ((ell - 1) // 2)


def _divisible_by_t2_minus_1(p: CycLaurent) -> bool:
    # t^2 - 1 is monic with roots ±1, so divisibility is vanishing at both.
    return p.evaluate_t(1).is_zero() and p.evaluate_t(-1).is_zero()


def _tree_product(items):
    # Balanced pairing keeps operand sizes equal, which suits Kronecker multiplication.
    items = list(items)
    while len(items) > 1:
        paired = [items[i] * items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def cyclotomic_product(factors) -> IntLaurent:
    """``prod D_i`` multiplied out over ``Z[lambda]``; slow for large ``ell``, kept as a cross-check."""
    return lambda_free_part(_tree_product(factors))


def _l1(p: CycLaurent) -> int:
    return sum(abs(c) for coeff in p.terms().values() for c in coeff.coords)


def _reduce(p: IntLaurent, modulus: int) -> IntLaurent:
    return IntLaurent(p.low, [c % modulus for c in p.coeffs])


def galois_norm_product(d: CycLaurent, e: CycLaurent, ell: int) -> IntLaurent:
    """``prod_{i=1}^{(ell-1)/2} D(lambda^i, t)`` computed modulo ``P = Phi_ell(X)``.

    Sending ``lambda`` to ``X`` is a ring map ``Z[lambda] -> Z/P``.  Every
    coefficient of the product is an integer bounded by
    ``(|d|_1^2 + |e|_1^2)^((ell-1)/2)``, so choosing ``P`` above twice that bound
    recovers it from its balanced residue.
    """
    half = (ell - 1) // 2
    bound = (_l1(d) ** 2 + _l1(e) ** 2) ** half
    k = -(-(bound.bit_length() + 2) // (ell - 1))
    x = 1 << k
    modulus = (x ** ell - 1) // (x - 1)
    xp = [pow(x, j, modulus) for j in range(ell)]

    def image(p: CycLaurent, i: int) -> IntLaurent:
        return IntLaurent.from_terms({
            exp: sum(c * xp[(i * j) % ell] for j, c in enumerate(coeff.coords)) % modulus
            for exp, coeff in p.terms().items()
        })

    factors = []
    for i in range(1, half + 1):
        di, dc, ei, ec = image(d, i), image(d, -i), image(e, i), image(e, -i)
        factors.append(_reduce(di * dc - ei * ec, modulus))
    items = factors
    while len(items) > 1:
        paired = [_reduce(items[n] * items[n + 1], modulus) for n in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    top = modulus // 2
    return IntLaurent(items[0].low, [c - modulus if c > top else c for c in items[0].coeffs])


def assemble_twisted(delta: IntLaurent, d: CycLaurent, e: CycLaurent, ell: int):
    """Combine Alexander polynomial and d, e into the canonical twisted polynomial.

    Returns ``(twisted, big_d factors, lambda-free product, d factors, e factors)``.
    """
    half = (ell - 1) // 2
    factors = []
    d_f, e_f = [], []
    for i in range(1, half + 1):
        d_f.append(d.substitute(i))
        e_f.append(e.substitute(i))
        factors.append(determinant_from_de(d, e, i))
    prod_int = galois_norm_product(d, e, ell)
    twisted = exact_div(delta * prod_int, product_denominator(ell))
    return twisted, tuple(factors), prod_int, tuple(d_f), tuple(e_f)


def twisted_alexander_product(f: TwoBridgeFraction, ell: int) -> TwistedResult:
    check_ell(ell, f.q)
    delta = alexander(f)
    d, e = d_e_polynomials(f, ell)
    twisted, factors, prod_int, d_f, e_f = assemble_twisted(delta, d, e, ell)
    return TwistedResult(
        fraction=f,
        ell=ell,
        method="product-formula",
        delta=delta,
        twisted=twisted,
        d_factors=d_f,
        e_factors=e_f,
        big_d=factors,
        big_d_product=prod_int,
        factor_divisible=tuple(_divisible_by_t2_minus_1(b) for b in factors),
    )
