"""Brute-force route: the twisted Alexander matrix and its exact determinant.

The matrix is built from the Fox derivative of the 2-bridge relator word under
the dihedral permutation representation, and its determinant is divided by
``det(t F R^m - I)``.  Nothing here uses the d/e product formula.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np

from .errors import BadM
from .laurent import IntLaurent, exact_div, kronecker_unpack
from .twisted import TwistedResult, alexander
from .twobridge import TwoBridgeFraction, check_ell

LaurentMatrix = list  # list of rows of IntLaurent


def reflection_matrix(ell: int) -> np.ndarray:
    """``F``: the identity with its rows reversed."""
    return np.eye(ell, dtype=np.int64)[::-1].copy()


def rotation_matrix(ell: int) -> np.ndarray:
    """``R``: the identity with its rows cyclically permuted (``R[i, i-1] = 1``)."""
    return np.roll(np.eye(ell, dtype=np.int64), 1, axis=0)


def dihedral_matrices(ell: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Images of ``a`` and ``b``: ``F`` and ``F R^m``."""
    check_ell(ell)
    if not 1 <= m < ell:
        raise BadM(f"m={m} must satisfy 1 <= m < {ell}")
    F = reflection_matrix(ell)
    R = rotation_matrix(ell)
    return F, F @ np.linalg.matrix_power(R, m)


def _check_m(ell: int, m: int):
    if not 1 <= m < ell:
        raise BadM(f"m={m} must satisfy 1 <= m < {ell}")


def _zero_matrix(n: int) -> list[list[dict[int, int]]]:
    return [[{} for _ in range(n)] for _ in range(n)]


def _add_monomial_matrix(acc, perm: np.ndarray, t_exp: int, coeff: int):
    rows, cols = np.nonzero(perm)
    for i, j in zip(rows.tolist(), cols.tolist()):
        cell = acc[i][j]
        cell[t_exp] = cell.get(t_exp, 0) + coeff * int(perm[i, j])


def _to_laurent(acc) -> LaurentMatrix:
    return [[IntLaurent.from_terms(cell) for cell in row] for row in acc]


def twisted_matrix(f: TwoBridgeFraction, ell: int, m: int = 1) -> LaurentMatrix:
    """``I + sum_k t^(v_2k) (I - t^(-eps_2k) F) R^(m k eps_2k)`` as a matrix of Laurent polynomials."""
    check_ell(ell, f.q)
    _check_m(ell, m)
    F = reflection_matrix(ell)
    R = rotation_matrix(ell)
    graph = f.epsilon_graph
    acc = _zero_matrix(ell)
    _add_monomial_matrix(acc, np.eye(ell, dtype=np.int64), 0, 1)
    for k in range(1, (f.q - 1) // 2 + 1):
        eps = graph.epsilon(2 * k)
        level = graph.levels[2 * k]
        Rk = np.linalg.matrix_power(R, (m * k * eps) % ell)
        _add_monomial_matrix(acc, Rk, level, 1)
        _add_monomial_matrix(acc, F @ Rk, level - eps, -1)
    return _to_laurent(acc)


def relator_word(f: TwoBridgeFraction) -> list[tuple[str, int]]:
    """The word ``w = b^eps1 a^eps2 b^eps3 ... a^eps_{q-1}`` as (letter, exponent) pairs."""
    graph = f.epsilon_graph
    return [("b" if i % 2 else "a", graph.epsilon(i)) for i in range(1, f.q)]


def fox_matrix(f: TwoBridgeFraction, ell: int, m: int = 1) -> LaurentMatrix:
    """``I + (t phi(a) - I) * d w / d a`` built letter by letter from the Fox derivative.

    Each prefix of ``w`` maps to a monomial matrix ``t^e P``; the derivative of
    ``a`` contributes the prefix and that of ``a^-1`` contributes
    ``-prefix * phi(a)^-1``.
    """
    check_ell(ell, f.q)
    _check_m(ell, m)
    A, B = dihedral_matrices(ell, m)
    image = {"a": A, "b": B}
    # phi(x^±1) = t^±1 X with X an involution
    prefix_exp, prefix = 0, np.eye(ell, dtype=np.int64)
    deriv = _zero_matrix(ell)
    for letter, eps in relator_word(f):
        if letter == "a":
            if eps == 1:
                _add_monomial_matrix(deriv, prefix, prefix_exp, 1)
            else:
                _add_monomial_matrix(deriv, prefix @ A, prefix_exp - 1, -1)
        prefix = prefix @ image[letter]
        prefix_exp += eps
    # (t A - I) * deriv
    out = _zero_matrix(ell)
    for i in range(ell):
        out[i][i][0] = 1
        (j_a,) = np.nonzero(A[i])[0]
        for j in range(ell):
            for e, c in deriv[j_a][j].items():
                out[i][j][e + 1] = out[i][j].get(e + 1, 0) + c
            for e, c in deriv[i][j].items():
                out[i][j][e] = out[i][j].get(e, 0) - c
    return _to_laurent(out)


def _bareiss_int(M: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination over the integers."""
    M = [row[:] for row in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def symbolic_det(M: LaurentMatrix) -> IntLaurent:
    """Exact determinant of a square matrix of integer Laurent polynomials.

    Each row is shifted so its lowest exponent is 0, every entry is evaluated at
    ``X = 256**B`` with ``B`` chosen from the Hadamard-type bound (product of
    row L1 norms), the integer determinant is taken by Bareiss elimination, and
    its balanced base-``X`` digits are read back as coefficients.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if n == 0:
        return IntLaurent.constant(1)
    shifted, total_shift, bound, width = [], 0, 1, 0
    for row in M:
        nonzero = [p for p in row if not p.is_zero()]
        if not nonzero:
            return IntLaurent()
        s = min(p.low for p in nonzero)
        total_shift += s
        r = [p.shift(-s) for p in row]
        shifted.append(r)
        bound *= sum(p.l1_norm() for p in r)
        width += max(p.degree for p in r if not p.is_zero())
    nbytes = (bound.bit_length() + 2 + 7) // 8
    X = 1 << (8 * nbytes)
    ints = [[p(X) if not p.is_zero() else 0 for p in row] for row in shifted]
    value = _bareiss_int(ints)
    coeffs = kronecker_unpack(value, width + 1, nbytes)
    return IntLaurent(total_shift, coeffs)


def cofactor_det(M: LaurentMatrix) -> IntLaurent:
    """Leibniz expansion; exponential cost, only for small cross-checks."""
    n = len(M)
    total = IntLaurent()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = IntLaurent.constant(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term = term * M[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def denominator(ell: int) -> IntLaurent:
    """``-(1+t)^((ell-1)/2) (1-t)^((ell+1)/2)``."""
    t = IntLaurent.t()
    return -((1 + t) ** ((ell - 1) // 2)) * (1 - t) ** ((ell + 1) // 2)


def denominator_matrix(ell: int, m: int) -> LaurentMatrix:
    """``t F R^m - I``."""
    _, B = dihedral_matrices(ell, m)
    acc = _zero_matrix(ell)
    _add_monomial_matrix(acc, B, 1, 1)
    _add_monomial_matrix(acc, np.eye(ell, dtype=np.int64), 0, -1)
    return _to_laurent(acc)


def twisted_alexander_oracle(f: TwoBridgeFraction, ell: int, m: int = 1,
                             build: str = "closed-form") -> TwistedResult:
    """Twisted Alexander polynomial as ``det(A_phi) / det(t phi(b) - I)``.

    ``build`` selects the matrix constructor: ``"closed-form"`` or ``"fox-word"``.
    """
    check_ell(ell, f.q)
    _check_m(ell, m)
    builder = {"closed-form": twisted_matrix, "fox-word": fox_matrix}[build]
    numerator = symbolic_det(builder(f, ell, m))
    twisted = exact_div(numerator, denominator(ell))
    return TwistedResult(
        fraction=f,
        ell=ell,
        method="fox-oracle",
        delta=alexander(f),
        twisted=twisted,
        m=m,
        extra={"numerator": numerator},
    )
