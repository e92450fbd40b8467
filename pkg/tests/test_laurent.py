import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import laurents, nonzero_laurents
from twisted_alexander.errors import InexactDivision, ZeroPolynomial
from twisted_alexander.laurent import (
    IntLaurent,
    canonical_unit_normalize,
    exact_div,
    format_poly,
    kronecker_pack,
    kronecker_unpack,
    mod_ell_exact_div,
    mod_ell_pow,
    mod_ell_reduce,
    parse_poly,
    unit_between,
)

t = IntLaurent.t()


def naive_mul(a, b):
    acc = {}
    for e1, c1 in a.terms().items():
        for e2, c2 in b.terms().items():
            acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
    return IntLaurent.from_terms(acc)


def test_trims_zeros_and_normalizes_zero():
    p = IntLaurent(-3, [0, 0, 1, 2, 0])
    assert p.low == -1 and p.coeffs == (1, 2)
    assert IntLaurent(5, [0, 0]) == IntLaurent() == 0


def test_basic_queries():
    p = parse_poly("-t^-1 + 5 - 7*t + 5*t^2 - t^3")
    assert (p.valuation, p.degree, p.span) == (-1, 3, 4)
    assert p.coefficient(1) == -7 and p.coefficient(10) == 0
    assert p(1) == 1
    assert p.l1_norm() == 19 and p.max_abs_coeff() == 7


def test_units():
    assert (-t ** 3).is_unit() and not (2 * t).is_unit()
    assert t ** -2 == IntLaurent.monomial(-2)
    with pytest.raises(ValueError):
        (1 + t) ** -1


@given(laurents(), laurents(), laurents())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(laurents(max_len=40, max_coeff=10 ** 30), laurents(max_len=40, max_coeff=10 ** 30))
def test_kronecker_product_matches_schoolbook(a, b):
    assert a * b == naive_mul(a, b)


@given(st.lists(st.integers(-(2 ** 60), 2 ** 60), min_size=1, max_size=20))
def test_pack_unpack_roundtrip(coeffs):
    assert kronecker_unpack(kronecker_pack(coeffs, 9), len(coeffs), 9) == coeffs


def test_unpack_overflow():
    with pytest.raises(OverflowError):
        kronecker_unpack(1 << 200, 2, 1)


@given(laurents(), nonzero_laurents())
def test_exact_division_roundtrip(a, b):
    assert exact_div(a * b, b) == a


def test_inexact_division_raises():
    with pytest.raises(InexactDivision):
        exact_div(1 + t ** 2, 1 + t)
    with pytest.raises(ZeroDivisionError):
        exact_div(t, IntLaurent())


@given(laurents(), st.integers(-5, 5))
def test_substitutions(a, k):
    assert a.substitute_neg().substitute_neg() == a
    assert a.shift(k).shift(-k) == a
    assert (a * a.substitute_neg()).substitute_neg() == a * a.substitute_neg()


@given(nonzero_laurents(), st.sampled_from([3, 5, 7, 13]))
def test_canonical_normalize_idempotent(a, ell):
    c = canonical_unit_normalize(a, ell)
    assert canonical_unit_normalize(c, ell) == c
    assert 0 <= c.low < ell and c.coeffs[0] > 0


@given(nonzero_laurents(), st.sampled_from([3, 5, 7]), st.integers(-4, 4), st.sampled_from([1, -1]))
def test_canonical_normalize_constant_on_unit_orbit(a, ell, r, sign):
    moved = a.shift(r * ell).scale(sign)
    assert canonical_unit_normalize(moved, ell) == canonical_unit_normalize(a, ell)


def test_canonical_normalize_zero():
    with pytest.raises(ZeroPolynomial):
        canonical_unit_normalize(IntLaurent(), 3)


@given(nonzero_laurents(), st.integers(-9, 9), st.sampled_from([1, -1]))
def test_unit_between_recovers_unit(a, k, sign):
    assert unit_between(a.shift(k).scale(sign), a) == (sign, k)


def test_unit_between_rejects_non_units():
    assert unit_between(1 + t, 1 + 2 * t) is None
    assert unit_between(1 + t, IntLaurent()) is None


@given(laurents(), nonzero_laurents(), st.sampled_from([3, 5, 7]))
def test_mod_ell_division(a, b, ell):
    if mod_ell_reduce(b, ell).is_zero():
        return
    prod = mod_ell_reduce(a * b, ell)
    q = mod_ell_exact_div(prod, b, ell)
    assert mod_ell_reduce(q * b, ell) == prod


def test_mod_ell_division_failure_and_power():
    with pytest.raises(InexactDivision):
        mod_ell_exact_div(1 + t ** 2, 1 + t, 3)
    # (1+t)^3 = 1 + t^3 over the field with three elements
    assert mod_ell_pow(1 + t, 3, 3) == 1 + t ** 3


@given(laurents())
def test_text_and_json_roundtrip(a):
    assert parse_poly(format_poly(a)) == a
    assert parse_poly(format_poly(a, compact=True)) == a
    assert IntLaurent.from_json(a.to_json()) == a


def test_display_is_ascending_with_explicit_exponents():
    assert format_poly(5 - 7 * t) == "5*t^0 - 7*t^1"
    assert format_poly(-t ** -1 + 2, compact=True) == "-t^-1 + 2"
    with pytest.raises(ValueError):
        parse_poly("1 + x")
