import pytest
from hypothesis import given

import fixtures as fx
from conftest import colored_fractions
from twisted_alexander.conjecture import (
    Unit,
    check_congruence,
    check_form,
    f_times_f_neg,
    g_evenness,
    quotient_g,
    reduced_target,
    verify_conjecture,
)
from twisted_alexander.errors import NotDivisibleModEll
from twisted_alexander.families import alpha_k, genus_one_f, genus_one_fraction, torus_f
from twisted_alexander.laurent import IntLaurent, mod_ell_reduce, unit_between
from twisted_alexander.twisted import twisted_alexander_product
from twisted_alexander.twobridge import TwoBridgeFraction

t = fx.t
F = TwoBridgeFraction


def test_quotient_g_examples():
    assert quotient_g(twisted_alexander_product(F(1, 3), 3)) == 1 - t ** 2
    g = quotient_g(twisted_alexander_product(F(5, 9), 3))
    assert g == (t ** 2 - 1).shift(-2)
    # the reference form t^4 (t-1)(t+1) differs by the unit t^-6
    sign, k = unit_between(g, t ** 4 * (t - 1) * (t + 1))
    assert sign == 1 and k % 3 == 0
    g = quotient_g(twisted_alexander_product(F(5, 13), 13))
    assert g == f_times_f_neg(fx.F_5_13)


def test_check_form_examples():
    assert check_form((1 + t) * (1 - t), 1 + t, 3) == (True, Unit(1, 0))
    assert check_form(-(t ** 3) * (1 + t) * (1 - t), 1 + t, 3) == (True, Unit(-1, 3))
    holds, unit = check_form(t * (1 + t) * (1 - t), 1 + t, 3)
    assert not holds and unit == Unit(1, 1)
    assert check_form(1 + t, 1 + t, 3) == (False, None)
    assert check_form(IntLaurent(), 1 + t, 3) == (False, None)


def test_check_form_window():
    g = (1 + t) * (1 - t)
    assert check_form(g.shift(30), 1 + t, 3) == (False, Unit(1, 30))
    assert check_form(g.shift(30), 1 + t, 3, window=10)[0]


def test_congruence_torus_and_genus_one():
    for q, ell in [(3, 3), (9, 3), (15, 5), (21, 7)]:
        delta = twisted_alexander_product(F(1, q), ell).delta
        assert check_congruence(torus_f(q, ell), delta, ell)[0]
    for r, s, sign, ell in [(2, 1, 1, 3), (1, 2, -1, 7), (1, 1, 1, 5)]:
        res = twisted_alexander_product(genus_one_fraction(r, s, sign), ell)
        assert check_congruence(genus_one_f(r, s, sign, ell), res.delta, ell)[0]


@pytest.mark.parametrize("k", range(4))
def test_congruence_5_9_family(k):
    a = alpha_k(3, k)
    f = (t ** 2 * (1 + t) * (1 - t ** 3 * a + t ** 6 * a))
    res = twisted_alexander_product(F(5, 9 + 30 * k), 3)
    holds, unit = check_congruence(f, res.delta, 3)
    assert holds and unit.exponent % 3 == 0
    form, unit = check_form(quotient_g(res), f, 3)
    assert form


def test_not_divisible_mod_ell():
    with pytest.raises(NotDivisibleModEll):
        check_congruence(1 + t, 1 + t ** 2, 3)
    assert reduced_target(1 + t, 3) == 1


def test_evenness():
    assert g_evenness(1 - t ** 2)
    assert not g_evenness(1 + t)


@given(colored_fractions(max_q=45, primes=(3, 5, 7)))
def test_g_is_even_and_form_matches_reduced_target(data):
    f, ell = data
    res = twisted_alexander_product(f, ell)
    g = quotient_g(res)
    assert g_evenness(g)
    target = reduced_target(res.delta, ell)
    assert mod_ell_reduce(g, ell) == mod_ell_reduce(g.substitute_neg(), ell)
    assert not target.is_zero()


def test_report_verdicts():
    res = twisted_alexander_product(F(5, 13), 13)
    rep = verify_conjecture(res, fx.F_5_13)
    assert rep.strong and rep.weak and rep.verdict == "strong"
    assert rep.g - rep.form_unit.as_laurent() * f_times_f_neg(fx.F_5_13) == 0
    shifted = verify_conjecture(res, fx.F_5_13.shift(1))
    assert shifted.verdict == "weak"
    assert str(shifted.form_unit) == "-t^-2"
    none = verify_conjecture(res, None)
    assert none.verdict == "fail" and none.g is not None
