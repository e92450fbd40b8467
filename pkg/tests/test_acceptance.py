"""Acceptance suite: one test and one printed pass/fail line per criterion.

All comparisons are exact equality of integer Laurent polynomials or of
cyclotomic coefficient vectors.
"""
import time
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import fixtures as fx
from conftest import nonzero_laurents
from twisted_alexander.conjecture import verify_conjecture
from twisted_alexander.cyclotomic import CycInt
from twisted_alexander.families import (
    cluster_shift,
    genus_one_alexander,
    genus_one_fraction,
    genus_one_sigma,
    genus_one_twisted,
    load_appendix,
    recursion_q,
    root_fractions,
    torus_twisted,
    verify_appendix,
)
from twisted_alexander.fox import denominator, denominator_matrix, symbolic_det, twisted_alexander_oracle
from twisted_alexander.laurent import canonical_unit_normalize, exact_div
from twisted_alexander.twisted import alexander, d_e_polynomials, twisted_alexander_product
from twisted_alexander.twobridge import (
    TwoBridgeFraction,
    check_sigma_properties,
    is_odd_prime,
    sigma_sequence,
    valid_fractions,
    vertex_labeling,
)

t = fx.t
F = TwoBridgeFraction


@pytest.fixture
def criterion(request):
    lines = request.config.__dict__.setdefault("acceptance_lines", [])

    def record(label, ok, detail=""):
        line = f"criterion {label}: {'PASS' if ok else 'FAIL'}{' - ' + detail if detail else ''}"
        lines.append(line)
        print(line)
        return ok

    return record


def primes_dividing(q, limit=None):
    return [p for p in range(3, q + 1) if q % p == 0 and is_odd_prime(p) and (limit is None or p <= limit)]


def canon(p, ell):
    return canonical_unit_normalize(p, ell)


def test_criterion_1_fixtures(criterion):
    start = time.perf_counter()
    checks = {
        "alexander 11/19": alexander(F(11, 19)) == fx.ALEXANDER_11_19,
        "alexander 5/9": alexander(F(5, 9)) == fx.ALEXANDER_5_9,
        "alexander 5/39": alexander(F(5, 39)) == fx.ALEXANDER_5_39,
        "d, e 5/9": d_e_polynomials(F(5, 9), 3) == (fx.D_5_9, fx.E_5_9),
        "d 5/39": d_e_polynomials(F(5, 39), 3)[0] == fx.D_5_39,
        "e 5/39 (sign-corrected)": d_e_polynomials(F(5, 39), 3)[1] == fx.E_5_39,
        "d, e 5/13": d_e_polynomials(F(5, 13), 13) == (fx.D_5_13, fx.E_5_13),
    }
    elapsed = time.perf_counter() - start
    failed = [k for k, v in checks.items() if not v]
    assert criterion("1", not failed, f"{len(checks)} fixtures in {elapsed * 1000:.1f} ms {failed or ''}")


@pytest.mark.xfail(strict=True, reason="the displayed e for 5/39 has the wrong signs on t^2 and t^6: "
                   "it contradicts the displayed D for 5/(9+30k) at k = 1 and the Fox-calculus oracle")
def test_criterion_1_e_5_39_as_displayed(criterion):
    ok = d_e_polynomials(F(5, 39), 3)[1] == fx.E_5_39_DISPLAYED
    criterion("1 (e for 5/39, literal display)", ok, "expected failure, documented inconsistency")
    assert ok


def test_criterion_2_worked_example(criterion):
    start = time.perf_counter()
    res = twisted_alexander_product(F(5, 13), 13)
    target = exact_div(res.delta * fx.F_5_13 * fx.F_5_13.substitute_neg(), t - 1)
    same = canon(res.twisted, 13) == canon(target, 13)
    rep = verify_conjecture(res, fx.F_5_13)
    elapsed = time.perf_counter() - start
    ok = same and rep.strong and elapsed < 1
    assert criterion("2", ok, f"units {rep.form_unit} / {rep.congruence_unit}, {elapsed:.2f} s")


def test_criterion_3_oracle_sweep(criterion):
    start = time.perf_counter()
    cases = mismatches = 0
    for q in range(3, 64, 2):
        for ell in primes_dividing(q, 13):
            for f in valid_fractions(q):
                product = canon(twisted_alexander_product(f, ell).twisted, ell)
                for m in range(1, ell):
                    cases += 1
                    if canon(twisted_alexander_oracle(f, ell, m).twisted, ell) != product:
                        mismatches += 1
    elapsed = time.perf_counter() - start
    assert criterion("3", mismatches == 0, f"{cases} (p, q, ell, m) cases, {mismatches} mismatches, {elapsed:.1f} s")


def test_criterion_4_denominator(criterion):
    bad = [(ell, m) for ell in (3, 5, 7, 11, 13) for m in range(1, ell)
           if symbolic_det(denominator_matrix(ell, m)) != -(1 + t) ** ((ell - 1) // 2) * (1 - t) ** ((ell + 1) // 2)]
    assert denominator(13) == -(1 + t) ** 6 * (1 - t) ** 7
    assert criterion("4", not bad, f"ell in 3..13, all m; failures {bad}" if bad else "ell in 3..13, all m")


def test_criterion_5_closed_forms(criterion):
    torus = genus = sigma = 0
    bad = []
    for q in range(3, 64, 2):
        for ell in primes_dividing(q):
            torus += 1
            if canon(torus_twisted(q, ell), ell) != canon(twisted_alexander_product(F(1, q), ell).twisted, ell):
                bad.append(("torus", q, ell))
    for sign in (1, -1):
        for r in range(1, 16):
            for s in range(1, 16):
                q = 4 * r * s + sign
                if q > 63:
                    continue
                f = genus_one_fraction(r, s, sign)
                sigma += 1
                if genus_one_sigma(r, s, sign) != sigma_sequence(f) or genus_one_alexander(r, s, sign) != alexander(f):
                    bad.append(("sigma", r, s, sign))
                for ell in primes_dividing(q):
                    genus += 1
                    if canon(genus_one_twisted(r, s, sign, ell), ell) != \
                            canon(twisted_alexander_product(f, ell).twisted, ell):
                        bad.append(("genus one", r, s, sign, ell))
    assert criterion("5", not bad, f"{torus} torus, {genus} genus-one, {sigma} sigma cases {bad or ''}")


def test_criterion_6_recursion(criterion):
    cases, bad = 0, []
    for p in (1, 3, 5, 7):
        for ell in (3, 5, 7):
            for root in root_fractions(p, ell):
                for k in range(6):
                    d, e, delta = recursion_q(root, ell, k)
                    target = F(p, root.q + 2 * k * ell * p)
                    cases += 1
                    if (d, e) != d_e_polynomials(target, ell) or delta != alexander(target):
                        bad.append((str(root), ell, k))
    assert criterion("6", not bad, f"{cases} (root, ell, k) cases {bad or ''}")


def test_criterion_7_cluster_shift(criterion):
    ratio = congruence = 0
    bad = []
    roots = [(r, ell) for p in (3, 5, 7) for ell in (3, 5, 7) for r in root_fractions(p, ell)]
    assert (F(5, 33), 3) in roots
    for root, ell in roots:
        for j in (1, 2):
            rep = cluster_shift(root, ell, j)
            congruence += 1
            if not (rep.alexander_congruent and rep.twisted_congruent):
                bad.append(("mod ell", str(root), ell, j))
            if gcd(rep.a1, ell) == 1:
                ratio += 1
                if not rep.ratio_equal:
                    bad.append(("ratio", str(root), ell, j))
    assert criterion("7", not bad, f"{congruence} congruence and {ratio} exact-ratio checks {bad or ''}")


def test_criterion_8_appendix_sweep(criterion):
    start = time.perf_counter()
    reports = verify_appendix(load_appendix(), kmax=3, jmax=2)
    failed = [(str(r.point.root), r.point.ell, r.point.j, r.point.k) for r in reports if not r.conjecture.strong]
    units = {(str(r.conjecture.form_unit), str(r.conjecture.congruence_unit)) for r in reports}
    uneven = [r for r in reports if not r.conjecture.g_is_even]
    elapsed = time.perf_counter() - start
    ok = not failed and not uneven and all(r.conjecture.form_unit is not None for r in reports)
    assert criterion("8", ok, f"{len(reports)} family points strong, units {sorted(units)}, {elapsed:.1f} s")


@settings(max_examples=300, deadline=None)
@given(nonzero_laurents(max_len=12, max_coeff=50), st.sampled_from([3, 5, 7, 11, 13]),
       st.integers(-6, 6), st.sampled_from([1, -1]))
def _normalize_properties(a, ell, r, sign):
    c = canonical_unit_normalize(a, ell)
    assert canonical_unit_normalize(c, ell) == c
    assert canonical_unit_normalize(a.shift(r * ell).scale(sign), ell) == c


def test_criterion_9_property_suites(criterion):
    bad = []
    fractions = 0
    for q in range(3, 200, 2):
        for f in valid_fractions(q):
            fractions += 1
            report = check_sigma_properties(f)
            if not report.ok:
                bad.append(("sigma", str(f), report.failures))
    for ell in (3, 5, 7, 11, 13):
        minus = plus = CycInt.from_int(ell, 1)
        for i in range(1, ell):
            minus = minus * (1 - CycInt.zeta_power(ell, i))
            plus = plus * (1 + CycInt.zeta_power(ell, i))
        if minus != ell or plus != 1:
            bad.append(("cyclotomic", ell))
    _normalize_properties()
    labelled = 0
    for q in range(3, 64, 2):
        for ell in primes_dividing(q, 13):
            for f in valid_fractions(q):
                labelled += 1
                if vertex_labeling(f, ell).read_d_e() != d_e_polynomials(f, ell):
                    bad.append(("labels", str(f), ell))
    assert criterion("9", not bad, f"{fractions} fractions, 5 primes, {labelled} labelled graphs {bad or ''}")
