from math import gcd

from hypothesis import settings
from hypothesis import strategies as st

from twisted_alexander.laurent import IntLaurent
from twisted_alexander.twobridge import TwoBridgeFraction

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_PRIMES = (3, 5, 7, 11, 13)


@st.composite
def laurents(draw, max_len=8, max_coeff=20, max_low=6):
    low = draw(st.integers(-max_low, max_low))
    coeffs = draw(st.lists(st.integers(-max_coeff, max_coeff), max_size=max_len))
    return IntLaurent(low, coeffs)


@st.composite
def nonzero_laurents(draw, **kw):
    p = draw(laurents(**kw))
    return p if not p.is_zero() else IntLaurent.constant(draw(st.sampled_from([1, -1, 2, 3])))


@st.composite
def fractions(draw, max_q=99):
    q = draw(st.integers(1, (max_q - 1) // 2)) * 2 + 1
    p = draw(st.sampled_from([p for p in range(1, q, 2) if gcd(p, q) == 1]))
    return TwoBridgeFraction(p, q)


@st.composite
def colored_fractions(draw, max_q=63, primes=SMALL_PRIMES):
    """``(fraction, ell)`` with ``ell | q``."""
    ell = draw(st.sampled_from(primes))
    mult = draw(st.integers(0, max(0, (max_q // ell - 1) // 2)))
    q = ell * (2 * mult + 1)
    p = draw(st.sampled_from([p for p in range(1, q, 2) if gcd(p, q) == 1]))
    return TwoBridgeFraction(p, q), ell


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", None)
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
