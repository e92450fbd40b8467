"""Reference values shared by the unit and acceptance suites."""
from twisted_alexander.cyclotomic import CycLaurent
from twisted_alexander.laurent import IntLaurent, parse_poly

t = IntLaurent.t()


def cyc(ell, terms):
    """``{t_exp: {lambda_exp: coeff}}`` to a CycLaurent."""
    out = CycLaurent(ell)
    for te, lam in terms.items():
        for le, c in lam.items():
            out = out + CycLaurent.monomial(ell, te, le, c)
    return out


ALEXANDER_11_19 = parse_poly("-t^-1 + 5 - 7*t + 5*t^2 - t^3")
ALEXANDER_5_9 = parse_poly("-2*t^-1 + 5 - 2*t")
ALEXANDER_5_39 = parse_poly("-2*t^-1 + 5 - 5*t + 5*t^2 - 5*t^3 + 5*t^4 - 5*t^5 + 5*t^6 - 2*t^7")

D_5_9 = cyc(3, {-1: {0: -1}, 1: {1: -1}})
E_5_9 = cyc(3, {0: {1: -1}})
D_5_39 = cyc(3, {-1: {0: -1}, 1: {1: -1}, 3: {0: 1, 1: 1}, 5: {0: -1}, 7: {1: -1}})
# As displayed in the reference, and with the t^2 and t^6 signs that the
# reference's own D(5/(9+30k)) and the Fox-calculus oracle both require.
E_5_39_DISPLAYED = cyc(3, {0: {1: -1}, 2: {0: -1, 1: -1}, 4: {0: -1}, 6: {1: 1}})
E_5_39 = cyc(3, {0: {1: -1}, 2: {0: 1, 1: 1}, 4: {0: -1}, 6: {1: -1}})

E_5_13 = cyc(13, {-2: {-5: 1}, 0: {0: 1, -2: 1, 3: 1, -4: 1, 6: 1}, 2: {1: 1}})
D_5_13 = cyc(13, {-1: {3: 1, -5: 1, 6: 1}, 1: {1: 1, -2: 1, -4: 1}})
F_5_13 = ((1 + t) ** 6 * (t ** 6 - 2 * t ** 5 + t ** 3 - 2 * t + 1) ** 2).shift(-12)


def big_d_family_5_9(alpha):
    """``(t-1)^2 (t+1)^2 (t^6 a - t^3 a + 1)(t^6 a + t^3 a + 1) / t^2``."""
    return ((t - 1) ** 2 * (t + 1) ** 2 * (t ** 6 * alpha - t ** 3 * alpha + 1)
            * (t ** 6 * alpha + t ** 3 * alpha + 1)).shift(-2)
