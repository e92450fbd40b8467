"""Exception types raised across the package."""


class TwistedAlexanderError(Exception):
    """Base class for every error raised by this package."""


class InexactDivision(TwistedAlexanderError, ArithmeticError):
    """A polynomial division that must be exact left a nonzero remainder."""


class ZeroPolynomial(TwistedAlexanderError, ValueError):
    pass


class MismatchedEll(TwistedAlexanderError, ValueError):
    """Two cyclotomic values live over different primes."""


class NotCoprime(TwistedAlexanderError, ValueError):
    pass


class NotOdd(TwistedAlexanderError, ValueError):
    pass


class OutOfRange(TwistedAlexanderError, ValueError):
    pass


class NotOddPrime(TwistedAlexanderError, ValueError):
    pass


class NotLambdaFree(TwistedAlexanderError, ValueError):
    """A cyclotomic coefficient expected to be a rational integer was not."""


class EllDoesNotDivideQ(TwistedAlexanderError, ValueError):
    pass


class BadM(TwistedAlexanderError, ValueError):
    pass


class JRestricted(TwistedAlexanderError, ValueError):
    """A family on a j = 0 only appendix row was asked for j > 0."""


class NotDivisibleModEll(TwistedAlexanderError, ValueError):
    """The Alexander polynomial is not divisible by 1 + t modulo ell."""
