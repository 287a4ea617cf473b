"""Exact rational coefficients.

All coefficient arithmetic in this package is exact: no floats, ever.
``Rat`` is gmpy2.mpq when available (much faster elimination on larger
slices) and falls back to fractions.Fraction.  Both keep values in lowest
terms with positive denominator, which is the invariant the rest of the
code relies on.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Rat = Fraction

ZERO = Rat(0)
ONE = Rat(1)


def rat(p, q=1):
    """Exact rational p/q from integers (or a string like '3/4')."""
    if isinstance(p, str):
        return Rat(Fraction(p))
    return Rat(p, q)


def rat_str(x):
    """Canonical 'p' or 'p/q' form, stable across backends."""
    f = Fraction(x.numerator, x.denominator)
    return str(f)
