"""Scratch representation: pairs of polynomials in (z, w) over Q(i).

Basis terms expand to

    X_jk mu^n -> (z^j w^k, w^j z^k) mu^n
    Y_jk mu^n -> (i z^j w^k, -i w^j z^k) mu^n

so every element of the X/Y span is a pair (P(z,w), P*(w,z)) where *
conjugates coefficients.  Gaussian rationals are (re, im) tuples of Rat;
monomial keys are (z-power, w-power, mu-exponent).  Used only inside the
Lie-structure layer; nothing here is part of the public surface.
"""

from .errors import NotInSpan
from .rational import ONE, ZERO
from .series import ParamVectorField
from .terms import BasisTerm, mu_add

GZERO = (ZERO, ZERO)


def gadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _tadd(tbl, key, val):
    s = gadd(tbl.get(key, GZERO), val)
    if s[0] == 0 and s[1] == 0:
        tbl.pop(key, None)
    else:
        tbl[key] = s


class PolyVF2C:
    """Two polynomial components over Q(i)[z, w], mu carried passively."""

    __slots__ = ("p1", "p2")

    def __init__(self, p1=None, p2=None):
        self.p1 = p1 or {}
        self.p2 = p2 or {}

    def add(self, other):
        out = PolyVF2C(dict(self.p1), dict(self.p2))
        for key, val in other.p1.items():
            _tadd(out.p1, key, val)
        for key, val in other.p2.items():
            _tadd(out.p2, key, val)
        return out

    def gscale(self, g):
        if g[0] == 0 and g[1] == 0:
            return PolyVF2C()
        return PolyVF2C(
            {k: gmul(v, g) for k, v in self.p1.items()},
            {k: gmul(v, g) for k, v in self.p2.items()},
        )


def poly_mul(p, q):
    """Product of two scalar Q(i)[z, w, mu] polynomials (dict form)."""
    out = {}
    for (a1, b1, m1), c1 in p.items():
        for (a2, b2, m2), c2 in q.items():
            _tadd(out, (a1 + a2, b1 + b2, mu_add(m1, m2)), gmul(c1, c2))
    return out


def poly_diff(p, var):
    """d/dz (var=0) or d/dw (var=1) of a scalar polynomial."""
    out = {}
    for (a, b, mu), c in p.items():
        e = a if var == 0 else b
        if e == 0:
            continue
        key = (a - 1, b, mu) if var == 0 else (a, b - 1, mu)
        _tadd(out, key, (c[0] * e, c[1] * e))
    return out


def expand_basis(t: BasisTerm) -> PolyVF2C:
    """Single basis term as a polynomial pair."""
    mu = t.mu
    if t.kind == "X":
        return PolyVF2C({(t.j, t.k, mu): (ONE, ZERO)}, {(t.k, t.j, mu): (ONE, ZERO)})
    return PolyVF2C({(t.j, t.k, mu): (ZERO, ONE)}, {(t.k, t.j, mu): (ZERO, -ONE)})


def expand_field(v: ParamVectorField) -> PolyVF2C:
    p1, p2 = {}, {}
    for t, c in v.terms.items():
        g = (c, ZERO)
        if t.kind == "X":
            _tadd(p1, (t.j, t.k, t.mu), g)
            _tadd(p2, (t.k, t.j, t.mu), g)
        else:
            _tadd(p1, (t.j, t.k, t.mu), (ZERO, c))
            _tadd(p2, (t.k, t.j, t.mu), (ZERO, -c))
    return PolyVF2C(p1, p2)


def project_to_basis(p: PolyVF2C, grading, m, degree) -> ParamVectorField:
    """Inverse of expand on the X/Y span; exact, raises NotInSpan otherwise.

    Each first-component monomial c*z^a w^b mu^n decomposes as
    re(c)*X_ab + im(c)*Y_ab; the second component must then carry the
    mirrored conjugate, and nothing may be left over.
    """
    out = {}
    expected_p2 = {}
    for (a, b, mu), (re, im) in p.p1.items():
        if a + b < 1:
            raise NotInSpan(f"monomial z^{a} w^{b} has degree 0")
        if re != 0:
            t = BasisTerm("X", a, b, mu)
            out[t] = out.get(t, ZERO) + re
        if im != 0:
            t = BasisTerm("Y", a, b, mu)
            out[t] = out.get(t, ZERO) + im
        _tadd(expected_p2, (b, a, mu), (re, -im))
    if expected_p2 != p.p2:
        raise NotInSpan("second component is not the mirror conjugate")
    return ParamVectorField(grading, m, degree, out)
