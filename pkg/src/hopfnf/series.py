"""Truncated sparse series over exact rationals.

Three containers share the same conventions: a finitely supported
coefficient table, a hard truncation degree, and a shared Grading.
No zero coefficient is ever stored; any term whose grade exceeds the
truncation degree is dropped silently (computations are exact up to the
stated degree).  All values are immutable in use: operations return new
objects and never mutate their inputs.
"""

from .rational import ZERO
from .terms import (
    BasisTerm,
    Grading,
    TimeTerm,
    grade_param,
    grade_state,
    grade_time,
    param_key,
    term_key,
    time_key,
)


class ParamVectorField:
    """Element of the parametric state space: a rational combination of
    X_jk mu^n / Y_jk mu^n basis terms, truncated at ``degree``."""

    __slots__ = ("grading", "m", "degree", "terms")

    def __init__(self, grading: Grading, m: int, degree: int, terms=None):
        self.grading = grading
        self.m = m
        self.degree = degree
        tbl = {}
        if terms:
            for t, c in terms.items() if isinstance(terms, dict) else terms:
                if c == 0:
                    continue
                if len(t.mu) != m:
                    raise ValueError(f"term {t} has wrong parameter count")
                if t.j + t.k < 1:
                    raise ValueError(f"term {t} has j+k < 1")
                if grade_state(t, grading) <= degree:
                    tbl[t] = tbl.get(t, ZERO) + c
                    if tbl[t] == 0:
                        del tbl[t]
        self.terms = tbl

    def copy(self):
        v = ParamVectorField(self.grading, self.m, self.degree)
        v.terms = dict(self.terms)
        return v

    def is_zero(self):
        return not self.terms

    def coeff(self, t: BasisTerm):
        return self.terms.get(t, ZERO)

    def __eq__(self, other):
        return (
            isinstance(other, ParamVectorField)
            and self.m == other.m
            and self.terms == other.terms
        )

    def __add__(self, other):
        self._check(other)
        tbl = dict(self.terms)
        for t, c in other.terms.items():
            s = tbl.get(t, ZERO) + c
            if s == 0:
                tbl.pop(t, None)
            else:
                tbl[t] = s
        return self._wrap(tbl)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if c == 0:
            return self._wrap({})
        return self._wrap({t: c * v for t, v in self.terms.items()})

    def truncate(self, degree):
        """Drop every term of grade > degree; idempotent."""
        g = self.grading
        tbl = {t: c for t, c in self.terms.items() if grade_state(t, g) <= degree}
        v = ParamVectorField(g, self.m, min(self.degree, degree))
        v.terms = tbl
        return v

    def graded_part(self, n):
        g = self.grading
        tbl = {t: c for t, c in self.terms.items() if grade_state(t, g) == n}
        return self._wrap(tbl)

    def min_grade(self):
        """Lowest grade carrying a term, or None for the zero field."""
        if not self.terms:
            return None
        g = self.grading
        return min(grade_state(t, g) for t in self.terms)

    def support(self):
        return set(self.terms)

    def sorted_terms(self):
        g = self.grading
        return sorted(self.terms.items(), key=lambda tc: term_key(tc[0], g))

    def _check(self, other):
        if self.m != other.m or self.grading != other.grading:
            raise ValueError("incompatible fields")

    def _wrap(self, tbl):
        v = ParamVectorField(self.grading, self.m, self.degree)
        v.terms = tbl
        return v

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for t, c in self.sorted_terms():
            mu = "".join(f"*mu{i+1}^{e}" for i, e in enumerate(t.mu) if e)
            bits.append(f"({c})*{t.kind}[{t.j},{t.k}]{mu}")
        return " + ".join(bits)


class TimeSeries:
    """Near-identity part of a time rescaling: sum of T_{i,n} Z_i mu^n.

    The constant T_0 = 1 is fixed by convention and never stored here.
    """

    __slots__ = ("grading", "m", "degree", "terms")

    def __init__(self, grading: Grading, m: int, degree: int, terms=None):
        self.grading = grading
        self.m = m
        self.degree = degree
        tbl = {}
        if terms:
            for tt, c in terms.items() if isinstance(terms, dict) else terms:
                if c == 0:
                    continue
                tt = TimeTerm(*tt)
                if grade_time(tt.i, tt.mu, grading) <= degree:
                    tbl[tt] = tbl.get(tt, ZERO) + c
                    if tbl[tt] == 0:
                        del tbl[tt]
        self.terms = tbl

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, TimeSeries)
            and self.m == other.m
            and self.terms == other.terms
        )

    def __add__(self, other):
        tbl = dict(self.terms)
        for t, c in other.terms.items():
            s = tbl.get(t, ZERO) + c
            if s == 0:
                tbl.pop(t, None)
            else:
                tbl[t] = s
        return self._wrap(tbl)

    def scale(self, c):
        if c == 0:
            return self._wrap({})
        return self._wrap({t: c * v for t, v in self.terms.items()})

    def min_grade(self):
        if not self.terms:
            return None
        g = self.grading
        return min(grade_time(t.i, t.mu, g) for t in self.terms)

    def sorted_terms(self):
        g = self.grading
        return sorted(self.terms.items(), key=lambda tc: time_key(tc[0], g))

    def _wrap(self, tbl):
        s = TimeSeries(self.grading, self.m, self.degree)
        s.terms = tbl
        return s

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for t, c in self.sorted_terms():
            mu = "".join(f"*mu{i+1}^{e}" for i, e in enumerate(t.mu) if e)
            bits.append(f"({c})*Z{t.i}{mu}")
        return " + ".join(bits)


class ParamSeries:
    """Near-identity reparametrization generator: m series components,
    component j holding the mu-series added to parameter j.

    Generators contain only exponents with |n| >= 2 (the invertible linear
    part of a reparametrization is handled separately by the engine).
    """

    __slots__ = ("grading", "m", "degree", "components")

    def __init__(self, grading: Grading, m: int, degree: int, components=None):
        self.grading = grading
        self.m = m
        self.degree = degree
        comps = [dict() for _ in range(m)]
        if components:
            for j, tbl in enumerate(components):
                for mu, c in tbl.items() if isinstance(tbl, dict) else tbl:
                    if c == 0:
                        continue
                    mu = tuple(mu)
                    if len(mu) != m:
                        raise ValueError("wrong exponent length")
                    if grade_param(mu, grading) <= degree:
                        comps[j][mu] = comps[j].get(mu, ZERO) + c
                        if comps[j][mu] == 0:
                            del comps[j][mu]
        self.components = comps

    def is_zero(self):
        return not any(self.components)

    def __eq__(self, other):
        return (
            isinstance(other, ParamSeries)
            and self.m == other.m
            and self.components == other.components
        )

    def __add__(self, other):
        comps = [dict(c) for c in self.components]
        for j, tbl in enumerate(other.components):
            for mu, c in tbl.items():
                s = comps[j].get(mu, ZERO) + c
                if s == 0:
                    comps[j].pop(mu, None)
                else:
                    comps[j][mu] = s
        return self._wrap(comps)

    def scale(self, c):
        if c == 0:
            return self._wrap([dict() for _ in range(self.m)])
        return self._wrap([{mu: c * v for mu, v in tbl.items()} for tbl in self.components])

    def min_grade(self):
        g = self.grading
        grades = [
            grade_param(mu, g) for tbl in self.components for mu in tbl
        ]
        return min(grades) if grades else None

    def sorted_entries(self):
        g = self.grading
        entries = [
            (mu, j, c)
            for j, tbl in enumerate(self.components)
            for mu, c in tbl.items()
        ]
        return sorted(entries, key=lambda e: param_key(e[0], e[1], g))

    def _wrap(self, comps):
        s = ParamSeries(self.grading, self.m, self.degree)
        s.components = comps
        return s

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for mu, j, c in self.sorted_entries():
            mus = "*".join(f"mu{i+1}^{e}" for i, e in enumerate(mu) if e) or "1"
            bits.append(f"({c})*{mus}->mu{j+1}")
        return " + ".join(bits)


def vf_from_terms(grading, m, degree, pairs):
    """Convenience constructor from (BasisTerm, coeff) pairs."""
    return ParamVectorField(grading, m, degree, dict(pairs))
