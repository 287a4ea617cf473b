"""Lie bracket, time-ring action, parameter derivatives, and the three
near-identity transformation maps on the parametric state space.

Sign convention: the bracket is [u, v] = (Dv)u - (Du)v.  With it,

    ad_{Y_10} X_jk = (j - k - 1) Y_jk,
    ad_{Y_10} Y_jk = -(j - k - 1) X_jk,

so the resonant families are exactly j = k + 1.  The composite
differential d(Y) = D_mu(v) Y^P + Y^T v + ad_{Y^S} v is the first-order
part of applying state, then time, then reparametrization.
"""

from math import factorial
from typing import NamedTuple

from .poly2c import PolyVF2C, expand_field, gadd, poly_diff, poly_mul, project_to_basis
from .rational import ONE, Rat, ZERO
from .series import ParamSeries, ParamVectorField, TimeSeries
from .terms import BasisTerm, TimeTerm, grade_state, mu_abs, mu_add


class GeneratorTriple(NamedTuple):
    """One near-identity transformation: (reparametrization, time, state)."""

    yP: ParamSeries
    yT: TimeSeries
    yS: ParamVectorField

    def is_zero(self):
        return self.yP.is_zero() and self.yT.is_zero() and self.yS.is_zero()


def lie_bracket(u: ParamVectorField, v: ParamVectorField, degree=None) -> ParamVectorField:
    """[u, v] = (Dv)u - (Du)v, truncated at degree (u's degree if None)."""
    if degree is None:
        degree = u.degree
    pu, pv = expand_field(u), expand_field(v)
    comps = []
    for row in (0, 1):
        qv = pv.p1 if row == 0 else pv.p2
        qu = pu.p1 if row == 0 else pu.p2
        term = {}
        for key, val in poly_mul(poly_diff(qv, 0), pu.p1).items():
            _acc(term, key, val)
        for key, val in poly_mul(poly_diff(qv, 1), pu.p2).items():
            _acc(term, key, val)
        for key, val in poly_mul(poly_diff(qu, 0), pv.p1).items():
            _acc(term, key, (-val[0], -val[1]))
        for key, val in poly_mul(poly_diff(qu, 1), pv.p2).items():
            _acc(term, key, (-val[0], -val[1]))
        comps.append(term)
    out = project_to_basis(PolyVF2C(comps[0], comps[1]), u.grading, u.m, degree)
    return out.truncate(degree)


def _acc(tbl, key, val):
    cur = tbl.get(key)
    s = gadd(cur, val) if cur else val
    if s[0] == 0 and s[1] == 0:
        tbl.pop(key, None)
    else:
        tbl[key] = s


def time_term_action(i, mu1, t: BasisTerm) -> BasisTerm:
    """Z_i mu^n1 . (X|Y)_jk mu^n2 = (X|Y)_(i+j)(i+k) mu^(n1+n2)."""
    return BasisTerm(t.kind, t.j + i, t.k + i, mu_add(mu1, t.mu))


def time_action(T: TimeSeries, v: ParamVectorField, degree=None) -> ParamVectorField:
    """Module action of the time ring, truncated."""
    if degree is None:
        degree = v.degree
    g = v.grading
    out = {}
    for tt, tc in T.terms.items():
        for t, c in v.terms.items():
            nt = time_term_action(tt.i, tt.mu, t)
            if grade_state(nt, g) <= degree:
                s = out.get(nt, ZERO) + tc * c
                if s == 0:
                    out.pop(nt, None)
                else:
                    out[nt] = s
    w = ParamVectorField(g, v.m, degree)
    w.terms = out
    return w


def _mu_diff(v: ParamVectorField, j):
    """Formal d/dmu_j on coefficients; lowers |n| by one."""
    out = {}
    for t, c in v.terms.items():
        e = t.mu[j]
        if e == 0:
            continue
        nmu = tuple(x - 1 if i == j else x for i, x in enumerate(t.mu))
        nt = BasisTerm(t.kind, t.j, t.k, nmu)
        out[nt] = out.get(nt, ZERO) + c * e
    w = ParamVectorField(v.grading, v.m, v.degree)
    w.terms = out
    return w


def _mu_series_mul(v: ParamVectorField, series, degree):
    """Multiply a field by a scalar mu-series {mu_exp: coeff}."""
    g = v.grading
    out = {}
    for mu, sc in series.items():
        for t, c in v.terms.items():
            nt = BasisTerm(t.kind, t.j, t.k, mu_add(t.mu, mu))
            if grade_state(nt, g) <= degree:
                s = out.get(nt, ZERO) + sc * c
                if s == 0:
                    out.pop(nt, None)
                else:
                    out[nt] = s
    w = ParamVectorField(g, v.m, degree)
    w.terms = out
    return w


def frechet_derivative(v: ParamVectorField, yP: ParamSeries, order: int, degree=None) -> ParamVectorField:
    """Order-n formal Frechet derivative D^n_mu(v, yP).

    Only v is differentiated; the generator components enter as constant
    directions: D^n(v, Y) = sum over multi-indices beta with |beta| = n of
    (n!/beta!) d^beta v * Y^beta.  Not linear in Y for n >= 2.
    """
    if degree is None:
        degree = v.degree
    if order < 1:
        raise ValueError("order must be >= 1")
    total = ParamVectorField(v.grading, v.m, degree)
    for beta, mult in _multi_indices(v.m, order):
        dv = v
        for j, e in enumerate(beta):
            for _ in range(e):
                dv = _mu_diff(dv, j)
            if dv.is_zero():
                break
        if dv.is_zero():
            continue
        series = {(0,) * v.m: Rat(mult)}
        for j, e in enumerate(beta):
            for _ in range(e):
                series = _scalar_mu_mul(series, yP.components[j], degree)
            if not series:
                break
        if series:
            total = total + _mu_series_mul(dv, series, degree)
    return total


def _multi_indices(m, n):
    """(beta, n!/beta!) for all beta in N^m with |beta| = n."""

    def rec(rem, slots):
        if slots == 1:
            yield (rem,)
            return
        for e in range(rem + 1):
            for rest in rec(rem - e, slots - 1):
                yield (e,) + rest

    for beta in rec(n, m):
        mult = factorial(n)
        for e in beta:
            mult //= factorial(e)
        yield beta, mult


def apply_state(v: ParamVectorField, yS: ParamVectorField, degree=None) -> ParamVectorField:
    """Push-forward by the time-one map of yS: exp(ad_yS) v, truncated.

    Each bracket with yS raises grade by at least min-grade(yS) >= 1, so
    the series is finite below any truncation degree.
    """
    if degree is None:
        degree = v.degree
    if yS.is_zero():
        return v.truncate(degree)
    if (yS.min_grade() or 0) < 1:
        raise ValueError("state generator must have grade >= 1")
    acc = v.truncate(degree)
    w = acc
    n = 1
    while True:
        w = lie_bracket(yS, w, degree).scale(Rat(1, n))
        if w.is_zero():
            break
        acc = acc + w
        n += 1
    return acc


def apply_time(v: ParamVectorField, yT: TimeSeries, degree=None) -> ParamVectorField:
    """Time rescaling t = tau(1 + yT): v |-> v + yT v.  Exact, not a series."""
    if degree is None:
        degree = v.degree
    if yT.is_zero():
        return v.truncate(degree)
    if (yT.min_grade() or 0) < 1:
        raise ValueError("time generator must have grade >= 1")
    return v.truncate(degree) + time_action(yT, v, degree)


def apply_reparam(v: ParamVectorField, yP: ParamSeries, degree=None) -> ParamVectorField:
    """Substitute mu_j <- mu_j + yP_j(mu) in every coefficient, truncated.

    Agrees with the Taylor sum of the Frechet derivatives; computed here
    by direct polynomial substitution, which is exact.
    """
    if degree is None:
        degree = v.degree
    if yP.is_zero():
        return v.truncate(degree)
    if (yP.min_grade() or 0) < 1:
        raise ValueError("parameter generator must have grade >= 1")
    g = v.grading
    m = v.m
    alpha = g.alpha
    out = ParamVectorField(g, m, degree)
    # success per term: expand prod_j (mu_j + yP_j)^(n_j) over mu-monomials,
    # bounding |exponent| by what the state part leaves available.
    for t, c in v.terms.items():
        room = degree - (t.j + t.k - 1)
        if room < 0:
            continue
        max_abs = room // alpha
        poly = {(0,) * m: c}
        for j, e in enumerate(t.mu):
            base = dict(yP.components[j])
            unit = tuple(1 if i == j else 0 for i in range(m))
            base[unit] = base.get(unit, ZERO) + ONE
            for _ in range(e):
                poly = _scalar_mu_mul(poly, base, max_abs)
        for mu, sc in poly.items():
            nt = BasisTerm(t.kind, t.j, t.k, mu)
            if grade_state(nt, g) <= degree:
                cur = out.terms.get(nt, ZERO) + sc
                if cur == 0:
                    out.terms.pop(nt, None)
                else:
                    out.terms[nt] = cur
    return out


def _scalar_mu_mul(p, q, max_abs):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            mu = mu_add(m1, m2)
            if mu_abs(mu) > max_abs:
                continue
            s = out.get(mu, ZERO) + c1 * c2
            if s == 0:
                out.pop(mu, None)
            else:
                out[mu] = s
    return out


def differential(v: ParamVectorField, Y: GeneratorTriple, degree=None) -> ParamVectorField:
    """d(Y) = D_mu(v) Y^P + Y^T v + ad_{Y^S} v, truncated."""
    if degree is None:
        degree = v.degree
    out = ParamVectorField(v.grading, v.m, degree)
    if not Y.yP.is_zero():
        out = out + frechet_derivative(v, Y.yP, 1, degree)
    if not Y.yT.is_zero():
        out = out + time_action(Y.yT, v, degree)
    if not Y.yS.is_zero():
        out = out + lie_bracket(Y.yS, v, degree)
    return out


def apply_triple(v: ParamVectorField, Y: GeneratorTriple, degree=None) -> ParamVectorField:
    """Full nonlinear transformation: state, then time, then reparam."""
    if degree is None:
        degree = v.degree
    w = apply_state(v, Y.yS, degree)
    w = apply_time(w, Y.yT, degree)
    return apply_reparam(w, Y.yP, degree)


def linear_subst_mu_series(series, L, m, cap):
    """Substitute mu <- L nu in a scalar mu-series {exponent: coeff}."""
    out = {}
    for mu, c in series.items():
        poly = {(0,) * m: c}
        for i, e in enumerate(mu):
            row = {
                tuple(1 if q == j else 0 for q in range(m)): L[i][j]
                for j in range(m)
                if L[i][j] != 0
            }
            for _ in range(e):
                poly = _scalar_mu_mul(poly, row, cap)
        for nm, nc in poly.items():
            s = out.get(nm, ZERO) + nc
            if s == 0:
                out.pop(nm, None)
            else:
                out[nm] = s
    return out


def linear_subst_time(T: TimeSeries, L) -> TimeSeries:
    """mu <- L nu inside a time series."""
    out = TimeSeries(T.grading, T.m, T.degree)
    for tt, c in T.terms.items():
        for nm, nc in linear_subst_mu_series({tt.mu: c}, L, T.m, T.degree).items():
            key = TimeTerm(tt.i, nm)
            s = out.terms.get(key, ZERO) + nc
            if s == 0:
                out.terms.pop(key, None)
            else:
                out.terms[key] = s
    return out


def conjugate_triple(Y: GeneratorTriple, L, Linv) -> GeneratorTriple:
    """Generator triple Y' with S_L . phi_Y = phi_Y' . S_L, where S_L is
    the linear substitution mu <- L nu.

    Blockwise: the state generator gets mu substituted, the time
    generator likewise, and the reparametrization generator becomes
    L^-1 yP(L nu).
    """
    m = Y.yS.m
    yS = apply_linear_reparam(Y.yS, L)
    yT = linear_subst_time(Y.yT, L)
    comps = [
        linear_subst_mu_series(tbl, L, m, Y.yP.degree) for tbl in Y.yP.components
    ]
    mixed = [dict() for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if Linv[i][j] == 0:
                continue
            for mu, c in comps[j].items():
                s = mixed[i].get(mu, ZERO) + Linv[i][j] * c
                if s == 0:
                    mixed[i].pop(mu, None)
                else:
                    mixed[i][mu] = s
    yP = ParamSeries(Y.yP.grading, m, Y.yP.degree, mixed)
    return GeneratorTriple(yP, yT, yS)


def apply_linear_reparam(v: ParamVectorField, L, degree=None) -> ParamVectorField:
    """Invertible linear substitution mu <- L nu (L an m x m Rat matrix,
    columns giving the image of each new parameter)."""
    if degree is None:
        degree = v.degree
    m = v.m
    g = v.grading
    out = ParamVectorField(g, m, degree)
    # mu_i = sum_j L[i][j] nu_j; expand each monomial exactly.
    for t, c in v.terms.items():
        poly = {(0,) * m: c}
        for i, e in enumerate(t.mu):
            row = {tuple(1 if q == j else 0 for q in range(m)): L[i][j] for j in range(m) if L[i][j] != 0}
            for _ in range(e):
                poly = _scalar_mu_mul(poly, row, degree)
        for mu, sc in poly.items():
            nt = BasisTerm(t.kind, t.j, t.k, mu)
            if grade_state(nt, g) <= degree:
                cur = out.terms.get(nt, ZERO) + sc
                if cur == 0:
                    out.terms.pop(nt, None)
                else:
                    out.terms[nt] = cur
    return out
