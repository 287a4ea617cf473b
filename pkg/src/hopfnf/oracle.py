"""Independent brute-force oracles.

These share only the rational type and the index/series containers with
the main path.  The bracket below re-derives everything from scratch:
each basis term is expanded to explicit bivariate monomials, the
Wronskian-style bracket (Dv)u - (Du)v is computed monomial by monomial,
and the result is matched back against the X/Y span by its own code.
Slow on purpose; used in tests and behind the CLI --verify flag.
"""

from .errors import NotInSpan
from .lie import apply_linear_reparam, apply_reparam, apply_state, apply_time
from .rational import Rat, ZERO
from .series import ParamVectorField
from .terms import BasisTerm, mu_add


def _term_monomials(t: BasisTerm):
    """[(component, zdeg, wdeg, re, im)] for one basis term (coeff 1)."""
    if t.kind == "X":
        return [(0, t.j, t.k, Rat(1), ZERO), (1, t.k, t.j, Rat(1), ZERO)]
    return [(0, t.j, t.k, ZERO, Rat(1)), (1, t.k, t.j, ZERO, -Rat(1))]


def _bracket_pair(a: BasisTerm, b: BasisTerm):
    """Monomial table of [a, b] = (Db)a - (Da)b, keyed (comp, zd, wd, mu)."""
    mu = mu_add(a.mu, b.mu)
    table = {}

    def add(comp, zd, wd, re, im):
        key = (comp, zd, wd)
        cre, cim = table.get(key, (ZERO, ZERO))
        cre, cim = cre + re, cim + im
        if cre == 0 and cim == 0:
            table.pop(key, None)
        else:
            table[key] = (cre, cim)

    # (Db)a: differentiate each component of b by z and w, multiply by the
    # matching component of a; then subtract the mirror image (Da)b.
    for sign, first, second in ((1, b, a), (-1, a, b)):
        fm = _term_monomials(first)
        sm = _term_monomials(second)
        for comp, zd, wd, re, im in fm:
            # d/dz times second's component 0
            if zd > 0:
                for c2, z2, w2, re2, im2 in sm:
                    if c2 != 0:
                        continue
                    fre, fim = re * zd, im * zd
                    pre = fre * re2 - fim * im2
                    pim = fre * im2 + fim * re2
                    add(comp, zd - 1 + z2, wd + w2, sign * pre, sign * pim)
            # d/dw times second's component 1
            if wd > 0:
                for c2, z2, w2, re2, im2 in sm:
                    if c2 != 1:
                        continue
                    fre, fim = re * wd, im * wd
                    pre = fre * re2 - fim * im2
                    pim = fre * im2 + fim * re2
                    add(comp, zd + z2, wd - 1 + w2, sign * pre, sign * pim)
    return table, mu


def _match_span(table, mu):
    """Decompose a two-component monomial table over X/Y terms with the
    given mu exponent; raises NotInSpan on any residue."""
    out = {}
    first = {k: v for k, v in table.items() if k[0] == 0}
    second = {k: v for k, v in table.items() if k[0] == 1}
    for (comp, zd, wd), (re, im) in first.items():
        if zd + wd < 1:
            raise NotInSpan("degree-zero monomial in bracket")
        if re != 0:
            out[BasisTerm("X", zd, wd, mu)] = re
        if im != 0:
            out[BasisTerm("Y", zd, wd, mu)] = out.get(BasisTerm("Y", zd, wd, mu), ZERO) + im
        # corresponding mirror monomial expected in component 1
        key = (1, wd, zd)
        sre, sim = second.pop(key, (ZERO, ZERO))
        if sre != re or sim != -im:
            raise NotInSpan("mirror condition violated")
    if any(v != (ZERO, ZERO) for v in second.values()):
        raise NotInSpan("unmatched second-component monomials")
    return out


def oracle_bracket(u: ParamVectorField, v: ParamVectorField, degree=None) -> ParamVectorField:
    """Brute-force [u, v]; must agree exactly with lie.lie_bracket."""
    if degree is None:
        degree = u.degree
    out = ParamVectorField(u.grading, u.m, degree)
    for ta, ca in u.terms.items():
        for tb, cb in v.terms.items():
            table, mu = _bracket_pair(ta, tb)
            for term, coef in _match_span(table, mu).items():
                cur = out.terms.get(term, ZERO) + ca * cb * coef
                if cur == 0:
                    out.terms.pop(term, None)
                else:
                    out.terms[term] = cur
    return out.truncate(degree)


def replay(v0: ParamVectorField, log, degree=None) -> ParamVectorField:
    """Re-run a TransformLog: linear reparametrization first, then every
    recorded generator triple in order (state, then time, then reparam).

    This is the master acceptance oracle: the result must equal the
    engine's reported normal form exactly.
    """
    if degree is None:
        degree = v0.degree
    v = v0.truncate(degree)
    if log.linear_reparam is not None:
        v = apply_linear_reparam(v, log.linear_reparam, degree)
    for entry in log.entries:
        Y = entry.triple
        v = apply_state(v, Y.yS, degree)
        v = apply_time(v, Y.yT, degree)
        v = apply_reparam(v, Y.yP, degree)
    return v


def dense_solve_grade(v: ParamVectorField, grade, generators, action, slice_terms):
    """Textbook dense elimination on one grade slice.

    generators: list of opaque generator handles; action(gen) must return
    the image field of the differential at this grade; slice_terms fixes
    the coordinate order.  Returns (coeffs, residual_field) where coeffs
    solves away everything solvable.
    """
    idx = {t: i for i, t in enumerate(slice_terms)}
    dim = len(slice_terms)
    cols = []
    for gen in generators:
        img = action(gen)
        col = [ZERO] * dim
        for t, c in img.terms.items():
            if t in idx:
                col[idx[t]] = c
        cols.append(col)
    target = [ZERO] * dim
    for t, c in v.graded_part(grade).terms.items():
        target[idx[t]] = c
    # forward elimination, partial pivot by row order
    ncols = len(cols)
    aug = [[cols[c][r] for c in range(ncols)] + [target[r]] for r in range(dim)]
    piv_cols = []
    row = 0
    for col in range(ncols):
        sel = next((r for r in range(row, dim) if aug[r][col] != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(dim):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        piv_cols.append(col)
        row += 1
        if row == dim:
            break
    coeffs = [ZERO] * ncols
    for r, col in enumerate(piv_cols):
        coeffs[col] = -aug[r][ncols]
    # residual = target + sum coeffs * cols
    resid = list(target)
    for c, coef in enumerate(coeffs):
        if coef != 0:
            for r in range(dim):
                resid[r] += coef * cols[c][r]
    out = ParamVectorField(v.grading, v.m, v.degree)
    for t, i in idx.items():
        if resid[i] != 0:
            out.terms[t] = resid[i]
    return coeffs, out
