"""Input systems: parsing and realification.

File format (UTF-8, line oriented, '#' starts a comment):

    params = mu1 mu2          # optional; absent means m = 0
    equation x = y + x^2 - 1/3*x*mu1
    equation y = -x + 2*x*y

An expression is a sum of signed terms; a term is an optional rational
coefficient ("p/q" or an integer) and "*"-separated powers of x, y and
declared parameters, each with an optional "^<exponent>".  The linear
part at mu = 0 must be exactly (y, -x).
"""

from dataclasses import dataclass

from .errors import (
    LinearPartError,
    SystemSyntaxError,
    TruncationOverflow,
    UndeclaredParameter,
)
from .poly2c import PolyVF2C, gmul, project_to_basis
from .rational import ONE, Rat, ZERO, rat
from .series import ParamVectorField
from .terms import Grading, mu_abs


@dataclass
class PlanarSystem:
    """Planar polynomial system with exact rational coefficients.

    rhs_x / rhs_y map (j, k, mu) -> Rat for the x^j y^k mu^n monomial
    of each right-hand side, linear part included.
    """

    m: int
    param_names: tuple
    rhs_x: dict
    rhs_y: dict

    def max_total_degree(self):
        degs = [
            j + k + mu_abs(mu)
            for tbl in (self.rhs_x, self.rhs_y)
            for (j, k, mu) in tbl
        ]
        return max(degs, default=1)

    def render(self):
        lines = []
        if self.m:
            lines.append("params = " + " ".join(self.param_names))
        for var, tbl in (("x", self.rhs_x), ("y", self.rhs_y)):
            lines.append(f"equation {var} = " + _render_expr(tbl, self.param_names))
        return "\n".join(lines) + "\n"


def _render_expr(tbl, names):
    if not tbl:
        return "0"
    bits = []
    for (j, k, mu), c in sorted(tbl.items(), key=lambda e: (sum(e[0][2]) + e[0][0] + e[0][1], e[0])):
        factors = []
        if j:
            factors.append("x" + (f"^{j}" if j > 1 else ""))
        if k:
            factors.append("y" + (f"^{k}" if k > 1 else ""))
        for name, e in zip(names, mu):
            if e:
                factors.append(name + (f"^{e}" if e > 1 else ""))
        mag = c if c > 0 else -c
        head = "" if (mag == 1 and factors) else f"{mag}*"
        body = head + "*".join(factors) if factors else str(mag)
        bits.append(("- " if c < 0 else "+ ") + body)
    out = " ".join(bits)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


class _Scanner:
    def __init__(self, text, line_no):
        self.text = text
        self.line = line_no
        self.pos = 0

    def error(self, message):
        raise SystemSyntaxError(message, self.line, self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def ident(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if start == self.pos:
            self.error("expected an identifier")
        return self.text[start : self.pos]

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_expr(sc: _Scanner, names):
    """Sum of signed terms into a {(j, k, mu): Rat} table."""
    m = len(names)
    table = {}
    sign = 1
    first = True
    while True:
        if sc.at_end():
            if first:
                sc.error("empty expression")
            break
        if sc.take("+"):
            sign = 1
        elif sc.take("-"):
            sign = -1
        elif not first:
            sc.error("expected '+' or '-' between terms")
        coeff, powers = _parse_term(sc, names)
        key = (powers["x"], powers["y"], tuple(powers[n] for n in names))
        c = table.get(key, ZERO) + sign * coeff
        if c == 0:
            table.pop(key, None)
        else:
            table[key] = c
        sign = 1
        first = False
    return table


def _parse_term(sc: _Scanner, names):
    coeff = ONE
    powers = {"x": 0, "y": 0}
    for n in names:
        powers[n] = 0
    saw_factor = False
    if sc.peek().isdigit():
        p = sc.integer()
        if sc.take("/"):
            q = sc.integer()
            if q == 0:
                sc.error("zero denominator")
            coeff = Rat(p, q)
        else:
            coeff = Rat(p)
        saw_factor = True
        if not sc.take("*"):
            return coeff, powers
    while True:
        ch = sc.peek()
        if not (ch.isalpha() or ch == "_"):
            if saw_factor:
                break
            sc.error("expected a variable or coefficient")
        name = sc.ident()
        if name not in powers:
            raise UndeclaredParameter(
                f"line {sc.line}: '{name}' is not x, y, or a declared parameter"
            )
        exp = 1
        if sc.take("^"):
            exp = sc.integer()
        powers[name] += exp
        saw_factor = True
        if not sc.take("*"):
            break
    return coeff, powers


def parse_system(text: str) -> PlanarSystem:
    """Parse the file format; exact coefficients, loud diagnostics."""
    names = None
    eq = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split("=", 1)[0].split()
        if head and head[0] == "params":
            sc = _Scanner(line, line_no)
            sc.ident()  # 'params'
            if not sc.take("="):
                sc.error("expected '=' after params")
            got = []
            while not sc.at_end():
                name = sc.ident()
                if name in ("x", "y") or name in got:
                    sc.error(f"bad parameter name '{name}'")
                got.append(name)
            if names is not None:
                sc.error("duplicate params line")
            names = tuple(got)
            continue
        if head and head[0] == "equation":
            sc = _Scanner(line, line_no)
            sc.ident()  # 'equation'
            var = sc.ident()
            if var not in ("x", "y"):
                sc.error("equation must define x or y")
            if var in eq:
                sc.error(f"duplicate equation for {var}")
            if not sc.take("="):
                sc.error("expected '=' in equation")
            eq[var] = (sc, names or ())
            continue
        raise SystemSyntaxError("expected 'params' or 'equation'", line_no, 1)
    if "x" not in eq or "y" not in eq:
        raise SystemSyntaxError("need both 'equation x' and 'equation y'", 1, 1)
    names = names or ()
    rhs = {}
    for var in ("x", "y"):
        sc, _ = eq[var]
        rhs[var] = _parse_expr(sc, names)
    sys = PlanarSystem(len(names), names, rhs["x"], rhs["y"])
    _validate(sys)
    return sys


def _validate(sys: PlanarSystem):
    zero = (0,) * sys.m
    lin_x = {(1, 0, zero): ZERO, (0, 1, zero): ONE}
    lin_y = {(1, 0, zero): -ONE, (0, 1, zero): ZERO}
    for tbl, lin, var in ((sys.rhs_x, lin_x, "x"), (sys.rhs_y, lin_y, "y")):
        for key, want in lin.items():
            if tbl.get(key, ZERO) != want:
                raise LinearPartError(
                    f"linear part of equation {var} at mu=0 must be "
                    f"(y, -x); found coefficient {tbl.get(key, ZERO)} on x^{key[0]} y^{key[1]}"
                )
        for (j, k, mu) in tbl:
            if j + k == 0:
                raise LinearPartError(
                    f"equation {var} has a state-free term x^0 y^0 mu^{mu}; "
                    "the origin must stay an equilibrium"
                )


# -- realification ------------------------------------------------------------


def realify(sys: PlanarSystem, g: Grading, degree: int) -> ParamVectorField:
    """Exact change to the X/Y basis via z = y + i x.

    zdot = i z + sum (b + i a) ((z - w)/(2i))^j ((z + w)/2)^k mu^n with
    w = conj(z); the second component is the mirrored conjugate, so the
    projection back to the basis is exact by construction.
    """
    p1 = {}

    def acc(key, val):
        cur = p1.get(key, (ZERO, ZERO))
        s = (cur[0] + val[0], cur[1] + val[1])
        if s[0] == 0 and s[1] == 0:
            p1.pop(key, None)
        else:
            p1[key] = s

    acc((1, 0, (0,) * sys.m), (ZERO, ONE))  # i z
    zero = (0,) * sys.m
    for (j, k, mu), a in sys.rhs_x.items():
        b = sys.rhs_y.get((j, k, mu), ZERO)
        if (j, k, mu) in ((1, 0, zero), (0, 1, zero)):
            continue
        _expand_real_monomial(acc, j, k, mu, (b, a))
    for (j, k, mu), b in sys.rhs_y.items():
        if (j, k, mu) in sys.rhs_x or (j, k, mu) in ((1, 0, zero), (0, 1, zero)):
            continue
        _expand_real_monomial(acc, j, k, mu, (b, ZERO))
    p2 = {(bdeg, adeg, mu): (re, -im) for (adeg, bdeg, mu), (re, im) in p1.items()}
    out = project_to_basis(PolyVF2C(p1, p2), g, sys.m, degree)
    return out


def _expand_real_monomial(acc, j, k, mu, coeff):
    """coeff * x^j y^k as a polynomial in (z, w): x = (z-w)/(2i), y = (z+w)/2."""
    half = Rat(1, 2)
    # coefficient of z^t w^(j-t) in ((z-w)/2)^j, the 1/i^j twist applied after
    xfac = []
    for t in range(j + 1):
        c = rat(_binom(j, t)) * half**j
        if (j - t) % 2 == 1:
            c = -c
        xfac.append(c)
    phase = _i_power(-j)  # (1/i)^j = (-i)^j
    out = {}
    for t in range(j + 1):
        for s in range(k + 1):
            cz = t + s
            cw = (j - t) + (k - s)
            c = xfac[t] * rat(_binom(k, s)) * (half**k)
            val = gmul((c, ZERO), phase)
            val = gmul(val, coeff)
            key = (cz, cw)
            cur = out.get(key, (ZERO, ZERO))
            out[key] = (cur[0] + val[0], cur[1] + val[1])
    for (cz, cw), val in out.items():
        if val != (ZERO, ZERO):
            acc((cz, cw, mu), val)


def _binom(n, k):
    from math import comb

    return comb(n, k)


def _i_power(e):
    e %= 4
    return [(ONE, ZERO), (ZERO, ONE), (-ONE, ZERO), (ZERO, -ONE)][e]


def realify_inverse(v: ParamVectorField) -> PlanarSystem:
    """Expand a basis field back to (xdot, ydot); exact round-trip."""
    from .poly2c import expand_field

    p1 = expand_field(v).p1
    rx, ry = {}, {}
    for (a, b, mu), (re, im) in p1.items():
        # z^a w^b with z = y + ix, w = y - ix
        for (jx, jy), (cre, cim) in _zw_to_xy(a, b).items():
            tre = cre * re - cim * im
            tim = cre * im + cim * re
            keyx = (jx, jy, mu)
            if tim != 0:
                rx[keyx] = rx.get(keyx, ZERO) + tim
                if rx[keyx] == 0:
                    del rx[keyx]
            if tre != 0:
                ry[keyx] = ry.get(keyx, ZERO) + tre
                if ry[keyx] == 0:
                    del ry[keyx]
    names = tuple(f"mu{i+1}" for i in range(v.m))
    return PlanarSystem(v.m, names, rx, ry)


def _zw_to_xy(a, b):
    """(y + ix)^a (y - ix)^b as {(xdeg, ydeg): Q(i) coeff}."""
    out = {(0, 0): (ONE, ZERO)}
    for _ in range(a):
        out = _mul_lin(out, (ZERO, ONE), (ONE, ZERO))  # * (ix + y)
    for _ in range(b):
        out = _mul_lin(out, (ZERO, -ONE), (ONE, ZERO))  # * (-ix + y)
    return out


def _mul_lin(table, cx, cy):
    out = {}
    for (jx, jy), c in table.items():
        for (dx, dy, cc) in ((1, 0, cx), (0, 1, cy)):
            key = (jx + dx, jy + dy)
            val = gmul(c, cc)
            cur = out.get(key, (ZERO, ZERO))
            s = (cur[0] + val[0], cur[1] + val[1])
            if s == (ZERO, ZERO):
                out.pop(key, None)
            else:
                out[key] = s
    return out


def check_degree_fit(sys: PlanarSystem, g: Grading, degree: int):
    """Reject input terms whose grade exceeds the engine truncation."""
    zero = (0,) * sys.m
    for tbl, var in ((sys.rhs_x, "x"), (sys.rhs_y, "y")):
        for (j, k, mu) in tbl:
            if (j, k, mu) in ((1, 0, zero), (0, 1, zero)):
                continue
            grade = j + k - 1 + g.alpha * mu_abs(mu)
            if grade > degree:
                raise TruncationOverflow(
                    f"input term x^{j} y^{k} mu^{mu} in equation {var} has grade "
                    f"{grade} above the truncation degree {degree}; raise --degree"
                )
