"""Monomial indices and the graded formal basis.

State basis terms are the realified monomial vector fields

    X_jk mu^n = (z^j w^k, w^j z^k),
    Y_jk mu^n = (i z^j w^k, -i w^j z^k),

with j + k >= 1 and mu^n a parameter monomial (n a tuple of m
non-negative integers).  The sign in the second component of Y_jk is
forced by Y_10 having to equal the rotation i(z, -w).

Time monomials are Z_i mu^n with Z_i = (z w)^i; parameter monomials are
mu^n alone.  Three grading functions share a single weight alpha:

    state:  j + k - 1 + alpha*|n|
    time:   2 i       + alpha*|n|
    param:  alpha*|n| - alpha
"""

from dataclasses import dataclass
from typing import NamedTuple, Tuple

MuExp = Tuple[int, ...]


class BasisTerm(NamedTuple):
    kind: str  # 'X' or 'Y'
    j: int
    k: int
    mu: MuExp


class TimeTerm(NamedTuple):
    i: int
    mu: MuExp


def mu_abs(mu):
    return sum(mu)


def mu_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mu_zero(m):
    return (0,) * m


def mu_unit(m, i):
    """Exponent tuple of the single parameter mu_{i+1}."""
    return tuple(1 if t == i else 0 for t in range(m))


@dataclass(frozen=True)
class Grading:
    """Weight alpha >= 1 shared by the state, time and parameter gradings."""

    alpha: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be a positive integer")


def grade_state(t: BasisTerm, g: Grading) -> int:
    return t.j + t.k - 1 + g.alpha * mu_abs(t.mu)


def grade_time(i: int, mu: MuExp, g: Grading) -> int:
    return 2 * i + g.alpha * mu_abs(mu)


def grade_param(mu: MuExp, g: Grading) -> int:
    return g.alpha * mu_abs(mu) - g.alpha


def is_resonant(t: BasisTerm) -> bool:
    """Kernel of ad_{Y_10}: the families X_(k+1)k and Y_(k+1)k."""
    return t.j == t.k + 1


def term_key(t: BasisTerm, g: Grading):
    """Sort key realizing the formal basis order.

    Rules: lower grade first; Y before X at equal grade; fewer parameters
    next.  Remaining ties: lexicographic mu exponent, then smaller k.
    (The rules do not pin a unique order; this tie-break is fixed once
    and for all so every run is deterministic.)
    """
    return (
        grade_state(t, g),
        0 if t.kind == "Y" else 1,
        mu_abs(t.mu),
        t.mu,
        t.k,
    )


def term_compare(a: BasisTerm, b: BasisTerm, g: Grading) -> int:
    """-1, 0, or 1 as a precedes, equals, or follows b."""
    ka, kb = term_key(a, g), term_key(b, g)
    return -1 if ka < kb else (0 if ka == kb else 1)


def time_key(tt: TimeTerm, g: Grading):
    """Formal basis order on Z_i mu^n: grade, then parameter-free first."""
    return (grade_time(tt.i, tt.mu, g), mu_abs(tt.mu), tt.mu)


def param_key(mu: MuExp, comp: int, g: Grading):
    """Formal basis order on mu^n e_comp: grade, then exponent, component."""
    return (grade_param(mu, g), mu_abs(mu), mu, comp)
