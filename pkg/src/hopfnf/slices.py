"""Enumeration of graded slice bases in formal-basis order."""

from .terms import (
    BasisTerm,
    Grading,
    TimeTerm,
    param_key,
    term_key,
    time_key,
)


def mu_exponents(m, total):
    """All exponent tuples of length m with |n| = total."""
    if m == 0:
        return [()] if total == 0 else []
    out = []

    def rec(prefix, rem, slots):
        if slots == 1:
            out.append(prefix + (rem,))
            return
        for e in range(rem + 1):
            rec(prefix + (e,), rem - e, slots - 1)

    rec((), total, m)
    return out


def state_slice(n, g: Grading, m):
    """All basis terms of grade n, sorted in formal-basis order."""
    alpha = g.alpha
    out = []
    r = 0
    while alpha * r <= n + 1:
        s = n + 1 - alpha * r  # j + k
        if s >= 1:
            for mu in mu_exponents(m, r):
                for j in range(s + 1):
                    out.append(BasisTerm("X", j, s - j, mu))
                    out.append(BasisTerm("Y", j, s - j, mu))
        r += 1
    out.sort(key=lambda t: term_key(t, g))
    return out


def time_slice(n, g: Grading, m):
    """Time monomials Z_i mu^n of grade n (near-identity: grade >= 1)."""
    alpha = g.alpha
    out = []
    r = 0
    while alpha * r <= n:
        rem = n - alpha * r
        if rem % 2 == 0:
            i = rem // 2
            if i + r >= 1:
                for mu in mu_exponents(m, r):
                    out.append(TimeTerm(i, mu))
        r += 1
    out.sort(key=lambda t: time_key(t, g))
    return out


def param_slice(n, g: Grading, m):
    """Near-identity parameter generators (mu^b, component) of grade n.

    Grade alpha*(|b| - 1) = n needs |b| >= 2, so the invertible linear
    part never shows up here.
    """
    alpha = g.alpha
    if m == 0 or n < 1 or n % alpha != 0:
        return []
    r = n // alpha + 1
    if r < 2:
        return []
    out = [(mu, j) for mu in mu_exponents(m, r) for j in range(m)]
    out.sort(key=lambda e: param_key(e[0], e[1], g))
    return out
