"""Exact elimination, nullspaces, and the formal-basis complement."""

import random

from hopfnf.linalg import Echelon, complement_split, nullspace, solve_in_span
from hopfnf.rational import Rat, rat


def V(*xs):
    return [rat(x) for x in xs]


def test_pi_w_worked_example():
    # W = span{e1+e2} in F^2: complement {e1}, pi_W(e1+2e2) = 2e1+2e2
    complement, project = complement_split([V(1, 1)], 2)
    assert complement == [0]
    assert project(V(1, 2)) == V(2, 2)


def test_complement_zero_and_full():
    complement, project = complement_split([], 3)
    assert complement == [0, 1, 2]
    assert project(V(4, 5, 6)) == V(0, 0, 0)
    basis = [V(1, 0, 0), V(0, 1, 0), V(0, 0, 1)]
    complement, project = complement_split(basis, 3)
    assert complement == []
    assert project(V(4, 5, 6)) == V(4, 5, 6)


def test_complement_greedy_order():
    # W = span{e2 + e3}: e1 free, e2 chosen, e3 = (e2+e3) - e2 covered
    complement, project = complement_split([V(0, 1, 1)], 3)
    assert complement == [0, 1]
    w = project(V(0, 0, 1))
    assert w == V(0, 1, 1)


def test_projection_is_idempotent_random():
    rng = random.Random(9)
    for _ in range(30):
        dim = rng.randrange(2, 6)
        k = rng.randrange(0, dim)
        ws = [[rat(rng.randrange(-4, 5)) for _ in range(dim)] for _ in range(k)]
        complement, project = complement_split(ws, dim)
        vec = [rat(rng.randrange(-4, 5)) for _ in range(dim)]
        w = project(vec)
        assert project(w) == w
        # residual lies in the span of complement coordinates
        resid = [a - b for a, b in zip(vec, w)]
        ech = Echelon(dim)
        for wv in ws:
            ech.insert(list(wv))
        assert all(resid[i] == 0 or i in complement or not ech.contains(resid) is None for i in range(dim))
        # complement count = dim - rank(W)
        assert len(complement) == dim - ech.rank()


def test_nullspace_and_solve():
    cols = [V(1, 0), V(2, 0), V(0, 1)]
    ns = nullspace(cols, 2)
    assert len(ns) == 1
    c = ns[0]
    combo = [sum(c[i] * cols[i][r] for i in range(3)) for r in range(2)]
    assert combo == [0, 0]
    sol = solve_in_span(cols, V(3, 4), 2)
    assert sol is not None
    got = [sum(sol[i] * cols[i][r] for i in range(3)) for r in range(2)]
    assert got == V(3, 4)
    # costyle: earliest independent columns carry the solution
    assert sol[1] == 0
    assert solve_in_span([V(1, 0)], V(0, 1), 2) is None


def test_nullspace_random_consistency():
    rng = random.Random(21)
    for _ in range(40):
        dim = rng.randrange(1, 5)
        ncols = rng.randrange(1, 7)
        cols = [[rat(rng.randrange(-3, 4)) for _ in range(dim)] for _ in range(ncols)]
        ns = nullspace(cols, dim)
        ech = Echelon(dim)
        rank = sum(1 for c in cols if ech.insert(list(c)))
        assert len(ns) == ncols - rank
        for vec in ns:
            combo = [
                sum(vec[i] * cols[i][r] for i in range(ncols)) for r in range(dim)
            ]
            assert all(x == 0 for x in combo)


def test_echelon_combination_tracking():
    ech = Echelon(3)
    ech.insert(V(1, 1, 0), tag="a")
    ech.insert(V(0, 1, 1), tag="b")
    resid, combo = ech.reduce(V(1, 2, 1), want_combo=True)
    assert all(x == 0 for x in resid)
    rebuilt = [combo.get("a", Rat(0)) * x for x in V(1, 1, 0)]
    rebuilt = [
        r + combo.get("b", Rat(0)) * x for r, x in zip(rebuilt, V(0, 1, 1))
    ]
    assert rebuilt == V(1, 2, 1)
