"""Normal-form engine: level one, genericity, both styles, all modes."""

import random

import pytest

from hopfnf.engine import (
    MODE_FULL,
    MODE_STATE,
    MODE_STATE_TIME,
    STYLE_DISTORTED,
    STYLE_SPECTRAL,
    DegenerateSpaces,
    NormalizationConfig,
    detect_parametric_dimension,
    distorted_normalize,
    genericity,
    hypernormalize,
    level_one,
    mode_suite,
    nonparametric_normalize,
)
from hopfnf.errors import (
    BadLinearPart,
    DegenerateInput,
    DimensionMismatch,
    NoParametricDimension,
    NotGeneric,
)
from hopfnf.lie import GeneratorTriple, apply_triple
from hopfnf.oracle import replay
from hopfnf.rational import rat
from hopfnf.series import ParamSeries, ParamVectorField, TimeSeries
from hopfnf.terms import BasisTerm, Grading, grade_state, mu_unit


def B(kind, j, k, mu=()):
    return BasisTerm(kind, j, k, tuple(mu))


def vf(g, m, D, pairs):
    return ParamVectorField(g, m, D, {t: rat(c) for t, c in pairs})


def y10(g, m, D):
    return vf(g, m, D, [(B("Y", 1, 0, (0,) * m), 1)])


def random_generic_input(rng, m, n0, degree, alpha=None):
    """Y_10 + invertible mu-linear amplitude block + nonzero a-term +
    random clutter of higher/nonresonant terms."""
    if alpha is None:
        alpha = 2 * n0 + 1
    g = Grading(alpha)
    terms = {B("Y", 1, 0, (0,) * m): rat(1)}
    # invertible block: rows k < n0 over the m parameters
    perm = list(range(m))
    rng.shuffle(perm)
    for k in range(n0):
        for j in range(m):
            c = rat(rng.randrange(1, 6)) if perm[k] == j else rat(rng.randrange(0, 3))
            if c:
                terms[B("X", k + 1, k, mu_unit(m, j))] = c
    terms[B("X", n0 + 1, n0, (0,) * m)] = rat(rng.randrange(2, 7))
    for _ in range(6):
        j, k = rng.randrange(0, 4), rng.randrange(0, 4)
        if j + k == 0 or (j == k + 1 and k < n0):
            continue
        mu = tuple(rng.randrange(0, 2) for _ in range(m))
        t = B(rng.choice("XY"), j, k, mu)
        if t.j == t.k + 1 and t.k < n0 and sum(mu) == 0:
            continue
        if grade_state(t, g) <= degree and grade_state(t, g) >= 1:
            terms[t] = rat(rng.randrange(-5, 6), rng.randrange(1, 4))
    v = ParamVectorField(g, m, degree, terms)
    # keep parametric dimension exactly n0: no lower mu^0 amplitudes
    for k in range(n0):
        v.terms.pop(B("X", k + 1, k, (0,) * m), None)
    return v


def resonant_x_support(v, n0):
    ok = {B("Y", 1, 0, (0,) * v.m)}
    for t in v.terms:
        if t == B("Y", 1, 0, (0,) * v.m):
            continue
        assert t.kind == "X" and t.j == t.k + 1, f"unexpected {t}"


def test_detect_parametric_dimension():
    g = Grading(3)
    v = vf(g, 1, 8, [(B("Y", 1, 0, (0,)), 1), (B("X", 2, 1, (0,)), 2)])
    assert detect_parametric_dimension(v) == 1
    v = vf(g, 1, 8, [(B("Y", 1, 0, (0,)), 1), (B("X", 3, 2, (0,)), 2)])
    assert detect_parametric_dimension(v) == 2
    v = vf(g, 1, 8, [(B("Y", 1, 0, (0,)), 1), (B("Y", 2, 1, (0,)), 2)])
    assert detect_parametric_dimension(v) is None
    # feedback case: nonresonant quadratics generate a cubic amplitude
    v = vf(g, 0, 8, [(B("Y", 1, 0), 1), (B("X", 2, 0), 1), (B("Y", 0, 2), 3)])
    n0 = detect_parametric_dimension(v)
    out, _ = level_one(v, NormalizationConfig(degree=8, alpha=3, max_level=1, mode=MODE_FULL))
    assert (n0 is None) == (out.coeff(B("X", 2, 1)) == 0 and out.coeff(B("X", 3, 2)) == 0)


def test_level_one_examples():
    g = Grading(3)
    cfg = NormalizationConfig(degree=6, mode=MODE_FULL, alpha=3, max_level=1)
    v = y10(g, 0, 6) + vf(g, 0, 6, [(B("X", 2, 1), 1)])
    out, log = level_one(v, cfg)
    assert out == v and not log.entries
    v = y10(g, 0, 6) + vf(g, 0, 6, [(B("X", 2, 0), 1)])
    out, _ = level_one(v, cfg)
    assert out == y10(g, 0, 6)
    v = y10(g, 0, 6) + vf(g, 0, 6, [(B("Y", 2, 1), 1)])
    out, log = level_one(v, cfg)
    assert out == y10(g, 0, 6)
    # removed by the time generator -Z_1 (later entries clean its feedback)
    first = log.entries[0]
    assert first.grade == 2
    assert first.triple.yT.terms == {(1, ()): rat(-1)}
    assert first.triple.yS.is_zero() and first.triple.yP.is_zero()
    out, _ = level_one(v, NormalizationConfig(degree=6, mode=MODE_STATE, alpha=3, max_level=1))
    assert out == v  # resonant Y retained without time rescaling


def test_level_one_bad_linear_part():
    g = Grading(3)
    cfg = NormalizationConfig(degree=4, mode=MODE_FULL, alpha=3, max_level=1)
    v = vf(g, 0, 4, [(B("Y", 1, 0), 2)])
    with pytest.raises(BadLinearPart):
        level_one(v, cfg)
    v = vf(g, 0, 4, [(B("Y", 1, 0), 1), (B("X", 1, 0), 1)])
    with pytest.raises(BadLinearPart):
        level_one(v, cfg)


def test_level_one_support_randomized():
    rng = random.Random(101)
    for trial in range(12):
        m = rng.choice((1, 2))
        n0 = rng.choice(tuple(range(1, m + 1)))
        degree = rng.choice((8, 9, 10))
        v = random_generic_input(rng, m, n0, degree)
        cfg = NormalizationConfig(degree=degree, mode=MODE_FULL, alpha=v.grading.alpha, max_level=1)
        out, log = level_one(v, cfg)
        for t in out.terms:
            if t == B("Y", 1, 0, (0,) * m):
                continue
            assert t.kind == "X" and t.j == t.k + 1, f"level-1 leak: {t}"
        assert replay(v, log, degree) == out


def test_genericity_examples():
    g = Grading(3)
    v1 = vf(g, 1, 8, [(B("Y", 1, 0, (0,)), 1), (B("X", 1, 0, (1,)), 1), (B("X", 2, 1, (0,)), 1)])
    rep = genericity(v1)
    assert rep.n0 == 1 and rep.generic and rep.rank == 1
    assert rep.a1_matrix == [[rat(1)]]
    assert rep.sigma == (1,)

    v1 = vf(g, 1, 8, [(B("Y", 1, 0, (0,)), 1), (B("X", 2, 1, (0,)), 1)])
    rep = genericity(v1)
    assert rep.n0 == 1 and not rep.generic and rep.rank == 0
    assert rep.a1_matrix == [[rat(0)]]

    g5 = Grading(5)
    v1 = vf(
        g5,
        2,
        14,
        [
            (B("Y", 1, 0, (0, 0)), 1),
            (B("X", 1, 0, (0, 1)), 1),
            (B("X", 2, 1, (1, 0)), 1),
            (B("X", 3, 2, (0, 0)), 1),
        ],
    )
    rep = genericity(v1)
    assert rep.n0 == 2 and rep.generic
    assert rep.sigma == (2, 1)


def test_genericity_no_dimension():
    g = Grading(3)
    v1 = vf(g, 1, 8, [(B("Y", 1, 0, (0,)), 1), (B("Y", 2, 1, (0,)), 1)])
    with pytest.raises(NoParametricDimension):
        genericity(v1)


def _spectral_support_ok(out, n0, sigma):
    m = out.m
    allowed = {B("Y", 1, 0, (0,) * m), B("X", n0 + 1, n0, (0,) * m)}
    for i in range(n0):
        allowed.add(B("X", i + 1, i, mu_unit(m, sigma[i] - 1)))
    for t in out.terms:
        if t in allowed:
            continue
        assert t.kind == "X" and (t.j, t.k) == (2 * n0 + 1, 2 * n0), f"leak {t}"


def test_spectral_shape_n0_1():
    rng = random.Random(7)
    v = random_generic_input(rng, 1, 1, 8)
    cfg = NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_SPECTRAL)
    out, log, pages = hypernormalize(v, cfg)
    _spectral_support_ok(out, 1, log.sigma)
    assert replay(v, log, 8) == out
    # sigma slot carries coefficient exactly 1
    assert out.coeff(B("X", 1, 0, mu_unit(1, log.sigma[0] - 1))) == 1


def test_spectral_fixed_point():
    g = Grading(3)
    v = vf(
        g,
        1,
        8,
        [
            (B("Y", 1, 0, (0,)), 1),
            (B("X", 1, 0, (1,)), 1),
            (B("X", 2, 1, (0,)), 2),
            (B("X", 3, 2, (1,)), 5),
        ],
    )
    cfg = NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_SPECTRAL)
    out, log, _ = hypernormalize(v, cfg)
    assert out == v
    assert not log.entries
    assert log.linear_reparam == [[rat(1)]]


def test_distorted_shape_and_errors():
    rng = random.Random(13)
    v = random_generic_input(rng, 1, 1, 8)
    cfg = NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_DISTORTED)
    out, log, pages = distorted_normalize(v, cfg)
    m = 1
    for t in out.terms:
        assert t in {
            B("Y", 1, 0, (0,)),
            B("X", 2, 1, (0,)),
            B("X", 1, 0, (1,)),
        } or (t.kind == "Y" and (t.j, t.k) == (2, 1)), f"leak {t}"
    assert replay(v, log, 8) == out
    assert pages.collapse_level() == 3

    with pytest.raises(DimensionMismatch):
        distorted_normalize(v, NormalizationConfig(degree=8, mode=MODE_STATE, style=STYLE_SPECTRAL))
    # non-generic input
    g = Grading(3)
    bad = vf(g, 1, 8, [(B("Y", 1, 0, (0,)), 1), (B("X", 2, 1, (0,)), 1)])
    with pytest.raises(NotGeneric):
        distorted_normalize(bad, NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_DISTORTED))
    # m != N0
    g5 = Grading(5)
    mism = vf(
        g5, 1, 13, [(B("Y", 1, 0, (0,)), 1), (B("X", 3, 2, (0,)), 1), (B("X", 1, 0, (1,)), 1)]
    )
    with pytest.raises(DimensionMismatch):
        distorted_normalize(mism, NormalizationConfig(degree=13, mode=MODE_FULL, style=STYLE_DISTORTED, alpha=5))


def test_distorted_fixed_point():
    g = Grading(3)
    v = vf(
        g,
        1,
        8,
        [
            (B("Y", 1, 0, (0,)), 1),
            (B("X", 1, 0, (1,)), 1),
            (B("X", 2, 1, (0,)), 3),
            (B("Y", 2, 1, (0,)), rat(5, 2)),
            (B("Y", 2, 1, (1,)), rat(7, 3)),
        ],
    )
    cfg = NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_DISTORTED)
    out, log, _ = distorted_normalize(v, cfg)
    assert out == v
    assert not log.entries
    assert log.linear_reparam == [[rat(1)]]


def test_distorted_vs_spectral_tails_differ():
    rng = random.Random(23)
    v = random_generic_input(rng, 1, 1, 8)
    s_out, _, _ = hypernormalize(v, NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_SPECTRAL))
    d_out, _, _ = distorted_normalize(v, NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_DISTORTED))
    s_kinds = {(t.kind, t.j, t.k) for t in s_out.terms}
    d_kinds = {(t.kind, t.j, t.k) for t in d_out.terms}
    assert ("X", 3, 2) in s_kinds and ("X", 3, 2) not in d_kinds
    assert ("Y", 2, 1) in d_kinds and ("Y", 2, 1) not in s_kinds
    # the shared lower-grade part agrees
    assert s_out.coeff(B("X", 2, 1, (0,))) == d_out.coeff(B("X", 2, 1, (0,)))
    assert s_out.coeff(B("X", 1, 0, (1,))) == d_out.coeff(B("X", 1, 0, (1,)))


def test_uniqueness_under_gauge_transformations():
    # conjugating the input by any near-identity transformation of the
    # full group leaves the spectral normal form unchanged
    rng = random.Random(31)
    v = random_generic_input(rng, 1, 1, 8)
    cfg = NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_SPECTRAL)
    base, _, _ = hypernormalize(v, cfg)
    g = v.grading
    gauges = [
        GeneratorTriple(
            ParamSeries(g, 1, 8),
            TimeSeries(g, 1, 8, {(1, (0,)): rat(3, 7)}),
            vf(g, 1, 8, [(B("X", 2, 0, (0,)), rat(1, 2)), (B("Y", 3, 1, (0,)), 2)]),
        ),
        GeneratorTriple(
            ParamSeries(g, 1, 8, [{(2,): rat(5, 3)}]),
            TimeSeries(g, 1, 8),
            vf(g, 1, 8, [(B("X", 3, 0, (0,)), 1)]),
        ),
    ]
    for Y in gauges:
        w = apply_triple(v, Y, 8)
        out, log, _ = hypernormalize(w, cfg)
        assert out == base
        assert replay(w, log, 8) == out


def test_nonparametric_modes():
    g = Grading(3)
    base = [
        (B("Y", 1, 0), 1),
        (B("X", 2, 1), 3),
        (B("Y", 2, 1), 5),
        (B("X", 3, 2), 7),
        (B("X", 3, 0), 2),
        (B("Y", 1, 2), rat(9, 4)),
    ]
    v = vf(g, 0, 8, base)
    out, log, _ = nonparametric_normalize(v, NormalizationConfig(degree=8, mode=MODE_STATE))
    assert {(t.kind, t.j, t.k) for t in out.terms} == {
        ("Y", 1, 0),
        ("Y", 2, 1),
        ("X", 2, 1),
        ("X", 3, 2),
    }
    assert replay(v, log, 8) == out

    out, log, _ = nonparametric_normalize(v, NormalizationConfig(degree=8, mode=MODE_STATE_TIME))
    assert {(t.kind, t.j, t.k) for t in out.terms} == {("Y", 1, 0), ("X", 2, 1), ("X", 3, 2)}
    assert replay(v, log, 8) == out

    out, log, _ = nonparametric_normalize(
        v, NormalizationConfig(degree=8, mode=MODE_STATE_TIME, alt_orbital=True)
    )
    assert {(t.kind, t.j, t.k) for t in out.terms} == {("Y", 1, 0), ("X", 2, 1), ("Y", 2, 1)}
    assert replay(v, log, 8) == out

    with pytest.raises(DimensionMismatch):
        nonparametric_normalize(
            vf(Grading(3), 1, 8, [(B("Y", 1, 0, (0,)), 1)]),
            NormalizationConfig(degree=8, mode=MODE_STATE),
        )
    with pytest.raises(DegenerateInput):
        nonparametric_normalize(
            vf(g, 0, 8, [(B("Y", 1, 0), 1), (B("Y", 2, 1), 1)]),
            NormalizationConfig(degree=8, mode=MODE_STATE),
        )


def test_mode_suite_m0_rejected():
    g = Grading(3)
    with pytest.raises(DimensionMismatch):
        mode_suite(vf(g, 0, 6, [(B("Y", 1, 0), 1)]), 6)


def test_degenerate_space_validation():
    g = Grading(3)
    ds = DegenerateSpaces.hopf_default(1, g, 1, 8)
    ds.validate(g)  # default data satisfies the invariance condition
    assert any(tt.i == 1 for tt in ds.reserved)


def test_nongeneric_spectral_proceeds_without_reparam():
    g = Grading(3)
    v = vf(
        g,
        1,
        8,
        [
            (B("Y", 1, 0, (0,)), 1),
            (B("X", 2, 1, (0,)), 2),
            (B("Y", 2, 1, (1,)), 3),
            (B("X", 2, 0, (0,)), 1),
        ],
    )
    cfg = NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_SPECTRAL)
    out, log, _ = hypernormalize(v, cfg)
    assert log.linear_reparam is None and log.sigma is None
    for t in out.terms:
        assert t == B("Y", 1, 0, (0,)) or (t.kind == "X" and t.j == t.k + 1)
    assert replay(v, log, 8) == out


def test_output_lies_in_final_complement():
    # complement minimality: every output term survives reduction by the
    # accumulated removable span of its grade
    from hopfnf.engine import _Engine
    from hopfnf.linalg import complement_split

    rng = random.Random(59)
    v = random_generic_input(rng, 1, 1, 8)
    eng = _Engine(v.copy(), 8, MODE_FULL)
    out = eng.run(4)
    for n in range(1, 9):
        part = out.graded_part(n)
        if part.is_zero():
            continue
        vec = eng.coords(part, n)
        space = eng.removable_space(n)
        _, project = complement_split(space.rows, len(vec))
        assert all(x == 0 for x in project(vec))


def test_pages_monotone_and_stable():
    rng = random.Random(43)
    v = random_generic_input(rng, 1, 1, 8)
    _, _, pages = distorted_normalize(
        v, NormalizationConfig(degree=8, mode=MODE_FULL, style=STYLE_DISTORTED)
    )
    for n, dims in pages.rows():
        for a, b in zip(dims, dims[1:]):
            assert b <= a
        assert dims[-1] == dims[-2]  # confirmation sweep saw no change
