"""Grading, ordering, and series container basics."""

import random

from hopfnf.rational import Rat, rat
from hopfnf.series import ParamVectorField
from hopfnf.slices import mu_exponents, param_slice, state_slice, time_slice
from hopfnf.terms import (
    BasisTerm,
    Grading,
    grade_param,
    grade_state,
    grade_time,
    term_compare,
    term_key,
)


def B(kind, j, k, mu=()):
    return BasisTerm(kind, j, k, tuple(mu))


def test_grade_state_examples():
    g = Grading(3)
    assert grade_state(B("X", 1, 0), g) == 0
    assert grade_state(B("X", 2, 1), g) == 2
    assert grade_state(B("X", 1, 0, (1,)), g) == 3


def test_grade_time_examples():
    assert grade_time(1, (), Grading(3)) == 2
    assert grade_time(0, (1,), Grading(3)) == 3
    assert grade_time(2, (1, 1), Grading(5)) == 14


def test_grade_param():
    g = Grading(3)
    assert grade_param((2,), g) == 3
    assert grade_param((1,), g) == 0
    assert grade_param((0,), g) == -3


def test_order_y_before_x():
    g = Grading(1)
    assert term_compare(B("Y", 2, 1), B("X", 2, 1), g) == -1


def test_order_by_grade():
    g = Grading(3)
    assert term_compare(B("X", 2, 1), B("X", 1, 0, (1,)), g) == -1
    g1 = Grading(1)
    # grade 4 vs grade 2: the parametric term wins
    assert term_compare(B("X", 3, 2), B("Y", 1, 0, (1, 1)), g1) == 1


def test_order_parameter_free_first():
    g = Grading(1)
    a = B("X", 2, 1, (0,))  # grade 2
    b = B("X", 1, 1, (1,))  # grade 2, one parameter
    assert term_compare(a, b, g) == -1


def test_order_total_on_random_terms():
    g = Grading(3)
    rng = random.Random(7)
    terms = []
    for _ in range(120):
        j = rng.randrange(0, 4)
        k = rng.randrange(0, 4)
        if j + k == 0:
            j = 1
        mu = (rng.randrange(0, 3), rng.randrange(0, 3))
        terms.append(B(rng.choice("XY"), j, k, mu))
    for a in terms:
        for b in terms:
            ca, cb = term_compare(a, b, g), term_compare(b, a, g)
            assert ca == -cb
            if a == b:
                assert ca == 0
            else:
                assert ca != 0
    # transitivity via sort stability: keys are total
    keys = sorted(terms, key=lambda t: term_key(t, g))
    assert len(keys) == len(terms)


def test_vf_add_scale_truncate():
    g = Grading(3)
    v = ParamVectorField(g, 1, 8, {B("X", 2, 1, (0,)): rat(1), B("X", 4, 3, (0,)): rat(2)})
    t = v.truncate(2)
    assert t.support() == {B("X", 2, 1, (0,))}
    assert t.truncate(2) == t
    assert v.truncate(2).truncate(5) == v.truncate(2)
    z = v - v
    assert z.is_zero()
    assert v.scale(0).is_zero()


def test_truncate_min_composition():
    g = Grading(1)
    rng = random.Random(5)
    terms = {}
    for _ in range(30):
        j, k = rng.randrange(0, 5), rng.randrange(0, 5)
        if j + k == 0:
            continue
        terms[B(rng.choice("XY"), j, k, (rng.randrange(0, 3),))] = rat(rng.randrange(-5, 6))
    v = ParamVectorField(g, 1, 12, terms)
    a = v.truncate(7).truncate(4)
    b = v.truncate(4)
    assert a == b


def test_rational_field_axioms_randomized():
    rng = random.Random(11)
    for _ in range(300):
        a = rat(rng.randrange(-40, 40), rng.randrange(1, 30))
        b = rat(rng.randrange(-40, 40), rng.randrange(1, 30))
        c = rat(rng.randrange(-40, 40), rng.randrange(1, 30))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if a != 0:
            assert a * (Rat(1) / a) == 1


def test_slice_enumeration_small():
    g = Grading(3)
    s1 = state_slice(1, g, 1)
    # grade 1: j+k = 2, no mu room (alpha = 3)
    assert all(t.j + t.k == 2 and sum(t.mu) == 0 for t in s1)
    assert len(s1) == 6
    s3 = state_slice(3, g, 1)
    assert B("X", 1, 0, (1,)) in s3
    assert all(grade_state(t, g) == 3 for t in s3)
    assert time_slice(2, g, 1) == [(1, (0,))]
    assert time_slice(3, g, 1) == [(0, (1,))]
    assert param_slice(3, g, 1) == [((2,), 0)]
    assert param_slice(2, g, 1) == []
    assert mu_exponents(2, 2) == [(0, 2), (1, 1), (2, 0)]


def test_slices_are_sorted_and_complete():
    g = Grading(3)
    for n in range(1, 9):
        sl = state_slice(n, g, 2)
        keys = [term_key(t, g) for t in sl]
        assert keys == sorted(keys)
        assert len(set(sl)) == len(sl)
