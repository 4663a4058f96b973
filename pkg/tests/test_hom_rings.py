"""Graded hom models and endomorphism ring tables.

The dimension and product expectations are frozen from two independent
sources: hand calculations with the 2x2 regular representation matrices, and
the normalized cochain oracle in oracles.py.
"""

import pytest

from oracles import cohomology_dims, cup_class, normalized_cochain_complex

from catidem.complexes import (
    Complex,
    PeriodicTail,
    complex_from_module,
    unit_complex,
)
from catidem.group_modules import group_algebra, regular_module, trivial_module
from catidem.hom_rings import check_table_associativity, graded_hom, ring_table
from catidem.linalg import Mat


@pytest.fixture(scope="module")
def z2():
    return group_algebra(2, {"cyclic": 2})


@pytest.fixture(scope="module")
def z3():
    return group_algebra(3, {"cyclic": 3})


def resolution_z2(alg):
    c = regular_module(alg)
    n = Mat(2, [[1, 1], [1, 1]])
    return Complex(alg, 0, 0, [c], [], left_tail=PeriodicTail(1, (c,), (n,), n))


def resolution_z3(alg):
    c = regular_module(alg)
    g = c.gen_action[0]
    delta = g - Mat.identity(3, 3)
    nrm = Mat.identity(3, 3) + g + g @ g
    return Complex(alg, 0, 0, [c], [],
                   left_tail=PeriodicTail(2, (c, c), (nrm, delta), delta))


# -- the cochain oracle itself -----------------------------------------------

def test_oracle_dims_z2():
    assert cohomology_dims(2, 2, 8) == {n: 1 for n in range(9)}


def test_oracle_dims_z3():
    assert cohomology_dims(3, 3, 6) == {n: 1 for n in range(7)}


def test_oracle_cup_z2_polynomial():
    cx = normalized_cochain_complex(2, 2, 8)
    for m in range(0, 4):
        for n in range(0, 4):
            assert cup_class(2, 2, cx, m, n) == [1]


def test_oracle_cup_z3_exterior_and_polynomial():
    cx = normalized_cochain_complex(3, 3, 7)
    assert cup_class(3, 3, cx, 1, 1) == [0]
    assert cup_class(3, 3, cx, 2, 2) != [0]
    assert cup_class(3, 3, cx, 1, 2) != [0]
    assert cup_class(3, 3, cx, 2, 1) != [0]
    # odd-even classes commute on the nose in this range
    assert cup_class(3, 3, cx, 1, 2) == cup_class(3, 3, cx, 2, 1)


# -- graded hom dims -----------------------------------------------------------

def test_end_of_one_term_unit(z2):
    x = complex_from_module(trivial_module(z2))
    gh = graded_hom(x, x, (-2, 2))
    assert gh.dims == {-2: 0, -1: 0, 0: 1, 1: 0, 2: 0}
    assert all(gh.stable.values())


def test_end_of_resolution_matches_group_cohomology(z2):
    res = resolution_z2(z2)
    gh = graded_hom(res, res, (-2, 6))
    oracle = cohomology_dims(2, 2, 6)
    for n in range(-2, 0):
        assert gh.dims[n] == 0
    for n in range(0, 7):
        assert gh.dims[n] == oracle[n]
    assert all(gh.stable.values())


def test_end_of_resolution_z3(z3):
    res = resolution_z3(z3)
    gh = graded_hom(res, res, (0, 6))
    oracle = cohomology_dims(3, 3, 6)
    for n in range(0, 7):
        assert gh.dims[n] == oracle[n]
    assert all(gh.stable.values())


def test_hom_from_unit_into_resolution(z2):
    # maps land in the socle and every differential vanishes on it, so each
    # degree at or below zero carries exactly one class
    res = resolution_z2(z2)
    gh = graded_hom(unit_complex(z2), res, (-4, 3))
    assert gh.dims == {-4: 1, -3: 1, -2: 1, -1: 1, 0: 1, 1: 0, 2: 0, 3: 0}
    assert all(gh.stable.values())


def test_reps_are_chain_maps_and_roundtrip(z2):
    res = resolution_z2(z2)
    gh = graded_hom(res, res, (0, 4))
    for n in range(0, 5):
        reps = gh.reps(n)
        assert len(reps) == gh.dims[n]
        for i, f in enumerate(reps):
            coords = gh.class_coords(f, n)
            expected = [1 if j == i else 0 for j in range(gh.dims[n])]
            assert coords == expected


# -- ring tables ---------------------------------------------------------------

def test_ring_table_z2_is_polynomial(z2):
    res = resolution_z2(z2)
    rt = ring_table(res, (0, 6))
    assert rt.degrees == {n: 1 for n in range(0, 7)}
    assert rt.unit == [1]
    for m in range(0, 7):
        for n in range(0, 7 - m):
            assert rt.product(m, 0, n, 0) == [1]
    assert all(rt.stable.values())
    assert check_table_associativity(rt)


def test_ring_table_z2_no_negative_classes(z2):
    res = resolution_z2(z2)
    rt = ring_table(res, (-3, 3))
    for n in range(-3, 0):
        assert rt.degrees[n] == 0
    assert rt.degrees[0] == 1


def test_ring_table_z3_product_pattern(z3):
    res = resolution_z3(z3)
    rt = ring_table(res, (0, 5))
    assert rt.degrees == {n: 1 for n in range(0, 6)}
    assert rt.unit == [1]
    # odd generator squares to zero, even generator is polynomial
    assert rt.product(1, 0, 1, 0) == [0]
    assert rt.product(2, 0, 2, 0) != [0]
    assert rt.product(1, 0, 2, 0) != [0]
    assert rt.product(1, 0, 2, 0) == rt.product(2, 0, 1, 0)
    assert check_table_associativity(
        rt, [(1, 1, 2), (2, 2, 1), (1, 2, 2), (2, 1, 2)])


def test_ring_table_product_pattern_matches_cup_oracle(z3):
    res = resolution_z3(z3)
    rt = ring_table(res, (0, 4))
    cx = normalized_cochain_complex(3, 3, 5)
    for m in range(0, 5):
        for n in range(0, 5 - m):
            engine_zero = rt.product(m, 0, n, 0) == [0]
            oracle_zero = cup_class(3, 3, cx, m, n) == [0]
            assert engine_zero == oracle_zero
