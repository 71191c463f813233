import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from artifact.errors import ZeroVector
from artifact.lattice_core import (
    hermite_basis,
    integer_kernel,
    lattice_basis,
    primitive_rational,
    primitive_vector,
    rank,
    saturation_basis,
    smith_invariants,
    solve_integer,
    solve_rational,
)
from fractions import Fraction

vectors = st.lists(st.integers(-6, 6), min_size=3, max_size=3)


def test_primitive_vector():
    assert primitive_vector((4, -6)) == (2, -3)
    assert primitive_vector((0, 5, 0)) == (0, 1, 0)
    with pytest.raises(ZeroVector):
        primitive_vector((0, 0))


def test_primitive_rational():
    assert primitive_rational((Fraction(1, 2), Fraction(1, 3))) == (3, 2)


def test_lattice_basis_examples():
    lb = lattice_basis([(3, 0), (0, 6), (5, 0), (1, 1), (2, 1), (1, 4)])
    assert lb.basis_vectors == ((1, 0), (0, 1)) and lb.index == 1
    assert lattice_basis([(2, 0), (0, 2)]).index == 4
    lb = lattice_basis([(3, 0), (5, 0)])
    assert lb.basis_vectors == ((1, 0),) and lb.index == 1
    assert lattice_basis([(6, 0)], 2).index == 6


def test_smith_invariants_classic():
    assert smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_coordinates_roundtrip():
    lb = lattice_basis([(2, 1, 0), (0, 3, 3)])
    for a, b in itertools.product(range(-3, 4), repeat=2):
        v = tuple(a * x + b * y for x, y in zip((2, 1, 0), (0, 3, 3)))
        assert lb.embed(lb.coordinates(v)) == v
    assert not lb.contains((1, 0, 0))


@given(st.lists(vectors, min_size=1, max_size=4))
@settings(max_examples=80, deadline=None)
def test_kernel_is_orthogonal_and_saturated(rows):
    K = integer_kernel(rows, 3)
    assert len(K) == 3 - rank(rows)
    for k in K:
        assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in rows)
    if K:
        assert lattice_basis(K, 3).index == 1


@given(st.lists(vectors, min_size=1, max_size=4))
@settings(max_examples=80, deadline=None)
def test_hermite_basis_spans_same_lattice(rows):
    H, piv = hermite_basis(rows, 3)
    lb = lattice_basis(H, 3)
    for r in rows:
        assert lb.contains(r)
    # each basis row is an integer combination of the input rows
    for h in H:
        assert solve_integer([[r[i] for r in rows] for i in range(3)], h, len(rows)) is not None


@given(st.lists(vectors, min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_saturation_contains_rational_span_points(rows):
    S = saturation_basis(rows, 3)
    assert len(S) == rank(rows)
    lb = lattice_basis(S, 3) if S else None
    if lb:
        assert lb.index == 1
        for r in rows:
            assert lb.contains(r)


def test_solve_integer_and_rational():
    x0, K = solve_integer([[2, 4]], [6], 2)
    assert 2 * x0[0] + 4 * x0[1] == 6 and len(K) == 1
    assert solve_integer([[2, 4]], [3], 2) is None
    assert solve_rational([(1, 1), (7, 12)], (2, 3)) == [Fraction(3, 5), Fraction(1, 5)]
    assert solve_rational([(1, 0)], (0, 1)) is None


def test_smith_product_equals_index():
    rng = random.Random(3)
    for _ in range(30):
        rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        if rank(rows) < 3:
            continue
        det = abs(round(_det(rows)))
        inv = smith_invariants(rows)
        prod = 1
        for x in inv:
            prod *= x
        assert prod == det


def _det(m):
    a, b, c = m
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
