import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from immstab.combinatorics import (
    Partition, dimension, enumerate_partitions, enumerate_permutations,
)
from immstab.immanants import (
    coefficient_vector, coefficient_vectors_rank, determinant_oracle, diagonal_matrix,
    dump_matrix, identity_matrix, immanant, load_matrix, matmul, ones_matrix,
    permanent_oracle, permutation_matrix, random_integer_matrix, rational_matrix,
    telemetry, transpose,
)


def leibniz_det(X):
    """Textbook Leibniz expansion: a third, structurally different oracle."""
    n = len(X)
    total = Fraction(0)
    for s in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if s[i] > s[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(n):
            term *= X[i][s[i]]
        total += term
    return total


@pytest.mark.parametrize("n", range(1, 6))
def test_oracles_agree_with_leibniz(n):
    rng = random.Random(n)
    for _ in range(5):
        X = random_integer_matrix(n, rng)
        assert determinant_oracle(X) == leibniz_det(X)


def test_small_known_values():
    X = rational_matrix([[1, 2], [3, 4]])
    assert immanant(Partition((1, 1)), X) == -2
    assert immanant(Partition((2,)), X) == 10
    assert permanent_oracle(ones_matrix(4)) == 24
    assert determinant_oracle(ones_matrix(3)) == 0


def test_rational_entries():
    X = rational_matrix([["1/2", 1, 0], [0, "2/3", 5], [1, 1, "-3/7"]])
    assert immanant(Partition((1, 1, 1)), X) == determinant_oracle(X)
    assert immanant(Partition((3,)), X) == permanent_oracle(X)


@pytest.mark.parametrize("n", range(1, 7))
def test_identity_value(n):
    for p in enumerate_partitions(n):
        assert immanant(p, identity_matrix(n)) == dimension(p)


@pytest.mark.parametrize("n", [3, 4])
def test_permutation_matrix_value_is_character(n):
    from immstab.characters import mn_character
    from immstab.combinatorics import cycle_type
    for p in enumerate_partitions(n):
        for s in enumerate_permutations(n):
            assert immanant(p, permutation_matrix(s)) == mn_character(p, cycle_type(s))


small = st.integers(2, 4).flatmap(
    lambda n: st.tuples(st.sampled_from(enumerate_partitions(n)),
                        st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n),
                        st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                        st.integers(0, n - 1)))


@settings(max_examples=60)
@given(small)
def test_multilinear_in_rows(data):
    p, rows, v, r = data
    X = rational_matrix(rows)
    Y = rational_matrix([v if i == r else row for i, row in enumerate(rows)])
    Z = rational_matrix([[a + b for a, b in zip(v, row)] if i == r else row for i, row in enumerate(rows)])
    assert immanant(p, Z) == immanant(p, X) + immanant(p, Y)


@settings(max_examples=40)
@given(small)
def test_transpose_and_diagonal_scaling(data):
    p, rows, v, _ = data
    X = rational_matrix(rows)
    assert immanant(p, transpose(X)) == immanant(p, X)
    d = [x or 1 for x in v]
    D = diagonal_matrix(d)
    scale = Fraction(1)
    for x in d:
        scale *= x
    assert immanant(p, matmul(D, X)) == scale * immanant(p, X)


def test_term_counter():
    before = telemetry["immanant_terms"]
    immanant(Partition((2, 2)), ones_matrix(4))
    assert telemetry["immanant_terms"] - before == 24


def test_shape_errors():
    with pytest.raises(ValueError):
        immanant(Partition((2, 1)), ones_matrix(4))
    with pytest.raises(ValueError):
        rational_matrix([[1, 2]])
    with pytest.raises(ValueError):
        rational_matrix([["x"]])


def test_matrix_io_round_trip(tmp_path):
    X = rational_matrix([[1, "1/2"], [-3, "7/5"]])
    path = tmp_path / "m.json"
    path.write_text(json.dumps(dump_matrix(X)))
    assert load_matrix(path) == X
    path.write_text('{"a": 1}')
    with pytest.raises(ValueError):
        load_matrix(path)


def test_coefficient_vectors():
    assert coefficient_vector(Partition((1, 1, 1))) == (1, -1, -1, 1, 1, -1)
    # characters are linearly independent
    for n in range(1, 6):
        assert coefficient_vectors_rank(n) == len(enumerate_partitions(n))
