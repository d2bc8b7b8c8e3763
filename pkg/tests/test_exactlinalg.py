import random
from fractions import Fraction

from hypothesis import given, strategies as st

from immstab.combinatorics import Partition, perms0
from immstab.exactlinalg import (
    RowEchelon, build_s5_system, integer_echelon, integer_kernel_basis,
    nullspace_basis, perm_matrix_row, perm_span_rank, q_span_rank, rank,
    s5_structure_check,
)

matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=6))


@given(matrices)
def test_rank_nullity(M):
    basis = nullspace_basis(M)
    assert rank(M) + len(basis) == len(M[0])
    for v in basis:
        assert all(sum(Fraction(a) * x for a, x in zip(row, v)) == 0 for row in M)


@given(matrices)
def test_integer_echelon_is_exact(M):
    ech = integer_echelon(M)
    m = len(M)
    for i in range(m):
        for j in range(len(M[0])):
            assert sum(ech.U[i][k] * M[k][j] for k in range(m)) == ech.H[i][j]
    assert ech.rank == rank(M)
    for v in ech.kernel:
        assert all(sum(a * row[j] for a, row in zip(v, M)) == 0 for j in range(len(M[0])))


def test_integer_kernel_is_a_lattice_basis():
    # the left kernel of [[2],[4]] is spanned by (-2, 1), not only by multiples
    kernel = integer_kernel_basis([[2], [4]])
    assert len(kernel) == 1
    assert sorted(map(abs, kernel[0])) == [1, 2]


def test_streaming_echelon():
    ech = RowEchelon(3)
    assert ech.add([1, 2, 3])
    assert not ech.add([2, 4, 6])
    assert ech.add(["1/2", 0, 0])
    assert ech.rank == 2


def test_span_ranks():
    assert [perm_span_rank(n) for n in range(1, 6)] == [1, 2, 5, 10, 17]
    assert q_span_rank(Partition((4,))) == 10
    # (2,2) vanishes on odd permutations; the even ones still span 10
    assert q_span_rank(Partition((2, 2))) == 10


def test_s4_left_kernel_dimension():
    rows = [perm_matrix_row(p) for p in perms0(4)]
    assert len(integer_kernel_basis(rows)) == 24 - 10


def test_s5_system():
    system = build_s5_system()
    assert len(system.unknowns) == 12 and len(system.equations) == 48
    rep = s5_structure_check()
    assert rep.passed and rep.nullity == 4


def test_s5_random_combinations_and_bad_extra():
    rep = s5_structure_check()
    rng = random.Random(3)
    combos = []
    for _ in range(5):
        w = [rng.randint(-5, 5) for _ in rep.basis]
        combos.append([sum(c * v[k] for c, v in zip(w, rep.basis)) for k in range(12)])
    assert s5_structure_check(combos).passed
    assert not s5_structure_check([[1] + [0] * 11]).passed
