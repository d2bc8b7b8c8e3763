import itertools
from fractions import Fraction

import pytest

from immstab.combinatorics import (
    Partition, Permutation, cycle_type, enumerate_partitions, enumerate_permutations, sign,
)
from immstab.characters import mn_character
from immstab.exactlinalg import rank
from immstab.stabilizer import (
    StabilizerElement, TorusCoefficients, alternating_group, compute_G,
    counterexample_matrix, duffner_certificate, duffner_solvable, e3_certificate,
    e3_solvable, factor_as_diagonal_pair, find_factor_witness, find_lemma9_tau,
    longest_rim_hook, symmetric_group, torus_constraint_dimension, verify_element,
    zero_sets,
)

P = Partition
cyc = Permutation.from_cycles


def test_zero_sets_partition_the_group():
    z = zero_sets(P((2, 2)))
    assert len(z.P) == 12 and len(z.Q) == 12
    assert all(sign(s) == -1 for s in z.P)
    assert not zero_sets(P((1, 1, 1))).P


def test_g_for_n4():
    klein = {Permutation.identity(4), cyc(4, [(1, 2), (3, 4)]), cyc(4, [(1, 3), (2, 4)]), cyc(4, [(1, 4), (2, 3)])}
    assert compute_G(P((3, 1))).members == klein
    assert compute_G(P((2, 1, 1))).members == klein
    assert compute_G(P((2, 2))).members == alternating_group(4)
    assert compute_G(P((4,))).members == symmetric_group(4)


def test_g_for_sign_character_is_whole_group():
    # the sign character never vanishes, so every permutation preserves
    # both zero sets; the coefficient system is solved by c = sign(tau)
    for n in (3, 4, 5):
        g = compute_G(P((1,) * n))
        assert g.members == symmetric_group(n)
        odd = cyc(n, [(1, 2)])
        cert = e3_certificate(P((1,) * n), odd)
        assert cert is not None and set(cert.values()) == {Fraction(-1)}


@pytest.mark.parametrize("p", enumerate_partitions(5))
def test_g_is_normal_subgroup(p):
    g = compute_G(p)
    assert g.is_subgroup() and g.is_normal()


@pytest.mark.parametrize("n", [3, 4])
def test_e3_matches_g(n):
    for p in enumerate_partitions(n):
        g = compute_G(p)
        for t in enumerate_permutations(n):
            assert e3_solvable(p, t) == (t in g)


def test_e3_certificate_solves_system():
    p = P((2, 2))
    t = cyc(4, [(1, 2, 3)])
    c = e3_certificate(p, t)
    for s in enumerate_permutations(4):
        ts = Permutation(t[s[i] - 1] for i in range(4))
        assert c[ts] != 0
        assert mn_character(p, cycle_type(ts)) * c[ts] == mn_character(p, cycle_type(s))


def test_duffner_n4_counts():
    perms = list(enumerate_permutations(4))
    counts = {str(p): sum(duffner_solvable(p, a, b) for a in perms for b in perms)
              for p in enumerate_partitions(4)}
    assert counts == {"(4)": 576, "(3,1)": 24, "(2,2)": 96, "(2,1,1)": 24, "(1,1,1,1)": 576}


def test_duffner_certificates_verify_n4():
    perms = list(enumerate_permutations(4))
    for p in (P((2, 2)), P((1, 1, 1, 1))):
        for a, b in itertools.islice(itertools.product(perms, perms), 0, 576, 37):
            if duffner_solvable(p, a, b):
                C = duffner_certificate(p, a, b)
                assert C is not None
                assert verify_element(p, StabilizerElement(a, b, C), trials=3)


def test_unsolvable_has_no_certificate():
    a, b = cyc(4, [(1, 2)]), Permutation.identity(4)
    assert not duffner_solvable(P((3, 1)), a, b)
    assert duffner_certificate(P((3, 1)), a, b) is None


def test_verify_rejects_wrong_element():
    C = TorusCoefficients([[2, 1, 1], [1, 1, 1], [1, 1, 1]])
    assert not verify_element(P((2, 1)), StabilizerElement.torus(C))
    assert verify_element(P((2, 1)), StabilizerElement.identity(3))


def test_transpose_element_preserves():
    e = StabilizerElement(Permutation.identity(4), Permutation.identity(4), TorusCoefficients.ones(4), transpose=True)
    assert verify_element(P((3, 1)), e)


def test_nonzero_coefficients_enforced():
    with pytest.raises(ValueError):
        TorusCoefficients([[0, 1], [1, 1]])


@pytest.mark.parametrize("e", [2, 3, Fraction(-5, 7)])
def test_counterexample(e):
    C = counterexample_matrix(e)
    assert verify_element(P((2, 2)), StabilizerElement.torus(C))
    assert rank(C.entries) >= 2
    assert factor_as_diagonal_pair(C) is None


def test_counterexample_rejects_zero():
    with pytest.raises(ValueError):
        counterexample_matrix(0)


def test_factorization_round_trip():
    a = [Fraction(2), Fraction(-1), Fraction(1, 3)]
    b = [Fraction(1), Fraction(5), Fraction(-2, 7)]
    C = TorusCoefficients([[x * y for y in b] for x in a])
    pair = factor_as_diagonal_pair(C)
    assert all(pair.a[i] * pair.b[j] == C.entries[i][j] for i in range(3) for j in range(3))
    prod = Fraction(1)
    for x in a + b:
        prod *= x
    assert pair.defect == prod and not pair.normalized


def test_normalized_diagonal_pair_stabilizes():
    # c_ij = a_i b_j with prod(a) prod(b) = 1 acts as X -> AXB with det(A)det(B) = 1
    a = [Fraction(2), Fraction(-1), Fraction(1, 3)]
    b = [Fraction(21, 20), Fraction(5), Fraction(-2, 7)]
    C = TorusCoefficients([[x * y for y in b] for x in a])
    assert factor_as_diagonal_pair(C).normalized
    for p in enumerate_partitions(3):
        assert verify_element(p, StabilizerElement.torus(C))


def test_torus_dimension_small():
    assert torus_constraint_dimension(P((3, 2))) == 8
    assert torus_constraint_dimension(P((4,))) == 6


@pytest.mark.parametrize("p", [P((4, 1)), P((3, 2)), P((2, 2, 1)), P((4, 2)), P((5, 1)), P((2, 2, 2))])
def test_factor_witness_properties(p):
    w = find_factor_witness(p)
    assert w is not None
    n = p.n
    k = w.p

    def chi(s):
        return mn_character(p, cycle_type(s))

    assert chi(w.short_product()) != 0 and chi(w.long_product()) != 0
    assert chi(w.tau) != 0 and chi(w.pair_product()) != 0
    moved = {i for i in range(1, n + 1) if w.sigma(i) != i}
    assert not moved & set((1,) + w.cycle)
    assert not {i for i in range(1, n + 1) if w.tau(i) != i} & set(w.pair_ij)
    assert len(w.cycle) == k


def test_factor_witness_absent_for_symmetric_partitions():
    assert find_factor_witness(P((3, 1, 1))) is None
    assert find_factor_witness(P((3, 2, 1))) is None


def test_long_cycle_tau():
    assert longest_rim_hook(P((3, 2, 1))) == 5
    tau = find_lemma9_tau(P((2, 2, 2)))
    assert cycle_type(tau) == P((4, 1, 1))
    assert find_lemma9_tau(P((4, 1, 1))) is None
    assert find_lemma9_tau(P((3, 2, 1))) is not None


def test_counterexample_solves_identity_pair_system():
    from immstab.stabilizer import coefficient_identity_holds
    e = Permutation.identity(4)
    assert duffner_solvable(P((2, 2)), e, e)
    assert coefficient_identity_holds(P((2, 2)), StabilizerElement.torus(counterexample_matrix(3)))


def test_scaling_one_entry_breaks_a_solution():
    p = P((2, 1, 1))
    t = cyc(4, [(1, 2, 3, 4)])
    C = duffner_certificate(p, t, t)
    rows = [list(r) for r in C.entries]
    rows[1][2] *= 2
    assert verify_element(p, StabilizerElement(t, t, C))
    assert not verify_element(p, StabilizerElement(t, t, TorusCoefficients(rows)))


def test_e3_examples():
    for n in (3, 5):
        for p in enumerate_partitions(n):
            assert e3_solvable(p, Permutation.identity(n))
    assert e3_solvable(P((2, 1)), cyc(3, [(1, 2, 3)]))
    assert not e3_solvable(P((3, 2)), cyc(5, [(2, 4)]))


def test_all_ones_factorization():
    pair = factor_as_diagonal_pair(TorusCoefficients.ones(4))
    assert pair.a == pair.b == (1, 1, 1, 1) and pair.normalized
