"""Exact immanants, symmetric-group characters and immanant stabilizer checks."""

from .combinatorics import (
    CycleType, Partition, Permutation, class_size, compose, conjugate,
    cycle_type, dimension, enumerate_partitions, enumerate_permutations,
    inverse, is_symmetric, sign,
)
from .characters import (
    CharacterTable, TableCache, TableValidationError, character_table,
    inner_product, load_table, mn_character, save_table,
)
from .immanants import (
    act, coefficient_vectors_rank, determinant_oracle, immanant,
    permanent_oracle, rational_matrix,
)
from .exactlinalg import (
    integer_kernel_basis, nullspace_basis, perm_span_rank, q_span_rank,
    rank, s5_structure_check,
)
from .stabilizer import (
    StabilizerElement, TorusCoefficients, compute_G, counterexample_matrix,
    duffner_certificate, duffner_solvable, e3_solvable,
    factor_as_diagonal_pair, find_factor_witness, find_lemma9_tau,
    torus_constraint_dimension, verify_element, zero_sets,
)

__version__ = "0.1.0"
