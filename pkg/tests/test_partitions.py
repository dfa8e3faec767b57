from __future__ import annotations

import numpy as np
import pytest

import naive
from pealab.partitions import (PartitionAlgebra, atom_concrete, bell, cyl_sym, diag_sym,
                               enumerate_partitions, in_c, is_atom, represent, subst_sym, symbolic)
from pealab.seqalg import EquivRel, SetAlgebra, Transformation
from pealab.verify.sampling import random_transformation


@pytest.mark.parametrize("n", range(7))
def test_partition_count_matches_independent_enumeration(n):
    parts = enumerate_partitions(n) if n else []
    expected = len(naive.set_partitions(n)) if n else 1
    assert bell(n) == expected
    if n:
        assert len(parts) == expected
        assert {frozenset(map(frozenset, p.classes)) for p in parts} == set(naive.set_partitions(n))


def test_bell_values():
    assert [bell(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert len(enumerate_partitions(1)) == 1
    assert len(enumerate_partitions(4)) == 15
    assert len(enumerate_partitions(5)) == 52


def test_partitions_in_rgs_order():
    rgs = [p.rgs for p in enumerate_partitions(4)]
    assert rgs == sorted(rgs)
    assert rgs[0] == (0, 0, 0, 0) and rgs[-1] == (0, 1, 2, 3)


def test_partition_limit():
    with pytest.raises(ValueError):
        enumerate_partitions(11)


def test_kernel_atoms_small():
    A = SetAlgebra.of(2, 2)
    assert set(atom_concrete(EquivRel.full(2), A)) == {(0, 0), (1, 1)}
    assert set(atom_concrete(EquivRel.identity(2), A)) == {(0, 1), (1, 0)}
    assert len(atom_concrete(EquivRel.identity(4), SetAlgebra.of(4, 4))) == 24


@pytest.mark.parametrize("alpha,base", [(3, 2), (3, 4), (4, 3)])
def test_kernel_atoms_partition_the_space(alpha, base):
    A = SetAlgebra.of(alpha, base)
    union = A.zero
    for r in enumerate_partitions(alpha):
        x = atom_concrete(r, A)
        assert (x & union).is_zero()
        union = union | x
        assert all(naive.kernel_classes(s) == frozenset(map(frozenset, r.classes)) for s in x)
    assert union == A.one


def test_cyl_sym_examples():
    P = PartitionAlgebra(2)
    L = P.atom(EquivRel.identity(2))
    assert cyl_sym(set(), L) == L
    assert cyl_sym({0, 1}, L) == P.one
    assert cyl_sym({0}, P.zero) == P.zero


def test_subst_sym_examples():
    P = PartitionAlgebra(2)
    tau = Transformation((1, 1))
    assert subst_sym(Transformation.identity(2), P.atom(EquivRel.identity(2))) == P.atom(EquivRel.identity(2))
    assert subst_sym(tau, P.atom(EquivRel.identity(2))) == P.zero
    assert subst_sym(tau, P.atom(EquivRel.full(2))) == P.one


def test_diag_sym_examples():
    assert diag_sym(EquivRel.identity(3)) == PartitionAlgebra(3).one
    assert diag_sym(EquivRel.full(2)).sorted_labels() == [EquivRel.full(2)]
    merged = diag_sym(EquivRel.pair(3, 0, 1))
    assert len(merged) == 2
    assert all(r.related(0, 1) for r in merged.labels)


def test_atom_predicate():
    P = PartitionAlgebra(3)
    parts = enumerate_partitions(3)
    assert is_atom(P.atom(parts[0]))
    assert not is_atom(P.zero)
    assert not P.element(parts[:2]).is_atom()


def test_represent_edges():
    A = SetAlgebra.of(3, 3)
    P = PartitionAlgebra(3)
    assert represent(P.one, A) == A.one
    assert represent(P.zero, A).is_zero()
    assert represent(PartitionAlgebra(4).atom(EquivRel.identity(4)), SetAlgebra.of(4, 3)).is_zero()


def test_represent_is_homomorphism_small():
    """At alpha=3 every label set is checked against every operator."""
    A = SetAlgebra.of(3, 3)
    P = PartitionAlgebra(3)
    parts = enumerate_partitions(3)
    for mask in range(1 << len(parts)):
        L = P.element(p for k, p in enumerate(parts) if mask >> k & 1)
        x = represent(L, A)
        assert represent(~L, A) == ~x
        for g in A.gammas():
            assert represent(P.cyl(g, L), A) == A.cyl(g, x)
        for tau in A.transformations():
            assert represent(P.subst(tau, L), A) == A.subst(tau, x)
    for e in A.equivalences():
        assert represent(P.diag(e), A) == A.diag(e)


def test_symbolic_round_trip():
    A = SetAlgebra.of(3, 3)
    P = PartitionAlgebra(3)
    L = P.element(enumerate_partitions(3)[1:4])
    assert symbolic(represent(L, A)) == L
    assert in_c(A.diag_pair(0, 2))
    assert not in_c(A.from_sequences([(0, 1, 2)]))


def test_represent_sampled_taus_at_alpha4():
    A = SetAlgebra.of(4, 4)
    P = PartitionAlgebra(4)
    rng = np.random.default_rng(3)
    for _ in range(10):
        tau = random_transformation(A, rng)
        for r in enumerate_partitions(4):
            assert represent(P.subst(tau, P.atom(r)), A) == A.subst(tau, atom_concrete(r, A))
