from __future__ import annotations

import itertools

import numpy as np
import pytest

import naive
from pealab.seqalg import (AlgebraConfig, CapacityError, ElementSet, EquivRel, SetAlgebra, Signature,
                           SignatureError, Transformation)


def random_set(algebra, rng, density=0.4):
    return ElementSet(algebra, rng.random(algebra.size) < density)


@pytest.mark.parametrize("alpha,base,size", [(2, 2, 4), (4, 5, 625), (1, 1, 1)])
def test_unit_size(alpha, base, size):
    A = SetAlgebra.of(alpha, base)
    assert len(A.one) == size
    assert A.one == ~A.zero


def test_capacity_cap():
    with pytest.raises(CapacityError):
        SetAlgebra(AlgebraConfig(10, 5, Signature.full()))
    with pytest.raises(ValueError):
        SetAlgebra.of(0, 2)


def test_rank_order_is_lexicographic():
    A = SetAlgebra.of(3, 3)
    seqs = [A.decode(r) for r in range(A.size)]
    assert seqs == naive.sequences(3, 3)
    assert all(A.encode(s) == r for r, s in enumerate(seqs))


def test_cyl_examples():
    A = SetAlgebra.of(2, 2)
    assert set(A.cyl({0}, A.from_sequences([(0, 1)]))) == {(0, 1), (1, 1)}
    x = A.from_sequences([(1, 0)])
    assert A.cyl(set(), x) == x
    for g in A.gammas():
        assert A.cyl(g, A.zero).is_zero()


def test_subst_examples():
    A = SetAlgebra.of(2, 2)
    tau = Transformation((1, 1))
    assert A.subst(tau, A.from_sequences([(0, 1)])).is_zero()
    assert set(A.subst(tau, A.from_sequences([(1, 1)]))) == {(0, 1), (1, 1)}
    assert set(A.replacement(0, 1, A.from_sequences([(1, 1)]))) == {(0, 1), (1, 1)}
    x = A.from_sequences([(0, 1), (1, 0)])
    assert A.subst(Transformation.identity(2), x) == x
    assert A.replacement(0, 1, A.one) == A.one
    with pytest.raises(ValueError):
        A.replacement(1, 1, x)


def test_diag_examples():
    A = SetAlgebra.of(2, 2)
    assert set(A.diag(EquivRel.pair(2, 0, 1))) == {(0, 0), (1, 1)}
    assert set(A.diag_pair(0, 1)) == {(0, 0), (1, 1)}
    assert A.diag(EquivRel.identity(2)) == A.one
    assert A.diag_pair(1, 1) == A.one
    B = SetAlgebra.of(3, 2)
    assert set(B.diag(EquivRel.full(3))) == {(0, 0, 0), (1, 1, 1)}
    assert len(SetAlgebra.of(4, 4).diag_pair(0, 1)) == 4 * 4 ** 2


@pytest.mark.parametrize("alpha,base", [(2, 3), (3, 2), (3, 3)])
def test_operations_match_brute_force(alpha, base):
    A = SetAlgebra.of(alpha, base)
    rng = np.random.default_rng(7)
    for _ in range(5):
        x = random_set(A, rng)
        xs = naive.as_set(x)
        for g in A.gammas():
            assert set(A.cyl(g, x)) == naive.cyl(alpha, base, g, xs)
        for t in naive.all_transformations(alpha):
            assert set(A.subst(Transformation(t), x)) == naive.subst(alpha, base, t, xs)
    for e in A.equivalences():
        assert set(A.diag(e)) == naive.diag(alpha, base, list(e.pairs()))


def test_element_set_boolean_ops():
    A = SetAlgebra.of(2, 3)
    rng = np.random.default_rng(1)
    x, y = random_set(A, rng), random_set(A, rng)
    sx, sy = set(x), set(y)
    assert set(x | y) == sx | sy
    assert set(x & y) == sx & sy
    assert set(x - y) == sx - sy
    assert set(x ^ y) == sx ^ sy
    assert set(~x) == set(naive.sequences(2, 3)) - sx
    assert (x & y) <= x and x <= (x | y)
    assert hash(x) == hash(A.from_ranks(x.ranks()))
    with pytest.raises(ValueError):
        x.bits[0] = True
    with pytest.raises(ValueError):
        x | SetAlgebra.of(2, 2).zero


def test_first_difference():
    A = SetAlgebra.of(2, 2)
    x, y = A.from_ranks([1, 3]), A.from_ranks([1, 2])
    assert x.first_difference(y) == 2
    assert x.first_difference(x) is None


def test_equivrel_canonical_form():
    e = EquivRel.from_classes(4, [(2, 0), (3,)])
    assert e.rgs == (0, 1, 0, 2)
    assert e == EquivRel.kernel("abac")
    assert e == EquivRel.from_pairs(4, [(0, 2)])
    assert EquivRel.from_pairs(4, [(0, 1), (1, 3)]).classes == ((0, 1, 3), (2,))
    assert EquivRel.identity(4).refines(e) and not e.refines(EquivRel.identity(4))
    with pytest.raises(ValueError):
        EquivRel.from_classes(3, [(0, 1), (1, 2)])


def test_pullback_matches_definition():
    for image in itertools.product(range(3), repeat=3):
        tau = Transformation(image)
        for e in SetAlgebra.of(3, 1).equivalences():
            pulled = e.pullback(tau)
            for i, j in itertools.product(range(3), repeat=2):
                assert pulled.related(i, j) == e.related(tau(i), tau(j))


def test_transformation_compose_and_preimage():
    s, t = Transformation((1, 2, 0)), Transformation((0, 0, 2))
    assert s.compose(t).image == (1, 1, 0)
    assert t.preimage({0}) == {0, 1}
    assert Transformation.replacement(3, 0, 1).image == (1, 1, 2)
    assert Transformation.from_mapping(3, {2: 0}).support == {2}


def test_signature_reducts():
    qp = SetAlgebra.of(3, 2, Signature.quasipolyadic())
    assert all(len(e.classes) >= 2 for e in qp.equivalences())
    with pytest.raises(SignatureError):
        qp.diag(EquivRel.full(3))
    lucas = SetAlgebra.of(3, 2, Signature.lucas())
    assert lucas.transformations() == []
    with pytest.raises(SignatureError):
        lucas.subst(Transformation.identity(3), lucas.one)
    bounded = SetAlgebra.of(3, 2, Signature.full(kappa=2))
    assert max(len(g) for g in bounded.gammas()) == 1
    with pytest.raises(SignatureError):
        bounded.cyl({0, 1}, bounded.one)


def test_gamma_order():
    assert SetAlgebra.of(3, 2).gammas() == [frozenset(g) for g in
                                            [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]]


def test_coordinate_range_checked():
    A = SetAlgebra.of(2, 2)
    with pytest.raises(IndexError):
        A.cyl({2}, A.one)
    with pytest.raises(ValueError):
        A.encode((0, 2))
