"""Seeded random elements, transformations, relations and index sets."""

from __future__ import annotations

import numpy as np

from ..partitions import atom_concrete
from ..seqalg import ElementSet, EquivRel, SetAlgebra, Transformation


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng([seed & (2**64 - 1), *stream])


def random_bits(algebra: SetAlgebra, rng: np.random.Generator, density: float = 0.5) -> ElementSet:
    return ElementSet(algebra, rng.random(algebra.size) < density)


def random_gamma(algebra: SetAlgebra, rng: np.random.Generator) -> frozenset[int]:
    gammas = algebra.gammas()
    return gammas[rng.integers(len(gammas))]


def random_transformation(algebra: SetAlgebra, rng: np.random.Generator) -> Transformation:
    for _ in range(1000):
        tau = Transformation(tuple(int(v) for v in rng.integers(algebra.alpha, size=algebra.alpha)))
        if algebra.signature.admits_transformation(tau):
            return tau
    return Transformation.identity(algebra.alpha)


def random_equivalence(algebra: SetAlgebra, rng: np.random.Generator) -> EquivRel:
    choices = algebra.equivalences()
    return choices[rng.integers(len(choices))]


def random_element(algebra: SetAlgebra, rng: np.random.Generator) -> ElementSet:
    """Draw from a mixture so that sparse, structured and dense sets all occur.

    Kinds: uniform bits, sparse bits, a diagonal, a union of kernel atoms, a
    cylindrified sparse set, a substitution image of a sparse set, and the
    complement of a sparse set.
    """
    kind = int(rng.integers(7))
    sparse = random_bits(algebra, rng, float(rng.uniform(0.0, 0.25)))
    if kind == 0:
        return random_bits(algebra, rng)
    if kind == 1:
        return sparse
    if kind == 2:
        return algebra.diag(random_equivalence(algebra, rng))
    if kind == 3:
        from ..partitions import enumerate_partitions
        out = algebra.zero
        for r in enumerate_partitions(algebra.alpha):
            if rng.random() < 0.5:
                out = out | atom_concrete(r, algebra)
        return out
    if kind == 4:
        return algebra.cyl(random_gamma(algebra, rng), sparse)
    if kind == 5 and algebra.signature.substitutions:
        return algebra.subst(random_transformation(algebra, rng), sparse)
    return ~sparse
