"""Finite subalgebras of a full set algebra, generated to a fixpoint.

A finite Boolean subalgebra is determined by its atoms, i.e. by a labelling
of the sequence space.  Every extra-Boolean operator is additive and sends 0
to 0, so the subalgebra is closed under it as soon as the image of each atom
is a union of atoms.  Closure therefore refines the labelling until every
operator image of every atom is constant on the labels.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .seqalg import ElementSet, SetAlgebra

DEFAULT_CAP = 1 << 16


class ClosureBudgetError(RuntimeError):
    """The closure grew beyond the configured element cap."""


class FiniteSubalgebra:
    """The Boolean algebra of unions of the atoms given by ``labels``.

    ``labels[r]`` is the atom index of rank ``r``; atoms are numbered by
    their least rank.  Element ``m`` (an int bitmask over atoms) is the union
    of the atoms whose bits are set.
    """

    def __init__(self, algebra: SetAlgebra, labels: np.ndarray):
        self.algebra = algebra
        self.labels = labels
        self.n_atoms = int(labels.max()) + 1 if labels.size else 0
        self.atoms = [ElementSet(algebra, labels == k) for k in range(self.n_atoms)]

    def __len__(self) -> int:
        return 1 << self.n_atoms

    def __repr__(self):
        return f"FiniteSubalgebra({self.algebra!r}, atoms={self.n_atoms})"

    def mask_of(self, x: ElementSet) -> int | None:
        """Atom bitmask of ``x``, or ``None`` if ``x`` is not a member."""
        inside = np.bincount(self.labels[x.bits], minlength=self.n_atoms)
        sizes = np.bincount(self.labels, minlength=self.n_atoms)
        if np.any((inside > 0) & (inside < sizes)):
            return None
        return sum(1 << int(k) for k in np.flatnonzero(inside))

    def __contains__(self, x: ElementSet) -> bool:
        return x.algebra.config == self.algebra.config and self.mask_of(x) is not None

    def element(self, mask: int) -> ElementSet:
        chosen = np.array([(mask >> k) & 1 for k in range(self.n_atoms)], dtype=bool)
        return ElementSet(self.algebra, chosen[self.labels])

    def __iter__(self) -> Iterator[ElementSet]:
        """Members in Gray-code order, starting from 0."""
        bits = np.zeros(self.algebra.size, dtype=bool)
        yield ElementSet(self.algebra, bits.copy())
        for n in range(1, len(self)):
            k = (n & -n).bit_length() - 1
            bits ^= self.atoms[k].bits
            yield ElementSet(self.algebra, bits.copy())

    def elements(self) -> list[ElementSet]:
        return [self.element(m) for m in range(len(self))]

    def is_subset_of(self, other: FiniteSubalgebra) -> bool:
        return all(a in other for a in self.atoms)


def _refine(labels: np.ndarray, bits: np.ndarray) -> np.ndarray:
    key = labels * 2 + bits
    _, first, inverse = np.unique(key, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    return order[inverse.reshape(-1)]


def generated_subalgebra(algebra: SetAlgebra, generators: Iterable[ElementSet] = (),
                         cap: int = DEFAULT_CAP) -> FiniteSubalgebra:
    """``Sg`` of ``generators`` together with 0, 1 and every admissible diagonal.

    Closed under the Boolean operations and every admissible ``cyl`` and
    ``subst`` of ``algebra``.  Raises :class:`ClosureBudgetError` once the
    number of elements would exceed ``cap``.
    """
    labels = np.zeros(algebra.size, dtype=np.int64)

    def count(lab):
        return int(lab.max()) + 1 if lab.size else 0

    def check(lab):
        if 2 ** count(lab) > cap:
            raise ClosureBudgetError(
                f"closure has at least 2^{count(lab)} elements, cap is {cap}")

    seeds = list(generators) + [algebra.diag(e) for e in algebra.equivalences()]
    for g in seeds:
        if g.algebra.config != algebra.config:
            raise ValueError("generator from a different algebra")
        labels = _refine(labels, g.bits)
        check(labels)

    gammas = [g for g in algebra.gammas() if g]
    taus = algebra.transformations()
    done: set[bytes] = set()
    while True:
        before = count(labels)
        for k in range(before):
            atom = labels == k
            key = np.packbits(atom).tobytes()
            if key in done:
                continue
            done.add(key)
            x = ElementSet(algebra, atom)
            for gamma in gammas:
                labels = _refine(labels, algebra.cyl(gamma, x).bits)
            for tau in taus:
                labels = _refine(labels, algebra.subst(tau, x).bits)
            check(labels)
        if count(labels) == before:
            return FiniteSubalgebra(algebra, labels)
