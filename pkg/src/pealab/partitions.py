"""The subuniverse of unions of kernel atoms, computed on partition labels.

For a partition ``R`` of the coordinates, the kernel atom ``X_R`` is the set
of sequences whose equality pattern is exactly ``R``.  Unions of kernel atoms
are closed under every operator of the signature, and the operators act on
the labels combinatorially, independently of the base set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .seqalg import (CapacityError, ElementSet, EquivRel, SetAlgebra, Signature,
                     SignatureError, Transformation)

Partition = EquivRel

MAX_PARTITION_ALPHA = 10


@lru_cache(maxsize=None)
def _partitions(alpha: int) -> tuple[EquivRel, ...]:
    out = []

    def grow(prefix: list[int], top: int):
        if len(prefix) == alpha:
            out.append(EquivRel(tuple(prefix)))
            return
        for c in range(top + 2):
            prefix.append(c)
            grow(prefix, max(top, c))
            prefix.pop()

    grow([], -1)
    return tuple(out)


def enumerate_partitions(alpha: int, limit: int = MAX_PARTITION_ALPHA) -> list[EquivRel]:
    """All partitions of ``{0..alpha-1}`` in restricted-growth-string order."""
    if alpha < 1:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if alpha > limit:
        raise CapacityError(f"alpha={alpha} exceeds the partition limit {limit}")
    return list(_partitions(alpha))


def bell(n: int) -> int:
    """Bell numbers by the triangle recurrence (independent of the enumerator)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


@dataclass(frozen=True)
class PartitionElement:
    """``U{X_R : R in labels}`` as a symbolic element."""

    alpha: int
    labels: frozenset[EquivRel]

    def _check(self, other: PartitionElement) -> None:
        if not isinstance(other, PartitionElement) or other.alpha != self.alpha:
            raise ValueError("partition elements of different dimensions")

    def __or__(self, other: PartitionElement) -> PartitionElement:
        self._check(other)
        return PartitionElement(self.alpha, self.labels | other.labels)

    def __and__(self, other: PartitionElement) -> PartitionElement:
        self._check(other)
        return PartitionElement(self.alpha, self.labels & other.labels)

    def __sub__(self, other: PartitionElement) -> PartitionElement:
        self._check(other)
        return PartitionElement(self.alpha, self.labels - other.labels)

    def __invert__(self) -> PartitionElement:
        return PartitionElement(self.alpha, frozenset(_partitions(self.alpha)) - self.labels)

    def __le__(self, other: PartitionElement) -> bool:
        self._check(other)
        return self.labels <= other.labels

    def __len__(self) -> int:
        return len(self.labels)

    def sorted_labels(self) -> list[EquivRel]:
        return sorted(self.labels, key=lambda r: r.rgs)

    def is_atom(self) -> bool:
        return len(self.labels) == 1

    def __repr__(self):
        return "PartitionElement{" + ", ".join(map(str, self.sorted_labels())) + "}"


def is_atom(x: PartitionElement) -> bool:
    return x.is_atom()


class PartitionAlgebra:
    """Symbolic counterpart of :class:`SetAlgebra` on partition labels.

    Exposes the same operator names so terms evaluate in either algebra.
    """

    def __init__(self, alpha: int, signature: Signature | None = None):
        self.alpha = alpha
        self.signature = signature or Signature()
        self.partitions = enumerate_partitions(alpha)
        self._cyl_keys: dict[frozenset[int], dict[EquivRel, tuple]] = {}

    def __repr__(self):
        return f"PartitionAlgebra(alpha={self.alpha})"

    def element(self, labels: Iterable[EquivRel]) -> PartitionElement:
        labels = frozenset(labels)
        for r in labels:
            if r.alpha != self.alpha:
                raise ValueError(f"partition {r} is not on {self.alpha} points")
        return PartitionElement(self.alpha, labels)

    def atom(self, r: EquivRel) -> PartitionElement:
        return self.element([r])

    @property
    def zero(self) -> PartitionElement:
        return self.element(())

    @property
    def one(self) -> PartitionElement:
        return self.element(self.partitions)

    def join(self, x, y):
        return x | y

    def meet(self, x, y):
        return x & y

    def complement(self, x):
        return ~x

    def _check_coord(self, i: int) -> None:
        if not 0 <= i < self.alpha:
            raise IndexError(f"coordinate {i} out of range for alpha={self.alpha}")

    def _outside_key(self, gamma: frozenset[int]) -> dict[EquivRel, tuple]:
        keys = self._cyl_keys.get(gamma)
        if keys is None:
            outside = [i for i in range(self.alpha) if i not in gamma]
            keys = {r: EquivRel.kernel([r.rgs[i] for i in outside]).rgs for r in self.partitions}
            self._cyl_keys[gamma] = keys
        return keys

    def cyl(self, gamma: Iterable[int], x: PartitionElement) -> PartitionElement:
        """Labels agreeing with some label of ``x`` on all pairs outside ``gamma``."""
        gamma = frozenset(gamma)
        for i in gamma:
            self._check_coord(i)
        if not self.signature.admits_gamma(gamma):
            raise SignatureError(f"c_{set(gamma)} not in the {self.signature.name} signature")
        keys = self._outside_key(gamma)
        wanted = {keys[r] for r in x.labels}
        return self.element(s for s in self.partitions if keys[s] in wanted)

    def subst(self, tau: Transformation, x: PartitionElement) -> PartitionElement:
        """Labels ``S`` with ``i R j <=> tau(i) S tau(j)`` for some label ``R`` of ``x``."""
        if tau.alpha != self.alpha:
            raise ValueError(f"transformation on {tau.alpha} points, algebra has alpha={self.alpha}")
        if not self.signature.admits_transformation(tau):
            raise SignatureError(f"s_{tau} not in the {self.signature.name} signature")
        return self.element(s for s in self.partitions if s.pullback(tau) in x.labels)

    def replacement(self, i: int, j: int, x: PartitionElement) -> PartitionElement:
        self._check_coord(i)
        self._check_coord(j)
        if i == j:
            raise ValueError("replacement needs distinct coordinates")
        return self.subst(Transformation.replacement(self.alpha, i, j), x)

    def diag(self, e: EquivRel) -> PartitionElement:
        """The up-set of ``e`` in the refinement order."""
        if e.alpha != self.alpha:
            raise ValueError(f"relation on {e.alpha} points, algebra has alpha={self.alpha}")
        if not self.signature.admits_equivalence(e):
            raise SignatureError(f"d_{e} not in the {self.signature.name} signature")
        return self.element(r for r in self.partitions if e.refines(r))

    def diag_pair(self, i: int, j: int) -> PartitionElement:
        self._check_coord(i)
        self._check_coord(j)
        return self.diag(EquivRel.pair(self.alpha, i, j))


def cyl_sym(gamma, x: PartitionElement) -> PartitionElement:
    return PartitionAlgebra(x.alpha).cyl(gamma, x)


def subst_sym(tau: Transformation, x: PartitionElement) -> PartitionElement:
    return PartitionAlgebra(x.alpha).subst(tau, x)


def diag_sym(e: EquivRel) -> PartitionElement:
    return PartitionAlgebra(e.alpha).diag(e)


# -- concrete side -------------------------------------------------------------

_KERNELS: dict = {}


def kernel_index(algebra: SetAlgebra) -> np.ndarray:
    """``index[r]`` is the position in :func:`enumerate_partitions` of the kernel of sequence ``r``."""
    key = (algebra.alpha, algebra.base)
    idx = _KERNELS.get(key)
    if idx is None:
        position = {p: k for k, p in enumerate(enumerate_partitions(algebra.alpha))}
        cols = algebra.coords.T.tolist()
        idx = np.array([position[EquivRel.kernel(s)] for s in cols], dtype=np.int64)
        idx.flags.writeable = False
        _KERNELS[key] = idx
    return idx


def atom_concrete(r: EquivRel, algebra: SetAlgebra) -> ElementSet:
    """``X_R``: the sequences whose kernel is exactly ``r``."""
    if r.alpha != algebra.alpha:
        raise ValueError(f"partition {r} is not on {algebra.alpha} points")
    k = enumerate_partitions(algebra.alpha).index(r)
    return ElementSet(algebra, kernel_index(algebra) == k)


def represent(x: PartitionElement, algebra: SetAlgebra) -> ElementSet:
    """Union of the concrete atoms named by the labels of ``x``."""
    if x.alpha != algebra.alpha:
        raise ValueError("dimension mismatch")
    parts = enumerate_partitions(algebra.alpha)
    chosen = np.zeros(len(parts), dtype=bool)
    for r in x.labels:
        chosen[parts.index(r)] = True
    return ElementSet(algebra, chosen[kernel_index(algebra)])


def symbolic(x: ElementSet) -> PartitionElement | None:
    """The labels of ``x`` if it is a union of kernel atoms, otherwise ``None``.

    Kernel atoms that are empty in ``x.algebra`` (more classes than base
    points) are never included.
    """
    idx = kernel_index(x.algebra)
    parts = enumerate_partitions(x.algebra.alpha)
    inside = np.bincount(idx[x.bits], minlength=len(parts))
    total = np.bincount(idx, minlength=len(parts))
    if np.any((inside > 0) & (inside < total)):
        return None
    return PartitionElement(x.algebra.alpha, frozenset(parts[k] for k in np.flatnonzero(inside)))


def in_c(x: ElementSet) -> bool:
    """Whether ``x`` is a union of kernel atoms."""
    return symbolic(x) is not None
