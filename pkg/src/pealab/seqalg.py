"""Full set algebras on sequence spaces ``^alpha U``.

An element is a subset of ``^alpha U`` stored as a boolean vector indexed by
the rank of each sequence.  Ranks are mixed-radix with coordinate 0 the most
significant digit, so the vector reshaped to ``(base,) * alpha`` is indexed
by the sequence itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_POINTS = 1 << 20


class CapacityError(ValueError):
    """The requested structure exceeds a configured size limit."""


class SignatureError(ValueError):
    """An operator outside the selected signature reduct was requested."""


@dataclass(frozen=True)
class Signature:
    """Which operators of the full signature are admitted.

    ``kappa`` bounds (strictly) the size of a cylindrified set, the support of
    a substitution and the number of points in non-singleton classes of a
    diagonal index.  ``None`` means unbounded, which at finite dimension
    admits everything.
    """

    name: str = "full"
    kappa: int | None = None
    substitutions: bool = True
    pair_diagonals_only: bool = False

    @classmethod
    def full(cls, kappa: int | None = None) -> Signature:
        return cls("full", kappa)

    @classmethod
    def quasipolyadic(cls) -> Signature:
        # every gamma and every support is finite at finite alpha
        return cls("quasipolyadic", None, True, True)

    @classmethod
    def lucas(cls, kappa: int | None = None) -> Signature:
        return cls("lucas", kappa, False, False)

    @classmethod
    def named(cls, name: str) -> Signature:
        try:
            return {"full": cls.full, "quasipolyadic": cls.quasipolyadic, "lucas": cls.lucas}[name]()
        except KeyError:
            raise ValueError(f"unknown fragment {name!r}") from None

    def admits_gamma(self, gamma: Iterable[int]) -> bool:
        return self.kappa is None or len(set(gamma)) < self.kappa

    def admits_transformation(self, tau: Transformation) -> bool:
        if not self.substitutions:
            return False
        return self.kappa is None or len(tau.support) < self.kappa

    def admits_equivalence(self, e: EquivRel) -> bool:
        moved = [c for c in e.classes if len(c) > 1]
        if self.pair_diagonals_only and (len(moved) > 1 or any(len(c) > 2 for c in moved)):
            return False
        return self.kappa is None or sum(len(c) for c in moved) < self.kappa


@dataclass(frozen=True)
class AlgebraConfig:
    alpha: int
    base: int
    signature: Signature = field(default_factory=Signature)
    max_points: int = MAX_POINTS

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.base < 1:
            raise ValueError(f"base must be positive, got {self.base}")
        if self.base ** self.alpha > self.max_points:
            raise CapacityError(
                f"sequence space {self.base}^{self.alpha} exceeds {self.max_points} points")

    @property
    def size(self) -> int:
        return self.base ** self.alpha

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "base": self.base, "fragment": self.signature.name,
                "kappa": self.signature.kappa}


@dataclass(frozen=True)
class Transformation:
    """A total map ``{0..alpha-1} -> {0..alpha-1}``, stored as its image tuple."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if any(not 0 <= v < n for v in self.image):
            raise ValueError(f"transformation {self.image} leaves 0..{n - 1}")

    @classmethod
    def identity(cls, alpha: int) -> Transformation:
        return cls(tuple(range(alpha)))

    @classmethod
    def replacement(cls, alpha: int, i: int, j: int) -> Transformation:
        """The map ``[i|j]``: send ``i`` to ``j`` and fix everything else."""
        image = list(range(alpha))
        image[i] = j
        return cls(tuple(image))

    @classmethod
    def from_mapping(cls, alpha: int, mapping: dict[int, int] | Iterable[tuple[int, int]]) -> Transformation:
        image = list(range(alpha))
        for i, j in dict(mapping).items():
            if not (0 <= i < alpha and 0 <= j < alpha):
                raise IndexError(f"coordinate in {i}->{j} out of range for alpha={alpha}")
            image[i] = j
        return cls(tuple(image))

    @property
    def alpha(self) -> int:
        return len(self.image)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.image) if v != i)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def compose(self, other: Transformation) -> Transformation:
        """``self o other``, i.e. ``i -> self(other(i))``."""
        return Transformation(tuple(self.image[v] for v in other.image))

    def preimage(self, gamma: Iterable[int]) -> frozenset[int]:
        gamma = set(gamma)
        return frozenset(i for i, v in enumerate(self.image) if v in gamma)

    def __str__(self):
        return "[" + ", ".join(f"{i}->{v}" for i, v in enumerate(self.image)) + "]"


def _rgs(labels: Sequence) -> tuple[int, ...]:
    """Restricted growth string of the kernel of ``labels``."""
    seen: dict = {}
    return tuple(seen.setdefault(v, len(seen)) for v in labels)


@dataclass(frozen=True)
class EquivRel:
    """An equivalence relation on ``{0..alpha-1}``.

    Stored canonically as a restricted growth string: ``rgs[i]`` is the index
    of the class of ``i`` with classes numbered by least element.  Ordering
    by ``rgs`` gives the canonical order of partitions.
    """

    rgs: tuple[int, ...]

    def __post_init__(self):
        if self.rgs != _rgs(self.rgs):
            raise ValueError(f"{self.rgs} is not a restricted growth string")

    @classmethod
    def kernel(cls, values: Sequence) -> EquivRel:
        return cls(_rgs(values))

    @classmethod
    def identity(cls, alpha: int) -> EquivRel:
        return cls(tuple(range(alpha)))

    @classmethod
    def full(cls, alpha: int) -> EquivRel:
        return cls((0,) * alpha)

    @classmethod
    def from_pairs(cls, alpha: int, pairs: Iterable[tuple[int, int]]) -> EquivRel:
        """The least equivalence relation containing ``pairs``."""
        parent = list(range(alpha))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for i, j in pairs:
            if not (0 <= i < alpha and 0 <= j < alpha):
                raise IndexError(f"pair ({i},{j}) out of range for alpha={alpha}")
            parent[find(i)] = find(j)
        return cls.kernel([find(v) for v in range(alpha)])

    @classmethod
    def from_classes(cls, alpha: int, classes: Iterable[Iterable[int]]) -> EquivRel:
        """Build from listed classes; unlisted points are singletons."""
        seen: set[int] = set()
        pairs = []
        for c in classes:
            c = list(c)
            if not c:
                raise ValueError("empty class")
            for v in c:
                if v in seen:
                    raise ValueError(f"point {v} listed in two classes")
                seen.add(v)
            pairs.extend((c[0], v) for v in c)
        return cls.from_pairs(alpha, pairs)

    @classmethod
    def pair(cls, alpha: int, i: int, j: int) -> EquivRel:
        return cls.from_pairs(alpha, [(i, j)])

    @property
    def alpha(self) -> int:
        return len(self.rgs)

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(max(self.rgs, default=-1) + 1)]
        for i, c in enumerate(self.rgs):
            out[c].append(i)
        return tuple(tuple(c) for c in out)

    def related(self, i: int, j: int) -> bool:
        return self.rgs[i] == self.rgs[j]

    def pairs(self) -> Iterator[tuple[int, int]]:
        n = self.alpha
        return ((i, j) for i in range(n) for j in range(n) if self.rgs[i] == self.rgs[j])

    def refines(self, other: EquivRel) -> bool:
        """Inclusion as sets of pairs."""
        return all(other.related(c[0], v) for c in self.classes for v in c)

    def pullback(self, tau: Transformation) -> EquivRel:
        """``{(i, j) : tau(i) self tau(j)}``."""
        return EquivRel.kernel([self.rgs[v] for v in tau.image])

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, c)) + "}" for c in self.classes) + "}"


class ElementSet:
    """An element of a full set algebra: a set of sequences as a bit vector."""

    __slots__ = ("algebra", "bits", "_hash")

    def __init__(self, algebra: SetAlgebra, bits: np.ndarray):
        bits = np.asarray(bits, dtype=bool)
        if bits.shape != (algebra.size,):
            raise ValueError(f"expected {algebra.size} bits, got shape {bits.shape}")
        bits.flags.writeable = False
        self.algebra = algebra
        self.bits = bits
        self._hash = None

    def _check(self, other: ElementSet) -> None:
        if not isinstance(other, ElementSet):
            raise TypeError(f"expected ElementSet, got {type(other).__name__}")
        if other.algebra.config != self.algebra.config:
            raise ValueError("elements belong to different algebras")

    def _new(self, bits) -> ElementSet:
        return ElementSet(self.algebra, bits)

    def __or__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return self._new(self.bits | other.bits)

    def __and__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return self._new(self.bits & other.bits)

    def __sub__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return self._new(self.bits & ~other.bits)

    def __xor__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return self._new(self.bits ^ other.bits)

    def __invert__(self) -> ElementSet:
        return self._new(~self.bits)

    def __le__(self, other: ElementSet) -> bool:
        self._check(other)
        return not np.any(self.bits & ~other.bits)

    def __ge__(self, other: ElementSet) -> bool:
        return other <= self

    def __lt__(self, other: ElementSet) -> bool:
        return self <= other and self != other

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.algebra.config == other.algebra.config and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra.config, self.key()))
        return self._hash

    def key(self) -> bytes:
        return np.packbits(self.bits).tobytes()

    def __len__(self) -> int:
        return int(np.count_nonzero(self.bits))

    def __contains__(self, seq) -> bool:
        rank = seq if isinstance(seq, (int, np.integer)) else self.algebra.encode(seq)
        return bool(self.bits[rank])

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return (self.algebra.decode(r) for r in self.ranks())

    def ranks(self) -> list[int]:
        return np.flatnonzero(self.bits).tolist()

    def is_zero(self) -> bool:
        return not self.bits.any()

    def first_difference(self, other: ElementSet) -> int | None:
        """Least rank on which the two elements disagree."""
        diff = np.flatnonzero(self.bits ^ other.bits)
        return int(diff[0]) if diff.size else None

    def __repr__(self):
        n = len(self)
        shown = ", ".join("(" + ",".join(map(str, s)) + ")" for s in itertools.islice(self, 8))
        more = ", ..." if n > 8 else ""
        return f"ElementSet<{self.algebra.alpha},{self.algebra.base}>[{n}]{{{shown}{more}}}"


class SetAlgebra:
    """The full set algebra on ``^alpha U`` with ``U = {0..base-1}``.

    Operator calls are checked against ``config.signature``; pass a config
    with a restricted signature to work in a reduct.
    """

    def __init__(self, config: AlgebraConfig):
        self.config = config
        self.alpha = config.alpha
        self.base = config.base
        self.size = config.size
        self.shape = (self.base,) * self.alpha
        self._weights = np.array([self.base ** (self.alpha - 1 - i) for i in range(self.alpha)],
                                 dtype=np.int64)
        self._subst_index: dict[tuple[int, ...], np.ndarray] = {}

    @classmethod
    def of(cls, alpha: int, base: int, signature: Signature | None = None) -> SetAlgebra:
        return cls(AlgebraConfig(alpha, base, signature or Signature()))

    def __repr__(self):
        return f"SetAlgebra(alpha={self.alpha}, base={self.base}, {self.config.signature.name})"

    @property
    def signature(self) -> Signature:
        return self.config.signature

    # -- sequences ---------------------------------------------------------

    @cached_property
    def coords(self) -> np.ndarray:
        """``coords[i, r]`` is coordinate ``i`` of the rank-``r`` sequence."""
        coords = np.indices(self.shape, dtype=np.int64).reshape(self.alpha, -1)
        coords.flags.writeable = False
        return coords

    def encode(self, seq: Sequence[int]) -> int:
        if len(seq) != self.alpha or any(not 0 <= v < self.base for v in seq):
            raise ValueError(f"{tuple(seq)} is not a sequence in ^{self.alpha}{self.base}")
        rank = 0
        for v in seq:
            rank = rank * self.base + v
        return rank

    def decode(self, rank: int) -> tuple[int, ...]:
        if not 0 <= rank < self.size:
            raise ValueError(f"rank {rank} out of range")
        out = []
        for _ in range(self.alpha):
            rank, v = divmod(rank, self.base)
            out.append(v)
        return tuple(reversed(out))

    # -- constructors ------------------------------------------------------

    @property
    def zero(self) -> ElementSet:
        return ElementSet(self, np.zeros(self.size, dtype=bool))

    @property
    def one(self) -> ElementSet:
        return ElementSet(self, np.ones(self.size, dtype=bool))

    def element(self, bits) -> ElementSet:
        return ElementSet(self, np.array(bits, dtype=bool))

    def from_ranks(self, ranks: Iterable[int]) -> ElementSet:
        bits = np.zeros(self.size, dtype=bool)
        ranks = list(ranks)
        if any(not 0 <= r < self.size for r in ranks):
            raise ValueError("rank out of range")
        bits[ranks] = True
        return ElementSet(self, bits)

    def from_sequences(self, seqs: Iterable[Sequence[int]]) -> ElementSet:
        return self.from_ranks(self.encode(s) for s in seqs)

    def where(self, predicate) -> ElementSet:
        """All sequences satisfying ``predicate(seq)``."""
        return self.from_ranks(r for r in range(self.size) if predicate(self.decode(r)))

    # -- operators ---------------------------------------------------------

    def _check_coord(self, i: int) -> None:
        if not 0 <= i < self.alpha:
            raise IndexError(f"coordinate {i} out of range for alpha={self.alpha}")

    def join(self, x: ElementSet, y: ElementSet) -> ElementSet:
        return x | y

    def meet(self, x: ElementSet, y: ElementSet) -> ElementSet:
        return x & y

    def complement(self, x: ElementSet) -> ElementSet:
        return ~x

    def cyl(self, gamma: Iterable[int], x: ElementSet) -> ElementSet:
        gamma = tuple(sorted(set(gamma)))
        for i in gamma:
            self._check_coord(i)
        if not self.signature.admits_gamma(gamma):
            raise SignatureError(f"c_{set(gamma)} not in the {self.signature.name} signature")
        if not gamma:
            return x
        arr = x.bits.reshape(self.shape).any(axis=gamma, keepdims=True)
        return ElementSet(self, np.broadcast_to(arr, self.shape).reshape(-1).copy())

    def subst_index(self, tau: Transformation) -> np.ndarray:
        """``index[r]`` is the rank of ``s o tau`` for the rank-``r`` sequence ``s``."""
        if tau.alpha != self.alpha:
            raise ValueError(f"transformation on {tau.alpha} points, algebra has alpha={self.alpha}")
        idx = self._subst_index.get(tau.image)
        if idx is None:
            idx = self._weights @ self.coords[list(tau.image)]
            idx.flags.writeable = False
            self._subst_index[tau.image] = idx
        return idx

    def subst(self, tau: Transformation, x: ElementSet) -> ElementSet:
        if not self.signature.admits_transformation(tau):
            raise SignatureError(f"s_{tau} not in the {self.signature.name} signature")
        return ElementSet(self, x.bits[self.subst_index(tau)])

    def replacement(self, i: int, j: int, x: ElementSet) -> ElementSet:
        """``s_[i|j] x``, the substitution of ``j`` for ``i``."""
        self._check_coord(i)
        self._check_coord(j)
        if i == j:
            raise ValueError("replacement needs distinct coordinates")
        return self.subst(Transformation.replacement(self.alpha, i, j), x)

    def diag(self, e: EquivRel) -> ElementSet:
        if e.alpha != self.alpha:
            raise ValueError(f"relation on {e.alpha} points, algebra has alpha={self.alpha}")
        if not self.signature.admits_equivalence(e):
            raise SignatureError(f"d_{e} not in the {self.signature.name} signature")
        bits = np.ones(self.size, dtype=bool)
        for c in e.classes:
            for v in c[1:]:
                bits &= self.coords[c[0]] == self.coords[v]
        return ElementSet(self, bits)

    def diag_pair(self, i: int, j: int) -> ElementSet:
        self._check_coord(i)
        self._check_coord(j)
        return self.diag(EquivRel.pair(self.alpha, i, j))

    # -- the admissible index sets -----------------------------------------

    @cached_property
    def _gammas(self) -> tuple[frozenset[int], ...]:
        out = []
        for k in range(self.alpha + 1):
            out.extend(frozenset(g) for g in itertools.combinations(range(self.alpha), k))
        return tuple(g for g in out if self.signature.admits_gamma(g))

    @cached_property
    def _transformations(self) -> tuple[Transformation, ...]:
        if not self.signature.substitutions:
            return ()
        taus = (Transformation(t) for t in itertools.product(range(self.alpha), repeat=self.alpha))
        return tuple(t for t in taus if self.signature.admits_transformation(t))

    @cached_property
    def _equivalences(self) -> tuple[EquivRel, ...]:
        from .partitions import enumerate_partitions
        return tuple(e for e in enumerate_partitions(self.alpha) if self.signature.admits_equivalence(e))

    def gammas(self) -> list[frozenset[int]]:
        """Every admissible cylindrification index, by size then lexicographically."""
        return list(self._gammas)

    def transformations(self) -> list[Transformation]:
        return list(self._transformations)

    def equivalences(self) -> list[EquivRel]:
        return list(self._equivalences)


def full_algebra(config: AlgebraConfig) -> SetAlgebra:
    return SetAlgebra(config)
