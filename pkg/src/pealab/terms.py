"""Terms over the signature ``+ * - 0 1 c_(G) s_tau d_E`` and their evaluation.

Terms are immutable trees.  ``+``, ``*`` and unary ``-`` on terms build
``Or``, ``And`` and ``Not`` nodes, which keeps hand-written terms readable::

    x, y = Var("x"), Var("y")
    r = Cyl.of(0, x * Cyl.of(1, y)) * Cyl.of(0, x * -Cyl.of(1, y))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .seqalg import EquivRel, Transformation


class Term:
    __slots__ = ()

    def __add__(self, other: Term) -> Term:
        return Or(self, other)

    def __mul__(self, other: Term) -> Term:
        return And(self, other)

    def __neg__(self) -> Term:
        return Not(self)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Diag(Term):
    """General diagonal ``d_E``, ``E`` given by listed classes (others singletons)."""

    classes: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]]) -> Diag:
        return cls(tuple(sorted(tuple(sorted(c)) for c in classes)))


@dataclass(frozen=True)
class DiagPair(Term):
    i: int
    j: int


@dataclass(frozen=True)
class Cyl(Term):
    gamma: frozenset[int]
    sub: Term

    @classmethod
    def of(cls, gamma: int | Iterable[int], sub: Term) -> Cyl:
        return cls(frozenset([gamma] if isinstance(gamma, int) else gamma), sub)


@dataclass(frozen=True)
class Subst(Term):
    """``s_tau`` with ``tau`` listed as ``(source, target)`` pairs; unlisted points are fixed."""

    mapping: tuple[tuple[int, int], ...]
    sub: Term

    @classmethod
    def of(cls, mapping: Mapping[int, int], sub: Term) -> Subst:
        return cls(tuple(sorted(mapping.items())), sub)


@dataclass(frozen=True)
class Repl(Term):
    """``s^i_j``, i.e. ``s_[i|j]``."""

    i: int
    j: int
    sub: Term


@dataclass(frozen=True)
class And(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Or(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Term):
    sub: Term


ZERO = Zero()
ONE = One()


# -- printing ------------------------------------------------------------------

def _operand(t: Term) -> str:
    text = to_text(t)
    return f"({text})" if isinstance(t, (And, Or)) else text


def to_text(t: Term) -> str:
    """Surface syntax; ``parse(to_text(t)) == t``."""
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, DiagPair):
        return f"d({t.i},{t.j})"
    if isinstance(t, Diag):
        return "dE{" + ",".join("{" + ",".join(map(str, c)) + "}" for c in t.classes) + "}"
    if isinstance(t, Cyl):
        return "c(" + " ".join(map(str, sorted(t.gamma))) + ") " + _operand(t.sub)
    if isinstance(t, Subst):
        return "s[" + ", ".join(f"{i}->{j}" for i, j in t.mapping) + "] " + _operand(t.sub)
    if isinstance(t, Repl):
        return f"s[{t.i}|{t.j}] " + _operand(t.sub)
    if isinstance(t, Not):
        return "-" + _operand(t.sub)
    if isinstance(t, And):
        left = to_text(t.left)
        if isinstance(t.left, Or):
            left = f"({left})"
        return f"{left} * {_operand(t.right)}"
    if isinstance(t, Or):
        right = to_text(t.right)
        if isinstance(t.right, Or):
            right = f"({right})"
        return f"{to_text(t.left)} + {right}"
    raise TypeError(f"not a term: {t!r}")


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, (And, Or)):
        return free_vars(t.left) | free_vars(t.right)
    if isinstance(t, (Cyl, Subst, Repl, Not)):
        return free_vars(t.sub)
    return set()


def depth(t: Term) -> int:
    if isinstance(t, (And, Or)):
        return 1 + max(depth(t.left), depth(t.right))
    if isinstance(t, (Cyl, Subst, Repl, Not)):
        return 1 + depth(t.sub)
    return 0


# -- evaluation ----------------------------------------------------------------

class UnboundVariable(KeyError):
    pass


def evaluate(t: Term, env: Mapping[str, Any], algebra, cache: dict | None = None) -> Any:
    """Evaluate ``t`` in ``algebra`` under ``env``.

    ``algebra`` is a :class:`~pealab.seqalg.SetAlgebra` or a
    :class:`~pealab.partitions.PartitionAlgebra`; both expose ``zero``,
    ``one``, ``cyl``, ``subst``, ``diag`` and ``diag_pair``.  Pass a dict as
    ``cache`` to share subterm values across calls with the same ``env``.
    """
    if cache is not None:
        hit = cache.get(t)
        if hit is None:
            hit = cache[t] = _evaluate(t, env, algebra, cache)
        return hit
    return _evaluate(t, env, algebra, None)


def _evaluate(t: Term, env, algebra, cache):
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Zero):
        return algebra.zero
    if isinstance(t, One):
        return algebra.one
    if isinstance(t, And):
        return evaluate(t.left, env, algebra, cache) & evaluate(t.right, env, algebra, cache)
    if isinstance(t, Or):
        return evaluate(t.left, env, algebra, cache) | evaluate(t.right, env, algebra, cache)
    if isinstance(t, Not):
        return ~evaluate(t.sub, env, algebra, cache)
    if isinstance(t, Cyl):
        return algebra.cyl(t.gamma, evaluate(t.sub, env, algebra, cache))
    if isinstance(t, Subst):
        for i, j in t.mapping:
            if not (0 <= i < algebra.alpha and 0 <= j < algebra.alpha):
                raise IndexError(f"s[{i}->{j}] out of range for alpha={algebra.alpha}")
        tau = Transformation.from_mapping(algebra.alpha, t.mapping)
        return algebra.subst(tau, evaluate(t.sub, env, algebra, cache))
    if isinstance(t, Repl):
        return algebra.replacement(t.i, t.j, evaluate(t.sub, env, algebra, cache))
    if isinstance(t, DiagPair):
        return algebra.diag_pair(t.i, t.j)
    if isinstance(t, Diag):
        for c in t.classes:
            for v in c:
                if not 0 <= v < algebra.alpha:
                    raise IndexError(f"diagonal index {v} out of range for alpha={algebra.alpha}")
        return algebra.diag(EquivRel.from_classes(algebra.alpha, t.classes))
    raise TypeError(f"not a term: {t!r}")


# -- the counterexample terms --------------------------------------------------

X, Y, Z, W = Var("x"), Var("y"), Var("z"), Var("w")


def c(i: int, t: Term) -> Term:
    return Cyl.of(i, t)


def s01(t: Term) -> Term:
    return Repl(0, 1, t)


D01 = DiagPair(0, 1)


def pigozzi_terms() -> dict[str, Term]:
    """The terms ``r, s, t`` whose interpolant cannot exist, and the helpers ``a, b``."""
    r = c(0, X * c(1, Y)) * c(0, X * -c(1, Y))
    s = c(0, c(1, c(1, Z) * s01(c(1, Z)) * -D01)) + c(0, X * -c(1, Z))
    t = c(0, c(1, c(1, W) * s01(c(1, W)) * -D01)) + c(0, X * -c(1, W))
    a = X * c(1, Y) * -c(0, X * -c(1, Z))
    b = X * -c(1, Y) * -c(0, X * -c(1, Z))
    return {"r": r, "s": s, "t": t, "a": a, "b": b}
