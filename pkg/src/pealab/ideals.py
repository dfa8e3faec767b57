"""Ideals of finite subalgebras.

An ideal contains 0 and is closed under ``+``, downward under ``<=``, and
under every admissible ``cyl`` and ``subst``.  Ideals are only materialised
inside a finite carrier (a :class:`~pealab.subalgebra.FiniteSubalgebra`);
membership in a generated ideal needs no enumeration at all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator

from .seqalg import ElementSet, SetAlgebra
from .subalgebra import FiniteSubalgebra

MAX_CARRIER = 1 << 12


class CarrierError(ValueError):
    """The carrier is not closed, too large, or does not contain the inputs."""


@dataclass(frozen=True)
class Ideal:
    members: frozenset[ElementSet]
    carrier: FiniteSubalgebra

    def __contains__(self, x: ElementSet) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.members)

    def is_proper(self) -> bool:
        return self.carrier.algebra.one not in self.members


def _carrier_elements(carrier: FiniteSubalgebra) -> list[ElementSet]:
    if len(carrier) > MAX_CARRIER:
        raise CarrierError(f"carrier has {len(carrier)} elements, limit is {MAX_CARRIER}")
    return carrier.elements()


def _require_in(carrier: FiniteSubalgebra, xs: Iterable[ElementSet]) -> list[ElementSet]:
    xs = list(xs)
    for x in xs:
        if x not in carrier:
            raise CarrierError(f"{x!r} is not in the carrier")
    return xs


def _sum(algebra: SetAlgebra, xs: Iterable[ElementSet]) -> ElementSet:
    return reduce(lambda u, v: u | v, xs, algebra.zero)


def _masks(carrier: FiniteSubalgebra, xs: Iterable[ElementSet]) -> set[int]:
    out = set()
    for x in xs:
        m = carrier.mask_of(x)
        if m is None:
            raise CarrierError(f"{x!r} is not in the carrier")
        out.add(m)
    return out


def _down(carrier: FiniteSubalgebra, tops: Iterable[int]) -> frozenset[ElementSet]:
    """Members of ``carrier`` below some mask in ``tops``."""
    _carrier_elements(carrier)
    tops = list(tops)
    full = len(carrier) - 1
    below = {m for m in range(len(carrier)) if any(m & (full ^ t) == 0 for t in tops)}
    return frozenset(carrier.element(m) for m in below)


def ideal_closure_oracle(xs: Iterable[ElementSet], carrier: FiniteSubalgebra) -> Ideal:
    """Least ideal of ``carrier`` containing ``xs``, by iterating the closure rules.

    Members are tracked as atom masks of the carrier; operator images are
    computed on the concrete elements and then looked up in the carrier.
    """
    algebra = carrier.algebra
    elements = _carrier_elements(carrier)
    full = len(carrier) - 1
    images = []
    for x in elements:
        row = []
        for op in [lambda v, g=g: algebra.cyl(g, v) for g in algebra.gammas()] + \
                  [lambda v, t=t: algebra.subst(t, v) for t in algebra.transformations()]:
            m = carrier.mask_of(op(x))
            if m is None:
                raise CarrierError(f"carrier not closed: an operator sends {x!r} outside")
            row.append(m)
        images.append(row)

    members = {0} | _masks(carrier, xs)
    while True:
        new = set(members)
        new |= {a | b for a in members for b in members}
        for a in members:
            new.update(images[a])
        new |= {m for m in range(full + 1) if any(m & (full ^ t) == 0 for t in new)}
        if new == members:
            return Ideal(frozenset(elements[m] for m in members), carrier)
        members = new


def ig_member(y: ElementSet, xs: Iterable[ElementSet], search: bool = False) -> bool:
    """Whether ``y`` lies in the ideal generated by ``xs``.

    The generated ideal is ``{y : y <= c_G(x_0 + ... + x_{k-1})}`` over finite
    families from ``xs`` and admissible ``G``.  With ``search`` every family
    and every ``G`` is tried; otherwise the monotone reduction to the largest
    family and the admissible ``G`` is used.
    """
    algebra = y.algebra
    xs = list(dict.fromkeys(xs))
    gammas = algebra.gammas()
    if not search:
        total = _sum(algebra, xs)
        maximal = [g for g in gammas if not any(g < h for h in gammas)]
        return any(y <= algebra.cyl(g, total) for g in maximal)
    for k in range(len(xs) + 1):
        for family in itertools.combinations(xs, k):
            total = _sum(algebra, family)
            if any(y <= algebra.cyl(g, total) for g in gammas):
                return True
    return False


def generated_ideal(xs: Iterable[ElementSet], carrier: FiniteSubalgebra, search: bool = False) -> Ideal:
    """``Ig`` of ``xs`` inside ``carrier``, by the normal form."""
    xs = _require_in(carrier, xs)
    members = [y for y in _carrier_elements(carrier) if ig_member(y, xs, search)]
    return Ideal(frozenset(members), carrier)


def ideal_join(i: Ideal, j: Ideal) -> Ideal:
    """``{x : x <= a + b, a in i, b in j}``, the ideal generated by ``i | j``."""
    if i.carrier is not j.carrier and not (
            i.carrier.is_subset_of(j.carrier) and j.carrier.is_subset_of(i.carrier)):
        raise CarrierError("ideals live in different carriers")
    left, right = _masks(i.carrier, i), _masks(i.carrier, j)
    return Ideal(_down(i.carrier, {a | b for a in left for b in right}), i.carrier)


def ideal_restrict_extend(i: Ideal, larger: FiniteSubalgebra) -> Ideal:
    """``Ig`` of ``i`` in a carrier containing ``i.carrier``: its downward closure."""
    if not i.carrier.is_subset_of(larger):
        raise CarrierError("the ideal's carrier is not contained in the larger carrier")
    return Ideal(_down(larger, _masks(larger, i)), larger)


def is_ideal(members: Iterable[ElementSet], carrier: FiniteSubalgebra) -> bool:
    """Check the four closure conditions directly."""
    algebra = carrier.algebra
    members = set(members)
    if algebra.zero not in members:
        return False
    if any(x not in carrier for x in members):
        return False
    if any((x | y) not in members for x in members for y in members):
        return False
    if any(y not in members for y in _carrier_elements(carrier) if any(y <= x for x in members)):
        return False
    return all(algebra.cyl(g, x) in members for x in members for g in algebra.gammas()) and \
        all(algebra.subst(t, x) in members for x in members for t in algebra.transformations())
