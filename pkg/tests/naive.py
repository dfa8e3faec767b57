"""Brute-force reference implementations over Python sets of tuples.

Nothing here touches the numpy encoding, so the engine is compared against
a direct reading of each definition.
"""

from __future__ import annotations

import itertools


def sequences(alpha: int, base: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(base), repeat=alpha))


def as_set(x) -> frozenset[tuple[int, ...]]:
    return frozenset(x)


def cyl(alpha, base, gamma, xs):
    gamma = set(gamma)
    return frozenset(s for s in sequences(alpha, base)
                     if any(all(s[i] == t[i] for i in range(alpha) if i not in gamma) for t in xs))


def subst(alpha, base, tau, xs):
    return frozenset(s for s in sequences(alpha, base) if tuple(s[tau[i]] for i in range(alpha)) in xs)


def diag(alpha, base, pairs):
    return frozenset(s for s in sequences(alpha, base) if all(s[i] == s[j] for i, j in pairs))


def kernel_classes(s) -> frozenset[frozenset[int]]:
    groups: dict = {}
    for i, v in enumerate(s):
        groups.setdefault(v, set()).add(i)
    return frozenset(frozenset(g) for g in groups.values())


def set_partitions(n: int) -> list[frozenset[frozenset[int]]]:
    """All partitions of ``range(n)`` by inserting each point into an existing block or a new one."""
    out = [[]]
    for k in range(n):
        nxt = []
        for blocks in out:
            for b in range(len(blocks)):
                nxt.append(blocks[:b] + [blocks[b] | {k}] + blocks[b + 1:])
            nxt.append(blocks + [{k}])
        out = nxt
    return [frozenset(frozenset(b) for b in blocks) for blocks in out]


def all_transformations(alpha):
    return list(itertools.product(range(alpha), repeat=alpha))


def closure(alpha, base, generators):
    """Least family of subsets containing the generators and the diagonals,
    closed under complement, union, every cyl and every subst."""
    universe = frozenset(sequences(alpha, base))
    family = {frozenset(), universe, *map(frozenset, generators)}
    family |= {diag(alpha, base, [(i, j)]) for i in range(alpha) for j in range(alpha)}
    gammas = [g for k in range(alpha + 1) for g in itertools.combinations(range(alpha), k)]
    taus = all_transformations(alpha)
    while True:
        new = set(family)
        for x in family:
            new.add(universe - x)
            new.update(cyl(alpha, base, g, x) for g in gammas)
            new.update(subst(alpha, base, t, x) for t in taus)
        new |= {x | y for x in family for y in family}
        if new == family:
            return family
        family = new


def ideal(elements, generators, operators):
    """Least subset of ``elements`` with 0, the generators, closed under union,
    the operators and downward closure."""
    elements = [frozenset(e) for e in elements]
    members = {frozenset(), *map(frozenset, generators)}
    while True:
        new = set(members)
        new |= {a | b for a in members for b in members}
        for a in members:
            new.update(op(a) for op in operators)
        new |= {e for e in elements if any(e <= m for m in new)}
        if new == members:
            return members
        members = new
