"""Random term generators: a Hypothesis strategy and a seeded numpy one."""

from __future__ import annotations

from hypothesis import strategies as st

from pealab.terms import (ONE, ZERO, And, Cyl, Diag, DiagPair, Not, Or, Repl, Subst, Term, Var)

NAMES = ["x", "y", "z", "w", "v1", "long_name"]
COORDS = 6


def _classes_from_labels(labels):
    groups: dict = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return Diag.of(groups.values())


coord = st.integers(0, COORDS - 1)

leaves = st.one_of(
    st.just(ZERO), st.just(ONE),
    st.sampled_from(NAMES).map(Var),
    st.tuples(coord, coord).map(lambda p: DiagPair(*p)),
    st.lists(st.integers(0, 3), min_size=1, max_size=COORDS).map(_classes_from_labels),
)


def _extend(children):
    return st.one_of(
        children.map(Not),
        st.tuples(st.frozensets(coord, max_size=4), children).map(lambda p: Cyl(*p)),
        st.tuples(st.dictionaries(coord, coord, max_size=3), children).map(lambda p: Subst.of(*p)),
        st.tuples(coord, st.integers(1, COORDS - 1), children).map(
            lambda p: Repl(p[0], (p[0] + p[1]) % COORDS, p[2])),
        st.tuples(children, children).map(lambda p: And(*p)),
        st.tuples(children, children).map(lambda p: Or(*p)),
    )


terms = st.recursive(leaves, _extend, max_leaves=24)


def random_term(rng, depth: int, coords: int = COORDS) -> Term:
    """A term of depth at most ``depth`` using coordinates below ``coords``."""
    kind = int(rng.integers(11)) if depth > 0 else int(rng.integers(5))
    if kind == 0:
        return ZERO
    if kind == 1:
        return ONE
    if kind == 2:
        return Var(NAMES[int(rng.integers(len(NAMES)))])
    if kind == 3:
        return DiagPair(int(rng.integers(coords)), int(rng.integers(coords)))
    if kind == 4:
        return _classes_from_labels(rng.integers(4, size=int(rng.integers(1, coords + 1))).tolist())
    sub = random_term(rng, depth - 1, coords)
    if kind == 5:
        return Not(sub)
    if kind == 6:
        gamma = frozenset(int(v) for v in rng.integers(coords, size=int(rng.integers(5))))
        return Cyl(gamma, sub)
    if kind == 7:
        mapping = {int(rng.integers(coords)): int(rng.integers(coords)) for _ in range(int(rng.integers(4)))}
        return Subst.of(mapping, sub)
    if kind == 8:
        i, j = (int(v) for v in rng.choice(coords, size=2, replace=False))
        return Repl(i, j, sub)
    other = random_term(rng, depth - 1, coords)
    return And(sub, other) if kind == 9 else Or(sub, other)
