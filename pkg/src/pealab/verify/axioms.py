"""The fourteen postulates checked in a concrete set algebra.

Each postulate is an instance generator plus a function computing the sides
to compare for one instance.  Index sets ``gamma`` and coordinate pairs are
always enumerated; elements are sampled, as are transformations and
relations when their domain is too large to enumerate.  A failing instance
is recorded in JSON form and can be replayed with :func:`replay`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from ..seqalg import ElementSet, EquivRel, SetAlgebra, Transformation
from .report import CheckReport, Verdict, stopwatch
from .sampling import make_rng, random_element, random_equivalence, random_transformation

EXHAUSTIVE_LIMIT = 5000

Side = tuple[str, ElementSet, str, ElementSet]


@dataclass(frozen=True)
class Postulate:
    number: int
    name: str
    statement: str
    needs_subst: bool
    instances: Callable[[SetAlgebra, object, int], tuple[Iterable[dict], bool]]
    sides: Callable[[SetAlgebra, dict], list[Side]]


# -- instance generators ---------------------------------------------------------

def _elements(names: str):
    def gen(algebra, rng, samples):
        def it():
            for _ in range(samples):
                yield {n: random_element(algebra, rng) for n in names}
        return it(), False
    return gen


def _with_gammas(names: str, pairs: bool = False):
    def gen(algebra, rng, samples):
        gammas = algebra.gammas()

        def it():
            for _ in range(samples):
                data = {n: random_element(algebra, rng) for n in names}
                if pairs:
                    for g, d in itertools.product(gammas, gammas):
                        if algebra.signature.admits_gamma(g | d):
                            yield {**data, "gamma": g, "delta": d}
                else:
                    for g in gammas:
                        yield {**data, "gamma": g}
        return it(), False
    return gen


def _sampled_taus(algebra: SetAlgebra, rng, count: int) -> Iterator[Transformation]:
    fixed = [Transformation.identity(algebra.alpha)]
    if algebra.alpha >= 2:
        fixed.append(Transformation.replacement(algebra.alpha, 0, 1))
    for k in range(count):
        yield fixed[k] if k < len(fixed) else random_transformation(algebra, rng)


def _with_taus(names: str, two: bool = False):
    def gen(algebra, rng, samples):
        def it():
            for tau in _sampled_taus(algebra, rng, samples):
                data = {n: random_element(algebra, rng) for n in names}
                data["tau"] = tau
                if two:
                    data["sigma"] = random_transformation(algebra, rng)
                yield data
        return it(), False
    return gen


def _identity_only(algebra, rng, samples):
    """Every singleton when there are few: ``s_tau`` acts pointwise, so that covers all ``x``."""
    tau = Transformation.identity(algebra.alpha)
    if algebra.size <= EXHAUSTIVE_LIMIT:
        return ({"x": algebra.from_ranks([r]), "tau": tau} for r in range(algebra.size)), True

    def it():
        for _ in range(samples):
            yield {"x": random_element(algebra, rng), "tau": tau}
    return it(), False


def _agree_off_gamma(algebra, rng, samples):
    gammas = algebra.gammas()

    def it():
        for _ in range(samples):
            x = random_element(algebra, rng)
            sigma = random_transformation(algebra, rng)
            for g in gammas:
                image = list(sigma.image)
                for i in g:
                    image[i] = int(rng.integers(algebra.alpha))
                tau = Transformation(tuple(image))
                if algebra.signature.admits_transformation(tau):
                    yield {"x": x, "gamma": g, "sigma": sigma, "tau": tau}
    return it(), False


def _cyl_subst(algebra, rng, samples):
    gammas = algebra.gammas()

    def it():
        for tau in _sampled_taus(algebra, rng, samples):
            x = random_element(algebra, rng)
            for g in gammas:
                delta = tau.preimage(g)
                if len({tau(i) for i in delta}) == len(delta) and algebra.signature.admits_gamma(delta):
                    yield {"x": x, "gamma": g, "delta": delta, "tau": tau}
    return it(), False


def _nothing(algebra, rng, samples):
    return iter([{}]), True


def _gamma_only(algebra, rng, samples):
    return ({"gamma": g} for g in algebra.gammas()), True


def _gamma_equiv(algebra, rng, samples):
    return ({"gamma": g, "E": e} for g in algebra.gammas() for e in algebra.equivalences()), True


def _tau_equiv(algebra, rng, samples):
    equivs = algebra.equivalences()
    if algebra.alpha ** algebra.alpha * len(equivs) <= EXHAUSTIVE_LIMIT:
        taus = algebra.transformations()
        return ({"tau": t, "E": e} for t in taus for e in equivs), True

    def it():
        fixed = [EquivRel.identity(algebra.alpha), EquivRel.full(algebra.alpha)]
        fixed = [e for e in fixed if algebra.signature.admits_equivalence(e)]
        for k, tau in enumerate(_sampled_taus(algebra, rng, samples)):
            e = fixed[k] if k < len(fixed) else random_equivalence(algebra, rng)
            yield {"tau": tau, "E": e}
    return it(), False


def _pairs(algebra, rng, samples):
    n = algebra.alpha

    def it():
        for _ in range(samples):
            x = random_element(algebra, rng)
            for i, j in itertools.product(range(n), repeat=2):
                yield {"x": x, "i": i, "j": j}
    return it(), False


# -- sides -----------------------------------------------------------------------

def _boolean(A: SetAlgebra, d: dict) -> list[Side]:
    x, y, z = d["x"], d["y"], d["z"]
    return [
        ("x+y = y+x", x | y, "=", y | x),
        ("x*y = y*x", x & y, "=", y & x),
        ("(x+y)+z = x+(y+z)", (x | y) | z, "=", x | (y | z)),
        ("(x*y)*z = x*(y*z)", (x & y) & z, "=", x & (y & z)),
        ("x*(y+z) = x*y+x*z", x & (y | z), "=", (x & y) | (x & z)),
        ("x+(y*z) = (x+y)*(x+z)", x | (y & z), "=", (x | y) & (x | z)),
        ("x+(x*y) = x", x | (x & y), "=", x),
        ("x*(x+y) = x", x & (x | y), "=", x),
        ("x+0 = x", x | A.zero, "=", x),
        ("x*1 = x", x & A.one, "=", x),
        ("x+-x = 1", x | ~x, "=", A.one),
        ("x*-x = 0", x & ~x, "=", A.zero),
    ]


def _endomorphism(A: SetAlgebra, d: dict) -> list[Side]:
    x, y, tau = d["x"], d["y"], d["tau"]

    def s(v):
        return A.subst(tau, v)

    return [
        ("s(x+y) = sx+sy", s(x | y), "=", s(x) | s(y)),
        ("s(x*y) = sx*sy", s(x & y), "=", s(x) & s(y)),
        ("s(-x) = -sx", s(~x), "=", ~s(x)),
        ("s0 = 0", s(A.zero), "=", A.zero),
        ("s1 = 1", s(A.one), "=", A.one),
    ]


def _cyl_diag_target(A: SetAlgebra, gamma, e: EquivRel) -> EquivRel:
    outside = [(i, j) for i, j in e.pairs() if i not in gamma and j not in gamma]
    return EquivRel.from_pairs(A.alpha, outside)


def _subst_diag_target(A: SetAlgebra, tau: Transformation, e: EquivRel) -> EquivRel:
    return EquivRel.from_pairs(A.alpha, [(tau(i), tau(j)) for i, j in e.pairs()])


POSTULATES = [
    Postulate(1, "boolean-algebra", "<A,+,*,-,0,1> is a Boolean algebra", False,
              _elements("xyz"), _boolean),
    Postulate(2, "cyl-zero", "c_G 0 = 0", False, _gamma_only,
              lambda A, d: [("c_G 0 = 0", A.cyl(d["gamma"], A.zero), "=", A.zero)]),
    Postulate(3, "cyl-increasing", "x <= c_G x", False, _with_gammas("x"),
              lambda A, d: [("x <= c_G x", d["x"], "<=", A.cyl(d["gamma"], d["x"]))]),
    Postulate(4, "cyl-modular", "c_G(x * c_G y) = c_G x * c_G y", False, _with_gammas("xy"),
              lambda A, d: [("c_G(x*c_G y) = c_G x*c_G y",
                             A.cyl(d["gamma"], d["x"] & A.cyl(d["gamma"], d["y"])), "=",
                             A.cyl(d["gamma"], d["x"]) & A.cyl(d["gamma"], d["y"]))]),
    Postulate(5, "cyl-compose", "c_G c_D x = c_(G u D) x", False, _with_gammas("x", pairs=True),
              lambda A, d: [("c_G c_D x = c_(GuD) x",
                             A.cyl(d["gamma"], A.cyl(d["delta"], d["x"])), "=",
                             A.cyl(d["gamma"] | d["delta"], d["x"]))]),
    Postulate(6, "subst-endomorphism", "s_tau is a Boolean endomorphism", True,
              _with_taus("xy"), _endomorphism),
    Postulate(7, "subst-identity", "s_Id x = x", True, _identity_only,
              lambda A, d: [("s_Id x = x", A.subst(d["tau"], d["x"]), "=", d["x"])]),
    Postulate(8, "subst-compose", "s_(sigma o tau) = s_sigma o s_tau", True, _with_taus("x", two=True),
              lambda A, d: [("s_(sigma o tau) x = s_sigma s_tau x",
                             A.subst(d["sigma"].compose(d["tau"]), d["x"]), "=",
                             A.subst(d["sigma"], A.subst(d["tau"], d["x"])))]),
    Postulate(9, "subst-cyl-agree", "sigma, tau agree off G => s_sigma c_G x = s_tau c_G x", True,
              _agree_off_gamma,
              lambda A, d: [("s_sigma c_G x = s_tau c_G x",
                             A.subst(d["sigma"], A.cyl(d["gamma"], d["x"])), "=",
                             A.subst(d["tau"], A.cyl(d["gamma"], d["x"])))]),
    Postulate(10, "cyl-subst-commute",
              "tau^-1 G = D, tau injective on D => c_G s_tau x = s_tau c_D x", True, _cyl_subst,
              lambda A, d: [("c_G s_tau x = s_tau c_D x",
                             A.cyl(d["gamma"], A.subst(d["tau"], d["x"])), "=",
                             A.subst(d["tau"], A.cyl(d["delta"], d["x"])))]),
    Postulate(11, "diag-identity", "d_Id = 1", False, _nothing,
              lambda A, d: [("d_Id = 1", A.diag(EquivRel.identity(A.alpha)), "=", A.one)]),
    Postulate(12, "cyl-diag", "c_G d_E = d_F, F = E n (alpha-G)^2 u Id", False, _gamma_equiv,
              lambda A, d: [("c_G d_E = d_F", A.cyl(d["gamma"], A.diag(d["E"])), "=",
                             A.diag(_cyl_diag_target(A, d["gamma"], d["E"])))]),
    Postulate(13, "subst-diag", "s_tau d_E = d_F, F = closure of tau[E] u Id", True, _tau_equiv,
              lambda A, d: [("s_tau d_E = d_F", A.subst(d["tau"], A.diag(d["E"])), "=",
                             A.diag(_subst_diag_target(A, d["tau"], d["E"])))]),
    Postulate(14, "diag-replacement", "x * d_ij <= s_[i|j] x", True, _pairs,
              lambda A, d: [("x*d_ij <= s_[i|j] x", d["x"] & A.diag_pair(d["i"], d["j"]), "<=",
                             A.subst(Transformation.replacement(A.alpha, d["i"], d["j"]), d["x"]))]),
]


# -- JSON round trip for witnesses -------------------------------------------------

def _to_json(data: dict) -> dict:
    out = {}
    for k, v in data.items():
        if isinstance(v, ElementSet):
            out[k] = {"ranks": v.ranks()}
        elif isinstance(v, Transformation):
            out[k] = {"map": list(v.image)}
        elif isinstance(v, EquivRel):
            out[k] = {"classes": [list(c) for c in v.classes]}
        elif isinstance(v, frozenset):
            out[k] = sorted(v)
        else:
            out[k] = v
    return out


def _from_json(algebra: SetAlgebra, data: dict) -> dict:
    out = {}
    for k, v in data.items():
        if isinstance(v, dict) and "ranks" in v:
            out[k] = algebra.from_ranks(v["ranks"])
        elif isinstance(v, dict) and "map" in v:
            out[k] = Transformation(tuple(v["map"]))
        elif isinstance(v, dict) and "classes" in v:
            out[k] = EquivRel.from_classes(algebra.alpha, v["classes"])
        elif isinstance(v, list):
            out[k] = frozenset(v)
        else:
            out[k] = v
    return out


def _violation(sides: list[Side]):
    for label, lhs, rel, rhs in sides:
        if rel == "=":
            bad = lhs.first_difference(rhs)
        else:
            extra = (lhs - rhs).ranks()
            bad = extra[0] if extra else None
        if bad is not None:
            return label, bad, bool(lhs.bits[bad]), bool(rhs.bits[bad])
    return None


def check_postulate(algebra: SetAlgebra, postulate: Postulate, samples: int, seed: int) -> CheckReport:
    config = {**algebra.config.as_dict(), "seed": seed, "samples": samples,
              "postulate": postulate.number, "statement": postulate.statement}
    rng = make_rng(seed, postulate.number)
    with stopwatch() as clock:
        instances, exhaustive = postulate.instances(algebra, rng, samples)
        checked = 0
        failure = None
        for data in instances:
            checked += 1
            found = _violation(postulate.sides(algebra, data))
            if found:
                label, rank, in_lhs, in_rhs = found
                failure = {"postulate": postulate.number, "instance": checked - 1, "law": label,
                           "data": _to_json(data), "sequence": rank,
                           "sequence_entries": list(algebra.decode(rank)),
                           "in_lhs": in_lhs, "in_rhs": in_rhs}
                break
    name = f"postulate-{postulate.number:02d}-{postulate.name}"
    if failure:
        return CheckReport(name, Verdict.FAILS, config, witness=failure, millis=clock[0])
    verdict = Verdict.HOLDS_EXHAUSTIVE if exhaustive else Verdict.HOLDS_SAMPLED
    return CheckReport(name, verdict, config, observation={"instances": checked}, millis=clock[0])


def replay(algebra: SetAlgebra, witness: dict) -> dict | None:
    """Recompute a recorded failure from its witness; ``None`` if it no longer fails."""
    postulate = next(p for p in POSTULATES if p.number == witness["postulate"])
    found = _violation(postulate.sides(algebra, _from_json(algebra, witness["data"])))
    if not found:
        return None
    label, rank, in_lhs, in_rhs = found
    return {"law": label, "sequence": rank, "in_lhs": in_lhs, "in_rhs": in_rhs}


def run_axiom_suite(algebra: SetAlgebra, samples: int = 500, seed: int = 0) -> list[CheckReport]:
    """One report per postulate in the signature of ``algebra``.

    The Lucas reduct has no substitutions, so postulates 6-10, 13 and 14 are
    not part of its theory and are omitted.
    """
    return [check_postulate(algebra, p, samples, seed) for p in POSTULATES
            if algebra.signature.substitutions or not p.needs_subst]
