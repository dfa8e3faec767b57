"""Witness sets for the two halves of the interpolant-exclusion argument.

The ``r`` half needs an injective sequence that can change coordinate 0
without leaving the injective atom, so it needs ``base >= alpha + 1``.  The
``s * t`` half relies on injective sequences that are the identity off
``gamma`` permuting ``gamma``, which is only guaranteed at ``base == alpha``.
Each half is checked exactly at its own base and reported at the other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from ..partitions import atom_concrete
from ..seqalg import ElementSet, EquivRel, SetAlgebra
from ..terms import evaluate, pigozzi_terms
from .report import CheckReport, Verdict, stopwatch


class WitnessError(ValueError):
    pass


def normalize_gamma(gamma: Iterable[int], alpha: int) -> frozenset[int]:
    """Add coordinates 0 and 1, which loses no generality for the ``s * t`` half."""
    gamma = frozenset(gamma) | {0, 1}
    if any(not 0 <= i < alpha for i in gamma):
        raise IndexError(f"gamma {sorted(gamma)} out of range for alpha={alpha}")
    return gamma


def admissible_gammas(alpha: int) -> list[frozenset[int]]:
    rest = range(2, alpha)
    return [frozenset({0, 1, *extra}) for k in range(len(rest) + 1)
            for extra in itertools.combinations(rest, k)]


def x_id(algebra: SetAlgebra) -> ElementSet:
    """The atom of injective sequences."""
    return atom_concrete(EquivRel.identity(algebra.alpha), algebra)


def delta(phi: tuple[int, ...], gamma: Iterable[int]) -> frozenset[int]:
    """``gamma`` minus the values ``phi`` takes on ``gamma - {0, 1}``."""
    gamma = frozenset(gamma)
    return gamma - {phi[i] for i in gamma - {0, 1}}


@dataclass(frozen=True)
class WitnessPack:
    alpha: int
    base: int
    gamma: frozenset[int]
    iota: tuple[int, ...]
    sigma: tuple[int, ...] | None
    tau_seq: tuple[int, ...] | None
    Y: ElementSet | None
    Z: ElementSet
    W: ElementSet

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha, "base": self.base, "gamma": sorted(self.gamma),
            "iota": list(self.iota),
            "sigma": list(self.sigma) if self.sigma else None,
            "tau": list(self.tau_seq) if self.tau_seq else None,
            "Y": [list(s) for s in self.Y] if self.Y is not None else None,
            "Z": [list(s) for s in self.Z],
            "W": [list(s) for s in self.W],
        }


def build_witnesses(algebra: SetAlgebra, gamma: Iterable[int], require_sigma: bool = True) -> WitnessPack:
    """``sigma = (0, 2, 3, ..., alpha)``, ``tau`` = ``sigma`` with entry 0 set to 1,
    ``Y = {sigma}``, and ``Z``/``W`` the injective members of ``c_gamma{iota}``
    with increasing/decreasing first two entries.

    ``sigma`` needs ``base >= alpha + 1``; with ``require_sigma=False`` a
    smaller base yields a pack without the ``r`` half.
    """
    alpha, base = algebra.alpha, algebra.base
    gamma = frozenset(gamma)
    if alpha < 2:
        raise WitnessError("alpha must be at least 2")
    if not {0, 1} <= gamma:
        raise WitnessError(f"gamma {sorted(gamma)} must contain 0 and 1")
    if any(not 0 <= i < alpha for i in gamma):
        raise WitnessError(f"gamma {sorted(gamma)} out of range for alpha={alpha}")
    if base < alpha:
        raise WitnessError(f"base {base} < alpha {alpha}: there is no injective base point")
    sigma = tau = Y = None
    if base >= alpha + 1:
        sigma = (0,) + tuple(range(2, alpha + 1))
        tau = (1,) + sigma[1:]
        Y = algebra.from_sequences([sigma])
    elif require_sigma:
        raise WitnessError(f"base {base} admits no injective non-surjective sequence; need {alpha + 1}")
    iota = tuple(range(alpha))
    around = algebra.cyl(gamma, algebra.from_sequences([iota])) & x_id(algebra)
    Z = around & algebra.where(lambda p: p[0] < p[1])
    W = around & algebra.where(lambda p: p[0] > p[1])
    return WitnessPack(alpha, base, gamma, iota, sigma, tau, Y, Z, W)


def _ranks(x: ElementSet) -> list[int]:
    return x.ranks()


def verify_p6(pack: WitnessPack, algebra: SetAlgebra) -> CheckReport:
    """``sigma`` lies in both ``c0(X_Id * c1 Y)`` and ``c0(X_Id - c1 Y)``, so ``X_Id * r != 0``."""
    config = {**algebra.config.as_dict(), "gamma": sorted(pack.gamma)}
    with stopwatch() as clock:
        if pack.sigma is None:
            raise WitnessError("the pack has no sigma; build it with base >= alpha + 1")
        xid = x_id(algebra)
        c1y = algebra.cyl({1}, pack.Y)
        left = algebra.cyl({0}, xid & c1y)
        right = algebra.cyl({0}, xid - c1y)
        r = evaluate(pigozzi_terms()["r"], {"x": xid, "y": pack.Y}, algebra)
        facts = {
            "sigma in X_Id * c1 Y": pack.sigma in (xid & c1y),
            "tau in X_Id - c1 Y": pack.tau_seq in (xid - c1y),
            "sigma in c0(X_Id * c1 Y)": pack.sigma in left,
            "sigma in c0(X_Id - c1 Y)": pack.sigma in right,
            "sigma in r": pack.sigma in r,
            "X_Id * r nonempty": not (xid & r).is_zero(),
        }
    obs = {"facts": facts, "sigma": list(pack.sigma), "tau": list(pack.tau_seq),
           "X_Id * r": _ranks(xid & r)}
    if all(facts.values()):
        return CheckReport("sigma-witness", Verdict.HOLDS_EXHAUSTIVE, config, observation=obs,
                           millis=clock[0])
    witness = {"environment": {"x": "X_Id", "y": [list(pack.sigma)]},
               "term": "c(0) (x * c(1) y) * c(0) (x * -c(1) y)",
               "sequence": algebra.encode(pack.sigma), "failed": [k for k, v in facts.items() if not v]}
    return CheckReport("sigma-witness", Verdict.FAILS, config, witness=witness, observation=obs,
                       millis=clock[0])


def survey_r(algebra: SetAlgebra) -> dict:
    """How many singleton ``Y`` make ``X_Id * r`` nonempty.

    At ``base == alpha`` the count is always zero: an injective sequence is
    a bijection and cannot change coordinate 0 alone.
    """
    xid = x_id(algebra)
    r_term = pigozzi_terms()["r"]
    hits = [s for s in range(algebra.size)
            if not (xid & evaluate(r_term, {"x": xid, "y": algebra.from_ranks([s])}, algebra)).is_zero()]
    return {"singletons": algebra.size, "meeting_X_Id": len(hits),
            "first": list(algebra.decode(hits[0])) if hits else None}


def _characterization(algebra: SetAlgebra, gamma, cgi: ElementSet, cond) -> ElementSet:
    def pred(p):
        d = delta(p, gamma)
        return len(d) == 2 and cond(p, min(d), max(d))
    return algebra.where(pred) & cgi


def st_emptiness_values(pack: WitnessPack, algebra: SetAlgebra) -> dict:
    """Every displayed set of the ``s * t`` half, computed from both sides."""
    gamma = pack.gamma
    xid = x_id(algebra)
    cgi = algebra.cyl(gamma, algebra.from_sequences([pack.iota]))
    d01 = algebra.diag_pair(0, 1)
    c1z, c1w = algebra.cyl({1}, pack.Z), algebra.cyl({1}, pack.W)
    s01c1z = algebra.replacement(0, 1, c1z)
    s01c1w = algebra.replacement(0, 1, c1w)

    def ch(cond):
        return _characterization(algebra, gamma, cgi, cond)

    characterizations = {
        "c1 Z": (c1z, ch(lambda p, lo, hi: p[0] == lo)),
        "(X_Id - c1 Z) * cG{Id}": ((xid - c1z) & cgi, ch(lambda p, lo, hi: p[0] == hi and p[1] == lo)),
        "c0(X_Id - c1 Z) * cG{Id}": (algebra.cyl({0}, xid - c1z) & cgi, ch(lambda p, lo, hi: p[1] == lo)),
        "c0(X_Id - c1 W) * cG{Id}": (algebra.cyl({0}, xid - c1w) & cgi, ch(lambda p, lo, hi: p[1] == hi)),
        "c1 Z * d01": (c1z & d01, ch(lambda p, lo, hi: p[0] == p[1] == lo)),
        "s01 c1 Z": (s01c1z, ch(lambda p, lo, hi: p[1] == lo)),
        "c1 Z * s01 c1 Z": (c1z & s01c1z, ch(lambda p, lo, hi: p[0] == p[1] == lo)),
    }
    T = pigozzi_terms()
    env = {"x": xid, "z": pack.Z, "w": pack.W}
    st = evaluate(T["s"], env, algebra) & evaluate(T["t"], env, algebra)
    up = algebra.cyl(gamma, st)
    empties = {
        "c0(X_Id - c1 Z) * c0(X_Id - c1 W) * cG{Id}": algebra.cyl({0}, xid - c1z) & algebra.cyl({0}, xid - c1w) & cgi,
        "c0 c1(c1 Z * s01 c1 Z * -d01)": algebra.cyl({0, 1}, c1z & s01c1z & ~d01),
        "c0 c1(c1 W * s01 c1 W * -d01)": algebra.cyl({0, 1}, c1w & s01c1w & ~d01),
        "s*t * cG{Id}": st & cgi,
    }
    return {"characterizations": characterizations, "empties": empties,
            "iota_outside": pack.iota in (xid - up), "st": st, "up": up}


def verify_p7(pack: WitnessPack, algebra: SetAlgebra) -> CheckReport:
    """Emptiness facts about ``s * t`` for one ``gamma``.

    At ``base == alpha`` the emptiness facts and ``iota`` outside
    ``c_gamma(s * t)`` are hard requirements; displayed characterizations are
    compared and any mismatch is reported with both sides.  At other bases
    every outcome is reported.
    """
    config = {**algebra.config.as_dict(), "gamma": sorted(pack.gamma)}
    with stopwatch() as clock:
        vals = st_emptiness_values(pack, algebra)
    matches = {}
    mismatches = {}
    for name, (lhs, rhs) in vals["characterizations"].items():
        matches[name] = lhs == rhs
        if lhs != rhs:
            bad = lhs.first_difference(rhs)
            mismatches[name] = {"lhs": lhs.ranks(), "rhs": rhs.ranks(), "sequence": bad,
                                "sequence_entries": list(algebra.decode(bad))}
    empties = {k: v.is_zero() for k, v in vals["empties"].items()}
    obs = {"empty": empties, "iota not in c_G(s*t)": vals["iota_outside"],
           "characterization_matches": matches}
    if mismatches:
        obs["mismatches"] = mismatches
    hard_ok = all(empties.values()) and vals["iota_outside"]
    if algebra.base != algebra.alpha:
        obs["mode"] = "reported: the s*t half is asserted only at base == alpha"
        return CheckReport("st-emptiness", Verdict.REPORTED, config, observation=obs, millis=clock[0])
    if not hard_ok:
        bad_name = next((k for k, v in empties.items() if not v), None)
        if bad_name:
            seq = vals["empties"][bad_name].ranks()[0]
        else:
            bad_name, seq = "iota outside c_G(s*t)", algebra.encode(pack.iota)
        witness = {"equation": bad_name, "sequence": seq,
                   "sequence_entries": list(algebra.decode(seq)),
                   "environment": {"x": "X_Id", "z": [list(s) for s in pack.Z],
                                   "w": [list(s) for s in pack.W]},
                   "term": "c(0) c(1) (c(1) z * s[0|1] c(1) z * -d(0,1)) + c(0) (x * -c(1) z)"}
        return CheckReport("st-emptiness", Verdict.FAILS, config, witness=witness, observation=obs,
                           millis=clock[0])
    verdict = Verdict.REPORTED if mismatches else Verdict.HOLDS_EXHAUSTIVE
    return CheckReport("st-emptiness", verdict, config, observation=obs, millis=clock[0])


def sigma_witness_report(algebra: SetAlgebra, gamma: Iterable[int]) -> CheckReport:
    """:func:`verify_p6` when ``sigma`` exists; otherwise a reported survey of ``r``."""
    gamma = frozenset(gamma)
    if algebra.base > algebra.alpha:
        return verify_p6(build_witnesses(algebra, gamma), algebra)
    config = {**algebra.config.as_dict(), "gamma": sorted(gamma)}
    with stopwatch() as clock:
        obs = {"r survey over singleton Y": survey_r(algebra),
               "mode": "reported: no injective non-surjective sigma at this base"}
    return CheckReport("sigma-witness", Verdict.REPORTED, config, observation=obs, millis=clock[0])
