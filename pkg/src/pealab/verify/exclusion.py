"""Exhaustive search for an interpolant of ``r <= s * t`` inside ``Sg{X_Id}``."""

from __future__ import annotations

from typing import Iterable

from ..partitions import symbolic
from ..seqalg import SetAlgebra
from ..subalgebra import DEFAULT_CAP, generated_subalgebra
from ..terms import evaluate, pigozzi_terms
from .report import CheckReport, Verdict, stopwatch
from .witnesses import build_witnesses, survey_r, x_id


def _labels(u) -> list[str]:
    sym = symbolic(u)
    return [str(r) for r in sym.sorted_labels()] if sym is not None else []


def interpolant_exclusion(alpha: int, base: int, gamma: Iterable[int],
                          cap: int = DEFAULT_CAP) -> CheckReport:
    """(a) ``Sg{X_Id}`` lies in the kernel-atom algebra; (b) ``X_Id`` meets ``r``
    and escapes ``c_gamma(s * t)``; (c) no member of ``Sg{X_Id}`` lies between.

    At ``base == alpha`` the claim is asserted: a member between the bounds
    is a failure with that member as witness.  Other bases are reported.
    ``Y`` is ``{sigma}`` when ``base > alpha`` and empty otherwise; at
    ``base == alpha`` the observation records that ``X_Id * r`` is empty for
    every singleton ``Y`` too.
    """
    algebra = SetAlgebra.of(alpha, base)
    gamma = frozenset(gamma)
    config = {**algebra.config.as_dict(), "gamma": sorted(gamma), "cap": cap}
    with stopwatch() as clock:
        pack = build_witnesses(algebra, gamma, require_sigma=False)
        xid = x_id(algebra)
        sub = generated_subalgebra(algebra, [xid], cap=cap)

        outside_c = next((u for u in sub if symbolic(u) is None), None)

        y = pack.Y if pack.Y is not None else algebra.zero
        T = pigozzi_terms()
        env = {"x": xid, "y": y, "z": pack.Z, "w": pack.W}
        cache: dict = {}
        r = evaluate(T["r"], env, algebra, cache)
        st = evaluate(T["s"], env, algebra, cache) & evaluate(T["t"], env, algebra, cache)
        up = algebra.cyl(gamma, st)
        meets_r = not (xid & r).is_zero()
        escapes = not (xid - up).is_zero()

        between = [u for u in sub if r <= u and u <= up]

    obs = {
        "atoms": sub.n_atoms,
        "members": len(sub),
        "all_members_in_C": outside_c is None,
        "Y": [list(s) for s in y],
        "X_Id meets r": meets_r,
        "X_Id escapes c_G(s*t)": escapes,
        "interpolants": len(between),
        "r": r.ranks(),
        "c_G(s*t)": up.ranks(),
    }
    if between:
        obs["first_interpolant"] = {"ranks": between[0].ranks(), "kernel_labels": _labels(between[0])}
    if pack.Y is None:
        obs["r survey over singleton Y"] = survey_r(algebra)
    environment = {"x": "X_Id", "y": obs["Y"], "z": [list(s) for s in pack.Z],
                   "w": [list(s) for s in pack.W]}

    if outside_c is not None:
        bad = next(iter(outside_c.ranks()), None)
        witness = {"member_ranks": outside_c.ranks(), "sequence": bad,
                   "reason": "member of Sg{X_Id} that is not a union of kernel atoms",
                   "environment": {"x": "X_Id"}, "term": "x"}
        return CheckReport("interpolant-exclusion", Verdict.FAILS, config, witness=witness,
                           observation=obs, millis=clock[0])
    if meets_r and escapes and not between:
        return CheckReport("interpolant-exclusion", Verdict.HOLDS_EXHAUSTIVE, config,
                           observation=obs, millis=clock[0])
    if between and (meets_r and escapes or base == alpha):
        u = between[0]
        escaped = (xid - up).ranks()
        witness = {"interpolant_ranks": u.ranks(), "kernel_labels": _labels(u),
                   "environment": environment, "term": "r <= u <= c(G) (s * t)",
                   "sequence": escaped[0] if escaped else None}
        return CheckReport("interpolant-exclusion", Verdict.FAILS, config, witness=witness,
                           observation=obs, millis=clock[0])
    obs["mode"] = "reported: the two nonemptiness facts do not both hold at this base"
    return CheckReport("interpolant-exclusion", Verdict.REPORTED, config, observation=obs,
                       millis=clock[0])
