"""Line-by-line check of the derivation of ``r <= s * t`` on random environments."""

from __future__ import annotations

from ..seqalg import SetAlgebra
from ..terms import D01, ZERO, Term, X, Y, Z, c, evaluate, pigozzi_terms, s01, to_text
from .report import CheckReport, Verdict, stopwatch
from .sampling import make_rng, random_element


def chain_relations() -> list[tuple[str, Term, str, Term]]:
    """``(name, lhs, relation, rhs)`` for every displayed step, in order."""
    T = pigozzi_terms()
    r, s, t, a, b = T["r"], T["s"], T["t"], T["a"], T["b"]
    c1a, c1b = c(1, a), c(1, b)
    lines = [
        c(0, a) * c(0, b),
        c(0, c1a) * c(0, c1b),
        c(0, c1a) * c(1, s01(c1b)),
        c(1, c(0, c1a) * s01(c1b)),
        c(0, c(1, c1a * s01(c1b))),
        c(0, c(1, c1a * s01(c1b) * (-D01 + D01))),
        c(0, c(1, (c1a * s01(c1b) * -D01) + (c1a * s01(c1b) * D01))),
        c(0, c(1, (c1a * s01(c1b) * -D01) + (c1a * c1b * D01))),
        c(0, c(1, c1a * s01(c1b) * -D01)),
        c(0, c(1, c(1, Z) * s01(c(1, Z)) * -D01)),
    ]
    steps = ["<=", "=", "=", "=", "=", "=", "=", "=", "<="]
    out = [
        ("p1-step-1", c1a * c1b, "<=", c(1, X * c(1, Y)) * c(1, X * -c(1, Y))),
        ("p1-step-2", c(1, X * c(1, Y)) * c(1, X * -c(1, Y)), "=",
         c(1, X) * c(1, Y) * c(1, X) * -c(1, Y)),
        ("p1", c1a * c1b, "=", ZERO),
        ("p2-premise", X * -c(0, X * -c(1, Z)), "<=", c(1, Z)),
        ("p2-a-below", a, "<=", c(1, Z)),
        ("p2-b-below", b, "<=", c(1, Z)),
        ("p2-c1a", c1a, "<=", c(1, Z)),
        ("p2-c1b", c1b, "<=", c(1, Z)),
    ]
    for k, rel in enumerate(steps):
        out.append((f"chain-{k + 1}", lines[k], rel, lines[k + 1]))
    out += [
        ("chain-total", lines[0], "<=", lines[-1]),
        ("penultimate", c(0, X * c(1, Y)) * c(0, X * -c(1, Y)) * -c(0, X * -c(1, Z)), "<=", lines[-1]),
        ("r<=s", r, "<=", s),
        ("r<=t", r, "<=", t),
        ("r<=s*t", r, "<=", s * t),
    ]
    return out


def check_environment(algebra: SetAlgebra, env: dict, relations=None) -> dict | None:
    """First violated relation under ``env`` as witness data, else ``None``."""
    cache: dict = {}
    for name, lhs_t, rel, rhs_t in relations or chain_relations():
        lhs = evaluate(lhs_t, env, algebra, cache)
        rhs = evaluate(rhs_t, env, algebra, cache)
        if rel == "=":
            bad = lhs.first_difference(rhs)
        else:
            extra = (lhs - rhs).ranks()
            bad = extra[0] if extra else None
        if bad is not None:
            return {"line": name, "term": f"{to_text(lhs_t)} {rel} {to_text(rhs_t)}",
                    "sequence": bad, "sequence_entries": list(algebra.decode(bad)),
                    "in_lhs": bool(lhs.bits[bad]), "in_rhs": bool(rhs.bits[bad])}
    return None


def verify_pigozzi_chain(algebra: SetAlgebra, samples: int = 1000, seed: int = 0,
                         extra_envs: list[dict] | None = None) -> CheckReport:
    """Check every line on ``extra_envs`` (default: :func:`fixed_environments`)
    and then on ``samples`` random environments over ``x, y, z, w``."""
    if algebra.alpha < 2:
        raise ValueError("the chain uses coordinates 0 and 1; alpha must be at least 2")
    config = {**algebra.config.as_dict(), "samples": samples, "seed": seed}
    relations = chain_relations()
    rng = make_rng(seed)
    with stopwatch() as clock:
        envs = fixed_environments(algebra) if extra_envs is None else list(extra_envs)
        failure = None
        for k in range(len(envs) + samples):
            if k < len(envs):
                env = envs[k]
            else:
                env = {v: random_element(algebra, rng) for v in "xyzw"}
            found = check_environment(algebra, env, relations)
            if found:
                found["environment"] = {v: e.ranks() for v, e in sorted(env.items())}
                found["sample"] = k
                failure = found
                break
    if failure:
        return CheckReport("pigozzi-chain", Verdict.FAILS, config, witness=failure, millis=clock[0])
    return CheckReport("pigozzi-chain", Verdict.HOLDS_SAMPLED, config,
                       observation={"environments": len(envs) + samples,
                                    "relations": [name for name, *_ in relations]},
                       millis=clock[0])


def fixed_environments(algebra: SetAlgebra) -> list[dict]:
    """Environments always included in the chain run: all-zero and ``x=1, y=d01, z=w=1``."""
    zero, one = algebra.zero, algebra.one
    return [{"x": zero, "y": zero, "z": zero, "w": zero},
            {"x": one, "y": algebra.diag_pair(0, 1), "z": one, "w": one}]

