"""Batch checks: the axiom suite, the interpolation chain, witnesses and
the interpolant-exclusion experiment."""

from .report import CheckReport, Verdict, emit_report, exit_status
from .axioms import run_axiom_suite
from .chain import verify_pigozzi_chain
from .witnesses import WitnessPack, build_witnesses, verify_p6, verify_p7
from .exclusion import interpolant_exclusion
