"""The contextuality hierarchy: strong, logical and probabilistic levels."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InstanceTooLarge, SemiringMismatch
from .lp import enumerate_feasibility, phase_one, solve_affine, verify_farkas
from .model import (
    EmpiricalModel,
    Semiring,
    iter_sections,
    _outcome_key,
    possibilistic_collapse,
)


class ContextualityClass(enum.Enum):
    NON_CONTEXTUAL = "NonContextual"
    CONTEXTUAL = "Contextual"
    LOGICALLY_CONTEXTUAL = "LogicallyContextual"
    STRONGLY_CONTEXTUAL = "StronglyContextual"

    def __str__(self):
        return self.value

    @property
    def rank(self) -> int:
        return list(ContextualityClass).index(self)


class WitnessKind(enum.Enum):
    DISTRIBUTION = "distribution"
    ASSIGNMENT = "assignment"
    CERTIFICATE = "certificate"


@dataclass
class GlobalSectionWitness:
    """Evidence for or against a global section.

    ``distribution`` maps global assignments (tuples in scenario order) to
    weights; ``certificate`` maps (context, assignment) constraint rows to the
    Farkas multipliers proving infeasibility.
    """

    kind: WitnessKind
    distribution: dict | None = None
    assignment: tuple | None = None
    certificate: dict | None = None


@dataclass
class Extendability:
    feasible: bool
    witness: GlobalSectionWitness

    def __bool__(self):
        return self.feasible


@dataclass
class LogicalResult:
    contextual: bool
    # (maximal context, assignment) that no consistent global assignment restricts to
    witness: tuple | None = None

    def __bool__(self):
        return self.contextual


def find_consistent_global(e: EmpiricalModel) -> tuple[str, ...] | None:
    """First element of S_e(X) in lexicographic order, or None."""
    return next(iter_sections(e, e.scenario.measurements), None)


def is_strongly_contextual(e: EmpiricalModel) -> bool:
    return find_consistent_global(e) is None


def consistent_globals(e: EmpiricalModel) -> list[tuple[str, ...]]:
    return list(iter_sections(e, e.scenario.measurements))


def _restrictor(e: EmpiricalModel, context):
    pos = [e.scenario.measurements.index(x) for x in e.scenario.order(context)]
    return lambda g: tuple(g[p] for p in pos)


def is_logically_contextual(e: EmpiricalModel) -> LogicalResult:
    e = possibilistic_collapse(e)
    globals_ = consistent_globals(e)
    key = _outcome_key(e.scenario)
    for c in e.scenario.cover:
        restrict = _restrictor(e, c)
        reachable = {restrict(g) for g in globals_}
        # for a compatible model S_e(C) is exactly supp(e_C) on a maximal context
        for s in sorted(e.rows[c].support, key=key):
            if s not in reachable:
                return LogicalResult(True, (e.scenario.order(c), s))
    return LogicalResult(False)


def constraint_system(e: EmpiricalModel, variables, semiring_support=True):
    """Rows Σ_{g|_C = s} d(g) = e_C(s), one per (C, s) with s in the row's support.

    When ``semiring_support`` is False, every s in E(C) gets a row (needed
    when the variables are not restricted to S_e(X)).
    """
    labels, a, b = [], [], []
    for c in e.scenario.cover:
        restrict = _restrictor(e, c)
        images = [restrict(g) for g in variables]
        row_d = e.rows[c]
        targets = (sorted(row_d.weights) if semiring_support
                   else list(e.scenario.assignments(c)))
        for s in targets:
            labels.append((row_d.context, s))
            a.append([Fraction(int(img == s)) for img in images])
            b.append(Fraction(row_d[s]))
    return labels, a, b


def is_probabilistically_extendable(e: EmpiricalModel) -> Extendability:
    """Exact LP: is there d >= 0 on S_e(X) with d|_C = e_C for every C?"""
    if e.semiring is not Semiring.PROBABILITY:
        raise SemiringMismatch("probabilistic extendability needs a probability model")
    variables = consistent_globals(e)
    labels, a, b = constraint_system(e, variables)
    result = phase_one(a, b)
    if result.feasible:
        d = {g: v for g, v in zip(variables, result.solution) if v != 0}
        return Extendability(True, GlobalSectionWitness(WitnessKind.DISTRIBUTION, distribution=d))
    cert = dict(zip(labels, result.certificate))
    return Extendability(False, GlobalSectionWitness(WitnessKind.CERTIFICATE, certificate=cert))


def verify_certificate(e: EmpiricalModel, certificate: dict) -> bool:
    """Re-check a Farkas certificate against the model's own constraint system."""
    variables = consistent_globals(e)
    labels, a, b = constraint_system(e, variables)
    y = [Fraction(certificate.get(lbl, 0)) for lbl in labels]
    if not variables:
        return sum(yi * bi for yi, bi in zip(y, b)) < 0
    return verify_farkas(a, b, y)


def restricts_to(e: EmpiricalModel, d: dict) -> bool:
    """Does the global weight map d marginalize to every row of e?"""
    for c in e.scenario.cover:
        restrict = _restrictor(e, c)
        acc: dict = {}
        for g, v in d.items():
            t = restrict(g)
            acc[t] = acc.get(t, 0) + v
        acc = {t: v for t, v in acc.items() if v != 0}
        if acc != e.rows[c].weights:
            return False
    return True


def enumerate_extendable(e: EmpiricalModel, max_bases: int = 200_000) -> bool:
    """Basis-enumeration oracle for the same LP (independent of the simplex)."""
    if e.semiring is not Semiring.PROBABILITY:
        raise SemiringMismatch("probabilistic extendability needs a probability model")
    variables = consistent_globals(e)
    _, a, b = constraint_system(e, variables)
    if not variables:
        return all(v == 0 for v in b)
    return enumerate_feasibility(a, b, max_bases) is not None


def solve_signed_global_section(e: EmpiricalModel, max_variables: int = 4096):
    """Signed global section over all of E(X), or None if the affine system is inconsistent."""
    if e.semiring is Semiring.BOOLEAN:
        raise SemiringMismatch("signed global sections need a probability or signed model")
    size = len(e.scenario.outcomes) ** len(e.scenario.measurements)
    if size > max_variables:
        raise InstanceTooLarge(f"{size} global assignments exceeds {max_variables}")
    variables = list(itertools.product(e.scenario.outcomes, repeat=len(e.scenario.measurements)))
    _, a, b = constraint_system(e, variables, semiring_support=False)
    x = solve_affine(a, b)
    if x is None:
        return None
    d = {g: v for g, v in zip(variables, x) if v != 0}
    return GlobalSectionWitness(WitnessKind.DISTRIBUTION, distribution=d)


def classify(e: EmpiricalModel) -> ContextualityClass:
    if e.semiring is Semiring.SIGNED:
        raise SemiringMismatch("classification is defined for probability and Boolean models")
    if is_strongly_contextual(e):
        return ContextualityClass.STRONGLY_CONTEXTUAL
    if is_logically_contextual(e):
        return ContextualityClass.LOGICALLY_CONTEXTUAL
    if e.semiring is Semiring.BOOLEAN:
        return ContextualityClass.NON_CONTEXTUAL
    if not is_probabilistically_extendable(e):
        return ContextualityClass.CONTEXTUAL
    return ContextualityClass.NON_CONTEXTUAL
