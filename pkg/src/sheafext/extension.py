"""Extending possibilistic models to larger covers.

Models here are Boolean; probability or signed inputs are collapsed to their
supports first, which is all the canonical construction looks at.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    CoverNotLarger,
    InstanceTooLarge,
    MismatchedMeasurementSets,
    NotAnExtension,
    SemiringMismatch,
)
from .model import (
    Distribution,
    EmpiricalModel,
    Semiring,
    Violation,
    _outcome_key,
    build_model,
    check_compatibility,
    context_distribution,
    induced_submodel,
    possibilistic_collapse,
    section_set,
)
from .scenario import MeasurementScenario, cover_leq
from .solver import is_strongly_contextual


class ExtensionStatus(enum.Enum):
    WELL_DEFINED = "WellDefined"
    EMPTY_SUPPORT = "EmptySupport"
    INCOMPATIBLE = "Incompatible"
    NOT_EXTENDING = "NotExtending"

    def __str__(self):
        return self.value


@dataclass
class ExtensionReport:
    status: ExtensionStatus
    target: MeasurementScenario
    # supp(e'_C) = S_e(C) for every C of the target cover, in cover order
    candidate: dict
    model: EmpiricalModel | None = None
    context: tuple | None = None
    violation: Violation | None = None
    # (D, s): an assignment possible in e_D that e' cannot reproduce
    missing: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.status is ExtensionStatus.WELL_DEFINED


def _target_scenario(e: EmpiricalModel, target) -> MeasurementScenario:
    if isinstance(target, MeasurementScenario):
        target = target.cover
    target = [frozenset(c) for c in target]
    covered = frozenset().union(*target) if target else frozenset()
    if covered != e.scenario.measurement_set:
        raise MismatchedMeasurementSets("target cover is over a different measurement set")
    scenario = e.scenario.with_cover(target)
    if not cover_leq(e.scenario.cover, scenario.cover):
        raise CoverNotLarger("target cover does not dominate the model's cover")
    return scenario


def support_via_maximal_contexts(e: EmpiricalModel, context: Iterable[str]) -> frozenset:
    """supp(e'_C) computed from maximal contexts only, by filtering all of E(C).

    s survives iff for every D in M some t in S_e(D) agrees with s on C ∩ D.
    """
    c = frozenset(context)
    ordered = e.scenario.order(c)
    kept = set()
    for s in e.scenario.assignments(c):
        value = dict(zip(ordered, s))
        for d in e.scenario.cover:
            w = e.scenario.order(c & d)
            if tuple(value[x] for x in w) not in e.marginal_support(d, frozenset(w)):
                break
        else:
            kept.add(s)
    return frozenset(kept)


def canonical_extension(e: EmpiricalModel, target) -> ExtensionReport:
    e = possibilistic_collapse(e)
    scenario = _target_scenario(e, target)
    candidate = {c: section_set(e, c).sections for c in scenario.cover}
    for c, supp in candidate.items():
        if not supp:
            return ExtensionReport(ExtensionStatus.EMPTY_SUPPORT, scenario, candidate,
                                   context=scenario.order(c))
    rows = {c: Distribution(Semiring.BOOLEAN, scenario.order(c), {s: 1 for s in supp})
            for c, supp in candidate.items()}
    violation = check_compatibility(rows, scenario)
    if violation is not None:
        return ExtensionReport(ExtensionStatus.INCOMPATIBLE, scenario, candidate,
                               violation=violation)
    model = EmpiricalModel(scenario, Semiring.BOOLEAN, rows)
    key = _outcome_key(e.scenario)
    for d in e.scenario.cover:
        got = context_distribution(model, d).support
        lost = sorted(e.rows[d].support - got, key=key)
        if lost:
            return ExtensionReport(ExtensionStatus.NOT_EXTENDING, scenario, candidate,
                                   model=model, missing=(e.scenario.order(d), lost[0]))
    return ExtensionReport(ExtensionStatus.WELL_DEFINED, scenario, candidate, model=model)


def is_extension(f: EmpiricalModel, e: EmpiricalModel) -> bool:
    """True iff f (on a larger cover) marginalizes to e_D for every D in e's cover."""
    if not isinstance(f, EmpiricalModel) or not isinstance(e, EmpiricalModel):
        raise TypeError("is_extension compares two validated EmpiricalModel values")
    if (f.scenario.measurements != e.scenario.measurements
            or f.scenario.outcomes != e.scenario.outcomes):
        raise MismatchedMeasurementSets("models are over different scenarios")
    if not cover_leq(e.scenario.cover, f.scenario.cover):
        raise CoverNotLarger("the candidate's cover does not dominate the model's cover")
    if f.semiring is not e.semiring:
        raise SemiringMismatch("models use different semirings")
    return all(context_distribution(f, d) == e.rows[d] for d in e.scenario.cover)


def _subsets(items):
    # nonempty subsets in a fixed order: by bitmask value
    for mask in range(1, 1 << len(items)):
        yield frozenset(s for i, s in enumerate(items) if mask >> i & 1)


def find_extension(e: EmpiricalModel, target, limit: int = 2 ** 20,
                   restrict_to_consistent: bool = True) -> EmpiricalModel | None:
    """Exhaustive search for any Boolean model on ``target`` extending e.

    With ``restrict_to_consistent`` the candidate supports are drawn from
    S_e(C) (any extension lives there); without it, from all of E(C).
    The search space is the product over C of (2^|candidates(C)| - 1)
    families and must not exceed ``limit``.
    """
    e = possibilistic_collapse(e)
    scenario = _target_scenario(e, target)
    key = _outcome_key(e.scenario)
    contexts = list(scenario.cover)
    if restrict_to_consistent:
        pools = [sorted(section_set(e, c).sections, key=key) for c in contexts]
    else:
        pools = [list(scenario.assignments(c)) for c in contexts]
    size = math.prod((1 << len(p)) - 1 for p in pools)
    if size > limit:
        raise InstanceTooLarge(f"{size} candidate families exceeds the limit {limit}")
    if any(not p for p in pools):
        return None

    ordered = [scenario.order(c) for c in contexts]
    base = {d: e.rows[d].support for d in e.scenario.cover}
    owned = [[d for d in e.scenario.cover if d <= c] for c in contexts]
    cache: dict = {}

    def marginal(i, chosen, w):
        k = (i, chosen, w)
        if k not in cache:
            keep = [p for p, x in enumerate(ordered[i]) if x in w]
            cache[k] = frozenset(tuple(s[p] for p in keep) for s in chosen)
        return cache[k]

    picked: list[frozenset] = []

    def search(i):
        if i == len(contexts):
            return True
        for chosen in _subsets(pools[i]):
            if any(marginal(i, chosen, d) != base[d] for d in owned[i]):
                continue
            if any(marginal(i, chosen, contexts[i] & contexts[j])
                   != marginal(j, picked[j], contexts[i] & contexts[j]) for j in range(i)):
                continue
            picked.append(chosen)
            if search(i + 1):
                return True
            picked.pop()
        return False

    if not search(0):
        return None
    rows = {c: {s: 1 for s in supp} for c, supp in zip(contexts, picked)}
    return build_model(scenario, Semiring.BOOLEAN, rows)


def brute_force_extendable(e: EmpiricalModel, target, limit: int = 2 ** 20) -> bool:
    return find_extension(e, target, limit) is not None


def is_strongly_non_extendable(e: EmpiricalModel, target):
    """(True, C) when some C of the target cover has S_e(C) empty, else (False, None).

    The answer is computed twice, from S_e(C) and from strong contextuality of
    the induced sub-model on C, and the two must agree.
    """
    e = possibilistic_collapse(e)
    scenario = _target_scenario(e, target)
    by_sections = next((c for c in scenario.cover if not section_set(e, c).sections), None)
    by_submodels = next((c for c in scenario.cover
                         if is_strongly_contextual(induced_submodel(e, c))), None)
    assert by_sections == by_submodels, "S_e(C) and induced sub-model disagree"
    if by_sections is None:
        return False, None
    return True, scenario.order(by_sections)


def check_submodel_proposition(e: EmpiricalModel, f: EmpiricalModel, target=None) -> bool:
    """Each f_C must be a global section of the induced sub-model of e on C."""
    e = possibilistic_collapse(e)
    f = possibilistic_collapse(f)
    if target is not None and set(map(frozenset, getattr(target, "cover", target))) != set(f.scenario.cover):
        raise NotAnExtension("f is not a model on the given cover")
    if not is_extension(f, e):
        raise NotAnExtension("f does not extend e")
    for c in f.scenario.cover:
        sub = induced_submodel(e, c)
        fc = f.rows[c]
        for v in sub.scenario.cover:
            if fc.marginalize(v).support != sub.rows[v].support:
                return False
    return True


def candidate_table(report: ExtensionReport) -> dict:
    """The canonical candidate as a Boolean row map (for rendering)."""
    return {report.target.order(c): supp for c, supp in report.candidate.items()}


__all__ = [
    "ExtensionReport", "ExtensionStatus", "brute_force_extendable", "canonical_extension",
    "candidate_table", "check_submodel_proposition", "find_extension", "is_extension",
    "is_strongly_non_extendable", "support_via_maximal_contexts",
]
