"""Codiagonal assignments and the Bell-type model built from a model on P_n X.

Site copies of a base measurement ``x`` are labelled ``x@1 .. x@n``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadArity, CoverNotPowerCover, NotConstructedPair
from .extension import ExtensionReport, canonical_extension
from .model import (
    EmpiricalModel,
    Semiring,
    build_model,
    context_distribution,
    possibilistic_collapse,
)
from .scenario import BellStructure, bell_scenario, power_cover, untag
from .solver import ContextualityClass, classify, consistent_globals


def underline(measurements: Iterable[str]) -> frozenset:
    """Forget the site tags: {x : x@i in U for some i}."""
    return frozenset(untag(x)[0] for x in measurements)


def is_codiagonal(labels: Sequence[str], s: Sequence[str]) -> bool:
    seen: dict = {}
    for label, o in zip(labels, s):
        base = untag(label)[0]
        if seen.setdefault(base, o) != o:
            return False
    return True


def codiagonal_assignments(labels: Sequence[str], outcomes: Sequence[str]) -> list[tuple]:
    """Assignments on the ordered tagged labels that agree across copies of each base measurement."""
    labels = tuple(labels)
    bases = list(dict.fromkeys(untag(x)[0] for x in labels))
    where = [bases.index(untag(x)[0]) for x in labels]
    return [tuple(t[w] for w in where) for t in itertools.product(outcomes, repeat=len(bases))]


def lift(labels: Sequence[str], base_order: Sequence[str], t: Sequence[str]) -> tuple:
    """The codiagonal assignment on ``labels`` whose underline is t (given on base_order)."""
    value = dict(zip(base_order, t))
    return tuple(value[untag(x)[0]] for x in labels)


def drop(labels: Sequence[str], base_order: Sequence[str], s: Sequence[str]) -> tuple:
    """The underline of a codiagonal assignment, as a tuple on base_order."""
    value = {untag(x)[0]: o for x, o in zip(labels, s)}
    return tuple(value[x] for x in base_order)


def bell_construction(f: EmpiricalModel, n: int) -> tuple[EmpiricalModel, BellStructure]:
    """The n-partite model f^Bell on (⊔^n X, O, ∏^n X)."""
    x = f.scenario.measurements
    if not 1 <= n <= len(x):
        raise BadArity(f"need 1 <= n <= {len(x)}, got {n}")
    if set(f.scenario.cover) != set(power_cover(x, n)):
        raise CoverNotPowerCover(f"model cover is not the {n}-subset cover of its measurements")
    scenario, structure = bell_scenario([x] * n, f.scenario.outcomes)
    rows = {}
    for c in scenario.cover:
        labels = scenario.order(c)
        base = underline(labels)
        fc = context_distribution(f, base)
        rows[c] = {lift(labels, fc.context, t): v for t, v in fc.weights.items()}
    return build_model(scenario, f.semiring, rows), structure


@dataclass
class BellifyResult:
    extension: ExtensionReport
    model: EmpiricalModel | None = None
    structure: BellStructure | None = None

    @property
    def ok(self) -> bool:
        return self.model is not None


def bellify(e: EmpiricalModel) -> BellifyResult:
    """Canonically extend e to P_n X (n = largest context) and build the Bell model."""
    e = possibilistic_collapse(e)
    n = e.scenario.max_context_size
    report = canonical_extension(e, power_cover(e.scenario.measurements, n))
    if not report.ok:
        return BellifyResult(report)
    model, structure = bell_construction(report.model, n)
    return BellifyResult(report, model, structure)


def global_section_bijection_check(f: EmpiricalModel, f_bell: EmpiricalModel) -> bool:
    """Check S_f(X) and S_{f^Bell}(⊔X) correspond via the codiagonal bijection.

    Also compares the hierarchy classification on both sides.
    """
    n = f.scenario.max_context_size
    try:
        expected, _ = bell_construction(f, n)
    except (BadArity, CoverNotPowerCover) as exc:
        raise NotConstructedPair(str(exc)) from None
    if expected != f_bell:
        raise NotConstructedPair("f_bell is not the Bell model constructed from f")
    labels = f_bell.scenario.measurements
    base_order = f.scenario.measurements
    small = consistent_globals(f)
    large = consistent_globals(f_bell)
    if not all(is_codiagonal(labels, g) for g in large):
        return False
    lifted = {lift(labels, base_order, g) for g in small}
    if lifted != set(large) or len(lifted) != len(small):
        return False
    if {drop(labels, base_order, g) for g in large} != set(small):
        return False
    if f.semiring is Semiring.SIGNED:
        return True
    return classify(f) == classify(f_bell)


__all__ = [
    "BellifyResult", "ContextualityClass", "bell_construction", "bellify",
    "codiagonal_assignments", "global_section_bijection_check", "is_codiagonal",
    "lift", "underline",
]
