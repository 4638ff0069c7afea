"""Measurement scenarios, covers and Bell-scenario structure.

A scenario is the triple (X, O, M): an ordered set of measurement labels,
an ordered set of outcome labels, and a cover M of maximal contexts.
Contexts are ``frozenset``s of labels; whenever an ordered view is needed
(assignment strings, table columns) the scenario's measurement order is
used, restricted to the context.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BadArity,
    EmptyCover,
    EmptySite,
    MismatchedMeasurementSets,
    ScenarioError,
    UncoveredMeasurement,
    UnknownLabel,
)

Context = frozenset

SITE_SEPARATOR = "@"


def normalize_cover(cover: Iterable[Iterable[str]]) -> tuple[frozenset, ...]:
    """Drop duplicates and members strictly contained in another member.

    First-occurrence order of the surviving members is kept.
    """
    members: list[frozenset] = []
    for c in cover:
        c = frozenset(c)
        if c not in members:
            members.append(c)
    return tuple(c for c in members if not any(c < d for d in members))


@dataclass(frozen=True)
class MeasurementScenario:
    measurements: tuple[str, ...]
    outcomes: tuple[str, ...]
    cover: tuple[frozenset, ...]
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.measurements)})

    def order(self, context: Iterable[str]) -> tuple[str, ...]:
        """Labels of ``context`` in the scenario's measurement order."""
        try:
            return tuple(sorted(context, key=self._index.__getitem__))
        except KeyError as exc:
            raise UnknownLabel(exc.args[0], "context") from None

    def assignments(self, context: Iterable[str]):
        """All outcome tuples on ``context``, lexicographic in outcome order."""
        return itertools.product(self.outcomes, repeat=len(frozenset(context)))

    @property
    def max_context_size(self) -> int:
        return max(len(c) for c in self.cover)

    @property
    def measurement_set(self) -> frozenset:
        return frozenset(self.measurements)

    def with_cover(self, cover: Iterable[Iterable[str]]) -> "MeasurementScenario":
        """Same X and O, different cover (validated)."""
        return validate_scenario(self.measurements, self.outcomes, cover)


@dataclass(frozen=True)
class BellStructure:
    """Site decomposition of a Bell scenario: one tuple of labels per site."""

    sites: tuple[tuple[str, ...], ...]

    @property
    def n(self) -> int:
        return len(self.sites)

    @property
    def k(self) -> int:
        return max(len(s) for s in self.sites)

    def site_of(self, label: str) -> int:
        for i, site in enumerate(self.sites, start=1):
            if label in site:
                return i
        raise UnknownLabel(label, "sites")


def validate_scenario(
    measurements: Sequence[str],
    outcomes: Sequence[str],
    cover: Iterable[Iterable[str]],
) -> MeasurementScenario:
    measurements = tuple(measurements)
    outcomes = tuple(outcomes)
    if not measurements:
        raise ScenarioError("at least one measurement is required")
    if not outcomes:
        raise ScenarioError("at least one outcome is required")
    if len(set(measurements)) != len(measurements):
        raise ScenarioError("duplicate measurement labels")
    if len(set(outcomes)) != len(outcomes):
        raise ScenarioError("duplicate outcome labels")
    cover = [frozenset(c) for c in cover]
    known = set(measurements)
    for c in cover:
        for x in c:
            if x not in known:
                raise UnknownLabel(x)
    members = normalize_cover(c for c in cover if c)
    if not members:
        raise EmptyCover("cover has no nonempty context")
    covered = frozenset().union(*members)
    for x in measurements:
        if x not in covered:
            raise UncoveredMeasurement(x)
    return MeasurementScenario(measurements, outcomes, members)


def down_closure(cover: Iterable[Iterable[str]]) -> set[frozenset]:
    closure: set[frozenset] = set()
    for c in cover:
        c = tuple(c)
        for r in range(len(c) + 1):
            closure.update(frozenset(s) for s in itertools.combinations(c, r))
    return closure


def in_down_closure(context: Iterable[str], cover: Iterable[frozenset]) -> bool:
    context = frozenset(context)
    return any(context <= c for c in cover)


def cover_leq(smaller: Iterable[Iterable[str]], larger: Iterable[Iterable[str]]) -> bool:
    """M <= M' iff every member of M lies inside some member of M'."""
    smaller = [frozenset(c) for c in smaller]
    larger = [frozenset(c) for c in larger]
    if frozenset().union(*smaller) != frozenset().union(*larger):
        raise MismatchedMeasurementSets("covers are over different measurement sets")
    return all(any(d <= c for c in larger) for d in smaller)


def power_cover(measurements: Sequence[str], n: int) -> tuple[frozenset, ...]:
    """All n-element subsets of ``measurements`` (combinations in the given order)."""
    measurements = tuple(measurements)
    if not 1 <= n <= len(measurements):
        raise BadArity(f"need 1 <= n <= {len(measurements)}, got {n}")
    return tuple(frozenset(c) for c in itertools.combinations(measurements, n))


def top_cover(measurements: Sequence[str]) -> tuple[frozenset, ...]:
    return (frozenset(measurements),)


def tag(label: str, site: int) -> str:
    return f"{label}{SITE_SEPARATOR}{site}"


def untag(label: str) -> tuple[str, int]:
    base, sep, site = label.rpartition(SITE_SEPARATOR)
    if not sep or not site.isdigit():
        raise UnknownLabel(label, "site-tagged labels")
    return base, int(site)


def bell_scenario(
    site_lists: Sequence[Sequence[str]], outcomes: Sequence[str]
) -> tuple[MeasurementScenario, BellStructure]:
    """Scenario whose maximal contexts pick one measurement per site.

    Labels are tagged ``label@i`` (sites numbered from 1) and ordered site-major.
    """
    if not site_lists:
        raise EmptySite("no sites given")
    sites = []
    for i, labels in enumerate(site_lists, start=1):
        labels = list(dict.fromkeys(labels))
        if not labels:
            raise EmptySite(f"site {i} has no measurements")
        sites.append(tuple(tag(x, i) for x in labels))
    measurements = [x for site in sites for x in site]
    cover = [frozenset(t) for t in itertools.product(*sites)]
    scenario = validate_scenario(measurements, outcomes, cover)
    return scenario, BellStructure(tuple(sites))


def is_bell_structure(scenario: MeasurementScenario, structure: BellStructure) -> bool:
    """Check the site decomposition against the scenario's cover."""
    flat = [x for site in structure.sites for x in site]
    if len(flat) != len(set(flat)) or set(flat) != scenario.measurement_set:
        return False
    if any(not site for site in structure.sites):
        return False
    expected = {frozenset(t) for t in itertools.product(*structure.sites)}
    return expected == set(scenario.cover)
