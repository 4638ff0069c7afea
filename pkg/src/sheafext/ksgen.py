"""Kochen-Specker models on covers whose contexts all have the same size."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NonBinaryOutcome, ScenarioError
from .model import EmpiricalModel, Semiring, build_model
from .scenario import MeasurementScenario, power_cover, validate_scenario

BINARY = ("0", "1")


@dataclass(frozen=True)
class KSScenario:
    scenario: MeasurementScenario
    n: int


def ks_scenario(measurements: Sequence[str], cover: Iterable[Iterable[str]]) -> KSScenario:
    cover = [frozenset(c) for c in cover]
    sizes = {len(c) for c in cover}
    if len(sizes) != 1:
        raise ScenarioError(f"Kochen-Specker covers need one context size, got {sorted(sizes)}")
    scenario = validate_scenario(measurements, BINARY, cover)
    return KSScenario(scenario, sizes.pop())


def as_ks_scenario(scenario: MeasurementScenario) -> KSScenario:
    if scenario.outcomes != BINARY:
        raise NonBinaryOutcome("Kochen-Specker scenarios have outcomes exactly ('0', '1')")
    return ks_scenario(scenario.measurements, scenario.cover)


def outcome_count(s: Iterable[str]) -> int:
    """Number of measurements assigned outcome 1."""
    total = 0
    for o in s:
        if o not in BINARY:
            raise NonBinaryOutcome(f"outcome {o!r} is not 0 or 1")
        total += o == "1"
    return total


def ks_model(ks: KSScenario) -> EmpiricalModel:
    rows = {}
    for c in ks.scenario.cover:
        rows[c] = {s: 1 for s in ks.scenario.assignments(c) if outcome_count(s) == 1}
    return build_model(ks.scenario, Semiring.BOOLEAN, rows)


def ks_canonical_extension(ks: KSScenario) -> EmpiricalModel:
    """Closed form of the canonical extension to P_n X.

    Contexts of M keep the one-hot rows.  Any other n-subset C allows s iff
    every W ⊆ C in the down-closure of M has at most one 1; since the count is
    monotone in W it suffices to test W = C ∩ D for D in M.
    """
    sc = ks.scenario
    target = sc.with_cover(power_cover(sc.measurements, ks.n))
    originals = set(sc.cover)
    rows = {}
    for c in target.cover:
        ordered = sc.order(c)
        if c in originals:
            rows[c] = {s: 1 for s in sc.assignments(c) if outcome_count(s) == 1}
            continue
        pieces = [[i for i, x in enumerate(ordered) if x in d] for d in sc.cover if c & d]
        rows[c] = {s: 1 for s in sc.assignments(c)
                   if all(outcome_count(s[i] for i in piece) <= 1 for piece in pieces)}
    return build_model(target, Semiring.BOOLEAN, rows)


def _incidence(measurements, cover):
    return {x: [c for c in cover if x in c] for x in measurements}


def find_automorphism(measurements: Sequence[str], cover: Iterable[Iterable[str]],
                      source: str, image: str) -> dict | None:
    """A hypergraph automorphism of (X, M) sending source to image, or None.

    Backtracking in measurement order; candidates must match degree and the
    multiset of incident context sizes, and every pair already mapped must
    keep its number of shared contexts.
    """
    measurements = list(measurements)
    cover = [frozenset(c) for c in cover]
    edges = set(cover)
    inc = _incidence(measurements, cover)
    signature = {x: tuple(sorted(len(c) for c in inc[x])) for x in measurements}
    if signature[source] != signature[image]:
        return None
    shared = {(a, b): sum(1 for c in inc[a] if b in c) for a in measurements for b in measurements}
    order = [source] + [x for x in measurements if x != source]
    mapping = {source: image}
    used = {image}

    def consistent(x, y):
        return all(shared[(x, a)] == shared[(y, mapping[a])] for a in mapping)

    def search(k):
        if k == len(order):
            return {frozenset(mapping[x] for x in c) for c in cover} == edges
        x = order[k]
        for y in measurements:
            if y in used or signature[y] != signature[x] or not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if search(k + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if search(1) else None


def is_vertex_transitive(measurements: Sequence[str], cover: Iterable[Iterable[str]]) -> bool:
    measurements = list(measurements)
    cover = [frozenset(c) for c in cover]
    first = measurements[0]
    return all(find_automorphism(measurements, cover, first, y) is not None
               for y in measurements[1:])


def is_symmetric_ks(ks: KSScenario) -> bool:
    """Does the automorphism group of (X, M) act transitively on X?"""
    return is_vertex_transitive(ks.scenario.measurements, ks.scenario.cover)


def random_ks_scenario(rng: random.Random, n_measurements: int, n: int, m: int,
                       max_tries: int = 1000) -> KSScenario:
    """m distinct n-subsets of n_measurements labels, resampled until they cover X."""
    if not 1 <= n <= n_measurements:
        raise ScenarioError(f"need 1 <= n <= {n_measurements}, got {n}")
    labels = [f"x{i}" for i in range(n_measurements)]
    pool = list(itertools.combinations(labels, n))
    m = min(m, len(pool))
    for _ in range(max_tries):
        cover = rng.sample(pool, m)
        if len(set(itertools.chain.from_iterable(cover))) == n_measurements:
            return ks_scenario(labels, cover)
    raise ScenarioError(f"no covering sample of {m} contexts of size {n} in {max_tries} tries")

