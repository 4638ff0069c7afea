"""Semiring-valued distributions and empirical models.

All arithmetic is exact: probability and signed weights are ``Fraction``s,
Boolean weights are the integer 1 (absent keys read as 0).  Assignments are
tuples of outcome labels aligned with the context's ordered labels.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import (
    EmptyInducedCover,
    IncompatibleRows,
    MissingRow,
    ModelError,
    NormalizationError,
    NotInDownClosure,
    NotSubcontext,
    UnexpectedRow,
    UnknownLabel,
)
from .scenario import MeasurementScenario, normalize_cover, validate_scenario


class Semiring(enum.Enum):
    PROBABILITY = "probability"
    BOOLEAN = "boolean"
    SIGNED = "signed"


def _coerce(semiring: Semiring, value):
    if semiring is Semiring.BOOLEAN:
        if isinstance(value, str):
            value = value.strip()
        if value in (0, 1, "0", "1", False, True):
            return int(value)
        raise ModelError(f"Boolean weight must be 0 or 1, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ModelError(f"cannot read {value!r} as a rational") from None


def format_assignment(s: tuple[str, ...]) -> str:
    """Outcomes concatenated; comma-separated when some label is longer than one character."""
    if all(len(o) == 1 for o in s):
        return "".join(s)
    return ",".join(s)


def parse_assignment(text: str, length: int, outcomes: tuple[str, ...]) -> tuple[str, ...]:
    if all(len(o) == 1 for o in outcomes) and "," not in text:
        parts = tuple(text)
    else:
        parts = tuple(p.strip() for p in text.split(",")) if text else ()
    if len(parts) != length:
        raise ModelError(f"assignment {text!r} should have {length} outcomes")
    for p in parts:
        if p not in outcomes:
            raise UnknownLabel(p, "outcomes")
    return parts


@dataclass(frozen=True, eq=False)
class Distribution:
    """Sparse weight map over the assignments of one (ordered) context."""

    semiring: Semiring
    context: tuple[str, ...]
    weights: Mapping[tuple[str, ...], object]

    def __post_init__(self):
        cleaned = {}
        for s, v in self.weights.items():
            s = tuple(s)
            if len(s) != len(self.context):
                raise ModelError(f"assignment {s} does not match context {self.context}")
            v = _coerce(self.semiring, v)
            if v != 0:
                cleaned[s] = v
        object.__setattr__(self, "weights", cleaned)

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return (
            self.semiring is other.semiring
            and self.context == other.context
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.semiring, self.context, frozenset(self.weights.items())))

    def __getitem__(self, s):
        return self.weights.get(tuple(s), 0)

    @property
    def support(self) -> frozenset:
        return frozenset(self.weights)

    def total(self):
        if self.semiring is Semiring.BOOLEAN:
            return 1 if self.weights else 0
        return sum(self.weights.values(), Fraction(0))

    def marginalize(self, subcontext: Iterable[str]) -> "Distribution":
        return marginalize(self, subcontext)


def marginalize(d: Distribution, subcontext: Iterable[str]) -> Distribution:
    sub = frozenset(subcontext)
    if not sub <= frozenset(d.context):
        raise NotSubcontext(f"{sorted(sub)} is not contained in {list(d.context)}")
    keep = [i for i, x in enumerate(d.context) if x in sub]
    target = tuple(d.context[i] for i in keep)
    out: dict = {}
    if d.semiring is Semiring.BOOLEAN:
        for s in d.weights:
            out[tuple(s[i] for i in keep)] = 1
    else:
        for s, v in d.weights.items():
            t = tuple(s[i] for i in keep)
            out[t] = out.get(t, 0) + v
    return Distribution(d.semiring, target, out)


def _check_normalized(d: Distribution) -> None:
    if d.semiring is Semiring.BOOLEAN:
        if not d.weights:
            raise NormalizationError(d.context, "Boolean distribution has empty support")
        return
    if d.semiring is Semiring.PROBABILITY and any(v < 0 for v in d.weights.values()):
        raise NormalizationError(d.context, "negative probability")
    total = d.total()
    if total != 1:
        raise NormalizationError(d.context, f"weights sum to {total}, not 1")


@dataclass(frozen=True)
class Violation:
    """A failure of marginals to agree on the overlap of two contexts."""

    first: tuple[str, ...]
    second: tuple[str, ...]
    overlap: tuple[str, ...]
    assignment: tuple[str, ...]
    value_first: object
    value_second: object

    def __str__(self):
        c1, c2, w = ("".join(x) if all(len(y) == 1 for y in x) else " ".join(x)
                     for x in (self.first, self.second, self.overlap))
        s = format_assignment(self.assignment)
        return (f"e_{c1}|_{w}({s}) = {self.value_first} != "
                f"{self.value_second} = e_{c2}|_{w}({s})")


def _outcome_key(scenario: MeasurementScenario):
    rank = {o: i for i, o in enumerate(scenario.outcomes)}
    return lambda s: tuple(rank[o] for o in s)


def check_compatibility(rows: Mapping[frozenset, Distribution],
                        scenario: MeasurementScenario) -> Violation | None:
    """First violation in (C1, C2, t) order over the cover, or None."""
    contexts = [c for c in scenario.cover if c in rows]
    cache: dict = {}
    key = _outcome_key(scenario)

    def marginal(i, w):
        k = (i, w)
        if k not in cache:
            cache[k] = rows[contexts[i]].marginalize(w).weights
        return cache[k]

    # Fast path: every context containing an overlap W must agree with the
    # first one on W.  This is equivalent to pairwise agreement, and only
    # when it fails do we run the ordered scan that names the first violation.
    overlaps = [set() for _ in contexts]
    for i in range(len(contexts)):
        for j in range(i + 1, len(contexts)):
            w = contexts[i] & contexts[j]
            overlaps[i].add(w)
            overlaps[j].add(w)
    reference: dict = {}
    if all(reference.setdefault(w, marginal(i, w)) == marginal(i, w)
           for i in range(len(contexts)) for w in overlaps[i]):
        return None

    for i in range(len(contexts)):
        for j in range(i + 1, len(contexts)):
            w = contexts[i] & contexts[j]
            a, b = marginal(i, w), marginal(j, w)
            if a == b:
                continue
            for t in sorted(set(a) | set(b), key=key):
                va, vb = a.get(t, 0), b.get(t, 0)
                if va != vb:
                    return Violation(
                        rows[contexts[i]].context, rows[contexts[j]].context,
                        scenario.order(w), t, va, vb,
                    )
    return None


@dataclass(frozen=True, eq=False)
class EmpiricalModel:
    scenario: MeasurementScenario
    semiring: Semiring
    rows: Mapping[frozenset, Distribution]
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, EmpiricalModel):
            return NotImplemented
        return (self.scenario == other.scenario and self.semiring is other.semiring
                and dict(self.rows) == dict(other.rows))

    __hash__ = None

    def __getitem__(self, context) -> Distribution:
        return self.rows[frozenset(context)]

    def supports(self) -> dict[frozenset, frozenset]:
        return {c: d.support for c, d in self.rows.items()}

    def marginal_support(self, context: frozenset, sub: frozenset) -> frozenset:
        """supp(e_C|_W), cached."""
        k = ("supp", context, sub)
        if k not in self._cache:
            self._cache[k] = self.rows[context].marginalize(sub).support
        return self._cache[k]


def _read_row(scenario, semiring, context, weights) -> Distribution:
    ordered = scenario.order(context)
    parsed = {}
    for s, v in weights.items():
        if isinstance(s, str):
            s = parse_assignment(s, len(ordered), scenario.outcomes)
        else:
            s = tuple(s)
            for o in s:
                if o not in scenario.outcomes:
                    raise UnknownLabel(o, "outcomes")
        if s in parsed:
            raise ModelError(f"assignment {format_assignment(s)} listed twice in row {ordered}")
        parsed[s] = v
    return Distribution(semiring, ordered, parsed)


def build_model(scenario: MeasurementScenario, semiring: Semiring | str,
                rows: Mapping[Iterable[str], Mapping]) -> EmpiricalModel:
    """Validate one distribution per maximal context into an empirical model.

    ``rows`` maps contexts (any iterable of labels) to weight maps keyed by
    assignment strings or outcome tuples; absent assignments weigh 0.
    """
    semiring = Semiring(semiring)
    given = {}
    for c, weights in rows.items():
        c = frozenset(c)
        if c not in scenario.cover:
            raise UnexpectedRow(c)
        if isinstance(weights, Distribution):
            weights = weights.weights
        given[c] = _read_row(scenario, semiring, c, weights)
    for c in scenario.cover:
        if c not in given:
            raise MissingRow(c)
    ordered = {c: given[c] for c in scenario.cover}
    for d in ordered.values():
        _check_normalized(d)
    violation = check_compatibility(ordered, scenario)
    if violation is not None:
        raise IncompatibleRows(violation)
    return EmpiricalModel(scenario, semiring, ordered)


def context_distribution(e: EmpiricalModel, context: Iterable[str]) -> Distribution:
    """e_U for U in the down-closure; equal from every covering maximal context."""
    u = frozenset(context)
    k = ("ctx", u)
    if k in e._cache:
        return e._cache[k]
    covering = [c for c in e.scenario.cover if u <= c]
    if not covering:
        raise NotInDownClosure(f"{sorted(u)} is not contained in any maximal context")
    result = e.rows[covering[0]].marginalize(u)
    for c in covering[1:]:
        assert e.rows[c].marginalize(u) == result, "model is not compatible"
    e._cache[k] = result
    return result


@dataclass(frozen=True)
class SectionSet:
    context: tuple[str, ...]
    sections: frozenset

    def __len__(self):
        return len(self.sections)

    def __contains__(self, s):
        return tuple(s) in self.sections

    def sorted(self, scenario: MeasurementScenario) -> list[tuple[str, ...]]:
        return sorted(self.sections, key=_outcome_key(scenario))


def _prefix_checks(e: EmpiricalModel, order: tuple[str, ...]):
    # checks[k]: (positions into order[:k+1], allowed supports) for each context meeting u_k
    checks = [[] for _ in order]
    position = {x: i for i, x in enumerate(order)}
    for c in e.scenario.cover:
        w = [x for x in order if x in c]
        for j, x in enumerate(w):
            prefix = frozenset(w[: j + 1])
            allowed = e.marginal_support(c, prefix)
            checks[position[x]].append((tuple(position[y] for y in w[: j + 1]), allowed))
    return checks


def iter_sections(e: EmpiricalModel, measurements: Iterable[str]) -> Iterator[tuple[str, ...]]:
    """Assignments on U consistent with every row's support, in lexicographic order.

    Depth-first over U in scenario order; a partial assignment is pruned as
    soon as its restriction to C ∩ (assigned) leaves supp(e_C|_{C ∩ assigned}).
    """
    order = e.scenario.order(frozenset(measurements))
    for c in e.scenario.cover:
        if not c & frozenset(order) and not e.marginal_support(c, frozenset()):
            return
    checks = _prefix_checks(e, order)
    outcomes = e.scenario.outcomes
    partial: list[str] = []

    def extend(k):
        if k == len(order):
            yield tuple(partial)
            return
        for o in outcomes:
            partial.append(o)
            if all(tuple(partial[p] for p in pos) in allowed for pos, allowed in checks[k]):
                yield from extend(k + 1)
            partial.pop()

    yield from extend(0)


def section_set(e: EmpiricalModel, measurements: Iterable[str]) -> SectionSet:
    u = frozenset(measurements)
    unknown = u - e.scenario.measurement_set
    if unknown:
        raise UnknownLabel(sorted(unknown)[0], "measurements")
    return SectionSet(e.scenario.order(u), frozenset(iter_sections(e, u)))


def possibilistic_collapse(e: EmpiricalModel) -> EmpiricalModel:
    if e.semiring is Semiring.BOOLEAN:
        return e
    rows = {c: Distribution(Semiring.BOOLEAN, d.context, {s: 1 for s in d.weights})
            for c, d in e.rows.items()}
    return EmpiricalModel(e.scenario, Semiring.BOOLEAN, rows)


def induced_submodel(e: EmpiricalModel, measurements: Iterable[str]) -> EmpiricalModel:
    """The model {e_{U ∩ C}} on the scenario (U, O, {U ∩ C})."""
    u = frozenset(measurements)
    unknown = u - e.scenario.measurement_set
    if unknown:
        raise UnknownLabel(sorted(unknown)[0], "measurements")
    cover = normalize_cover(c & u for c in e.scenario.cover if c & u)
    if not cover:
        raise EmptyInducedCover("the induced cover has no nonempty context")
    scenario = validate_scenario(e.scenario.order(u), e.scenario.outcomes, cover)
    rows = {v: context_distribution(e, v).weights for v in scenario.cover}
    return build_model(scenario, e.semiring, rows)
