"""Named example models.

Each entry records the class it is expected to classify as; the test suite
re-derives every one of them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction as F
from functools import lru_cache
from importlib import resources
from typing import Callable

from .ksgen import ks_model, ks_scenario
from .model import EmpiricalModel, Semiring, build_model
from .scenario import bell_scenario, validate_scenario
from .solver import ContextualityClass as CC

BITS2 = ("00", "01", "10", "11")
BITS3 = ("000", "001", "010", "011", "100", "101", "110", "111")
ODD3 = {"001": 1, "010": 1, "100": 1, "111": 1}
EVEN3 = {"000": 1, "011": 1, "101": 1, "110": 1}


def _row(cells, keys=BITS2):
    return dict(zip(keys, cells))


def chsh() -> EmpiricalModel:
    sc = validate_scenario(["A", "A'", "B", "B'"], ["0", "1"],
                           [["A", "B"], ["A", "B'"], ["A'", "B"], ["A'", "B'"]])
    h, a, b = F(1, 2), F(3, 8), F(1, 8)
    return build_model(sc, Semiring.PROBABILITY, {
        ("A", "B"): _row([h, 0, 0, h]),
        ("A", "B'"): _row([a, b, b, a]),
        ("A'", "B"): _row([a, b, b, a]),
        ("A'", "B'"): _row([b, a, a, b]),
    })


def chsh_possibilistic() -> EmpiricalModel:
    sc = chsh().scenario
    return build_model(sc, Semiring.BOOLEAN, {
        ("A", "B"): _row([1, 0, 0, 1]),
        ("A", "B'"): _row([1, 1, 1, 1]),
        ("A'", "B"): _row([1, 1, 1, 1]),
        ("A'", "B'"): _row([1, 1, 1, 1]),
    })


def triangle() -> EmpiricalModel:
    sc = validate_scenario(["A", "B", "C"], ["0", "1"], [["A", "B"], ["B", "C"], ["C", "A"]])
    return build_model(sc, Semiring.BOOLEAN, {c: _row([0, 1, 1, 0]) for c in sc.cover})


def pr_box() -> EmpiricalModel:
    sc, _ = bell_scenario([["A", "B"], ["A", "C"]], ["0", "1"])
    return build_model(sc, Semiring.BOOLEAN, {
        ("A@1", "A@2"): _row([1, 0, 0, 1]),
        ("A@1", "C@2"): _row([0, 1, 1, 0]),
        ("B@1", "A@2"): _row([0, 1, 1, 0]),
        ("B@1", "C@2"): _row([0, 1, 1, 0]),
    })


def ex_sig() -> EmpiricalModel:
    sc = validate_scenario(["A", "B", "C", "D"], ["0", "1"],
                           [["A", "B"], ["B", "C"], ["C", "D"], ["D", "A"]])
    return build_model(sc, Semiring.BOOLEAN, {
        ("A", "B"): _row([1, 1, 1, 1]),
        ("B", "C"): _row([1, 0, 0, 1]),
        ("C", "D"): _row([1, 0, 0, 1]),
        ("D", "A"): _row([1, 1, 1, 1]),
    })


PM_ROWS = (("A", "B", "C"), ("D", "E", "F"), ("G", "H", "I"))
PM_COLUMNS = (("A", "D", "G"), ("B", "E", "H"), ("C", "F", "I"))


def peres_mermin() -> EmpiricalModel:
    sc = validate_scenario("ABCDEFGHI", ["0", "1"], PM_ROWS + PM_COLUMNS)
    rows = {r: ODD3 for r in PM_ROWS}
    rows.update({c: EVEN3 for c in PM_COLUMNS})
    return build_model(sc, Semiring.BOOLEAN, rows)


def triangle_bell() -> EmpiricalModel:
    sc, _ = bell_scenario([["A", "B", "C"], ["A", "B", "C"]], ["0", "1"])
    rows = {}
    for x in "ABC":
        for y in "ABC":
            rows[(f"{x}@1", f"{y}@2")] = _row([1, 0, 0, 1] if x == y else [0, 1, 1, 0])
    return build_model(sc, Semiring.BOOLEAN, rows)


def hardy() -> EmpiricalModel:
    """A rational no-signalling box with Hardy's support pattern.

    AB' and A'B forbid 00, A'B' forbids 11, AB allows everything.
    """
    sc = chsh().scenario
    return build_model(sc, Semiring.PROBABILITY, {
        ("A", "B"): _row([F(1, 16), F(3, 16), F(1, 16), F(11, 16)]),
        ("A", "B'"): _row([0, F(1, 4), F(1, 2), F(1, 4)]),
        ("A'", "B"): _row([0, F(3, 4), F(1, 8), F(1, 8)]),
        ("A'", "B'"): _row([F(1, 4), F(1, 2), F(1, 4), 0]),
    })


def ghz() -> EmpiricalModel:
    """Tripartite GHZ-Mermin parity model; unprimed = X-type, primed = Y-type."""
    sites = [["A", "A'"], ["B", "B'"], ["C", "C'"]]
    labels = [x for s in sites for x in s]
    contexts = [(a, b, c) for a in sites[0] for b in sites[1] for c in sites[2]]
    sc = validate_scenario(labels, ["0", "1"], contexts)
    quarter = F(1, 4)
    rows = {}
    for ctx in contexts:
        primes = sum(x.endswith("'") for x in ctx)
        if primes == 0:
            rows[ctx] = {s: quarter for s in ODD3}
        elif primes == 2:
            rows[ctx] = {s: quarter for s in EVEN3}
        else:
            rows[ctx] = {s: F(1, 8) for s in BITS3}
    return build_model(sc, Semiring.PROBABILITY, rows)


def ks18_data() -> dict:
    with resources.files("sheafext.data").joinpath("ks18.json").open() as fh:
        return json.load(fh)


def ks18() -> EmpiricalModel:
    data = ks18_data()
    return ks_model(ks_scenario(list(data["vectors"]), data["contexts"]))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], EmpiricalModel]
    expected_class: CC
    provenance: str

    @property
    def model(self) -> EmpiricalModel:
        return load(self.name)


ENTRIES = {e.name: e for e in [
    CatalogEntry("chsh", chsh, CC.CONTEXTUAL,
                 "Bell-CHSH probability table with entries 1/2, 3/8, 1/8"),
    CatalogEntry("chsh-possibilistic", chsh_possibilistic, CC.NON_CONTEXTUAL,
                 "support collapse of chsh; row labels follow the chsh cover"),
    CatalogEntry("triangle", triangle, CC.STRONGLY_CONTEXTUAL,
                 "contextual triangle: Kochen-Specker model on {AB, BC, CA}"),
    CatalogEntry("pr-box", pr_box, CC.STRONGLY_CONTEXTUAL,
                 "PR box on {A@1,B@1} x {A@2,C@2}, folded out of triangle-bell"),
    CatalogEntry("ex-sig", ex_sig, CC.NON_CONTEXTUAL,
                 "model on {AB, BC, CD, DA} whose canonical extension to {ABD, BCD} signals"),
    CatalogEntry("peres-mermin", peres_mermin, CC.STRONGLY_CONTEXTUAL,
                 "Peres-Mermin square: rows odd parity, columns even parity"),
    CatalogEntry("triangle-bell", triangle_bell, CC.STRONGLY_CONTEXTUAL,
                 "(2,3,2) Bell model constructed from the triangle"),
    CatalogEntry("hardy", hardy, CC.LOGICALLY_CONTEXTUAL,
                 "rational (2,2,2) no-signalling box with Hardy's possibilistic pattern"),
    CatalogEntry("ghz", ghz, CC.STRONGLY_CONTEXTUAL,
                 "(3,2,2) GHZ-Mermin parity model, uniform on each support"),
    CatalogEntry("ks-18", ks18, CC.STRONGLY_CONTEXTUAL,
                 "Kochen-Specker model on the 18-ray, 9-basis cover in data/ks18.json"),
]}


def names() -> list[str]:
    return list(ENTRIES)


@lru_cache(maxsize=None)
def load(name: str) -> EmpiricalModel:
    try:
        return ENTRIES[name].build()
    except KeyError:
        raise KeyError(f"no catalog model named {name!r}; known: {', '.join(ENTRIES)}") from None
