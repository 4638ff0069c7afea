from fractions import Fraction as F

import pytest

from sheafext import catalog
from sheafext.model import Semiring, possibilistic_collapse
from sheafext.solver import ContextualityClass as CC
from sheafext.solver import classify, is_logically_contextual


@pytest.mark.parametrize("name", catalog.names())
def test_entry_builds_and_matches_expected_class(name):
    entry = catalog.ENTRIES[name]
    assert entry.name == name and entry.provenance
    assert classify(entry.model) is entry.expected_class


def test_unknown_name():
    with pytest.raises(KeyError, match="no catalog model"):
        catalog.load("nope")


def test_chsh_table_values():
    e = catalog.load("chsh")
    assert e["AB"].weights == {("0", "0"): F(1, 2), ("1", "1"): F(1, 2)}
    assert e[("A'", "B'")][("0", "1")] == F(3, 8)
    assert e[("A", "B'")][("0", "1")] == F(1, 8)


def test_chsh_possibilistic_is_support_of_chsh():
    assert possibilistic_collapse(catalog.load("chsh")) == catalog.load("chsh-possibilistic")


def test_hardy_support_pattern():
    e = catalog.load("hardy")
    assert e.semiring is Semiring.PROBABILITY
    assert e["AB"][("0", "0")] > 0
    assert e[("A", "B'")][("0", "0")] == 0
    assert e[("A'", "B")][("0", "0")] == 0
    assert e[("A'", "B'")][("1", "1")] == 0


def test_hardy_is_logically_but_not_strongly_contextual():
    e = catalog.load("hardy")
    assert is_logically_contextual(e)
    assert classify(e) is CC.LOGICALLY_CONTEXTUAL


def test_ghz_parities():
    e = catalog.load("ghz")
    for c, d in e.rows.items():
        primes = sum(x.endswith("'") for x in c)
        parities = {sum(o == "1" for o in s) % 2 for s in d.support}
        if primes == 0:
            assert parities == {1}
        elif primes == 2:
            assert parities == {0}
        else:
            assert len(d.support) == 8


def test_peres_mermin_parities():
    e = catalog.load("peres-mermin")
    for ctx in catalog.PM_ROWS:
        assert {"".join(s) for s in e[ctx].support} == {"001", "010", "100", "111"}
    for ctx in catalog.PM_COLUMNS:
        assert {"".join(s) for s in e[ctx].support} == {"000", "011", "101", "110"}
