import random
from fractions import Fraction

import pytest

from oracles import exhaustive_globals
from sheafext import catalog
from sheafext.errors import NonBinaryOutcome, ScenarioError
from sheafext.extension import canonical_extension
from sheafext.ksgen import (
    as_ks_scenario,
    find_automorphism,
    is_symmetric_ks,
    is_vertex_transitive,
    ks_canonical_extension,
    ks_model,
    ks_scenario,
    outcome_count,
    random_ks_scenario,
)
from sheafext.model import Semiring, build_model
from sheafext.scenario import power_cover, validate_scenario
from sheafext.solver import ContextualityClass as CC
from sheafext.solver import classify


def test_outcome_count():
    assert outcome_count("0110") == 2
    with pytest.raises(NonBinaryOutcome):
        outcome_count("012")


def test_triangle_is_the_ks_model_on_three_pairs():
    ks = ks_scenario("ABC", ["AB", "BC", "CA"])
    assert ks.n == 2
    assert ks_model(ks) == catalog.load("triangle")


def test_mixed_context_sizes_rejected():
    with pytest.raises(ScenarioError):
        ks_scenario("ABC", ["AB", "C"])
    with pytest.raises(NonBinaryOutcome):
        as_ks_scenario(validate_scenario("AB", "012", ["AB"]))


def test_repeated_contexts_are_merged():
    assert len(ks_scenario("ABC", ["AB", "AB", "BC"]).scenario.cover) == 2


def test_ks18_vectors_are_orthogonal_bases():
    data = catalog.ks18_data()
    vectors = {k: tuple(Fraction(x) for x in v) for k, v in data["vectors"].items()}
    assert len(vectors) == 18 and len(set(vectors.values())) == 18
    for ctx in data["contexts"]:
        assert len(ctx) == 4
        for i, a in enumerate(ctx):
            for b in ctx[i + 1:]:
                assert sum(x * y for x, y in zip(vectors[a], vectors[b])) == 0
    for v in vectors:
        assert sum(v in ctx for ctx in data["contexts"]) == 2


def test_ks18_is_strongly_contextual_and_symmetric():
    e = catalog.load("ks-18")
    assert classify(e) is CC.STRONGLY_CONTEXTUAL
    assert is_symmetric_ks(as_ks_scenario(e.scenario))


def test_automorphism_search():
    cover = ["AB", "BC", "CD", "DA"]
    m = find_automorphism("ABCD", cover, "A", "C")
    assert m is not None and m["A"] == "C"
    assert {frozenset(m[x] for x in c) for c in cover} == {frozenset(c) for c in cover}
    # a path is not vertex transitive: ends have degree one
    assert find_automorphism("ABC", ["AB", "BC"], "A", "B") is None
    assert not is_vertex_transitive("ABC", ["AB", "BC"])
    assert is_vertex_transitive("ABC", ["AB", "BC", "CA"])


def test_random_scenarios_are_deterministic():
    a = random_ks_scenario(random.Random(7), 8, 3, 5)
    b = random_ks_scenario(random.Random(7), 8, 3, 5)
    assert a == b
    assert all(len(c) == 3 for c in a.scenario.cover)
    with pytest.raises(ScenarioError):
        random_ks_scenario(random.Random(0), 3, 4, 1)
    with pytest.raises(ScenarioError):
        random_ks_scenario(random.Random(0), 6, 2, 2)


@pytest.mark.parametrize("seed", range(25))
def test_closed_form_matches_generic_extension(seed):
    rng = random.Random(seed)
    x = rng.randint(3, 7)
    n = rng.randint(1, min(4, x))
    ks = random_ks_scenario(rng, x, n, rng.randint(-(-x // n), x + 2))
    report = canonical_extension(ks_model(ks), power_cover(ks.scenario.measurements, n))
    assert report.ok
    closed = ks_canonical_extension(ks)
    assert dict(report.model.rows) == dict(closed.rows)


def circulant(k, offsets):
    labels = [f"v{i}" for i in range(k)]
    return labels, [[labels[(i + d) % k] for d in offsets] for i in range(k)]


SYMMETRIC_COVERS = [
    circulant(3, (0, 1)), circulant(4, (0, 1)), circulant(5, (0, 1)), circulant(6, (0, 1)),
    circulant(5, (0, 1, 2)), circulant(6, (0, 1, 3)), circulant(7, (0, 1, 3)),
    circulant(7, (0, 1, 2)), circulant(8, (0, 2, 3)),
    (list("ABCD"), [list(c) for c in power_cover("ABCD", 2)]),
    (list("ABCDE"), [list(c) for c in power_cover("ABCDE", 3)]),
    (list("ABCDEF"), [list("ABC"), list("DEF")]),
]


@pytest.mark.parametrize("labels,cover", SYMMETRIC_COVERS)
def test_symmetric_ks_models_are_contextual_exactly_when_strongly(labels, cover):
    ks = ks_scenario(labels, cover)
    assert is_symmetric_ks(ks)
    support = ks_model(ks)
    # uniform weights on the one-hot rows: marginals depend only on |W|
    e = build_model(ks.scenario, Semiring.PROBABILITY,
                    {c: {s: Fraction(1, ks.n) for s in d.weights} for c, d in support.rows.items()})
    cls = classify(e)
    assert cls in (CC.NON_CONTEXTUAL, CC.STRONGLY_CONTEXTUAL)
    assert (cls is CC.STRONGLY_CONTEXTUAL) == (not exhaustive_globals(support))


def test_two_disjoint_edges_are_vertex_transitive():
    assert is_vertex_transitive("ABCD", ["AB", "CD"])


def _incidence_graph(labels, cover):
    import networkx as nx
    g = nx.Graph()
    g.add_nodes_from(labels, side="x")
    for i, c in enumerate(cover):
        g.add_node(("ctx", i), side="c")
        g.add_edges_from((x, ("ctx", i)) for x in c)
    return g


def _transitive_by_graph_isomorphism(labels, cover):
    from networkx.algorithms.isomorphism import GraphMatcher
    g = _incidence_graph(labels, cover)
    same_side = lambda a, b: a["side"] == b["side"]  # noqa: E731
    images = set()
    for m in GraphMatcher(g, g, node_match=same_side).isomorphisms_iter():
        images.add(m[labels[0]])
        if len(images) == len(labels):
            return True
    return False


@pytest.mark.parametrize("seed", range(40))
def test_vertex_transitivity_matches_incidence_graph_oracle(seed):
    rng = random.Random(500 + seed)
    x = rng.randint(3, 7)
    n = rng.randint(2, min(3, x))
    ks = random_ks_scenario(rng, x, n, rng.randint(-(-x // n), x + 1))
    labels = list(ks.scenario.measurements)
    cover = [sorted(c) for c in ks.scenario.cover]
    assert is_vertex_transitive(labels, cover) == _transitive_by_graph_isomorphism(labels, cover)


@pytest.mark.parametrize("labels,cover", SYMMETRIC_COVERS)
def test_symmetric_families_match_incidence_graph_oracle(labels, cover):
    assert _transitive_by_graph_isomorphism(labels, cover)
