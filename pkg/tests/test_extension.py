import pytest

from oracles import exhaustive_sections, random_boolean_models
from sheafext import catalog
from sheafext.errors import (
    CoverNotLarger,
    InstanceTooLarge,
    MismatchedMeasurementSets,
    NotAnExtension,
    SemiringMismatch,
)
from sheafext.extension import (
    ExtensionStatus,
    brute_force_extendable,
    canonical_extension,
    check_submodel_proposition,
    find_extension,
    is_extension,
    is_strongly_non_extendable,
    support_via_maximal_contexts,
)
from sheafext.model import Semiring, build_model, induced_submodel, possibilistic_collapse
from sheafext.scenario import power_cover, top_cover
from sheafext.solver import ContextualityClass as CC
from sheafext.solver import classify

SIG_TARGET = [["A", "B", "D"], ["B", "C", "D"]]


def test_ex_sig_candidate_rows():
    report = canonical_extension(catalog.load("ex-sig"), SIG_TARGET)
    rows = {"".join(report.target.order(c)): sorted("".join(s) for s in supp)
            for c, supp in report.candidate.items()}
    assert rows == {
        "ABD": ["000", "001", "010", "011", "100", "101", "110", "111"],
        "BCD": ["000", "111"],
    }


def test_ex_sig_canonical_extension_signals():
    report = canonical_extension(catalog.load("ex-sig"), SIG_TARGET)
    assert report.status is ExtensionStatus.INCOMPATIBLE
    v = report.violation
    assert v.overlap == ("B", "D") and v.assignment == ("0", "1")
    assert (v.value_first, v.value_second) == (1, 0)
    assert str(v) == "e_ABD|_BD(01) = 1 != 0 = e_BCD|_BD(01)"


def test_ex_sig_still_has_a_non_canonical_extension():
    e = catalog.load("ex-sig")
    f = find_extension(e, SIG_TARGET)
    assert f is not None and is_extension(f, e)
    assert brute_force_extendable(e, SIG_TARGET)
    # searching all of E(C) instead of S_e(C) reaches the same verdict
    assert find_extension(e, SIG_TARGET, restrict_to_consistent=False) is not None


def test_ex_sig_induced_submodels_are_non_contextual():
    e = catalog.load("ex-sig")
    for c in SIG_TARGET:
        assert classify(induced_submodel(e, c)) is CC.NON_CONTEXTUAL


def test_triangle_to_top_cover_is_empty():
    report = canonical_extension(catalog.load("triangle"), top_cover("ABC"))
    assert report.status is ExtensionStatus.EMPTY_SUPPORT
    assert report.context == ("A", "B", "C")
    assert is_strongly_non_extendable(catalog.load("triangle"), top_cover("ABC")) == (
        True, ("A", "B", "C"))


def test_hardy_to_top_cover_loses_an_assignment():
    report = canonical_extension(catalog.load("hardy"), top_cover(catalog.load("hardy").scenario.measurements))
    assert report.status is ExtensionStatus.NOT_EXTENDING
    assert report.missing == (("A", "B"), ("0", "0"))


def test_peres_mermin_extends_to_three_subsets():
    pm = catalog.load("peres-mermin")
    report = canonical_extension(pm, power_cover(pm.scenario.measurements, 3))
    assert report.ok and len(report.model.rows) == 84
    assert is_extension(report.model, pm)


def test_triangle_to_p2_is_itself():
    e = catalog.load("triangle")
    report = canonical_extension(e, power_cover("ABC", 2))
    assert report.ok
    assert set(report.model.scenario.cover) == set(e.scenario.cover)
    assert dict(report.model.rows) == dict(e.rows)


def test_target_errors():
    e = catalog.load("triangle")
    with pytest.raises(MismatchedMeasurementSets):
        canonical_extension(e, [["A", "B"]])
    with pytest.raises(CoverNotLarger):
        canonical_extension(e, [["A", "B"], ["C"]])


def test_is_extension_errors():
    e = catalog.load("triangle")
    with pytest.raises(TypeError):
        is_extension({}, e)
    chsh = catalog.load("chsh")
    with pytest.raises(MismatchedMeasurementSets):
        is_extension(chsh, e)
    with pytest.raises(SemiringMismatch):
        is_extension(chsh, catalog.load("chsh-possibilistic"))


def test_brute_force_size_limit():
    pm = catalog.load("peres-mermin")
    with pytest.raises(InstanceTooLarge):
        find_extension(pm, power_cover(pm.scenario.measurements, 3), limit=1000)


def test_submodel_proposition_on_ex_sig_extension():
    e = catalog.load("ex-sig")
    f = find_extension(e, SIG_TARGET)
    assert check_submodel_proposition(e, f, SIG_TARGET)
    with pytest.raises(NotAnExtension):
        check_submodel_proposition(e, f, [["A", "B", "C", "D"]])


def test_not_an_extension_is_reported():
    e = catalog.load("ex-sig")
    sc = e.scenario.with_cover(SIG_TARGET)
    everything = {c: {s: 1 for s in sc.assignments(c)} for c in sc.cover}
    f = build_model(sc, Semiring.BOOLEAN, everything)
    assert not is_extension(f, e)
    with pytest.raises(NotAnExtension):
        check_submodel_proposition(e, f)


@pytest.mark.parametrize("model", random_boolean_models(11, 40), ids=lambda m: "")
def test_two_routes_to_the_candidate_support(model):
    n = model.scenario.max_context_size
    for c in power_cover(model.scenario.measurements, n):
        via_sections = canonical_extension(model, power_cover(model.scenario.measurements, n)).candidate[c]
        assert via_sections == support_via_maximal_contexts(model, c) == exhaustive_sections(model, c)


@pytest.mark.parametrize("model", random_boolean_models(12, 40), ids=lambda m: "")
def test_top_cover_extension_matches_logical_contextuality(model):
    report = canonical_extension(model, top_cover(model.scenario.measurements))
    assert report.ok == (classify(model) is CC.NON_CONTEXTUAL)


@pytest.mark.parametrize("model", random_boolean_models(13, 30), ids=lambda m: "")
def test_strong_non_extendability_corollary(model):
    target = power_cover(model.scenario.measurements, model.scenario.max_context_size)
    flag, ctx = is_strongly_non_extendable(model, target)
    has_sc_submodel = any(classify(induced_submodel(model, c)) is CC.STRONGLY_CONTEXTUAL
                          for c in target)
    assert flag == has_sc_submodel
    report = canonical_extension(model, target)
    assert (report.status is ExtensionStatus.EMPTY_SUPPORT) == flag


def _small_search(models, limit):
    out = []
    for m in models:
        target = power_cover(m.scenario.measurements, m.scenario.max_context_size)
        try:
            find_extension(m, target, limit=limit)
        except InstanceTooLarge:
            continue
        out.append(m)
    return out


@pytest.mark.parametrize("model", _small_search(random_boolean_models(14, 60), 2 ** 14),
                         ids=lambda m: "")
def test_canonical_extension_is_largest(model):
    """Any extension found by brute force has supports inside the canonical candidate."""
    target = power_cover(model.scenario.measurements, model.scenario.max_context_size)
    f = find_extension(model, target)
    report = canonical_extension(model, target)
    if report.ok:
        assert f is not None
    if f is not None:
        assert is_extension(f, possibilistic_collapse(model))
        for c in target:
            assert f.rows[c].support <= report.candidate[c]


def test_unrestricted_search_agrees_on_small_instances():
    checked = 0
    for m in random_boolean_models(15, 80):
        target = power_cover(m.scenario.measurements, m.scenario.max_context_size)
        try:
            wide = find_extension(m, target, restrict_to_consistent=False, limit=2 ** 16)
        except InstanceTooLarge:
            continue
        assert (wide is None) == (find_extension(m, target) is None)
        checked += 1
    assert checked >= 10


def test_trivial_target_equal_to_own_cover():
    e = catalog.load("triangle")
    report = canonical_extension(e, e.scenario.cover)
    assert report.ok and report.model == e
    assert is_extension(report.model, e)
    assert is_strongly_non_extendable(e, e.scenario.cover) == (False, None)
    assert brute_force_extendable(e, e.scenario.cover)
    assert check_submodel_proposition(e, e, e.scenario.cover)


def test_ex_sig_is_not_strongly_non_extendable():
    assert is_strongly_non_extendable(catalog.load("ex-sig"), SIG_TARGET) == (False, None)


def test_chsh_collapse_extends_to_top_cover():
    e = catalog.load("chsh-possibilistic")
    assert brute_force_extendable(e, top_cover(e.scenario.measurements))


@pytest.mark.parametrize("model", random_boolean_models(16, 40), ids=lambda m: "")
def test_brute_force_to_top_cover_matches_logical_contextuality(model):
    target = top_cover(model.scenario.measurements)
    try:
        found = brute_force_extendable(model, target)
    except InstanceTooLarge:
        pytest.skip("more than 20 consistent global assignments")
    assert found == (classify(model) is CC.NON_CONTEXTUAL)


@pytest.mark.parametrize("model", random_boolean_models(17, 40), ids=lambda m: "")
def test_well_defined_extension_keeps_global_sections(model):
    from sheafext.solver import consistent_globals
    target = power_cover(model.scenario.measurements, model.scenario.max_context_size)
    report = canonical_extension(model, target)
    if not report.ok:
        pytest.skip(str(report.status))
    assert consistent_globals(report.model) == consistent_globals(model)


@pytest.mark.parametrize("model", _small_search(random_boolean_models(18, 60), 2 ** 14),
                         ids=lambda m: "")
def test_extensions_found_by_search_satisfy_submodel_proposition(model):
    target = power_cover(model.scenario.measurements, model.scenario.max_context_size)
    f = find_extension(model, target)
    if f is None:
        pytest.skip("no extension")
    assert check_submodel_proposition(model, f, target)
