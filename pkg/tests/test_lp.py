from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheafext.errors import InstanceTooLarge
from sheafext.lp import enumerate_feasibility, phase_one, row_reduce, solve_affine, verify_farkas


def residual_ok(a, b, x):
    return all(sum(F(r[j]) * x[j] for j in range(len(x))) == bi for r, bi in zip(a, b))


def test_feasible_system():
    a = [[1, 1, 0], [0, 1, 1]]
    b = [1, 1]
    res = phase_one(a, b)
    assert res.feasible
    assert all(v >= 0 for v in res.solution) and residual_ok(a, b, res.solution)


def test_infeasible_system_has_farkas_certificate():
    # x1 + x2 = 1 and x1 + x2 = 2
    a = [[1, 1], [1, 1]]
    b = [1, 2]
    res = phase_one(a, b)
    assert not res.feasible
    assert verify_farkas(a, b, res.certificate)


def test_negative_right_hand_side():
    a = [[1, -1]]
    b = [-3]
    res = phase_one(a, b)
    assert res.feasible and residual_ok(a, b, res.solution)
    res = phase_one([[1, 1]], [-1])
    assert not res.feasible and verify_farkas([[1, 1]], [-1], res.certificate)


def test_verify_farkas_rejects_bad_multipliers():
    assert not verify_farkas([[1, 1]], [1], [1])
    assert not verify_farkas([[1, -1]], [-1], [1])
    assert not verify_farkas([[1]], [1], [1, 2])


def test_row_reduce_detects_inconsistency():
    rows, pivots, consistent = row_reduce([[1, 2], [2, 4]], [1, 3])
    assert not consistent
    rows, pivots, consistent = row_reduce([[1, 2], [2, 4]], [1, 2])
    assert consistent and len(rows) == 1 and pivots == [0]


def test_solve_affine_allows_negative_entries():
    x = solve_affine([[1, 1]], [F(-1, 2)])
    assert x is not None and sum(x) == F(-1, 2)
    assert solve_affine([[0, 0]], [1]) is None


def test_basis_enumeration_cap():
    a = [[1] * 40, [i % 2 for i in range(40)], [i % 3 == 0 for i in range(40)]]
    with pytest.raises(InstanceTooLarge):
        enumerate_feasibility([[int(v) for v in r] for r in a] * 1, [1, 0, 0], max_bases=10)


small_ints = st.integers(min_value=-3, max_value=3)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m),
            st.lists(small_ints, min_size=m, max_size=m)))))
def test_simplex_agrees_with_basis_enumeration(system):
    a, b = system
    res = phase_one(a, b)
    oracle = enumerate_feasibility(a, b)
    assert res.feasible == (oracle is not None)
    if res.feasible:
        assert all(v >= 0 for v in res.solution) and residual_ok(a, b, res.solution)
    else:
        assert verify_farkas(a, b, res.certificate)
