import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import EXAMPLE_L_FULL, EXAMPLE_L_PARTIAL, EXAMPLE_L_POTENTIAL
from msmrta.capability import CapabilityMatrices, InvalidInputError, missing_cap, reqment_analysis


def as_lists(rows):
    return [list(r) for r in rows]


def test_example_lists(example_mats):
    res, inter = reqment_analysis(example_mats)
    assert as_lists(res.l_full) == EXAMPLE_L_FULL
    assert as_lists(res.l_partial) == EXAMPLE_L_PARTIAL
    assert [[list(x) for x in row] for row in res.l_potential] == EXAMPLE_L_POTENTIAL
    assert inter.S.tolist() == [2] * 10


def test_example_unavailable(example_mats):
    res, _ = reqment_analysis(example_mats)
    assert missing_cap(example_mats, res) == [(2, 5), (5, 5)]


def test_example_runtime_under_10ms(example_mats):
    t0 = time.perf_counter()
    res, _ = reqment_analysis(example_mats)
    missing_cap(example_mats, res)
    assert time.perf_counter() - t0 < 0.01


def test_single_robot_covers_everything():
    mats = CapabilityMatrices.from_vectors([[1, 1, 0], [0, 0, 1]], [[1, 1, 1]])
    res, _ = reqment_analysis(mats)
    assert res.l_full == ((0, 1),) and res.l_partial == ((),)
    assert missing_cap(mats, res) == []


def test_fleet_without_capability_marks_all_unavailable():
    mats = CapabilityMatrices.from_vectors([[1, 0], [1, 1]], [[0, 0], [0, 0]])
    res, _ = reqment_analysis(mats)
    assert missing_cap(mats, res) == [(0, 0), (1, 0), (1, 1)]
    assert res.l_full == ((), ()) and res.l_partial == ((), ())


def test_rejects_shape_mismatch_and_non_binary():
    with pytest.raises(InvalidInputError):
        CapabilityMatrices(np.ones((2, 3)), np.ones((4, 2)))
    with pytest.raises(InvalidInputError):
        CapabilityMatrices(np.full((2, 3), 2), np.ones((3, 2)))


def test_rejects_victim_without_requirements():
    with pytest.raises(InvalidInputError):
        reqment_analysis(CapabilityMatrices.from_vectors([[0, 0]], [[1, 1]]))


binary = st.integers(1, 6).flatmap(lambda nr: st.tuples(
    arrays(np.int64, st.tuples(st.integers(1, 8), st.just(nr)), elements=st.integers(0, 1)),
    arrays(np.int64, st.tuples(st.just(nr), st.integers(1, 5)), elements=st.integers(0, 1)),
))


@given(binary)
def test_lists_partition_by_coverage(qp):
    Q, P = qp
    Q[Q.sum(axis=1) == 0, 0] = 1
    mats = CapabilityMatrices(Q, P)
    res, inter = reqment_analysis(mats)
    for r in range(mats.n_robots):
        full, part = set(res.l_full[r]), set(res.l_partial[r])
        assert not full & part
        for v in range(mats.n_victims):
            covered = int((Q[v] & P[:, r]).sum())
            assert inter.U[v, r] == covered
            assert (v in full) == (covered == Q[v].sum())
            assert (v in part) == (0 < covered < Q[v].sum())
    for v in range(mats.n_victims):
        for j in range(mats.n_req):
            expect = [r for r in range(mats.n_robots) if Q[v, j] and P[j, r]]
            assert list(res.l_potential[v][j]) == expect
    assert missing_cap(mats, res) == [
        (v, j) for v in range(mats.n_victims) for j in range(mats.n_req) if Q[v, j] and not P[j].any()]
