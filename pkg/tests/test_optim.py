import math

import numpy as np
import pytest

from actionrdc.optim import (
    BudgetExhaustedError,
    SearchConfig,
    SearchResult,
    blahut_arimoto_capacity_cost,
    blahut_arimoto_rd,
    golden_section,
    grid_search_conditional,
)
from actionrdc.probcore import Alphabet, Channel, CostFn, DistortionFn, Pmf, binary_alphabet, binary_entropy

B = binary_alphabet()


def H(arr):
    arr = np.asarray(arr, dtype=float).ravel()
    pos = arr[arr > 0]
    return float(-(pos * np.log2(pos)).sum())


def switching_identity_objective(ch):
    """I(X;A) + max_j H(X | Y_j, A) for X ~ Bern(1/2), Y = X, and an
    action choosing which of two decoders observes Y."""
    T = ch.table
    px = np.array([0.5, 0.5])
    joint = px[:, None] * T
    pa = joint.sum(axis=0)
    mi = H(px) + H(pa) - H(joint)
    terms = []
    for j in range(2):
        other = 1 - j
        if pa[other] > 0:
            terms.append(pa[other] * H(joint[:, other] / pa[other]))
        else:
            terms.append(0.0)
    return mi + max(terms)


def schannel_cost_objective_and_constraint(budget):
    px = np.array([0.5, 0.5])
    W = np.array([[0.2, 0.8], [0.0, 1.0]])

    def objective(ch):
        T = ch.table
        joint_xa = px[:, None] * T
        pa = joint_xa.sum(axis=0)
        mi = H(px) + H(pa) - H(joint_xa)
        terms = []
        for j in range(2):
            seen = pa[j]
            blind = pa[1 - j]
            h = 0.0
            if seen > 0:
                cond_xy = (joint_xa[:, j] / seen)[:, None] * W
                h += seen * (H(cond_xy) - H(cond_xy.sum(axis=0)))
            if blind > 0:
                h += blind * H(joint_xa[:, 1 - j] / blind)
            terms.append(h)
        return mi + max(terms)

    def constraint(ch):
        return float(0.5 * (ch.table[0, 0] + ch.table[1, 0])) <= budget + 1e-12

    return objective, constraint


def test_linear_objective_hits_vertex():
    c = np.array([0.3, 0.1, 0.7])
    res = grid_search_conditional(
        lambda ch: float(c @ ch.table[0]), (1, 3), cfg=SearchConfig(grid_resolution=11)
    )
    assert res.feasible
    assert res.value == pytest.approx(0.1, abs=1e-12)
    assert np.allclose(res.argmin.table, [[0.0, 1.0, 0.0]])


def test_switching_setting_prefers_uniform_independent_action():
    res = grid_search_conditional(switching_identity_objective, (2, 2))
    assert res.feasible
    assert res.value == pytest.approx(0.5, abs=1e-9)
    assert np.allclose(res.argmin.table, 0.5, atol=1e-9)


def test_schannel_cost_constrained_search_matches_reported_optimum():
    objective, constraint = schannel_cost_objective_and_constraint(0.4)
    res = grid_search_conditional(objective, (2, 2), constraints=[constraint])
    assert res.feasible
    assert res.value <= 0.9554 + 1e-3
    T = res.argmin.table
    p1 = 0.5 * (T[0, 0] + T[1, 0])
    delta = (T[0, 0] - T[1, 0]) / (4 * p1)
    assert p1 == pytest.approx(0.4, abs=0.02)
    # the landscape is nearly flat in the bias: the reported optimum sits at
    # -0.05 but a full grid drifts to about -0.12 at the same value level,
    # so only the direction of the bias is asserted here
    assert -0.2 <= delta <= -0.01


def test_constraint_rejection_yields_infeasible_result():
    res = grid_search_conditional(
        lambda ch: 0.0, (1, 2), constraints=[lambda ch: False], cfg=SearchConfig(grid_resolution=5)
    )
    assert not res.feasible
    assert res.argmin is None
    assert res.evals == 0
    assert math.isinf(res.value)


def test_budget_exhausted_before_first_feasible_point_raises():
    cfg = SearchConfig(grid_resolution=5, max_evals=3)
    with pytest.raises(BudgetExhaustedError):
        grid_search_conditional(lambda ch: math.inf, (1, 3), cfg=cfg)


def test_values_non_increasing_across_refinement_rounds():
    target = 0.313

    def objective(ch):
        return (ch.table[0, 0] - target) ** 2

    values = []
    for rounds in range(4):
        cfg = SearchConfig(grid_resolution=5, refinement_rounds=rounds)
        values.append(grid_search_conditional(objective, (1, 2), cfg=cfg).value)
    assert all(values[i + 1] <= values[i] + 1e-15 for i in range(3))
    assert values[3] < values[0]


def test_identical_config_is_bit_identical(monkeypatch):
    objective, constraint = schannel_cost_objective_and_constraint(0.5)
    cfg = SearchConfig(grid_resolution=9, refinement_rounds=2)
    first = grid_search_conditional(objective, (2, 2), constraints=[constraint], cfg=cfg)
    second = grid_search_conditional(objective, (2, 2), constraints=[constraint], cfg=cfg)
    monkeypatch.setenv("ACTION_RDC_THREADS", "3")
    third = grid_search_conditional(objective, (2, 2), constraints=[constraint], cfg=cfg)
    for other in (second, third):
        assert other.value == first.value
        assert np.array_equal(other.argmin.table, first.argmin.table)
        assert other.evals == first.evals


def test_golden_section_quadratic_and_kink():
    x, v = golden_section(lambda t: (t - 0.3) ** 2, (0.0, 1.0))
    assert x == pytest.approx(0.3, abs=1e-6)
    assert v == pytest.approx(0.0, abs=1e-12)
    x, _ = golden_section(lambda t: abs(t - 0.25), (0.0, 1.0))
    assert x == pytest.approx(0.25, abs=1e-6)
    x, v = golden_section(lambda t: max(t, 1 - t), (0.0, 1.0))
    assert x == pytest.approx(0.5, abs=1e-6)
    assert v == pytest.approx(0.5, abs=1e-6)
    with pytest.raises(ValueError):
        golden_section(lambda t: t, (1.0, 0.0))


def test_rd_known_binary_values():
    half = Pmf(B, [0.5, 0.5])
    ham = DistortionFn(B, B, [[0.0, 1.0], [1.0, 0.0]])
    assert blahut_arimoto_rd(half, ham, 0.11) == pytest.approx(1 - binary_entropy(0.11), abs=1e-3)
    assert blahut_arimoto_rd(half, ham, 0.5) == 0.0
    quarter = Pmf(B, [0.75, 0.25])
    expected = binary_entropy(0.25) - binary_entropy(0.05)
    assert blahut_arimoto_rd(quarter, ham, 0.05) == pytest.approx(expected, abs=1e-3)


def test_rd_rejects_distortion_below_floor():
    half = Pmf(B, [0.5, 0.5])
    lifted = DistortionFn(B, B, [[0.2, 1.0], [1.0, 0.2]])
    with pytest.raises(ValueError):
        blahut_arimoto_rd(half, lifted, 0.1)
    assert blahut_arimoto_rd(half, lifted, 0.25) > 0.0


def test_rd_lagrangian_trace_monotone():
    quarter = Pmf(B, [0.75, 0.25])
    ham = DistortionFn(B, B, [[0.0, 1.0], [1.0, 0.0]])
    _, info = blahut_arimoto_rd(quarter, ham, 0.1, full_output=True)
    trace = np.asarray(info["trace_bits"])
    assert len(trace) >= 2
    assert np.all(np.diff(trace) <= 1e-12)


def test_rd_matches_grid_search_on_random_binary_sources():
    rng = np.random.default_rng(23)
    ham = DistortionFn(B, B, [[0.0, 1.0], [1.0, 0.0]])
    for _ in range(3):
        q = float(rng.uniform(0.2, 0.8))
        src = Pmf(B, [1 - q, q])
        d_zero = min(q, 1 - q)
        D = float(rng.uniform(0.15, 0.85)) * d_zero
        px = np.array([1 - q, q])

        def objective(ch):
            joint = px[:, None] * ch.table
            return H(px) + H(joint.sum(axis=0)) - H(joint)

        def within_budget(ch):
            joint = px[:, None] * ch.table
            return float((joint * ham.d).sum()) <= D + 1e-12

        cfg = SearchConfig(grid_resolution=101)
        grid_val = grid_search_conditional(objective, (2, 2), constraints=[within_budget], cfg=cfg).value
        ba_val = blahut_arimoto_rd(src, ham, D)
        assert grid_val >= ba_val - 1e-6
        assert ba_val == pytest.approx(grid_val, abs=2e-3)


def bsc(eps):
    return Channel(("a",), (B,), ("y",), (B,), [[1 - eps, eps], [eps, 1 - eps]])


def test_capacity_cost_bsc_and_edge_cases():
    free = CostFn(B, [0.0, 0.0])
    cap = blahut_arimoto_capacity_cost(bsc(0.1), free, 1.0)
    assert cap == pytest.approx(1 - binary_entropy(0.1), abs=1e-3)

    useless = Channel(("a",), (B,), ("y",), (B,), [[0.5, 0.5], [0.5, 0.5]])
    assert blahut_arimoto_capacity_cost(useless, free, 1.0) == pytest.approx(0.0, abs=1e-9)

    pinned = CostFn(B, [0.0, 1.0])
    assert blahut_arimoto_capacity_cost(bsc(0.1), pinned, 0.0) == pytest.approx(0.0, abs=1e-9)

    with pytest.raises(ValueError):
        blahut_arimoto_capacity_cost(bsc(0.1), CostFn(B, [2.0, 3.0]), 1.0)


def test_capacity_cost_interpolates_between_pinned_and_free():
    pinned = CostFn(B, [0.0, 1.0])
    caps = [blahut_arimoto_capacity_cost(bsc(0.1), pinned, c) for c in (0.0, 0.1, 0.3, 0.5, 1.0)]
    assert all(caps[i] <= caps[i + 1] + 1e-9 for i in range(len(caps) - 1))
    assert caps[-1] == pytest.approx(1 - binary_entropy(0.1), abs=1e-3)
    # with the uniform-cost budget at 1/2 the unconstrained optimum is feasible
    assert caps[3] == pytest.approx(caps[-1], abs=1e-6)


def test_capacity_trace_monotone_and_forbidden_inputs():
    tri = Alphabet(("0", "1", "2"))
    table = np.array([[0.9, 0.1], [0.1, 0.9], [0.5, 0.5]])
    ch = Channel(("a",), (tri,), ("y",), (B,), table)
    cost = CostFn(tri, [0.0, 1.0, np.inf])
    cap, info = blahut_arimoto_capacity_cost(ch, cost, 0.2, full_output=True)
    trace = np.asarray(info["trace_bits"])
    assert np.all(np.diff(trace) >= -1e-12)
    assert info["input_pmf"][2] == 0.0
    assert info["expected_cost"] <= 0.2 + 1e-9
    assert 0.0 < cap < 1 - binary_entropy(0.1)


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(grid_resolution=1)
    with pytest.raises(ValueError):
        SearchConfig(refinement_shrink=1.0)
    with pytest.raises(ValueError):
        SearchConfig(max_evals=0)
