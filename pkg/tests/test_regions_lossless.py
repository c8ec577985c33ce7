import numpy as np
import pytest

from actionrdc.optim import SearchConfig
from actionrdc.probcore import (
    Alphabet,
    Channel,
    CostFn,
    JointPmf,
    Pmf,
    binary_alphabet,
    conditional_entropy,
    mutual_information,
)
from actionrdc.regions import (
    ActionModel,
    SwitchingModel,
    four_state_switching_rate,
    lossless_decoder_actions_rate,
    schannel_curve,
    schannel_rate,
    switching_lossless_rate,
)

B = binary_alphabet()


def schannel_joint():
    return JointPmf(("x", "y"), (B, B), [[0.1, 0.4], [0.0, 0.5]])


def equal_joint():
    return JointPmf(("x", "y"), (B, B), [[0.5, 0.0], [0.0, 0.5]])


def uniform_source():
    return Pmf(B, [0.5, 0.5])


def no_side_info_model(n_actions=1):
    acts = Alphabet(tuple(str(i) for i in range(n_actions)))
    table = np.ones((2, n_actions, 1))
    ch = Channel(("x", "a"), (B, acts), ("y1",), (Alphabet(("*",)),), table)
    return ActionModel(acts, CostFn(acts, [0.0] * n_actions), ch)


class TestDecoderActionsLossless:
    def test_no_side_info_gives_source_entropy(self):
        pt = lossless_decoder_actions_rate(uniform_source(), no_side_info_model(), 1.0)
        assert pt.rate == pytest.approx(1.0, abs=1e-9)

    def test_perfect_side_info_gives_zero(self):
        # every decoder always sees X itself
        acts = Alphabet(("0",))
        table = np.zeros((2, 1, 2))
        table[0, 0, 0] = 1.0
        table[1, 0, 1] = 1.0
        ch = Channel(("x", "a"), (B, acts), ("y1",), (B,), table)
        model = ActionModel(acts, CostFn(acts, [0.0]), ch)
        pt = lossless_decoder_actions_rate(uniform_source(), model, 1.0)
        assert pt.rate == pytest.approx(0.0, abs=1e-9)

    def test_matches_switching_closed_form(self):
        model = SwitchingModel(schannel_joint(), K=2).to_action_model()
        pt = lossless_decoder_actions_rate(
            uniform_source(), model, budget=10.0, cfg=SearchConfig(grid_resolution=21)
        )
        closed = switching_lossless_rate(schannel_joint(), 2)
        assert pt.rate == pytest.approx(closed.rate, abs=1e-6)
        assert closed.rate <= pt.rate + 1e-9

    def test_duplicated_decoder_equals_single(self):
        # two decoders fed byte-identical observations add nothing
        acts = Alphabet(("0", "1"))
        base = np.zeros((2, 2, 2))
        base[:, 0, :] = [[0.9, 0.1], [0.1, 0.9]]
        base[:, 1, :] = [[0.6, 0.4], [0.4, 0.6]]
        dup = np.einsum("xay,yz->xayz", base, np.eye(2))
        ch1 = Channel(("x", "a"), (B, acts), ("y1",), (B,), base)
        ch2 = Channel(("x", "a"), (B, acts), ("y1", "y2"), (B, B), dup)
        cost = CostFn(acts, [0.0, 1.0])
        single = ActionModel(acts, cost, ch1)
        double = ActionModel(acts, cost, ch2)
        cfg = SearchConfig(grid_resolution=13)
        src = Pmf(B, [0.3, 0.7])
        a = lossless_decoder_actions_rate(src, single, 0.5, cfg)
        b = lossless_decoder_actions_rate(src, double, 0.5, cfg)
        assert b.rate == pytest.approx(a.rate, abs=1e-12)

    def test_infeasible_budget_raises(self):
        acts = Alphabet(("0",))
        ch = Channel(("x", "a"), (B, acts), ("y1",), (Alphabet(("*",)),), np.ones((2, 1, 1)))
        model = ActionModel(acts, CostFn(acts, [2.0]), ch)
        with pytest.raises(ValueError, match="cost"):
            lossless_decoder_actions_rate(uniform_source(), model, budget=1.0)


class TestSwitchingClosedForm:
    def test_identical_source_two_decoders(self):
        pt = switching_lossless_rate(equal_joint(), 2)
        assert pt.rate == pytest.approx(0.5, abs=1e-12)

    def test_single_decoder_is_conditional_entropy(self):
        j = schannel_joint()
        pt = switching_lossless_rate(j, 1)
        assert pt.rate == pytest.approx(conditional_entropy(j, "x", "y"), abs=1e-12)

    def test_asymmetric_channel_value(self):
        # H(X|Y) + I(X;Y)/2 for the asymmetric example joint
        pt = switching_lossless_rate(schannel_joint(), 2)
        assert pt.rate == pytest.approx(0.9459842269271999, abs=1e-9)

    def test_k_grows_toward_source_entropy(self):
        j = schannel_joint()
        rates = [switching_lossless_rate(j, k).rate for k in (1, 2, 4, 8, 100)]
        assert all(b > a for a, b in zip(rates, rates[1:]))
        hx = conditional_entropy(j, "x", "y") + mutual_information(j, "x", "y")
        assert rates[-1] < hx <= rates[-1] + mutual_information(j, "x", "y") / 100 + 1e-12

    def test_matches_random_policy_searches(self):
        rng = np.random.default_rng(7)
        cfg = SearchConfig(grid_resolution=17)
        for size in (2, 2, 3):
            table = rng.random((size, size)) + 0.05
            table /= table.sum()
            names = tuple(str(i) for i in range(size))
            j = JointPmf(("x", "y"), (Alphabet(names), Alphabet(names)), table)
            model = SwitchingModel(j, K=2).to_action_model()
            src = Pmf(Alphabet(names), table.sum(axis=1))
            searched = lossless_decoder_actions_rate(src, model, budget=10.0, cfg=cfg)
            closed = switching_lossless_rate(j, 2)
            assert closed.rate <= searched.rate + 1e-9
            assert searched.rate == pytest.approx(closed.rate, abs=5e-3)


class TestFourStateSwitch:
    def test_free_states_one_two_reduce_to_switch(self):
        j = schannel_joint()
        pt = four_state_switching_rate(
            j, costs=(np.inf, 0.0, 0.0, np.inf), budget=1.0, cfg=SearchConfig(grid_resolution=7)
        )
        closed = switching_lossless_rate(j, 2)
        assert pt.rate == pytest.approx(closed.rate, abs=1e-6)

    def test_both_see_y_state_gives_conditional_entropy(self):
        j = schannel_joint()
        pt = four_state_switching_rate(
            j, costs=(np.inf, np.inf, np.inf, 0.0), budget=1.0, cfg=SearchConfig(grid_resolution=7)
        )
        assert pt.rate == pytest.approx(conditional_entropy(j, "x", "y"), abs=1e-9)

    def test_matches_free_tilt_curve_point(self):
        # states 1 and 2 only, state-1 cost 1, budget 0.4: the optimum over
        # p(a|x) should land on the free-tilt curve value at that budget
        j = schannel_joint()
        pt = four_state_switching_rate(
            j, costs=(np.inf, 1.0, 0.0, np.inf), budget=0.4, cfg=SearchConfig(grid_resolution=11)
        )
        assert pt.rate <= 0.9554 + 1e-3
        assert pt.rate == pytest.approx(0.9545623, abs=1e-3)
        assert pt.cost <= 0.4 + 1e-12

    def test_infeasible_costs_raise(self):
        with pytest.raises(ValueError, match="cost"):
            four_state_switching_rate(schannel_joint(), costs=(2, 2, 2, 2), budget=1.0)


class TestSchannelExample:
    def test_zero_tilt_value(self):
        assert schannel_rate(0.4, 0.0) == pytest.approx(0.9568, abs=1e-4)
        assert schannel_rate(0.4, 0.0) == pytest.approx(0.95678738154176, abs=1e-10)

    def test_tilted_value(self):
        assert schannel_rate(0.4, -0.05) == pytest.approx(0.9554, abs=1e-4)
        assert schannel_rate(0.4, -0.05) == pytest.approx(0.9553591302540839, abs=1e-10)

    def test_tilt_out_of_range_raises(self):
        with pytest.raises(ValueError, match="admissible"):
            schannel_rate(0.8, 0.3)
        with pytest.raises(ValueError, match="p1"):
            schannel_rate(1.2, 0.0)

    def test_degenerate_bias_needs_no_tilt(self):
        assert schannel_rate(0.0, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_curve_monotone_and_tilt_helps(self):
        budgets = [0.02, 0.1, 0.2, 0.3, 0.4, 0.5]
        curve = schannel_curve(budgets, resolution=41)
        free = [row[1] for row in curve]
        pinned = [row[2] for row in curve]
        assert all(b <= a + 1e-12 for a, b in zip(free, free[1:]))
        assert all(b <= a + 1e-12 for a, b in zip(pinned, pinned[1:]))
        assert all(f <= p + 1e-12 for f, p in zip(free, pinned))
        # a source-dependent action strictly beats the independent one here
        at_04 = curve[budgets.index(0.4)]
        assert at_04[2] - at_04[1] > 1e-4

    def test_curve_approaches_source_entropy_at_zero_budget(self):
        (c, v, v0), = schannel_curve([0.0], resolution=11)
        assert v == pytest.approx(1.0, abs=1e-12)
        assert v0 == pytest.approx(1.0, abs=1e-12)

    def test_half_budget_reaches_switching_optimum(self):
        (_, v, v0), = schannel_curve([0.5], resolution=41)
        closed = switching_lossless_rate(schannel_joint(), 2)
        assert v == pytest.approx(closed.rate, abs=2e-3)
        assert v0 == pytest.approx(closed.rate, abs=2e-3)

    def test_negative_budget_raises(self):
        with pytest.raises(ValueError, match="budget"):
            schannel_curve([-0.1])
