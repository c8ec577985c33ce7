import numpy as np
import pytest

from actionrdc.optim import SearchConfig, blahut_arimoto_rd
from actionrdc.probcore import (
    Alphabet,
    Channel,
    CostFn,
    JointPmf,
    Pmf,
    binary_alphabet,
    hamming_distortion,
)
from actionrdc.regions import (
    ActionModel,
    binary_switching_lossy_rate,
    binary_switching_lossy_surface,
    causal_lossy_rate,
    hb_kaspi_eval,
    hb_kaspi_search,
    layered_lossy_eval,
    layered_lossy_search,
    switching_lossy_rate,
    validate_degraded_side_info,
)

B = binary_alphabet()
TRIV = Alphabet(("*",))


def uniform_source():
    return Pmf(B, [0.5, 0.5])


def no_side_info_model():
    acts = Alphabet(("0",))
    ch = Channel(("x", "a"), (B, acts), ("y1",), (TRIV,), np.ones((2, 1, 1)))
    return ActionModel(acts, CostFn(acts, [0.0]), ch)


def degraded_model(p1=0.1, p2=0.2):
    """Y1 = X through a BSC(p1), Y2 = Y1 through a further BSC(p2)."""
    acts = Alphabet(("0",))
    W = np.zeros((2, 1, 2, 2))
    for x in range(2):
        for y1 in range(2):
            q1 = 1 - p1 if y1 == x else p1
            for y2 in range(2):
                q2 = 1 - p2 if y2 == y1 else p2
                W[x, 0, y1, y2] = q1 * q2
    ch = Channel(("x", "a"), (B, acts), ("y1", "y2"), (B, B), W)
    return ActionModel(acts, CostFn(acts, [0.0]), ch)


class TestCausalLossy:
    def test_reduces_to_classical_rate_distortion(self):
        pt = causal_lossy_rate(
            uniform_source(),
            no_side_info_model(),
            targets=[0.11],
            budget=1.0,
            cfg=SearchConfig(grid_resolution=13),
            u_size=3,
        )
        oracle = blahut_arimoto_rd(uniform_source(), hamming_distortion(B), 0.11)
        assert pt.rate == pytest.approx(oracle, abs=5e-3)
        assert oracle <= pt.rate + 1e-9
        assert pt.distortions[0] <= 0.11 + 1e-12

    def test_half_distortion_is_free(self):
        pt = causal_lossy_rate(
            uniform_source(),
            no_side_info_model(),
            targets=[0.5],
            budget=1.0,
            cfg=SearchConfig(grid_resolution=5),
            u_size=2,
        )
        assert pt.rate == pytest.approx(0.0, abs=1e-12)

    def test_monotone_in_distortion_target(self):
        cfg = SearchConfig(grid_resolution=9)
        rates = [
            causal_lossy_rate(
                uniform_source(), no_side_info_model(), [d], 1.0, cfg=cfg, u_size=2
            ).rate
            for d in (0.05, 0.1, 0.2, 0.35, 0.5)
        ]
        assert all(b <= a + 1e-12 for a, b in zip(rates, rates[1:]))

    def test_unreachable_distortion_raises(self):
        with pytest.raises(ValueError, match="no policy"):
            causal_lossy_rate(
                uniform_source(),
                no_side_info_model(),
                targets=[-0.2],
                budget=1.0,
                cfg=SearchConfig(grid_resolution=5),
                u_size=2,
            )

    def test_action_map_explosion_is_reported(self):
        acts = Alphabet(tuple("abcd"))
        W = np.ones((2, 4, 1))
        ch = Channel(("x", "a"), (B, acts), ("y1",), (TRIV,), W)
        model = ActionModel(acts, CostFn(acts, [0.0] * 4), ch)
        with pytest.raises(ValueError, match="u_size"):
            causal_lossy_rate(uniform_source(), model, [0.1], 1.0, u_size=10)


def constant_aux_tables(model):
    n_x = 2
    n_a = len(model.actions)
    Ta = np.ones((n_x, n_a)) / n_a
    Tu = np.ones((n_x, n_a, 1))
    Tv = np.ones((n_x, n_a, 1, 1))
    return Ta, Tu, Tv


class TestLayeredEval:
    def test_all_constant_gives_zero_rate_and_constant_recon_distortion(self):
        model = degraded_model()
        Ta, Tu, Tv = constant_aux_tables(model)
        rec1 = np.zeros((1, 1, 1, 2), dtype=int)
        rec2 = np.zeros((1, 1, 1, 2), dtype=int)
        pt = layered_lossy_eval(uniform_source(), model, Ta, Tu, Tv, Tv, rec1, rec2)
        assert pt.rate == pytest.approx(0.0, abs=1e-12)
        assert pt.distortions[0] == pytest.approx(0.5, abs=1e-12)
        assert pt.distortions[1] == pytest.approx(0.5, abs=1e-12)

    def test_invalid_table_rejected(self):
        model = degraded_model()
        Ta, Tu, Tv = constant_aux_tables(model)
        bad = Tu.copy()
        bad[0, 0, 0] = 0.7
        rec = np.zeros((1, 1, 1, 2), dtype=int)
        with pytest.raises(ValueError, match="sum to 1"):
            layered_lossy_eval(uniform_source(), model, Ta, bad, Tv, Tv, rec, rec)

    def test_collapsed_refinement_matches_two_layer_eval(self):
        # with the second refinement constant, the layered rate must agree
        # with the two-layer expression under degraded side information
        model = degraded_model()
        Ta = np.ones((2, 1))
        Tu = np.zeros((2, 1, 2))
        Tu[0, 0] = [0.9, 0.1]
        Tu[1, 0] = [0.15, 0.85]
        Tv1 = np.zeros((2, 1, 2, 2))
        Tv1[0, 0] = [[0.8, 0.2], [0.3, 0.7]]
        Tv1[1, 0] = [[0.6, 0.4], [0.25, 0.75]]
        Tv2 = np.ones((2, 1, 2, 1))
        rec1 = np.zeros((2, 2, 1, 2), dtype=int)
        rec1[:, :, 0, :] = np.arange(2)[None, None, :]
        rec2_l = np.zeros((2, 1, 1, 2), dtype=int)
        rec2_l[:, 0, 0, :] = np.arange(2)[None, :]
        lay = layered_lossy_eval(uniform_source(), model, Ta, Tu, Tv1, Tv2, rec1, rec2_l)
        hb = hb_kaspi_eval(
            uniform_source(), model, Ta, Tu, Tv1, rec1, rec2_l[:, 0, :, :]
        )
        assert lay.rate == pytest.approx(hb.rate, abs=1e-12)
        assert lay.distortions[0] == pytest.approx(hb.distortions[0], abs=1e-12)
        assert lay.distortions[1] == pytest.approx(hb.distortions[1], abs=1e-12)


class TestLayeredSearch:
    def test_matches_two_layer_search_with_collapsed_refinement(self):
        model = degraded_model()
        cfg = SearchConfig(grid_resolution=7)
        hb = hb_kaspi_search(
            uniform_source(), model, 0.05, 0.3, budget=1.0, cfg=cfg, u_size=2, v1_size=2
        )
        lay = layered_lossy_search(
            uniform_source(), model, 0.05, 0.3, budget=1.0, cfg=cfg,
            u_size=2, v1_size=2, v2_size=1,
        )
        assert lay.rate == pytest.approx(hb.rate, abs=1e-9)

    def test_infeasible_targets_raise(self):
        model = degraded_model()
        with pytest.raises(ValueError, match="no layered scheme"):
            layered_lossy_search(
                uniform_source(), model, -0.1, 0.3, budget=1.0,
                cfg=SearchConfig(grid_resolution=3), u_size=1, v1_size=1, v2_size=1,
            )


class TestHeegardBergerKaspi:
    def test_max_distortion_is_free(self):
        pt = hb_kaspi_search(
            uniform_source(), degraded_model(), 0.5, 0.5, budget=1.0,
            cfg=SearchConfig(grid_resolution=5), u_size=2, v1_size=2,
        )
        assert pt.rate == pytest.approx(0.0, abs=1e-12)

    def test_identical_observations_collapse_to_single_decoder(self):
        # Y2 a verbatim copy of Y1: the layered search with both refinement
        # layers merged must find the same value
        acts = Alphabet(("0",))
        W = np.zeros((2, 1, 2, 2))
        for x in range(2):
            for y in range(2):
                W[x, 0, y, y] = 0.85 if y == x else 0.15
        ch = Channel(("x", "a"), (B, acts), ("y1", "y2"), (B, B), W)
        model = ActionModel(acts, CostFn(acts, [0.0]), ch)
        validate_degraded_side_info(model)
        cfg = SearchConfig(grid_resolution=7)
        hb = hb_kaspi_search(uniform_source(), model, 0.1, 0.25, 1.0, cfg, u_size=2, v1_size=2)
        lay = layered_lossy_search(
            uniform_source(), model, 0.1, 0.25, 1.0, cfg, u_size=2, v1_size=2, v2_size=1
        )
        assert hb.rate == pytest.approx(lay.rate, abs=1e-9)

    def test_markov_violation_rejected(self):
        # conditionally independent observations are not degraded
        acts = Alphabet(("0",))
        W = np.zeros((2, 1, 2, 2))
        for x in range(2):
            for y1 in range(2):
                for y2 in range(2):
                    q1 = 0.9 if y1 == x else 0.1
                    q2 = 0.8 if y2 == x else 0.2
                    W[x, 0, y1, y2] = q1 * q2
        ch = Channel(("x", "a"), (B, acts), ("y1", "y2"), (B, B), W)
        model = ActionModel(acts, CostFn(acts, [0.0]), ch)
        with pytest.raises(ValueError, match="not degraded"):
            hb_kaspi_search(uniform_source(), model, 0.1, 0.2, 1.0)

    def test_eval_matches_search_at_argmin(self):
        model = degraded_model()
        pt = hb_kaspi_search(
            uniform_source(), model, 0.05, 0.3, budget=1.0,
            cfg=SearchConfig(grid_resolution=7), u_size=2, v1_size=2,
        )
        pol = pt.achieving["stacked_policy"]
        marg_a = pol.sum(axis=(2, 3))
        p_u = pol.sum(axis=3) / np.where(marg_a > 0, marg_a, 1.0)[:, :, None]
        mass_u = pol.sum(axis=3)
        p_v1 = pol / np.where(mass_u > 0, mass_u, 1.0)[:, :, :, None]
        ev = hb_kaspi_eval(
            uniform_source(), model, marg_a, p_u, p_v1,
            pt.achieving["recon1"], pt.achieving["recon2"],
        )
        assert ev.rate == pytest.approx(pt.rate, abs=1e-9)
        assert ev.distortions[0] == pytest.approx(pt.distortions[0], abs=1e-9)


def prop2_action_model():
    """Explicit channel for the perfect switch over a correlated pair:
    the favored decoder sees the source symbol, the other sees Y."""
    y_alpha = Alphabet(("y0", "y1"))
    out = Alphabet(("0", "1", "y0", "y1"))
    acts = Alphabet(("1", "2"))
    pxy = np.array([[0.4, 0.1], [0.1, 0.4]])
    py_x = pxy / pxy.sum(axis=1, keepdims=True)
    W = np.zeros((2, 2, 4, 4))
    for x in range(2):
        for y in range(2):
            W[x, 0, x, 2 + y] = py_x[x, y]  # A=1: decoder 1 sees x, decoder 2 sees y
            W[x, 1, 2 + y, x] = py_x[x, y]  # A=2: the roles swap
    ch = Channel(("x", "a"), (B, acts), ("y1", "y2"), (out, out), W)
    return JointPmf(("x", "y"), (B, y_alpha), pxy), ActionModel(acts, CostFn(acts, [0.0, 0.0]), ch)


class TestPerfectSwitchLossy:
    def test_lossless_limit_is_half_entropy(self):
        joint = JointPmf(("x", "y"), (B, TRIV), [[0.5], [0.5]])
        pt = switching_lossy_rate(joint, 0.0, 0.0, budget=1.0, cfg=SearchConfig(grid_resolution=9))
        assert pt.rate == pytest.approx(0.5, abs=1e-6)

    def test_loose_target_kills_its_term(self):
        # decoder 1 tolerates anything: the switch favors decoder 2 and
        # no coded help is needed at all
        joint = JointPmf(("x", "y"), (B, TRIV), [[0.5], [0.5]])
        pt = switching_lossy_rate(joint, 0.5, 0.1, budget=1.0, cfg=SearchConfig(grid_resolution=11))
        assert pt.rate == pytest.approx(0.0, abs=1e-9)
        assert pt.distortions[0] <= 0.5 + 1e-9
        assert pt.distortions[1] <= 0.1 + 1e-9

    def test_matches_binary_closed_form(self):
        joint = JointPmf(("x", "y"), (B, TRIV), [[0.5], [0.5]])
        pt = switching_lossy_rate(joint, 0.1, 0.1, budget=1.0, cfg=SearchConfig(grid_resolution=9))
        closed = binary_switching_lossy_rate(0.1, 0.1)
        assert pt.rate == pytest.approx(closed, abs=5e-3)
        assert closed <= pt.rate + 1e-9

    def test_distortion_must_reach_zero(self):
        joint = JointPmf(("x", "y"), (B, TRIV), [[0.5], [0.5]])
        d_bad = hamming_distortion(B).d + 0.25
        from actionrdc.probcore import DistortionFn

        bad = DistortionFn(B, B, d_bad)
        with pytest.raises(ValueError, match="zero-distortion"):
            switching_lossy_rate(joint, 0.1, 0.1, 1.0, distortions=(bad, bad))

    def test_budget_constraint_binds(self):
        joint = JointPmf(("x", "y"), (B, TRIV), [[0.5], [0.5]])
        pt = switching_lossy_rate(
            joint, 0.05, 0.05, budget=0.25, costs=(1.0, 0.0),
            cfg=SearchConfig(grid_resolution=9),
        )
        assert pt.cost <= 0.25 + 1e-9
        free = switching_lossy_rate(
            joint, 0.05, 0.05, budget=1.0, costs=(1.0, 0.0),
            cfg=SearchConfig(grid_resolution=9),
        )
        assert free.rate <= pt.rate + 1e-9

    def test_rate_expression_matches_layered_glue(self):
        # glue the two per-slice helpers into one auxiliary and check the
        # general layered expression reproduces the switch rate exactly
        joint, model = prop2_action_model()
        pt = switching_lossy_rate(
            joint, 0.15, 0.15, budget=1.0, cfg=SearchConfig(grid_resolution=7), u_size=2
        )
        T = pt.achieving["action_policy"]
        helper1 = pt.achieving["helpers"]["decoder1"]
        helper2 = pt.achieving["helpers"]["decoder2"]
        assert helper1[0] == "search" and helper2[0] == "search"
        p_u = np.zeros((2, 2, 2))
        p_u[:, 0, :] = helper2[1]  # slice A=1 helps decoder 2
        p_u[:, 1, :] = helper1[1]  # slice A=2 helps decoder 1
        Tv = np.ones((2, 2, 2, 1))
        rec = np.zeros((2, 1, 2, 4), dtype=int)
        ev = layered_lossy_eval(uniform_source(), model, T, p_u, Tv, Tv, rec, rec)
        assert ev.rate == pytest.approx(pt.rate, abs=1e-9)


class TestBinarySwitchClosedForm:
    def test_zero_distortion_anchor(self):
        assert binary_switching_lossy_rate(0.0, 0.0) == 0.5

    def test_half_distortion_frees_the_rate(self):
        for d in (0.0, 0.1, 0.3, 0.5):
            assert binary_switching_lossy_rate(0.5, d) == 0.0
            assert binary_switching_lossy_rate(d, 0.5) == 0.0

    def test_quarter_pair_is_free(self):
        assert binary_switching_lossy_rate(0.25, 0.25) == pytest.approx(0.0, abs=1e-6)

    def test_symmetry(self):
        assert binary_switching_lossy_rate(0.05, 0.2) == pytest.approx(
            binary_switching_lossy_rate(0.2, 0.05), abs=1e-12
        )

    def test_monotone_in_each_target(self):
        ds = (0.0, 0.05, 0.1, 0.2, 0.3)
        rates = [binary_switching_lossy_rate(d, 0.1) for d in ds]
        assert all(b <= a + 1e-12 for a, b in zip(rates, rates[1:]))
        rates = [binary_switching_lossy_rate(0.1, d) for d in ds]
        assert all(b <= a + 1e-12 for a, b in zip(rates, rates[1:]))

    def test_domain_validation(self):
        with pytest.raises(ValueError, match="D1"):
            binary_switching_lossy_rate(-0.01, 0.1)
        with pytest.raises(ValueError, match="D2"):
            binary_switching_lossy_rate(0.1, 0.6)

    def test_surface_is_row_major_and_consistent(self):
        d1s = (0.0, 0.2)
        d2s = (0.05, 0.1, 0.3)
        rows = binary_switching_lossy_surface(d1s, d2s)
        assert [(a, b) for a, b, _ in rows] == [(a, b) for a in d1s for b in d2s]
        for a, b, v in rows:
            assert v == pytest.approx(binary_switching_lossy_rate(a, b), abs=1e-12)
