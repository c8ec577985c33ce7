"""Rate-limited action links and successive refinement with actions.

Two boundary settings: a decoder whose action command travels over a
rate-limited link and then a noisy channel, and a two-stage decoder pair
where the refinement stage controls the side-information actions.
"""

import logging

import numpy as np

from ..optim import (
    SearchConfig,
    blahut_arimoto_capacity_cost,
    blahut_arimoto_rd,
    grid_search_conditional,
)
from ..probcore import Channel, CostFn, DistortionFn, Pmf, hamming_distortion
from . import _measures as m
from .models import ActionModel, RatePoint

logger = logging.getLogger("actionrdc.regions.extensions")

SEARCH_LABEL = "achievable upper bound (search)"
CLOSED_LABEL = "closed form"


def rate_limited_action_rate(
    source: Pmf,
    d: DistortionFn,
    D: float,
    action_channel: Channel,
    cost: CostFn,
    budget: float,
    r_a: float,
    cfg: SearchConfig = None,
    mode: str = "decomposed",
) -> RatePoint:
    """Source coding where the decoder's action command is forwarded at
    rate r_a over a noisy channel p(y|a) before the side information Y
    is realized; X is independent of (A, Y).

    mode="decomposed" evaluates [R_X(D) - min(r_a, C(budget))]⁺ with the
    convex oracles; mode="joint" reproduces the same value by nested grid
    search (an independent verification route on small instances).
    """
    if r_a < 0:
        raise ValueError(f"action link rate must be nonnegative, got {r_a}")
    if mode not in ("decomposed", "joint"):
        raise ValueError(f"mode must be 'decomposed' or 'joint', got {mode!r}")

    if mode == "decomposed":
        r_x = blahut_arimoto_rd(source, d, D)
        c_cap, cap_info = blahut_arimoto_capacity_cost(action_channel, cost, budget, full_output=True)
        raw = r_x - min(r_a, c_cap)
        if raw < -1e-12:
            logger.info("rate-limited action rate clamped to 0 (inner value %.6g)", raw)
        return RatePoint(
            rate=max(raw, 0.0),
            cost=cap_info["expected_cost"],
            distortions=(D,),
            achieving={"rd_term": r_x, "link_rate": r_a, "channel_capacity": c_cap,
                       "action_pmf": cap_info["input_pmf"]},
            method=CLOSED_LABEL,
        )

    # joint mode: grid both legs. The reconstruction leg does not depend
    # on the action pmf, so it is searched once.
    px = source.probs
    n_x = len(px)
    n_r = d.d.shape[1]
    hx = m.ent(px)

    def recon_mi(ch):
        T = ch.table
        return max(hx + m.ent(px @ T) - m.ent(px[:, None] * T), 0.0)

    def meets_distortion(ch):
        return float(px @ (ch.table * d.d).sum(axis=1)) <= D + 1e-12

    inner = grid_search_conditional(recon_mi, (n_x, n_r), [meets_distortion], cfg)
    if not inner.feasible:
        raise ValueError(f"no reconstruction channel meets distortion {D}")

    lam = cost.costs
    finite = np.isfinite(lam)
    if not finite.any() or lam[finite].min() > budget + 1e-12:
        raise ValueError(f"no action satisfies cost <= {budget}")
    n_a = len(lam)
    P = action_channel.table

    def link_value(ch):
        pa = ch.table[0]
        mi_ay = m.mi(pa[:, None] * P, (0,), (1,))
        return inner.value - min(r_a, mi_ay)

    def within_budget(ch):
        pa = ch.table[0]
        if np.any(pa[~finite] > 1e-15):
            return False
        return float(pa[finite] @ lam[finite]) <= budget + 1e-12

    outer = grid_search_conditional(link_value, (1, n_a), [within_budget], cfg)
    if not outer.feasible:
        raise ValueError(f"no action pmf satisfies the budget {budget}")
    raw = outer.value
    if raw < -1e-12:
        logger.info("rate-limited action rate clamped to 0 (inner value %.6g)", raw)
    pa = outer.argmin.table[0]
    return RatePoint(
        rate=max(raw, 0.0),
        cost=float(pa[finite] @ lam[finite]),
        distortions=(float(px @ (inner.argmin.table * d.d).sum(axis=1)),),
        achieving={
            "rd_term": inner.value,
            "link_rate": r_a,
            "channel_mi": m.mi(pa[:, None] * P, (0,), (1,)),
            "action_pmf": pa,
            "recon_channel": inner.argmin.table,
        },
        method=SEARCH_LABEL,
    )


def successive_refinement_region(
    source: Pmf,
    model: ActionModel,
    D1: float,
    D2: float,
    budget: float,
    cfg: SearchConfig = None,
    distortions=None,
    r1_values=None,
    u_size: int = None,
):
    """Boundary slice of the two-stage region: stage 1 sends R1 bits for
    a direct reconstruction X̂1; stage 2 adds R2 bits, controls the
    side-information actions, and reconstructs via x̂2(u, y, a).

    For each R1 cap, minimizes I(X;X̂1,A) + I(X;U|X̂1,Y,A) over stacked
    p(x̂1,a,u|x) subject to I(X;X̂1) <= R1, the two distortion targets,
    and the action budget; returns RatePoints with rate=(R1, R2) sorted
    by R1. |U| defaults to the bound |X||X̂1||A|+1.
    """
    if model.K != 1:
        raise ValueError("refinement model must expose side information to one decoder")
    if distortions is not None:
        d1, d2 = distortions
    else:
        d1 = hamming_distortion(source.alphabet)
        d2 = hamming_distortion(source.alphabet)
    px = source.probs
    n_x = len(px)
    n_r1 = d1.d.shape[1]
    n_a = len(model.actions)
    n_u = u_size or n_x * n_r1 * n_a + 1
    W = model.channel.table  # (x, a, y)
    n_y = W.shape[2]
    lam = model.cost.costs
    finite = np.isfinite(lam)
    hx = m.ent(px)

    if r1_values is None:
        r1_min = blahut_arimoto_rd(source, d1, D1)
        r1_values = np.linspace(r1_min + 1e-6, max(1.5 * r1_min, r1_min + 0.25), 5)

    def joint_of(ch):
        T = ch.table.reshape(n_x, n_r1, n_a, n_u)
        return np.einsum("x,xrau,xay->xrauy", px, T, W)

    def stage1_mi(J):
        M = m.marg(J, (0, 1))
        return max(hx + m.ent(M.sum(axis=0)) - m.ent(M), 0.0)

    points = []
    for r1_cap in sorted(float(v) for v in r1_values):

        def feasible(ch, r1_cap=r1_cap):
            J = joint_of(ch)
            if stage1_mi(J) > r1_cap + 1e-9:
                return False
            pa = m.marg(J, (2,))
            if np.any(pa[~finite] > 1e-15):
                return False
            if float(pa[finite] @ lam[finite]) > budget + 1e-12:
                return False
            M1 = m.marg(J, (0, 1))
            if float((M1 * d1.d).sum()) > D1 + 1e-12:
                return False
            M2 = m.marg(J, (0, 3, 4, 2)).reshape(n_x, -1)
            ed2 = (M2.T @ d2.d).min(axis=1).sum()
            return float(ed2) <= D2 + 1e-12

        def sum_rate(ch):
            J = joint_of(ch)
            # axes: x=0, r1=1, a=2, u=3, y=4
            return m.mi(J, (0,), (1, 2)) + m.cmi(J, (0,), (3,), (1, 4, 2))

        res = grid_search_conditional(sum_rate, (n_x, n_r1 * n_a * n_u), [feasible], cfg)
        if not res.feasible:
            raise ValueError(
                f"no distribution meets R1 <= {r1_cap:.6g} with distortions ({D1}, {D2}) "
                f"under budget {budget}"
            )
        J = joint_of(res.argmin)
        pa = m.marg(J, (2,))
        M1 = m.marg(J, (0, 1))
        M2 = m.marg(J, (0, 3, 4, 2)).reshape(n_x, -1)
        ed2_cells = M2.T @ d2.d
        recon2 = np.argmin(ed2_cells, axis=1)
        ed2 = float(ed2_cells[np.arange(len(recon2)), recon2].sum())
        points.append(
            RatePoint(
                rate=(r1_cap, max(res.value - r1_cap, 0.0)),
                cost=float(pa[finite] @ lam[finite]),
                distortions=(float((M1 * d1.d).sum()), ed2),
                achieving={
                    "stacked_policy": res.argmin.table.reshape(n_x, n_r1, n_a, n_u),
                    "stage1_mi": stage1_mi(J),
                    "sum_rate": res.value,
                    "recon2": recon2.reshape(n_u, n_y, n_a),
                },
                method=SEARCH_LABEL,
            )
        )
    return points
