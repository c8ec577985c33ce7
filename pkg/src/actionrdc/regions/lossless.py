"""Minimum rates for lossless reconstruction at every decoder.

The general problem: an encoder describes X to K decoders, an action
sequence (chosen from the description) steers which side information
each decoder receives, and actions carry per-symbol costs. The minimum
rate is min over p(a|x) of I(X;A) + max_j H(X|Y_j,A) under the cost
budget. Switching specializations (decoders fed the same Y through a
selector) admit closed forms that are cross-checked against the generic
search.
"""

import numpy as np

from ..optim import SearchConfig, grid_search_conditional, golden_section
from ..probcore import (
    JointPmf,
    Pmf,
    binary_alphabet,
    conditional_entropy,
    mutual_information,
)
from . import _measures as m
from .models import ActionModel, RatePoint, expected_cost

SEARCH_LABEL = "achievable upper bound (search)"
CLOSED_LABEL = "closed form"


def _per_decoder_kernels(model: ActionModel):
    """Collapse the model channel to one (x, a, y_j) kernel per decoder."""
    W = model.channel.table
    n_in = 2
    kernels = []
    for j in range(model.K):
        drop = tuple(n_in + i for i in range(model.K) if i != j)
        kernels.append(W.sum(axis=drop) if drop else W)
    return kernels


def _worst_decoder_entropy(px, T, kernels):
    """max_j H(X|Y_j, A) for the joint p(x) T[x,a] W_j[x,a,y]."""
    worst = 0.0
    for Wj in kernels:
        joint = px[:, None, None] * T[:, :, None] * Wj
        worst = max(worst, m.cond_ent(joint, (0,), (1, 2)))
    return worst


def lossless_decoder_actions_rate(source: Pmf, model: ActionModel, budget: float, cfg: SearchConfig = None) -> RatePoint:
    """min over p(a|x) of I(X;A) + max_j H(X|Y_j,A) s.t. E cost(A) <= budget."""
    lam = model.cost.costs
    finite = np.isfinite(lam)
    if not finite.any() or lam[finite].min() > budget + 1e-12:
        raise ValueError(f"no action satisfies cost <= {budget}")
    px = source.probs
    if len(px) != len(model.source_alphabet):
        raise ValueError("source does not match the model alphabet")
    kernels = _per_decoder_kernels(model)
    hx = m.ent(px)

    def objective(ch):
        T = ch.table
        joint_xa = px[:, None] * T
        mi_xa = max(hx + m.ent(joint_xa.sum(axis=0)) - m.ent(joint_xa), 0.0)
        return mi_xa + _worst_decoder_entropy(px, T, kernels)

    def within_budget(ch):
        return expected_cost(source, ch.table, model) <= budget + 1e-12

    res = grid_search_conditional(objective, (len(px), len(model.actions)), [within_budget], cfg)
    if not res.feasible:
        raise ValueError(f"no feasible action policy under budget {budget}")
    T = res.argmin.table
    return RatePoint(
        rate=res.value,
        cost=expected_cost(source, T, model),
        distortions=None,
        achieving={"action_policy": T},
        method=SEARCH_LABEL,
    )


def switching_lossless_rate(joint: JointPmf, K: int) -> RatePoint:
    """H(X|Y) + ((K-1)/K) I(X;Y): K decoders, a cost-free switch routing
    Y to exactly one decoder, optimized by a uniform source-independent
    switch position."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if len(joint.names) != 2:
        raise ValueError("joint must have exactly the axes (x, y)")
    x, y = joint.names
    h = conditional_entropy(joint, x, y)
    i = mutual_information(joint, x, y)
    rate = h + (K - 1) / K * i
    return RatePoint(
        rate=rate,
        cost=0.0,
        distortions=None,
        achieving={"action_policy": np.full((len(joint.alphabets[0]), K), 1.0 / K)},
        method=CLOSED_LABEL,
    )


def four_state_switching_rate(joint: JointPmf, costs, budget: float, cfg: SearchConfig = None) -> RatePoint:
    """Two decoders, four switch states (neither / first / second / both
    see Y), per-state costs. Minimizes the grouped rate expression
    I(X;A) + p0 H(X|A=0) + sum_j p_j H(X|Y,A=j)
    + max{p1 I(X;Y|A=1), p2 I(X;Y|A=2)} over p(a|x) under the budget."""
    if len(joint.names) != 2:
        raise ValueError("joint must have exactly the axes (x, y)")
    lam = np.asarray(costs, dtype=float)
    if lam.shape != (4,):
        raise ValueError("need exactly four switch-state costs")
    finite = np.isfinite(lam)
    if not finite.any() or lam[finite].min() > budget + 1e-12:
        raise ValueError(f"no switch state satisfies cost <= {budget}")
    pxy = joint.table
    px = pxy.sum(axis=1)
    hx = m.ent(px)

    def objective(ch):
        T = ch.table
        pa = px @ T
        joint_xa = px[:, None] * T
        value = max(hx + m.ent(pa) - m.ent(joint_xa), 0.0)
        info_terms = [0.0, 0.0]
        for a in range(4):
            if pa[a] <= 1e-15:
                continue
            slice_xy = pxy * T[:, a][:, None] / pa[a]
            if a == 0:
                value += pa[a] * m.ent(slice_xy.sum(axis=1))
            else:
                value += pa[a] * m.cond_ent(slice_xy, (0,), (1,))
                if a in (1, 2):
                    info_terms[a - 1] = pa[a] * m.mi(slice_xy, (0,), (1,))
        return value + max(info_terms)

    def within_budget(ch):
        pa = px @ ch.table
        if np.any(pa[~finite] > 1e-15):
            return False
        return float(pa[finite] @ lam[finite]) <= budget + 1e-12

    res = grid_search_conditional(objective, (len(px), 4), [within_budget], cfg)
    if not res.feasible:
        raise ValueError(f"no feasible switch policy under budget {budget}")
    T = res.argmin.table
    pa = px @ T
    cost = float(pa[finite] @ lam[finite])
    return RatePoint(
        rate=res.value,
        cost=cost,
        distortions=None,
        achieving={"action_policy": T},
        method=SEARCH_LABEL,
    )


# ---------------------------------------------------------------------------
# the two-decoder asymmetric-erasure example
# ---------------------------------------------------------------------------

_SCH_B = binary_alphabet()


def _schannel_joint() -> JointPmf:
    """Bern(1/2) source observed through an asymmetric binary channel:
    P(Y=0|X=0)=0.2, P(Y=1|X=0)=0.8, and Y=1 whenever X=1."""
    table = np.array([[0.5 * 0.2, 0.5 * 0.8], [0.0, 0.5]])
    return JointPmf(("x", "y"), (_SCH_B, _SCH_B), table)


_SCH_PXY = _schannel_joint().table
_SCH_PX = _SCH_PXY.sum(axis=1)


def _schannel_value(p1: float, delta: float) -> float:
    """I(X;A) + max_j H(X|Y_j,A) for the two-decoder switch with
    p(a=1|x=0) = p1(1+2 delta), p(a=1|x=1) = p1(1-2 delta)."""
    rows = np.array([p1 * (1 + 2 * delta), p1 * (1 - 2 * delta)])
    T = np.stack([rows, 1.0 - rows], axis=1)
    pa = _SCH_PX @ T
    joint_xa = _SCH_PX[:, None] * T
    value = max(1.0 + m.ent(pa) - m.ent(joint_xa), 0.0)
    terms = []
    for j in range(2):
        seen, blind = pa[j], pa[1 - j]
        h = 0.0
        if seen > 1e-15:
            slice_xy = _SCH_PXY * T[:, j][:, None] / seen
            h += seen * m.cond_ent(slice_xy, (0,), (1,))
        if blind > 1e-15:
            h += blind * m.ent(joint_xa[:, 1 - j] / blind)
        terms.append(h)
    return value + max(terms)


def _schannel_delta_range(p1: float):
    if p1 <= 0.0:
        return 0.0, 0.0
    half = (1.0 - p1) / (2.0 * p1)
    return max(-0.5, -half), min(0.5, half)


def schannel_rate(p1: float, delta: float) -> float:
    """Rate of the asymmetric-binary-channel example at switch bias p1
    and source-correlation tilt delta; the action cost is P(A=1) = p1."""
    if not 0.0 <= p1 <= 1.0:
        raise ValueError(f"p1 must lie in [0,1], got {p1}")
    lo, hi = _schannel_delta_range(p1)
    if not lo - 1e-12 <= delta <= hi + 1e-12:
        raise ValueError(f"delta {delta} outside the admissible range [{lo:.4g}, {hi:.4g}] at p1={p1}")
    return _schannel_value(p1, delta)


def _schannel_best_at_budget(budget: float, resolution: int):
    """(free-tilt optimum, zero-tilt optimum) at one cost budget."""
    p1_cap = min(budget, 1.0)
    p1_grid = np.linspace(0.0, p1_cap, resolution)

    best = (np.inf, 0.0, 0.0)
    for p1 in p1_grid:
        lo, hi = _schannel_delta_range(p1)
        for delta in np.linspace(lo, hi, resolution):
            v = _schannel_value(p1, delta)
            if v < best[0]:
                best = (v, p1, delta)
    # local shrink-box refinement around the incumbent
    v, p1c, dc = best
    span_p, span_d = p1_cap, 1.0
    for _ in range(3):
        span_p *= 0.25
        span_d *= 0.25
        for p1 in np.linspace(max(0.0, p1c - span_p), min(p1_cap, p1c + span_p), 9):
            lo, hi = _schannel_delta_range(p1)
            for delta in np.linspace(max(lo, dc - span_d), min(hi, dc + span_d), 9):
                vv = _schannel_value(p1, delta)
                if vv < v:
                    v, p1c, dc = vv, p1, delta
    best_free = (v, p1c, dc)

    if p1_cap > 0:
        scan = [( _schannel_value(p1, 0.0), p1) for p1 in p1_grid]
        v0, p0 = min(scan)
        lo_b = max(0.0, p0 - (p1_grid[1] - p1_grid[0]))
        hi_b = min(p1_cap, p0 + (p1_grid[1] - p1_grid[0]))
        p_ref, v_ref = golden_section(lambda q: _schannel_value(q, 0.0), (lo_b, hi_b))
        if v_ref < v0:
            v0, p0 = v_ref, p_ref
    else:
        v0, p0 = _schannel_value(0.0, 0.0), 0.0
    return best_free, (v0, p0)


def schannel_curve(budgets, resolution: int = 41):
    """Rate-versus-cost curve for the example: for each budget C returns
    (C, best rate with the tilt free, best rate with the tilt pinned to
    zero so the action is source-independent)."""
    out = []
    for c in budgets:
        if c < 0:
            raise ValueError(f"cost budget must be nonnegative, got {c}")
        (v, _, _), (v0, _) = _schannel_best_at_budget(float(c), resolution)
        out.append((float(c), v, v0))
    return out
