"""Lossless rates when the encoder takes the actions.

The decoders must be able to read the action off their own observation
(each y_j pins down a unique a), which turns the action sequence itself
into a bit pipe: the freedom H(A|X) in choosing actions is subtracted
from the worst-case conditional entropy.
"""

import logging

import numpy as np

from ..optim import SearchConfig, grid_search_conditional
from ..probcore import JointPmf, Pmf, conditional_entropy
from . import _measures as m
from .models import (
    ENCODER_SWITCH,
    ActionModel,
    RatePoint,
    SwitchingModel,
    action_policy_channel,
    compose_action_joint,
)

logger = logging.getLogger("actionrdc.regions.encoder")

SEARCH_LABEL = "achievable upper bound (search)"
EVAL_LABEL = "evaluation (given distributions)"


def check_action_recoverable(model: ActionModel, tol: float = 1e-9):
    """Every observation symbol must identify the action that produced it.

    For each decoder j and each y_j that occurs with probability above
    tol under some (x, a), the set of actions able to produce it must be
    a singleton; otherwise the decoder cannot reconstruct the action
    sequence and the rate expression does not apply.
    """
    W = model.channel.table
    K = model.K
    for j in range(K):
        drop = tuple(2 + i for i in range(K) if i != j)
        Wj = W.sum(axis=drop) if drop else W
        reach = Wj.max(axis=0) > tol  # (a, y_j): action a can produce y_j
        ambiguous = np.flatnonzero(reach.sum(axis=0) > 1)
        if ambiguous.size:
            sym = model.channel.output_alphabets[j].symbols[ambiguous[0]]
            raise ValueError(
                f"decoder {j + 1} cannot recover the action: observation "
                f"{sym!r} is produced by more than one action"
            )


def lossless_encoder_actions_rate(
    source: Pmf, model: ActionModel, budget: float, cfg: SearchConfig = None
) -> RatePoint:
    """min over p(a|x) of [max_j H(X|Y_j,A) - H(A|X)]⁺ subject to
    E Λ(A) <= budget. Requires action-recoverable observations."""
    check_action_recoverable(model)
    px = source.probs
    n_x = len(px)
    n_a = len(model.actions)
    lam = model.cost.costs
    finite = np.isfinite(lam)
    if not finite.any() or lam[finite].min() > budget + 1e-12:
        raise ValueError(f"no action satisfies cost <= {budget}")
    W = model.channel.table
    K = model.K
    kernels = []
    for j in range(K):
        drop = tuple(2 + i for i in range(K) if i != j)
        kernels.append(W.sum(axis=drop) if drop else W)
    hx = m.ent(px)

    def raw_value(T):
        joint_xa = px[:, None] * T
        h_a_given_x = m.ent(joint_xa) - hx
        worst = 0.0
        for Wj in kernels:
            joint = joint_xa[:, :, None] * Wj
            worst = max(worst, m.cond_ent(joint, (0,), (1, 2)))
        return worst - h_a_given_x

    def feasible(ch):
        pa = px @ ch.table
        if np.any(pa[~finite] > 1e-15):
            return False
        return float(pa[finite] @ lam[finite]) <= budget + 1e-12

    res = grid_search_conditional(
        lambda ch: max(raw_value(ch.table), 0.0), (n_x, n_a), [feasible], cfg
    )
    if not res.feasible:
        raise ValueError(f"no action policy satisfies the budget {budget}")
    T = res.argmin.table
    raw = raw_value(T)
    if raw < -1e-12:
        logger.info("encoder-actions rate clamped to 0 (inner value %.6g)", raw)
    pa = px @ T
    return RatePoint(
        rate=res.value,
        cost=float(pa[finite] @ lam[finite]),
        distortions=None,
        achieving={"action_policy": T, "inner_value": raw},
        method=SEARCH_LABEL,
    )


def encoder_switch_rate(
    joint: JointPmf,
    policy,
    C1: float,
    C2: float,
    budget: float,
    cfg: SearchConfig = None,
) -> RatePoint:
    """Two decoders, encoder-controlled switch: decoder j sees Y when
    A = j and an erasure otherwise, with per-action costs C1, C2.

    `policy` is either a bias alpha = P(A=1) for an action taken
    independently of the source, or a full conditional table p(a|x).
    Evaluates both the slice-decomposed expression and the generic
    encoder-actions formula on the same distribution and reports both;
    `cfg` is accepted for interface parity but unused (no search here).
    """
    del cfg
    if len(joint.names) != 2:
        raise ValueError("joint must have exactly the axes (x, y)")
    pxy = joint.table
    px = pxy.sum(axis=1)
    n_x = len(px)
    if np.isscalar(policy):
        alpha_in = float(policy)
        if not 0.0 <= alpha_in <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {alpha_in}")
        T = np.tile([alpha_in, 1.0 - alpha_in], (n_x, 1))
    else:
        T = np.asarray(policy, dtype=float)
        if T.shape != (n_x, 2):
            raise ValueError(f"policy table must have shape {(n_x, 2)}")
        if np.any(T < -1e-12) or np.any(np.abs(T.sum(axis=1) - 1.0) > 1e-9):
            raise ValueError("policy rows must be probability vectors")

    pa = px @ T
    cost = float(pa @ np.array([C1, C2], dtype=float))
    if cost > budget + 1e-12:
        raise ValueError(f"expected action cost {cost:.6g} exceeds budget {budget}")

    # slice-decomposed expression: each entry pairs the informed slice of
    # one decoder with the erased slice of the other
    hx = m.ent(px)
    h_xy_slice = [0.0, 0.0]  # H(X | Y, A=k)
    h_x_slice = [0.0, 0.0]  # H(X | A=k)
    for k in range(2):
        if pa[k] > 1e-15:
            s = pxy * T[:, k][:, None] / pa[k]
            h_xy_slice[k] = m.cond_ent(s, (0,), (1,))
            h_x_slice[k] = m.ent(s.sum(axis=1))
    entry1 = pa[0] * h_xy_slice[0] + pa[1] * h_x_slice[1]
    entry2 = pa[1] * h_xy_slice[1] + pa[0] * h_x_slice[0]
    h_a_given_x = m.ent(pa) + pa[0] * h_x_slice[0] + pa[1] * h_x_slice[1] - hx
    formula_raw = max(entry1, entry2) - h_a_given_x

    # generic route: compose the erasure-augmented joint and take
    # max_j H(X|Y_j,A) - H(A|X) with the library-level measures
    model = SwitchingModel(joint, K=2, variant=ENCODER_SWITCH, costs=(C1, C2))
    am = model.to_action_model()
    check_action_recoverable(am)
    source = model.source_pmf()
    composed = compose_action_joint(source, action_policy_channel(am, T), am)
    generic_raw = max(
        conditional_entropy(composed, ("x",), ("y1", "a")),
        conditional_entropy(composed, ("x",), ("y2", "a")),
    ) - conditional_entropy(composed, ("a",), ("x",))

    rate = max(generic_raw, 0.0)
    if generic_raw < -1e-12:
        logger.info("encoder-switch rate clamped to 0 (inner value %.6g)", generic_raw)
    return RatePoint(
        rate=rate,
        cost=cost,
        distortions=None,
        achieving={
            "action_policy": T,
            "alpha": float(pa[0]),
            "formula_value": max(formula_raw, 0.0),
            "formula_raw": formula_raw,
            "generic_raw": generic_raw,
        },
        method=EVAL_LABEL,
    )
