"""Lossy rate-distortion-cost evaluators.

Covers causal reconstruction with decoder actions, the two-decoder
layered achievable scheme, its Heegard-Berger-Kaspi specialization under
degraded switching side information, and the perfect-switch special case
where the action hands one decoder the source itself.
"""

import itertools
import math

import numpy as np

from ..optim import SearchConfig, blahut_arimoto_rd, golden_section, grid_search_conditional
from ..probcore import (
    Alphabet,
    DistortionFn,
    JointPmf,
    Pmf,
    binary_entropy,
    hamming_distortion,
)
from . import _measures as m
from .models import ActionModel, RatePoint, expected_cost

SEARCH_LABEL = "achievable upper bound (search)"
EVAL_LABEL = "evaluation (given distributions)"

_MAX_ACTION_MAPS = 65536


def _best_recon(joint_xc: np.ndarray, dmat: np.ndarray):
    """Optimal deterministic reconstruction per context cell.

    joint_xc has shape (|X|, cells) holding unnormalized joint mass;
    returns (total expected distortion, argmin recon index per cell,
    ties to the lowest index).
    """
    ed = joint_xc.T @ dmat
    idx = np.argmin(ed, axis=1)
    total = float(ed[np.arange(ed.shape[0]), idx].sum())
    return total, idx


def _check_conditional(name: str, arr: np.ndarray, expected_shape: tuple):
    if arr.shape != expected_shape:
        raise ValueError(f"{name} must have shape {expected_shape}, got {arr.shape}")
    if np.any(arr < -1e-12) or np.any(~np.isfinite(arr)):
        raise ValueError(f"{name} has invalid entries")
    sums = arr.sum(axis=-1)
    if np.any(np.abs(sums - 1.0) > 1e-9):
        raise ValueError(f"{name} rows must sum to 1")


def _default_distortions(model_or_alpha, count: int, given):
    if given is not None:
        if len(given) != count:
            raise ValueError(f"expected {count} distortion functions")
        return list(given)
    alpha = model_or_alpha if isinstance(model_or_alpha, Alphabet) else model_or_alpha.source_alphabet
    return [hamming_distortion(alpha) for _ in range(count)]


# ---------------------------------------------------------------------------
# causal reconstruction with decoder actions
# ---------------------------------------------------------------------------


def causal_lossy_rate(
    source: Pmf,
    model: ActionModel,
    targets,
    budget: float,
    cfg: SearchConfig = None,
    distortions=None,
    u_size: int = None,
) -> RatePoint:
    """min I(U;X) over p(u|x) and deterministic action maps a = f(u),
    with causal reconstructions x̂_j(u, y_j) chosen as posterior
    expected-distortion argmins, under distortion targets and the action
    cost budget. Returns an achievable point (upper bound up to grid
    error)."""
    K = model.K
    targets = [float(t) for t in targets]
    if len(targets) != K:
        raise ValueError(f"expected {K} distortion targets")
    dists = _default_distortions(model, K, distortions)
    px = source.probs
    n_x = len(px)
    n_a = len(model.actions)
    n_u = u_size if u_size is not None else n_x * n_a + K
    if n_a**n_u > _MAX_ACTION_MAPS:
        raise ValueError(
            f"enumeration of {n_a}^{n_u} action maps is too large; pass a smaller u_size"
        )
    lam = model.cost.costs
    W = model.channel.table
    kernels = []
    for j in range(K):
        drop = tuple(2 + i for i in range(K) if i != j)
        kernels.append(W.sum(axis=drop) if drop else W)
    hx = m.ent(px)

    def objective(ch):
        T = ch.table
        pu = px @ T
        return max(hx + m.ent(pu) - m.ent(px[:, None] * T), 0.0)

    best = None
    best_map = None
    for f in itertools.product(range(n_a), repeat=n_u):
        f_arr = np.array(f)
        lam_u = lam[f_arr]

        def feasible(ch, f_arr=f_arr, lam_u=lam_u):
            T = ch.table
            pu = px @ T
            infinite = ~np.isfinite(lam_u)
            if np.any(pu[infinite] > 1e-15):
                return False
            if float(pu[~infinite] @ lam_u[~infinite]) > budget + 1e-12:
                return False
            for j in range(K):
                Wj = kernels[j]
                joint = px[:, None, None] * T[:, :, None] * Wj[:, f_arr, :]
                ed, _ = _best_recon(joint.reshape(n_x, -1), dists[j].d)
                if ed > targets[j] + 1e-12:
                    return False
            return True

        res = grid_search_conditional(objective, (n_x, n_u), [feasible], cfg)
        if res.feasible and (best is None or res.value < best.value):
            best = res
            best_map = f_arr

    if best is None:
        raise ValueError(f"no policy meets distortions {targets} under budget {budget}")
    T = best.argmin.table
    pu = px @ T
    recons = []
    attained = []
    for j in range(K):
        Wj = kernels[j]
        joint = px[:, None, None] * T[:, :, None] * Wj[:, best_map, :]
        ed, idx = _best_recon(joint.reshape(n_x, -1), dists[j].d)
        attained.append(ed)
        recons.append(idx.reshape(n_u, Wj.shape[-1]))
    cost = float(pu @ lam[best_map])
    return RatePoint(
        rate=best.value,
        cost=cost,
        distortions=tuple(attained),
        achieving={"u_policy": T, "action_map": best_map, "reconstructions": recons},
        method=SEARCH_LABEL,
    )


# ---------------------------------------------------------------------------
# two-decoder layered descriptions
# ---------------------------------------------------------------------------


def _layered_joint(px, Ta, Tu, Tv1, Tv2, W):
    return np.einsum("x,xa,xau,xauv,xauw,xast->xauvwst", px, Ta, Tu, Tv1, Tv2, W)


def _layered_rate(J):
    # axes: x=0, a=1, u=2, v1=3, v2=4, y1=5, y2=6
    return (
        m.mi(J, (0,), (1,))
        + max(m.cmi(J, (0,), (2,), (1, 5)), m.cmi(J, (0,), (2,), (1, 6)))
        + m.cmi(J, (0,), (3,), (2, 1, 5))
        + m.cmi(J, (0,), (4,), (2, 1, 6))
    )


def layered_lossy_eval(
    source: Pmf,
    model: ActionModel,
    p_action,
    p_u,
    p_v1,
    p_v2,
    recon1,
    recon2,
    distortions=None,
) -> RatePoint:
    """Evaluate the layered two-decoder scheme on given distributions.

    Rate charged: I(X;A) + max_j I(X;U|A,Y_j) + I(X;V1|U,A,Y1)
    + I(X;V2|U,A,Y2); distortions use the supplied reconstruction index
    maps x̂_j(u, v_j, a, y_j)."""
    if model.K != 2:
        raise ValueError("layered evaluator is defined for exactly two decoders")
    d1, d2 = _default_distortions(model, 2, distortions)
    px = source.probs
    n_x = len(px)
    n_a = len(model.actions)
    Ta = np.asarray(p_action, dtype=float)
    Tu = np.asarray(p_u, dtype=float)
    Tv1 = np.asarray(p_v1, dtype=float)
    Tv2 = np.asarray(p_v2, dtype=float)
    _check_conditional("p(a|x)", Ta, (n_x, n_a))
    n_u = Tu.shape[-1]
    _check_conditional("p(u|x,a)", Tu, (n_x, n_a, n_u))
    n_v1 = Tv1.shape[-1]
    n_v2 = Tv2.shape[-1]
    _check_conditional("p(v1|x,a,u)", Tv1, (n_x, n_a, n_u, n_v1))
    _check_conditional("p(v2|x,a,u)", Tv2, (n_x, n_a, n_u, n_v2))
    W = model.channel.table
    n_y1, n_y2 = W.shape[2], W.shape[3]
    J = _layered_joint(px, Ta, Tu, Tv1, Tv2, W)

    recon1 = np.asarray(recon1, dtype=int)
    recon2 = np.asarray(recon2, dtype=int)
    if recon1.shape != (n_u, n_v1, n_a, n_y1):
        raise ValueError(f"recon1 must have shape {(n_u, n_v1, n_a, n_y1)}")
    if recon2.shape != (n_u, n_v2, n_a, n_y2):
        raise ValueError(f"recon2 must have shape {(n_u, n_v2, n_a, n_y2)}")

    M1 = m.marg(J, (0, 2, 3, 1, 5))
    ed1 = float((M1 * d1.d[:, recon1]).sum())
    M2 = m.marg(J, (0, 2, 4, 1, 6))
    ed2 = float((M2 * d2.d[:, recon2]).sum())
    pa = m.marg(J, (1,))
    lam = model.cost.costs
    finite = np.isfinite(lam)
    cost = math.inf if np.any(pa[~finite] > 1e-15) else float(pa[finite] @ lam[finite])
    return RatePoint(
        rate=_layered_rate(J),
        cost=cost,
        distortions=(ed1, ed2),
        achieving={
            "p_action": Ta,
            "p_u": Tu,
            "p_v1": Tv1,
            "p_v2": Tv2,
            "recon1": recon1,
            "recon2": recon2,
        },
        method=EVAL_LABEL,
    )


def layered_lossy_search(
    source: Pmf,
    model: ActionModel,
    D1: float,
    D2: float,
    budget: float,
    cfg: SearchConfig = None,
    distortions=None,
    u_size: int = None,
    v1_size: int = None,
    v2_size: int = None,
) -> RatePoint:
    """Thin search wrapper over stacked p(a,u,v1,v2|x) for tiny alphabets,
    with posterior-argmin reconstructions. Auxiliary sizes default to
    |X|+1 each, a heuristic rather than a stated bound."""
    if model.K != 2:
        raise ValueError("layered search is defined for exactly two decoders")
    d1, d2 = _default_distortions(model, 2, distortions)
    px = source.probs
    n_x = len(px)
    n_a = len(model.actions)
    n_u = u_size or n_x + 1
    n_v1 = v1_size or n_x + 1
    n_v2 = v2_size or n_x + 1
    W = model.channel.table
    n_y1, n_y2 = W.shape[2], W.shape[3]
    lam = model.cost.costs
    finite = np.isfinite(lam)

    def parts(ch):
        T = ch.table.reshape(n_x, n_a, n_u, n_v1, n_v2)
        return np.einsum("x,xauvw,xast->xauvwst", px, T, W)

    def feasible(ch):
        J = parts(ch)
        pa = m.marg(J, (1,))
        if np.any(pa[~finite] > 1e-15):
            return False
        if float(pa[finite] @ lam[finite]) > budget + 1e-12:
            return False
        M1 = m.marg(J, (0, 2, 3, 1, 5)).reshape(n_x, -1)
        ed1, _ = _best_recon(M1, d1.d)
        if ed1 > D1 + 1e-12:
            return False
        M2 = m.marg(J, (0, 2, 4, 1, 6)).reshape(n_x, -1)
        ed2, _ = _best_recon(M2, d2.d)
        return ed2 <= D2 + 1e-12

    res = grid_search_conditional(
        lambda ch: _layered_rate(parts(ch)), (n_x, n_a * n_u * n_v1 * n_v2), [feasible], cfg
    )
    if not res.feasible:
        raise ValueError(f"no layered scheme meets ({D1}, {D2}) under budget {budget}")
    J = parts(res.argmin)
    M1 = m.marg(J, (0, 2, 3, 1, 5))
    ed1, idx1 = _best_recon(M1.reshape(n_x, -1), d1.d)
    M2 = m.marg(J, (0, 2, 4, 1, 6))
    ed2, idx2 = _best_recon(M2.reshape(n_x, -1), d2.d)
    pa = m.marg(J, (1,))
    return RatePoint(
        rate=res.value,
        cost=float(pa[finite] @ lam[finite]),
        distortions=(ed1, ed2),
        achieving={
            "stacked_policy": res.argmin.table.reshape(n_x, n_a, n_u, n_v1, n_v2),
            "recon1": idx1.reshape(n_u, n_v1, n_a, n_y1),
            "recon2": idx2.reshape(n_u, n_v2, n_a, n_y2),
        },
        method=SEARCH_LABEL,
    )


# ---------------------------------------------------------------------------
# degraded switching side information (Heegard-Berger-Kaspi form)
# ---------------------------------------------------------------------------


def validate_degraded_side_info(model: ActionModel, tol: float = 1e-9):
    """Check that p(y2 | x, a, y1) does not depend on x (within tol).

    This is the degradedness that makes the two-layer expression tight:
    given the action, the second decoder's side information is a noisier
    version of the first's.
    """
    if model.K != 2:
        raise ValueError("degradedness check needs exactly two decoders")
    W = model.channel.table
    n_x, n_a = W.shape[0], W.shape[1]
    for a in range(n_a):
        for y1 in range(W.shape[2]):
            rows = []
            for x in range(n_x):
                mass = W[x, a, y1, :].sum()
                if mass > tol:
                    rows.append(W[x, a, y1, :] / mass)
            for r in rows[1:]:
                if np.max(np.abs(r - rows[0])) > tol:
                    raise ValueError(
                        f"side information is not degraded: p(y2|x,a={a},y1={y1}) varies with x"
                    )


def _hb_rate(J):
    # axes: x=0, a=1, u=2, v1=3, y1=4, y2=5
    return m.mi(J, (0,), (1,)) + m.cmi(J, (0,), (2,), (1, 5)) + m.cmi(J, (0,), (3,), (2, 1, 4))


def hb_kaspi_eval(
    source: Pmf,
    model: ActionModel,
    p_action,
    p_u,
    p_v1,
    recon1,
    recon2,
    distortions=None,
) -> RatePoint:
    """Evaluate I(X;A) + I(X;U|A,Y2) + I(X;V1|U,A,Y1) with the given
    distributions and reconstruction maps x̂₁(u,v1,a,y1), x̂₂(u,a,y2)."""
    validate_degraded_side_info(model)
    d1, d2 = _default_distortions(model, 2, distortions)
    px = source.probs
    n_x = len(px)
    n_a = len(model.actions)
    Ta = np.asarray(p_action, dtype=float)
    Tu = np.asarray(p_u, dtype=float)
    Tv1 = np.asarray(p_v1, dtype=float)
    _check_conditional("p(a|x)", Ta, (n_x, n_a))
    n_u = Tu.shape[-1]
    _check_conditional("p(u|x,a)", Tu, (n_x, n_a, n_u))
    n_v1 = Tv1.shape[-1]
    _check_conditional("p(v1|x,a,u)", Tv1, (n_x, n_a, n_u, n_v1))
    W = model.channel.table
    n_y1, n_y2 = W.shape[2], W.shape[3]
    J = np.einsum("x,xa,xau,xauv,xast->xauvst", px, Ta, Tu, Tv1, W)

    recon1 = np.asarray(recon1, dtype=int)
    recon2 = np.asarray(recon2, dtype=int)
    if recon1.shape != (n_u, n_v1, n_a, n_y1):
        raise ValueError(f"recon1 must have shape {(n_u, n_v1, n_a, n_y1)}")
    if recon2.shape != (n_u, n_a, n_y2):
        raise ValueError(f"recon2 must have shape {(n_u, n_a, n_y2)}")
    M1 = m.marg(J, (0, 2, 3, 1, 4))
    ed1 = float((M1 * d1.d[:, recon1]).sum())
    M2 = m.marg(J, (0, 2, 1, 5))
    ed2 = float((M2 * d2.d[:, recon2]).sum())
    pa = m.marg(J, (1,))
    lam = model.cost.costs
    finite = np.isfinite(lam)
    cost = math.inf if np.any(pa[~finite] > 1e-15) else float(pa[finite] @ lam[finite])
    return RatePoint(
        rate=_hb_rate(J),
        cost=cost,
        distortions=(ed1, ed2),
        achieving={"p_action": Ta, "p_u": Tu, "p_v1": Tv1, "recon1": recon1, "recon2": recon2},
        method=EVAL_LABEL,
    )


def hb_kaspi_search(
    source: Pmf,
    model: ActionModel,
    D1: float,
    D2: float,
    budget: float,
    cfg: SearchConfig = None,
    distortions=None,
    u_size: int = None,
    v1_size: int = None,
) -> RatePoint:
    """Search over stacked p(a,u,v1|x) minimizing the two-layer rate
    under distortion targets and the cost budget. Auxiliary cardinalities
    default to the stated bounds |U| <= |X||A|+2 and
    |V1| <= |U|(|X||A|+1); pass smaller sizes to keep the grid tractable."""
    validate_degraded_side_info(model)
    d1, d2 = _default_distortions(model, 2, distortions)
    px = source.probs
    n_x = len(px)
    n_a = len(model.actions)
    n_u = u_size or n_x * n_a + 2
    n_v1 = v1_size or n_u * (n_x * n_a + 1)
    W = model.channel.table
    n_y1, n_y2 = W.shape[2], W.shape[3]
    lam = model.cost.costs
    finite = np.isfinite(lam)

    def joint_of(ch):
        T = ch.table.reshape(n_x, n_a, n_u, n_v1)
        return np.einsum("x,xauv,xast->xauvst", px, T, W)

    def feasible(ch):
        J = joint_of(ch)
        pa = m.marg(J, (1,))
        if np.any(pa[~finite] > 1e-15):
            return False
        if float(pa[finite] @ lam[finite]) > budget + 1e-12:
            return False
        ed1, _ = _best_recon(m.marg(J, (0, 2, 3, 1, 4)).reshape(n_x, -1), d1.d)
        if ed1 > D1 + 1e-12:
            return False
        ed2, _ = _best_recon(m.marg(J, (0, 2, 1, 5)).reshape(n_x, -1), d2.d)
        return ed2 <= D2 + 1e-12

    res = grid_search_conditional(
        lambda ch: _hb_rate(joint_of(ch)), (n_x, n_a * n_u * n_v1), [feasible], cfg
    )
    if not res.feasible:
        raise ValueError(f"no scheme meets ({D1}, {D2}) under budget {budget}")
    J = joint_of(res.argmin)
    ed1, idx1 = _best_recon(m.marg(J, (0, 2, 3, 1, 4)).reshape(n_x, -1), d1.d)
    ed2, idx2 = _best_recon(m.marg(J, (0, 2, 1, 5)).reshape(n_x, -1), d2.d)
    pa = m.marg(J, (1,))
    return RatePoint(
        rate=res.value,
        cost=float(pa[finite] @ lam[finite]),
        distortions=(ed1, ed2),
        achieving={
            "stacked_policy": res.argmin.table.reshape(n_x, n_a, n_u, n_v1),
            "recon1": idx1.reshape(n_u, n_v1, n_a, n_y1),
            "recon2": idx2.reshape(n_u, n_a, n_y2),
        },
        method=SEARCH_LABEL,
    )


# ---------------------------------------------------------------------------
# perfect switch: the action hands one decoder the source itself
# ---------------------------------------------------------------------------


def _zero_distortion_capable(d: DistortionFn):
    if np.any(d.d.min(axis=1) > 1e-12):
        raise ValueError("distortion must allow a zero-distortion reconstruction for every source symbol")


def _inner_helper_rate(pxy_slice, weight, target, d: DistortionFn, cfg: SearchConfig, u_size: int):
    """min I(X;U|Y) over p(u|x) on one action slice, such that
    weight * E d(X, x̂(Y,U)) <= target. Returns
    (weight * minimum rate, weight * attained distortion, artifact)."""
    if weight <= 1e-15:
        return 0.0, 0.0, None
    sx = pxy_slice.sum(axis=1)
    slice_target = target / weight
    # zero-distortion capability makes every slice target feasible
    if m.mi(pxy_slice, (0,), (1,)) < 1e-12:
        src = Pmf(Alphabet(tuple(str(i) for i in range(len(sx)))), sx)
        capped = min(slice_target, float((sx @ d.d).min()))
        rate, info = blahut_arimoto_rd(src, d, capped, iters=500, tol=1e-11, full_output=True)
        return weight * rate, weight * info["distortion"], ("rd", rate)
    n_x = len(sx)
    n_u = u_size or n_x + 1

    def joint_of(ch):
        return pxy_slice[:, :, None] * ch.table[:, None, :]

    def slice_distortion(ch):
        ed, _ = _best_recon(joint_of(ch).reshape(n_x, -1), d.d)
        return ed

    res = grid_search_conditional(
        lambda ch: m.cmi(joint_of(ch), (0,), (2,), (1,)),
        (n_x, n_u),
        [lambda ch: slice_distortion(ch) <= slice_target + 1e-12],
        cfg,
    )
    if not res.feasible:
        raise ValueError("inner helper search found no feasible auxiliary channel")
    return weight * res.value, weight * slice_distortion(res.argmin), ("search", res.argmin.table)


def switching_lossy_rate(
    joint: JointPmf,
    D1: float,
    D2: float,
    budget: float,
    costs=(0.0, 0.0),
    cfg: SearchConfig = None,
    distortions=None,
    u_size: int = None,
) -> RatePoint:
    """Two decoders, an action that shows the source itself to one of
    them (the other keeps the ambient side information Y): decoder 1
    sees X when A=1, decoder 2 sees X when A=2. Minimizes
    I(X;A) + max{P(A=2) I(X;U1|Y,A=2), P(A=1) I(X;U2|Y,A=1)} over the
    action policy and per-slice helper channels, under conditional
    distortion constraints and the action cost budget."""
    if len(joint.names) != 2:
        raise ValueError("joint must have exactly the axes (x, y)")
    d1, d2 = _default_distortions(joint.alphabets[0], 2, distortions)
    _zero_distortion_capable(d1)
    _zero_distortion_capable(d2)
    lam = np.asarray(costs, dtype=float)
    if lam.shape != (2,):
        raise ValueError("need exactly two action costs")
    if lam.min() > budget + 1e-12:
        raise ValueError(f"no action satisfies cost <= {budget}")
    pxy = joint.table
    px = pxy.sum(axis=1)
    hx = m.ent(px)
    inner_cfg = cfg if cfg is not None else SearchConfig()

    def split(T):
        pa = px @ T
        slices = []
        for k in range(2):
            if pa[k] > 1e-15:
                slices.append(pxy * T[:, k][:, None] / pa[k])
            else:
                slices.append(None)
        return pa, slices

    def terms(T):
        pa, slices = split(T)
        # decoder 1 needs help on the A=2 slice, decoder 2 on the A=1 slice
        t1 = _inner_helper_rate(slices[1], pa[1], D1, d1, inner_cfg, u_size) if slices[1] is not None else (0.0, 0.0, None)
        t2 = _inner_helper_rate(slices[0], pa[0], D2, d2, inner_cfg, u_size) if slices[0] is not None else (0.0, 0.0, None)
        return pa, t1, t2

    def objective(ch):
        T = ch.table
        pa, t1, t2 = terms(T)
        mi_xa = max(hx + m.ent(pa) - m.ent(px[:, None] * T), 0.0)
        return mi_xa + max(t1[0], t2[0])

    def within_budget(ch):
        pa = px @ ch.table
        return float(pa @ lam) <= budget + 1e-12

    res = grid_search_conditional(objective, (len(px), 2), [within_budget], cfg)
    if not res.feasible:
        raise ValueError(f"no feasible switch policy under budget {budget}")
    T = res.argmin.table
    pa, t1, t2 = terms(T)
    return RatePoint(
        rate=res.value,
        cost=float(pa @ lam),
        distortions=(t1[1], t2[1]),
        achieving={"action_policy": T, "helpers": {"decoder1": t1[2], "decoder2": t2[2]}},
        method=SEARCH_LABEL,
    )


# ---------------------------------------------------------------------------
# binary source, Hamming distortion, no ambient side information
# ---------------------------------------------------------------------------


def _binary_switch_term(weight: float, D: float) -> float:
    """weight * (1 - H2(D/weight)) when the slice needs coding, else 0."""
    if weight <= 1e-15:
        return 0.0
    ratio = D / weight
    if ratio > 0.5:
        return 0.0
    return weight * (1.0 - binary_entropy(ratio))


def binary_switching_lossy_rate(D1: float, D2: float) -> float:
    """Closed form for a Bern(1/2) source under Hamming distortion with
    the perfect switch and no ambient side information: minimize over
    the switch bias the larger of the two per-slice coding rates."""
    for name, d in (("D1", D1), ("D2", D2)):
        if not 0.0 <= d <= 0.5:
            raise ValueError(f"{name} must lie in [0, 0.5], got {d}")

    def value(alpha):
        return max(_binary_switch_term(alpha, D1), _binary_switch_term(1.0 - alpha, D2))

    grid = np.linspace(0.0, 1.0, 201)
    best_alpha = min(grid, key=lambda a: (value(a), a))
    best = value(best_alpha)
    step = grid[1] - grid[0]
    a_ref, v_ref = golden_section(value, (max(0.0, best_alpha - step), min(1.0, best_alpha + step)))
    if v_ref < best:
        best = v_ref
    return best


def binary_switching_lossy_surface(d1_values, d2_values):
    """Rate table over a distortion grid: rows (D1, D2, rate)."""
    return [
        (float(a), float(b), binary_switching_lossy_rate(float(a), float(b)))
        for a in d1_values
        for b in d2_values
    ]
