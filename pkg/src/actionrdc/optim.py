"""
Minimization engines used behind every "min over p(.|.)" in the rate
expressions: exhaustive simplex-grid search with local refinement for
conditional probability tables, scalar golden-section search, and
Blahut-Arimoto solvers for the classical rate-distortion and
capacity-cost functions.

Grid search is deliberately dumb: the objectives are non-convex with
max{} kinks, alphabets are tiny, and reproducibility matters more than
speed. Evaluation order is fixed (lexicographic over grid indices), ties
keep the earliest point, and the same config always returns a
bit-identical result regardless of thread count.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .probcore import Alphabet, Channel

LN2 = math.log(2.0)


class BudgetExhaustedError(RuntimeError):
    """Raised when max_evals runs out before any feasible point was seen."""


@dataclass(frozen=True)
class SearchConfig:
    grid_resolution: int = 21
    refinement_rounds: int = 3
    refinement_shrink: float = 0.25
    tolerance: float = 1e-6
    seed: int = 0
    max_evals: int = None

    def __post_init__(self):
        if self.grid_resolution < 2:
            raise ValueError("grid_resolution must be >= 2")
        if not 0.0 < self.refinement_shrink < 1.0:
            raise ValueError("refinement_shrink must lie in (0, 1)")
        if self.refinement_rounds < 0:
            raise ValueError("refinement_rounds must be >= 0")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_evals is not None and self.max_evals <= 0:
            raise ValueError("max_evals must be positive when set")


@dataclass(frozen=True)
class SearchResult:
    value: float
    argmin: Channel
    evals: int
    feasible: bool


@lru_cache(maxsize=None)
def _generic_alphabet(size: int) -> Alphabet:
    return Alphabet(tuple(str(i) for i in range(size)))


@lru_cache(maxsize=None)
def _simplex_grid(parts: int, resolution: int) -> np.ndarray:
    """All pmfs over `parts` outcomes with entries in multiples of
    1/(resolution-1), ordered lexicographically."""
    steps = resolution - 1

    def gen(total, k):
        if k == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in gen(total - first, k - 1):
                yield (first,) + rest

    rows = np.array(list(gen(steps, parts)), dtype=np.float64) / steps
    rows.flags.writeable = False
    return rows


def _thread_count() -> int:
    raw = os.environ.get("ACTION_RDC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _as_channel(table: np.ndarray) -> Channel:
    n_in, n_out = table.shape
    return Channel(
        ("in",), (_generic_alphabet(n_in),), ("out",), (_generic_alphabet(n_out),), table
    )


def grid_search_conditional(objective, shape, constraints=(), cfg: SearchConfig = None) -> SearchResult:
    """Minimize objective(Channel) over row-stochastic tables of `shape`.

    Enumerates the product of per-row simplex grids at cfg.grid_resolution,
    then runs cfg.refinement_rounds of the same grid shrunk toward the
    incumbent by refinement_shrink**round. Constraints are predicates on
    the candidate Channel; infeasible points are skipped without spending
    objective evaluations. Ties keep the lexicographically first grid
    point. If every point is infeasible the result has feasible=False;
    running out of max_evals before the first feasible point raises
    BudgetExhaustedError.
    """
    if cfg is None:
        cfg = SearchConfig()
    n_in, n_out = shape
    if n_in < 1 or n_out < 1:
        raise ValueError(f"invalid search shape {shape}")
    base = _simplex_grid(n_out, cfg.grid_resolution)
    threads = _thread_count()

    best_value = math.inf
    best_table = None
    evals = 0

    def candidate_tables(weight, center):
        for idx in np.ndindex(*([len(base)] * n_in)):
            table = base[list(idx)]
            if weight < 1.0:
                table = (1.0 - weight) * center + weight * table
            yield table

    def run_pass(weight, center):
        nonlocal best_value, best_table, evals

        def feasible_tables():
            for t in candidate_tables(weight, center):
                ch = _as_channel(t)
                if all(g(ch) for g in constraints):
                    yield t, ch
        stop = False
        pending = feasible_tables()
        while not stop:
            batch = []
            limit = 4096 if threads > 1 else 1
            if cfg.max_evals is not None:
                limit = min(limit, cfg.max_evals - evals)
                if limit <= 0:
                    if best_table is None:
                        raise BudgetExhaustedError(
                            f"evaluation budget {cfg.max_evals} exhausted before any feasible point"
                        )
                    return True
            for t, ch in pending:
                batch.append((t, ch))
                if len(batch) >= limit:
                    break
            if not batch:
                return False
            if threads > 1 and len(batch) > 1:
                with ThreadPoolExecutor(max_workers=threads) as ex:
                    values = list(ex.map(lambda pair: objective(pair[1]), batch))
            else:
                values = [objective(ch) for _, ch in batch]
            evals += len(batch)
            for (t, _), v in zip(batch, values):
                if v < best_value:
                    best_value = v
                    best_table = t
        return False

    exhausted = run_pass(1.0, None)
    if best_table is not None and not exhausted:
        for r in range(1, cfg.refinement_rounds + 1):
            w = cfg.refinement_shrink**r
            if run_pass(w, best_table):
                break

    if best_table is None:
        return SearchResult(math.inf, None, evals, False)
    return SearchResult(best_value, _as_channel(best_table), evals, True)


def golden_section(objective, interval, tolerance: float = 1e-8):
    """Minimize a scalar function on [lo, hi] by golden-section search.

    Converges to a local minimum; callers scan coarsely first when the
    objective may have several basins. Returns (argmin, value).
    """
    lo, hi = float(interval[0]), float(interval[1])
    if hi < lo:
        raise ValueError(f"invalid interval [{lo}, {hi}]")
    if hi == lo:
        return lo, objective(lo)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = objective(c)
    fd = objective(d)
    while b - a > tolerance:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = objective(d)
    x = 0.5 * (a + b)
    return x, objective(x)


# ---------------------------------------------------------------------------
# Blahut-Arimoto solvers
# ---------------------------------------------------------------------------


def _rd_fixed_slope(p, dm, beta, iters, tol):
    """Inner alternating minimization at fixed slope beta (nats).

    Returns (rate_bits, distortion, lagrangian_trace_bits); the trace is
    non-increasing by construction of the alternating updates.
    """
    n_out = dm.shape[1]
    q = np.full(n_out, 1.0 / n_out)
    weights = np.exp(-beta * dm)
    trace = []
    prev = math.inf
    w = None
    for _ in range(iters):
        w = q[None, :] * weights
        w_sum = w.sum(axis=1, keepdims=True)
        w = w / w_sum
        q = p @ w
        with np.errstate(divide="ignore", invalid="ignore"):
            log_ratio = np.where(w > 0, np.log(np.where(w > 0, w, 1.0) / np.maximum(q[None, :], 1e-300)), 0.0)
        mi_nats = float((p[:, None] * w * log_ratio).sum())
        dist = float((p[:, None] * w * dm).sum())
        lagr = (mi_nats + beta * dist) / LN2
        trace.append(lagr)
        if abs(prev - lagr) < tol:
            prev = lagr
            break
        prev = lagr
    mi_bits = max(mi_nats / LN2, 0.0)
    return mi_bits, dist, trace


def blahut_arimoto_rd(source, d, D: float, iters: int = 2000, tol: float = 1e-12, full_output: bool = False):
    """Rate-distortion function R(D) in bits via Blahut-Arimoto.

    The target distortion is met by bisecting the slope parameter; the
    returned rate carries a first-order slope correction for the residual
    distortion mismatch. Returns 0 when D is achievable at zero rate and
    raises when D is below the floor set by the distortion table.
    """
    p = source.probs
    dm = d.d
    if dm.shape[0] != p.shape[0]:
        raise ValueError("distortion table does not match source alphabet")
    d_floor = float(p @ dm.min(axis=1))
    d_zero_rate = float((p @ dm).min())
    if D < d_floor - 1e-12:
        raise ValueError(f"distortion {D} below the achievable floor {d_floor:.6g}")
    if D >= d_zero_rate - 1e-15:
        if full_output:
            return 0.0, {"beta_bits": 0.0, "distortion": d_zero_rate, "trace_bits": [0.0]}
        return 0.0

    lo, hi = 0.0, 1.0
    _, dist_hi, _ = _rd_fixed_slope(p, dm, hi, iters, tol)
    grow = 0
    while dist_hi > D and grow < 60:
        hi *= 2.0
        _, dist_hi, _ = _rd_fixed_slope(p, dm, hi, iters, tol)
        grow += 1
    rate, dist, trace = None, None, None
    beta = hi
    for _ in range(200):
        beta = 0.5 * (lo + hi)
        rate, dist, trace = _rd_fixed_slope(p, dm, beta, iters, tol)
        if abs(dist - D) <= 1e-11:
            break
        if dist > D:
            lo = beta
        else:
            hi = beta
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
    else:
        raise RuntimeError(
            f"slope bisection did not converge; last bracket [{lo:.6g}, {hi:.6g}], distortion {dist:.6g} vs target {D}"
        )
    if abs(dist - D) > 1e-6:
        raise RuntimeError(
            f"slope bisection did not converge; last bracket [{lo:.6g}, {hi:.6g}], distortion {dist:.6g} vs target {D}"
        )
    beta_bits = beta / LN2
    rate = max(rate + beta_bits * (dist - D), 0.0)
    if full_output:
        return rate, {"beta_bits": beta_bits, "distortion": dist, "trace_bits": trace}
    return rate


def _capacity_fixed_multiplier(P, lam, allowed, gamma, iters, tol):
    """Inner Blahut iteration maximizing I(A;Y) - gamma * E cost (nats).

    Returns (capacity_bits, expected_cost, objective_trace_bits); the
    trace is non-decreasing.
    """
    idx = np.flatnonzero(allowed)
    Pa = P[idx]
    la = lam[idx]
    r = np.full(len(idx), 1.0 / len(idx))
    trace = []
    prev = -math.inf
    for _ in range(iters):
        q = r @ Pa
        with np.errstate(divide="ignore", invalid="ignore"):
            log_ratio = np.where(Pa > 0, np.log(np.where(Pa > 0, Pa, 1.0) / np.maximum(q[None, :], 1e-300)), 0.0)
        d_a = (Pa * log_ratio).sum(axis=1)
        mi_nats = float(r @ d_a)
        cost = float(r @ la)
        objective = (mi_nats - gamma * cost) / LN2
        trace.append(objective)
        scores = d_a - gamma * la
        scores -= scores.max()
        r_new = r * np.exp(scores)
        total = r_new.sum()
        if total <= 0:
            break
        r_new /= total
        if abs(objective - prev) < tol:
            r = r_new
            break
        prev = objective
        r = r_new
    q = r @ Pa
    with np.errstate(divide="ignore", invalid="ignore"):
        log_ratio = np.where(Pa > 0, np.log(np.where(Pa > 0, Pa, 1.0) / np.maximum(q[None, :], 1e-300)), 0.0)
    mi_bits = max(float((r[:, None] * Pa * log_ratio).sum()) / LN2, 0.0)
    cost = float(r @ la)
    full_r = np.zeros(len(lam))
    full_r[idx] = r
    return mi_bits, cost, trace, full_r


def blahut_arimoto_capacity_cost(ch: Channel, cost, budget: float, iters: int = 2000, tol: float = 1e-12, full_output: bool = False):
    """Capacity-cost function max I(A;Y) s.t. E cost(A) <= budget, in bits.

    Infinite costs mark forbidden inputs. The cost constraint is enforced
    through a Lagrangian sweep with bisection on the multiplier.
    """
    if len(ch.input_names) != 1 or len(ch.output_names) != 1:
        raise ValueError("capacity-cost solver expects a single-input single-output channel")
    P = ch.table
    lam = np.asarray(cost.costs, dtype=np.float64)
    if lam.shape[0] != P.shape[0]:
        raise ValueError("cost table does not match channel input alphabet")
    allowed = np.isfinite(lam)
    if not allowed.any() or lam[allowed].min() > budget + 1e-12:
        raise ValueError(f"no input symbol satisfies cost <= {budget}")
    min_cost = lam[allowed].min()
    if budget <= min_cost + 1e-12:
        allowed = allowed & (lam <= min_cost + 1e-12)
        cap, _, trace, r = _capacity_fixed_multiplier(P, lam, allowed, 0.0, iters, tol)
        if full_output:
            return cap, {"gamma_bits": 0.0, "expected_cost": float(r @ np.where(allowed, lam, 0.0)), "trace_bits": trace, "input_pmf": r}
        return cap

    cap0, cost0, trace0, r0 = _capacity_fixed_multiplier(P, lam, allowed, 0.0, iters, tol)
    if cost0 <= budget + 1e-12:
        if full_output:
            return cap0, {"gamma_bits": 0.0, "expected_cost": cost0, "trace_bits": trace0, "input_pmf": r0}
        return cap0

    lo, hi = 0.0, 1.0
    _, cost_hi, _, _ = _capacity_fixed_multiplier(P, lam, allowed, hi, iters, tol)
    grow = 0
    while cost_hi > budget and grow < 60:
        hi *= 2.0
        _, cost_hi, _, _ = _capacity_fixed_multiplier(P, lam, allowed, hi, iters, tol)
        grow += 1
    cap, c_mid, trace, r = cap0, cost0, trace0, r0
    for _ in range(200):
        gamma = 0.5 * (lo + hi)
        cap, c_mid, trace, r = _capacity_fixed_multiplier(P, lam, allowed, gamma, iters, tol)
        if abs(c_mid - budget) <= 1e-11:
            break
        if c_mid > budget:
            lo = gamma
        else:
            hi = gamma
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
    if full_output:
        return cap, {"gamma_bits": gamma / LN2, "expected_cost": c_mid, "trace_bits": trace, "input_pmf": r}
    return cap
