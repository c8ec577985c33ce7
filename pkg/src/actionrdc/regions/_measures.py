"""Raw-array entropy helpers for hot search objectives.

The probcore types validate on every construction, which is wasteful
inside grid searches that evaluate tens of thousands of candidate
tables. These helpers work on plain ndarrays that are joint probability
tables by construction.
"""

import numpy as np


def ent(table) -> float:
    """Entropy in bits of an (unnormalized-safe, nonnegative) table."""
    t = np.asarray(table)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(t > 0, t * np.log2(np.where(t > 0, t, 1.0)), 0.0)
    return float(-terms.sum())


def marg(table, keep_axes) -> np.ndarray:
    """Marginal over the given axis indices (order preserved)."""
    keep = tuple(keep_axes)
    drop = tuple(i for i in range(table.ndim) if i not in keep)
    out = table.sum(axis=drop) if drop else table
    remaining = [i for i in range(table.ndim) if i not in drop]
    order = [remaining.index(i) for i in keep]
    return np.transpose(out, order)


def cond_ent(table, target_axes, given_axes) -> float:
    """H(target | given) in bits on a raw joint table."""
    t = tuple(target_axes)
    g = tuple(given_axes)
    if not g:
        return ent(marg(table, t))
    return ent(marg(table, t + g)) - ent(marg(table, g))


def mi(table, a_axes, b_axes) -> float:
    a = tuple(a_axes)
    b = tuple(b_axes)
    return max(ent(marg(table, a)) + ent(marg(table, b)) - ent(marg(table, a + b)), 0.0)


def cmi(table, a_axes, b_axes, given_axes) -> float:
    """I(a; b | given) in bits on a raw joint table."""
    a = tuple(a_axes)
    b = tuple(b_axes)
    g = tuple(given_axes)
    if not g:
        return mi(table, a, b)
    h_ag = ent(marg(table, a + g))
    h_bg = ent(marg(table, b + g))
    h_abg = ent(marg(table, a + b + g))
    h_g = ent(marg(table, g))
    return max(h_ag + h_bg - h_abg - h_g, 0.0)
