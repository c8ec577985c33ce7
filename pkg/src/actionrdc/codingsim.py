"""Small-blocklength Monte Carlo simulators for the achievability schemes.

Each simulator draws i.i.d. source blocks, runs an explicit encoder and
decoder pair, and reports empirical error or distortion next to the exact
transmitted rate. Decoding inside a bin is maximum a-posteriori with ties
declared as errors, which is conservative but deterministic.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from .probcore import (
    Alphabet,
    JointPmf,
    Pmf,
    binary_entropy,
    binary_entropy_inv,
    conditional_entropy,
    mutual_information,
)
from .regions import ActionModel
from .seeding import derive_rng

SCAN_LIMIT_DEFAULT = 1 << 20


class SimBudgetError(RuntimeError):
    """A simulation would exceed its exhaustive-scan or codebook budget."""


def _check_scan(n_seqs, scan_limit):
    if n_seqs > scan_limit:
        raise SimBudgetError(
            f"exhaustive scan over {n_seqs} sequences exceeds the limit {scan_limit}"
        )


def _pack(seqs, radix):
    """Map integer sequences (rows) to single uint64 values, low digit first."""
    seqs = np.atleast_2d(np.asarray(seqs, dtype=np.uint64))
    length = seqs.shape[1]
    weights = np.power(np.uint64(radix), np.arange(length, dtype=np.uint64))
    return (seqs * weights[None, :]).sum(axis=1, dtype=np.uint64)


def _unpack(packed, radix, length):
    packed = np.asarray(packed, dtype=np.uint64)
    out = np.empty((packed.size, length), dtype=np.int64)
    r = np.uint64(radix)
    v = packed.copy()
    for i in range(length):
        out[:, i] = (v % r).astype(np.int64)
        v //= r
    return out


@dataclass(frozen=True)
class BinningCode:
    """Seeded hash partition of length-n sequences into 2^bits bins.

    The map is a multiply-shift universal hash over the packed sequence,
    so identical (n, rate, seed) always give the identical partition.
    Bin indices are 1-based in [1, 2^bits].
    """

    n: int
    rate: float
    seed: int

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError(f"blocklength must be positive, got {self.n}")
        if self.rate < 0:
            raise ValueError(f"rate must be nonnegative, got {self.rate}")

    @property
    def bits(self):
        return max(0, math.ceil(self.n * self.rate - 1e-9))

    def bin_of(self, packed, space=None):
        """Bin indices for packed sequences. When `space` (the number of
        distinct sequences) fits inside the bin budget the map degenerates
        to the identity, so no gratuitous hash collisions are introduced."""
        packed = np.asarray(packed, dtype=np.uint64)
        k = self.bits
        if k == 0:
            return np.ones(packed.shape, dtype=np.int64)
        if space is not None and (1 << k) >= space:
            return packed.astype(np.int64) + 1
        rng = derive_rng(self.seed, "binning")
        a = np.uint64(int(rng.integers(0, 2**63)) * 2 + 1)
        b = np.uint64(int(rng.integers(0, 2**63)))
        with np.errstate(over="ignore"):
            h = packed * a + b
        return (h >> np.uint64(64 - k)).astype(np.int64) + 1


@dataclass(frozen=True, eq=False)
class Codebook:
    """Seeded i.i.d. random codebook of integer sequences."""

    n: int
    size: int
    pmf: np.ndarray
    seed: int
    words: np.ndarray

    @classmethod
    def build(cls, n, rate, pmf, seed, scan_limit=SCAN_LIMIT_DEFAULT):
        size = max(1, math.ceil(2 ** (n * rate) - 1e-9))
        _check_scan(size, scan_limit)
        pmf = np.asarray(pmf, dtype=float)
        rng = derive_rng(seed, "codebook")
        words = rng.choice(len(pmf), size=(size, n), p=pmf)
        return cls(n=n, size=size, pmf=pmf, seed=seed, words=words)

    @property
    def index_bits(self):
        """Bits needed to transmit one codeword index."""
        return max(0, math.ceil(math.log2(self.size) - 1e-9))


@dataclass(frozen=True)
class SimReport:
    """Outcome of one simulation run.

    rate is the exact transmitted rate (message bits / n), never the
    nominal target. error_rate is None for lossy schemes, distortions is
    None for lossless ones. elapsed is wall-clock seconds.
    """

    scheme: str
    n: int
    trials: int
    rate: float
    seed: int
    elapsed: float
    error_rate: float = None
    distortions: tuple = None
    cost: float = None
    per_trial: dict = None

    def __post_init__(self):
        if self.trials <= 0:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if self.error_rate is not None and not 0 <= self.error_rate <= 1:
            raise ValueError(f"error rate {self.error_rate} outside [0, 1]")


def _map_decode(cand_packed, radix, length, log_cols):
    """MAP over a candidate set with per-position log-probability columns.

    log_cols has shape (radix, length). Returns (packed winner, tie flag);
    an empty candidate set or a tied maximum counts as a tie.
    """
    if cand_packed.size == 0:
        return None, True
    digits = _unpack(cand_packed, radix, length)
    ll = log_cols[digits, np.arange(length)[None, :]].sum(axis=1)
    best = int(np.argmax(ll))
    top = ll[best]
    if np.isclose(ll, top, rtol=1e-9, atol=1e-12).sum() > 1:
        return None, True
    return int(cand_packed[best]), False


def _sample_rows(rng, table, rows):
    """Sample one column index per row of a row-stochastic table."""
    cdf = np.cumsum(table[rows], axis=1)
    u = rng.random(len(rows))
    return (u[:, None] < cdf).argmax(axis=1)


# ---------------------------------------------------------------------------
# deterministic segment-parity switching scheme
# ---------------------------------------------------------------------------


def simulate_identity_switch(n, k, source: Pmf, trials, seed) -> SimReport:
    """Round-robin switching with Y = X: split the block into k equal
    segments, give decoder j segment j, and transmit the parities
    segment_1 xor segment_j. Structurally error-free at rate (k-1)/k."""
    if k < 2:
        raise ValueError(f"need at least 2 decoders, got {k}")
    if n % k != 0:
        raise ValueError(f"blocklength {n} is not a multiple of {k}")
    probs = np.asarray(source.probs, dtype=float)
    if len(probs) != 2 or abs(probs[0] - 0.5) > 1e-12:
        raise ValueError("the segment-parity scheme needs a Bern(1/2) source")
    if trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")
    m = n // k
    t0 = time.perf_counter()
    errors = 0
    for t in range(trials):
        rng = derive_rng(seed, "identity-switch-trial", t)
        x = rng.integers(0, 2, size=n)
        segs = x.reshape(k, m)
        parities = segs[0][None, :] ^ segs[1:]  # (k-1, m)
        for j in range(k):
            rec = np.empty((k, m), dtype=segs.dtype)
            rec[j] = segs[j]
            if j == 0:
                rec[1:] = parities ^ segs[0][None, :]
            else:
                seg1 = parities[j - 1] ^ segs[j]
                rec[0] = seg1
                for i in range(1, k):
                    if i != j:
                        rec[i] = parities[i - 1] ^ seg1
            if not np.array_equal(rec, segs):
                errors += 1
                break
    rate = (k - 1) * m / n
    return SimReport(
        scheme="identity-switch",
        n=n,
        trials=trials,
        rate=rate,
        seed=seed,
        elapsed=time.perf_counter() - t0,
        error_rate=errors / trials,
    )


# ---------------------------------------------------------------------------
# two-half binning with a modulo-combined in-bin index
# ---------------------------------------------------------------------------


def _in_bin_ranks(bins_all):
    """Rank of each sequence within its bin, in packed order."""
    n_seq = len(bins_all)
    order = np.argsort(bins_all, kind="stable")
    sorted_bins = bins_all[order]
    starts = np.r_[0, np.flatnonzero(np.diff(sorted_bins)) + 1]
    counts = np.diff(np.r_[starts, n_seq])
    ranks_sorted = np.arange(n_seq) - np.repeat(starts, counts)
    ranks = np.empty(n_seq, dtype=np.int64)
    ranks[order] = ranks_sorted
    return ranks


def simulate_sw_modulo(
    joint: JointPmf, half_n, rate_margin, trials, seed,
    rate_override=None, scan_limit=SCAN_LIMIT_DEFAULT,
) -> SimReport:
    """Split the block into two halves; decoder j holds Y on half j only.
    Each half is binned near rate H(X|Y)/2, and the halves' in-bin ranks
    are combined by XOR near rate I(X;Y)/2, so each decoder first solves
    its informed half and then unlocks the blind one.

    rate_override rescales all message widths to a requested total rate
    (used to probe behavior far below the achievable point)."""
    if set(joint.names) != {"x", "y"}:
        raise ValueError("joint must have exactly the axes (x, y)")
    if trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")
    table = joint.table if joint.names == ("x", "y") else joint.table.T
    n_x, n_y = table.shape
    _check_scan(n_x**half_n, scan_limit)
    n = 2 * half_n

    hxy = conditional_entropy(joint, ("x",), ("y",))
    mi = mutual_information(joint, ("x",), ("y",))
    w_bin = n * (hxy / 2 + rate_margin)
    w_idx = n * (mi / 2 + rate_margin)
    if rate_override is not None:
        scale = n * rate_override / (2 * w_bin + w_idx)
        w_bin *= scale
        w_idx *= scale
    raw_bits = math.ceil(half_n * math.log2(n_x) - 1e-9)
    b_bin = min(max(0, math.ceil(w_bin - 1e-9)), raw_bits)
    b_idx = min(max(0, math.ceil(w_idx - 1e-9)), raw_bits)
    rate = (2 * b_bin + b_idx) / n

    codes = [BinningCode(half_n, b_bin / half_n, int(derive_rng(seed, "half", h).integers(2**63)))
             for h in range(2)]
    all_packed = np.arange(n_x**half_n, dtype=np.uint64)
    bins_all = [c.bin_of(all_packed, space=n_x**half_n) for c in codes]
    ranks_all = [_in_bin_ranks(b) for b in bins_all]
    idx_all = [r % (1 << b_idx) for r in ranks_all]

    px = table.sum(axis=1)
    py = table.sum(axis=0)
    with np.errstate(divide="ignore"):
        log_prior = np.log(px)
        # log p(x | y)
        log_post = np.log(table / np.where(py > 0, py, 1.0)[None, :])
    flat = table.ravel()

    t0 = time.perf_counter()
    errors = 0
    for t in range(trials):
        rng = derive_rng(seed, "sw-modulo-trial", t)
        cells = rng.choice(flat.size, size=n, p=flat)
        x, y = np.divmod(cells, n_y)
        halves = [x[:half_n], x[half_n:]]
        packed = [_pack(h, n_x)[0] for h in halves]
        bins_tx = [int(bins_all[h][packed[h]]) for h in range(2)]
        idx_xor = int(idx_all[0][packed[0]]) ^ int(idx_all[1][packed[1]])

        trial_error = False
        for dec in range(2):
            other = 1 - dec
            y_obs = y[:half_n] if dec == 0 else y[half_n:]
            cols = log_post[:, y_obs]  # (n_x, half_n)
            cand = all_packed[bins_all[dec] == bins_tx[dec]]
            got, tie = _map_decode(cand, n_x, half_n, cols)
            if tie or got != packed[dec]:
                trial_error = True
                break
            idx_other = idx_all[dec][got] ^ idx_xor
            mask = (bins_all[other] == bins_tx[other]) & (idx_all[other] == idx_other)
            cols_p = np.repeat(log_prior[:, None], half_n, axis=1)
            got2, tie2 = _map_decode(all_packed[mask], n_x, half_n, cols_p)
            if tie2 or got2 != packed[other]:
                trial_error = True
                break
        errors += trial_error
    return SimReport(
        scheme="sw-modulo",
        n=n,
        trials=trials,
        rate=rate,
        seed=seed,
        elapsed=time.perf_counter() - t0,
        error_rate=errors / trials,
    )


# ---------------------------------------------------------------------------
# four-state switching: partition the block by the realized action value
# ---------------------------------------------------------------------------


def _select_word(words, x_seq, target, n_x, n_a, radius):
    """First codeword whose joint empirical law with x_seq is within the
    total-variation radius of the target; the closest one as a fallback."""
    n = len(x_seq)
    pair = words * n_x + x_seq[None, :]
    emp = np.zeros((len(words), n_a * n_x))
    np.add.at(emp, (np.arange(len(words))[:, None], pair), 1.0 / n)
    tv = 0.5 * np.abs(emp - target.ravel()[None, :]).sum(axis=1)
    ok = np.flatnonzero(tv <= radius + 1e-12)
    return int(ok[0]) if ok.size else int(np.argmin(tv))


def simulate_partition_switch(
    joint: JointPmf, policy, costs, n, rate_margin, trials, seed,
    scan_limit=SCAN_LIMIT_DEFAULT,
) -> SimReport:
    """Four-state switching scheme: an action codeword splits the block
    into sub-sequences by action value (0: nobody sees Y, 1/2: one decoder
    does, 3: both see the same Y). Each sub-sequence is binned for its
    informed decoder, and sub-sequences 1 and 2 carry an extra XOR-combined
    index hash so the uninformed decoder can catch up.

    Reports empirical block error and the realized per-symbol action cost
    (the cost is reported, never enforced)."""
    if set(joint.names) != {"x", "y"}:
        raise ValueError("joint must have exactly the axes (x, y)")
    if trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")
    table = joint.table if joint.names == ("x", "y") else joint.table.T
    n_x, n_y = table.shape
    policy = np.asarray(policy, dtype=float)
    if policy.shape != (n_x, 4):
        raise ValueError(f"policy must have shape {(n_x, 4)}")
    if np.any(policy < -1e-12) or np.any(np.abs(policy.sum(axis=1) - 1) > 1e-9):
        raise ValueError("policy rows must be probability vectors")
    costs = np.asarray(costs, dtype=float)
    if costs.shape != (4,):
        raise ValueError("need one cost per switch state")

    px = table.sum(axis=1)
    py_x = table / np.where(px > 0, px, 1.0)[:, None]
    p_xa = px[:, None] * policy  # (x, a)
    pa = p_xa.sum(axis=0)
    # per-slice statistics
    def slice_stats(a):
        w = p_xa[:, a]
        if w.sum() < 1e-15:
            return 0.0, 0.0, 0.0, np.full(n_x, 1.0 / n_x)
        px_a = w / w.sum()
        j = JointPmf(("x", "y"), (joint.alphabet_of("x"), joint.alphabet_of("y")),
                     px_a[:, None] * py_x)
        hy = conditional_entropy(j, ("x",), ("y",))
        hx = conditional_entropy(j, ("x",), ())
        return hx, hy, hx - hy, px_a

    stats = [slice_stats(a) for a in range(4)]
    # bits for each sub-sequence: the informed decoder's conditional entropy
    need = [stats[0][0], stats[1][1], stats[2][1], stats[3][1]]
    raw_bits = math.ceil(n * math.log2(n_x) - 1e-9)
    bits_bin = [min(max(0, math.ceil(n * (pa[a] * need[a] + rate_margin) - 1e-9)), raw_bits)
                for a in range(4)]
    bits_idx = min(max(0, math.ceil(
        n * (max(pa[1] * stats[1][2], pa[2] * stats[2][2]) + rate_margin) - 1e-9)), raw_bits)
    switch_states = Alphabet(("0", "1", "2", "3"))
    mi_xa = mutual_information(
        JointPmf(("x", "a"), (joint.alphabet_of("x"), switch_states), p_xa),
        ("x",), ("a",))
    book = Codebook.build(n, mi_xa + rate_margin, pa,
                          int(derive_rng(seed, "actions").integers(2**63)), scan_limit)
    bits_action = book.index_bits
    rate = (bits_action + sum(bits_bin) + bits_idx) / n

    bin_codes = [BinningCode(n, bits_bin[a] / n, int(derive_rng(seed, "slice", a).integers(2**63)))
                 for a in range(4)]
    idx_codes = [BinningCode(n, bits_idx / n, int(derive_rng(seed, "slice-idx", a).integers(2**63)))
                 for a in (1, 2)]

    with np.errstate(divide="ignore"):
        log_post = [None] * 4
        log_prior = [None] * 4
        for a in range(4):
            px_a = stats[a][3]
            joint_a = px_a[:, None] * py_x
            py_a = joint_a.sum(axis=0)
            log_post[a] = np.log(joint_a / np.where(py_a > 0, py_a, 1.0)[None, :])
            log_prior[a] = np.log(px_a)

    def decode_slice(a, length, bin_tx, y_obs, idx_constraint=None):
        """MAP over all length-`length` sequences matching the bin (and the
        optional index hash); returns (packed, tie)."""
        if length == 0:
            return 0, False
        _check_scan(n_x**length, scan_limit)
        seqs = np.arange(n_x**length, dtype=np.uint64)
        mask = bin_codes[a].bin_of(seqs, space=n_x**length) == bin_tx
        if idx_constraint is not None:
            code, want = idx_constraint
            mask &= code.bin_of(seqs, space=n_x**length) == want
        if y_obs is None:
            cols = np.repeat(log_prior[a][:, None], length, axis=1)
        else:
            cols = log_post[a][:, y_obs]
        return _map_decode(seqs[mask], n_x, length, cols)

    flat_y = py_x  # sample y per symbol from p(y | x)
    t0 = time.perf_counter()
    errors = 0
    cost_total = 0.0
    for t in range(trials):
        rng = derive_rng(seed, "partition-trial", t)
        x = rng.choice(n_x, size=n, p=px)
        w = _select_word(book.words, x, p_xa.T, n_x, 4, rate_margin / 2)
        a_seq = book.words[w]
        cost_total += float(costs[a_seq].mean())
        y = _sample_rows(rng, flat_y, x)
        pos = [np.flatnonzero(a_seq == a) for a in range(4)]
        subs = [x[p] for p in pos]
        packed = [int(_pack(s, n_x)[0]) if s.size else 0 for s in subs]
        bins_tx = [int(bin_codes[a].bin_of(np.uint64(packed[a]), space=n_x**subs[a].size)[()])
                   if subs[a].size else 1 for a in range(4)]
        idx_tx = [int(idx_codes[i].bin_of(np.uint64(packed[a]), space=n_x**subs[a].size)[()])
                  if subs[a].size else 1 for i, a in enumerate((1, 2))]
        idx_xor = idx_tx[0] ^ idx_tx[1]

        trial_error = False
        for dec in (1, 2):
            own, blind = (1, 2) if dec == 1 else (2, 1)
            # slice 0: prior only; slice 3: posterior; own: posterior; blind: via XOR
            got0, tie = decode_slice(0, subs[0].size, bins_tx[0], None)
            if tie or got0 != packed[0]:
                trial_error = True
                break
            got3, tie = decode_slice(3, subs[3].size, bins_tx[3], y[pos[3]])
            if tie or got3 != packed[3]:
                trial_error = True
                break
            got_own, tie = decode_slice(own, subs[own].size, bins_tx[own], y[pos[own]])
            if tie or got_own != packed[own]:
                trial_error = True
                break
            own_idx = (int(idx_codes[own - 1].bin_of(np.uint64(got_own),
                                                     space=n_x**subs[own].size)[()])
                       if subs[own].size else 1)
            got_b, tie = decode_slice(
                blind, subs[blind].size, bins_tx[blind], None,
                idx_constraint=(idx_codes[blind - 1], own_idx ^ idx_xor),
            )
            if tie or got_b != packed[blind]:
                trial_error = True
                break
        errors += trial_error
    return SimReport(
        scheme="partition-switch",
        n=n,
        trials=trials,
        rate=rate,
        seed=seed,
        elapsed=time.perf_counter() - t0,
        error_rate=errors / trials,
        cost=cost_total / trials,
    )


# ---------------------------------------------------------------------------
# complementary delivery for the doubly symmetric binary pair
# ---------------------------------------------------------------------------


def simulate_dsbs_compdel(p, rate, n, trials, seed,
                          scan_limit=SCAN_LIMIT_DEFAULT) -> SimReport:
    """Code the difference sequence Z = X xor Y with a random codebook and
    let each decoder add its own side sequence back. Both decoders'
    distortions equal the quantization error on Z on every trial.

    Codewords are drawn i.i.d. from the reproduction marginal of the
    binary rate-distortion test channel at this rate, with a fresh
    codebook per trial so the mean distortion tracks the random-code
    ensemble average."""
    if not 0 < p <= 0.5:
        raise ValueError(f"crossover p must lie in (0, 0.5], got {p}")
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    if n <= 0 or trials <= 0:
        raise ValueError("n and trials must be positive")
    d_star = binary_entropy_inv(max(binary_entropy(p) - rate, 0.0))
    q = (p - d_star) / (1 - 2 * d_star) if d_star < 0.5 else 0.0
    size = max(1, math.ceil(2 ** (n * rate) - 1e-9))
    _check_scan(size, scan_limit)
    bits = max(0, math.ceil(math.log2(size) - 1e-9))
    t0 = time.perf_counter()
    d1_trials = []
    d2_trials = []
    for t in range(trials):
        rng = derive_rng(seed, "dsbs-trial", t)
        words = rng.choice(2, size=(size, n), p=[1 - q, q])
        x = rng.integers(0, 2, size=n)
        z = (rng.random(n) < p).astype(np.int64)
        y = x ^ z
        dist = (words != z[None, :]).sum(axis=1)
        zhat = words[int(np.argmin(dist))]
        d1_trials.append(float(((x ^ zhat) != y).mean()))
        d2_trials.append(float(((y ^ zhat) != x).mean()))
    return SimReport(
        scheme="dsbs-compdel",
        n=n,
        trials=trials,
        rate=bits / n,
        seed=seed,
        elapsed=time.perf_counter() - t0,
        distortions=(float(np.mean(d1_trials)), float(np.mean(d2_trials))),
        per_trial={"d1": d1_trials, "d2": d2_trials},
    )


# ---------------------------------------------------------------------------
# generic action selection plus conditional binning
# ---------------------------------------------------------------------------


def simulate_action_binning(
    source: Pmf, model: ActionModel, policy, rate_margin, n, trials, seed,
    scan_limit=SCAN_LIMIT_DEFAULT,
) -> SimReport:
    """Full pipeline: pick an action codeword jointly typical with the
    source block, then bin the block at the worst decoder's conditional
    entropy. Every decoder learns the action sequence from the codeword
    index and MAP-decodes the block within its bin."""
    if trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")
    px = np.asarray(source.probs, dtype=float)
    n_x = len(px)
    _check_scan(n_x**n, scan_limit)
    policy = np.asarray(policy, dtype=float)
    n_a = len(model.actions)
    if policy.shape != (n_x, n_a):
        raise ValueError(f"policy must have shape {(n_x, n_a)}")
    if np.any(policy < -1e-12) or np.any(np.abs(policy.sum(axis=1) - 1) > 1e-9):
        raise ValueError("policy rows must be probability vectors")
    W = model.channel.table  # (x, a, y1, ..., yK)
    K = model.K
    p_xa = px[:, None] * policy
    pa = p_xa.sum(axis=0)

    # worst-decoder conditional entropy at this policy
    h_worst = 0.0
    marg_shapes = []
    for j in range(K):
        drop = tuple(2 + i for i in range(K) if i != j)
        Wj = W.sum(axis=drop) if drop else W
        marg_shapes.append(Wj)
        pxay = p_xa[:, :, None] * Wj
        names = ("x", "a", "y")
        j3 = JointPmf(names, (model.source_alphabet, model.actions,
                              model.channel.output_alphabets[j]), pxay)
        h_worst = max(h_worst, conditional_entropy(j3, ("x",), ("a", "y")))
    mi_xa = mutual_information(
        JointPmf(("x", "a"), (model.source_alphabet, model.actions), p_xa),
        ("x",), ("a",))

    book = Codebook.build(n, mi_xa + rate_margin, pa,
                          int(derive_rng(seed, "actions").integers(2**63)), scan_limit)
    bits_action = book.index_bits
    bits_bin = min(max(0, math.ceil(n * (h_worst + rate_margin) - 1e-9)),
                   math.ceil(n * math.log2(n_x) - 1e-9))
    rate = (bits_action + bits_bin) / n
    code = BinningCode(n, bits_bin / n, int(derive_rng(seed, "bins").integers(2**63)))

    all_packed = np.arange(n_x**n, dtype=np.uint64)
    bins_all = code.bin_of(all_packed, space=n_x**n)
    # posterior columns use p(x) policy(a|x) W_j(y|x,a)
    with np.errstate(divide="ignore"):
        log_posts = []
        for j in range(K):
            Wj = marg_shapes[j]
            pj = p_xa[:, :, None] * Wj  # (x, a, y)
            norm = pj.sum(axis=0, keepdims=True)
            log_posts.append(np.log(pj / np.where(norm > 0, norm, 1.0)))
    W_flat = W.reshape(n_x, n_a, -1)
    y_shape = W.shape[2:]
    cost_vec = model.cost.costs

    t0 = time.perf_counter()
    errors = 0
    cost_total = 0.0
    for t in range(trials):
        rng = derive_rng(seed, "action-binning-trial", t)
        x = rng.choice(n_x, size=n, p=px)
        w = _select_word(book.words, x, p_xa.T, n_x, n_a, rate_margin / 2)
        a_seq = book.words[w]
        cost_total += float(np.asarray(cost_vec)[a_seq].mean())
        cells = _sample_rows(rng, W_flat[x, a_seq], np.arange(n))
        ys = np.unravel_index(cells, y_shape)
        x_packed = int(_pack(x, n_x)[0])
        bin_tx = int(code.bin_of(np.uint64(x_packed), space=n_x**n)[()])
        cand = all_packed[bins_all == bin_tx]
        trial_error = False
        for j in range(K):
            cols = log_posts[j][:, a_seq, ys[j]]  # (n_x, n)
            got, tie = _map_decode(cand, n_x, n, cols)
            if tie or got != x_packed:
                trial_error = True
                break
        errors += trial_error
    return SimReport(
        scheme="action-binning",
        n=n,
        trials=trials,
        rate=rate,
        seed=seed,
        elapsed=time.perf_counter() - t0,
        error_rate=errors / trials,
        cost=cost_total / trials,
    )
