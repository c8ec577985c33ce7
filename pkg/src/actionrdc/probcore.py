"""
Exact probability tables and information measures on finite alphabets.

Everything here is base-2: entropies and mutual informations are in bits.
Tables are dense numpy arrays over product alphabets, validated on
construction and frozen afterwards, so instances can be shared freely.

Conventions:
  - 0 * log 0 := 0
  - pmf entries must be nonnegative and sum to 1 within PMF_TOL; sums
    within tolerance are renormalized exactly, anything worse is an error
  - the erasure symbol "e" has no special meaning here, it is an ordinary
    alphabet symbol
"""

from dataclasses import dataclass, field
from string import ascii_letters

import numpy as np

PMF_TOL = 1e-9

# tiny negative dust from float arithmetic that we silently clip to zero
_NEG_DUST = 1e-12


def _as_clean_probs(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError(f"{what}: empty probability table")
    if np.any(np.isnan(arr)) or np.any(np.isinf(arr)):
        raise ValueError(f"{what}: non-finite entry in probability table")
    if arr.min() < -_NEG_DUST:
        raise ValueError(f"{what}: negative probability {arr.min():g}")
    arr = np.maximum(arr, 0.0)
    total = arr.sum()
    if abs(total - 1.0) > PMF_TOL:
        raise ValueError(f"{what}: probabilities sum to {total:.12g}, not 1")
    return arr / total


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of symbol labels."""

    symbols: tuple

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if not symbols:
            raise ValueError("alphabet must be nonempty")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols}")
        object.__setattr__(self, "symbols", symbols)

    def index(self, symbol) -> int:
        try:
            return self.symbols.index(str(symbol))
        except ValueError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {self.symbols}")

    def __len__(self):
        return len(self.symbols)


def binary_alphabet() -> Alphabet:
    return Alphabet(("0", "1"))


@dataclass(frozen=True)
class Pmf:
    """Probability mass function over a single alphabet."""

    alphabet: Alphabet
    probs: np.ndarray

    def __post_init__(self):
        probs = _as_clean_probs(self.probs, "Pmf")
        if probs.ndim != 1 or probs.shape[0] != len(self.alphabet):
            raise ValueError(
                f"Pmf length {probs.shape} does not match alphabet size {len(self.alphabet)}"
            )
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    def __getitem__(self, symbol) -> float:
        return float(self.probs[self.alphabet.index(symbol)])


@dataclass(frozen=True)
class JointPmf:
    """Joint pmf over named axes, stored as a dense table.

    names gives one label per axis ("x", "a", "y1", ...); axes are
    addressed by these labels in all the measure functions below.
    """

    names: tuple
    alphabets: tuple
    table: np.ndarray

    def __post_init__(self):
        names = tuple(str(n) for n in self.names)
        alphabets = tuple(self.alphabets)
        if len(names) != len(alphabets) or not names:
            raise ValueError("names and alphabets must align and be nonempty")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate axis names {names}")
        table = _as_clean_probs(self.table, "JointPmf")
        expected = tuple(len(a) for a in alphabets)
        if table.shape != expected:
            raise ValueError(f"table shape {table.shape} != alphabet sizes {expected}")
        table.flags.writeable = False
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "alphabets", alphabets)
        object.__setattr__(self, "table", table)

    def axis(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"no axis {name!r} in joint over {self.names}")

    def alphabet_of(self, name: str) -> Alphabet:
        return self.alphabets[self.axis(name)]


@dataclass(frozen=True)
class Channel:
    """Conditional probability table p(outputs | inputs).

    table has shape (input sizes) + (output sizes); every row (one slice
    per input tuple) must be a valid pmf over the outputs.
    """

    input_names: tuple
    input_alphabets: tuple
    output_names: tuple
    output_alphabets: tuple
    table: np.ndarray

    def __post_init__(self):
        in_names = tuple(str(n) for n in self.input_names)
        out_names = tuple(str(n) for n in self.output_names)
        in_alpha = tuple(self.input_alphabets)
        out_alpha = tuple(self.output_alphabets)
        if len(in_names) != len(in_alpha) or len(out_names) != len(out_alpha):
            raise ValueError("channel names and alphabets must align")
        if not out_names:
            raise ValueError("channel needs at least one output axis")
        if len(set(in_names + out_names)) != len(in_names) + len(out_names):
            raise ValueError("duplicate axis names in channel")
        table = np.asarray(self.table, dtype=np.float64)
        expected = tuple(len(a) for a in in_alpha) + tuple(len(a) for a in out_alpha)
        if table.shape != expected:
            raise ValueError(f"channel table shape {table.shape} != {expected}")
        if np.any(np.isnan(table)) or np.any(np.isinf(table)) or table.min() < -_NEG_DUST:
            raise ValueError("channel table has invalid entries")
        table = np.maximum(table, 0.0)
        out_axes = tuple(range(len(in_names), len(in_names) + len(out_names)))
        row_sums = table.sum(axis=out_axes)
        if np.any(np.abs(row_sums - 1.0) > PMF_TOL):
            bad = np.abs(row_sums - 1.0).max()
            raise ValueError(f"channel rows must sum to 1 (worst deviation {bad:.3g})")
        table = table / np.expand_dims(row_sums, out_axes)
        table.flags.writeable = False
        object.__setattr__(self, "input_names", in_names)
        object.__setattr__(self, "input_alphabets", in_alpha)
        object.__setattr__(self, "output_names", out_names)
        object.__setattr__(self, "output_alphabets", out_alpha)
        object.__setattr__(self, "table", table)


@dataclass(frozen=True)
class CostFn:
    """Per-symbol nonnegative cost; +inf marks a forbidden symbol."""

    alphabet: Alphabet
    costs: np.ndarray

    def __post_init__(self):
        costs = np.asarray(self.costs, dtype=np.float64)
        if costs.shape != (len(self.alphabet),):
            raise ValueError("cost table must have one entry per symbol")
        if np.any(np.isnan(costs)) or costs.min() < 0:
            raise ValueError("costs must be nonnegative reals (or +inf)")
        costs = costs.copy()
        costs.flags.writeable = False
        object.__setattr__(self, "costs", costs)

    def __call__(self, symbol) -> float:
        return float(self.costs[self.alphabet.index(symbol)])


@dataclass(frozen=True)
class DistortionFn:
    """Per-pair distortion d(x, xhat) >= 0."""

    source_alphabet: Alphabet
    recon_alphabet: Alphabet
    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=np.float64)
        expected = (len(self.source_alphabet), len(self.recon_alphabet))
        if d.shape != expected:
            raise ValueError(f"distortion table shape {d.shape} != {expected}")
        if np.any(np.isnan(d)) or np.any(np.isinf(d)) or d.min() < 0:
            raise ValueError("distortions must be finite and nonnegative")
        d = d.copy()
        d.flags.writeable = False
        object.__setattr__(self, "d", d)


def hamming_distortion(alphabet: Alphabet) -> DistortionFn:
    n = len(alphabet)
    return DistortionFn(alphabet, alphabet, 1.0 - np.eye(n))


# ---------------------------------------------------------------------------
# information measures
# ---------------------------------------------------------------------------


def _entropy_of_table(table: np.ndarray) -> float:
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(table > 0, table * np.log2(table), 0.0)
    return float(-terms.sum())


def entropy(p) -> float:
    """Shannon entropy in bits of a Pmf or JointPmf."""
    if isinstance(p, Pmf):
        return _entropy_of_table(p.probs)
    if isinstance(p, JointPmf):
        return _entropy_of_table(p.table)
    raise ValueError(f"entropy expects Pmf or JointPmf, got {type(p).__name__}")


def _names_tuple(axes) -> tuple:
    if isinstance(axes, str):
        return (axes,)
    return tuple(axes)


def _marginal_table(joint: JointPmf, names: tuple) -> np.ndarray:
    idx = [joint.axis(n) for n in names]
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated axes in {names}")
    drop = tuple(i for i in range(len(joint.names)) if i not in idx)
    table = joint.table.sum(axis=drop) if drop else joint.table
    # reorder surviving axes to the requested order
    kept = [i for i in range(len(joint.names)) if i not in drop]
    order = [kept.index(i) for i in idx]
    return np.transpose(table, order)


def marginalize(joint: JointPmf, keep):
    """Marginal over the named axes, in the order given.

    Returns a Pmf when a single axis is kept, else a JointPmf.
    """
    names = _names_tuple(keep)
    if not names:
        raise ValueError("must keep at least one axis")
    table = _marginal_table(joint, names)
    if len(names) == 1:
        return Pmf(joint.alphabet_of(names[0]), table)
    return JointPmf(names, tuple(joint.alphabet_of(n) for n in names), table)


def condition_on(joint: JointPmf, axis_name: str, symbol):
    """Joint over the remaining axes given {axis_name = symbol}.

    Raises if the conditioning event has (numerically) zero probability.
    """
    ax = joint.axis(axis_name)
    sym = joint.alphabets[ax].index(symbol)
    slice_table = np.take(joint.table, sym, axis=ax)
    mass = slice_table.sum()
    if mass <= _NEG_DUST:
        raise ValueError(
            f"conditioning on zero-probability event {axis_name}={symbol!r}"
        )
    rest_names = joint.names[:ax] + joint.names[ax + 1 :]
    rest_alpha = joint.alphabets[:ax] + joint.alphabets[ax + 1 :]
    if len(rest_names) == 1:
        return Pmf(rest_alpha[0], slice_table / mass)
    return JointPmf(rest_names, rest_alpha, slice_table / mass)


def conditional_entropy(joint: JointPmf, target_axes, given_axes) -> float:
    """H(target | given) = H(target, given) - H(given), in bits."""
    target = _names_tuple(target_axes)
    given = _names_tuple(given_axes)
    if set(target) & set(given):
        raise ValueError(f"target {target} and given {given} axes overlap")
    if not given:
        return _entropy_of_table(_marginal_table(joint, target))
    h_joint = _entropy_of_table(_marginal_table(joint, target + given))
    h_given = _entropy_of_table(_marginal_table(joint, given))
    return h_joint - h_given


def mutual_information(joint: JointPmf, axes_a, axes_b) -> float:
    """I(a; b) in bits; tiny negative rounding is clamped to 0."""
    a = _names_tuple(axes_a)
    b = _names_tuple(axes_b)
    if set(a) & set(b):
        raise ValueError(f"axes {a} and {b} overlap")
    h_a = _entropy_of_table(_marginal_table(joint, a))
    h_b = _entropy_of_table(_marginal_table(joint, b))
    h_ab = _entropy_of_table(_marginal_table(joint, a + b))
    return max(h_a + h_b - h_ab, 0.0)


def conditional_mutual_information(joint: JointPmf, axes_a, axes_b, given) -> float:
    """I(a; b | given) in bits; tiny negative rounding is clamped to 0."""
    a = _names_tuple(axes_a)
    b = _names_tuple(axes_b)
    g = _names_tuple(given)
    if set(a) & set(b) or set(a) & set(g) or set(b) & set(g):
        raise ValueError("axis groups must be disjoint")
    if not g:
        return mutual_information(joint, a, b)
    h_ag = _entropy_of_table(_marginal_table(joint, a + g))
    h_bg = _entropy_of_table(_marginal_table(joint, b + g))
    h_abg = _entropy_of_table(_marginal_table(joint, a + b + g))
    h_g = _entropy_of_table(_marginal_table(joint, g))
    return max(h_ag + h_bg - h_abg - h_g, 0.0)


def binary_entropy(q: float) -> float:
    """H2(q) in bits for q in [0, 1]."""
    if not -_NEG_DUST <= q <= 1 + _NEG_DUST:
        raise ValueError(f"binary_entropy needs q in [0,1], got {q}")
    q = min(max(q, 0.0), 1.0)
    if q == 0.0 or q == 1.0:
        return 0.0
    return float(-q * np.log2(q) - (1 - q) * np.log2(1 - q))


def binary_entropy_inv(h: float) -> float:
    """The unique q in [0, 1/2] with H2(q) = h, by bisection to 1e-10."""
    if not -_NEG_DUST <= h <= 1 + _NEG_DUST:
        raise ValueError(f"binary_entropy_inv needs h in [0,1], got {h}")
    h = min(max(h, 0.0), 1.0)
    if h == 0.0:
        return 0.0
    if h == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < h:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# table plumbing
# ---------------------------------------------------------------------------


def compose(source, channel: Channel) -> JointPmf:
    """Joint of a source with a channel fed from (some of) its axes.

    source may be a Pmf (treated as a single axis named after the
    channel's sole input) or a JointPmf containing every channel input
    axis by name. The result carries all source axes plus the channel
    output axes.
    """
    if isinstance(source, Pmf):
        if len(channel.input_names) != 1:
            raise ValueError("Pmf source only feeds a single-input channel")
        source = JointPmf(channel.input_names, (source.alphabet,), source.probs)
    if not isinstance(source, JointPmf):
        raise ValueError(f"compose expects Pmf or JointPmf, got {type(source).__name__}")
    for name, alpha in zip(channel.input_names, channel.input_alphabets):
        if name not in source.names:
            raise ValueError(f"channel input axis {name!r} missing from source")
        if source.alphabet_of(name).symbols != alpha.symbols:
            raise ValueError(f"alphabet mismatch on axis {name!r}")
    collisions = set(source.names) & set(channel.output_names)
    if collisions:
        raise ValueError(f"output axes {sorted(collisions)} already in source")

    n_src = len(source.names)
    n_out = len(channel.output_names)
    if n_src + n_out > len(ascii_letters):
        raise ValueError("too many axes to compose")
    letters = ascii_letters
    src_sub = letters[:n_src]
    out_sub = letters[n_src : n_src + n_out]
    ch_sub = "".join(src_sub[source.axis(n)] for n in channel.input_names) + out_sub
    table = np.einsum(f"{src_sub},{ch_sub}->{src_sub}{out_sub}", source.table, channel.table)
    return JointPmf(
        source.names + channel.output_names,
        source.alphabets + channel.output_alphabets,
        table,
    )
