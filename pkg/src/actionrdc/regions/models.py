"""Model containers shared by the rate evaluators.

ActionModel is the general setting: a source alphabet, an action alphabet
with per-action costs, and a channel from (x, a) to the side-information
outputs seen by each of K decoders. SwitchingModel captures the special
structure where one underlying side-information variable Y exists and the
action only routes it: each decoder sees either Y or the erasure symbol
"e" depending on the action.
"""

from dataclasses import dataclass

import numpy as np

from ..probcore import Alphabet, Channel, CostFn, JointPmf, Pmf, compose

ERASURE = "e"

PER_DECODER = "per-decoder"
FOUR_STATE = "four-state"
ENCODER_SWITCH = "encoder-switch"


@dataclass(frozen=True)
class ActionModel:
    actions: Alphabet
    cost: CostFn
    channel: Channel

    def __post_init__(self):
        if self.cost.alphabet.symbols != self.actions.symbols:
            raise ValueError("cost table must be indexed by the action alphabet")
        if len(self.channel.input_names) != 2:
            raise ValueError("channel must have exactly the inputs (x, a)")
        if self.channel.input_names != ("x", "a"):
            raise ValueError(f"channel inputs must be named ('x', 'a'), got {self.channel.input_names}")
        if self.channel.input_alphabets[1].symbols != self.actions.symbols:
            raise ValueError("channel action axis does not match the action alphabet")
        if self.K < 1:
            raise ValueError("need at least one decoder output")
        expected = tuple(f"y{j + 1}" for j in range(self.K))
        if self.channel.output_names != expected:
            raise ValueError(f"channel outputs must be named {expected}")

    @property
    def K(self) -> int:
        return len(self.channel.output_names)

    @property
    def source_alphabet(self) -> Alphabet:
        return self.channel.input_alphabets[0]


@dataclass(frozen=True)
class RatePoint:
    """A point of a rate-distortion-cost region.

    rate is a float, or an (R1, R2) tuple for two-stage descriptions.
    achieving holds the distributions and maps that attain the point;
    method says how it was produced ("closed form", "achievable upper
    bound (search)", or "evaluation (given distributions)").
    """

    rate: object
    cost: float
    distortions: tuple
    achieving: dict
    method: str

    def __post_init__(self):
        values = self.rate if isinstance(self.rate, tuple) else (self.rate,)
        for v in values:
            if v < -1e-12:
                raise ValueError(f"negative rate {v}")


def _conditional_rows(joint: JointPmf):
    """p(y|x) rows from a two-axis joint; zero-mass rows become uniform."""
    table = joint.table
    row_mass = table.sum(axis=1, keepdims=True)
    ny = table.shape[1]
    safe = np.where(row_mass > 0, table / np.where(row_mass > 0, row_mass, 1.0), 1.0 / ny)
    return safe


@dataclass(frozen=True)
class SwitchingModel:
    """Side information Y routed to decoders by the action.

    variant "per-decoder": A in {1..K}, decoder j sees Y iff A = j.
    variant "four-state": K=2, A in {0,1,2,3}; 0 = nobody sees Y,
    j in {1,2} = only decoder j sees Y, 3 = both see the same realization.
    variant "encoder-switch": structurally identical to per-decoder with
    K=2; the tag records that the action is taken at the encoder, which
    selects the rate formula that applies.
    """

    base_joint: JointPmf
    K: int
    variant: str = PER_DECODER
    costs: tuple = None

    def __post_init__(self):
        if len(self.base_joint.names) != 2:
            raise ValueError("base_joint must have exactly the axes (x, y)")
        if self.variant not in (PER_DECODER, FOUR_STATE, ENCODER_SWITCH):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == PER_DECODER and self.K < 1:
            raise ValueError("need K >= 1 decoders")
        if self.variant in (FOUR_STATE, ENCODER_SWITCH) and self.K != 2:
            raise ValueError(f"variant {self.variant!r} is defined for K=2")
        y_alpha = self.base_joint.alphabets[1]
        if ERASURE in y_alpha.symbols:
            raise ValueError(
                f"base side-information alphabet already contains {ERASURE!r}; cannot add the erasure symbol"
            )
        n_actions = 4 if self.variant == FOUR_STATE else (self.K if self.variant == PER_DECODER else 2)
        if self.costs is not None and len(self.costs) != n_actions:
            raise ValueError(f"expected {n_actions} action costs, got {len(self.costs)}")

    def action_alphabet(self) -> Alphabet:
        if self.variant == FOUR_STATE:
            return Alphabet(("0", "1", "2", "3"))
        return Alphabet(tuple(str(j + 1) for j in range(self.K)))

    def source_pmf(self) -> Pmf:
        from ..probcore import marginalize

        return marginalize(self.base_joint, self.base_joint.names[0])

    def to_action_model(self) -> ActionModel:
        x_alpha = self.base_joint.alphabets[0]
        y_alpha = self.base_joint.alphabets[1]
        out_alpha = Alphabet(y_alpha.symbols + (ERASURE,))
        e_idx = len(y_alpha)
        actions = self.action_alphabet()
        py_x = _conditional_rows(self.base_joint)
        nx, ny = py_x.shape
        n_a = len(actions)
        n_out = ny + 1

        if self.variant == FOUR_STATE:
            table = np.zeros((nx, n_a, n_out, n_out))
            for x in range(nx):
                table[x, 0, e_idx, e_idx] = 1.0
                for y in range(ny):
                    table[x, 1, y, e_idx] = py_x[x, y]
                    table[x, 2, e_idx, y] = py_x[x, y]
                    table[x, 3, y, y] = py_x[x, y]
            out_names = ("y1", "y2")
            out_alphas = (out_alpha, out_alpha)
        else:
            shape = (nx, n_a) + (n_out,) * self.K
            table = np.zeros(shape)
            for x in range(nx):
                for a in range(n_a):
                    for y in range(ny):
                        pattern = [e_idx] * self.K
                        pattern[a] = y
                        table[(x, a) + tuple(pattern)] += py_x[x, y]
            out_names = tuple(f"y{j + 1}" for j in range(self.K))
            out_alphas = (out_alpha,) * self.K

        channel = Channel(("x", "a"), (x_alpha, actions), out_names, out_alphas, table)
        costs = self.costs if self.costs is not None else (0.0,) * n_a
        return ActionModel(actions, CostFn(actions, np.asarray(costs, dtype=float)), channel)


def action_policy_channel(model: ActionModel, table) -> Channel:
    """Wrap a p(a|x) table as a Channel matching the model's alphabets."""
    return Channel(("x",), (model.source_alphabet,), ("a",), (model.actions,), np.asarray(table, dtype=float))


def compose_action_joint(source: Pmf, policy, model: ActionModel) -> JointPmf:
    """Joint over (x, a, y1..yK) from p(x), p(a|x) and the model channel."""
    if not isinstance(policy, Channel):
        policy = action_policy_channel(model, policy)
    if source.alphabet.symbols != model.source_alphabet.symbols:
        raise ValueError("source alphabet does not match the model")
    xa = compose(JointPmf(("x",), (source.alphabet,), source.probs), policy)
    return compose(xa, model.channel)


def expected_cost(source: Pmf, table, model: ActionModel) -> float:
    """E cost(A) under p(x) p(a|x); infinite if forbidden actions get mass."""
    table = np.asarray(table, dtype=float)
    mass = source.probs @ table
    lam = model.cost.costs
    infinite = ~np.isfinite(lam)
    if np.any(mass[infinite] > 1e-15):
        return np.inf
    return float(mass[~infinite] @ lam[~infinite])
