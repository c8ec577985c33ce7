"""Rate-distortion-cost region evaluators for action-dependent side information."""

from .compdel import dsbs_compdel_rate, gaussian_compdel_rate
from .encoder import (
    check_action_recoverable,
    encoder_switch_rate,
    lossless_encoder_actions_rate,
)
from .extensions import rate_limited_action_rate, successive_refinement_region
from .lossless import (
    four_state_switching_rate,
    lossless_decoder_actions_rate,
    schannel_curve,
    schannel_rate,
    switching_lossless_rate,
)
from .lossy import (
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
from .models import (
    ENCODER_SWITCH,
    ERASURE,
    FOUR_STATE,
    PER_DECODER,
    ActionModel,
    RatePoint,
    SwitchingModel,
    action_policy_channel,
    compose_action_joint,
    expected_cost,
)

__all__ = [
    "ActionModel",
    "ENCODER_SWITCH",
    "ERASURE",
    "FOUR_STATE",
    "PER_DECODER",
    "RatePoint",
    "SwitchingModel",
    "action_policy_channel",
    "binary_switching_lossy_rate",
    "binary_switching_lossy_surface",
    "causal_lossy_rate",
    "check_action_recoverable",
    "compose_action_joint",
    "dsbs_compdel_rate",
    "encoder_switch_rate",
    "expected_cost",
    "four_state_switching_rate",
    "gaussian_compdel_rate",
    "hb_kaspi_eval",
    "hb_kaspi_search",
    "layered_lossy_eval",
    "layered_lossy_search",
    "lossless_decoder_actions_rate",
    "lossless_encoder_actions_rate",
    "rate_limited_action_rate",
    "schannel_curve",
    "schannel_rate",
    "successive_refinement_region",
    "switching_lossless_rate",
    "switching_lossy_rate",
    "validate_degraded_side_info",
]
