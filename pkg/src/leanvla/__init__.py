"""leanvla: action-aware model scheduling and visual token pruning.

Two inference shortcuts for velocity-controlled manipulation policies, plus a
synthetic pick-and-place harness to measure them end to end:

* a scheduler that routes steady mid-speed stretches of an episode to a
  cheap ridge-regression action generator instead of the full policy, and
* a token pruner that keeps edge-bearing image patches unconditionally and
  fills the remaining speed-dependent budget by attention importance.
"""

from .actions import Action, ActionBuffer, ActionSource, SchedulerConfig
from .attention import AttentionInputs, accumulate_importance, attention_weights, select_semantic
from .canny import CannyParams, GrayImage, canny_edges, gaussian_blur, sobel_gradients
from .config import RunConfig, dump_config, load_config, parse_config, save_config
from .errors import ConfigError, DomainError, PgmFormatError, PredictionRejected
from .pgm import decode_pgm, encode_pgm, read_pgm, write_pgm
from .ridge import RidgeModel, fit_ridge, generate_action, predict_next
from .scheduler import ActionType, RouteDecision, TriggerReason, classify_action_type, lwm_trigger
from .tokens import (
    PruningConfig,
    TokenGrid,
    extract_spatial_tokens,
    order_preserving_union,
    prune_tokens,
    retain_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionBuffer",
    "ActionSource",
    "SchedulerConfig",
    "AttentionInputs",
    "accumulate_importance",
    "attention_weights",
    "select_semantic",
    "CannyParams",
    "GrayImage",
    "canny_edges",
    "gaussian_blur",
    "sobel_gradients",
    "RunConfig",
    "dump_config",
    "load_config",
    "parse_config",
    "save_config",
    "ConfigError",
    "DomainError",
    "PgmFormatError",
    "PredictionRejected",
    "decode_pgm",
    "encode_pgm",
    "read_pgm",
    "write_pgm",
    "RidgeModel",
    "fit_ridge",
    "generate_action",
    "predict_next",
    "ActionType",
    "RouteDecision",
    "TriggerReason",
    "classify_action_type",
    "lwm_trigger",
    "PruningConfig",
    "TokenGrid",
    "extract_spatial_tokens",
    "order_preserving_union",
    "prune_tokens",
    "retain_ratio",
    "__version__",
]
