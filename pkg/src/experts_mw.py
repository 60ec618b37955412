"""
Multiplicative weights for Littlestone Lab.
Exponential weighting of experts with η = √((8/T)·ln N), stored in log space,
shared by every expert-aggregating learner.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.special import softmax

try:
    from .data_models import PROBABILITY_TOLERANCE, PredictionDistribution
    from .data_validation import ValidationError, VerificationError
except ImportError:
    from data_models import PROBABILITY_TOLERANCE, PredictionDistribution
    from data_validation import ValidationError, VerificationError

logger = logging.getLogger(__name__)


def _check_horizon_and_count(horizon: int, n_experts: int) -> None:
    if horizon < 1:
        raise ValidationError(f"Horizon must be at least 1: {horizon}")
    if n_experts < 1:
        raise ValidationError(f"Expert count must be at least 1: {n_experts}")


def mw_eta(horizon: int, n_experts: int) -> float:
    """Learning rate √((8/T)·ln N); 0 for a single expert."""
    _check_horizon_and_count(horizon, n_experts)
    return math.sqrt(8.0 / horizon * math.log(n_experts))


def mw_regret_bound(horizon: int, n_experts: int) -> float:
    """Regret bound √((T/2)·ln N) of multiplicative weights with mw_eta."""
    _check_horizon_and_count(horizon, n_experts)
    return math.sqrt(horizon / 2.0 * math.log(n_experts))


@dataclass
class MWState:
    """Expert weights w_i = exp(−η · cumulative_loss_i), kept as logarithms."""
    n_experts: int
    eta: float
    log_weights: np.ndarray = field(default=None, repr=False)
    cumulative_losses: np.ndarray = field(default=None, repr=False)
    rounds: int = 0

    def __post_init__(self):
        if self.n_experts < 1:
            raise ValidationError(f"Expert count must be at least 1: {self.n_experts}")
        if self.eta < 0:
            raise ValidationError(f"Learning rate must be non-negative: {self.eta}")
        if self.log_weights is None:
            self.log_weights = np.zeros(self.n_experts, dtype=np.float64)
        if self.cumulative_losses is None:
            self.cumulative_losses = np.zeros(self.n_experts, dtype=np.int64)

    @classmethod
    def for_horizon(cls, horizon: int, n_experts: int) -> 'MWState':
        return cls(n_experts=n_experts, eta=mw_eta(horizon, n_experts))

    @property
    def weights(self) -> np.ndarray:
        """Unnormalized weights; may underflow for long runs, use probabilities() instead."""
        return np.exp(self.log_weights)

    def probabilities(self) -> np.ndarray:
        """Normalized weights."""
        probs = softmax(self.log_weights)
        total = probs.sum()
        if not np.isfinite(total) or total <= 0:
            raise VerificationError("Multiplicative weights have zero or non-finite total mass")
        return probs


def mw_update(state: MWState, losses: Sequence[int]) -> MWState:
    """
    Multiply each weight by exp(−η·loss_i) and advance the round counter.

    Args:
        state: Weights to update in place
        losses: One 0/1 loss per expert

    Returns:
        The updated state

    Raises:
        ValidationError: If losses has the wrong length or non-binary entries
    """
    losses = np.asarray(losses)
    if losses.shape != (state.n_experts,):
        raise ValidationError(
            f"Loss vector length {losses.size} does not match expert count {state.n_experts}")
    if losses.size and not np.isin(losses, (0, 1)).all():
        raise ValidationError("Expert losses must be 0 or 1")

    losses = losses.astype(np.int64)
    state.cumulative_losses = state.cumulative_losses + losses
    state.log_weights = state.log_weights - state.eta * losses
    state.rounds += 1
    return state


def mw_mix(state: MWState, expert_outputs: Sequence[int]) -> PredictionDistribution:
    """
    Mixture distribution: mass of y is the normalized weight of experts predicting y.

    Raises:
        ValidationError: If the output vector has the wrong length
        VerificationError: If the total weight is zero
    """
    outputs = np.asarray(expert_outputs, dtype=np.int64)
    if outputs.shape != (state.n_experts,):
        raise ValidationError(
            f"Output vector length {outputs.size} does not match expert count {state.n_experts}")
    mass = np.bincount(outputs, weights=state.probabilities())
    return PredictionDistribution({int(y): float(p) for y, p in enumerate(mass) if p > 0})


def check_mixture_identity(state: MWState, expert_outputs: np.ndarray, label: int,
                           distribution: PredictionDistribution) -> float:
    """
    Assert 1 − p(label) equals the weighted average 0-1 loss of the experts.

    Returns:
        The expected loss 1 − p(label)

    Raises:
        VerificationError: If the two sides differ by more than the tolerance
    """
    expected = distribution.expected_loss(label)
    weighted = float(np.dot(state.probabilities(), np.asarray(expert_outputs) != label))
    if abs(expected - weighted) > PROBABILITY_TOLERANCE:
        raise VerificationError(
            f"Mixture-loss identity violated: 1 - p(y) = {expected!r}, weighted loss = {weighted!r}")
    return expected


@dataclass
class ProtocolResult:
    """Outcome of the binary expert-advice protocol."""
    learner_loss: float
    best_expert_loss: int
    regret: float
    bound: float
    outcomes: np.ndarray = field(repr=False)

    @property
    def bound_holds(self) -> bool:
        return self.regret <= self.bound + PROBABILITY_TOLERANCE


def run_expert_protocol(expert_bits: np.ndarray,
                        outcomes: Optional[Sequence[int]] = None) -> ProtocolResult:
    """
    Binary prediction with expert advice under multiplicative weights.

    The learner predicts p_t = Σ w_i e_(i,t) / Σ w_i and suffers |p_t − y_t|.
    Without outcomes the adversary answers y_t = 1 iff p_t < ½.

    Args:
        expert_bits: N×T matrix of expert predictions in {0, 1}
        outcomes: Optional length-T outcome sequence in {0, 1}

    Returns:
        ProtocolResult with realized regret and √((T/2)·ln N)
    """
    bits = np.asarray(expert_bits)
    if bits.ndim != 2 or bits.shape[0] < 1 or bits.shape[1] < 1:
        raise ValidationError(f"Expert matrix must be N×T with N, T ≥ 1, got shape {bits.shape}")
    if not np.isin(bits, (0, 1)).all():
        raise ValidationError("Expert predictions must be 0 or 1")
    n_experts, horizon = bits.shape
    if outcomes is not None:
        outcomes = np.asarray(outcomes, dtype=np.int64)
        if outcomes.shape != (horizon,) or not np.isin(outcomes, (0, 1)).all():
            raise ValidationError(f"Outcomes must be {horizon} values in {{0, 1}}")

    state = MWState.for_horizon(horizon, n_experts)
    realized = np.zeros(horizon, dtype=np.int64)
    learner_loss = 0.0
    for t in range(horizon):
        p_t = float(np.dot(state.probabilities(), bits[:, t]))
        y_t = int(outcomes[t]) if outcomes is not None else int(p_t < 0.5)
        realized[t] = y_t
        learner_loss += abs(p_t - y_t)
        mw_update(state, (bits[:, t] != y_t).astype(np.int64))

    best = int(state.cumulative_losses.min())
    return ProtocolResult(
        learner_loss=learner_loss,
        best_expert_loss=best,
        regret=learner_loss - best,
        bound=mw_regret_bound(horizon, n_experts),
        outcomes=realized,
    )
