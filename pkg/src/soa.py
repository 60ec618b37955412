"""
Standard Optimal Algorithm for Littlestone Lab.
Multiclass SOA in streaming (full-update) and conservative-update forms.
"""

import logging
from typing import List, Optional, Tuple

import pandas as pd

try:
    from .concept_core import is_realizable
    from .data_models import ConceptClass, LabeledSequence, VersionSpace
    from .data_validation import PreconditionError
    from .dimensions import get_calculator
except ImportError:
    from concept_core import is_realizable
    from data_models import ConceptClass, LabeledSequence, VersionSpace
    from data_validation import PreconditionError
    from dimensions import get_calculator

logger = logging.getLogger(__name__)

DEFAULT_LABEL = 0


def predict_from_mask(c: ConceptClass, members: int, x: int) -> int:
    """
    SOA prediction for the version space given by a member bitmask.

    Only labels realized at x compete; the lowest label wins ties and the
    empty version space predicts DEFAULT_LABEL.
    """
    splits = c.label_splits(members, x)
    if not splits:
        return DEFAULT_LABEL
    if len(splits) == 1:
        return splits[0][0]
    calculator = get_calculator()
    best_label, best_dim = DEFAULT_LABEL, -2
    for y, sub in splits:
        dim = calculator.of_mask(c, sub)
        if dim > best_dim:
            best_label, best_dim = y, dim
    return best_label


def soa_predict(v: VersionSpace, x: int) -> int:
    """
    Label maximizing the Littlestone dimension of the restricted version space.

    Args:
        v: Version space (may be empty)
        x: Point index

    Returns:
        Label index; lowest index among maximizers, 0 for the empty space

    Raises:
        ValidationError: If x is not a valid point index
    """
    x = v.class_ref.validate_point(x)
    return predict_from_mask(v.class_ref, v.members, x)


class SoaState:
    """Streaming SOA learner with full updates."""

    deterministic = True

    def __init__(self, concept_class: ConceptClass, version_space: Optional[VersionSpace] = None):
        self.concept_class = concept_class
        self.version_space = version_space or concept_class.full_space()
        self.history_length = 0
        self.mistakes = 0
        self.default_label = DEFAULT_LABEL

    def predict(self, x: int) -> int:
        return soa_predict(self.version_space, x)

    def update(self, x: int, y: int, prediction: Optional[int] = None) -> bool:
        """
        Absorb (x, y) and count a mistake if the prediction was wrong.

        Returns:
            True if the prediction for x differed from y
        """
        c = self.concept_class
        x, y = c.validate_point(x), c.validate_label(y)
        if prediction is None:
            prediction = self.predict(x)
        wrong = prediction != y
        if wrong:
            self.mistakes += 1
        self.history_length += 1

        if not self.version_space.is_empty:
            restricted = VersionSpace(c, self.version_space.members & c.label_mask(x, y))
            if restricted.is_empty:
                logger.warning(f"Version space became empty at round {self.history_length - 1}")
            self.version_space = restricted
        return wrong


def soa_run(c: ConceptClass, s: LabeledSequence) -> Tuple[List[int], int]:
    """
    Run SOA with full updates over a sequence.

    Args:
        c: Concept class
        s: Labeled sequence, realizable or not

    Returns:
        Tuple of (per-round predictions, mistake count)
    """
    s.validate_for(c)
    state = SoaState(c)
    predictions = []
    for x, y in s:
        prediction = state.predict(x)
        predictions.append(prediction)
        state.update(x, y, prediction)
    logger.debug(f"SOA run: {state.mistakes} mistakes over {len(s)} rounds")
    return predictions, state.mistakes


def soa_run_frame(c: ConceptClass, s: LabeledSequence) -> pd.DataFrame:
    """Per-round SOA table with columns t, pred, correct, mistakes (t is 1-based)."""
    predictions, _ = soa_run(c, s)
    correct = [int(p == y) for p, y in zip(predictions, s.labels)]
    mistakes = pd.Series([1 - ok for ok in correct], dtype='int64').cumsum()
    return pd.DataFrame({
        't': range(1, len(s) + 1),
        'pred': predictions,
        'correct': correct,
        'mistakes': mistakes,
    }, columns=['t', 'pred', 'correct', 'mistakes'])


def conservative_soa(c: ConceptClass, s: LabeledSequence) -> Tuple[int, ...]:
    """
    Replay s through SOA, absorbing an example only when the prediction is wrong.

    Args:
        c: Concept class
        s: Sequence realizable by c

    Returns:
        Ordered indices of the absorbed (mistake) rounds

    Raises:
        PreconditionError: If s is not realizable by c
    """
    if not is_realizable(c.full_space(), s):
        raise PreconditionError("conservative_soa requires a sequence realizable by the class")

    members = c.full_mask
    absorbed = []
    for t, (x, y) in enumerate(s):
        if predict_from_mask(c, members, x) != y:
            absorbed.append(t)
            members &= c.label_mask(x, y)
    return tuple(absorbed)
