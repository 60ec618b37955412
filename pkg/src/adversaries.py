"""
Sequence generators for Littlestone Lab.
Forcing, noisy and greedy adversaries producing labeled streams for the learners.
"""

import logging
from typing import Optional

try:
    from .agnostic_learner import AgnosticLearner
    from .concept_core import make_rng
    from .data_models import ConceptClass, LabeledSequence
    from .data_validation import PreconditionError, ValidationError
    from .dimensions import class_littlestone_dim, shattered_tree
except ImportError:
    from agnostic_learner import AgnosticLearner
    from concept_core import make_rng
    from data_models import ConceptClass, LabeledSequence
    from data_validation import PreconditionError, ValidationError
    from dimensions import class_littlestone_dim, shattered_tree

logger = logging.getLogger(__name__)


def tree_walk_adversary(c: ConceptClass, learner) -> LabeledSequence:
    """
    Force a deterministic learner to err on every round of a shattered tree.

    At each node the adversary presents x_b and reveals whichever sibling label
    differs from the learner's prediction, then moves to that child.

    Args:
        c: Concept class with Littlestone dimension d ≥ 0
        learner: Object with predict(x), update(x, y) and deterministic = True

    Returns:
        Realizable sequence of length d

    Raises:
        PreconditionError: If the learner is randomized or the class is empty
    """
    if not getattr(learner, 'deterministic', False):
        raise PreconditionError("tree_walk_adversary needs a deterministic learner")
    depth = class_littlestone_dim(c)
    if depth < 0:
        raise PreconditionError("tree_walk_adversary needs a non-empty class")

    tree = shattered_tree(c.full_space(), depth)
    address = ()
    entries = []
    for _ in range(depth):
        x, label0, label1 = tree.nodes[address]
        prediction = learner.predict(x)
        bit = 1 if prediction == label0 else 0
        y = label1 if bit else label0
        learner.update(x, y)
        entries.append((x, y))
        address += (bit,)
    logger.info(f"Tree walk forced {depth} rounds")
    return LabeledSequence(tuple(entries))


def noisy_adversary(c: ConceptClass, hypothesis: int, rate: float, horizon: int,
                    seed: int, stream: int = 0) -> LabeledSequence:
    """
    Stream labeled by one hypothesis with random label corruption.

    Points are uniform; each label is replaced with probability rate by a
    uniformly chosen different label.

    Raises:
        ValidationError: If rate is outside [0, 1] or hypothesis is out of range
    """
    if not (0.0 <= rate <= 1.0):
        raise ValidationError(f"Noise rate must be in [0, 1]: {rate}")
    if horizon < 0:
        raise ValidationError(f"Horizon must be non-negative: {horizon}")
    if not (0 <= hypothesis < c.n_hypotheses):
        raise ValidationError(f"Hypothesis index {hypothesis} out of range [0, {c.n_hypotheses})")

    rng = make_rng(seed, stream)
    points = rng.integers(0, c.n_points, size=horizon)
    flips = rng.random(horizon) < rate
    offsets = rng.integers(1, max(c.n_labels, 2), size=horizon)

    labels = c.table[hypothesis, points].copy()
    if c.n_labels > 1:
        labels[flips] = (labels[flips] + offsets[flips]) % c.n_labels
    return LabeledSequence(tuple(zip(points.tolist(), labels.tolist())))


def random_realizable_sequence(c: ConceptClass, horizon: int, seed: int,
                               stream: int = 0) -> LabeledSequence:
    """Noise-free stream of a hypothesis drawn from the same seeded stream."""
    if c.n_hypotheses == 0:
        raise ValidationError("An empty class realizes no sequence")
    rng = make_rng(seed, stream)
    hypothesis = int(rng.integers(0, c.n_hypotheses))
    points = rng.integers(0, c.n_points, size=horizon)
    labels = c.table[hypothesis, points]
    return LabeledSequence(tuple(zip(points.tolist(), labels.tolist())))


def greedy_regret_adversary(c: ConceptClass, horizon: int, seed: int, stream: int = 0,
                            budget: Optional[int] = None,
                            cap: Optional[int] = None) -> LabeledSequence:
    """
    Crafted stream against the agnostic learner.

    Points come from the seeded stream; each label is the least likely label
    under the learner's current mixture (lowest index on ties).
    """
    learner = AgnosticLearner(c, horizon, budget=budget, cap=cap)
    points = make_rng(seed, stream).integers(0, c.n_points, size=horizon)
    entries = []
    for x in points.tolist():
        distribution = learner.predict_proba(x)
        y = distribution.least_likely(c.n_labels)
        learner.update(x, y)
        entries.append((x, y))
    return LabeledSequence(tuple(entries))
