"""
Exhaustive oracles for Littlestone Lab.
Best hypothesis in hindsight, exact sequential Rademacher complexity at toy
scale, and the uniform ε-approximation error of a subsample.
"""

import logging
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

try:
    from .data_models import ConceptClass, LabeledSequence
    from .data_validation import SequenceValidator, ValidationError, check_cap
    from .settings import get_config
except ImportError:
    from data_models import ConceptClass, LabeledSequence
    from data_validation import SequenceValidator, ValidationError, check_cap
    from settings import get_config

logger = logging.getLogger(__name__)

# Elements per enumeration chunk of the (hypothesis, tree, path, round) tensor
_CHUNK_ELEMENTS = 2 ** 22


def _require_hypotheses(c: ConceptClass, operation: str) -> None:
    if c.n_hypotheses == 0:
        raise ValidationError(f"{operation} is undefined for an empty class")


def hypothesis_loss_matrix(c: ConceptClass, s: LabeledSequence) -> np.ndarray:
    """H×T matrix with entry 𝟙[h(x_t) ≠ y_t]."""
    s.validate_for(c)
    if len(s) == 0:
        return np.zeros((c.n_hypotheses, 0), dtype=np.int64)
    return (c.table[:, s.points] != s.labels[None, :]).astype(np.int64)


def opt_mistakes(c: ConceptClass, s: LabeledSequence) -> Tuple[int, int]:
    """
    Best hypothesis in hindsight.

    Returns:
        Tuple of (hypothesis index, mistake count); lowest index wins ties

    Raises:
        ValidationError: If the class is empty or s does not fit it
    """
    _require_hypotheses(c, "opt_mistakes")
    totals = hypothesis_loss_matrix(c, s).sum(axis=1)
    best = int(np.argmin(totals))
    return best, int(totals[best])


def running_opt(c: ConceptClass, s: LabeledSequence) -> np.ndarray:
    """OPT over each prefix s[:t+1]."""
    _require_hypotheses(c, "running_opt")
    losses = hypothesis_loss_matrix(c, s)
    if losses.shape[1] == 0:
        return np.zeros(0, dtype=np.int64)
    return np.cumsum(losses, axis=1).min(axis=0)


def _pair_loss_columns(c: ConceptClass) -> np.ndarray:
    """Distinct columns of the H×(|X|·|Y|) loss table over all (x, y) pairs."""
    labels = np.arange(c.n_labels, dtype=np.int64)
    table = (c.table[:, :, None] != labels[None, None, :]).astype(np.int64)
    table = table.reshape(c.n_hypotheses, c.n_points * c.n_labels)
    return np.unique(table, axis=1)


def _tree_count(c: ConceptClass, horizon: int) -> int:
    return (c.n_points * c.n_labels) ** (2 ** horizon - 1)


def sequential_rademacher(c: ConceptClass, horizon: int, cap: Optional[int] = None) -> float:
    """
    Exact sequential Rademacher complexity by complete tree enumeration.

    Every complete (X×Y)-valued tree of depth T is enumerated; for each the
    expectation over all 2^T sign paths of max_h (1/T) Σ ε_t 𝟙[h(x_t) ≠ y_t] is
    computed with integer sums and the maximum over trees is returned.

    Args:
        c: Non-empty concept class
        horizon: Depth T ≥ 1
        cap: Maximum number of trees (defaults to LLAB_RADEMACHER_TREES)

    Raises:
        ValidationError: If the class is empty or T < 1
        ResourceLimitError: If (|X|·|Y|)^(2^T − 1) exceeds the cap
    """
    _require_hypotheses(c, "sequential_rademacher")
    if horizon < 1:
        raise ValidationError(f"Horizon must be at least 1: {horizon}")
    cap = cap or get_config()['rademacher_trees']
    check_cap(f"Sequential Rademacher enumeration at T={horizon}", _tree_count(c, horizon), cap)

    columns = _pair_loss_columns(c)
    n_columns = columns.shape[1]
    n_nodes = 2 ** horizon - 1
    n_paths = 2 ** horizon

    paths = np.arange(n_paths)[:, None]
    rounds = np.arange(horizon)[None, :]
    # node of round t on path p is indexed by the sign prefix, breadth-first
    path_nodes = (2 ** rounds - 1) + (paths >> (horizon - rounds))
    signs = 2 * ((paths >> (horizon - 1 - rounds)) & 1) - 1

    total_trees = n_columns ** n_nodes
    chunk = max(1, _CHUNK_ELEMENTS // (c.n_hypotheses * n_paths * horizon))
    place_values = n_columns ** np.arange(n_nodes, dtype=np.int64)

    best_numerator = None
    for start in range(0, total_trees, chunk):
        codes = np.arange(start, min(start + chunk, total_trees), dtype=np.int64)
        trees = (codes[:, None] // place_values[None, :]) % n_columns
        along_paths = trees[:, path_nodes]                      # (B, P, T)
        signed = (columns[:, along_paths] * signs).sum(axis=-1)  # (H, B, P)
        numerators = signed.max(axis=0).sum(axis=-1)            # (B,)
        chunk_best = int(numerators.max())
        if best_numerator is None or chunk_best > best_numerator:
            best_numerator = chunk_best

    value = best_numerator / (n_paths * horizon)
    logger.info(f"Sequential Rademacher (enumeration) at T={horizon}: {value} over {total_trees} trees")
    return value


def sequential_rademacher_recursive(c: ConceptClass, horizon: int) -> float:
    """
    Exact sequential Rademacher complexity by the game-value recursion.

    W(S, T) = max_h S_h and W(S, t) = max_(x,y) W(S + ℓ, t+1) + W(S − ℓ, t+1)
    over per-hypothesis signed loss sums S, so the value is W(0, 0) / (2^T·T).
    Agrees exactly with sequential_rademacher and reaches larger T.
    """
    _require_hypotheses(c, "sequential_rademacher_recursive")
    if horizon < 1:
        raise ValidationError(f"Horizon must be at least 1: {horizon}")

    columns = [tuple(int(v) for v in col) for col in _pair_loss_columns(c).T]
    memo: Dict[Tuple[Tuple[int, ...], int], int] = {}

    def game_value(sums: Tuple[int, ...], t: int) -> int:
        if t == horizon:
            return max(sums)
        key = (sums, t)
        if key in memo:
            return memo[key]
        best = None
        for column in columns:
            plus = tuple(s + l for s, l in zip(sums, column))
            minus = tuple(s - l for s, l in zip(sums, column))
            value = game_value(plus, t + 1) + game_value(minus, t + 1)
            if best is None or value > best:
                best = value
        memo[key] = best
        return best

    numerator = game_value(tuple([0] * c.n_hypotheses), 0)
    value = numerator / (2 ** horizon * horizon)
    logger.info(f"Sequential Rademacher (recursion) at T={horizon}: {value}, {len(memo)} states")
    return value


def aulln_error(c: ConceptClass, indices: Sequence[int], s: LabeledSequence) -> float:
    """
    Uniform ε-approximation error of the subsample K of s.

    sup over hypotheses of |mean loss over K − mean loss over s|, with repeated
    indices in K counted once per occurrence.

    Raises:
        ValidationError: If K is empty, an index is out of range or the class is empty
    """
    _require_hypotheses(c, "aulln_error")
    indices = SequenceValidator.validate_multiset(list(indices), len(s))
    losses = hypothesis_loss_matrix(c, s)
    gap = np.abs(losses[:, indices].mean(axis=1) - losses.mean(axis=1))
    return float(gap.max())
