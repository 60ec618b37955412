"""
Data models for Littlestone Lab.
Defines the core data structures used throughout the library: finite concept
classes, version spaces, labeled sequences, prediction distributions, shattered
trees, expert families and learner traces.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

try:
    from .data_validation import (ClassFileValidator, IndexValidator, SequenceValidator,
                                  ValidationError, check_cap)
    from .settings import get_config
except ImportError:
    from data_validation import (ClassFileValidator, IndexValidator, SequenceValidator,
                                 ValidationError, check_cap)
    from settings import get_config

logger = logging.getLogger(__name__)

PROBABILITY_TOLERANCE = 1e-9


def _mask_from_bools(flags: np.ndarray) -> int:
    """Pack a boolean vector into an int with bit i set iff flags[i]."""
    if flags.size == 0:
        return 0
    return int.from_bytes(np.packbits(flags, bitorder='little').tobytes(), 'little')


def popcount(mask: int) -> int:
    return bin(mask).count('1')


def mask_indices(mask: int) -> List[int]:
    """Indices of the set bits of mask, ascending."""
    indices = []
    i = 0
    while mask:
        if mask & 1:
            indices.append(i)
        mask >>= 1
        i += 1
    return indices


@dataclass(frozen=True, eq=False)
class ConceptClass:
    """Finite table of hypotheses over a finite point set with an integer label alphabet."""
    point_names: Tuple[str, ...]
    label_names: Tuple[str, ...]
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        """Validate, de-duplicate rows and index label masks."""
        object.__setattr__(self, 'point_names', tuple(self.point_names))
        object.__setattr__(self, 'label_names', tuple(self.label_names))
        if not self.point_names or not self.label_names:
            raise ValidationError("Point and label lists must be non-empty")

        table = np.asarray(self.table, dtype=np.int64)
        if table.size == 0:
            table = table.reshape(0, len(self.point_names))
        if table.ndim != 2 or table.shape[1] != len(self.point_names):
            raise ValidationError(
                f"Table must have one column per point ({len(self.point_names)}), got shape {table.shape}")
        if table.size and (table.min() < 0 or table.max() >= len(self.label_names)):
            raise ValidationError("Every table entry must be a valid label index")

        table = self._deduplicate(table)
        table.setflags(write=False)
        object.__setattr__(self, 'table', table)
        object.__setattr__(self, '_label_masks', self._build_label_masks(table))

    @staticmethod
    def _deduplicate(table: np.ndarray) -> np.ndarray:
        """Drop repeated rows, keeping first occurrences in their original order."""
        if table.shape[0] <= 1:
            return table.copy()
        _, first = np.unique(table, axis=0, return_index=True)
        kept = np.sort(first)
        if len(kept) < table.shape[0]:
            logger.debug(f"Removed {table.shape[0] - len(kept)} duplicate hypothesis rows")
        return table[kept].copy()

    @staticmethod
    def _build_label_masks(table: np.ndarray) -> Tuple[Dict[int, int], ...]:
        masks = []
        for x in range(table.shape[1]):
            column = table[:, x]
            masks.append({int(y): _mask_from_bools(column == y) for y in np.unique(column)})
        return tuple(masks)

    @property
    def n_points(self) -> int:
        return len(self.point_names)

    @property
    def n_labels(self) -> int:
        return len(self.label_names)

    @property
    def n_hypotheses(self) -> int:
        return int(self.table.shape[0])

    @property
    def full_mask(self) -> int:
        return (1 << self.n_hypotheses) - 1

    def full_space(self) -> 'VersionSpace':
        """The version space containing every hypothesis."""
        return VersionSpace(self, self.full_mask)

    def label_mask(self, x: int, y: int) -> int:
        """Bitmask of hypotheses h with h(x) = y."""
        return self._label_masks[x].get(y, 0)

    def realized_labels(self, members: int, x: int) -> List[int]:
        """Labels y realized at x by some member of the given bitmask, ascending."""
        return [y for y, mask in sorted(self._label_masks[x].items()) if mask & members]

    def label_splits(self, members: int, x: int) -> List[Tuple[int, int]]:
        """(y, members restricted to h(x) = y) for every label realized at x, ascending in y."""
        splits = []
        for y, mask in sorted(self._label_masks[x].items()):
            sub = mask & members
            if sub:
                splits.append((y, sub))
        return splits

    def validate_point(self, x: Any) -> int:
        return IndexValidator.validate_index(x, self.n_points, 'point')

    def validate_label(self, y: Any) -> int:
        return IndexValidator.validate_index(y, self.n_labels, 'label')

    def describe(self) -> Dict[str, int]:
        return {
            'points': self.n_points,
            'labels': self.n_labels,
            'hypotheses': self.n_hypotheses,
        }


@dataclass(frozen=True)
class VersionSpace:
    """Subset of the hypothesis rows of a ConceptClass, stored as a bitmask."""
    class_ref: ConceptClass
    members: int

    def __post_init__(self):
        if self.members < 0 or self.members > self.class_ref.full_mask:
            raise ValidationError(f"Member bitmask {self.members} has bits outside the class")

    def __len__(self) -> int:
        return popcount(self.members)

    @property
    def is_empty(self) -> bool:
        return self.members == 0

    def indices(self) -> List[int]:
        return mask_indices(self.members)

    def issubset(self, other: 'VersionSpace') -> bool:
        return self.class_ref is other.class_ref and (self.members & ~other.members) == 0


@dataclass(frozen=True)
class LabeledSequence:
    """Ordered list of (point index, label index) pairs; the online data stream."""
    entries: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'entries', tuple((int(x), int(y)) for x, y in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.entries)

    def __getitem__(self, t: int) -> Tuple[int, int]:
        return self.entries[t]

    @property
    def points(self) -> np.ndarray:
        return np.array([x for x, _ in self.entries], dtype=np.int64)

    @property
    def labels(self) -> np.ndarray:
        return np.array([y for _, y in self.entries], dtype=np.int64)

    def subsequence(self, indices: Sequence[int]) -> 'LabeledSequence':
        return LabeledSequence(tuple(self.entries[t] for t in indices))

    def replace(self, t: int, entry: Tuple[int, int]) -> 'LabeledSequence':
        entries = list(self.entries)
        entries[t] = entry
        return LabeledSequence(tuple(entries))

    def validate_for(self, concept_class: ConceptClass) -> 'LabeledSequence':
        """Raise ValidationError unless every index is valid for the class."""
        SequenceValidator.validate_entries(list(self.entries), concept_class.n_points,
                                           concept_class.n_labels)
        return self


@dataclass(frozen=True)
class PredictionDistribution:
    """Probability mass over labels; the learner's randomized output p_t."""
    mass: Dict[int, float]

    def __post_init__(self):
        cleaned = {int(y): float(p) for y, p in self.mass.items() if p != 0.0}
        if any(p < 0 for p in cleaned.values()):
            raise ValidationError(f"Probability masses must be non-negative: {cleaned}")
        total = sum(cleaned.values())
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ValidationError(f"Probability masses must sum to 1, got {total!r}")
        object.__setattr__(self, 'mass', dict(sorted(cleaned.items())))

    def prob(self, y: int) -> float:
        return self.mass.get(int(y), 0.0)

    def expected_loss(self, y: int) -> float:
        """Probability that a draw from this distribution differs from y."""
        return 1.0 - self.prob(y)

    def support(self) -> List[int]:
        return list(self.mass)

    def least_likely(self, n_labels: int) -> int:
        """Lowest-index label with minimal mass over the alphabet [0, n_labels)."""
        return min(range(n_labels), key=lambda y: (self.prob(y), y))


@dataclass
class ShatteredTree:
    """Perfect Littlestone tree: node address b -> (x_b, y_(b,0), y_(b,1))."""
    depth: int
    nodes: Dict[Tuple[int, ...], Tuple[int, int, int]] = field(default_factory=dict)

    def paths(self) -> Iterator[Tuple[Tuple[int, ...], LabeledSequence]]:
        """Yield (bits, edge-label sequence) for every root-to-leaf path."""
        for leaf in range(2 ** self.depth):
            bits = tuple((leaf >> (self.depth - 1 - i)) & 1 for i in range(self.depth))
            entries = []
            for t in range(self.depth):
                x, y0, y1 = self.nodes[bits[:t]]
                entries.append((x, y1 if bits[t] else y0))
            yield bits, LabeledSequence(tuple(entries))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'depth': self.depth,
            'nodes': [
                {'address': ''.join(str(b) for b in address), 'point': x, 'labels': [y0, y1]}
                for address, (x, y0, y1) in sorted(self.nodes.items(), key=lambda kv: (len(kv[0]), kv[0]))
            ],
        }


@dataclass
class ExpertFamily:
    """Enumerated experts: index sets J (family 𝒥) or pairs (J, Y) (family 𝒬)."""
    horizon: int
    budget: int
    subsets: Tuple[Tuple[int, ...], ...]
    label_assignments: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __len__(self) -> int:
        return len(self.subsets)

    def __iter__(self):
        if self.label_assignments is None:
            return iter(self.subsets)
        return iter(zip(self.subsets, self.label_assignments))

    @property
    def is_labeled(self) -> bool:
        return self.label_assignments is not None


@dataclass
class RoundRecord:
    """One round of an expert-aggregating learner."""
    t: int
    point: int
    label: int
    distribution: PredictionDistribution
    expert_losses: np.ndarray = field(repr=False)
    expected_loss: float
    opt_so_far: int


@dataclass
class AagTrace:
    """Full trace of an expert-aggregating learner on one sequence."""
    learner: str
    horizon: int
    budget: int
    n_experts: int
    eta: float
    rounds: List[RoundRecord] = field(default_factory=list)
    cumulative_expected_loss: float = 0.0
    opt: int = 0
    opt_hypothesis: Optional[int] = None
    best_expert_loss: int = 0
    regret: float = 0.0
    bound: float = 0.0
    bound_holds: bool = True
    extra: Dict[str, Any] = field(default_factory=dict)

    def expert_loss_totals(self) -> np.ndarray:
        if not self.rounds:
            return np.zeros(self.n_experts, dtype=np.int64)
        return np.sum([r.expert_losses for r in self.rounds], axis=0)

    def to_frame(self) -> pd.DataFrame:
        """Per-round table with the CSV columns of the simulate command."""
        cumulative = np.cumsum([r.expected_loss for r in self.rounds]) if self.rounds else []
        return pd.DataFrame({
            't': [r.t + 1 for r in self.rounds],
            'expected_loss': [r.expected_loss for r in self.rounds],
            'cum_expected_loss': list(cumulative),
            'opt_so_far': [r.opt_so_far for r in self.rounds],
            'bound': [self.bound] * len(self.rounds),
        }, columns=['t', 'expected_loss', 'cum_expected_loss', 'opt_so_far', 'bound'])

    def certificate(self) -> Dict[str, Any]:
        return {
            'learner': self.learner,
            'horizon': self.horizon,
            'budget': self.budget,
            'n_experts': self.n_experts,
            'eta': self.eta,
            'cumulative_expected_loss': self.cumulative_expected_loss,
            'opt': self.opt,
            'opt_hypothesis': self.opt_hypothesis,
            'best_expert_loss': self.best_expert_loss,
            'regret': self.regret,
            'bound': self.bound,
            'bound_holds': self.bound_holds,
            **self.extra,
        }


@dataclass
class WitnessCertificate:
    """Best-expert witness J* built from the best hypothesis in hindsight."""
    subset: Tuple[int, ...]
    hypothesis: int
    opt: int
    littlestone: int
    expert_mistakes: int
    in_family: bool

    @property
    def holds(self) -> bool:
        return (self.in_family and len(self.subset) <= self.littlestone
                and self.expert_mistakes <= self.opt + self.littlestone)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subset': list(self.subset),
            'hypothesis': self.hypothesis,
            'opt': self.opt,
            'littlestone': self.littlestone,
            'expert_mistakes': self.expert_mistakes,
            'in_family': self.in_family,
            'holds': self.holds,
        }


@dataclass
class HalvingCertificate:
    """Outcome of the adaptive-expert walk down a loss-class shattered tree."""
    depth: int
    littlestone: int
    n_labels: int
    n_experts: int
    path: Tuple[int, ...]
    survivor_counts: Tuple[int, ...]
    hypothesis: Optional[int]
    star_subset: Tuple[int, ...]
    star_labels: Tuple[int, ...]
    star_survives: bool
    implicit_bound: float
    closed_form_bound: float

    @property
    def final_survivors(self) -> int:
        return self.survivor_counts[-1] if self.survivor_counts else self.n_experts

    @property
    def holds(self) -> bool:
        return (self.star_survives
                and 1 <= self.final_survivors <= self.n_experts / 2 ** self.depth
                and self.depth <= self.implicit_bound + PROBABILITY_TOLERANCE
                and self.depth <= self.closed_form_bound + PROBABILITY_TOLERANCE)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'depth': self.depth,
            'littlestone': self.littlestone,
            'n_labels': self.n_labels,
            'n_experts': self.n_experts,
            'path': list(self.path),
            'survivor_counts': list(self.survivor_counts),
            'hypothesis': self.hypothesis,
            'star_subset': list(self.star_subset),
            'star_labels': list(self.star_labels),
            'star_survives': self.star_survives,
            'implicit_bound': self.implicit_bound,
            'closed_form_bound': self.closed_form_bound,
            'holds': self.holds,
        }


def concept_class_to_dict(concept_class: ConceptClass) -> Dict[str, Any]:
    """Convert ConceptClass to the class-file object for JSON serialization."""
    return {
        'points': list(concept_class.point_names),
        'labels': list(concept_class.label_names),
        'hypotheses': concept_class.table.tolist(),
    }


def sequence_to_list(sequence: LabeledSequence) -> List[List[int]]:
    """Convert LabeledSequence to the sequence-file list for JSON serialization."""
    return [[x, y] for x, y in sequence]


class DataFactory:
    """Factory class for creating data objects from decoded files."""

    @staticmethod
    def create_concept_class_from_dict(data: Dict[str, Any],
                                       cap_cells: Optional[int] = None) -> ConceptClass:
        """Create ConceptClass from a decoded class file."""
        validated = ClassFileValidator.validate_class_dict(data)
        cap = cap_cells or get_config()['cap_cells']
        check_cap("Class table", len(validated['hypotheses']) * len(validated['points']), cap)

        table = np.array(validated['hypotheses'], dtype=np.int64).reshape(
            len(validated['hypotheses']), len(validated['points']))
        return ConceptClass(validated['points'], validated['labels'], table)

    @staticmethod
    def create_sequence_from_list(entries: Any, concept_class: ConceptClass) -> LabeledSequence:
        """Create LabeledSequence from a decoded sequence file, validated against a class."""
        validated = SequenceValidator.validate_entries(entries, concept_class.n_points,
                                                       concept_class.n_labels)
        return LabeledSequence(tuple(validated))


def read_json_file(path: Union[str, Path]) -> Any:
    path = Path(path)
    with open(path, 'r', encoding='utf-8') as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"{path}: invalid JSON ({e})")


def write_json_file(path: Union[str, Path], payload: Any) -> None:
    path = Path(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write('\n')


def load_class_file(path: Union[str, Path], cap_cells: Optional[int] = None) -> ConceptClass:
    """Load a class file (fields points, labels, hypotheses)."""
    data = read_json_file(path)
    try:
        concept_class = DataFactory.create_concept_class_from_dict(data, cap_cells)
    except ValidationError as e:
        raise ValidationError(f"{path}: {e}")
    logger.info(f"Loaded class from {path}: {concept_class.describe()}")
    return concept_class


def write_class_file(path: Union[str, Path], concept_class: ConceptClass) -> None:
    write_json_file(path, concept_class_to_dict(concept_class))
    logger.info(f"Wrote class file {path}")


def load_sequence_file(path: Union[str, Path], concept_class: ConceptClass) -> LabeledSequence:
    """Load a sequence file (list of [point_index, label_index] pairs)."""
    data = read_json_file(path)
    try:
        return DataFactory.create_sequence_from_list(data, concept_class)
    except ValidationError as e:
        raise ValidationError(f"{path}: {e}")


def write_sequence_file(path: Union[str, Path], sequence: LabeledSequence) -> None:
    write_json_file(path, sequence_to_list(sequence))
