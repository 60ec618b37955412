"""
Concept-class core for Littlestone Lab.
Version-space restriction, realizability, and the class generators and
transforms every other module consumes.
"""

import logging
from typing import Iterable, Optional, Tuple

import numpy as np

try:
    from .data_models import ConceptClass, LabeledSequence, VersionSpace
    from .data_validation import ValidationError, check_cap
    from .settings import get_config
except ImportError:
    from data_models import ConceptClass, LabeledSequence, VersionSpace
    from data_validation import ValidationError, check_cap
    from settings import get_config

logger = logging.getLogger(__name__)

STAR_LABEL = '*'


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """
    Counter-based generator for a seed and an independent stream number.

    Args:
        seed: Root seed
        stream: Stream index; distinct streams never overlap

    Returns:
        numpy Generator backed by Philox
    """
    bit_generator = np.random.Philox(seed)
    if stream:
        bit_generator = bit_generator.jumped(stream)
    return np.random.Generator(bit_generator)


def restrict(v: VersionSpace, x: int, y: int) -> VersionSpace:
    """
    Restrict a version space to the hypotheses with h(x) = y.

    Args:
        v: Version space
        x: Point index
        y: Label index

    Returns:
        New version space; v is unchanged

    Raises:
        ValidationError: If x or y is not a valid index for v's class
    """
    c = v.class_ref
    x = c.validate_point(x)
    y = c.validate_label(y)
    return VersionSpace(c, v.members & c.label_mask(x, y))


def restrict_all(v: VersionSpace, pairs: Iterable[Tuple[int, int]]) -> VersionSpace:
    """Iterated restriction by every (x, y) pair."""
    for x, y in pairs:
        v = restrict(v, x, y)
        if v.is_empty:
            break
    return v


def is_realizable(v: VersionSpace, s: LabeledSequence) -> bool:
    """
    True iff some member of v labels every example of s correctly.

    Raises:
        ValidationError: If s has indices outside v's class
    """
    s.validate_for(v.class_ref)
    return not restrict_all(v, s).is_empty


def example1_class(m: int, cap_cells: Optional[int] = None) -> ConceptClass:
    """
    Build the class {h_A : A ⊆ X} over m points, with h_A(x) = A if x ∈ A else *.

    Label 0 is '*'; label 1 + a is the subset with bitmask a. Hypothesis rows
    are ordered by the bitmask of A, so row 0 is the constant-* hypothesis.

    Args:
        m: Number of points
        cap_cells: Optional cap on table cells (defaults to the configured cap)

    Raises:
        ValidationError: If m < 1
        ResourceLimitError: If 2^m * m exceeds the cap
    """
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ValidationError(f"m must be a positive integer: {m}")
    cap = cap_cells or get_config()['cap_cells']
    check_cap(f"example1_class({m}) table", (2 ** m) * m, cap)

    point_names = [f"x{i + 1}" for i in range(m)]
    subsets = np.arange(2 ** m, dtype=np.int64)
    label_names = [STAR_LABEL] + [
        '{' + ','.join(point_names[i] for i in range(m) if (a >> i) & 1) + '}' for a in subsets
    ]

    membership = (subsets[:, None] >> np.arange(m)) & 1
    table = np.where(membership == 1, subsets[:, None] + 1, 0)

    logger.info(f"Built example1 class with m={m}: {2 ** m} hypotheses, {len(label_names)} labels")
    return ConceptClass(point_names, label_names, table)


def full_binary_class(n: int, cap_cells: Optional[int] = None) -> ConceptClass:
    """All 2^n functions from n points to {0, 1}; its Littlestone dimension is n."""
    if n < 1:
        raise ValidationError(f"n must be at least 1: {n}")
    cap = cap_cells or get_config()['cap_cells']
    check_cap(f"full_binary_class({n}) table", (2 ** n) * n, cap)
    codes = np.arange(2 ** n, dtype=np.int64)
    table = (codes[:, None] >> np.arange(n)) & 1
    return ConceptClass([f"x{i + 1}" for i in range(n)], ['0', '1'], table)


def random_class(seed: int, nx: int, ny: int, nh: int,
                 cap_cells: Optional[int] = None) -> ConceptClass:
    """
    Random class of at most nh distinct hypotheses over nx points and ny labels.

    Args:
        seed: Seed of the generator; the table is a deterministic function of it
        nx: Number of points
        ny: Number of labels
        nh: Number of rows drawn before de-duplication

    Raises:
        ValidationError: If a size is below 1
        ResourceLimitError: If nh * nx exceeds the cap
    """
    for name, value in (('nx', nx), ('ny', ny), ('nh', nh)):
        if value < 1:
            raise ValidationError(f"{name} must be at least 1: {value}")
    cap = cap_cells or get_config()['cap_cells']
    check_cap("random_class table", nh * nx, cap)

    rng = make_rng(seed)
    table = rng.integers(0, ny, size=(nh, nx), dtype=np.int64)
    return ConceptClass([f"x{i}" for i in range(nx)], [f"y{j}" for j in range(ny)], table)


def loss_class(c: ConceptClass, cap_cells: Optional[int] = None) -> ConceptClass:
    """
    Binary class over the product domain X×Y with value 𝟙[h(x) ≠ y] at (x, y).

    Point (x, y) has index x * |Y| + y. Label 0 means "agrees", label 1 means
    "disagrees".

    Raises:
        ResourceLimitError: If |H| * |X| * |Y| exceeds the cap
    """
    cap = cap_cells or get_config()['cap_cells']
    check_cap("loss_class product table", c.n_hypotheses * c.n_points * c.n_labels, cap)

    point_names = [f"({px},{ly})" for px in c.point_names for ly in c.label_names]
    labels = np.arange(c.n_labels, dtype=np.int64)
    table = (c.table[:, :, None] != labels[None, None, :]).astype(np.int64)
    table = table.reshape(c.n_hypotheses, c.n_points * c.n_labels)
    return ConceptClass(point_names, ['0', '1'], table)


def sub_class(c: ConceptClass, rows: Iterable[int]) -> ConceptClass:
    """Class made of a subset of c's rows, same points and labels."""
    rows = sorted(set(int(r) for r in rows))
    return ConceptClass(c.point_names, c.label_names, c.table[rows] if rows else
                        np.zeros((0, c.n_points), dtype=np.int64))
