"""
Dimension computations for Littlestone Lab.
Exact Littlestone and sequential graph dimensions of finite classes, shattered
tree witnesses, and an independent brute-force oracle.

The inductive recursion is exponential in the worst case; every call is
guarded by the configured recursion budget and memoized on the member bitmask.
"""

import logging
from typing import Any, Dict, Generator, List, Optional, Tuple

import numpy as np

try:
    from .cache_manager import CacheManager, get_cache_manager
    from .concept_core import is_realizable, loss_class
    from .data_models import ConceptClass, ShatteredTree, VersionSpace, popcount
    from .data_validation import (ResourceLimitError, ValidationError, VerificationError,
                                  check_cap)
    from .settings import get_config
except ImportError:
    from cache_manager import CacheManager, get_cache_manager
    from concept_core import is_realizable, loss_class
    from data_models import ConceptClass, ShatteredTree, VersionSpace, popcount
    from data_validation import (ResourceLimitError, ValidationError, VerificationError,
                                 check_cap)
    from settings import get_config

logger = logging.getLogger(__name__)

BRUTEFORCE_MAX_POINTS = 4
BRUTEFORCE_MAX_HYPOTHESES = 20


class _Budget:
    """Countdown of uncached evaluations for one top-level call."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise ResourceLimitError(
                f"Littlestone recursion exceeded its budget of {self.limit} evaluations")


def _ceiling(members: int) -> int:
    """Halving bound floor(log2 |v|) on the dimension of a non-empty version space."""
    return popcount(members).bit_length() - 1


def _candidate_points(c: ConceptClass, members: int) -> List[Tuple[int, int]]:
    """
    Points worth splitting on, as (bound, x) with the largest bound first.

    The bound is the halving bound of the second largest split plus one, which
    caps the value any pair of labels at x can reach. Constant points are
    dropped, and so is any point inducing the same partition as an earlier one.
    """
    seen = set()
    candidates = []
    for x in range(c.n_points):
        splits = c.label_splits(members, x)
        if len(splits) < 2:
            continue
        partition = frozenset(sub for _, sub in splits)
        if partition in seen:
            continue
        seen.add(partition)
        sizes = sorted((popcount(sub) for _, sub in splits), reverse=True)
        candidates.append((sizes[1].bit_length(), x))
    candidates.sort(key=lambda item: -item[0])
    return candidates


class DimensionCalculator:
    """Memoized evaluator of the inductive Littlestone recursion."""

    def __init__(self, cache: Optional[CacheManager] = None,
                 recursion_budget: Optional[int] = None):
        """
        Initialize the calculator.

        Args:
            cache: Memo cache keyed by (class, member bitmask); the global
                cache is used when omitted
            recursion_budget: Max uncached evaluations per top-level call
        """
        self.cache = cache or get_cache_manager()
        self.recursion_budget = recursion_budget or get_config()['recursion_budget']

    def littlestone(self, v: VersionSpace) -> int:
        """Littlestone dimension of a version space (−1 for the empty one)."""
        return self._ldim(v.class_ref, v.members, _Budget(self.recursion_budget))

    def of_mask(self, c: ConceptClass, members: int) -> int:
        return self._ldim(c, members, _Budget(self.recursion_budget))

    def _known(self, c: ConceptClass, members: int) -> Optional[int]:
        if members == 0:
            return -1
        if members & (members - 1) == 0:
            return 0
        return self.cache.get((c, members))

    def _ldim(self, c: ConceptClass, members: int, budget: _Budget) -> int:
        """
        Drive the node evaluations on an explicit stack.

        Each node is a generator that yields the child bitmasks it needs and
        receives their dimensions, so chains of restrictions of any length
        never touch the interpreter's recursion limit.
        """
        known = self._known(c, members)
        if known is not None:
            return known

        budget.tick()
        stack = [(members, self._evaluate(c, members))]
        sent: Optional[int] = None
        while stack:
            node, evaluation = stack[-1]
            try:
                child = evaluation.send(sent)
            except StopIteration as done:
                stack.pop()
                self.cache.set((c, node), done.value)
                sent = done.value
                continue
            sent = self._known(c, child)
            if sent is None:
                budget.tick()
                stack.append((child, self._evaluate(c, child)))
        return sent

    def _evaluate(self, c: ConceptClass, members: int) -> Generator[int, int, int]:
        ceiling = _ceiling(members)
        best = 0
        for bound, x in _candidate_points(c, members):
            if bound <= best:
                break
            # max over pairs y0 != y1 of the min is the second largest child value
            first = second = -1
            subs = sorted((sub for _, sub in c.label_splits(members, x)), key=popcount, reverse=True)
            for sub in subs:
                limit = _ceiling(sub)
                if limit <= second or limit < best:
                    break
                value = yield sub
                if value > first:
                    first, second = value, first
                elif value > second:
                    second = value
            best = max(best, second + 1)
            if best >= ceiling:
                break
        return best

    def shattered_tree(self, v: VersionSpace, d: int) -> Optional[ShatteredTree]:
        """
        Witness tree of depth d shattered by v, or None if none exists.

        Args:
            v: Version space
            d: Required depth (≥ 0)

        Returns:
            ShatteredTree passing validate_tree, or None when d > L(v)
        """
        if d < 0:
            raise ValidationError(f"Tree depth must be non-negative: {d}")
        c = v.class_ref
        if self.littlestone(v) < d:
            return None

        nodes = {}

        def build(members: int, address: tuple, remaining: int) -> None:
            if remaining == 0:
                return
            for x in range(c.n_points):
                deep = [(y, sub) for y, sub in c.label_splits(members, x)
                        if self.of_mask(c, sub) >= remaining - 1]
                if len(deep) >= 2:
                    (y0, sub0), (y1, sub1) = deep[0], deep[1]
                    nodes[address] = (x, y0, y1)
                    build(sub0, address + (0,), remaining - 1)
                    build(sub1, address + (1,), remaining - 1)
                    return
            raise VerificationError(f"No split found at node {address} for depth {remaining}")

        build(v.members, (), d)
        tree = ShatteredTree(depth=d, nodes=nodes)
        if not validate_tree(v, tree):
            raise VerificationError(f"Constructed tree of depth {d} failed validation")
        return tree


_default_calculator: Optional[DimensionCalculator] = None


def get_calculator() -> DimensionCalculator:
    """Get global calculator bound to the global memo cache."""
    global _default_calculator
    if _default_calculator is None or _default_calculator.cache is not get_cache_manager():
        _default_calculator = DimensionCalculator()
    return _default_calculator


def littlestone_dim(v: VersionSpace) -> int:
    """
    Littlestone dimension via the inductive definition.

    max over x and realized y0 ≠ y1 of min_i L(v restricted to (x, y_i)) + 1,
    with L(∅) = −1 and 0 when no point has two realized labels.

    Raises:
        ResourceLimitError: If the recursion budget is exhausted
    """
    return get_calculator().littlestone(v)


def class_littlestone_dim(c: ConceptClass) -> int:
    """Littlestone dimension of a class: that of its full version space."""
    return littlestone_dim(c.full_space())


def validate_tree(v: VersionSpace, tree: ShatteredTree) -> bool:
    """
    Check that tree is a perfect Littlestone tree shattered by v.

    Every internal node must be present with distinct sibling labels and every
    root-to-leaf path must be realizable by v.
    """
    c = v.class_ref
    for t in range(tree.depth):
        for b in range(2 ** t):
            address = tuple((b >> (t - 1 - i)) & 1 for i in range(t))
            node = tree.nodes.get(address)
            if node is None:
                return False
            x, y0, y1 = node
            if y0 == y1 or not (0 <= x < c.n_points):
                return False
            if not (0 <= y0 < c.n_labels and 0 <= y1 < c.n_labels):
                return False
    return all(is_realizable(v, path) for _, path in tree.paths())


def shattered_tree(v: VersionSpace, d: int) -> Optional[ShatteredTree]:
    """Witness tree of depth d shattered by v, or None."""
    return get_calculator().shattered_tree(v, d)


def littlestone_dim_bruteforce(v: VersionSpace, dmax: int) -> int:
    """
    Largest n ≤ dmax admitting an explicit shattered assignment.

    Enumerates node points and edge-label pairs over the whole alphabet and
    checks each root-to-leaf path by filtering the member rows directly. Shares
    no code with the inductive recursion, so it serves as its oracle.

    Raises:
        ResourceLimitError: If the class has more than 4 points or 20 hypotheses
    """
    c = v.class_ref
    check_cap("Brute-force oracle point count", c.n_points, BRUTEFORCE_MAX_POINTS)
    check_cap("Brute-force oracle hypothesis count", c.n_hypotheses, BRUTEFORCE_MAX_HYPOTHESES)

    rows = c.table[v.indices()] if not v.is_empty else np.zeros((0, c.n_points), dtype=np.int64)

    def consistent(points: list, labels: list) -> np.ndarray:
        if not points:
            return rows
        return rows[np.all(rows[:, points] == np.array(labels), axis=1)]

    def tree_exists(points: list, labels: list, depth: int) -> bool:
        # 2^depth leaves need pairwise distinct hypotheses
        if len(consistent(points, labels)) < 2 ** depth:
            return False
        if depth == 0:
            return True
        for x in range(c.n_points):
            for y0 in range(c.n_labels):
                for y1 in range(y0 + 1, c.n_labels):
                    if (tree_exists(points + [x], labels + [y0], depth - 1)
                            and tree_exists(points + [x], labels + [y1], depth - 1)):
                        return True
        return False

    best = -1
    for n in range(0, dmax + 1):
        if not tree_exists([], [], n):
            break
        best = n
    return best


def sequential_graph_dim(c: ConceptClass) -> int:
    """
    Sequential graph dimension: Littlestone dimension of the 0-1 loss class.

    Raises:
        ResourceLimitError: If the product domain exceeds the cell cap
    """
    if c.n_hypotheses == 0:
        return -1
    return class_littlestone_dim(loss_class(c))


def sg_dimension_bound(littlestone: int, n_labels: int) -> float:
    """Closed-form bound 2·L·log₂(e·|Y|) on the sequential graph dimension."""
    return 2.0 * littlestone * float(np.log2(np.e * n_labels))


def class_dimensions(c: ConceptClass) -> Dict[str, Any]:
    """Dimensions reported by the dims command."""
    littlestone = class_littlestone_dim(c)
    tree = shattered_tree(c.full_space(), littlestone) if littlestone >= 0 else None
    sg = sequential_graph_dim(c)
    logger.info(f"Dimensions: L={littlestone}, d_SG={sg}")
    return {
        'littlestone': littlestone,
        'sequential_graph': sg,
        'witness_depth': tree.depth if tree is not None else -1,
    }
