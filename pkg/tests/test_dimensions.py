#!/usr/bin/env python3
"""
Test script for Littlestone and sequential graph dimensions.
"""

import sys
import math
sys.path.insert(0, 'src')

import numpy as np
import pytest

from src.cache_manager import CacheManager
from src.concept_core import (example1_class, full_binary_class, make_rng, random_class,
                              restrict)
from src.data_models import ConceptClass, ShatteredTree, VersionSpace
from src.data_validation import ResourceLimitError, ValidationError
from src.dimensions import (DimensionCalculator, class_dimensions, class_littlestone_dim,
                            littlestone_dim, littlestone_dim_bruteforce, sequential_graph_dim,
                            sg_dimension_bound, shattered_tree, validate_tree)
import logging

# Configure logging
logging.basicConfig(level=logging.INFO)


def test_known_dimensions():
    """Test dimensions of classes with known values."""
    print("[TEST] Testing known dimensions...")
    assert class_littlestone_dim(example1_class(3)) == 1
    assert sequential_graph_dim(example1_class(3)) == 3
    for n in (1, 2, 3):
        assert class_littlestone_dim(full_binary_class(n)) == n
    assert sequential_graph_dim(full_binary_class(2)) == 2, "Binary classes keep their dimension"
    print("[OK] Known dimensions match")


def test_degenerate_version_spaces():
    c = ConceptClass(['a'], ['0', '1'], np.array([[1]]))
    assert class_littlestone_dim(c) == 0
    assert littlestone_dim(VersionSpace(c, 0)) == -1
    empty = ConceptClass(['a'], ['0'], np.zeros((0, 1), dtype=np.int64))
    assert class_littlestone_dim(empty) == -1
    assert sequential_graph_dim(empty) == -1


def test_bruteforce_oracle_agrees():
    """Test the recursion against the independent brute-force oracle."""
    print("[TEST] Testing recursion against brute force...")
    for seed in range(20):
        c = random_class(seed, 3, 3, 8)
        recursive = class_littlestone_dim(c)
        brute = littlestone_dim_bruteforce(c.full_space(), c.n_hypotheses.bit_length())
        assert recursive == brute, f"seed {seed}: recursion {recursive} vs brute force {brute}"
    print("[OK] 20 random classes agree")


def test_bruteforce_caps():
    with pytest.raises(ResourceLimitError):
        littlestone_dim_bruteforce(full_binary_class(5).full_space(), 5)


def test_shattered_tree_witness():
    """Test tree construction and validation."""
    print("[TEST] Testing shattered trees...")
    v = full_binary_class(3).full_space()
    tree = shattered_tree(v, 3)
    assert tree is not None
    assert len(tree.nodes) == 7
    assert validate_tree(v, tree)
    assert shattered_tree(v, 4) is None
    assert shattered_tree(v, 0).nodes == {}
    with pytest.raises(ValidationError):
        shattered_tree(v, -1)
    print(f"[OK] Depth-3 tree: {tree.to_dict()['nodes'][0]}")


def test_validate_tree_rejects_bad_trees():
    v = full_binary_class(1).full_space()
    assert not validate_tree(v, ShatteredTree(1, {(): (0, 1, 1)})), "Sibling labels must differ"
    assert not validate_tree(v, ShatteredTree(2, {(): (0, 0, 1)})), "Missing internal nodes"
    assert validate_tree(v, ShatteredTree(1, {(): (0, 0, 1)}))

    single = ConceptClass(['a'], ['0', '1'], np.array([[0]])).full_space()
    assert not validate_tree(single, ShatteredTree(1, {(): (0, 0, 1)})), "Path 1 is not realizable"


def test_recursion_budget():
    calculator = DimensionCalculator(cache=CacheManager(1000), recursion_budget=1)
    with pytest.raises(ResourceLimitError):
        calculator.littlestone(full_binary_class(3).full_space())


def test_class_dimensions_report():
    result = class_dimensions(example1_class(2))
    assert result == {'littlestone': 1, 'sequential_graph': 2, 'witness_depth': 1}


def test_sg_dimension_bound():
    assert sg_dimension_bound(2, 4) == pytest.approx(2 * 2 * math.log2(math.e * 4))
    assert sg_dimension_bound(0, 3) == 0.0
    for m in (2, 3, 4):
        c = example1_class(m)
        assert sequential_graph_dim(c) <= sg_dimension_bound(class_littlestone_dim(c), c.n_labels)


def test_separation_up_to_six_points():
    """Test L = 1 and d_SG = m on the subset-labeled classes up to m = 6."""
    print("[TEST] Testing dimension separation...")
    for m in range(2, 7):
        c = example1_class(m)
        assert class_littlestone_dim(c) == 1
        assert sequential_graph_dim(c) == m, f"m={m}"
    print("[OK] d_SG = m for m = 2..6")


def test_long_restriction_chain():
    """Test a class whose recursion nests hundreds of restrictions."""
    n = 700
    table = np.vstack([np.zeros((1, n), dtype=np.int64), np.eye(n, dtype=np.int64)])
    c = ConceptClass([f"x{i}" for i in range(n)], ['0', '1'], table)
    calculator = DimensionCalculator(cache=CacheManager(10_000))
    assert calculator.littlestone(c.full_space()) == 1


def random_subspace(v: VersionSpace, rng: np.random.Generator) -> VersionSpace:
    keep = [i for i in v.indices() if rng.random() < 0.5]
    return VersionSpace(v.class_ref, sum(1 << i for i in keep))


def test_dimension_invariants():
    """Test monotonicity, the halving bound and the single dimension-keeping label."""
    print("[TEST] Testing dimension invariants...")
    for seed in range(30):
        c = random_class(seed, 4, 3, 12)
        rng = make_rng(seed, 1)
        w = random_subspace(c.full_space(), rng)
        v = random_subspace(w, rng)
        assert littlestone_dim(v) <= littlestone_dim(w), f"seed {seed}: not monotone"

        for space in (c.full_space(), w, v):
            if space.is_empty:
                continue
            dim = littlestone_dim(space)
            assert dim <= int(math.floor(math.log2(len(space)))), f"seed {seed}: halving bound"
            for x in range(c.n_points):
                keeping = [y for y in range(c.n_labels)
                           if littlestone_dim(restrict(space, x, y)) == dim]
                assert len(keeping) <= 1, f"seed {seed}, x={x}: labels {keeping} keep L={dim}"
    print("[OK] Invariants hold on 30 classes")


if __name__ == "__main__":
    test_known_dimensions()
    test_degenerate_version_spaces()
    test_bruteforce_oracle_agrees()
    test_shattered_tree_witness()
    test_class_dimensions_report()
    test_separation_up_to_six_points()
    test_dimension_invariants()
    print("\n[TARGET] Dimension tests PASSED")
