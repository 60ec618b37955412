#!/usr/bin/env python3
"""
Test script for concept-class core operations.
"""

import sys
sys.path.insert(0, 'src')

import numpy as np
import pytest

from src.concept_core import (example1_class, full_binary_class, is_realizable, loss_class,
                              make_rng, random_class, restrict, restrict_all, sub_class)
from src.adversaries import random_realizable_sequence
from src.data_models import LabeledSequence
from src.data_validation import ResourceLimitError, ValidationError
import logging

# Configure logging
logging.basicConfig(level=logging.INFO)


def test_example1_class_layout():
    """Test the subset-labeled class construction."""
    print("[TEST] Testing example1 class construction...")
    c = example1_class(3)
    assert c.n_points == 3
    assert c.n_hypotheses == 8
    assert c.n_labels == 9, "Expected '*' plus one label per subset"
    assert c.label_names[0] == '*'
    assert c.table[0].tolist() == [0, 0, 0], "Row 0 is the constant-* hypothesis"
    # A = {x1, x3} has bitmask 5
    assert c.table[5].tolist() == [6, 0, 6]
    assert c.label_names[6] == '{x1,x3}'
    print("[OK] example1 class layout")


def test_restrict_and_realizable():
    """Test restriction, iterated restriction and realizability."""
    print("[TEST] Testing version-space restriction...")
    c = example1_class(3)
    v = c.full_space()

    outside = restrict(v, 0, 0)
    assert outside.indices() == [0, 2, 4, 6]
    assert len(v) == 8, "restrict must not modify its input"
    assert restrict_all(v, [(0, 2), (1, 0)]).indices() == [1]

    assert is_realizable(v, LabeledSequence(((0, 2), (1, 0))))
    assert not is_realizable(v, LabeledSequence(((0, 2), (1, 2))))
    assert is_realizable(v, LabeledSequence()), "Empty sequence is always realizable"

    with pytest.raises(ValidationError):
        restrict(v, 3, 0)
    with pytest.raises(ValidationError):
        restrict(v, 0, 9)
    with pytest.raises(ValidationError):
        is_realizable(v, LabeledSequence(((5, 0),)))
    print("[OK] Restriction works")


def test_make_rng_streams():
    """Test counter-based generator reproducibility."""
    first = make_rng(7, 3).random(5)
    again = make_rng(7, 3).random(5)
    other = make_rng(7, 4).random(5)
    assert np.array_equal(first, again), "Same seed and stream must reproduce"
    assert not np.array_equal(first, other), "Streams must differ"


def test_random_class_is_deterministic():
    a = random_class(11, 3, 2, 6)
    b = random_class(11, 3, 2, 6)
    assert np.array_equal(a.table, b.table)
    assert a.n_hypotheses <= 6
    assert a.table.max() < 2
    assert a.point_names == ('x0', 'x1', 'x2')


def test_loss_class_values():
    """Test the binary loss class over the product domain."""
    print("[TEST] Testing loss class...")
    c = example1_class(2)
    lc = loss_class(c)
    assert lc.n_points == c.n_points * c.n_labels
    assert lc.label_names == ('0', '1')
    # exactly one agreeing label per point
    assert (lc.table.sum(axis=1) == c.n_points * (c.n_labels - 1)).all()
    for h in range(c.n_hypotheses):
        for x in range(c.n_points):
            assert lc.table[h, x * c.n_labels + c.table[h, x]] == 0
    print("[OK] Loss class values")


def test_full_binary_and_sub_class():
    c = full_binary_class(3)
    assert c.n_hypotheses == 8
    assert c.label_names == ('0', '1')
    assert len({tuple(row) for row in c.table.tolist()}) == 8

    sub = sub_class(c, [0, 2, 2])
    assert sub.n_hypotheses == 2
    assert sub.table.tolist() == c.table[[0, 2]].tolist()
    assert sub_class(c, []).n_hypotheses == 0


def test_generator_caps_and_arguments(monkeypatch):
    """Test size caps and argument validation of the generators."""
    print("[TEST] Testing resource caps...")
    with pytest.raises(ResourceLimitError):
        example1_class(10, cap_cells=100)
    with pytest.raises(ResourceLimitError):
        random_class(0, 10, 2, 100, cap_cells=50)
    with pytest.raises(ValidationError):
        example1_class(0)
    with pytest.raises(ValidationError):
        random_class(0, 0, 2, 3)

    monkeypatch.setenv('LLAB_CAP_CELLS', '16')
    with pytest.raises(ResourceLimitError):
        example1_class(3)
    print("[OK] Caps enforced")


def test_realizability_ignores_order():
    """Test that permuting a sequence never changes realizability."""
    outcomes = set()
    for seed in range(20):
        c = random_class(seed, 3, 3, 5)
        rng = make_rng(seed, 4)
        arbitrary = LabeledSequence(tuple(zip(rng.integers(0, 3, size=5).tolist(),
                                              rng.integers(0, 3, size=5).tolist())))
        for s in (arbitrary, random_realizable_sequence(c, 5, seed)):
            expected = is_realizable(c.full_space(), s)
            outcomes.add(expected)
            for _ in range(3):
                shuffled = s.subsequence(rng.permutation(len(s)).tolist())
                assert is_realizable(c.full_space(), shuffled) == expected, f"seed {seed}"
    assert outcomes == {True, False}, "Both outcomes should be exercised"


if __name__ == "__main__":
    test_example1_class_layout()
    test_restrict_and_realizable()
    test_make_rng_streams()
    test_random_class_is_deterministic()
    test_loss_class_values()
    test_full_binary_and_sub_class()
    test_realizability_ignores_order()
    print("\n[TARGET] Concept core tests PASSED")
