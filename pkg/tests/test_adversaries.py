#!/usr/bin/env python3
"""
Test script for sequence generators and adversaries.
"""

import sys
sys.path.insert(0, 'src')

import pytest

from src.adversaries import (greedy_regret_adversary, noisy_adversary,
                             random_realizable_sequence, tree_walk_adversary)
from src.agnostic_learner import AgnosticLearner
from src.concept_core import example1_class, full_binary_class, is_realizable, random_class
from src.data_models import ConceptClass
from src.data_validation import PreconditionError, ValidationError
from src.dimensions import class_littlestone_dim
from src.soa import SoaState
import numpy as np
import logging

# Configure logging
logging.basicConfig(level=logging.INFO)


def test_tree_walk_forces_every_mistake():
    """Test that the tree walk makes SOA err on all L rounds."""
    print("[TEST] Testing the forcing adversary...")
    for n in (1, 2, 3, 4):
        c = full_binary_class(n)
        learner = SoaState(c)
        s = tree_walk_adversary(c, learner)
        assert len(s) == n
        assert learner.mistakes == n, f"n={n}: only {learner.mistakes} mistakes"
        assert is_realizable(c.full_space(), s)
    print("[OK] SOA forced to L mistakes for L = 1..4")


class ConstantLearner:
    """Always predicts label 0."""
    deterministic = True

    def __init__(self):
        self.mistakes = 0

    def predict(self, x):
        return 0

    def update(self, x, y):
        self.mistakes += int(y != 0)


class FirstConsistentLearner:
    """Predicts with the lowest-index hypothesis consistent with the history."""
    deterministic = True

    def __init__(self, c):
        self.c = c
        self.alive = np.ones(c.n_hypotheses, dtype=bool)
        self.mistakes = 0

    def predict(self, x):
        rows = np.flatnonzero(self.alive)
        return int(self.c.table[rows[0], x]) if rows.size else 0

    def update(self, x, y):
        self.mistakes += int(self.predict(x) != y)
        self.alive &= self.c.table[:, x] == y


def test_tree_walk_forces_other_learners():
    """Test the tree walk against deterministic learners other than SOA."""
    classes = [full_binary_class(3), example1_class(3)]
    classes += [random_class(seed, 3, 3, 8) for seed in range(5)]
    for c in classes:
        depth = class_littlestone_dim(c)
        for learner in (ConstantLearner(), FirstConsistentLearner(c)):
            s = tree_walk_adversary(c, learner)
            assert len(s) == depth
            assert learner.mistakes == depth, f"{type(learner).__name__}: {learner.mistakes} < {depth}"
            assert is_realizable(c.full_space(), s)


def test_tree_walk_preconditions():
    c = example1_class(2)
    with pytest.raises(PreconditionError):
        tree_walk_adversary(c, AgnosticLearner(c, 4))
    empty = ConceptClass(['a'], ['0'], np.zeros((0, 1), dtype=np.int64))
    with pytest.raises(PreconditionError):
        tree_walk_adversary(empty, SoaState(empty))


def test_noisy_adversary():
    """Test label corruption at the extremes and reproducibility."""
    c = example1_class(2)
    clean = noisy_adversary(c, 3, 0.0, 20, seed=1)
    assert (c.table[3, clean.points] == clean.labels).all()
    flipped = noisy_adversary(c, 3, 1.0, 20, seed=1)
    assert (c.table[3, flipped.points] != flipped.labels).all()
    assert (flipped.labels < c.n_labels).all()

    assert noisy_adversary(c, 3, 0.3, 20, seed=5, stream=2).entries == \
        noisy_adversary(c, 3, 0.3, 20, seed=5, stream=2).entries
    assert noisy_adversary(c, 3, 0.3, 50, seed=5, stream=2).entries != \
        noisy_adversary(c, 3, 0.3, 50, seed=5, stream=3).entries

    with pytest.raises(ValidationError):
        noisy_adversary(c, 3, 1.5, 4, seed=0)
    with pytest.raises(ValidationError):
        noisy_adversary(c, 9, 0.1, 4, seed=0)


def test_random_realizable_sequence():
    for seed in range(10):
        c = random_class(seed, 3, 3, 6)
        s = random_realizable_sequence(c, 10, seed)
        assert len(s) == 10
        assert is_realizable(c.full_space(), s)


def test_greedy_adversary_picks_least_likely_label():
    """Test that each crafted label is the learner's least likely one."""
    print("[TEST] Testing the greedy adversary...")
    c = example1_class(2)
    s = greedy_regret_adversary(c, 8, seed=2)
    assert len(s) == 8
    assert s.entries == greedy_regret_adversary(c, 8, seed=2).entries

    learner = AgnosticLearner(c, 8)
    for x, y in s:
        assert y == learner.predict_proba(x).least_likely(c.n_labels)
        learner.update(x, y)
    print(f"[OK] Crafted sequence: {s.entries}")


if __name__ == "__main__":
    test_tree_walk_forces_every_mistake()
    test_tree_walk_forces_other_learners()
    test_tree_walk_preconditions()
    test_noisy_adversary()
    test_random_realizable_sequence()
    test_greedy_adversary_picks_least_likely_label()
    print("\n[TARGET] Adversary tests PASSED")
