#!/usr/bin/env python3
"""
Test script for the Standard Optimal Algorithm.
"""

import sys
sys.path.insert(0, 'src')

import numpy as np
import pytest

from src.adversaries import random_realizable_sequence
from src.concept_core import full_binary_class, random_class
from src.data_models import ConceptClass, LabeledSequence, VersionSpace
from src.data_validation import PreconditionError
from src.agnostic_learner import expert_predict
from src.dimensions import class_littlestone_dim, littlestone_dim
from src.soa import SoaState, conservative_soa, soa_predict, soa_run, soa_run_frame
import logging

# Configure logging
logging.basicConfig(level=logging.INFO)


def test_soa_prediction_rules():
    """Test argmax, tie-breaking and the empty-space default."""
    print("[TEST] Testing SOA predictions...")
    # label 1 keeps two hypotheses that still disagree on b
    c = ConceptClass(['a', 'b'], ['0', '1'], np.array([[1, 0], [1, 1], [0, 0]]))
    assert soa_predict(c.full_space(), 0) == 1

    # only realized labels compete; ties go to the lowest
    tied = ConceptClass(['a'], ['0', '1', '2'], np.array([[2], [1]]))
    assert soa_predict(tied.full_space(), 0) == 1

    assert soa_predict(VersionSpace(c, 0), 0) == 0
    print("[OK] Prediction rules hold")


def test_soa_state_counts_mistakes():
    c = full_binary_class(1)
    learner = SoaState(c)
    assert learner.predict(0) == 0
    assert learner.update(0, 1) is True
    assert learner.mistakes == 1
    assert learner.predict(0) == 1

    # contradicting label empties the version space for good
    assert learner.update(0, 0) is True
    assert learner.version_space.is_empty
    assert learner.predict(0) == 0
    learner.update(0, 0)
    assert learner.version_space.is_empty
    assert learner.history_length == 3


def test_soa_mistake_bound_on_realizable_streams():
    """Test mistakes ≤ L on realizable sequences."""
    print("[TEST] Testing the SOA mistake bound...")
    for seed in range(25):
        c = random_class(seed, 4, 3, 10)
        s = random_realizable_sequence(c, 12, seed, stream=seed + 1)
        _, mistakes = soa_run(c, s)
        assert mistakes <= class_littlestone_dim(c), f"seed {seed}: {mistakes} mistakes"
    print("[OK] Mistake bound holds on 25 classes")


def test_soa_run_frame():
    c = full_binary_class(2)
    s = LabeledSequence(((0, 1), (1, 1), (0, 1)))
    frame = soa_run_frame(c, s)
    assert list(frame.columns) == ['t', 'pred', 'correct', 'mistakes']
    assert frame['t'].tolist() == [1, 2, 3]
    assert frame['pred'].tolist() == [0, 0, 1]
    assert frame['correct'].tolist() == [0, 0, 1]
    assert frame['mistakes'].tolist() == [1, 2, 2]


def test_conservative_soa():
    c = full_binary_class(2)
    s = LabeledSequence(((0, 1), (1, 1), (0, 1)))
    assert conservative_soa(c, s) == (0, 1)
    with pytest.raises(PreconditionError):
        conservative_soa(c, LabeledSequence(((0, 1), (0, 0))))


def test_mistakes_shrink_the_dimension():
    """Test that every full-update mistake on a realizable stream lowers L."""
    print("[TEST] Testing dimension decrease on mistakes...")
    for seed in range(20):
        c = random_class(seed, 4, 3, 12)
        state = SoaState(c)
        for x, y in random_realizable_sequence(c, 10, seed, stream=seed + 7):
            before = littlestone_dim(state.version_space)
            if state.update(x, y):
                assert littlestone_dim(state.version_space) < before, f"seed {seed}: L did not drop"
    print("[OK] L drops after every mistake")


def test_conservative_replay_errs_exactly_on_absorbed_rounds():
    """Test that the expert built from J is wrong on J and right elsewhere."""
    for seed in range(20):
        c = random_class(seed, 4, 3, 12)
        s = random_realizable_sequence(c, 12, seed, stream=seed + 3)
        absorbed = conservative_soa(c, s)
        assert len(absorbed) <= class_littlestone_dim(c)
        for t, (x, y) in enumerate(s):
            wrong = expert_predict(c, absorbed, s, t, x) != y
            assert wrong == (t in absorbed), f"seed {seed}, round {t}"


if __name__ == "__main__":
    test_soa_prediction_rules()
    test_soa_state_counts_mistakes()
    test_soa_mistake_bound_on_realizable_streams()
    test_soa_run_frame()
    test_conservative_soa()
    test_mistakes_shrink_the_dimension()
    test_conservative_replay_errs_exactly_on_absorbed_rounds()
    print("\n[TARGET] SOA tests PASSED")
