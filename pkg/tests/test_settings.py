#!/usr/bin/env python3
"""
Test script for configuration and input validation.
"""

import sys
sys.path.insert(0, 'src')

import pytest

from src.data_validation import (IndexValidator, ResourceLimitError, SequenceValidator,
                                 ValidationError, check_cap, validate_experiment_parameters)
from src.settings import get_cap, get_config
import logging

# Configure logging
logging.basicConfig(level=logging.INFO)


def test_default_config(monkeypatch):
    for name in ('LLAB_CAP_CELLS', 'LLAB_EXPERT_CAP', 'LLAB_LOG_LEVEL'):
        monkeypatch.delenv(name, raising=False)
    config = get_config()
    assert config['cap_cells'] == 2 ** 20
    assert config['expert_cap'] == 250_000
    assert config['log_level'] == 'INFO'


def test_environment_overrides(monkeypatch):
    """Test reading caps from the environment."""
    print("[TEST] Testing environment configuration...")
    monkeypatch.setenv('LLAB_EXPERT_CAP', '10')
    monkeypatch.setenv('LLAB_LOG_LEVEL', 'debug')
    config = get_config()
    assert config['expert_cap'] == 10
    assert config['log_level'] == 'DEBUG'
    assert get_cap('expert_cap', {'expert_cap': 20}) == 20

    monkeypatch.setenv('LLAB_EXPERT_CAP', 'many')
    with pytest.raises(ValidationError):
        get_config()
    monkeypatch.setenv('LLAB_EXPERT_CAP', '0')
    with pytest.raises(ValidationError):
        get_config()
    print("[OK] Environment configuration works")


def test_override_validation():
    with pytest.raises(ValidationError):
        get_config({'no_such_cap': 3})
    with pytest.raises(ValidationError):
        get_config({'cap_cells': -1})


def test_check_cap():
    check_cap("table", 10, 10)
    with pytest.raises(ResourceLimitError, match="above the cap"):
        check_cap("table", 11, 10)


def test_index_validation():
    assert IndexValidator.validate_index(2, 3, 'point') == 2
    for bad in (3, -1, True, 1.5, 'a'):
        with pytest.raises(ValidationError):
            IndexValidator.validate_index(bad, 3, 'point')
    with pytest.raises(ValidationError):
        SequenceValidator.validate_multiset([], 4)
    assert SequenceValidator.validate_multiset([1, 1, 3], 4) == [1, 1, 3]


def test_experiment_parameters():
    params = validate_experiment_parameters(16, 2, 0, 0.25)
    assert params == {'horizon': 16, 'trials': 2, 'seed': 0, 'rate': 0.25}
    for args in ((0, 1, 0), (4, 0, 0), (4, 1, -1)):
        with pytest.raises(ValidationError):
            validate_experiment_parameters(*args)
    with pytest.raises(ValidationError):
        validate_experiment_parameters(4, 1, 0, 1.5)


if __name__ == "__main__":
    test_override_validation()
    test_check_cap()
    test_index_validation()
    test_experiment_parameters()
    print("\n[TARGET] Settings tests PASSED")
