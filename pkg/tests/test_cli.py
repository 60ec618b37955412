#!/usr/bin/env python3
"""
Test script for the command-line interface.
"""

import sys
import json
sys.path.insert(0, 'src')

from click.testing import CliRunner

from app import cli
from src.concept_core import example1_class
from src.data_models import LabeledSequence, write_class_file, write_sequence_file
import logging

# Configure logging
logging.basicConfig(level=logging.INFO)


def make_runner():
    # click 8.2 dropped mix_stderr and always captures stderr separately
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        return CliRunner()


def run(*args):
    return make_runner().invoke(cli, [str(a) for a in args])


def test_example1_and_dims(tmp_path):
    """Test writing a class and reporting its dimensions."""
    print("[TEST] Testing example1 and dims commands...")
    class_path = tmp_path / "ex3.json"
    result = run('example1', '--m', 3, '--out', class_path)
    assert result.exit_code == 0, result.stderr
    assert class_path.exists()

    result = run('dims', '--class', class_path)
    assert result.exit_code == 0, result.stderr
    dims = json.loads(result.stdout)
    assert dims['littlestone'] == 1
    assert dims['sequential_graph'] == 3
    print(f"[OK] dims: {dims}")


def test_dims_with_tree():
    result = run('dims', '--class-gen', 'example1:2', '--tree')
    assert result.exit_code == 0, result.stderr
    dims = json.loads(result.stdout)
    assert dims['tree']['depth'] == 1
    assert len(dims['tree']['nodes']) == 1


def test_soa_run_csv(tmp_path):
    class_path = tmp_path / "class.json"
    seq_path = tmp_path / "seq.json"
    out_path = tmp_path / "soa.csv"
    write_class_file(class_path, example1_class(2))
    write_sequence_file(seq_path, LabeledSequence(((0, 2), (1, 0), (0, 2))))

    result = run('soa-run', '--class', class_path, '--sequence', seq_path)
    assert result.exit_code == 0, result.stderr
    lines = result.stdout.strip().split('\n')
    assert lines[0] == 't,pred,correct,mistakes'
    assert len(lines) == 4

    result = run('soa-run', '--class', class_path, '--sequence', seq_path, '--out', out_path)
    assert result.exit_code == 0, result.stderr
    assert out_path.read_text().split('\n')[0] == 't,pred,correct,mistakes'


def test_simulate_writes_outputs(tmp_path):
    """Test simulate with outputs and charts."""
    print("[TEST] Testing simulate command...")
    prefix = tmp_path / "sim"
    result = run('simulate', '--class-gen', 'example1:2', '--adversary', 'noisy:0.2',
                 '--horizon', 8, '--seed', 1, '--out', prefix, '--plot')
    assert result.exit_code == 0, result.stderr
    assert "passed=True" in result.stdout
    for suffix in ('.csv', '.json', '.html'):
        assert (tmp_path / f"sim{suffix}").exists(), suffix
    print("[OK] simulate outputs written")


def test_simulate_falsified_bound_exits_one(tmp_path):
    result = run('simulate', '--class-gen', 'example1:2', '--learner', 'soa', '--adversary', 'tree',
                 '--out', tmp_path / "bad", '--bound-scale', 0)
    assert result.exit_code == 1


def test_invalid_input_exits_two(tmp_path):
    result = run('dims')
    assert result.exit_code == 2
    assert result.stderr.startswith('error:')

    broken = tmp_path / "broken.json"
    broken.write_text('{"points": ["a"], "labels": ["0"], "hypotheses": [[3]]}')
    result = run('dims', '--class', broken)
    assert result.exit_code == 2
    assert 'error:' in result.stderr

    result = run('simulate', '--class-gen', 'example1:2', '--adversary', 'noisy:7',
                 '--out', tmp_path / "x")
    assert result.exit_code == 2

    result = run('example1', '--m', 30, '--out', tmp_path / "huge.json")
    assert result.exit_code == 2, "Cap violations exit with status 2"


def test_rademacher_and_halving():
    result = run('rademacher', '--class-gen', 'example1:1', '--horizon', 1)
    assert result.exit_code == 0, result.stderr
    values = json.loads(result.stdout)
    assert values['enumerate'] == values['recursive']

    result = run('halving', '--class-gen', 'example1:2')
    assert result.exit_code == 0, result.stderr
    assert json.loads(result.stdout)['holds']


def test_verify_is_byte_identical_across_runs(tmp_path):
    """Test that two quick verify runs write identical reports and pass."""
    print("[TEST] Testing verify reproducibility...")
    first, second = tmp_path / "first", tmp_path / "second"
    for prefix in (first, second):
        result = run('verify', '--seed', 0, '--quick', '--out', prefix)
        assert result.exit_code == 0, result.stdout
        assert result.stdout.count('PASS ') == 10
    assert (tmp_path / "first.json").read_bytes() == (tmp_path / "second.json").read_bytes()
    print("[OK] verify reports are byte-identical")


if __name__ == "__main__":
    test_dims_with_tree()
    test_rademacher_and_halving()
    print("\n[TARGET] CLI tests PASSED")
