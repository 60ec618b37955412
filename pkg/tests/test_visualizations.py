#!/usr/bin/env python3
"""
Test script for trace visualizations.
"""

import sys
sys.path.insert(0, 'src')

from src.adversaries import noisy_adversary
from src.agnostic_learner import aag_run
from src.concept_core import example1_class
from src.data_models import AagTrace
from src.visualizations import (ExpertLossChart, RegretChart, create_trace_charts,
                                write_charts_html)
import logging

# Configure logging
logging.basicConfig(level=logging.INFO)


def make_trace():
    c = example1_class(2)
    return aag_run(c, noisy_adversary(c, 1, 0.2, 8, seed=0))


def test_visualizations(tmp_path):
    """Test chart creation for a learner trace."""
    print("[TEST] Testing visualizations...")
    trace = make_trace()

    charts = create_trace_charts(trace)
    assert set(charts) == {'regret', 'expert_losses'}
    assert len(charts['regret'].data) == 4, "learner, OPT, OPT + bound and per-round loss"
    assert len(RegretChart().create_chart(trace, show_round_loss=False).data) == 3

    bars = ExpertLossChart().create_chart(trace).data[0]
    assert sum(bars.y) == trace.n_experts

    path = tmp_path / "charts.html"
    write_charts_html(trace, path)
    assert 'plotly' in path.read_text()
    print("[OK] Charts created")


def test_empty_trace_chart():
    empty = AagTrace(learner='aag', horizon=0, budget=0, n_experts=1, eta=0.0)
    fig = RegretChart().create_chart(empty)
    assert len(fig.layout.annotations) == 1
    assert fig.layout.annotations[0].text == "No rounds to plot"


if __name__ == "__main__":
    test_empty_trace_chart()
    print("\n[TARGET] Visualization tests PASSED")
