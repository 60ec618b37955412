"""
Visualization components for Littlestone Lab.
Plotly charts of learner traces: cumulative loss against OPT and the regret
bound, and the spread of final expert losses.
"""

import plotly.graph_objects as go
from plotly.subplots import make_subplots
import numpy as np
from pathlib import Path
from typing import Dict, Union
import logging

try:
    from .data_models import AagTrace
except ImportError:
    from data_models import AagTrace

logger = logging.getLogger(__name__)


class RegretChart:
    """Cumulative expected loss, OPT so far and OPT + bound per round."""

    def __init__(self, title: str = "Cumulative Loss and Regret Bound"):
        """
        Initialize regret chart.

        Args:
            title: Chart title
        """
        self.title = title
        self.colors = {
            'learner': '#1f77b4',
            'opt': '#2ca02c',
            'bound': '#d62728',
            'round_loss': '#9467bd',
        }

    def create_chart(self, trace: AagTrace, show_round_loss: bool = True) -> go.Figure:
        """
        Create the chart for one trace.

        Args:
            trace: Learner trace
            show_round_loss: Add a subplot with the per-round expected loss

        Returns:
            Plotly figure
        """
        if not trace.rounds:
            return self._create_empty_chart()

        frame = trace.to_frame()
        rows = 2 if show_round_loss else 1
        fig = make_subplots(
            rows=rows, cols=1,
            shared_xaxes=True,
            vertical_spacing=0.08,
            row_heights=[0.7, 0.3] if show_round_loss else [1.0],
            subplot_titles=["Cumulative loss", "Expected loss per round"][:rows]
        )

        fig.add_trace(
            go.Scatter(
                x=frame['t'],
                y=frame['cum_expected_loss'],
                mode='lines+markers',
                name=f"{trace.learner} cumulative expected loss",
                line=dict(color=self.colors['learner'], width=2)
            ),
            row=1, col=1
        )
        fig.add_trace(
            go.Scatter(
                x=frame['t'],
                y=frame['opt_so_far'],
                mode='lines',
                name="OPT so far",
                line=dict(color=self.colors['opt'], width=2, shape='hv')
            ),
            row=1, col=1
        )
        fig.add_trace(
            go.Scatter(
                x=frame['t'],
                y=frame['opt_so_far'] + frame['bound'],
                mode='lines',
                name="OPT + bound",
                line=dict(color=self.colors['bound'], width=1, dash='dash')
            ),
            row=1, col=1
        )

        if show_round_loss:
            fig.add_trace(
                go.Bar(
                    x=frame['t'],
                    y=frame['expected_loss'],
                    name="1 - p_t(y_t)",
                    marker_color=self.colors['round_loss'],
                    opacity=0.7
                ),
                row=2, col=1
            )

        status = "holds" if trace.bound_holds else "VIOLATED"
        fig.update_layout(
            title=f"{self.title} (T={trace.horizon}, regret={trace.regret:.3f}, "
                  f"bound={trace.bound:.3f}, {status})",
            xaxis_title="Round",
            yaxis_title="Loss",
            template="plotly_white",
            height=400 + 200 * (rows - 1),
            showlegend=True,
            hovermode='x unified'
        )
        return fig

    def _create_empty_chart(self) -> go.Figure:
        """Create empty chart when the trace has no rounds."""
        fig = go.Figure()
        fig.add_annotation(
            text="No rounds to plot",
            xref="paper", yref="paper",
            x=0.5, y=0.5,
            showarrow=False,
            font=dict(size=20, color="gray")
        )
        fig.update_layout(title=self.title, template="plotly_white", height=400)
        return fig


class ExpertLossChart:
    """Histogram of final expert losses with OPT marked."""

    def __init__(self, title: str = "Final Expert Losses"):
        self.title = title

    def create_chart(self, trace: AagTrace) -> go.Figure:
        totals = trace.expert_loss_totals()
        values, counts = np.unique(totals, return_counts=True)

        fig = go.Figure()
        fig.add_trace(
            go.Bar(
                x=values.tolist(),
                y=counts.tolist(),
                name="Experts",
                marker_color='#17becf'
            )
        )
        fig.add_vline(x=trace.opt, line_dash='dash', line_color='#2ca02c',
                      annotation_text=f"OPT = {trace.opt}")
        fig.update_layout(
            title=f"{self.title} ({trace.n_experts} experts)",
            xaxis_title="Mistakes over the sequence",
            yaxis_title="Number of experts",
            template="plotly_white",
            height=400
        )
        return fig


def create_regret_chart(trace: AagTrace) -> go.Figure:
    """Regret chart for a trace."""
    return RegretChart().create_chart(trace)


def create_trace_charts(trace: AagTrace) -> Dict[str, go.Figure]:
    """
    Create all charts for a trace.

    Returns:
        Dictionary of chart names to Plotly figures
    """
    charts = {
        'regret': create_regret_chart(trace),
        'expert_losses': ExpertLossChart().create_chart(trace),
    }
    logger.info(f"Created {len(charts)} charts for the {trace.learner} trace")
    return charts


def write_charts_html(trace: AagTrace, path: Union[str, Path]) -> None:
    """Write the trace charts to one standalone HTML file."""
    charts = create_trace_charts(trace)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        for i, fig in enumerate(charts.values()):
            f.write(fig.to_html(full_html=False, include_plotlyjs='cdn' if i == 0 else False))
    logger.info(f"Wrote charts to {path}")
