"""
Weight Diagrams

Degree n across, weight ν up, one disc per nonzero gr^W_ν H^n with area
proportional to its dimension. Pure cohomology sits on the diagonal ν = n.
"""

from pathlib import Path
from typing import Optional
import logging
import math

import plotly.graph_objects as go

from models.graded import WeightedGradedVectorSpace

logger = logging.getLogger(__name__)

MAX_MARKER_SIZE = 40


def weight_figure(w: WeightedGradedVectorSpace, title: Optional[str] = None) -> go.Figure:
    entries = w.sorted_entries()
    top = max((d for _, _, d in entries), default=1)
    sizes = [MAX_MARKER_SIZE * math.sqrt(d / top) for _, _, d in entries]

    figure = go.Figure()
    reach = max(w.degree_bound, 1)
    figure.add_trace(go.Scatter(
        x=[0, reach],
        y=[0, reach],
        mode='lines',
        name='pure (ν = n)',
        line=dict(color="#888", dash="dot"),
    ))
    figure.add_trace(go.Scatter(
        x=[n for n, _, _ in entries],
        y=[weight for _, weight, _ in entries],
        mode='markers+text',
        name='gr^W H',
        text=[str(d) for _, _, d in entries],
        textposition="top right",
        marker=dict(size=sizes, sizemode="diameter", color="#1f77b4"),
    ))
    figure.update_layout(
        title=title or w.metadata.get("fan") or "weights",
        template="plotly_white",
        xaxis=dict(title="degree n", dtick=1, range=[-0.5, reach + 0.5]),
        yaxis=dict(title="weight ν", dtick=1, range=[-0.5, 2 * reach + 0.5]),
        showlegend=True,
    )
    return figure


def write_svg(figure: go.Figure, path: Path) -> Path:
    """Static SVG export through plotly's image engine."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    figure.write_image(str(path), format="svg")
    logger.info(f"Wrote weight diagram to {path}")
    return path
