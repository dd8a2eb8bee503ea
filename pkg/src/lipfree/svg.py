"""Deterministic SVG and CSV emission for two-point ball sections.

Output is byte-stable for identical input: fixed 512x512 viewbox, fixed
colors, and coordinates formatted from exact rationals through IEEE doubles
with a fixed precision.
"""

from __future__ import annotations

from fractions import Fraction

from .metric_core import fraction_str
from .norm_engine import BallSection

WIDTH = 512
PANEL = 246
MARGIN = 10
COLOR_A = "#1f77b4"
COLOR_BALL = "#d62728"
COLOR_AXIS = "#555555"


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _panel(vertices, origin_x: float, label: str, axis_labels: tuple[str, str]) -> list[str]:
    extent = max(max(abs(u), abs(v)) for u, v in vertices)
    scale = (PANEL / 2 - MARGIN) / float(extent)
    cx = origin_x + PANEL / 2
    cy = WIDTH / 2

    def to_screen(u: Fraction, v: Fraction) -> tuple[float, float]:
        return cx + float(u) * scale, cy - float(v) * scale

    color = COLOR_A if label == "A" else COLOR_BALL
    parts = [
        f'<line x1="{_fmt(origin_x)}" y1="{_fmt(cy)}" x2="{_fmt(origin_x + PANEL)}" '
        f'y2="{_fmt(cy)}" stroke="{COLOR_AXIS}" stroke-width="1"/>',
        f'<line x1="{_fmt(cx)}" y1="{_fmt(cy - PANEL / 2)}" x2="{_fmt(cx)}" '
        f'y2="{_fmt(cy + PANEL / 2)}" stroke="{COLOR_AXIS}" stroke-width="1"/>',
        f'<text x="{_fmt(origin_x + PANEL - 16)}" y="{_fmt(cy - 6)}" font-size="12" '
        f'fill="{COLOR_AXIS}">{axis_labels[0]}</text>',
        f'<text x="{_fmt(cx + 6)}" y="{_fmt(cy - PANEL / 2 + 12)}" font-size="12" '
        f'fill="{COLOR_AXIS}">{axis_labels[1]}</text>',
    ]
    points = " ".join(
        f"{_fmt(px)},{_fmt(py)}" for px, py in (to_screen(u, v) for u, v in vertices)
    )
    parts.append(
        f'<polygon points="{points}" fill="{color}" fill-opacity="0.25" '
        f'stroke="{color}" stroke-width="1.5"/>'
    )
    parts.append(
        f'<text x="{_fmt(origin_x + 8)}" y="{_fmt(cy - PANEL / 2 + 12)}" '
        f'font-size="13" fill="{color}">{label}</text>'
    )
    return parts


def render_ball_section(section: BallSection) -> str:
    """Two labelled panels: the value region A and the unit-ball section."""
    body = ['<rect width="512" height="512" fill="#ffffff"/>']
    body += _panel(section.vertices, MARGIN, "A", ("u", "v"))
    body += _panel(section.ball_vertices, WIDTH / 2 + MARGIN / 2, "unit ball", ("a", "b"))
    content = "\n  ".join(body)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" width="512" height="512" '
        'viewBox="0 0 512 512">\n  '
        f"{content}\n</svg>\n"
    )


def ball_section_csv(section: BallSection) -> str:
    lines = ["polygon,index,u,v"]
    for idx, (u, v) in enumerate(section.vertices):
        lines.append(f"A,{idx},{fraction_str(u)},{fraction_str(v)}")
    for idx, (a, b) in enumerate(section.ball_vertices):
        lines.append(f"ball,{idx},{fraction_str(a)},{fraction_str(b)}")
    return "\n".join(lines) + "\n"
