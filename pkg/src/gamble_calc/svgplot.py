"""Self-contained SVG growth plot for simulation output.

Draws the analytical expectation curve (dashed) against the median wealth
path (solid) on linear axes with a legend.  Pixel geometry is rounded for
compactness, but every curve element carries a ``data-values`` attribute
holding its raw series in shortest-round-trip formatting, exactly the
formatting the trajectory CSV uses, so the numbers behind the picture can
be recovered bit for bit without re-running anything.
"""

from __future__ import annotations

import numpy as np

__all__ = ["render_growth_svg"]

_WIDTH, _HEIGHT = 860.0, 520.0
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70.0, 30.0, 40.0, 55.0


def _fmt_values(values: np.ndarray) -> str:
    return " ".join(repr(float(v)) for v in values)


def _ticks(low: float, high: float, count: int = 6) -> list[float]:
    if high <= low:
        high = low + 1.0
    raw = np.linspace(low, high, count)
    return [float(t) for t in raw]


def render_growth_svg(
    periods: np.ndarray,
    expectation_curve: np.ndarray,
    median_curve: np.ndarray,
    title: str = "Ensemble expectation vs median wealth path",
) -> str:
    """Render the two-curve comparison as an SVG document string."""
    x = np.asarray(periods, dtype=np.float64)
    exp_curve = np.asarray(expectation_curve, dtype=np.float64)
    med_curve = np.asarray(median_curve, dtype=np.float64)
    if not (x.shape == exp_curve.shape == med_curve.shape):
        raise ValueError("periods and both curves must have matching shapes")

    x_lo, x_hi = float(x[0]), float(x[-1]) if x[-1] > x[0] else float(x[0]) + 1.0
    y_lo = min(float(exp_curve.min()), float(med_curve.min()), 0.0)
    y_hi = max(float(exp_curve.max()), float(med_curve.max()))
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    span_x = x_hi - x_lo
    span_y = y_hi - y_lo
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(v: float) -> float:
        return _MARGIN_L + (v - x_lo) / span_x * plot_w

    def py(v: float) -> float:
        return _MARGIN_T + plot_h - (v - y_lo) / span_y * plot_h

    def path_d(ys: np.ndarray) -> str:
        pieces = []
        for i, (xv, yv) in enumerate(zip(x, ys)):
            cmd = "M" if i == 0 else "L"
            pieces.append(f"{cmd}{px(float(xv)):.2f},{py(float(yv)):.2f}")
        return " ".join(pieces)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH:.0f}" '
        f'height="{_HEIGHT:.0f}" viewBox="0 0 {_WIDTH:.0f} {_HEIGHT:.0f}">',
        f'<rect width="{_WIDTH:.0f}" height="{_HEIGHT:.0f}" fill="#ffffff"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]

    axis_y = _MARGIN_T + plot_h
    parts.append(
        f'<line x1="{_MARGIN_L:.1f}" y1="{axis_y:.1f}" x2="{_MARGIN_L + plot_w:.1f}" '
        f'y2="{axis_y:.1f}" stroke="#222222" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN_L:.1f}" y1="{_MARGIN_T:.1f}" x2="{_MARGIN_L:.1f}" '
        f'y2="{axis_y:.1f}" stroke="#222222" stroke-width="1"/>'
    )
    for t in _ticks(x_lo, x_hi):
        parts.append(
            f'<line x1="{px(t):.1f}" y1="{axis_y:.1f}" x2="{px(t):.1f}" '
            f'y2="{axis_y + 5:.1f}" stroke="#222222" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px(t):.1f}" y="{axis_y + 20:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{t:g}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        parts.append(
            f'<line x1="{_MARGIN_L - 5:.1f}" y1="{py(t):.1f}" x2="{_MARGIN_L:.1f}" '
            f'y2="{py(t):.1f}" stroke="#222222" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 9:.1f}" y="{py(t) + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{t:.4g}</text>'
        )
    parts.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 12:.1f}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="13">period</text>'
    )
    parts.append(
        f'<text x="18" y="{_MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_MARGIN_T + plot_h / 2:.1f})">wealth</text>'
    )

    parts.append(
        f'<path d="{path_d(exp_curve)}" fill="none" stroke="#d62728" '
        f'stroke-width="2" stroke-dasharray="7 4" data-name="ensemble-expectation" '
        f'data-values="{_fmt_values(exp_curve)}"/>'
    )
    parts.append(
        f'<path d="{path_d(med_curve)}" fill="none" stroke="#1f77b4" '
        f'stroke-width="2" data-name="median-path" '
        f'data-values="{_fmt_values(med_curve)}"/>'
    )

    lx, ly = _MARGIN_L + 14.0, _MARGIN_T + 14.0
    parts.append(
        f'<line x1="{lx:.1f}" y1="{ly:.1f}" x2="{lx + 34:.1f}" y2="{ly:.1f}" '
        f'stroke="#d62728" stroke-width="2" stroke-dasharray="7 4"/>'
    )
    parts.append(
        f'<text x="{lx + 42:.1f}" y="{ly + 4:.1f}" font-family="sans-serif" '
        f'font-size="12">ensemble expectation</text>'
    )
    parts.append(
        f'<line x1="{lx:.1f}" y1="{ly + 20:.1f}" x2="{lx + 34:.1f}" y2="{ly + 20:.1f}" '
        f'stroke="#1f77b4" stroke-width="2"/>'
    )
    parts.append(
        f'<text x="{lx + 42:.1f}" y="{ly + 24:.1f}" font-family="sans-serif" '
        f'font-size="12">median wealth path</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
