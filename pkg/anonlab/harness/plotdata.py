import os
import logging
from fractions import Fraction

import pandas as pd
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from anonlab.smooth.bigfloat import DomainError
from anonlab.smooth.transition import transition_samples
from anonlab.smooth.warp import warp_eval

SOURCES = ('transition', 'warp', 'trend')


def transition_frame(resolution=1000):
    rows = transition_samples(resolution)
    return pd.DataFrame({'x': [float(x) for x, _ in rows], 'value': [float(v) for _, v in rows]})


def warp_frame(spec, resolution=1000):
    """Samples of t on [p_0, p_N] and [w, w + 1]; the truncation gap (p_N, w) is left out."""
    left, right = spec.p(0), spec.p(spec.depth)
    half = resolution // 2
    xs = [left + (right - left) * Fraction(i, half) for i in range(half + 1)]
    xs += [spec.w + Fraction(i, half) for i in range(half + 1)]
    values = []
    for x in xs:
        try:
            values.append(float(warp_eval(spec, x)))
        except DomainError:
            values.append(float('nan'))
    return pd.DataFrame({'x': [float(x) for x in xs], 'value': values})


def trend_frame(report):
    """Left divided-difference estimates of t^(k)(w) from a flatness report, one row per (k, i)."""
    rows = [(k, i, float(abs(v))) for k, estimates in sorted(report.trend.items()) for i, v in estimates]
    return pd.DataFrame({'k': [r[0] for r in rows], 'x': [r[1] for r in rows], 'value': [r[2] for r in rows]})


def _figure(df, source, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    if source == 'trend':
        for k, group in df.groupby('k'):
            ax.semilogy(group['x'], group['value'], marker='o', label='k=' + str(k))
        ax.set_xlabel('anchor index i')
        ax.set_ylabel('|estimate of derivative at w|')
        ax.legend()
    else:
        ax.plot(df['x'], df['value'])
        ax.set_xlabel('x')
        ax.set_ylabel('s(x)' if source == 'transition' else 't(x)')
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def emit_plot_data(source, path, spec=None, report=None, resolution=1000, figure=False):
    """
    Writes (x, value) samples of ``source`` to a CSV at ``path`` and returns the frame.

    Args:
        source: 'transition' (s on [0, 1]), 'warp' (needs ``spec``) or 'trend' (needs a flatness ``report``)
        path: CSV file to write; I/O errors propagate
        resolution: number of sample intervals
        figure: also render a PNG next to the CSV
    """
    if source == 'transition':
        df = transition_frame(resolution)
    elif source == 'warp':
        if spec is None:
            raise ValueError("Error: warp plot data needs a warp specification")
        df = warp_frame(spec, resolution)
    elif source == 'trend':
        if report is None:
            raise ValueError("Error: trend plot data needs a flatness report")
        df = trend_frame(report)
    else:
        raise ValueError("Error: unknown plot source " + repr(source) + ", choose from " + ", ".join(SOURCES))
    df.to_csv(path, index=False)
    logging.info("Wrote " + str(len(df)) + " " + source + " samples to " + str(path))
    if figure:
        _figure(df, source, os.path.splitext(str(path))[0] + '.png')
    return df
