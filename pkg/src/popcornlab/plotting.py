"""Figure rendering for the CLI report path.

Each dataset emitted by a subcommand has a matching renderer that draws a
single figure to a file next to the delimited output.  Styling is kept
minimal; the figures are working plots, not publication artwork.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render"]

_DPI = 150


def _new_axes(xlabel: str, ylabel: str, title: str):
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, linestyle=":", alpha=0.5)
    return fig, ax


def _save(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def _col(rows: Sequence[Sequence[float]], i: int) -> np.ndarray:
    return np.array([row[i] for row in rows], dtype=float)


def _plot_popcorn(rows, path, meta):
    fig, ax = _new_axes("x", "g(x)", "Thomae popcorn function")
    x, g = _col(rows, 0), _col(rows, 1)
    ax.vlines(x, 0.0, g, lw=0.8)
    ax.plot(x, g, "k.", ms=2.5)
    ax.set_xlim(0, 1)
    _save(fig, path)


def _plot_spectral_density(rows, path, meta):
    fig, ax = _new_axes(r"$\lambda$", r"$\rho(\lambda)$", "Chain-ensemble spectral density")
    ax.plot(_col(rows, 0), _col(rows, 1), lw=0.7)
    _save(fig, path)


def _plot_bridge(rows, path, meta):
    fig, ax = _new_axes("x", "value", r"$-\ln|\eta(x+i\varepsilon)|$ vs popcorn term")
    x = _col(rows, 0)
    ax.semilogy(x, _col(rows, 1), "b.", ms=3, label=r"$-\ln|\eta|$")
    ax.semilogy(x, _col(rows, 2), "r+", ms=4, label=r"$\pi g^2/(12\varepsilon)$")
    ax.legend()
    _save(fig, path)


def _plot_dyson(rows, path, meta):
    fig, ax = _new_axes(r"$\lambda$", r"$N(\lambda)$", "Integrated density of states, binary-mass chain")
    ax.plot(_col(rows, 0), _col(rows, 1), lw=0.9)
    _save(fig, path)


def _plot_lifshitz(rows, path, meta):
    fig, ax = _new_axes("edge regressor", "ln intensity", "Lifshitz tail along the main peak series")
    u, li = _col(rows, 4), np.log(_col(rows, 3))
    ax.plot(u, li, "o", ms=3, label="peaks")
    slope, target = rows[0][5], rows[0][6]
    uu = np.linspace(u.min(), u.max(), 50)
    inter = np.mean(li - slope * u)
    ax.plot(uu, slope * uu + inter, "-", lw=1,
            label=f"fit slope {slope:.4f} (target {target:.4f})")
    ax.legend()
    _save(fig, path)


def _plot_oracle(rows, path, meta):
    fig, ax = _new_axes(r"$\lambda$", "fraction of eigenvalues",
                        "Sampled block spectra vs analytic weights")
    centers = 0.5 * (_col(rows, 0) + _col(rows, 1))
    width = _col(rows, 1) - _col(rows, 0)
    ax.bar(centers, _col(rows, 3), width=width, alpha=0.6, label="Monte-Carlo")
    overlay = _col(rows, 4)
    mask = overlay > 0
    ax.plot(centers[mask], overlay[mask], "r.", ms=2, label="analytic")
    ax.legend()
    _save(fig, path)


_RENDERERS = {
    "popcorn": _plot_popcorn,
    "spectral-density": _plot_spectral_density,
    "bridge": _plot_bridge,
    "dyson": _plot_dyson,
    "lifshitz": _plot_lifshitz,
    "oracle": _plot_oracle,
}


def render(command: str, rows, path: str, meta: dict) -> None:
    """Draw the figure for one subcommand's dataset to ``path``."""
    try:
        renderer = _RENDERERS[command]
    except KeyError:
        raise ValueError(f"no renderer for command {command!r}") from None
    renderer(rows, path, meta)
