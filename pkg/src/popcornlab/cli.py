"""Command-line front end: figure-reproduction datasets and verification runs.

Every subcommand writes a delimited dataset (CSV with 17 significant digits
or JSON with the full config echoed in ``meta``) and can additionally render
the matching figure with ``--plot``.  Given the same flags and seed, output
files are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from .chain import ChainEnsemble, edge_series, lifshitz_fit, path_eigenvalues, spectral_density
from .dyson import DysonChain, integrated_dos
from .ensemble import RNG_ALGORITHM, empirical_density, sample_blocks
from .eta import ModularPoint, log_abs_eta
from .rationals import farey_sequence

__all__ = ["main", "build_parser"]


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_csv(path: Optional[str], columns: list[str], rows: list[tuple]) -> None:
    lines = [",".join(columns)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as handle:
            handle.write(text)


def _write_json(path: Optional[str], columns: list[str], rows: list[tuple], meta: dict) -> None:
    payload = {
        "meta": meta,
        "rows": [dict(zip(columns, (float(v) for v in row))) for row in rows],
    }
    text = json.dumps(payload, indent=1) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as handle:
            handle.write(text)


def _emit(args, columns: list[str], rows: list[tuple], meta: dict) -> None:
    if args.format == "csv":
        _write_csv(args.out, columns, rows)
    else:
        _write_json(args.out, columns, rows, meta)
    if args.plot is not None:
        from . import plotting

        plotting.render(meta["command"], rows, args.plot, meta)


def _meta(command: str, args, keys: list[str], **extra) -> dict:
    meta = {"command": command, "version": __version__}
    for key in keys:
        meta[key] = getattr(args, key)
    meta.update(extra)
    return meta


def _interior_fractions(q_max: int) -> list[Fraction]:
    return farey_sequence(q_max)[1:-1]


def cmd_popcorn(args) -> None:
    if args.qmax < 1:
        raise ValueError("--qmax must be >= 1")
    rows = [(float(fr), 1.0 / fr.denominator) for fr in _interior_fractions(args.qmax)]
    _emit(args, ["x", "g"], rows, _meta("popcorn", args, ["qmax"]))


def cmd_spectral_density(args) -> None:
    ens = ChainEnsemble(args.f, args.y, args.nmax)
    if args.grid_points < 2:
        raise ValueError("--grid-points must be >= 2")
    if not args.grid_min < args.grid_max:
        raise ValueError("--grid-min must be below --grid-max")
    lam = np.linspace(args.grid_min, args.grid_max, args.grid_points)
    rho = spectral_density(lam, ens)
    rows = list(zip(lam.tolist(), rho.tolist()))
    meta = _meta("spectral-density", args,
                 ["f", "y", "nmax", "grid_min", "grid_max", "grid_points"],
                 truncation_tail_bound=ens.tail_bound)
    _emit(args, ["lambda", "rho"], rows, meta)


def cmd_bridge(args) -> None:
    if args.qmax < 2:
        raise ValueError("--qmax must be >= 2")
    if not 0 < args.eps <= 1e-3:
        raise ValueError("--eps must lie in (0, 1e-3] for the near-axis bridge")
    rows = []
    for fr in _interior_fractions(args.qmax):
        q = fr.denominator
        neg_log_eta = -log_abs_eta(ModularPoint.at_rational(fr, args.eps)).log_abs
        popcorn_term = math.pi / (12.0 * args.eps * q * q)
        rows.append((float(fr), neg_log_eta, popcorn_term, popcorn_term - neg_log_eta))
    meta = _meta("bridge", args, ["qmax", "eps"])
    _emit(args, ["x", "neg_log_eta", "pi_g2_over_12eps", "residual"], rows, meta)


def cmd_dyson(args) -> None:
    chain = DysonChain(args.f, args.nmax)
    if args.grid_points < 2:
        raise ValueError("--grid-points must be >= 2")
    if not -1.0 < args.grid_min < args.grid_max < 3.0:
        raise ValueError("--grid-min/--grid-max must satisfy -1 < min < max < 3")
    lam = np.linspace(args.grid_min, args.grid_max, args.grid_points)
    rows = [(x, integrated_dos(x, chain)) for x in lam.tolist()]
    meta = _meta("dyson", args, ["f", "nmax", "grid_min", "grid_max", "grid_points"])
    _emit(args, ["lambda", "N"], rows, meta)


def cmd_lifshitz(args) -> None:
    if args.depth < 13:
        raise ValueError("--depth must be >= 13 (regression needs peaks k in [10, depth])")
    series = edge_series(args.depth, args.f)
    slope, _ = lifshitz_fit(_slice_series(series, 9), 2.0)
    target = math.pi * math.log(args.f)
    rows = []
    for k, pt in enumerate(series, start=1):
        regressor = 1.0 / math.sqrt(abs(2.0 - abs(pt.position)))
        rows.append((float(k), float(pt.label), pt.position, pt.intensity,
                     regressor, slope, target))
    meta = _meta("lifshitz", args, ["f", "depth"], slope=slope, target_pi_ln_f=target)
    _emit(args, ["k", "label", "lambda", "intensity", "edge_regressor", "slope", "target_pi_ln_f"],
          rows, meta)


def _slice_series(series, start: int):
    from .chain import PeakSeries

    return PeakSeries(tuple(series.points[start:]))


def cmd_oracle(args) -> None:
    if args.depth < 1:
        raise ValueError("--depth (number of seeds) must be >= 1")
    if args.nmax < 1:
        raise ValueError("--nmax (matrix size) must be >= 1")
    if not 0.0 <= args.f <= 1.0:
        raise ValueError("--f must lie in [0, 1]")
    if args.grid_points < 1:
        raise ValueError("--grid-points (number of bins) must be >= 1")
    edges = np.linspace(args.grid_min, args.grid_max, args.grid_points + 1)
    counts = np.zeros(args.grid_points)
    total = 0
    for i in range(args.depth):
        ens = sample_blocks(args.nmax, args.f, args.seed + i)
        counts += empirical_density(ens, edges)
        total += ens.size
    overlay = _analytic_bin_weights(edges, args.f)
    rows = [
        (edges[i], edges[i + 1], counts[i], counts[i] / total, overlay[i])
        for i in range(args.grid_points)
    ]
    meta = _meta("oracle", args,
                 ["f", "nmax", "seed", "depth", "grid_min", "grid_max", "grid_points"],
                 rng=RNG_ALGORITHM, total_eigenvalues=total)
    _emit(args, ["bin_left", "bin_right", "count", "fraction", "analytic_fraction"], rows, meta)


def _analytic_bin_weights(edges: np.ndarray, f: float, tail: float = 1e-14) -> np.ndarray:
    """Expected fraction of pooled eigenvalues per bin: blocks of n vertices
    occur with weight (1-f)^2 f^(n-1) per vertex."""
    out = np.zeros(len(edges) - 1)
    if f == 0.0:
        counts, _ = np.histogram([0.0], bins=edges)
        return counts.astype(float)
    if f >= 1.0:
        return out  # no stationary block-length law at f = 1
    n_cut = max(2, int(math.ceil(math.log(tail * (1.0 - f)) / math.log(f))))
    for n in range(1, n_cut + 1):
        counts, _ = np.histogram(path_eigenvalues(n), bins=edges)
        out += (1.0 - f) ** 2 * f ** (n - 1) * counts
    return out


_COMMANDS: dict[str, Callable] = {
    "popcorn": cmd_popcorn,
    "spectral-density": cmd_spectral_density,
    "bridge": cmd_bridge,
    "dyson": cmd_dyson,
    "lifshitz": cmd_lifshitz,
    "oracle": cmd_oracle,
}


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=["csv", "json"], default="csv",
                     help="output format (default csv)")
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="output file (default: stdout)")
    sub.add_argument("--plot", default=None, metavar="PATH",
                     help="also render the matching figure to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="popcornlab",
        description="Datasets for the popcorn function, chain spectral densities, "
                    "the Dedekind-eta bridge, and their brute-force verification.",
    )
    parser.add_argument("--version", action="version", version=f"popcornlab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("popcorn", help="popcorn values at all reduced p/q, q <= qmax")
    p.add_argument("--qmax", type=int, default=50, help="largest denominator (default 50)")
    _add_common(p)

    p = subs.add_parser("spectral-density", help="regularized ensemble density on a grid")
    p.add_argument("--f", type=float, default=0.7, help="damping factor (default 0.7)")
    p.add_argument("--y", type=float, default=2e-3, help="regularization width (default 2e-3)")
    p.add_argument("--nmax", type=int, default=1000, help="series truncation (default 1000)")
    p.add_argument("--grid-min", type=float, default=-2.0)
    p.add_argument("--grid-max", type=float, default=2.0)
    p.add_argument("--grid-points", type=int, default=4001)
    _add_common(p)

    p = subs.add_parser("bridge", help="-ln|eta| vs the popcorn term at rational points")
    p.add_argument("--qmax", type=int, default=40, help="largest denominator (default 40)")
    p.add_argument("--eps", type=float, default=1e-6, help="distance to the real axis (default 1e-6)")
    _add_common(p)

    p = subs.add_parser("dyson", help="integrated density of states of the binary-mass chain")
    p.add_argument("--f", type=float, default=0.5, help="heavy-mass probability (default 0.5)")
    p.add_argument("--nmax", type=int, default=0, help="series truncation (default: auto)")
    p.add_argument("--grid-min", type=float, default=-1.0 + 1e-4)
    p.add_argument("--grid-max", type=float, default=3.0 - 1e-4)
    p.add_argument("--grid-points", type=int, default=1001)
    _add_common(p)

    p = subs.add_parser("lifshitz", help="edge peak series with the Lifshitz-tail fit")
    p.add_argument("--f", type=float, default=0.7, help="damping factor (default 0.7)")
    p.add_argument("--depth", type=int, default=60,
                   help="largest series index k; fit uses k in [10, depth] (default 60)")
    _add_common(p)

    p = subs.add_parser("oracle", help="Monte-Carlo block spectra with analytic overlay")
    p.add_argument("--f", type=float, default=0.7, help="bond probability (default 0.7)")
    p.add_argument("--nmax", type=int, default=20000, help="matrix size N (default 20000)")
    p.add_argument("--seed", type=int, default=0, help="base seed; draw i uses seed+i (default 0)")
    p.add_argument("--depth", type=int, default=100, help="number of seeds pooled (default 100)")
    p.add_argument("--grid-min", type=float, default=-2.0005)
    p.add_argument("--grid-max", type=float, default=2.0005)
    p.add_argument("--grid-points", type=int, default=4001, help="number of histogram bins")
    _add_common(p)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"popcornlab {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
