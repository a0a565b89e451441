"""Batch reports: delimited tables plus rendered figures.

Each writer produces a CSV and a PNG side by side in the output directory
and returns the paths it wrote.  ``run_report`` runs all of them; the
command line exposes it as the ``report`` subcommand.
"""

from __future__ import annotations

import csv
import math
from fractions import Fraction
from pathlib import Path
from typing import List, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .affine import ratio_above_one, ratio_negative, ratio_unit_interval
from .geometry import run_named_check
from .quandles import enumerate_quandles, is_connected
from .topology import chain_topology, enumerate_top_quandles

PathLike = Union[str, Path]


def _outdir(path: PathLike) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def write_census(outdir: PathLike, max_n: int = 5,
                 threads: int = 1) -> List[Path]:
    """Isomorphism-class counts by size, next to the count of operations
    each chain space admits (always one: the trivial one)."""
    out = _outdir(outdir)
    rows = []
    for n in range(1, max_n + 1):
        classes = enumerate_quandles(n, max_n=max_n, threads=threads)
        chain_ops = enumerate_top_quandles(chain_topology(n), max_n=max_n)
        rows.append((n, len(classes),
                     sum(1 for q in classes if is_connected(q)),
                     len(chain_ops)))

    csv_path = out / "census.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "classes", "connected_classes",
                         "chain_compatible_ops"])
        writer.writerows(rows)

    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [r[0] for r in rows]
    width = 0.27
    ax.bar([n - width for n in ns], [r[1] for r in rows], width,
           label="all classes")
    ax.bar(ns, [r[2] for r in rows], width, label="connected")
    ax.bar([n + width for n in ns], [r[3] for r in rows], width,
           label="ops on the chain space")
    ax.set_xlabel("elements")
    ax.set_ylabel("count")
    ax.set_title("isomorphism classes by size")
    ax.set_xticks(ns)
    ax.legend()
    fig.tight_layout()
    png_path = out / "census.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def write_affine_ratios(outdir: PathLike, samples: int = 120) -> List[Path]:
    """The three monotone log-ratio curves behind the bracketing
    certificates, tabulated and plotted per parameter branch."""
    out = _outdir(outdir)
    rows = []
    for k in range(1, samples):
        t = Fraction(k, samples)
        rows.append(("unit_interval", float(t), ratio_unit_interval(t)))
    for k in range(1, samples):
        t = 1 + Fraction(3 * k, samples)
        rows.append(("above_one", float(t), ratio_above_one(t)))
    for k in range(1, samples):
        t = -Fraction(3 * k, samples)
        if t == -1:  # pole: ln(t^2) = 0
            continue
        rows.append(("negative", float(t), ratio_negative(t)))

    csv_path = out / "affine_ratios.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["branch", "t", "ratio"])
        writer.writerows(rows)

    fig, axes = plt.subplots(1, 3, figsize=(10, 3.4))
    for ax, branch, label in zip(
            axes,
            ("unit_interval", "above_one", "negative"),
            ("ln(1-t)/ln t on (0,1)", "ln((t-1)^2)/ln t on (1,oo)",
             "ln(1-t)/ln t^2 on (-oo,0)")):
        pts = [(t, v) for br, t, v in rows if br == branch]
        ax.plot([p[0] for p in pts], [p[1] for p in pts], lw=1.2)
        ax.set_title(label, fontsize=9)
        ax.set_xlabel("t")
    axes[0].set_ylabel("scale ratio")
    fig.suptitle("strictly monotone ratios used to separate parameters")
    fig.tight_layout()
    png_path = out / "affine_ratios.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def write_geometry_residuals(outdir: PathLike, trials: int = 200,
                             seed: int = 0) -> List[Path]:
    """Worst sampled axiom residuals for the built-in smooth operations."""
    out = _outdir(outdir)
    configs = [("sphere", {}), ("rotation", {"psi": 2 * math.pi / 3}),
               ("grassmann", {"r": 2, "ambient": 4})]
    rows = []
    for name, kwargs in configs:
        rep = run_named_check(name, trials=trials, seed=seed, **kwargs)
        rows.append((name, "idempotency", rep.idempotency, rep.tol))
        rows.append((name, "right_distributivity", rep.right_distributivity,
                     rep.tol))
        rows.append((name, "right_invertibility", rep.right_invertibility,
                     rep.tol))

    csv_path = out / "geometry_residuals.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["op", "axiom", "max_residual", "tol"])
        writer.writerows(rows)

    fig, ax = plt.subplots(figsize=(7, 4))
    labels = [f"{op}\n{axiom.replace('_', ' ')}" for op, axiom, _, _ in rows]
    # matplotlib refuses log-scale zeros; clip far below every tolerance
    values = [max(v, 1e-18) for _, _, v, _ in rows]
    ax.bar(range(len(rows)), values)
    for i, (_, _, _, tol) in enumerate(rows):
        ax.hlines(tol, i - 0.4, i + 0.4, color="tab:red", lw=1)
    ax.set_yscale("log")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, fontsize=7)
    ax.set_ylabel("max residual over samples")
    ax.set_title(f"sampled axiom residuals ({trials} trials, seed {seed}); "
                 "red marks = tolerance")
    fig.tight_layout()
    png_path = out / "geometry_residuals.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def run_report(outdir: PathLike, max_n: int = 5, trials: int = 200,
               seed: int = 0, threads: int = 1) -> List[Path]:
    paths = write_census(outdir, max_n=max_n, threads=threads)
    paths += write_affine_ratios(outdir)
    paths += write_geometry_residuals(outdir, trials=trials, seed=seed)
    return paths
