"""Figures and timing reports.

``edge_figure`` lays out an input image next to one or more edge maps.
``bench_main`` (the ``colordipole-bench`` command) times the naive and fast
engines over a list of window sizes, prints CSV rows to standard output and
optionally plots runtime against window size.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .pipeline import Engine, color_dipole_fields  # noqa: E402
from .dipole import magnitude_field  # noqa: E402
from .render import RenderParams, render_map  # noqa: E402
from .window import WindowSpec  # noqa: E402

BENCH_FIELDS = ("engine", "window", "height", "width", "channels", "repeat", "best_ms", "median_ms")


def _show(ax, img: np.ndarray, title: str) -> None:
    if img.ndim == 2:
        ax.imshow(img, cmap="gray", vmin=0, vmax=255, interpolation="nearest")
    else:
        ax.imshow(img, interpolation="nearest")
    ax.set_title(title, fontsize=9)
    ax.set_xticks([])
    ax.set_yticks([])


def edge_figure(image: np.ndarray, panels: Sequence[tuple[str, np.ndarray]], path,
                ncols: int | None = None, panel_size: float = 3.0) -> Path:
    """Save the input followed by each ``(title, map)`` panel; returns ``path``."""
    n = 1 + len(panels)
    ncols = ncols or min(n, 3)
    nrows = math.ceil(n / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(panel_size * ncols, panel_size * nrows),
                             squeeze=False)
    flat = axes.ravel()
    _show(flat[0], image, "input")
    for ax, (title, img) in zip(flat[1:], panels):
        _show(ax, img, title)
    for ax in flat[n:]:
        ax.axis("off")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def time_engine(image: np.ndarray, spec: WindowSpec, engine: Engine | str,
                repeat: int = 3) -> list[float]:
    """Wall-clock milliseconds of ``repeat`` full compute passes (fields + render)."""
    out = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fields = color_dipole_fields(image, spec, engine)
        render_map([magnitude_field(d) for d in fields], RenderParams())
        out.append((time.perf_counter() - t0) * 1e3)
    return out


def run_bench(size: int, windows: Sequence[int], engines: Sequence[str],
              repeat: int = 3, seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    image = rng.integers(0, 256, size=(size, size, 3), dtype=np.uint8)
    rows = []
    for engine in engines:
        for n in windows:
            times = time_engine(image, WindowSpec.square(n), engine, repeat)
            rows.append({
                "engine": Engine(engine).value,
                "window": n,
                "height": size,
                "width": size,
                "channels": 3,
                "repeat": repeat,
                "best_ms": round(min(times), 3),
                "median_ms": round(float(np.median(times)), 3),
            })
    return rows


def bench_figure(rows: Sequence[dict], path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for engine in sorted({r["engine"] for r in rows}):
        sel = [r for r in rows if r["engine"] == engine]
        ax.plot([r["window"] for r in sel], [r["best_ms"] for r in sel], "o-", label=engine)
    ax.set_xlabel("window side (pixels)")
    ax.set_ylabel("compute time (ms)")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def bench_main(argv: Sequence[str] | None = None) -> int:
    p = argparse.ArgumentParser(prog="colordipole-bench",
                                description="Time the dipole engines on a random RGB image.")
    p.add_argument("--size", type=int, default=512, help="image side in pixels")
    p.add_argument("--windows", default="2,3,5,10")
    p.add_argument("--engines", default="fast,naive")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--figure", type=Path, help="save a runtime-vs-window plot")
    args = p.parse_args(argv)

    try:
        windows = [int(w) for w in args.windows.split(",")]
        engines = [Engine(e.strip()).value for e in args.engines.split(",")]
    except ValueError as exc:
        p.error(str(exc))
    if args.size < 1 or args.repeat < 1 or min(windows) < 2:
        p.error("--size and --repeat must be positive and windows >= 2")

    rows = run_bench(args.size, windows, engines, args.repeat, args.seed)
    writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.figure is not None:
        bench_figure(rows, args.figure)
    return 0


if __name__ == "__main__":
    sys.exit(bench_main())
