"""Command-line edge detector.

    colordipole IN -o OUT [--detector dipole|sobel|laplace|gradient]
                [--window N|NxM] [--charge-mode center|own]
                [--norm count|fourdelta] [--border replicate|interior]
                [--alpha F] [--gain F] [--bias F] [--pmax channel|global]
                [--engine naive|fast] [--dump PATH] [--sweep N,N,...]
                [--gray] [--figure PATH] [--compare]

A one-line, tab-separated timing record goes to standard error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .baselines import Detector, detector_response
from .dipole import magnitude_field
from .dump import write_dump
from .errors import ColorDipoleError, UsageError
from .image import channel_plane, load_image, promote_gray, save_image, to_gray
from .pipeline import Engine, dipole_engine
from .render import PMaxPolicy, RenderParams, render_map
from .window import Border, ChargeMode, Normalization, WindowSpec

DETECTORS = ("dipole",) + tuple(d.value for d in Detector)


@dataclass
class RunConfig:
    input: Path
    output: Path | None = None
    detector: str = "dipole"
    window: tuple[int, int] = (2, 2)
    charge_mode: ChargeMode = ChargeMode.CENTER_MEAN
    normalization: Normalization = Normalization.PIXEL_COUNT
    border: Border = Border.REPLICATE
    alpha: float = 0.5
    gain: float = 1.0
    bias: float = 0.0
    pmax_policy: PMaxPolicy = PMaxPolicy.PER_CHANNEL
    engine: Engine = Engine.FAST
    dump: Path | None = None
    sweep: list[tuple[int, int]] = field(default_factory=list)
    gray: bool = False
    figure: Path | None = None
    compare: bool = False

    def window_spec(self, size: tuple[int, int] | None = None) -> WindowSpec:
        rows, cols = size or self.window
        return WindowSpec(rows, cols, self.border, self.charge_mode, self.normalization)

    def render_params(self) -> RenderParams:
        return RenderParams(self.alpha, self.gain, self.bias, self.pmax_policy)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _window(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        if len(parts) == 1:
            rows = cols = int(parts[0])
        elif len(parts) == 2:
            rows, cols = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or NxM, got {text!r}") from None
    if rows < 2 or cols < 2:
        raise argparse.ArgumentTypeError(f"window sides must be >= 2, got {text!r}")
    return rows, cols


def _sweep(text: str) -> list[tuple[int, int]]:
    sizes = [_window(part.strip()) for part in text.split(",") if part.strip()]
    if not sizes:
        raise argparse.ArgumentTypeError("empty sweep list")
    if len(set(sizes)) != len(sizes):
        raise argparse.ArgumentTypeError(f"sweep sizes must be distinct, got {text!r}")
    return sizes


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (np.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text!r}")
    return value


def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="colordipole", description="Color dipole moment edge detection.")
    p.add_argument("input", type=Path, help="PNG, PPM (P6) or PGM (P5) image")
    p.add_argument("-o", "--output", type=Path,
                   help="edge map; format from extension (.png, .ppm, .pgm)")
    p.add_argument("--detector", choices=DETECTORS, default="dipole")
    p.add_argument("--window", type=_window, default=(2, 2), metavar="N|NxM",
                   help="window rows x cols (default 2)")
    p.add_argument("--charge-mode", choices=[m.value for m in ChargeMode], default="center")
    p.add_argument("--norm", choices=[m.value for m in Normalization], default="count")
    p.add_argument("--border", choices=[m.value for m in Border], default="replicate")
    p.add_argument("--alpha", type=_positive, default=0.5)
    p.add_argument("--gain", type=_positive, default=1.0)
    p.add_argument("--bias", type=_finite, default=0.0)
    p.add_argument("--pmax", choices=[m.value for m in PMaxPolicy], default="channel")
    p.add_argument("--engine", choices=[m.value for m in Engine], default="fast")
    p.add_argument("--dump", type=Path, metavar="PATH",
                   help="write raw px, py, P planes (CDMF format)")
    p.add_argument("--sweep", type=_sweep, metavar="N,N,...",
                   help="one map per window size, size appended to the output name")
    p.add_argument("--gray", action="store_true", help="process a single luma plane")
    p.add_argument("--figure", type=Path, metavar="PATH",
                   help="also save a matplotlib panel of the input and the map(s)")
    p.add_argument("--compare", action="store_true",
                   help="add Sobel, Laplace and gradient maps to --figure")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def parse_args(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    if ns.output is None and ns.dump is None and ns.figure is None:
        raise UsageError("-o/--output: an output path is required")
    if ns.detector != "dipole":
        if ns.dump is not None:
            raise UsageError("--dump: raw fields exist only for --detector dipole")
        if ns.sweep:
            raise UsageError("--sweep: window sweeps apply only to --detector dipole")
    if ns.sweep and ns.output is None:
        raise UsageError("--sweep: needs -o/--output to derive file names")
    if ns.compare and ns.figure is None:
        raise UsageError("--compare: only meaningful together with --figure")
    return RunConfig(
        input=ns.input,
        output=ns.output,
        detector=ns.detector,
        window=ns.window,
        charge_mode=ChargeMode(ns.charge_mode),
        normalization=Normalization(ns.norm),
        border=Border(ns.border),
        alpha=ns.alpha,
        gain=ns.gain,
        bias=ns.bias,
        pmax_policy=PMaxPolicy(ns.pmax),
        engine=Engine(ns.engine),
        dump=ns.dump,
        sweep=ns.sweep or [],
        gray=ns.gray,
        figure=ns.figure,
        compare=ns.compare,
    )


def sweep_path(output: Path, size: tuple[int, int]) -> Path:
    rows, cols = size
    tag = f"{rows}" if rows == cols else f"{rows}x{cols}"
    return output.with_name(f"{output.stem}_w{tag}{output.suffix}")


def _planes(image: np.ndarray, gray: bool) -> list[np.ndarray]:
    if gray:
        return [to_gray(image).astype(np.float64)]
    return [channel_plane(image, c) for c in (1, 2, 3)]


def _as_output(rendered: np.ndarray) -> np.ndarray:
    # single-plane maps are saved as gray images
    return rendered[..., 0] if rendered.shape[-1] == 1 else rendered


def run(config: RunConfig) -> int:
    """Decode, detect, render and encode; returns the process exit status."""
    t0 = time.perf_counter()
    image = load_image(config.input)
    t1 = time.perf_counter()

    planes = _planes(image, config.gray)
    params = config.render_params()
    results: list[tuple[str, Path | None, np.ndarray]] = []
    fields = None
    if config.detector == "dipole":
        compute = dipole_engine(config.engine)
        for size in config.sweep or [config.window]:
            spec = config.window_spec(size)
            dipoles = [compute(p, spec) for p in planes]
            rendered = _as_output(render_map([magnitude_field(d) for d in dipoles], params))
            target = sweep_path(config.output, size) if config.sweep else config.output
            results.append((f"dipole {spec.label()}", target, rendered))
            if fields is None:
                fields = dipoles
    else:
        mags = [detector_response(p, config.detector) for p in planes]
        results.append((config.detector, config.output, _as_output(render_map(mags, params))))
    t2 = time.perf_counter()

    for _, target, rendered in results:
        if target is not None:
            save_image(rendered, target)
    if config.dump is not None:
        write_dump(fields, config.dump)
    t3 = time.perf_counter()

    if config.figure is not None:
        from .report import edge_figure

        panels = [(title, rendered) for title, _, rendered in results]
        if config.compare:
            for det in Detector:
                if det.value != config.detector:
                    mags = [detector_response(p, det) for p in planes]
                    panels.append((det.value, _as_output(render_map(mags, params))))
        source = promote_gray(to_gray(image)) if config.gray else image
        edge_figure(source, panels, config.figure)

    print(
        "timing\tdecode_ms=%.3f\tcompute_ms=%.3f\tencode_ms=%.3f"
        % ((t1 - t0) * 1e3, (t2 - t1) * 1e3, (t3 - t2) * 1e3),
        file=sys.stderr,
    )
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_args(argv)
    except UsageError as exc:
        print(f"colordipole: usage error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(config)
    except (OSError, ColorDipoleError, ValueError) as exc:
        print(f"colordipole: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
