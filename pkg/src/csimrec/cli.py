"""Command-line surface: inpaint, patchbench, imagebench, metrics, mask.

Every run is a pure function of its input files, flags, and ``--seed``; the
only non-reproducible output is the wall-time column of the benchmark CSVs,
which ``--no-timing`` pins to zero. Exit codes: 0 success, 1 runtime failure
(diagnostic on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from .bench import (
    ExperimentSpec,
    random_mask_2d,
    run_inpaint_benchmark,
    run_patch_benchmark,
    write_csv,
)
from .metrics import csim_weights, quality_report
from .pgmio import read_mask, read_pgm, write_mask, write_pgm
from .solver1d import SolverConfig1D
from .solver2d import SolverConfig2D, inpaint

__all__ = ["main"]

_AUTO_RULES = {
    ("1d", "sigma"): "auto(2*m/n)",
    ("1d", "k0"): "auto(n-1)",
    ("1d", "lam"): "auto(dictionary norm)",
    ("2d", "sigma"): "auto(6*sr)",
    ("2d", "k0"): "auto(2.5*(N-1))",
}


def _add_solver_flags(parser: argparse.ArgumentParser, two_d: bool) -> None:
    g = parser.add_argument_group("solver overrides")
    g.add_argument("--sigma", type=float, help="penalty weight (default: rate-scaled)")
    g.add_argument("--mu", type=float, help="threshold decay factor in (0,1)")
    g.add_argument("--zeta", type=float, help="initial threshold factor in (0,1)")
    g.add_argument("--rho", type=float, help="error-sensitivity constant")
    g.add_argument("--k0", type=float, help="similarity scale constant")
    g.add_argument("--alpha-min", dest="alpha_min", type=float, help="threshold floor")
    g.add_argument("--max-iter", dest="max_iter", type=int, help="iteration cap")
    g.add_argument("--tol", type=float, help="relative-change stopping tolerance")
    g.add_argument(
        "--lambda", dest="lam", type=float, help="spectral-norm over-estimate"
    )
    if two_d:
        g.add_argument(
            "--kernel-side", dest="kernel_side", type=int,
            help="odd moving-average kernel side (1 disables smoothing)",
        )


def _solver_config(args: argparse.Namespace, cls):
    names = {f.name for f in fields(cls)}
    overrides = {
        k: v for k, v in vars(args).items() if k in names and v is not None
    }
    return cls(**overrides)


def _print_config(cfg, kind: str) -> None:
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if value is None:
            value = _AUTO_RULES.get((kind, f.name), "auto")
        print(f"{f.name}={value}")


def _collect_images(entries: list[str]) -> tuple[str, ...]:
    paths: list[str] = []
    for entry in entries:
        p = Path(entry)
        if p.is_dir():
            found = sorted(str(q) for q in p.glob("*.pgm"))
            if not found:
                raise ValueError(f"no .pgm files in directory {entry}")
            paths.extend(found)
        else:
            paths.append(str(p))
    return tuple(paths)


def _parse_rates(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"bad sampling-rate list {text!r}; expected e.g. 0.1,0.3,0.5")


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _cmd_inpaint(args: argparse.Namespace) -> int:
    image = read_pgm(args.input)
    if args.mask is not None:
        mask = read_mask(args.mask)
        if mask.shape != image.shape:
            raise ValueError(
                f"mask shape {mask.shape} does not match image {image.shape}"
            )
    elif args.sr is not None:
        rng = np.random.default_rng(args.seed)
        mask = random_mask_2d(image.shape, args.sr, rng)
    else:
        raise ValueError("either --mask or --sr is required")
    if args.save_mask:
        write_mask(mask, args.save_mask)

    cfg = _solver_config(args, SolverConfig2D)
    resolved = cfg.resolved(image.shape, mask.m)
    if args.print_config:
        _print_config(resolved, "2d")
    ref = read_pgm(args.ref) if args.ref else None
    x_hat, rep = inpaint(image * mask.grid, mask, cfg, ref=ref)
    write_pgm(x_hat, args.output)
    print(f"iterations={rep.iterations}")
    if ref is not None:
        print(f"psnr_db={_fmt(rep.psnr)}")
        print(f"ssim={_fmt(rep.ssim)}")
        print(f"csim={_fmt(rep.csim)}")
    return 0


def _cmd_metrics(args: argparse.Namespace) -> int:
    a = read_pgm(args.a)
    b = read_pgm(args.b)
    params = None
    if args.k0 is not None or args.rho is not None:
        params = csim_weights(
            a.size,
            args.k0 if args.k0 is not None else a.size - 1,
            args.rho if args.rho is not None else 1.1,
        )
    rep = quality_report(a, b, csim_params=params)
    print(f"mse={_fmt(rep.mse)}")
    print(f"psnr_db={_fmt(rep.psnr)}")
    print(f"ssim={_fmt(rep.ssim)}")
    print(f"csim={_fmt(rep.csim)}")
    return 0


def _cmd_mask(args: argparse.Namespace) -> int:
    try:
        h, w = (int(tok) for tok in args.shape.lower().split("x"))
    except ValueError:
        raise ValueError(f"bad --shape {args.shape!r}; expected HxW, e.g. 256x256")
    rng = np.random.default_rng(args.seed)
    mask = random_mask_2d((h, w), args.sr, rng)
    write_mask(mask, args.output)
    return 0


def _make_spec(args: argparse.Namespace) -> ExperimentSpec:
    kwargs = dict(
        images=_collect_images(args.images),
        sampling_rates=_parse_rates(args.sr),
        seed=args.seed,
        measure_time=not args.no_timing,
    )
    if hasattr(args, "patch_size"):
        kwargs.update(
            patch_size=args.patch_size,
            num_patches=args.num_patches,
            num_atoms=args.num_atoms,
            config1d=_solver_config(args, SolverConfig1D),
        )
    else:
        kwargs.update(config2d=_solver_config(args, SolverConfig2D))
    return ExperimentSpec(**kwargs)


def _emit_rows(rows, out: str) -> None:
    if out == "-":
        write_csv(rows, sys.stdout)
    else:
        write_csv(rows, out)


def _cmd_patchbench(args: argparse.Namespace) -> int:
    spec = _make_spec(args)
    if args.print_config:
        _print_config(spec.config1d, "1d")
    _emit_rows(run_patch_benchmark(spec), args.output)
    return 0


def _cmd_imagebench(args: argparse.Namespace) -> int:
    spec = _make_spec(args)
    if args.print_config:
        _print_config(spec.config2d, "2d")
    _emit_rows(run_inpaint_benchmark(spec), args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csimrec",
        description="Missing-sample recovery and inpainting by sparse "
        "approximation with a convex similarity fidelity metric.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inpaint", help="recover missing pixels of an image")
    p.add_argument("--in", dest="input", required=True, help="input image (PGM)")
    p.add_argument("--out", dest="output", required=True, help="reconstruction path")
    p.add_argument("--mask", help="sampling mask PGM ({0,255}); 255 = observed")
    p.add_argument("--sr", type=float, help="generate a random mask at this rate")
    p.add_argument("--seed", type=int, default=0, help="mask generation seed")
    p.add_argument("--ref", help="ground-truth image; prints quality metrics")
    p.add_argument("--save-mask", dest="save_mask", help="write the mask used")
    p.add_argument("--print-config", action="store_true", dest="print_config")
    _add_solver_flags(p, two_d=True)
    p.set_defaults(func=_cmd_inpaint)

    p = sub.add_parser("patchbench", help="patch-vector recovery benchmark")
    p.add_argument("--images", nargs="+", required=True, help="PGM files or directories")
    p.add_argument("--sr", required=True, help="comma-separated sampling rates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", dest="output", default="-", help="CSV path, '-' = stdout")
    p.add_argument("--patch-size", dest="patch_size", type=int, default=8)
    p.add_argument("--num-patches", dest="num_patches", type=int, default=50)
    p.add_argument("--num-atoms", dest="num_atoms", type=int, default=None)
    p.add_argument(
        "--no-timing", action="store_true", dest="no_timing",
        help="write 0 in the seconds column for byte-reproducible output",
    )
    p.add_argument("--print-config", action="store_true", dest="print_config")
    _add_solver_flags(p, two_d=False)
    p.set_defaults(func=_cmd_patchbench)

    p = sub.add_parser("imagebench", help="whole-image inpainting benchmark")
    p.add_argument("--images", nargs="+", required=True, help="PGM files or directories")
    p.add_argument("--sr", required=True, help="comma-separated sampling rates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", dest="output", default="-", help="CSV path, '-' = stdout")
    p.add_argument(
        "--no-timing", action="store_true", dest="no_timing",
        help="write 0 in the seconds column for byte-reproducible output",
    )
    p.add_argument("--print-config", action="store_true", dest="print_config")
    _add_solver_flags(p, two_d=True)
    p.set_defaults(func=_cmd_imagebench)

    p = sub.add_parser("metrics", help="compare two images")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--k0", type=float, help="similarity scale constant")
    p.add_argument("--rho", type=float, help="error-sensitivity constant")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("mask", help="generate a random sampling mask")
    p.add_argument("--shape", required=True, help="HxW, e.g. 256x256")
    p.add_argument("--sr", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=_cmd_mask)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - single CLI failure funnel
        print(f"csimrec: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
