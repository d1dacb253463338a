"""
Recovering missing samples of a patch vector
============================================

The 1D solver alternates three steps on an augmented Lagrangian: a
closed-form quadratic update for the signal estimate (a rank-one-corrected
inverse, no linear system is ever factorized), one soft-thresholded surrogate
step for the sparse coefficients, and a dual ascent step, while the l1 weight
decays geometrically. Observed samples are restored exactly at the end.

Two regimes are shown: an exactly sparse synthetic signal, where a generous
iteration budget drives the error to numerical noise, and a real image patch
at several sampling rates.
"""
import numpy as np

from csimrec import (
    SolverConfig1D,
    build_overcomplete_dct,
    extract_patches,
    random_mask,
    read_pgm,
    recover_patch,
)

rng = np.random.default_rng(7)
d = build_overcomplete_dct(64, 128)

###############################################################################
# Exactly sparse, noiseless
# --------------------------
# A 4-atom synthesis observed at 70% of its samples. The speed-oriented
# default schedule (50 iterations) gets within a few percent; a precision
# budget recovers the signal to ~1e-3.

s0 = np.zeros(128)
s0[rng.choice(128, size=4, replace=False)] = rng.normal(size=4) + 1.0
x0 = d.atoms @ s0
mask = random_mask(64, 0.7, rng)
y = x0[mask.observed]

for label, cfg in [
    ("default (50 it)", SolverConfig1D()),
    ("precision (500 it)", SolverConfig1D(mu=0.95, alpha_min=1e-6, max_iter=500, tol=0.0)),
]:
    x_hat, rep = recover_patch(y, mask, d, cfg)
    rel = np.linalg.norm(x_hat - x0) / np.linalg.norm(x0)
    print(f"{label:<20} relative l2 error {rel:.2e}  "
          f"({rep.iterations} iterations, {rep.seconds*1e3:.1f} ms)")

###############################################################################
# A real patch across sampling rates
# -----------------------------------
# 8x8 patches of the bundled test image, raster-scanned to 64-vectors.

image = read_pgm("data/camera256.pgm")
patch = extract_patches(image, 8)[520]  # a moderately textured tile

print(f"\n{'rate':>6} {'m':>4} {'psnr_db':>9} {'ssim':>7}")
for sr in (0.3, 0.5, 0.7, 0.9):
    mask = random_mask(64, sr, rng)
    x_hat, rep = recover_patch(patch[mask.observed], mask, d, ref=patch)
    print(f"{sr:>6} {mask.m:>4} {rep.psnr:>9.3f} {rep.ssim:>7.4f}")

print("\nobserved samples are always restored exactly: the output equals the "
      "input at every observed position, bit for bit.")
