"""
Whole-image inpainting
======================

Instead of cutting the image into patches, the 2D solver runs the same
alternating scheme holistically: sampling is a componentwise binary mask,
sparsity lives in the orthonormal 2D DCT domain, and the coefficient step
spreads each iteration's fitting residual from observed pixels into their
missing neighborhoods with a small moving average, which noticeably speeds up
hole filling.

Reconstructs the bundled 256x256 image from 30% of its pixels and writes the
masked input and the reconstruction next to this script.
"""
from pathlib import Path

import numpy as np

from csimrec import inpaint, random_mask_2d, read_pgm, write_pgm

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

image = read_pgm("data/camera256.pgm")
rng = np.random.default_rng(11)
mask = random_mask_2d(image.shape, 0.3, rng)
observed = image * mask.grid

x_hat, rep = inpaint(observed, mask, ref=image)
print(f"kept {mask.m} of {image.size} pixels (rate {mask.m / image.size:.3f})")
print(f"PSNR {rep.psnr:.2f} dB, mean SSIM {rep.ssim:.4f}, "
      f"{rep.iterations} iterations in {rep.seconds:.2f} s")
print(f"effective config: sigma={rep.config['sigma']:.3f}, "
      f"k0={rep.config['k0']:.1f}, lambda={rep.config['lam']}")

write_pgm(observed, out_dir / "inpaint_input.pgm")
write_pgm(x_hat, out_dir / "inpaint_reconstruction.pgm")
print(f"wrote {out_dir / 'inpaint_input.pgm'} and "
      f"{out_dir / 'inpaint_reconstruction.pgm'}")

###############################################################################
# The moving-average assist
# --------------------------
# With the smoothing disabled (kernel side 1) the same loop still converges
# but fills holes more slowly; compare the final quality.

from csimrec import SolverConfig2D

x_plain, rep_plain = inpaint(observed, mask, SolverConfig2D(kernel_side=1), ref=image)
print(f"\nwithout residual smoothing: {rep_plain.psnr:.2f} dB "
      f"(vs {rep.psnr:.2f} dB with the default 3x3 kernel)")

###############################################################################
# Side-by-side, if matplotlib is around
# --------------------------------------

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(12, 4.2))
    for ax, (title, data) in zip(
        axes,
        [
            ("original", image),
            ("30% of pixels", observed),
            (f"reconstruction ({rep.psnr:.1f} dB)", x_hat),
        ],
    ):
        ax.imshow(data, cmap="gray", vmin=0, vmax=255)
        ax.set_title(title)
        ax.axis("off")
    fig.tight_layout()
    fig.savefig(out_dir / "inpaint_comparison.png", dpi=120)
    print(f"wrote {out_dir / 'inpaint_comparison.png'}")
except ImportError:
    print("matplotlib not installed; skipping the comparison figure")
