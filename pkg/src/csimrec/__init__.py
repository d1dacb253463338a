"""Missing-sample recovery and image inpainting by sparse approximation.

The recovery problem is posed as l1 minimization over a sparsifying
dictionary with a convex, error-sensitive similarity index as the data
fidelity term, and solved with an alternating-direction scheme whose x-step
has a closed form. Ships a 1D patch-vector solver, a holistic 2D inpainting
solver, the quality-metric toolbox (PSNR/SSIM/CSIM), an overcomplete DCT
dictionary, a benchmark harness, and PGM image I/O. The ``csimrec`` command
exposes everything from the shell.
"""

from .bench import (
    CSV_HEADER,
    ExperimentSpec,
    ResultRow,
    extract_patches,
    random_mask,
    random_mask_2d,
    run_inpaint_benchmark,
    run_patch_benchmark,
    write_csv,
)
from .metrics import (
    CsimParams,
    QualityReport,
    RecoveryReport,
    apply_w,
    csim_quad,
    csim_stat,
    csim_weights,
    mse,
    psnr,
    quality_report,
    ssim_global,
    ssim_windowed,
)
from .pgmio import MaskFormatError, PgmError, read_mask, read_pgm, write_mask, write_pgm
from .solver1d import (
    SamplingMask1D,
    SingularWeightError,
    SolverConfig1D,
    SolverState1D,
    augmented_lagrangian,
    direct_x_solve,
    recover_patch,
    s_update,
    soft_threshold,
    woodbury_gammas,
    x_update,
)
from .solver2d import (
    Mask2D,
    SolverConfig2D,
    SolverState2D,
    apply_w_2d,
    csim_2d,
    inpaint,
    interp_residual,
    s_update_2d,
    x_update_2d,
)
from .transforms import (
    Dictionary,
    build_overcomplete_dct,
    dct2d,
    idct2d,
    operator_norm_sq,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "CsimParams",
    "Dictionary",
    "ExperimentSpec",
    "Mask2D",
    "MaskFormatError",
    "PgmError",
    "QualityReport",
    "RecoveryReport",
    "ResultRow",
    "SamplingMask1D",
    "SingularWeightError",
    "SolverConfig1D",
    "SolverConfig2D",
    "SolverState1D",
    "SolverState2D",
    "apply_w",
    "apply_w_2d",
    "augmented_lagrangian",
    "build_overcomplete_dct",
    "csim_2d",
    "csim_quad",
    "csim_stat",
    "csim_weights",
    "dct2d",
    "direct_x_solve",
    "extract_patches",
    "idct2d",
    "inpaint",
    "interp_residual",
    "mse",
    "operator_norm_sq",
    "psnr",
    "quality_report",
    "random_mask",
    "random_mask_2d",
    "read_mask",
    "read_pgm",
    "recover_patch",
    "run_inpaint_benchmark",
    "run_patch_benchmark",
    "s_update",
    "s_update_2d",
    "soft_threshold",
    "ssim_global",
    "ssim_windowed",
    "woodbury_gammas",
    "write_csv",
    "write_mask",
    "write_pgm",
    "x_update",
    "x_update_2d",
    "__version__",
]
