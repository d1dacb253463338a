"""Signal and image quality metrics.

MSE/PSNR, a global-statistics structural similarity index, and a convex
similarity index (a quadratic, error-sensitive fidelity metric) in both its
statistical and quadratic forms, together with the weighting-operator algebra
the recovery solvers are built on.

The weighting operator is ``W = w1*I + w2*ones*ones^T``; it is never
materialized, every product is evaluated in O(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = [
    "CsimParams",
    "QualityReport",
    "RecoveryReport",
    "csim_weights",
    "apply_w",
    "csim_stat",
    "csim_quad",
    "mse",
    "psnr",
    "ssim_global",
    "ssim_windowed",
    "quality_report",
    "SSIM_C1",
    "SSIM_C2",
]

# Community-standard SSIM stabilizers for 8-bit data: (0.01*255)^2, (0.03*255)^2.
SSIM_C1 = 6.5025
SSIM_C2 = 58.5225


@dataclass(frozen=True)
class CsimParams:
    """Constants of the convex similarity index over ``n``-vectors.

    ``w1`` and ``w2`` are derived from ``(n, k0, rho)`` and define the
    weighting matrix ``W = w1*I + w2*ones*ones^T``. Build instances with
    :func:`csim_weights` rather than by hand so the derivation invariants
    hold.
    """

    n: int
    k0: float
    rho: float
    w1: float
    w2: float


@dataclass(frozen=True)
class QualityReport:
    """Bundle of per-pair quality numbers; ``psnr`` is ``inf`` when ``mse`` is 0."""

    mse: float
    psnr: float
    ssim: float
    csim: float


@dataclass(frozen=True)
class RecoveryReport:
    """Outcome of one solver run.

    ``psnr``/``ssim``/``csim`` compare the recovery against a reference signal
    and are NaN when the caller supplied none. ``residual`` is the final
    synthesis mismatch ``||x - D s||_2`` before the consistency projection.
    """

    psnr: float
    ssim: float
    csim: float
    iterations: int
    seconds: float
    residual: float
    config: dict[str, Any] = field(default_factory=dict)


def csim_weights(n: int, k0: float, rho: float) -> CsimParams:
    """Derive the weighting constants for dimension ``n``.

    Parameters
    ----------
    n : int
        Number of samples the statistics are taken over, at least 2.
    k0 : float
        Positive scale constant.
    rho : float
        Positive error-sensitivity constant. ``rho = (n-1)/n`` makes the
        index collapse to ``(k0/n) * ||x - y||^2``.
    """
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")
    if k0 <= 0 or rho <= 0:
        raise ValueError(f"k0 and rho must be positive, got k0={k0}, rho={rho}")
    w1 = k0 * rho / (n - 1)
    w2 = k0 * (1.0 / n**2 - rho / (n * (n - 1)))
    return CsimParams(n=int(n), k0=float(k0), rho=float(rho), w1=w1, w2=w2)


def _as_vector(x: np.ndarray, n: int, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64).ravel()
    if v.size != n:
        raise ValueError(f"{name} has {v.size} samples, expected {n}")
    return v


def apply_w(v: np.ndarray, p: CsimParams) -> np.ndarray:
    """Product ``W v = w1*v + w2*sum(v)*ones`` without forming ``W``."""
    v = _as_vector(v, p.n, "v")
    return p.w1 * v + p.w2 * v.sum()


def csim_stat(x: np.ndarray, y: np.ndarray, p: CsimParams) -> float:
    """Convex similarity index in statistical form.

    ``k0 * ((mu_x - mu_y)^2 + rho * (var_x + var_y - 2*cov_xy))`` with sample
    means and unbiased (n-1) variance/covariance. Lower is better; 0 only for
    identical signals.
    """
    x = _as_vector(x, p.n, "x")
    y = _as_vector(y, p.n, "y")
    mu_x = x.mean()
    mu_y = y.mean()
    dx = x - mu_x
    dy = y - mu_y
    var_x = dx @ dx / (p.n - 1)
    var_y = dy @ dy / (p.n - 1)
    cov = dx @ dy / (p.n - 1)
    return float(p.k0 * ((mu_x - mu_y) ** 2 + p.rho * (var_x + var_y - 2.0 * cov)))


def csim_quad(x: np.ndarray, y: np.ndarray, p: CsimParams) -> float:
    """Convex similarity index in quadratic form ``(x-y)^T W (x-y)``.

    Algebraically equal to :func:`csim_stat`; evaluated as
    ``w1*||e||^2 + w2*(sum e)^2`` in O(n).
    """
    x = _as_vector(x, p.n, "x")
    y = _as_vector(y, p.n, "y")
    e = x - y
    return float(p.w1 * (e @ e) + p.w2 * e.sum() ** 2)


def mse(x: np.ndarray, y: np.ndarray) -> float:
    """Mean squared error between two arrays of identical shape."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    d = x - y
    return float(np.mean(d * d))


def psnr(x: np.ndarray, y: np.ndarray, peak: float = 255.0) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical inputs."""
    if peak <= 0:
        raise ValueError(f"peak must be positive, got {peak}")
    err = mse(x, y)
    if err == 0.0:
        return math.inf
    return float(10.0 * math.log10(peak**2 / err))


def _ssim_from_stats(
    mu_x, mu_y, var_x, var_y, cov, c1: float, c2: float
):
    num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)
    den = (mu_x**2 + mu_y**2 + c1) * (var_x + var_y + c2)
    return num / den


def ssim_global(
    x: np.ndarray, y: np.ndarray, c1: float = SSIM_C1, c2: float = SSIM_C2
) -> float:
    """Structural similarity evaluated on whole-signal statistics.

    Uses the sample mean and unbiased variance/covariance of the full
    signals; 1 only for identical signals, negative for anti-correlated ones.
    """
    if c1 <= 0 or c2 <= 0:
        raise ValueError("c1 and c2 must be positive")
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    n = x.size
    if n < 2:
        raise ValueError("need at least 2 samples")
    mu_x = x.mean()
    mu_y = y.mean()
    dx = x - mu_x
    dy = y - mu_y
    var_x = dx @ dx / (n - 1)
    var_y = dy @ dy / (n - 1)
    cov = dx @ dy / (n - 1)
    return float(_ssim_from_stats(mu_x, mu_y, var_x, var_y, cov, c1, c2))


def ssim_windowed(
    x: np.ndarray,
    y: np.ndarray,
    window: int = 8,
    c1: float = SSIM_C1,
    c2: float = SSIM_C2,
) -> float:
    """Mean structural similarity over all sliding windows.

    Uniform ``window x window`` weights, stride 1, same statistics convention
    as :func:`ssim_global`. This is the reporting metric for image pairs.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    if x.ndim != 2:
        raise ValueError(f"expected 2D images, got {x.ndim}D")
    if window < 2:
        raise ValueError(f"window must be at least 2, got {window}")
    if window > min(x.shape):
        raise ValueError(f"window {window} exceeds image extent {x.shape}")

    from numpy.lib.stride_tricks import sliding_window_view

    k = window * window
    wx = sliding_window_view(x, (window, window)).reshape(-1, k)
    wy = sliding_window_view(y, (window, window)).reshape(-1, k)
    mu_x = wx.mean(axis=1)
    mu_y = wy.mean(axis=1)
    # unbiased second moments, vectorized over windows
    var_x = (np.einsum("ij,ij->i", wx, wx) - k * mu_x**2) / (k - 1)
    var_y = (np.einsum("ij,ij->i", wy, wy) - k * mu_y**2) / (k - 1)
    cov = (np.einsum("ij,ij->i", wx, wy) - k * mu_x * mu_y) / (k - 1)
    return float(np.mean(_ssim_from_stats(mu_x, mu_y, var_x, var_y, cov, c1, c2)))


def quality_report(
    a: np.ndarray,
    b: np.ndarray,
    peak: float = 255.0,
    window: int = 8,
    csim_params: CsimParams | None = None,
) -> QualityReport:
    """Compare two images (or vectors) and bundle the standard metrics.

    2D inputs use the windowed similarity; 1D inputs the global form. When
    ``csim_params`` is omitted, weights default to ``k0 = n - 1``,
    ``rho = 1.1`` over the flattened size.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if csim_params is None:
        csim_params = csim_weights(a.size, k0=a.size - 1, rho=1.1)
    if a.ndim == 2 and min(a.shape) >= window:
        ssim = ssim_windowed(a, b, window=window)
    else:
        ssim = ssim_global(a, b)
    return QualityReport(
        mse=mse(a, b),
        psnr=psnr(a, b, peak=peak),
        ssim=ssim,
        csim=csim_quad(a, b, csim_params),
    )
