"""Sparsifying transforms: overcomplete 1D DCT dictionary and 2D DCT pair.

The dictionary is a synthesis matrix whose unit-norm columns (atoms) linearly
combine to represent a patch vector; its squared spectral norm is cached at
construction because the solver's majorization step needs it. The 2D
transform is the separable orthonormal type-II DCT, so its operator norm
is exactly 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dctn, idctn

__all__ = [
    "Dictionary",
    "build_overcomplete_dct",
    "operator_norm_sq",
    "dct2d",
    "idct2d",
]


@dataclass(frozen=True)
class Dictionary:
    """Synthesis dictionary with unit-norm columns.

    ``atoms`` is ``(n, m_atoms)`` with ``m_atoms >= n``; ``lam_sq`` caches the
    squared spectral norm ``||D||_2^2`` (>= 1 for unit-norm columns).
    """

    atoms: np.ndarray
    lam_sq: float

    @property
    def n(self) -> int:
        return self.atoms.shape[0]

    @property
    def m_atoms(self) -> int:
        return self.atoms.shape[1]


def _power_iteration_sq_norm(
    atoms: np.ndarray, tol: float = 1e-8, max_iter: int = 1000
) -> float:
    """Largest eigenvalue of ``D^T D`` by power iteration.

    Deterministic seed start vector; stops when the Rayleigh quotient changes
    by less than ``tol`` relative.
    """
    rng = np.random.default_rng(0)
    v = rng.standard_normal(atoms.shape[1])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = atoms.T @ (atoms @ v)
        lam_new = float(v @ w)
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            return 0.0
        v = w / nrm
        if abs(lam_new - lam) <= tol * max(1.0, abs(lam_new)):
            return lam_new
        lam = lam_new
    return lam


def build_overcomplete_dct(
    n: int, m_atoms: int, remove_mean: bool = True
) -> Dictionary:
    """Overcomplete DCT dictionary of ``m_atoms`` cosine atoms over ``n`` samples.

    Atom ``k`` samples ``cos(pi*k*(2i+1)/(2*m_atoms))`` at ``i = 0..n-1``.
    With ``remove_mean`` the non-constant atoms are mean-removed before
    normalization (the usual construction for sparse-coding dictionaries);
    with ``m_atoms == n`` and ``remove_mean=False`` the result is the
    orthonormal DCT basis.
    """
    if n < 1:
        raise ValueError(f"signal dimension must be positive, got {n}")
    if m_atoms < n:
        raise ValueError(f"need at least {n} atoms for dimension {n}, got {m_atoms}")
    i = np.arange(n, dtype=np.float64)[:, None]
    k = np.arange(m_atoms, dtype=np.float64)[None, :]
    atoms = np.cos(np.pi * k * (2.0 * i + 1.0) / (2.0 * m_atoms))
    if remove_mean:
        atoms[:, 1:] -= atoms[:, 1:].mean(axis=0, keepdims=True)
    norms = np.linalg.norm(atoms, axis=0)
    if np.any(norms < 1e-12):
        raise ValueError("degenerate atom (zero norm) in construction")
    atoms /= norms
    return Dictionary(atoms=atoms, lam_sq=_power_iteration_sq_norm(atoms))


def operator_norm_sq(d: Dictionary | np.ndarray) -> float:
    """Squared spectral norm ``||D||_2^2`` via power iteration."""
    atoms = d.atoms if isinstance(d, Dictionary) else np.asarray(d, dtype=np.float64)
    if atoms.size == 0:
        raise ValueError("empty dictionary")
    return _power_iteration_sq_norm(atoms)


def dct2d(x: np.ndarray) -> np.ndarray:
    """Separable orthonormal type-II DCT of a rectangular matrix."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError(f"expected a 2D array, got {x.ndim}D")
    return dctn(x, type=2, norm="ortho")


def idct2d(s: np.ndarray) -> np.ndarray:
    """Inverse of :func:`dct2d` (separable orthonormal type-III DCT)."""
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2:
        raise ValueError(f"expected a 2D array, got {s.ndim}D")
    return idctn(s, type=2, norm="ortho")
