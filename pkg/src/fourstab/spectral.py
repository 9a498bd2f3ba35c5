"""Singular values, Hermitian eigenvalues, rank and condition numbers.

Two independent routes are provided and cross-validated in the test suite:
``svd_values`` goes through a full dense decomposition, while
``extreme_singular_values`` runs power iteration (largest) and inverse
iteration on the Gram matrix (smallest) with deterministic start vectors.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .core_matrix import ComplexDense

__all__ = [
    "SpectralSummary",
    "UnconvergedError",
    "svd_values",
    "extreme_singular_values",
    "hermitian_eigenvalues",
    "numeric_rank",
    "condition_number",
    "default_rank_tol",
    "CROSSOVER_DIM",
]

CROSSOVER_DIM = 1024          # full decomposition up to here, iterative beyond
_ILL_CONDITIONED = 1e8        # inverse iteration falls back to the full path
_START_SEED = 0x5EED          # deterministic iteration start vectors

METHOD_FULL = "FullDecomposition"
METHOD_ITERATIVE = "IterativeExtremes"


class UnconvergedError(RuntimeError):
    """Iterative extreme did not converge within the iteration budget."""

    def __init__(self, what: str, best_estimate: float, iterations: int):
        super().__init__(
            f"{what} unconverged after {iterations} iterations (best estimate {best_estimate:.6g})"
        )
        self.best_estimate = best_estimate
        self.iterations = iterations


@dataclass(frozen=True)
class SpectralSummary:
    """Sorted singular values with extremes, condition number and provenance."""

    singular_values: tuple[float, ...]
    sigma_max: float
    sigma_min: float
    condition: float
    method: str
    residual: float

    def to_dict(self) -> dict:
        return {
            "singular_values": list(self.singular_values),
            "sigma_max": self.sigma_max,
            "sigma_min": self.sigma_min,
            "condition": self.condition,
            "method": self.method,
            "residual": self.residual,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def default_rank_tol(rows: int, cols: int) -> float:
    return max(rows, cols) * 1e-12


def _checked(a: ComplexDense) -> np.ndarray:
    if not isinstance(a, ComplexDense):
        a = ComplexDense(np.asarray(a))
    return a.data


def svd_values(a: ComplexDense) -> SpectralSummary:
    """All singular values via a full dense decomposition.

    The residual is the largest deviation of ||A v_i|| from sigma_i over
    the computed right singular vectors.
    """
    mat = _checked(a)
    u, s, vh = np.linalg.svd(mat)
    av = mat @ vh.conj().T[:, : s.size]
    residual = float(np.max(np.abs(np.linalg.norm(av, axis=0) - s))) if s.size else 0.0
    sigma_max = float(s[0])
    sigma_min = float(s[-1])
    tol = default_rank_tol(*mat.shape)
    condition = sigma_max / sigma_min if sigma_min > tol * sigma_max else math.inf
    return SpectralSummary(
        singular_values=tuple(float(x) for x in s),
        sigma_max=sigma_max,
        sigma_min=sigma_min,
        condition=condition,
        method=METHOD_FULL,
        residual=residual,
    )


_BLOCK = 8  # subspace width; cushions clustered extreme eigenvalues


def _start_block(n: int) -> np.ndarray:
    rng = np.random.default_rng(_START_SEED)
    v = rng.standard_normal((n, min(_BLOCK, n))) + 1j * rng.standard_normal((n, min(_BLOCK, n)))
    q, _ = np.linalg.qr(v)
    return q


def _ritz_extreme(gram: np.ndarray, basis: np.ndarray, top: bool) -> tuple[float, np.ndarray]:
    """Extreme Ritz pair of ``gram`` over the orthonormal columns of ``basis``."""
    projected = basis.conj().T @ (gram @ basis)
    projected = 0.5 * (projected + projected.conj().T)
    vals, vecs = np.linalg.eigh(projected)
    idx = -1 if top else 0
    return float(vals[idx]), basis @ vecs[:, idx]


def _power_largest(gram: np.ndarray, tol: float, max_iter: int) -> float:
    """Largest eigenvalue of the Hermitian PSD matrix ``gram`` by block
    power iteration with Rayleigh-Ritz extraction."""
    basis = _start_block(gram.shape[0])
    lam = 0.0
    for it in range(1, max_iter + 1):
        lam, x = _ritz_extreme(gram, basis, top=True)
        if lam <= 0.0:
            return 0.0
        if np.linalg.norm(gram @ x - lam * x) <= tol * lam:
            return lam
        basis, _ = np.linalg.qr(gram @ basis)
    raise UnconvergedError("power iteration (sigma_max)", math.sqrt(max(lam, 0.0)), max_iter)


def _inverse_smallest(gram: np.ndarray, lam_max: float, tol: float, max_iter: int):
    """Smallest eigenvalue of ``gram`` by zero-shift block inverse iteration.

    Returns None when the Cholesky factorization fails or the matrix looks
    too ill-conditioned for the normal-equations solve; the caller then
    falls back to the full decomposition.
    """
    try:
        factor = cho_factor(gram, lower=True, check_finite=False)
    except (np.linalg.LinAlgError, ValueError):
        return None
    basis = _start_block(gram.shape[0])
    mu = lam_max
    floor = gram.shape[0] * np.finfo(float).eps * lam_max  # residual noise floor
    for it in range(1, max_iter + 1):
        mu, x = _ritz_extreme(gram, basis, top=False)
        if mu <= 0.0 or (lam_max > 0 and lam_max / mu > _ILL_CONDITIONED**2):
            return None
        if np.linalg.norm(gram @ x - mu * x) <= tol * mu + floor:
            return mu
        solved = cho_solve(factor, basis, check_finite=False)
        if not np.all(np.isfinite(solved)):
            return None
        basis, _ = np.linalg.qr(solved)
    raise UnconvergedError("inverse iteration (sigma_min)", math.sqrt(max(mu, 0.0)), max_iter)


def extreme_singular_values(
    a: ComplexDense, tol: float = 1e-11, max_iter: int = 100_000
) -> tuple[float, float]:
    """(sigma_max, sigma_min) by iteration on the smaller Gram matrix.

    Agrees with ``svd_values`` to within ~10*tol relative on inputs where
    both run; raises UnconvergedError with the best estimate otherwise.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    mat = _checked(a)
    rows, cols = mat.shape
    gram = mat.conj().T @ mat if rows >= cols else mat @ mat.conj().T
    gram = 0.5 * (gram + gram.conj().T)

    lam_max = _power_largest(gram, tol, max_iter)
    sigma_max = math.sqrt(max(lam_max, 0.0))
    if lam_max == 0.0:
        return 0.0, 0.0

    lam_min = _inverse_smallest(gram, lam_max, tol, max_iter)
    if lam_min is None:
        s = np.linalg.svd(mat, compute_uv=False)
        return sigma_max, float(s[-1])
    return sigma_max, math.sqrt(max(lam_min, 0.0))


def hermitian_eigenvalues(b: ComplexDense) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    mat = _checked(b)
    if mat.shape[0] != mat.shape[1]:
        raise ValueError(f"matrix must be square, got {mat.shape}")
    asym = float(np.max(np.abs(mat - mat.conj().T)))
    if asym > 1e-12:
        raise ValueError(f"matrix is not Hermitian (max asymmetry {asym:.3e})")
    return np.linalg.eigvalsh(mat)[::-1]


def numeric_rank(a: ComplexDense, rel_tol: float | None = None) -> int:
    """Number of singular values above rel_tol * sigma_1."""
    mat = _checked(a)
    if rel_tol is None:
        rel_tol = default_rank_tol(*mat.shape)
    if not 0.0 < rel_tol < 1.0:
        raise ValueError(f"relative tolerance must lie in (0, 1), got {rel_tol}")
    s = np.linalg.svd(mat, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def condition_number(a: ComplexDense) -> float:
    """sigma_max / sigma_min, or +inf when numerically singular."""
    return svd_values(a).condition
