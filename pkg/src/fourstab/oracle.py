"""Function-side estimators of frame and Riesz constants.

These evaluate the defining inequalities of the exponential system on
T(P) directly, without any singular value decomposition, so they serve as
independent cross-checks of the matrix route.

Analysis side (frames): for f piecewise constant with value phi_k on the
cube Q + p_k,

    sum_j sum_{|n|_inf <= T} |<f, e^{2 pi i (n + delta_j).x}>|^2
        = sum_j |(G conj(phi))_j|^2 * prod_t S_T(delta_{j,t}),

where S_T(b) = sum_{|n| <= T} sinc^2(n + b) increases to 1 as T grows.
The cube integrals are products of one-dimensional integrals of
exponentials, evaluated in closed form; truncation in n is the only
approximation.

Synthesis side (Riesz sequences): the squared norm of a finite combination
sum a_{j,n} e^{2 pi i (n + delta_j).x} over T(P) expands into closed-form
cross terms

    <e_{n+delta_j}, e_{m+delta_i}>_{L2(T)}
        = (sum_k e^{2 pi i (delta_j - delta_i).p_k}) * prod_t J(nu_t),

with nu = (n - m) + (delta_j - delta_i) and J(nu) the unit-interval
integral of e^{2 pi i nu y}.  No truncation is involved, so the Riesz
ratio is exact up to roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .core_matrix import unit_entries
from .exp_systems import ExponentialSystemSpec, gram_matrix

__all__ = [
    "CubeWitness",
    "FiniteSequence",
    "frame_ratio",
    "riesz_ratio",
    "hilbert_shift",
    "extremal_witness",
]


@dataclass(frozen=True, eq=False)
class CubeWitness:
    """Piecewise-constant function on T(P): value phi_k on the cube Q + p_k."""

    spec: ExponentialSystemSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.ndim != 1 or vals.size != self.spec.num_p:
            raise ValueError(
                f"witness needs {self.spec.num_p} cube values, got shape {vals.shape}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def norm_sq(self) -> float:
        """Squared L2 norm of the function; cubes have unit measure."""
        return float(np.sum(np.abs(self.values) ** 2))


@dataclass(frozen=True, eq=False)
class FiniteSequence:
    """Complex sequence supported on the window [start, start + len - 1]."""

    start: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("sequence needs a nonempty 1-D value array")
        if not np.all(np.isfinite(vals.real)) or not np.all(np.isfinite(vals.imag)):
            raise ValueError("sequence values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def delta(cls, position: int = 0) -> "FiniteSequence":
        return cls(position, np.array([1.0 + 0.0j]))

    @property
    def window(self) -> tuple[int, int]:
        return self.start, self.start + self.values.size - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.start + self.values.size)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


def _axis_tail_sum(offset: float, trunc: int) -> float:
    """S_T(offset) = sum over |n| <= T of sinc^2(n + offset)."""
    n = np.arange(-trunc, trunc + 1, dtype=float)
    return float(np.sum(np.sinc(n + offset) ** 2))


def frame_ratio(witness: CubeWitness, trunc: int) -> float:
    """Truncated analysis sum of the witness divided by its squared norm.

    Monotone nondecreasing in the truncation radius and bounded above by
    the optimal upper frame constant sigma_1(G)^2.
    """
    if trunc < 1:
        raise ValueError(f"truncation radius must be >= 1, got {trunc}")
    norm_sq = witness.norm_sq
    if norm_sq == 0.0:
        raise ValueError("witness must be nonzero")
    spec = witness.spec
    deltas = spec.deltas.points
    phases = deltas @ spec.p.points.T
    g = unit_entries(phases) @ np.conj(witness.values)
    total = 0.0
    for j in range(spec.num_deltas):
        factor = 1.0
        for t in range(spec.dim):
            factor *= _axis_tail_sum(deltas[j, t], trunc)
        total += float(np.abs(g[j]) ** 2) * factor
    return total / norm_sq


def _unit_interval_integral(nu: float) -> complex:
    """J(nu) = integral over [0,1] of exp(2 pi i nu y); exactly 0 at integers != 0."""
    if nu == 0.0:
        return 1.0 + 0.0j
    ang = 2.0 * math.pi * (nu % 1.0)
    numer = complex(math.cos(ang) - 1.0, math.sin(ang))
    return numer / (2.0j * math.pi * nu)


def _normalize_coeffs(
    spec: ExponentialSystemSpec, coeffs: Mapping
) -> tuple[list[tuple[int, tuple[int, ...]]], np.ndarray]:
    keys: list[tuple[int, tuple[int, ...]]] = []
    vals: list[complex] = []
    for key, val in coeffs.items():
        j, n = key
        j = int(j)
        n_tup = (int(n),) if np.isscalar(n) else tuple(int(x) for x in n)
        if not 0 <= j < spec.num_deltas:
            raise ValueError(f"offset index {j} out of range [0, {spec.num_deltas})")
        if len(n_tup) != spec.dim:
            raise ValueError(f"integer index {n_tup} has wrong dimension (expected {spec.dim})")
        keys.append((j, n_tup))
        vals.append(complex(val))
    arr = np.asarray(vals, dtype=np.complex128)
    if not keys or not np.any(np.abs(arr) > 0.0):
        raise ValueError("coefficients must be nonzero somewhere")
    return keys, arr


def _synthesis_norm_sq(
    spec: ExponentialSystemSpec, keys: list[tuple[int, tuple[int, ...]]], a: np.ndarray
) -> float:
    """Exact ||sum a_{j,n} e^{2 pi i (n + delta_j).x}||^2 over T(P)."""
    deltas = spec.deltas.points
    pts = spec.p.points
    count = len(keys)
    cross = np.empty((count, count), dtype=np.complex128)
    for ai, (j, n) in enumerate(keys):
        for bi, (i, mvec) in enumerate(keys):
            phase = np.dot(deltas[j] - deltas[i], pts.T)
            lattice_sum = np.sum(unit_entries(phase))
            prod = complex(lattice_sum)
            for t in range(spec.dim):
                nu = (n[t] - mvec[t]) + (deltas[j, t] - deltas[i, t])
                prod *= _unit_interval_integral(nu)
            cross[ai, bi] = prod
    value = np.conj(a) @ (a @ cross)
    return float(np.real(value))


def _synthesis_norm_sq_quadrature(
    spec: ExponentialSystemSpec, keys, a: np.ndarray, grid: int
) -> float:
    """Gauss-Legendre cross-check of the closed-form synthesis norm."""
    xg, wg = np.polynomial.legendre.leggauss(grid)
    y = 0.5 * (xg + 1.0)
    w = 0.5 * wg
    mesh = np.stack(np.meshgrid(*([y] * spec.dim), indexing="ij"), axis=-1).reshape(-1, spec.dim)
    wmesh = np.stack(np.meshgrid(*([w] * spec.dim), indexing="ij"), axis=-1)
    weights = wmesh.reshape(-1, spec.dim).prod(axis=1)
    deltas = spec.deltas.points
    total = 0.0
    for p_k in spec.p.points:
        x = mesh + p_k[None, :]
        s = np.zeros(mesh.shape[0], dtype=np.complex128)
        for (j, n), coeff in zip(keys, a):
            theta = np.asarray(n, dtype=float) + deltas[j]
            s += coeff * np.exp(2j * np.pi * (x @ theta))
        total += float(np.sum(weights * np.abs(s) ** 2))
    return total


def riesz_ratio(
    spec: ExponentialSystemSpec,
    coeffs: Mapping,
    grid: int = 64,
    cross_check: bool = False,
) -> float:
    """Synthesis ratio ||sum a e||^2 / sum |a|^2 from closed-form cross terms.

    ``coeffs`` maps (j, n) to a complex coefficient, j the offset index and
    n a d-dimensional integer (a plain int when d = 1).  With
    ``cross_check`` the value is re-computed by Gauss-Legendre quadrature
    with ``grid`` points per axis and must agree to 1e-6 relative.
    """
    if grid < 64:
        raise ValueError(f"quadrature grid must be >= 64 points per axis, got {grid}")
    keys, a = _normalize_coeffs(spec, coeffs)
    norm_sq = _synthesis_norm_sq(spec, keys, a)
    coeff_sq = float(np.sum(np.abs(a) ** 2))
    ratio = norm_sq / coeff_sq
    if cross_check:
        quad = _synthesis_norm_sq_quadrature(spec, keys, a, grid) / coeff_sq
        if abs(quad - ratio) > 1e-6 * max(abs(ratio), 1.0):
            raise ArithmeticError(
                f"quadrature cross-check failed: closed form {ratio:.12g}, quadrature {quad:.12g}"
            )
    return ratio


def hilbert_shift(
    a: FiniteSequence, t: float, out_window: tuple[int, int] | None = None
) -> FiniteSequence:
    """Discrete fractional shift H_t on a finitely supported sequence.

    Integer t: (H_t a)_m = (-1)^t a_{m+t}.  Otherwise
    (H_t a)_m = (sin(pi t)/pi) sum_n a_n / (m - n + t), evaluated on the
    output window (default: ten times the input support radius).
    """
    lo, hi = a.window
    if out_window is None:
        radius = max(abs(lo), abs(hi), 1)
        out_window = (-10 * radius, 10 * radius)
    out_lo, out_hi = int(out_window[0]), int(out_window[1])
    if out_hi < out_lo:
        raise ValueError(f"empty output window {out_window}")
    m = np.arange(out_lo, out_hi + 1)
    if float(t).is_integer():
        shift = int(round(t))
        sign = 1.0 if shift % 2 == 0 else -1.0
        out = np.zeros(m.size, dtype=np.complex128)
        src = m + shift
        mask = (src >= lo) & (src <= hi)
        out[mask] = sign * a.values[src[mask] - lo]
        return FiniteSequence(out_lo, out)
    denom = m[:, None] - a.indices[None, :] + t
    out = (math.sin(math.pi * t) / math.pi) * np.sum(a.values[None, :] / denom, axis=1)
    return FiniteSequence(out_lo, out)


def extremal_witness(spec: ExponentialSystemSpec, which: str) -> CubeWitness:
    """Piecewise-constant witness attaining an optimal frame constant.

    The analysis sum of a witness with cube values phi equals the
    quadratic form of the Gram matrix at conj(phi), so the returned values
    are the conjugated unit eigenvector for the selected extreme
    eigenvalue.  Requires L >= N (the frame side).
    """
    which = which.lower()
    if which not in ("min", "max"):
        raise ValueError(f"which must be 'min' or 'max', got {which!r}")
    if spec.num_deltas < spec.num_p:
        raise ValueError("extremal witness requires at least as many offsets as cubes (L >= N)")
    gram = gram_matrix(spec).data
    eigvals, eigvecs = np.linalg.eigh(gram)
    column = 0 if which == "min" else -1
    return CubeWitness(spec, np.conj(eigvecs[:, column]))
