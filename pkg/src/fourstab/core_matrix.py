"""Construction of generalized Fourier matrices from frequency and node data.

Every matrix here has unimodular entries exp(2*pi*i * w.u) for a frequency w
and a node u.  The families covered:

    fourier      F(Omega, U)  rows = frequencies, cols = nodes
    gamma        G(Delta, P)  rows = torus offsets, cols = integer vectors
    vandermonde  V(L, X)      rows j = 0..L-1, nodes X on the unit circle
    dft          the unnormalized discrete Fourier transform on a product
                 lattice, plus its frequency-perturbed variants

Index conventions are fixed: multi-index sets are enumerated
lexicographically, torus coordinates are canonicalized into [0, 1).  Phases
are reduced modulo 1 before calling cos/sin, which keeps entries accurate
for large frequencies and makes integer-phase entries exact.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "ComplexDense",
    "FrequencySet",
    "NodeSet",
    "PerturbationMap",
    "build_fourier",
    "build_gamma",
    "build_vandermonde",
    "build_dft",
    "build_perturbed_dft_freq",
    "build_instability_submatrix",
    "build_figure1",
    "select_columns",
    "rect_lattice_points",
]


def _as_point_array(points, what: str) -> np.ndarray:
    """Coerce a list of scalars / d-vectors into a float (count, dim) array."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{what}: expected a nonempty list of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what}: points must be finite")
    return arr


def _require_distinct(arr: np.ndarray, what: str) -> None:
    seen = set(map(tuple, arr))
    if len(seen) != arr.shape[0]:
        raise ValueError(f"{what}: points must be pairwise distinct")


def phase_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise dot products a_i . b_j, accumulated axis by axis.

    The fixed accumulation order makes phase_matrix(a, b) the exact
    (bitwise) transpose of phase_matrix(b, a).
    """
    out = np.zeros((a.shape[0], b.shape[0]))
    for t in range(a.shape[1]):
        out += a[:, t, None] * b[None, :, t]
    return out


def unit_entries(phase: np.ndarray) -> np.ndarray:
    """exp(2*pi*i*phase) from the phase reduced modulo 1, quadrant-folded.

    Folding to the nearest quarter turn keeps the cos/sin argument in
    [-pi/4, pi/4] and makes entries at quarter phases (1, i, -1, -i) exact.
    """
    frac = np.mod(np.asarray(phase, dtype=float), 1.0)
    quarter = np.floor(4.0 * frac + 0.5)
    ang = 2.0 * np.pi * (frac - 0.25 * quarter)
    c, s = np.cos(ang), np.sin(ang)
    q = (quarter.astype(int)) % 4
    re = np.choose(q, [c, -s, -c, s])
    im = np.choose(q, [s, c, -s, -c])
    return re + 1j * im


@dataclass(frozen=True, eq=False)
class ComplexDense:
    """Dense complex matrix, immutable after construction.

    ``notes`` collects non-fatal construction warnings (e.g. duplicate
    Vandermonde nodes); it is metadata and is not serialized.
    """

    data: np.ndarray
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128, order="C")
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"ComplexDense requires a nonempty 2-D array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("ComplexDense entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "notes", tuple(self.notes))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> np.ndarray:
        """Row-major flat view of the entries."""
        return self.data.reshape(-1)

    def to_json(self) -> str:
        """JSON document {"rows":R,"cols":C,"data":[[re,im],...]} row-major."""
        cells = ",".join(
            f"[{z.real:.17g},{z.imag:.17g}]" for z in self.entries
        )
        return f'{{"rows":{self.rows},"cols":{self.cols},"data":[{cells}]}}'

    @classmethod
    def from_json(cls, text: str) -> "ComplexDense":
        doc = json.loads(text)
        try:
            rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"matrix JSON missing field: {exc}") from exc
        if len(data) != rows * cols:
            raise ValueError(f"matrix JSON: expected {rows * cols} entries, got {len(data)}")
        flat = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
        return cls(flat.reshape(rows, cols))

    def to_csv(self) -> str:
        lines = ["row,col,re,im"]
        for r in range(self.rows):
            for c in range(self.cols):
                z = self.data[r, c]
                lines.append(f"{r},{c},{z.real:.17g},{z.imag:.17g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class FrequencySet:
    """Finite frequency set in R^d; integer-valued sets are flagged."""

    points: np.ndarray
    integer_flag: bool = field(init=False)

    def __post_init__(self):
        arr = _as_point_array(self.points, "FrequencySet")
        _require_distinct(arr, "FrequencySet")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)
        object.__setattr__(self, "integer_flag", bool(np.all(arr == np.round(arr))))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def count(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True, eq=False)
class NodeSet:
    """Finite node set on the torus T^d, canonicalized into [0, 1)^d."""

    points: np.ndarray

    def __post_init__(self):
        arr = np.mod(_as_point_array(self.points, "NodeSet"), 1.0)
        _require_distinct(arr, "NodeSet (mod 1)")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def count(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True, eq=False)
class PerturbationMap:
    """Perturbation of a frequency lattice, general or rank-one.

    In rank-one mode the value at a multi-index n is assembled per axis as
    (a_1(n_1), ..., a_d(n_d)); only one component changes when a single
    entry of n changes.  ``sup_norm`` is the max absolute stored component.
    """

    dim: int
    mode: str
    general_table: Mapping[tuple[int, ...], np.ndarray] | None = None
    axis_tables: tuple[Mapping[int, float], ...] | None = None
    sup_norm: float = field(init=False)

    def __post_init__(self):
        if self.mode not in ("general", "rank_one"):
            raise ValueError(f"unknown perturbation mode {self.mode!r}")
        if self.mode == "general":
            if not self.general_table:
                raise ValueError("general perturbation requires a nonempty table")
            sup = max(float(np.max(np.abs(v))) for v in self.general_table.values())
        else:
            if self.axis_tables is None or len(self.axis_tables) != self.dim:
                raise ValueError("rank-one perturbation requires one table per axis")
            sup = 0.0
            for table in self.axis_tables:
                if table:
                    sup = max(sup, max(abs(float(v)) for v in table.values()))
        object.__setattr__(self, "sup_norm", sup)

    @classmethod
    def general(cls, table: Mapping, dim: int | None = None) -> "PerturbationMap":
        norm: dict[tuple[int, ...], np.ndarray] = {}
        for key, val in table.items():
            k = (int(key),) if np.isscalar(key) else tuple(int(x) for x in key)
            v = np.atleast_1d(np.asarray(val, dtype=float))
            if dim is None:
                dim = len(v)
            if len(k) != dim or len(v) != dim:
                raise ValueError(f"perturbation entry {key!r} has wrong dimension")
            norm[k] = v
        return cls(dim=dim, mode="general", general_table=norm)

    @classmethod
    def rank_one(cls, axis_tables: Sequence[Mapping[int, float]]) -> "PerturbationMap":
        tables = tuple({int(k): float(v) for k, v in t.items()} for t in axis_tables)
        return cls(dim=len(tables), mode="rank_one", axis_tables=tables)

    def value(self, index: Sequence[int]) -> np.ndarray:
        key = tuple(int(x) for x in index)
        if len(key) != self.dim:
            raise ValueError(f"index {key} has wrong dimension (expected {self.dim})")
        if self.mode == "general":
            if key not in self.general_table:
                raise KeyError(f"perturbation undefined at {key}")
            return self.general_table[key]
        return np.array([self.axis_tables[t][key[t]] for t in range(self.dim)])

    def covers(self, indices: Iterable[Sequence[int]]) -> bool:
        try:
            for idx in indices:
                self.value(idx)
        except KeyError:
            return False
        return True


def rect_lattice_points(m: Sequence[int]) -> np.ndarray:
    """Integer points of [0, M_1) x ... x [0, M_d), lexicographic order."""
    dims = [int(x) for x in m]
    if not dims or any(x < 1 for x in dims):
        raise ValueError(f"lattice sides must be positive integers, got {list(m)}")
    return np.array(list(itertools.product(*(range(x) for x in dims))), dtype=float)


def _fourier_from_arrays(freqs: np.ndarray, nodes: np.ndarray) -> ComplexDense:
    return ComplexDense(unit_entries(phase_matrix(freqs, nodes)))


def build_fourier(freqs: FrequencySet, nodes: NodeSet) -> ComplexDense:
    """F(Omega, U) with entry (j, k) = exp(2*pi*i * w_j . u_k)."""
    if freqs.dim != nodes.dim:
        raise ValueError(f"dimension mismatch: frequencies d={freqs.dim}, nodes d={nodes.dim}")
    return _fourier_from_arrays(freqs.points, nodes.points)


def build_gamma(deltas: NodeSet, p: FrequencySet) -> ComplexDense:
    """G(Delta, P) with entry (j, k) = exp(2*pi*i * delta_j . p_k).

    Rows follow Delta, columns follow P.  Equals build_fourier(P, Delta)
    transposed, entry for entry.
    """
    if not p.integer_flag:
        raise ValueError("gamma matrix requires an integer frequency set P")
    if deltas.dim != p.dim:
        raise ValueError(f"dimension mismatch: deltas d={deltas.dim}, P d={p.dim}")
    return _fourier_from_arrays(deltas.points, p.points)


def build_vandermonde(L: int, nodes: Sequence[float]) -> ComplexDense:
    """L x N matrix with entry (j, k) = exp(2*pi*i * j * x_k), j = 0..L-1.

    Duplicate nodes modulo 1 are allowed but recorded as a note on the
    result; the matrix is then rank deficient by construction.
    """
    if L < 1:
        raise ValueError(f"row count must be >= 1, got {L}")
    xs = np.mod(np.asarray(list(nodes), dtype=float), 1.0)
    if xs.ndim != 1 or xs.size < 1:
        raise ValueError("nodes must be a nonempty list of reals")
    notes: tuple[str, ...] = ()
    if len(set(xs.tolist())) != xs.size:
        notes = ("duplicate nodes modulo 1: matrix is rank deficient",)
    rows = np.arange(L, dtype=float).reshape(-1, 1)
    mat = _fourier_from_arrays(rows, xs.reshape(-1, 1))
    return ComplexDense(mat.data, notes=notes)


def build_dft(m: Sequence[int]) -> ComplexDense:
    """Unnormalized DFT matrix of size prod(M) for the product lattice."""
    lattice = rect_lattice_points(m)
    scale = np.asarray([int(x) for x in m], dtype=float)
    return _fourier_from_arrays(lattice, lattice / scale)


def build_perturbed_dft_freq(
    m: Sequence[int],
    eps: PerturbationMap,
    node_subset: NodeSet | None = None,
) -> ComplexDense:
    """F(Omega', U) where Omega' = {j + eps(j)} perturbs the DFT lattice.

    U defaults to the full node lattice {k/M}; a proper subset selects
    columns.  Perturbed frequencies may collide, in which case the result
    is rank deficient (a legitimate object of study).
    """
    dims = [int(x) for x in m]
    lattice = rect_lattice_points(dims)
    if eps.dim != len(dims):
        raise ValueError(f"perturbation dimension {eps.dim} != lattice dimension {len(dims)}")
    if not eps.covers(lattice.astype(int)):
        raise ValueError("perturbation does not cover the frequency lattice")
    shifts = np.array([eps.value(idx) for idx in lattice.astype(int)])
    freqs = lattice + shifts

    scale = np.asarray(dims, dtype=float)
    full_nodes = lattice / scale
    if node_subset is None:
        nodes = full_nodes
    else:
        if node_subset.dim != len(dims):
            raise ValueError("node subset has wrong dimension")
        for u in node_subset.points:
            gaps = np.abs(full_nodes - u[None, :])
            wrap = np.minimum(gaps, 1.0 - gaps).max(axis=1)
            if wrap.min() > 1e-12:
                raise ValueError(f"node {tuple(u)} is not on the lattice {{k/M}}")
        nodes = node_subset.points
    return _fourier_from_arrays(freqs, nodes)


def _require_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"size must be an odd integer >= 3, got {n}")


def build_instability_submatrix(n: int) -> ComplexDense:
    """Leading n x n submatrix of the (n+1) x (n+1) DFT matrix, n odd."""
    _require_odd(n)
    j = np.arange(n, dtype=float).reshape(-1, 1)
    return _fourier_from_arrays(j, j / float(n + 1))


def build_figure1(n: int) -> ComplexDense:
    """Periodically sign-perturbed DFT: entry (j,k) = exp(2*pi*i*j*(k+e(k))/n).

    For n = 2m+1 the perturbation table over k = 0..n-1 is e(0) = 0,
    e(k) = -1/4 for 1 <= k <= m and e(k) = +1/4 for m+1 <= k <= n-1 (the
    n-periodic extension of -sign(k)/4 on {-m..m}).
    """
    _require_odd(n)
    mhalf = (n - 1) // 2
    eps = np.zeros(n)
    eps[1 : mhalf + 1] = -0.25
    eps[mhalf + 1 :] = 0.25
    j = np.arange(n, dtype=float).reshape(-1, 1)
    cols = ((np.arange(n) + eps) / n).reshape(-1, 1)
    return _fourier_from_arrays(j, cols)


def select_columns(a: ComplexDense, idx: Sequence[int]) -> ComplexDense:
    """Column submatrix of ``a`` preserving the order of ``idx``."""
    cols = [int(i) for i in idx]
    if len(set(cols)) != len(cols):
        raise ValueError(f"column indices must be distinct, got {cols}")
    for i in cols:
        if not 0 <= i < a.cols:
            raise ValueError(f"column index {i} out of range [0, {a.cols})")
    return ComplexDense(a.data[:, cols], notes=a.notes)
