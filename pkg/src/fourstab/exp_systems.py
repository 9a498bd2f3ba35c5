"""Exponential systems on unions of unit cubes and their classification.

A system is specified by torus offsets Delta = {delta_j} and distinct
integer vectors P = {p_k}; the union of the integer-translated families
{exp(2 pi i (n + delta_j).x)} lives on T(P) = union of cubes Q + p_k.
Its type (Riesz basis / frame / Riesz sequence / degenerate) and optimal
constants are read off the associated matrix G(Delta, P): the constants
are the squared extreme singular values, the type follows from the rank
and the aspect ratio.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core_matrix import (
    ComplexDense,
    FrequencySet,
    NodeSet,
    PerturbationMap,
    build_gamma,
    rect_lattice_points,
    unit_entries,
)
from .spectral import default_rank_tol

__all__ = [
    "ExponentialSystemSpec",
    "SystemClassification",
    "ConditionCheck",
    "ClumpDecomposition",
    "KIND_RIESZ_BASIS",
    "KIND_FRAME",
    "KIND_RIESZ_SEQUENCE",
    "KIND_DEGENERATE",
    "wrap_distance",
    "separation",
    "make_rect_lattice",
    "classify_system",
    "special_delta_condition",
    "tensor_kadec_condition",
    "gram_matrix",
    "clump_decompose",
]

KIND_RIESZ_BASIS = "RieszBasis"
KIND_FRAME = "Frame"
KIND_RIESZ_SEQUENCE = "RieszSequence"
KIND_DEGENERATE = "Degenerate"

INTEGRALITY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ExponentialSystemSpec:
    """Offsets Delta (cardinality L) and integer vectors P (cardinality N)."""

    deltas: NodeSet
    p: FrequencySet

    def __post_init__(self):
        if not isinstance(self.deltas, NodeSet):
            object.__setattr__(self, "deltas", NodeSet(self.deltas))
        if not isinstance(self.p, FrequencySet):
            object.__setattr__(self, "p", FrequencySet(self.p))
        if not self.p.integer_flag:
            raise ValueError("P must consist of integer vectors")
        if self.deltas.dim != self.p.dim:
            raise ValueError(
                f"dimension mismatch: deltas d={self.deltas.dim}, P d={self.p.dim}"
            )

    @property
    def dim(self) -> int:
        return self.deltas.dim

    @property
    def num_deltas(self) -> int:
        return self.deltas.count

    @property
    def num_p(self) -> int:
        return self.p.count


@dataclass(frozen=True)
class SystemClassification:
    kind: str
    lower_constant: float
    upper_constant: float
    rank: int
    tol: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "lower_constant": self.lower_constant,
            "upper_constant": self.upper_constant,
            "rank": self.rank,
            "tol": self.tol,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class ConditionCheck:
    """Boolean predicate result with the violating witness, if any."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class ClumpDecomposition:
    parts: tuple[tuple[float, ...], ...]
    r: int
    lambda_max: int
    beta: float
    alpha: float
    hypotheses_ok: bool
    reasons: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "parts": [list(p) for p in self.parts],
            "r": self.r,
            "lambda_max": self.lambda_max,
            "beta": self.beta,
            "alpha": self.alpha,
            "hypotheses_ok": self.hypotheses_ok,
            "reasons": list(self.reasons),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def wrap_distance(t: float, s: float) -> float:
    """Distance on the circle: min over integers n of |t - s - n|."""
    r = (t - s) % 1.0
    return min(r, 1.0 - r)


def separation(u: Sequence[float]) -> float:
    """Minimum pairwise wrap distance of a node list."""
    xs = list(u)
    if len(xs) < 2:
        raise ValueError("separation needs at least two nodes")
    return min(
        wrap_distance(xs[i], xs[j]) for i in range(len(xs)) for j in range(i + 1, len(xs))
    )


def make_rect_lattice(m: Sequence[int]) -> FrequencySet:
    """Integer lattice of the rectangle [0,M_1) x ... x [0,M_d)."""
    return FrequencySet(rect_lattice_points(m))


def classify_system(spec: ExponentialSystemSpec, tol: float | None = None) -> SystemClassification:
    """Classify the system via the rank and extremes of G(Delta, P)."""
    gamma = build_gamma(spec.deltas, spec.p)
    if tol is None:
        tol = default_rank_tol(gamma.rows, gamma.cols)
    s = np.linalg.svd(gamma.data, compute_uv=False)
    rank = int(np.count_nonzero(s > tol * s[0])) if s[0] > 0 else 0
    L, N = spec.num_deltas, spec.num_p
    full = rank == min(L, N)
    if not full:
        kind = KIND_DEGENERATE
    elif L == N:
        kind = KIND_RIESZ_BASIS
    elif L > N:
        kind = KIND_FRAME
    else:
        kind = KIND_RIESZ_SEQUENCE
    return SystemClassification(
        kind=kind,
        lower_constant=float(s[-1] ** 2),
        upper_constant=float(s[0] ** 2),
        rank=rank,
        tol=tol,
    )


def _near_integer(x: float) -> bool:
    return abs(x - round(x)) <= INTEGRALITY_TOL


def special_delta_condition(delta: Sequence[float], p: FrequencySet) -> ConditionCheck:
    """True iff <p_k - p_k', delta> is never an integer for k != k'.

    On failure the witness is the offending pair of points of P.
    """
    d = np.atleast_1d(np.asarray(delta, dtype=float))
    if not p.integer_flag:
        raise ValueError("P must consist of integer vectors")
    if d.size != p.dim:
        raise ValueError(f"delta has dimension {d.size}, P has dimension {p.dim}")
    pts = p.points
    for k in range(p.count):
        for k2 in range(k + 1, p.count):
            val = float(np.dot(pts[k] - pts[k2], d))
            if _near_integer(val):
                return ConditionCheck(False, witness=(tuple(pts[k]), tuple(pts[k2])))
    return ConditionCheck(True)


def tensor_kadec_condition(m: Sequence[int], eps: PerturbationMap) -> ConditionCheck:
    """Per-axis invertibility test for rank-one lattice perturbations.

    True iff for every axis k and every i != j in 0..M_k-1 the quantity
    (j - i + eps_k(j) - eps_k(i)) / M_k is not an integer.  The witness on
    failure is (axis, i, j) with the axis 1-based.
    """
    dims = [int(x) for x in m]
    if eps.mode != "rank_one":
        raise ValueError("condition applies to rank-one perturbations only")
    if eps.dim != len(dims):
        raise ValueError(f"perturbation dimension {eps.dim} != lattice dimension {len(dims)}")
    for axis, mk in enumerate(dims):
        table = eps.axis_tables[axis]
        for i in range(mk):
            if i not in table:
                raise ValueError(f"axis {axis + 1} perturbation undefined at index {i}")
        for i in range(mk):
            for j in range(mk):
                if i == j:
                    continue
                val = (j - i + table[j] - table[i]) / mk
                if _near_integer(val):
                    return ConditionCheck(False, witness=(axis + 1, i, j))
    return ConditionCheck(True)


def gram_matrix(spec: ExponentialSystemSpec) -> ComplexDense:
    """N x N matrix with entry (k, k') = sum_j exp(2 pi i delta_j.(p_k' - p_k)).

    Summed termwise from the definition rather than formed as a matrix
    product, so it cross-checks the associated-matrix route independently.
    """
    deltas = spec.deltas.points
    pts = spec.p.points
    diffs = pts[None, :, :] - pts[:, None, :]
    phases = np.tensordot(deltas, diffs, axes=([1], [2]))
    return ComplexDense(np.sum(unit_entries(phases), axis=0))


def _part_diameter(part: Sequence[float]) -> float:
    if len(part) < 2:
        return 0.0
    return max(
        wrap_distance(part[i], part[j])
        for i in range(len(part))
        for j in range(i + 1, len(part))
    )


def clump_decompose(u: Sequence[float], L: int, lambda_cap: int) -> ClumpDecomposition:
    """Greedy circular gap-splitting into clumps, plus hypothesis checks.

    Nodes are sorted on the circle and cut at every gap >= 3*lambda_cap/L,
    starting the circular walk after the largest gap.  The result records
    the part structure, the inter-part distance beta, the overall
    separation alpha, and whether the localization hypotheses hold
    (|part| <= lambda, beta >= 3*lambda/L, max diameter < beta).
    """
    if L < 1:
        raise ValueError(f"row count must be >= 1, got {L}")
    if lambda_cap < 1:
        raise ValueError(f"cluster size cap must be >= 1, got {lambda_cap}")
    xs = np.sort(np.mod(np.asarray(list(u), dtype=float), 1.0))
    n = xs.size
    if n < 1:
        raise ValueError("need at least one node")
    if len(set(xs.tolist())) != n:
        raise ValueError("nodes must be distinct modulo 1")

    threshold = 3.0 * lambda_cap / L
    if n == 1:
        parts: list[list[float]] = [[float(xs[0])]]
    else:
        gaps = np.mod(np.roll(xs, -1) - xs, 1.0)  # gap after xs[i], wrapping
        start = (int(np.argmax(gaps)) + 1) % n
        parts = [[]]
        for step in range(n):
            i = (start + step) % n
            parts[-1].append(float(xs[i]))
            if gaps[i] >= threshold and step < n - 1:
                parts.append([])
        if gaps.max() < threshold:
            parts = [[float(x) for x in xs]]

    part_tuples = tuple(tuple(p) for p in parts)
    r = len(part_tuples)
    lambda_max = max(len(p) for p in part_tuples)
    if r >= 2:
        beta = min(
            wrap_distance(a, b)
            for i in range(r)
            for j in range(i + 1, r)
            for a in part_tuples[i]
            for b in part_tuples[j]
        )
    else:
        beta = math.inf
    alpha = separation(xs.tolist()) if n >= 2 else math.inf
    max_diam = max(_part_diameter(p) for p in part_tuples)

    reasons: list[str] = []
    if lambda_max > lambda_cap:
        reasons.append(f"a part has {lambda_max} nodes, exceeding the cap {lambda_cap}")
    if r >= 2 and beta < threshold:
        reasons.append(f"inter-part distance {beta:.6g} below 3*lambda/L = {threshold:.6g}")
    if r >= 2 and max_diam >= beta:
        reasons.append(f"part diameter {max_diam:.6g} not below inter-part distance {beta:.6g}")
    return ClumpDecomposition(
        parts=part_tuples,
        r=r,
        lambda_max=lambda_max,
        beta=beta,
        alpha=alpha,
        hypotheses_ok=not reasons,
        reasons=tuple(reasons),
    )
