"""Dense symmetric eigendecomposition via cyclic Jacobi sweeps, plus the
spectral quantities of signed complete graphs: index (largest eigenvalue),
least eigenvalue, spectral radius, and the top eigenvector with a fixed
sign convention.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .errors import ConvergenceError, InvariantViolationError
from .graphs import SignedCompleteGraph

# Relative off-diagonal tolerance and sweep cap of the solver.
JACOBI_REL_TOL = 1e-12
MAX_SWEEPS = 100

# λ1 - λ2 at or below this flags a numerically multiple top eigenvalue.
DEGENERATE_TOL = 1e-9

# |sum of entries| at or below this is treated as a sign-convention tie.
_SUM_TIE_TOL = 1e-12


@dataclass(frozen=True)
class SymMatrix:
    """A real symmetric n x n matrix.  Entries are copied and frozen."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.float64)
        if a.shape != (self.n, self.n):
            raise InvariantViolationError(
                f"expected a {self.n}x{self.n} matrix, got shape {a.shape}"
            )
        if not np.array_equal(a, a.T):
            raise InvariantViolationError("matrix is not symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, optional aligned eigenvector columns,
    and the off-diagonal norm the solver achieved."""

    values: np.ndarray
    vectors: np.ndarray | None
    tol: float

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def lambda1(self) -> float:
        return float(self.values[0])

    @property
    def lambdan(self) -> float:
        return float(self.values[-1])

    @property
    def radius(self) -> float:
        return max(self.lambda1, -self.lambdan)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "values": [float(v) for v in self.values],
            "lambda1": self.lambda1,
            "lambdan": self.lambdan,
            "radius": self.radius,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


@dataclass(frozen=True)
class TopEigenvector:
    """Unit eigenvector for λ1 with the package sign convention, the
    eigenvalue itself, and a flag for numerically multiple λ1."""

    vector: np.ndarray
    value: float
    gap: float
    degenerate: bool


@njit(cache=True)
def _off_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += a[i, j] * a[i, j]
    return math.sqrt(acc)


@njit(cache=True)
def _jacobi_sweeps(a, v, tol, max_sweeps):
    """Run cyclic Jacobi sweeps in place on a, accumulating rotations in v.

    Returns (achieved off-diagonal Frobenius norm, sweeps used).
    """
    n = a.shape[0]
    off = _off_norm(a)
    sweeps = 0
    while off > tol and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e154:
                    # asymptotic branch: avoids overflow in theta * theta
                    t = 1.0 / (2.0 * theta)
                elif theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                a[p, p] = a[p, p] - t * apq
                a[q, q] = a[q, q] + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[p, k] = a[k, p]
                        a[k, q] = s * akp + c * akq
                        a[q, k] = a[k, q]
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
        sweeps += 1
        off = _off_norm(a)
    return off, sweeps


def eigen_decompose(
    m: SymMatrix, want_vectors: bool = True, *, max_sweeps: int = MAX_SWEEPS
) -> Spectrum:
    """Full spectrum of a symmetric matrix, sorted descending.

    Sweeps run until the off-diagonal Frobenius norm is at most
    JACOBI_REL_TOL times the Frobenius norm of the input, up to max_sweeps.
    Deterministic: identical input gives identical output.
    """
    a = m.entries.copy()
    if not np.array_equal(a, a.T):
        raise InvariantViolationError("matrix is not symmetric")
    tol = JACOBI_REL_TOL * m.frobenius()
    v = np.eye(m.n)
    off, _ = _jacobi_sweeps(a, v, tol, max_sweeps)
    if off > tol:
        raise ConvergenceError(
            f"Jacobi sweeps did not converge: off-norm {off:.3e} > tol {tol:.3e}",
            off_norm=float(off),
        )
    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    values = vals[order]
    values.setflags(write=False)
    vectors = None
    if want_vectors:
        vectors = v[:, order].copy()
        vectors.setflags(write=False)
    return Spectrum(values=values, vectors=vectors, tol=float(off))


def adjacency_matrix(g: SignedCompleteGraph) -> SymMatrix:
    """A(Σ): zero diagonal, -1 on negative edges, +1 elsewhere."""
    a = np.ones((g.n, g.n)) - np.eye(g.n)
    for u, v in g.negative_edges:
        a[u, v] = -1.0
        a[v, u] = -1.0
    return SymMatrix(g.n, a)


def spectrum_of(g: SignedCompleteGraph, want_vectors: bool = False) -> Spectrum:
    return eigen_decompose(adjacency_matrix(g), want_vectors=want_vectors)


def index(g: SignedCompleteGraph) -> float:
    """λ1, the largest adjacency eigenvalue."""
    return spectrum_of(g).lambda1


def least_eigenvalue(g: SignedCompleteGraph) -> float:
    return spectrum_of(g).lambdan


def spectral_radius(g: SignedCompleteGraph) -> float:
    return spectrum_of(g).radius


def residual(m: SymMatrix, value: float, vector: np.ndarray) -> float:
    """2-norm of A x - value x."""
    return float(np.linalg.norm(m.entries @ vector - value * vector))


def top_eigenvector(g: SignedCompleteGraph) -> TopEigenvector:
    """Unit λ1-eigenvector, sign-normalized: entry sum >= 0, with a
    near-zero sum resolved by making the largest-magnitude entry positive.

    When λ1 - λ2 <= DEGENERATE_TOL the returned vector is still a valid
    eigenvector but the degenerate flag is set; callers that rely on a
    specific eigenvector should check it.
    """
    spec = eigen_decompose(adjacency_matrix(g), want_vectors=True)
    x = spec.vectors[:, 0].copy()
    total = float(x.sum())
    if total < -_SUM_TIE_TOL:
        x = -x
    elif abs(total) <= _SUM_TIE_TOL:
        if x[int(np.argmax(np.abs(x)))] < 0:
            x = -x
    x.setflags(write=False)
    gap = float(spec.values[0] - spec.values[1])
    return TopEigenvector(
        vector=x,
        value=spec.lambda1,
        gap=gap,
        degenerate=gap <= DEGENERATE_TOL,
    )
