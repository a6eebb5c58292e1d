"""Dense linear algebra foundation with an explicit tolerance policy.

Matrices are plain numpy arrays: real matrices are float64, complex ones
complex128, both 2-d. Every function here is pure; arguments are never
mutated. Eigen decomposition of real input goes through the real LAPACK
path so complex eigenvalues arrive in exactly conjugate pairs, which the
real-Jordan machinery downstream relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MatFrobError",
    "DimensionMismatchError",
    "SingularMatrixError",
    "SolverConvergenceError",
    "PreconditionError",
    "Tolerance",
    "DEFAULT_TOL",
    "as_real_matrix",
    "as_complex_matrix",
    "require_square",
    "norm_inf",
    "max_abs",
    "mat_mul",
    "mat_inverse",
    "condition_estimate",
    "eigen_decompose",
]


class MatFrobError(Exception):
    """Base class for every error this package raises on purpose."""


class DimensionMismatchError(MatFrobError):
    """Operand shapes are incompatible with the requested operation."""


class SingularMatrixError(MatFrobError):
    """Matrix is singular to working tolerance."""


class SolverConvergenceError(MatFrobError):
    """An iterative kernel failed to converge."""


class PreconditionError(MatFrobError):
    """A documented caller-side precondition does not hold."""


@dataclass(frozen=True)
class Tolerance:
    """Combined absolute/relative comparison tolerance.

    Scalars a, b are tolerance-equal iff
    ``|a - b| <= abs_eps + rel_eps * max(|a|, |b|)``.
    The predicate is symmetric in its arguments by construction.
    """

    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self) -> None:
        if self.abs_eps < 0.0 or self.rel_eps < 0.0:
            raise ValueError("tolerance components must be nonnegative")

    def eq(self, a: complex, b: complex) -> bool:
        """Tolerance-equality of two scalars (real or complex)."""
        a = complex(a)
        b = complex(b)
        return abs(a - b) <= self.abs_eps + self.rel_eps * max(abs(a), abs(b))

    def eq_matrix(self, a, b) -> bool:
        """Entrywise tolerance-equality; False on shape mismatch."""
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            return False
        bound = self.abs_eps + self.rel_eps * np.maximum(np.abs(a), np.abs(b))
        return bool(np.all(np.abs(a - b) <= bound))


DEFAULT_TOL = Tolerance()


def as_real_matrix(a) -> np.ndarray:
    """Validate and return `a` as a 2-d float64 array.

    Complex input is accepted only when its imaginary part is exactly zero.
    """
    m = np.asarray(a)
    if np.iscomplexobj(m):
        if np.any(m.imag != 0.0):
            raise ValueError("expected a real matrix, got nonzero imaginary entries")
        m = m.real
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def as_complex_matrix(a) -> np.ndarray:
    """Validate and return `a` as a 2-d complex128 array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")


def norm_inf(a) -> float:
    """Induced infinity norm (max absolute row sum); max abs for vectors."""
    m = np.asarray(a)
    if m.size == 0:
        return 0.0
    if m.ndim == 1:
        return float(np.max(np.abs(m)))
    return float(np.max(np.sum(np.abs(m), axis=1)))


def max_abs(a) -> float:
    """Largest entry magnitude."""
    m = np.asarray(a)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m)))


def mat_mul(a, b) -> np.ndarray:
    """Matrix product with an explicit shape check."""
    ma = np.asarray(a)
    mb = np.asarray(b)
    if ma.ndim != 2 or mb.ndim != 2:
        raise DimensionMismatchError("mat_mul expects 2-d operands")
    if ma.shape[1] != mb.shape[0]:
        raise DimensionMismatchError(
            f"inner dimensions do not match: {ma.shape} @ {mb.shape}"
        )
    return ma @ mb


def condition_estimate(a) -> float:
    """2-norm condition number from singular values; inf when singular."""
    m = np.asarray(a, dtype=complex)
    require_square(m)
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] == 0.0:
        return float("inf")
    return float(s[0] / s[-1])


def mat_inverse(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Inverse of a square matrix; singular input raises.

    Singularity is decided by the smallest singular value against
    ``tol.abs_eps``, so "numerically singular" rather than exactly so.
    """
    m = np.asarray(a)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d matrix, got shape {m.shape}")
    require_square(m)
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= tol.abs_eps:
        raise SingularMatrixError(
            f"matrix is singular to tolerance (smallest singular value {s[-1]:.3e})"
        )
    try:
        return np.linalg.inv(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise SingularMatrixError(str(exc)) from exc


def _pair_conjugates(w: np.ndarray) -> np.ndarray:
    """Enforce exact conjugate symmetry on the spectrum of a real matrix.

    The real LAPACK path already emits exact pairs, so this ordinarily
    only snaps stray imaginary dust; the greedy pair-and-average pass is a
    safety net against asymmetry of rounding order.
    """
    w = np.array(w, dtype=complex)
    if w.size == 0:
        return w
    scale = max(float(np.max(np.abs(w))), 1.0)
    snap = 1e-12 * scale
    im = w.imag.copy()
    im[np.abs(im) <= snap] = 0.0
    w = w.real + 1j * im
    pos = [i for i in range(len(w)) if w[i].imag > 0.0]
    neg = [i for i in range(len(w)) if w[i].imag < 0.0]
    used: set[int] = set()
    for i in pos:
        best_j, best_d = -1, np.inf
        for j in neg:
            if j in used:
                continue
            d = abs(w[i] - np.conj(w[j]))
            if d < best_d:
                best_j, best_d = j, d
        if best_j >= 0 and best_d <= 1e-8 * scale:
            avg = 0.5 * (w[i] + np.conj(w[best_j]))
            w[i] = avg
            w[best_j] = np.conj(avg)
            used.add(best_j)
    return w


def eigen_decompose(a, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and right eigenvectors of a square matrix.

    Returns ``(w, v)`` with ``a @ v[:, k] ~= w[k] * v[:, k]``. Real input is
    decomposed through the real path, so its spectrum is closed under
    conjugation exactly (pairing enforced, tiny imaginary parts snapped).
    Eigenvector columns have unit 2-norm.
    """
    m = as_complex_matrix(a)
    require_square(m)
    if m.shape[0] == 0:
        raise DimensionMismatchError("cannot decompose an empty matrix")
    try:
        if np.all(m.imag == 0.0):
            w, v = np.linalg.eig(m.real)
            w = _pair_conjugates(np.asarray(w, dtype=complex))
        else:
            w, v = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise SolverConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    return np.asarray(w, dtype=complex), np.asarray(v, dtype=complex)
