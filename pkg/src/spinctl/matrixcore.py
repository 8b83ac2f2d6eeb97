"""Dense complex matrix primitives for small (2x2 to 4x4) operator algebra.

Everything operates on plain numpy arrays of dtype complex128. Matrices are
treated as immutable values; no function mutates its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MatrixPredicates",
    "anticommutator",
    "as_operator",
    "bracket",
    "commutator",
    "dagger",
    "expm_unitary",
    "kron",
    "predicates",
    "trace_inner",
]

#: Absolute tolerance on max|H - H^dag| accepted by expm_unitary.
HERMITIAN_TOL = 1e-10
#: Absolute entrywise tolerance for detecting H^2 = E^2 * I.
INVOLUTORY_TOL = 1e-10


def as_operator(a) -> np.ndarray:
    """Coerce ``a`` to a square complex128 matrix with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product A (x) B; block (i, j) equals A[i, j] * B."""
    return np.kron(as_operator(a), as_operator(b))


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[A, B] = AB - BA."""
    a, b = as_operator(a), as_operator(b)
    _check_same_dim(a, b)
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """{A, B} = AB + BA."""
    a, b = as_operator(a), as_operator(b)
    _check_same_dim(a, b)
    return a @ b + b @ a


def bracket(a: np.ndarray, b: np.ndarray, mode: str = "commutator") -> np.ndarray:
    """Commutator or anticommutator of two equal-dimension matrices."""
    if mode == "commutator":
        return commutator(a, b)
    if mode == "anticommutator":
        return anticommutator(a, b)
    raise ValueError(f"unknown bracket mode {mode!r}")


def trace_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Trace inner product Tr(A^dag B)."""
    a, b = as_operator(a), as_operator(b)
    _check_same_dim(a, b)
    return complex(np.trace(dagger(a) @ b))


def expm_unitary(h: np.ndarray, tau: float, herm_tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Unitary exponential exp(-i H tau) of a Hermitian matrix.

    When H is involutory up to a scale, i.e. H^2 = E^2 * I, the exact form

        cos(E tau) * I - i sin(E tau) * H / E

    is used; otherwise the exponential is taken through the Hermitian
    eigendecomposition. Raises ValueError if H is not Hermitian within
    ``herm_tol``.
    """
    h = as_operator(h)
    dev = np.max(np.abs(h - dagger(h)))
    if dev > herm_tol:
        raise ValueError(f"matrix is not Hermitian: max|H - H^dag| = {dev:.3e}")
    d = h.shape[0]
    eye = np.eye(d, dtype=complex)

    h2 = h @ h
    e2 = np.trace(h2).real / d
    if np.max(np.abs(h2 - e2 * eye)) <= INVOLUTORY_TOL:
        if e2 <= INVOLUTORY_TOL:
            # H^2 = 0 and H Hermitian force H = 0.
            return eye.copy()
        e = np.sqrt(e2)
        return np.cos(e * tau) * eye - 1j * np.sin(e * tau) * (h / e)

    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * tau)) @ dagger(v)


@dataclass(frozen=True)
class MatrixPredicates:
    """Hermiticity/unitarity/tracelessness report for one matrix."""

    hermitian: bool
    unitary: bool
    traceless: bool
    hermitian_dev: float
    unitary_dev: float
    trace_dev: float

    @property
    def max_deviation(self) -> float:
        return max(self.hermitian_dev, self.unitary_dev, self.trace_dev)


def predicates(a: np.ndarray, tol: float = 1e-12) -> MatrixPredicates:
    """Evaluate structural predicates of ``a`` against an absolute tolerance."""
    a = as_operator(a)
    eye = np.eye(a.shape[0], dtype=complex)
    herm = float(np.max(np.abs(a - dagger(a))))
    unit = float(np.max(np.abs(a @ dagger(a) - eye)))
    tr = float(abs(np.trace(a)))
    return MatrixPredicates(
        hermitian=herm <= tol,
        unitary=unit <= tol,
        traceless=tr <= tol,
        hermitian_dev=herm,
        unitary_dev=unit,
        trace_dev=tr,
    )
