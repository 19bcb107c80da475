"""Dense complex linear algebra for operators on coin/walker spaces.

All operators are plain ``numpy`` arrays of dtype complex128.  Matrix
exponentials are computed through the Hermitian eigendecomposition only;
every generator in this package is (skew-)Hermitian, so this is exact up
to eigensolver accuracy and no Pade machinery is needed.
"""

import numpy as np

from .errors import DimMismatch, NonHermitian

__all__ = [
    "as_cmatrix",
    "is_hermitian",
    "is_skew_hermitian",
    "is_unitary",
    "is_permutation",
    "kron",
    "hermitian_eig",
    "expm_hermitian",
    "expm_skew",
    "hs_inner",
    "commutator",
    "frob",
]

HERMITIAN_TOL = 1e-10


def as_cmatrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimMismatch(f"expected a 2-D matrix, got ndim={m.ndim}")
    return m


def frob(a) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    """True iff ||A - A^dag||_F <= tol."""
    a = as_cmatrix(a)
    return a.shape[0] == a.shape[1] and frob(a - a.conj().T) <= tol


def is_skew_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    """True iff ||A + A^dag||_F <= tol."""
    a = as_cmatrix(a)
    return a.shape[0] == a.shape[1] and frob(a + a.conj().T) <= tol


def is_unitary(a, tol: float = HERMITIAN_TOL) -> bool:
    """True iff ||A^dag A - 1||_F <= tol."""
    a = as_cmatrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    return frob(a.conj().T @ a - np.eye(a.shape[0])) <= tol


def is_permutation(a, tol: float = HERMITIAN_TOL) -> bool:
    """True iff A is within tol (Frobenius) of an exact permutation matrix."""
    a = as_cmatrix(a)
    if a.shape[0] != a.shape[1]:
        return False
    p = np.rint(a.real)
    ones = np.ones(a.shape[0])
    if not (np.all((p == 0) | (p == 1)) and np.all(p.sum(0) == ones) and np.all(p.sum(1) == ones)):
        return False
    return frob(a - p) <= tol


def kron(a, b) -> np.ndarray:
    """Kronecker product of two dense matrices."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def _check_hermitian(h: np.ndarray, tol: float) -> np.ndarray:
    h = as_cmatrix(h)
    if h.shape[0] != h.shape[1]:
        raise NonHermitian(f"matrix is {h.shape[0]}x{h.shape[1]}, not square")
    res = frob(h - h.conj().T)
    if res > tol:
        raise NonHermitian(f"Hermiticity residual {res:.3e} exceeds {tol:.1e}")
    # symmetrize to suppress roundoff drift before eigensolving
    return (h + h.conj().T) / 2


def hermitian_eig(h, tol: float = HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvectors as columns of a unitary).
    Degenerate eigenvector choice is solver-dependent; compare invariant
    subspaces or eigenvalue multisets, never individual columns.
    """
    h = _check_hermitian(h, tol)
    w, v = np.linalg.eigh(h)
    return w, v


def expm_hermitian(h, s: float, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """exp(-i*s*H) for Hermitian H, via eigendecomposition."""
    w, v = hermitian_eig(h, tol)
    if s == 0:
        return np.eye(len(w), dtype=complex)
    phases = np.exp(-1j * s * w)
    return (v * phases) @ v.conj().T


def expm_skew(k, s: float = 1.0, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """exp(s*K) for skew-Hermitian K (iK is Hermitian, so this stays exact)."""
    return expm_hermitian(1j * as_cmatrix(k), s, tol)


def hs_inner(a, b) -> float:
    """Real Hilbert-Schmidt inner product Re tr(A^dag B)."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape != b.shape:
        raise DimMismatch(f"shapes {a.shape} and {b.shape} differ")
    return float(np.sum(a.conj() * b).real)


def commutator(a, b) -> np.ndarray:
    """AB - BA."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimMismatch(f"commutator needs equal square matrices, got {a.shape} and {b.shape}")
    return a @ b - b @ a
