"""Numerical closure of the Lie algebra of reachable (simulable) generators.

The generator set is the coin algebra u(c) x 1 together with all its
conjugates by powers of the shift; the real span closed under commutators
characterizes which Hamiltonians the walk can reach in the continuous
limit (membership of -iH).  Closure runs plain real Gram-Schmidt over the
Hilbert-Schmidt geometry with scale-free admission.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatch,
    DomainExceeded,
    IterationCapExceeded,
    NonHermitian,
    NonNormalInput,
    NotSkewHermitian,
    TooSmall,
)
from .linalg import frob, hs_inner, is_hermitian, is_skew_hermitian, kron
from .walks import CoinedWalk, example_walk, shift_matrix, shift_order

__all__ = [
    "LieBasis",
    "u_basis",
    "su_basis",
    "generators",
    "lie_closure",
    "member_residual",
    "is_simulable",
    "conjugation_invariance_residual",
    "spectrum_multiset",
    "example_subspace_element",
]

DEFAULT_TOL = 1e-9


def u_basis(c: int):
    """c^2 skew-Hermitian matrices spanning u(c)."""
    if c < 1:
        raise TooSmall(f"u(c) needs c >= 1, got {c}")
    out = []
    for k in range(c):
        m = np.zeros((c, c), dtype=complex)
        m[k, k] = 1j
        out.append(m)
    for j in range(c):
        for k in range(j + 1, c):
            m = np.zeros((c, c), dtype=complex)
            m[j, k], m[k, j] = 1, -1
            out.append(m)
            m = np.zeros((c, c), dtype=complex)
            m[j, k], m[k, j] = 1j, 1j
            out.append(m)
    return out


def su_basis(c: int):
    """c^2 - 1 traceless skew-Hermitian matrices spanning su(c)."""
    if c < 2:
        raise TooSmall(f"su(c) needs c >= 2, got {c}")
    out = []
    for k in range(c - 1):
        m = np.zeros((c, c), dtype=complex)
        m[k, k], m[k + 1, k + 1] = 1j, -1j
        out.append(m)
    return out + u_basis(c)[c:]


def generators(w: CoinedWalk):
    """All shift conjugates S^k (u(c) x 1) S^(r-k) of the coin algebra."""
    r = shift_order(w)
    s = shift_matrix(w)
    powers = [np.eye(w.dim, dtype=complex)]
    for _ in range(r):
        powers.append(powers[-1] @ s)
    eye_n = np.eye(w.walker_dim)
    out = []
    for k in range(r):
        for b in u_basis(w.coin_dim):
            out.append(powers[k] @ kron(b, eye_n) @ powers[r - k])
    return out


@dataclass(frozen=True)
class LieBasis:
    """Orthonormal real-span basis of a bracket-closed skew-Hermitian space."""

    dim_ambient: int
    elements: tuple
    tol: float
    passes: int

    @property
    def dimension(self) -> int:
        return len(self.elements)


class _Span:
    """Growing orthonormal span over the real Hilbert-Schmidt geometry."""

    def __init__(self, n: int, tol: float):
        self.n = n
        self.tol = tol
        self.mats = []
        self._rows = np.zeros((0, 2 * n * n))

    @staticmethod
    def _vec(m: np.ndarray) -> np.ndarray:
        return np.concatenate([m.real.ravel(), m.imag.ravel()])

    def _unvec(self, v: np.ndarray) -> np.ndarray:
        n = self.n
        return v[:n * n].reshape(n, n) + 1j * v[n * n:].reshape(n, n)

    def try_admit(self, cand: np.ndarray) -> bool:
        """Project out the span; admit the normalized remainder if it survives."""
        norm = frob(cand)
        if norm <= self.tol:
            return False
        v = self._vec(cand / norm)
        for _ in range(2):  # re-orthogonalize for stability
            v -= self._rows.T @ (self._rows @ v)
        rnorm = float(np.linalg.norm(v))
        if rnorm <= self.tol:
            return False
        v /= rnorm
        self.mats.append(self._unvec(v))
        self._rows = np.vstack([self._rows, v])
        return True


def lie_closure(gens, tol: float = DEFAULT_TOL) -> LieBasis:
    """Smallest bracket-closed real span containing the generators.

    Orthonormalizes the generators, then repeatedly brackets basis pairs,
    admitting any component outside the current span until a full pass
    admits nothing.  Admission is scale-free: candidates are normalized
    before projection and kept when the remainder exceeds tol.
    """
    gens = [np.asarray(g, dtype=complex) for g in gens]
    if not gens:
        raise TooSmall("need at least one generator")
    n = gens[0].shape[0]
    if not (1e-12 <= tol <= 1e-6):
        raise DomainExceeded(f"closure tolerance {tol} outside [1e-12, 1e-6]")
    for g in gens:
        if g.shape != (n, n):
            raise DimMismatch("generators must share one square shape")
        if not is_skew_hermitian(g):
            raise NotSkewHermitian("closure generators must be skew-Hermitian")

    span = _Span(n, tol)
    for g in gens:
        span.try_admit(g)

    cap = n * n + 10
    passes = 0
    start = 0  # elements before this index have been bracketed pairwise already
    while True:
        passes += 1
        if passes > cap:
            raise IterationCapExceeded(
                f"closure did not stabilize within {cap} passes")
        size = len(span.mats)
        admitted = False
        for i in range(size):
            j0 = max(i + 1, start)
            for j in range(j0, size):
                a, b = span.mats[i], span.mats[j]
                if span.try_admit(a @ b - b @ a):
                    admitted = True
        start = size
        if not admitted:
            break
    return LieBasis(n, tuple(m.copy() for m in span.mats), tol, passes)


def member_residual(basis: LieBasis, x) -> float:
    """Relative Frobenius distance of x from the basis span (0 for x = 0)."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (basis.dim_ambient, basis.dim_ambient):
        raise DimMismatch(
            f"element is {x.shape}, basis ambient dimension is {basis.dim_ambient}")
    if not is_skew_hermitian(x):
        raise NotSkewHermitian("membership is defined for skew-Hermitian elements")
    norm = frob(x)
    if norm == 0:
        return 0.0
    r = x.copy()
    for b in basis.elements:
        r -= hs_inner(b, r) * b
    return frob(r) / norm


def is_simulable(basis: LieBasis, h, tol: float) -> bool:
    """True iff -i*h lies in the closure within tol (h Hermitian)."""
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise NonHermitian("simulability is defined for Hermitian matrices")
    return member_residual(basis, -1j * h) <= tol


def conjugation_invariance_residual(basis: LieBasis, w: CoinedWalk) -> float:
    """Worst distance of S b S^-1 from the span, over basis elements b."""
    s = shift_matrix(w)
    if s.shape[0] != basis.dim_ambient:
        raise DimMismatch("walk dimension does not match the basis")
    return max(member_residual(basis, s @ b @ s.conj().T) for b in basis.elements)


def spectrum_multiset(h, digits: int = 8):
    """Eigenvalues clustered by rounding, as (value, multiplicity) pairs.

    Accepts Hermitian input directly and skew-Hermitian input via i*h;
    returned values are sorted descending and refer to the Hermitian
    counterpart in the skew case.
    """
    h = np.asarray(h, dtype=complex)
    if is_hermitian(h):
        vals = np.linalg.eigvalsh((h + h.conj().T) / 2)
    elif is_skew_hermitian(h):
        m = 1j * h
        vals = np.linalg.eigvalsh((m + m.conj().T) / 2)
    else:
        raise NonNormalInput("spectrum needs a Hermitian or skew-Hermitian matrix")
    counts = Counter(round(float(v), digits) + 0.0 for v in vals)
    return sorted(counts.items(), key=lambda kv: -kv[0])


def example_subspace_element() -> np.ndarray:
    """A closure element of the K4 walk with spectrum {+-3i, +-i x3, 0 x4}.

    The three matchings S1, S2, S3 share the walker eigenbasis of sign
    patterns over (1,1,1,1), (1,-1,1,-1), (1,1,-1,-1), (1,-1,-1,1); the
    element acts as diag(3i,-3i,0) on the symmetric vector and as
    diag(i,-i,0) on the other three.  Expanding the four spectral
    projectors over {1, S1, S2, S3} gives coin blocks A in u(3) and
    B, C, D in su(3), so the result lies in the closure span by
    construction.
    """
    w = example_walk()
    eye4 = np.eye(4)
    s_blocks = [shift_matrix(w)[4 * k:4 * (k + 1), 4 * k:4 * (k + 1)] for k in range(3)]
    signs = np.array([
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
    ])
    blocks = [np.diag([3j, -3j, 0]), np.diag([1j, -1j, 0]),
              np.diag([1j, -1j, 0]), np.diag([1j, -1j, 0])]
    coin_a = sum(blocks) / 4
    out = kron(coin_a, eye4)
    for i in range(3):
        coin_i = sum(signs[i, k] * blocks[k] for k in range(4)) / 4
        out += kron(coin_i, s_blocks[i])
    return out
