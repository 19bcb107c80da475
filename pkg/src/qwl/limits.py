"""Perturbed-step protocols and their continuous-time limits.

A protocol perturbs a reference trajectory of a coined walk (a coin
sequence whose step product is a phase times the identity).  To first
order in the perturbation x the product agrees with exp(-i*H*x) for an
effective Hamiltonian H, and repeating the product gamma*t/x times while
x -> 0 converges to exp(-i*gamma*H*t).  Composites realize sums (by
concatenation) and commutators (by group commutators evaluated at
sqrt(x)) of effective Hamiltonians.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatch,
    DomainExceeded,
    NotScalarAtZero,
    NotSkewHermitian,
    NotUnitary,
    TooSmall,
)
from .linalg import expm_hermitian, expm_skew, frob, is_skew_hermitian, is_unitary, kron
from .walks import CoinedWalk, circulant_shift, cycle_walk, shift_matrix

__all__ = [
    "ProtocolStep",
    "Atom",
    "Concat",
    "Commutator",
    "ConvergenceReport",
    "strauch_coin",
    "strauch_protocol",
    "evencyc_protocol",
    "limit_hamiltonian_cycle",
    "protocol_unitary",
    "reference_phase",
    "effective_hamiltonian",
    "single_step_error",
    "repeated_limit",
    "convergence_study",
    "single_step_study",
    "chiral_split",
    "chiral_combinations",
    "phi_transform",
]

# Perturbations live in [0, X_MAX); repeated limits shrink x = gamma*t/m
# into this range by raising m.
X_MAX = 1.0

R_COIN = np.array([[0, -1j], [-1j, 0]])
D_COIN = np.array([[0, -1], [-1, 0]], dtype=complex)


@dataclass(frozen=True)
class ProtocolStep:
    """One step S (C exp(E*a*x) x 1): a fixed coin plus a linear perturbation."""

    coin: np.ndarray
    generator: np.ndarray
    slope: float = 1.0

    def __post_init__(self):
        coin = np.asarray(self.coin, dtype=complex)
        gen = np.asarray(self.generator, dtype=complex)
        if not is_unitary(coin):
            raise NotUnitary("step coin is not unitary within 1e-10")
        if gen.shape != coin.shape:
            raise DimMismatch("generator and coin dimensions differ")
        if not is_skew_hermitian(gen):
            raise NotSkewHermitian("step generator is not skew-Hermitian within 1e-10")
        object.__setattr__(self, "coin", coin)
        object.__setattr__(self, "generator", gen)


class Atom:
    """An ordered step sequence around a reference trajectory of one walk.

    The unperturbed product of the steps must be phi * identity for a
    unit-modulus phi, validated at construction.  Step 1 of the sequence
    is the leftmost factor of the product, so the last step acts first on
    state vectors.
    """

    def __init__(self, walk: CoinedWalk, steps):
        steps = tuple(steps)
        if not steps:
            raise TooSmall("an atom needs at least one step")
        for st in steps:
            if st.coin.shape != (walk.coin_dim, walk.coin_dim):
                raise DimMismatch(
                    f"step coin is {st.coin.shape}, walk coin space is {walk.coin_dim}")
        self.walk = walk
        self.steps = steps
        s = shift_matrix(walk)
        eye_n = np.eye(walk.walker_dim)
        self._factors = [s @ kron(st.coin, eye_n) for st in steps]
        t0 = self._reference_product()
        phi = t0[0, 0]
        dim = walk.dim
        if abs(abs(phi) - 1) > 1e-10 or frob(t0 - phi * np.eye(dim)) > 1e-10:
            raise NotScalarAtZero(
                "reference trajectory is not a scalar multiple of the identity")
        self.phase = complex(phi)

    def _reference_product(self) -> np.ndarray:
        t0 = np.eye(self.walk.dim, dtype=complex)
        for f in self._factors:
            t0 = t0 @ f
        return t0

    def unitary(self, x: float) -> np.ndarray:
        eye_n = np.eye(self.walk.walker_dim)
        s = shift_matrix(self.walk)
        u = np.eye(self.walk.dim, dtype=complex)
        for st in self.steps:
            u = u @ s @ kron(st.coin @ expm_skew(st.generator, st.slope * x), eye_n)
        return u

    def hamiltonian(self) -> np.ndarray:
        # d/dx at 0 of the step product: one term per step, with that
        # step's exponential replaced by its generator.
        eye_n = np.eye(self.walk.walker_dim)
        m = len(self.steps)
        prefix = np.eye(self.walk.dim, dtype=complex)
        deriv = np.zeros((self.walk.dim, self.walk.dim), dtype=complex)
        suffixes = [np.eye(self.walk.dim, dtype=complex)]
        for f in reversed(self._factors[1:]):
            suffixes.append(f @ suffixes[-1])
        suffixes.reverse()
        for j in range(m):
            st = self.steps[j]
            term = prefix @ self._factors[j] @ kron(st.slope * st.generator, eye_n) @ suffixes[j]
            deriv += term
            prefix = prefix @ self._factors[j]
        return 1j / self.phase * deriv


class Concat:
    """Left-to-right product of two protocols; effective Hamiltonians add."""

    def __init__(self, left, right):
        _check_same_walk(left, right)
        self.left = left
        self.right = right
        self.phase = reference_phase(left) * reference_phase(right)


class Commutator:
    """Group commutator U1 U2 U1^-1 U2^-1 with children evaluated at sqrt(x).

    Realizes the Lie bracket: the effective Hamiltonian is -i[H1, H2].
    """

    def __init__(self, left, right):
        _check_same_walk(left, right)
        self.left = left
        self.right = right
        self.phase = 1.0 + 0j


def _walk_of(p) -> CoinedWalk:
    if isinstance(p, Atom):
        return p.walk
    return _walk_of(p.left)


def _check_same_walk(left, right):
    wl, wr = _walk_of(left), _walk_of(right)
    if wl.coin_dim != wr.coin_dim or wl.walker_dim != wr.walker_dim \
            or not np.array_equal(wl.shift, wr.shift):
        raise DimMismatch("all atoms of a protocol must share the same walk")


def strauch_coin(x: float) -> np.ndarray:
    """The 2x2 coin R exp(i*D*x) driving the cycle limit."""
    return R_COIN @ expm_hermitian(D_COIN, -x)


def strauch_protocol(n: int) -> Atom:
    """Two perturbed steps on the n-cycle; reference product is -identity."""
    if n < 3:
        raise TooSmall(f"cycle protocols need n >= 3, got {n}")
    step = ProtocolStep(coin=R_COIN, generator=1j * D_COIN, slope=1.0)
    return Atom(cycle_walk(n), [step, step])


def evencyc_protocol(n: int) -> Atom:
    """n steps with identity coins on the n-cycle, perturbing steps 1 and n.

    The reference trajectory is the full shift orbit S^n = 1; the limit
    Hamiltonian coincides with the two-step protocol's.
    """
    if n < 3:
        raise TooSmall(f"cycle protocols need n >= 3, got {n}")
    eye2 = np.eye(2, dtype=complex)
    zero = np.zeros((2, 2), dtype=complex)
    e_gen = np.array([[0, -1j], [-1j, 0]])
    perturbed = ProtocolStep(coin=eye2, generator=e_gen, slope=1.0)
    idle = ProtocolStep(coin=eye2, generator=zero, slope=1.0)
    steps = [perturbed] + [idle] * (n - 2) + [perturbed]
    return Atom(cycle_walk(n), steps)


def limit_hamiltonian_cycle(n: int) -> np.ndarray:
    """The 2n x 2n limit Hamiltonian with off-diagonal blocks 1+F^2."""
    if n < 3:
        raise TooSmall(f"cycle Hamiltonian needs n >= 3, got {n}")
    f2 = np.linalg.matrix_power(circulant_shift(n), 2)
    h = np.zeros((2 * n, 2 * n), dtype=complex)
    h[:n, n:] = np.eye(n) + f2
    h[n:, :n] = np.eye(n) + f2.T
    return h


def protocol_unitary(p, x: float) -> np.ndarray:
    """Evaluate the protocol's product at perturbation x."""
    if not 0 <= x < X_MAX:
        raise DomainExceeded(f"perturbation x={x} outside [0, {X_MAX})")
    if isinstance(p, Atom):
        return p.unitary(x)
    if isinstance(p, Concat):
        return protocol_unitary(p.left, x) @ protocol_unitary(p.right, x)
    if isinstance(p, Commutator):
        u1 = protocol_unitary(p.left, np.sqrt(x))
        u2 = protocol_unitary(p.right, np.sqrt(x))
        return u1 @ u2 @ u1.conj().T @ u2.conj().T
    raise TypeError(f"not a protocol expression: {type(p).__name__}")


def reference_phase(p) -> complex:
    """The unit scalar phi with protocol_unitary(p, 0) = phi * identity."""
    return p.phase


def effective_hamiltonian(p) -> np.ndarray:
    """The Hermitian H with phi^-1 T(x) = exp(-i*H*x) + O(x^(1+delta))."""
    if isinstance(p, Atom):
        return p.hamiltonian()
    if isinstance(p, Concat):
        return effective_hamiltonian(p.left) + effective_hamiltonian(p.right)
    if isinstance(p, Commutator):
        h1 = effective_hamiltonian(p.left)
        h2 = effective_hamiltonian(p.right)
        return -1j * (h1 @ h2 - h2 @ h1)
    raise TypeError(f"not a protocol expression: {type(p).__name__}")


def single_step_error(p, x: float) -> float:
    """|| phi^-1 T(x) - exp(-i*H*x) ||_F for one evaluation of the protocol."""
    u = protocol_unitary(p, x) / reference_phase(p)
    target = expm_hermitian(effective_hamiltonian(p), x)
    return frob(u - target)


def repeated_limit(p, gamma: float, t: float, m: int):
    """Apply the de-phased protocol m times at x = gamma*t/m.

    Returns (the m-fold product, its Frobenius distance to
    exp(-i*gamma*H*t)).  The error decays like 1/m.
    """
    if m < 1:
        raise TooSmall(f"repetition count must be >= 1, got {m}")
    x = gamma * t / m
    if x >= X_MAX:
        raise DomainExceeded(
            f"gamma*t/m = {x} >= {X_MAX}; raise m to shrink the perturbation")
    u = protocol_unitary(p, x) / reference_phase(p)
    result = np.linalg.matrix_power(u, m)
    target = expm_hermitian(effective_hamiltonian(p), gamma * t)
    return result, frob(result - target)


@dataclass(frozen=True)
class ConvergenceReport:
    """Sampled errors against the perturbation size plus a log-log slope fit.

    fitted_exponent is the least-squares slope of log(error) vs log(x),
    fitted over the smallest half of the x grid to dodge pre-asymptotic
    contamination.
    """

    samples: tuple
    fitted_exponent: float


def _fit_exponent(samples) -> float:
    tail = samples[len(samples) // 2:]
    if len(tail) < 2 or any(x <= 0 for x, _ in tail):
        return float("nan")
    xs = np.array([x for x, _ in tail])
    errs = np.array([max(e, 1e-300) for _, e in tail])
    slope = np.polyfit(np.log(xs), np.log(errs), 1)[0]
    return float(slope)


def convergence_study(p, gamma: float, t: float, m_list) -> ConvergenceReport:
    """Repeated-limit errors over an ascending grid of repetition counts."""
    m_list = [int(m) for m in m_list]
    if not m_list or any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise DomainExceeded("m_list must be nonempty and strictly ascending")
    samples = []
    for m in m_list:
        _, err = repeated_limit(p, gamma, t, m)
        samples.append((gamma * t / m, err))
    return ConvergenceReport(tuple(samples), _fit_exponent(samples))


def single_step_study(p, x_list) -> ConvergenceReport:
    """Single-evaluation errors over a descending grid of perturbations."""
    xs = [float(x) for x in x_list]
    if not xs or any(b >= a for a, b in zip(xs, xs[1:])):
        raise DomainExceeded("x grid must be nonempty and strictly decreasing")
    samples = [(x, single_step_error(p, x)) for x in xs]
    return ConvergenceReport(tuple(samples), _fit_exponent(samples))


def chiral_split(psi, n: int):
    """Split a 2n-component state into its upper and lower halves."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2 * n,):
        raise DimMismatch(f"state must have dimension {2 * n}, got {psi.shape}")
    return psi[:n].copy(), psi[n:].copy()


def chiral_combinations(psi_r, psi_l, n: int):
    """The four combinations of the chiral halves that evolve under +-A.

    Returns (psi_R + F psi_L, psi_L + F^T psi_R, psi_R - F psi_L,
    psi_L - F^T psi_R); under the cycle limit Hamiltonian the first two
    evolve as exp(-i*gamma*A*t), the last two as exp(+i*gamma*A*t).
    """
    psi_r = np.asarray(psi_r, dtype=complex)
    psi_l = np.asarray(psi_l, dtype=complex)
    if psi_r.shape != (n,) or psi_l.shape != (n,):
        raise DimMismatch("both halves must have dimension n")
    f = circulant_shift(n)
    return (psi_r + f @ psi_l, psi_l + f.T @ psi_r,
            psi_r - f @ psi_l, psi_l - f.T @ psi_r)


def phi_transform(psi_pm, gamma: float, t: float, sign: int) -> np.ndarray:
    """Rescale a chiral combination so it evolves under the Laplacian.

    Returns exp(sign*2i*gamma*t)/2 times the input; sign matches the +-
    label of the combination.
    """
    if sign not in (1, -1):
        raise DomainExceeded(f"sign must be +1 or -1, got {sign}")
    return np.exp(sign * 2j * gamma * t) / 2 * np.asarray(psi_pm, dtype=complex)
