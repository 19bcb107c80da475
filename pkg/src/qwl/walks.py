"""Coined discrete-time quantum walks, their edge-space form, and propagators.

Basis ordering on the coin x walker space is coin-major throughout:
state (c_k, j) sits at index k*N + j.  Every dense matrix in the package
relies on this convention; it is what makes the coin operation literally
``kron(C, eye(N))``.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import graphs
from .errors import (
    BadSpec,
    DomainExceeded,
    NotAnEdge,
    NotBijective,
    NotLaplacian,
    NotRegular,
    NotUnitary,
    QwlError,
    TooSmall,
    Unstable,
)
from .linalg import as_cmatrix, expm_hermitian, frob, is_unitary, kron

__all__ = [
    "CoinedWalk",
    "EdgeWalk",
    "circulant_shift",
    "cycle_walk",
    "lattice_walk",
    "graph_coined_walk",
    "example_walk",
    "shift_matrix",
    "shift_order",
    "step_operator",
    "coined_to_edge_walk",
    "intertwining_residual",
    "ctqw_propagator",
    "ctrw_propagator",
    "dtrw_step",
    "walk_from_json",
    "walk_to_json",
]


def circulant_shift(n: int) -> np.ndarray:
    """Cyclic forward shift F with F e_k = e_{k+1 mod n}."""
    if n < 2:
        raise TooSmall(f"circulant shift needs n >= 2, got {n}")
    f = np.zeros((n, n))
    f[(np.arange(n) + 1) % n, np.arange(n)] = 1
    return f.astype(complex)


@dataclass(frozen=True)
class CoinedWalk:
    """Coined walk data: per-coin-result vertex moves plus the shift permutation.

    moves[k, j] is the vertex reached from j on coin result k; shift is the
    permutation of {0..cN-1} sending index k*N+j to k*N+moves[k, j].
    """

    coin_dim: int
    walker_dim: int
    moves: np.ndarray
    graph: graphs.Graph
    shift: np.ndarray = field(init=False)

    def __post_init__(self):
        perm = np.empty(self.coin_dim * self.walker_dim, dtype=int)
        for k in range(self.coin_dim):
            perm[k * self.walker_dim:(k + 1) * self.walker_dim] = \
                k * self.walker_dim + self.moves[k]
        object.__setattr__(self, "moves", self.moves.copy())
        self.moves.setflags(write=False)
        perm.setflags(write=False)
        object.__setattr__(self, "shift", perm)

    @property
    def dim(self) -> int:
        return self.coin_dim * self.walker_dim


def graph_coined_walk(g: graphs.Graph, moves) -> CoinedWalk:
    """Validate a move table against a regular graph and build the walk.

    Requires g regular of degree m, one move row per coin result, each row
    a bijection on vertices, and every move following an edge of g.
    """
    m = graphs.regular_degree(g)
    if m is None:
        raise NotRegular("coined walks need a regular graph")
    moves = np.asarray(moves, dtype=int)
    if moves.shape != (m, g.n):
        raise BadSpec(f"moves table must be {m}x{g.n} for this graph, got {moves.shape}")
    edge_set = g.edges
    for k in range(m):
        row = moves[k]
        if len(set(row.tolist())) != g.n:
            raise NotBijective(k)
        for j in range(g.n):
            t = int(row[j])
            if (min(j, t), max(j, t)) not in edge_set or j == t:
                raise NotAnEdge(j, k)
    return CoinedWalk(m, g.n, moves, g)


def cycle_walk(n: int) -> CoinedWalk:
    """Two-coin walk on the n-cycle: coin 0 steps forward, coin 1 backward.

    The dense shift equals diag(F, F^T) under coin-major ordering.
    """
    if n < 3:
        raise TooSmall(f"cycle walk needs n >= 3, got {n}")
    j = np.arange(n)
    moves = np.stack([(j + 1) % n, (j - 1) % n])
    return graph_coined_walk(graphs.cycle_graph(n), moves)


def lattice_walk(n: int, d: int) -> CoinedWalk:
    """Coined walk on the d-fold product of n-cycles.

    Coin results come in forward/backward pairs per coordinate: coin 2l
    increments coordinate l (0-based), coin 2l+1 decrements it.  Vertices
    are indexed row-major with coordinate 0 most significant.
    """
    if n < 3:
        raise TooSmall(f"lattice walk needs n >= 3, got {n}")
    if d < 1:
        raise TooSmall(f"lattice walk needs d >= 1, got {d}")
    g = graphs.cycle_graph(n)
    for _ in range(d - 1):
        g = graphs.cartesian_product(g, graphs.cycle_graph(n))
    nverts = n ** d
    v = np.arange(nverts)
    moves = np.zeros((2 * d, nverts), dtype=int)
    for l in range(d):
        stride = n ** (d - 1 - l)
        coord = (v // stride) % n
        moves[2 * l] = v + ((coord + 1) % n - coord) * stride
        moves[2 * l + 1] = v + ((coord - 1) % n - coord) * stride
    return graph_coined_walk(g, moves)


def example_walk() -> CoinedWalk:
    """Three-coin walk on the complete graph K4 whose shift has order 2.

    Coin results pair up the four vertices (0..3) as three perfect
    matchings: coin 0 swaps 0<->2 and 1<->3, coin 1 swaps 0<->1 and 2<->3,
    coin 2 swaps 0<->3 and 1<->2.
    """
    g = graphs.graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    moves = np.array([
        [2, 3, 0, 1],
        [1, 0, 3, 2],
        [3, 2, 1, 0],
    ])
    return graph_coined_walk(g, moves)


def shift_matrix(w: CoinedWalk) -> np.ndarray:
    """Dense permutation matrix of the controlled shift."""
    dim = w.dim
    s = np.zeros((dim, dim))
    s[w.shift, np.arange(dim)] = 1
    return s.astype(complex)


def shift_order(w: CoinedWalk) -> int:
    """Least r >= 1 with S^r = 1, via lcm of permutation cycle lengths."""
    perm = w.shift
    seen = np.zeros(len(perm), dtype=bool)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        p = start
        while not seen[p]:
            seen[p] = True
            p = perm[p]
            length += 1
        order = math.lcm(order, length)
    return order


def step_operator(w: CoinedWalk, coin) -> np.ndarray:
    """One walk step S (C x 1) for a unitary coin C."""
    coin = as_cmatrix(coin)
    if coin.shape != (w.coin_dim, w.coin_dim):
        raise NotUnitary(f"coin must be {w.coin_dim}x{w.coin_dim}, got {coin.shape}")
    if not is_unitary(coin):
        raise NotUnitary("coin operation is not unitary within 1e-10")
    return shift_matrix(w) @ kron(coin, np.eye(w.walker_dim))


@dataclass(frozen=True)
class EdgeWalk:
    """Edge-space form of a coined walk.

    edge_basis lists ordered pairs (present, future); w_matrix moves the
    future vertex into the present slot, coin_blocks applies the per-vertex
    coin, and chi is the permutation identifying coin x walker states with
    edge states.
    """

    edge_basis: tuple
    w_matrix: np.ndarray
    coin_blocks: np.ndarray
    chi: np.ndarray


def coined_to_edge_walk(w: CoinedWalk, coin) -> EdgeWalk:
    """Express a coined walk step on the edge space spanned by (j, n_j(c_k)).

    The edge basis is ordered as the image of the coin-major basis under
    chi: position k*N+j holds the pair (j, moves[k, j]).  W, the coin
    blocks and chi are each built from their own defining rule, so the
    intertwining identity chi S (C x 1) = W C~ chi is a genuine
    consistency check of the three constructions.
    """
    coin = as_cmatrix(coin)
    if coin.shape != (w.coin_dim, w.coin_dim) or not is_unitary(coin):
        raise NotUnitary("coin operation is not unitary within 1e-10")
    c, n = w.coin_dim, w.walker_dim
    dim = c * n
    pairs = [(j, int(w.moves[k, j])) for k in range(c) for j in range(n)]
    index = {}
    for p, pair in enumerate(pairs):
        if pair in index:
            raise QwlError(
                f"two coin results move vertex {pair[0]} to vertex {pair[1]}; "
                "the edge-space form needs distinct targets per vertex")
        index[pair] = p

    chi = np.zeros((dim, dim))
    for k in range(c):
        for j in range(n):
            chi[index[(j, int(w.moves[k, j]))], k * n + j] = 1

    wmat = np.zeros((dim, dim))
    for p, (j, f) in enumerate(pairs):
        k = p // n
        wmat[index[(f, int(w.moves[k, f]))], p] = 1

    blocks = np.zeros((dim, dim), dtype=complex)
    for j in range(n):
        for k in range(c):
            src = index[(j, int(w.moves[k, j]))]
            for l in range(c):
                blocks[index[(j, int(w.moves[l, j]))], src] += coin[l, k]

    return EdgeWalk(tuple(pairs), wmat.astype(complex), blocks, chi.astype(complex))


def intertwining_residual(w: CoinedWalk, coin) -> float:
    """Frobenius residual of chi S (C x 1) - W C~ chi; zero in exact arithmetic."""
    ew = coined_to_edge_walk(w, coin)
    lhs = ew.chi @ step_operator(w, coin)
    rhs = ew.w_matrix @ ew.coin_blocks @ ew.chi
    return frob(lhs - rhs)


def ctqw_propagator(h, gamma: float, t: float) -> np.ndarray:
    """Continuous-time quantum walk propagator exp(-i*gamma*H*t)."""
    return expm_hermitian(h, gamma * t)


def ctrw_propagator(l, gamma: float, t: float) -> np.ndarray:
    """Classical continuous-time random walk propagator exp(gamma*L*t).

    L must be a graph Laplacian: symmetric with zero column sums.  The
    result is column-stochastic with nonnegative entries up to roundoff.
    """
    l = as_cmatrix(l)
    if l.shape[0] != l.shape[1]:
        raise NotLaplacian("Laplacian must be square")
    if frob(l - l.T) > 1e-10 or frob(l.imag) > 1e-12:
        raise NotLaplacian("Laplacian must be real symmetric")
    if np.max(np.abs(l.sum(axis=0))) > 1e-10:
        raise NotLaplacian("Laplacian columns must sum to zero")
    if t < 0:
        raise DomainExceeded(f"ctrw time must be nonnegative, got {t}")
    w, v = np.linalg.eigh(l)
    return ((v * np.exp(gamma * t * w)) @ v.conj().T).real.astype(complex)


def dtrw_step(p, l, gamma: float, dt: float) -> np.ndarray:
    """One explicit-Euler step p + gamma*dt*L p of the classical walk.

    Requires 0 <= gamma*dt*max_degree <= 1 so probabilities stay in [0,1].
    """
    l = as_cmatrix(l)
    p = np.asarray(p, dtype=float)
    max_degree = float(np.max(-l.real.diagonal())) if l.shape[0] else 0.0
    if dt < 0 or gamma * dt * max_degree > 1:
        raise Unstable(
            f"gamma*dt*max_degree = {gamma * dt * max_degree:.3g} outside [0, 1]")
    return p + gamma * dt * (l.real @ p)


def walk_from_json(obj) -> CoinedWalk:
    """Parse {"graph": <graph JSON>, "coin_dim": c, "moves": [[...], ...]}."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        g = graphs.graph_from_json(obj["graph"])
        c = int(obj["coin_dim"])
        moves = np.asarray(obj["moves"], dtype=int)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, BadSpec):
            raise
        raise BadSpec(f"walk JSON needs 'graph', 'coin_dim', 'moves': {exc}") from exc
    if moves.ndim != 2 or moves.shape[0] != c:
        raise BadSpec(f"moves must have {c} rows, got shape {moves.shape}")
    return graph_coined_walk(g, moves)


def walk_to_json(w: CoinedWalk) -> dict:
    return {
        "graph": graphs.graph_to_json(w.graph),
        "coin_dim": w.coin_dim,
        "moves": w.moves.tolist(),
    }
