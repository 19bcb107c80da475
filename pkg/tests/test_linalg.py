"""Dense linear algebra primitives: exactness and contract checks."""

import numpy as np
import pytest

from qwl import graphs
from qwl.errors import DimMismatch, NonHermitian
from qwl.linalg import (
    commutator,
    expm_hermitian,
    frob,
    hermitian_eig,
    hs_inner,
    is_hermitian,
    is_permutation,
    is_skew_hermitian,
    is_unitary,
    kron,
)
from qwl.walks import circulant_shift


def random_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_skew(rng, n):
    m = random_matrix(rng, n)
    return (m - m.conj().T) / 2


def test_predicates():
    f = circulant_shift(4)
    assert is_permutation(f)
    assert is_unitary(f)
    assert not is_hermitian(f)
    assert is_hermitian(f + f.T)
    assert is_skew_hermitian(1j * (f + f.T))
    assert not is_permutation(0.5 * f)


def test_kron_identities():
    assert np.array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))
    f3 = circulant_shift(3)
    e = np.zeros(9)
    e[1 * 3 + 2] = 1  # e_1 (x) e_2
    out = kron(f3, np.eye(3)) @ e
    expected = np.zeros(9)
    expected[2 * 3 + 2] = 1  # e_2 (x) e_2
    assert np.array_equal(out, expected.astype(complex))


def test_kron_matches_product_graph_adjacency():
    g3 = graphs.cycle_graph(3)
    a3 = graphs.adjacency(g3)
    lhs = kron(a3, np.eye(3)) + kron(np.eye(3), a3)
    rhs = graphs.adjacency(graphs.cartesian_product(g3, g3))
    assert np.array_equal(lhs, rhs)


def test_kron_mixed_product_property():
    rng = np.random.default_rng(7)
    for _ in range(5):
        a, b, c, d = (random_matrix(rng, 3) for _ in range(4))
        res = frob(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d))
        scale = frob(a) * frob(b) * frob(c) * frob(d)
        assert res <= 1e-12 * scale


def test_expm_zero_time_is_identity():
    rng = np.random.default_rng(0)
    h = random_matrix(rng, 5)
    h = h + h.conj().T
    assert frob(expm_hermitian(h, 0.0) - np.eye(5)) <= 1e-12


def test_expm_diagonal_phases():
    out = expm_hermitian(np.diag([1.0, -1.0]).astype(complex), np.pi)
    assert frob(out - np.diag([-1.0, -1.0])) <= 1e-12


def test_expm_cycle4_eigenphases():
    a = graphs.adjacency(graphs.cycle_graph(4))
    u = expm_hermitian(a, 1.0)
    # circulant spectrum 2*cos(2*pi*k/4) = {2, 0, -2, 0}
    expected = np.exp(-1j * np.array([2.0, 0.0, -2.0, 0.0]))
    got = np.linalg.eigvals(u)
    assert np.allclose(sorted(got, key=np.angle), sorted(expected, key=np.angle), atol=1e-10)


def test_expm_rejects_non_hermitian():
    with pytest.raises(NonHermitian):
        expm_hermitian(circulant_shift(3), 1.0)


def test_expm_group_property_and_unitarity():
    rng = np.random.default_rng(1)
    h = random_matrix(rng, 6)
    h = h + h.conj().T
    for s, t in [(0.3, 0.9), (1.5, -2.0), (0.0, 4.0)]:
        lhs = expm_hermitian(h, s) @ expm_hermitian(h, t)
        assert frob(lhs - expm_hermitian(h, s + t)) <= 1e-9 * 6
    for s in (2.0, 100.0 / frob(h)):  # up to ||s*h||_F = 100
        u = expm_hermitian(h, s)
        assert frob(u.conj().T @ u - np.eye(6)) <= 1e-10 * 6


def test_hermitian_eig_diagonal():
    w, _ = hermitian_eig(np.diag([2.0, 1.0, 0.0]).astype(complex))
    assert np.allclose(w, [0.0, 1.0, 2.0])


def test_hermitian_eig_complete_graph():
    g = graphs.graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    w, _ = hermitian_eig(graphs.adjacency(g))
    assert np.allclose(w, [-1.0, -1.0, -1.0, 3.0], atol=1e-10)


def test_hermitian_eig_cycle8_spectrum():
    a = graphs.adjacency(graphs.cycle_graph(8))
    w, v = hermitian_eig(a)
    expected = sorted(2 * np.cos(2 * np.pi * k / 8) for k in range(8))
    assert np.allclose(w, expected, atol=1e-10)
    # reconstruction and unitarity
    assert frob((v * w) @ v.conj().T - a) <= 1e-9 * frob(a)
    assert frob(v.conj().T @ v - np.eye(8)) <= 1e-10


def test_hs_inner_values():
    assert hs_inner(np.eye(2), np.eye(2)) == pytest.approx(2.0)
    assert hs_inner(np.diag([1j, -1j]), np.diag([1j, 1j])) == pytest.approx(0.0)
    with pytest.raises(DimMismatch):
        hs_inner(np.eye(2), np.eye(3))


def test_hs_inner_positive_on_generators():
    from qwl.liealg import generators
    from qwl.walks import example_walk

    for g in generators(example_walk()):
        assert hs_inner(g, g) == pytest.approx(frob(g) ** 2)
        assert hs_inner(g, g) > 0


def test_commutator_basics():
    rng = np.random.default_rng(2)
    x = random_skew(rng, 4)
    assert frob(commutator(x, x)) == 0.0
    a = np.diag([1j, -1j])
    b = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
    c = commutator(a, b)
    assert is_skew_hermitian(c)
    assert frob(c.real) <= 1e-15  # lands on the i*(symmetric) pattern
    with pytest.raises(DimMismatch):
        commutator(np.eye(2), np.eye(3))


def test_commutator_jacobi_identity():
    rng = np.random.default_rng(3)
    for _ in range(5):
        a, b, c = (random_skew(rng, 4) for _ in range(3))
        res = commutator(commutator(a, b), c) \
            + commutator(commutator(b, c), a) \
            + commutator(commutator(c, a), b)
        assert frob(res) <= 1e-12 * frob(a) * frob(b) * frob(c)
