"""Shared state constructors and brute-force oracles for the test suite."""

from __future__ import annotations

import numpy as np


def bell_phi_plus() -> np.ndarray:
    """|Phi+><Phi+| = (|00> + |11>)(<00| + <11|)/2."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1.0 / np.sqrt(2.0)
    return np.outer(psi, psi.conj())


def pure_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_density_matrix(rng, dim: int = 4) -> np.ndarray:
    """Full-rank random state from a complex Ginibre matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_x_state(rng) -> np.ndarray:
    """Random PSD X-shaped state with complex off-diagonal phases."""
    p = rng.dirichlet(np.ones(4))
    r14 = rng.uniform(0.0, np.sqrt(p[0] * p[3])) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    r23 = rng.uniform(0.0, np.sqrt(p[1] * p[2])) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    rho = np.diag(p).astype(complex)
    rho[0, 3] = r14
    rho[3, 0] = r14.conjugate()
    rho[1, 2] = r23
    rho[2, 1] = r23.conjugate()
    return rho


def random_unitary_2(rng) -> np.ndarray:
    """Haar-random single-qubit unitary."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    phases = np.diag(r)
    return q * (phases / np.abs(phases))


def random_hermitian(rng, dim: int = 4, scale: float = 2.0) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (a + a.conj().T)


def partial_trace_bruteforce(rho: np.ndarray, keep: str) -> np.ndarray:
    """Elementwise index-sum definition of the partial trace."""
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                if keep == "first":
                    out[i, j] += rho[2 * i + k, 2 * j + k]
                else:
                    out[i, j] += rho[2 * k + i, 2 * k + j]
    return out


def entropy_bits(probabilities) -> float:
    """Shannon entropy of a probability vector, in bits."""
    p = np.asarray(probabilities, dtype=float)
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())
