"""Matrix primitives: words in group elements, Haar sampling, clock and shift."""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np
import scipy.linalg

__all__ = [
    "m_product",
    "r_reverse",
    "commutator",
    "ad",
    "expm",
    "inv",
    "clock",
    "shift",
    "block_diag",
    "haar_unitary",
    "haar_so3",
    "rotation",
    "unitarity_residual",
    "norm",
]


def inv(a: np.ndarray) -> np.ndarray:
    return np.linalg.inv(a)


def norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a b a^-1 b^-1``."""
    return a @ b @ inv(a) @ inv(b)


def m_product(V: Sequence[np.ndarray], dim: int | None = None) -> np.ndarray:
    """``prod_i [a_i, b_i]`` for ``V = (a_1, b_1, ..., a_ell, b_ell)``.

    ``dim`` is needed only when ``V`` is empty.
    """
    if len(V) % 2:
        raise ValueError(f"handle tuple must have even length, got {len(V)}")
    if not V:
        if dim is None:
            raise ValueError("dimension required for an empty handle tuple")
        return np.eye(dim, dtype=complex)
    shape = V[0].shape
    for a in V:
        if a.shape != shape or a.shape[0] != a.shape[1]:
            raise ValueError(f"dimension mismatch in handle tuple: {a.shape} vs {shape}")
    if dim is not None and shape[0] != dim:
        raise ValueError(f"expected {dim}x{dim} matrices, got {shape}")
    factors = [commutator(V[2 * i], V[2 * i + 1]) for i in range(len(V) // 2)]
    return reduce(np.matmul, factors)


def r_reverse(V: Sequence[np.ndarray]) -> tuple[np.ndarray, ...]:
    """``(a_1, b_1, ..., a_ell, b_ell) -> (b_ell, a_ell, ..., b_1, a_1)``."""
    return tuple(reversed(tuple(V)))


def ad(g: np.ndarray, X: np.ndarray) -> np.ndarray:
    return g @ X @ inv(g)


def expm(X: np.ndarray) -> np.ndarray:
    return scipy.linalg.expm(X)


def clock(n: int) -> np.ndarray:
    """``diag(1, w, ..., w^{n-1})`` with ``w = exp(2 pi i / n)``."""
    return np.diag(np.exp(2j * np.pi * np.arange(n) / n))


def shift(n: int) -> np.ndarray:
    """Cyclic permutation ``e_j -> e_{j+1}``; ``[clock, shift] = w I``."""
    return np.roll(np.eye(n, dtype=complex), 1, axis=0)


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    return scipy.linalg.block_diag(*blocks).astype(complex) if blocks else np.zeros((0, 0), complex)


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def haar_so3(rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((3, 3))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def rotation(axis: Sequence[float], angle: float) -> np.ndarray:
    """Rotation by ``angle`` about ``axis`` (Rodrigues)."""
    u = np.asarray(axis, dtype=float)
    u = u / np.linalg.norm(u)
    k = np.array([[0, -u[2], u[1]], [u[2], 0, -u[0]], [-u[1], u[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * (k @ k)


def unitarity_residual(a: np.ndarray) -> float:
    return norm(a.conj().T @ a - np.eye(a.shape[0]))
