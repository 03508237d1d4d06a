"""Explicit points in each Yang-Mills stratum.

Orientable points put a clock/shift pair in one handle of every block, which
makes ``m(V)`` the required central scalar. Nonorientable points are assembled
block by block: each positive block ``nu_j`` contributes a symmetric point over
``U(n_j)``, built with :func:`phi_section`, and the zero block contributes a
flat point over ``U(n_0)`` whose ``c`` (or ``d``) fixes the bundle sign.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..hn_types import HNType, SymmetricClass, SymmetricTypeClass, x_mu
from ..poincare import EmptyStratumError
from .linalg import block_diag, clock, haar_unitary, norm, shift
from .maps import phi_section, sample_orbit
from .points import DEFAULT_TOL, GroupTuplePoint, Kind, ResidualReport

__all__ = [
    "UnsupportedCase",
    "central_handle",
    "orientable_point",
    "witness_point",
    "e_mu",
    "block_layout",
    "bundle_sign",
    "det_reduction_check",
]


class UnsupportedCase(ValueError):
    """The requested variety is not covered by the construction."""


def central_handle(n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """``(a, b)`` in ``U(n)`` with ``[a, b] = exp(-2 pi i k / n) I``."""
    # [clock, shift^p] = w^p I, so p = -k mod n
    return clock(n), np.linalg.matrix_power(shift(n), (-k) % n)


def _commuting_pair(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    h = haar_unitary(n, rng)
    phases = np.exp(2j * np.pi * rng.random((2, n)))
    h_inv = h.conj().T
    return h @ np.diag(phases[0]) @ h_inv, h @ np.diag(phases[1]) @ h_inv


def _trivial_handles(n: int, count: int, rng: np.random.Generator | None) -> list[np.ndarray]:
    """``2 * count`` matrices whose commutator product is the identity."""
    if rng is None:
        return [np.eye(n, dtype=complex)] * (2 * count)
    out: list[np.ndarray] = []
    left = count
    while left:
        if left >= 2 and rng.random() < 0.7:
            a, b = haar_unitary(n, rng), haar_unitary(n, rng)
            out.extend([a, b, b, a])
            left -= 2
        else:
            out.extend(_commuting_pair(n, rng))
            left -= 1
    return out


def _block_handles(
    n: int, k: int, genus: int, rng: np.random.Generator | None
) -> list[np.ndarray]:
    """Handles over ``U(n)`` with commutator product ``exp(-2 pi i k / n) I``."""
    if k % n == 0:
        return _trivial_handles(n, genus, rng)
    if genus == 0:
        raise UnsupportedCase(f"no genus-0 point has central holonomy for block ({n},{k})")
    a, b = central_handle(n, k)
    if rng is None:
        return [a, b] + _trivial_handles(n, genus - 1, None)
    h = haar_unitary(n, rng)
    h_inv = h.conj().T
    pos = int(rng.integers(genus))
    rest = _trivial_handles(n, genus - 1, rng)
    # a block scalar commutes with every other factor, so any slot works
    return rest[: 2 * pos] + [h @ a @ h_inv, h @ b @ h_inv] + rest[2 * pos :]


def orientable_point(
    mu: HNType, genus: int, rng: np.random.Generator | None = None
) -> GroupTuplePoint:
    """A YM_0 point over ``U(n)`` of type ``mu`` with ``X = X_mu``.

    Without ``rng`` the point is canonical: block-diagonal, with the central
    handle first and identities elsewhere. With ``rng`` the trivial handles are
    random and the whole point is conjugated by a Haar-random element.
    """
    per_block = [_block_handles(nj, kj, genus, rng) for nj, kj in mu.blocks]
    V = tuple(block_diag(*(hs[h] for hs in per_block)) for h in range(2 * genus))
    point = GroupTuplePoint(f"U({mu.n})", Kind.YM_0, V, X=np.diag(x_mu(mu)))
    return point if rng is None else sample_orbit(point, rng)


def block_layout(cls: SymmetricTypeClass) -> list[int]:
    sizes = [nj for nj, _ in cls.nu.blocks]
    return sizes + ([cls.n0] if cls.n0 else []) + sizes[::-1]


def e_mu(cls: SymmetricTypeClass) -> np.ndarray:
    """Block anti-diagonal involution reversing the block order."""
    sizes = block_layout(cls)
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    out = np.zeros((cls.n, cls.n), dtype=complex)
    last = len(sizes) - 1
    for p, size in enumerate(sizes):
        q = last - p
        out[offsets[q] : offsets[q] + size, offsets[p] : offsets[p] + size] = np.eye(size)
    return out


def _as_class(cls: SymmetricTypeClass | HNType, i: int) -> SymmetricTypeClass:
    if isinstance(cls, HNType):
        return SymmetricTypeClass.from_type(cls, i)
    if cls.cross != i:
        return SymmetricTypeClass(cls.nu, cls.n0, i)
    return cls


def _resolve_sign(cls: SymmetricTypeClass, sign: int | None) -> int:
    if sign is None:
        return cls.signs[0]
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if sign not in cls.signs:
        raise EmptyStratumError(
            f"{cls.classification.name} type {cls.mu} has no stratum on the {sign:+d} bundle"
        )
    return sign


def _middle_block(
    n0: int, ell: int, i: int, det_target: int, rng: np.random.Generator | None
) -> tuple[list[np.ndarray], np.ndarray, np.ndarray | None]:
    """Flat ``U(n0)`` data ``(V, C, D)`` with ``det C`` (i=1) or ``det D`` (i=2) as requested."""
    handles = _trivial_handles(n0, ell, rng)
    flip = np.eye(n0, dtype=complex)
    flip[0, 0] = det_target
    if rng is None:
        h = np.eye(n0, dtype=complex)
        other = np.eye(n0, dtype=complex)
    else:
        h = haar_unitary(n0, rng)
        # anything commuting with the flip
        tail = haar_unitary(n0 - 1, rng) if n0 > 1 else np.zeros((0, 0), complex)
        other = block_diag(np.array([[np.exp(2j * np.pi * rng.random())]]), tail)
    h_inv = h.conj().T
    if i == 1:
        # m(V) = I = C^2
        return handles, h @ flip @ h_inv, None
    # m(V) = I = C D C^-1 D = D^2 when C commutes with D
    return handles, h @ other @ h_inv, h @ flip @ h_inv


def witness_point(
    cls: SymmetricTypeClass | HNType,
    ell: int,
    i: int,
    sign: int | None = None,
    rng: np.random.Generator | int | None = None,
) -> GroupTuplePoint:
    """A point in the stratum of type ``cls`` over ``Sigma^ell_i``.

    For ``i = 0`` this is :func:`orientable_point` with genus ``ell``. For
    ``i = 1, 2`` the result is a YM_i point with ``X = X_mu / 2`` whose bundle
    sign is ``sign`` (forced for paired types, ``+1`` by default otherwise).
    Pass ``rng`` to randomize the free parameters.
    """
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(rng)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if i == 0:
        if not isinstance(cls, HNType):
            cls = cls.mu
        return orientable_point(cls, ell, rng)
    if i not in (1, 2):
        raise ValueError(f"i must be 0, 1 or 2, got {i}")
    if i == 1 and ell == 0:
        raise UnsupportedCase("Sigma^0_1 = RP^2 is not covered by the construction")
    cls = _as_class(cls, i)
    sign = _resolve_sign(cls, sign)
    cover_genus = 2 * ell + i - 1

    zblocks = []
    for nj, kj in cls.nu.blocks:
        q = orientable_point(HNType([(nj, kj)]), cover_genus, rng)
        z = phi_section(q, i)
        if rng is not None:
            z = sample_orbit(z, rng)
        zblocks.append(z)
    mirror = zblocks[::-1]

    mid_handles: list[np.ndarray] = []
    mid_c = mid_d = None
    if cls.n0:
        target = sign * (-1) ** (cls.n_prime + cls.k) if i == 1 else sign * (-1) ** cls.k
        mid_handles, mid_c, mid_d = _middle_block(cls.n0, ell, i, target, rng)

    def assemble(left: Sequence[np.ndarray], middle: np.ndarray | None, right: Sequence[np.ndarray]):
        parts = list(left) + ([middle] if middle is not None else []) + list(right)
        return block_diag(*parts)

    V = tuple(
        assemble(
            [z.V[h] for z in zblocks],
            mid_handles[h] if cls.n0 else None,
            [z.Vbar[h] for z in mirror],
        )
        for h in range(2 * ell)
    )
    c_prime = assemble([z.cbar for z in zblocks], mid_c, [z.c for z in mirror])
    c = e_mu(cls) @ c_prime
    X = np.diag(x_mu(cls.mu)) / 2
    tag = f"U({cls.n})"
    if i == 1:
        return GroupTuplePoint(tag, Kind.YM_1, V, c=c, X=X)
    d = assemble([z.d for z in zblocks], mid_d, [z.dbar for z in mirror])
    return GroupTuplePoint(tag, Kind.YM_2, V, c=c, d=d, X=X)


def bundle_sign(p: GroupTuplePoint) -> int:
    """``det c`` (i=1) or ``det d`` (i=2), rounded to ``+-1``."""
    if p.cross == 1:
        det = np.linalg.det(p.c)
    elif p.cross == 2:
        det = np.linalg.det(p.d)
    else:
        raise ValueError("bundle sign is defined only for nonorientable points")
    return 1 if det.real > 0 else -1


def _off_block(a: np.ndarray, sizes: Sequence[int]) -> float:
    masked = a.copy()
    start = 0
    for size in sizes:
        masked[start : start + size, start : start + size] = 0
        start += size
    return norm(masked)


def det_reduction_check(
    p: GroupTuplePoint, cls: SymmetricTypeClass | HNType, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """Check ``det c = (-1)^(n'+k) det C`` (i=1) or ``det d = (-1)^k det D`` (i=2).

    ``C`` is the zero-slope block of ``e_mu c`` and ``D`` that of ``d``; for
    paired types there is no such block and the relation reads
    ``det c = (-1)^(n'+k)`` (resp. ``det d = (-1)^k``).
    """
    if p.kind not in (Kind.YM_1, Kind.YM_2, Kind.FLAT_1, Kind.FLAT_2):
        raise ValueError(f"det_reduction_check needs a nonorientable point, got {p.kind.value}")
    i = p.cross
    cls = _as_class(cls, i)
    if cls.n != p.dim:
        raise ValueError(f"type {cls.mu} has rank {cls.n}, point has rank {p.dim}")
    sizes = block_layout(cls)
    lo, hi = cls.n_prime, cls.n_prime + cls.n0
    if i == 1:
        whole, name, sign = p.c, "c", (-1) ** (cls.n_prime + cls.k)
        aligned = e_mu(cls) @ p.c
        res = [("block:e_mu*c", _off_block(aligned, sizes))]
    else:
        whole, name, sign = p.d, "d", (-1) ** cls.k
        aligned = p.d
        res = [("block:d", _off_block(aligned, sizes))]
    det_whole = np.linalg.det(whole)
    if cls.classification is SymmetricClass.ZERO_BLOCK:
        center = name.upper()
        det_center = np.linalg.det(aligned[lo:hi, lo:hi])
        res.append((f"det({name})={sign:+d}*det({center})", abs(det_whole - sign * det_center)))
        res.append((f"det({center})=+-1", min(abs(det_center - 1), abs(det_center + 1))))
    else:
        res.append((f"det({name})={sign:+d}", abs(det_whole - sign)))
    return ResidualReport(tuple(res), tol)
