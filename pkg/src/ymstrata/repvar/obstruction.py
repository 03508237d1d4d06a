"""Topological obstruction classes of flat bundles.

For ``G = SO(3)`` the universal cover is ``SU(2)``, realized as unit
quaternions. Lifting every handle and evaluating ``m`` on the lifts gives
``+-1``; the sign is independent of the lifts chosen because each lift
appears in a commutator together with its inverse.
"""

from __future__ import annotations

import numpy as np

from .linalg import haar_so3, rotation
from .maps import embed_fixed, phi, tau_involution
from .points import DEFAULT_TOL, GroupTuplePoint, Kind, ResidualReport

__all__ = [
    "LiftError",
    "quaternion_lift",
    "quaternion_to_rotation",
    "obstruction",
    "obstruction_so3",
    "obstruction_class",
    "obstruction_prime",
    "obstruction_laws",
    "random_flat_so3",
    "random_flat_so3_nonorientable",
]

LIFT_TOL = 1e-8


class LiftError(ValueError):
    """A matrix is too far from SO(3) to lift."""


def _qmul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    )


def _qinv(q: np.ndarray) -> np.ndarray:
    return np.array([q[0], -q[1], -q[2], -q[3]])


def quaternion_to_rotation(q: np.ndarray) -> np.ndarray:
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def quaternion_lift(R: np.ndarray, tol: float = LIFT_TOL) -> np.ndarray:
    """One of the two unit quaternions mapping to ``R``."""
    R = np.asarray(R)
    if np.iscomplexobj(R):
        if np.abs(R.imag).max() > tol:
            raise LiftError("matrix has a nonzero imaginary part")
        R = R.real
    # pick the numerically largest component first
    t = np.trace(R)
    candidates = [t, R[0, 0], R[1, 1], R[2, 2]]
    best = int(np.argmax(candidates))
    if best == 0:
        w = 0.5 * np.sqrt(max(1 + t, 0.0))
        q = np.array([w, (R[2, 1] - R[1, 2]) / (4 * w), (R[0, 2] - R[2, 0]) / (4 * w), (R[1, 0] - R[0, 1]) / (4 * w)])
    elif best == 1:
        x = 0.5 * np.sqrt(max(1 + R[0, 0] - R[1, 1] - R[2, 2], 0.0))
        q = np.array([(R[2, 1] - R[1, 2]) / (4 * x), x, (R[0, 1] + R[1, 0]) / (4 * x), (R[0, 2] + R[2, 0]) / (4 * x)])
    elif best == 2:
        y = 0.5 * np.sqrt(max(1 - R[0, 0] + R[1, 1] - R[2, 2], 0.0))
        q = np.array([(R[0, 2] - R[2, 0]) / (4 * y), (R[0, 1] + R[1, 0]) / (4 * y), y, (R[1, 2] + R[2, 1]) / (4 * y)])
    else:
        z = 0.5 * np.sqrt(max(1 - R[0, 0] - R[1, 1] + R[2, 2], 0.0))
        q = np.array([(R[1, 0] - R[0, 1]) / (4 * z), (R[0, 2] + R[2, 0]) / (4 * z), (R[1, 2] + R[2, 1]) / (4 * z), z])
    q = q / np.linalg.norm(q)
    if np.linalg.norm(quaternion_to_rotation(q) - R) > tol:
        raise LiftError("matrix is not in SO(3)")
    return q


def obstruction(V, tol: float = LIFT_TOL) -> int:
    """Sign of ``m`` evaluated on quaternion lifts of an SO(3) handle tuple."""
    result = np.array([1.0, 0.0, 0.0, 0.0])
    for idx in range(0, len(V), 2):
        a, b = quaternion_lift(V[idx], tol), quaternion_lift(V[idx + 1], tol)
        result = _qmul(result, _qmul(_qmul(a, b), _qmul(_qinv(a), _qinv(b))))
    if np.linalg.norm(result[1:]) > tol or abs(abs(result[0]) - 1) > tol:
        raise ValueError("commutator product of lifts is not +-1; the tuple is not flat")
    return 1 if result[0] > 0 else -1


def obstruction_prime(y: GroupTuplePoint, tol: float = LIFT_TOL) -> int:
    """``o' = o . phi`` on a symmetric flat SO(3) point."""
    if y.kind not in (Kind.ZFLAT_1, Kind.ZFLAT_2):
        raise ValueError(f"o' needs a ZFLAT point, got {y.kind.value}")
    return obstruction(phi(y).V, tol)


def obstruction_so3(p: GroupTuplePoint, tol: float = LIFT_TOL) -> int:
    """Obstruction class of a FLAT_0 point, or ``o'`` of a ZFLAT point, over SO(3)."""
    if not p.is_so3:
        raise ValueError(f"obstruction_so3 needs an SO(3) point, got {p.group_tag}")
    if p.kind is Kind.FLAT_0:
        return obstruction(p.V, tol)
    return obstruction_prime(p, tol)


def obstruction_class(p: GroupTuplePoint) -> int:
    """Obstruction of a flat point; constant ``+1`` for U(n), whose ``SU(n)`` is simply connected."""
    if p.is_so3:
        return obstruction_so3(p)
    if not p.kind.is_flat:
        raise ValueError(f"obstruction classes are defined for flat points, got {p.kind.value}")
    return 1


def obstruction_laws(
    y: GroupTuplePoint, fixed: tuple[GroupTuplePoint, ...] = (), tol: float = DEFAULT_TOL
) -> ResidualReport:
    """``o'(tau y) = o'(y)^-1`` for ``y``, and ``o'(I x) = +1`` for each ``x`` in ``fixed``."""
    o_y = obstruction_prime(y)
    o_ty = obstruction_prime(tau_involution(y))
    res = [("o'(tau y)=o'(y)^-1", float(abs(o_ty - 1 / o_y)))]
    for idx, x in enumerate(fixed):
        res.append((f"o'(I x[{idx}])=+1", float(abs(obstruction_prime(embed_fixed(x)) - 1))))
    return ResidualReport(tuple(res), tol)


def _random_handle_block(rng: np.random.Generator) -> list[np.ndarray]:
    """One or two handles over SO(3) with commutator product I."""
    choice = rng.integers(3)
    if choice == 0:
        # perpendicular half-turns: lifts anticommute, obstruction -1
        frame = haar_so3(rng)
        return [rotation(frame[:, 0], np.pi), rotation(frame[:, 1], np.pi)]
    if choice == 1:
        axis = haar_so3(rng)[:, 0]
        a, b = rng.random(2) * 2 * np.pi
        return [rotation(axis, a), rotation(axis, b)]
    a, b = haar_so3(rng), haar_so3(rng)
    return [a, b, b, a]


def _random_flat_handles(genus: int, rng: np.random.Generator) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    while len(out) < 2 * genus:
        block = _random_handle_block(rng)
        if len(out) + len(block) > 2 * genus:
            continue
        out.extend(block)
    return out


def random_flat_so3(genus: int, rng: np.random.Generator) -> GroupTuplePoint:
    """A random FLAT_0 point over SO(3) mixing both obstruction classes."""
    g = haar_so3(rng)
    V = tuple(g @ a @ g.T for a in _random_flat_handles(genus, rng))
    return GroupTuplePoint("SO(3)", Kind.FLAT_0, V)


def random_flat_so3_nonorientable(ell: int, i: int, rng: np.random.Generator) -> GroupTuplePoint:
    """A random FLAT_i point over SO(3) with ``c`` (and ``d``) half-turns or the identity."""
    handles = _random_flat_handles(ell, rng)
    g = haar_so3(rng)
    frame = haar_so3(rng)
    u, v = frame[:, 0], frame[:, 1]

    def half_turn_or_identity(axis):
        return rotation(axis, np.pi) if rng.random() < 0.8 else np.eye(3)

    if i == 1:
        # m(V) = I = c^2
        c = half_turn_or_identity(u)
        extra = {"c": g @ c @ g.T}
        kind = Kind.FLAT_1
    else:
        # m(V) = I = c d c^-1 d when c d c^-1 = d^-1 = d
        d = half_turn_or_identity(u)
        c = rotation(u, rng.random() * 2 * np.pi) if rng.random() < 0.5 else rotation(v, np.pi)
        extra = {"c": g @ c @ g.T, "d": g @ d @ g.T}
        kind = Kind.FLAT_2
    V = tuple(g @ a @ g.T for a in handles)
    return GroupTuplePoint("SO(3)", kind, V, **extra)
