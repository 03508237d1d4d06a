"""Maps between representation varieties and the gauge group actions on them."""

from __future__ import annotations

import numpy as np

from .linalg import ad, expm, haar_so3, haar_unitary, inv, m_product, r_reverse
from .points import GroupTuplePoint, Kind

__all__ = ["phi", "phi_section", "tau_involution", "embed_fixed", "sample_orbit", "haar"]

_Z_TO_ORIENTABLE = {Kind.ZFLAT_1: Kind.FLAT_0, Kind.ZFLAT_2: Kind.FLAT_0, Kind.ZYM_1: Kind.YM_0, Kind.ZYM_2: Kind.YM_0}
_TO_Z = {
    (Kind.FLAT_0, 1): Kind.ZFLAT_1,
    (Kind.FLAT_0, 2): Kind.ZFLAT_2,
    (Kind.YM_0, 1): Kind.ZYM_1,
    (Kind.YM_0, 2): Kind.ZYM_2,
}
_EMBED = {Kind.FLAT_1: Kind.ZFLAT_1, Kind.FLAT_2: Kind.ZFLAT_2, Kind.YM_1: Kind.ZYM_1, Kind.YM_2: Kind.ZYM_2}


def phi(p: GroupTuplePoint) -> GroupTuplePoint:
    """Send a symmetric point to a point over the orientable double cover.

    ``(V, c, Vbar, cbar, X) -> (V, c r(Vbar) c^-1, X)`` and
    ``(V, d, c, Vbar, dbar, cbar, X) -> (V, d^-1 c r(Vbar) c^-1 d, d^-1, c cbar, X)``.
    """
    if p.kind not in _Z_TO_ORIENTABLE:
        raise ValueError(f"phi needs a symmetric point, got {p.kind.value}")
    if p.cross == 1:
        conj = p.c
        extra: tuple[np.ndarray, ...] = ()
    else:
        conj = inv(p.d) @ p.c
        extra = (inv(p.d), p.c @ p.cbar)
    conj_inv = inv(conj)
    image = tuple(p.V) + tuple(conj @ a @ conj_inv for a in r_reverse(p.Vbar)) + extra
    return GroupTuplePoint(p.group_tag, _Z_TO_ORIENTABLE[p.kind], image, X=p.X)


def phi_section(q: GroupTuplePoint, i: int) -> GroupTuplePoint:
    """A preimage of ``q`` under :func:`phi`.

    ``q`` has genus ``2 ell + i - 1``; its handles split as ``(V1, V2)`` for
    ``i = 1`` and ``(V1, V2, a, b)`` for ``i = 2`` with ``V1, V2`` of length
    ``2 ell``.
    """
    if q.kind not in (Kind.FLAT_0, Kind.YM_0):
        raise ValueError(f"phi_section needs an orientable point, got {q.kind.value}")
    if i not in (1, 2):
        raise ValueError(f"i must be 1 or 2, got {i}")
    genus = q.ell
    if (genus - i + 1) % 2 or genus < i - 1:
        raise ValueError(f"genus {genus} is not of the form 2 ell + {i - 1}")
    ell = (genus - i + 1) // 2
    n = q.dim
    X = q.X_or_zero
    V1 = q.V[: 2 * ell]
    V2 = q.V[2 * ell : 4 * ell]
    half_inv = expm(-X / 2)
    m1 = m_product(V1, n)
    eye = np.eye(n, dtype=complex)
    kind = _TO_Z[(q.kind, i)]
    if i == 1:
        return GroupTuplePoint(
            q.group_tag, kind, V1, c=eye, Vbar=r_reverse(V2), cbar=half_inv @ m1, X=q.X
        )
    a, b = q.V[4 * ell], q.V[4 * ell + 1]
    a_inv = inv(a)
    return GroupTuplePoint(
        q.group_tag,
        kind,
        V1,
        d=a_inv,
        c=a_inv,
        Vbar=r_reverse(V2),
        dbar=a @ half_inv @ m1,
        cbar=a @ b,
        X=q.X,
    )


def tau_involution(p: GroupTuplePoint) -> GroupTuplePoint:
    """Deck involution: swap barred and unbarred data, ``X -> -Ad(cbar) X``."""
    if not p.kind.is_symmetric:
        raise ValueError(f"tau needs a symmetric point, got {p.kind.value}")
    X = None if p.X is None else -ad(p.cbar, p.X)
    return GroupTuplePoint(
        p.group_tag,
        p.kind,
        p.Vbar,
        c=p.cbar,
        d=p.dbar,
        Vbar=p.V,
        cbar=p.c,
        dbar=p.d,
        X=X,
    )


def embed_fixed(x: GroupTuplePoint) -> GroupTuplePoint:
    """``(V, c, X) -> (V, c, V, c, 2X)`` (and the ``d`` analogue)."""
    if x.kind not in _EMBED:
        raise ValueError(f"embed_fixed needs a nonorientable point, got {x.kind.value}")
    return GroupTuplePoint(
        x.group_tag,
        _EMBED[x.kind],
        x.V,
        c=x.c,
        d=x.d,
        Vbar=x.V,
        cbar=x.c,
        dbar=x.d,
        X=None if x.X is None else 2 * x.X,
    )


def haar(group_tag: str, dim: int, rng: np.random.Generator) -> np.ndarray:
    if group_tag == "SO(3)":
        return haar_so3(rng).astype(complex)
    return haar_unitary(dim, rng)


def sample_orbit(
    p: GroupTuplePoint, seed: int | np.random.Generator, diagonal: bool = False
) -> GroupTuplePoint:
    """Move ``p`` along its gauge orbit by Haar-random group elements.

    Symmetric points use the action of pairs ``(g1, g2)``:
    unbarred handles and ``d`` by ``g1``, barred ones and ``dbar`` by ``g2``,
    ``c -> g1 c g2^-1``, ``cbar -> g2 cbar g1^-1`` and ``X -> Ad(g1) X``.
    ``diagonal=True`` forces ``g1 = g2``, which preserves the tau-fixed locus.
    Every other kind is conjugated by a single element.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    g1 = haar(p.group_tag, p.dim, rng)
    g1_inv = inv(g1)

    def conj1(a: np.ndarray) -> np.ndarray:
        return g1 @ a @ g1_inv

    if not p.kind.is_symmetric:
        return p.map_matrices(conj1, conj1)
    g2 = g1 if diagonal else haar(p.group_tag, p.dim, rng)
    g2_inv = inv(g2)

    def conj2(a: np.ndarray) -> np.ndarray:
        return g2 @ a @ g2_inv

    return GroupTuplePoint(
        p.group_tag,
        p.kind,
        tuple(conj1(a) for a in p.V),
        c=g1 @ p.c @ g2_inv,
        d=None if p.d is None else conj1(p.d),
        Vbar=tuple(conj2(a) for a in p.Vbar),
        cbar=g2 @ p.cbar @ g1_inv,
        dbar=None if p.dbar is None else conj2(p.dbar),
        X=None if p.X is None else conj1(p.X),
    )
