"""Points of representation varieties and their defining equations."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

import numpy as np

from .linalg import ad, expm, inv, m_product, norm, unitarity_residual

__all__ = [
    "Kind",
    "GroupTuplePoint",
    "ResidualReport",
    "membership",
    "point_to_json",
    "point_from_json",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9


class Kind(enum.Enum):
    FLAT_0 = "FLAT_0"
    FLAT_1 = "FLAT_1"
    FLAT_2 = "FLAT_2"
    YM_0 = "YM_0"
    YM_1 = "YM_1"
    YM_2 = "YM_2"
    ZFLAT_1 = "ZFLAT_1"
    ZFLAT_2 = "ZFLAT_2"
    ZYM_1 = "ZYM_1"
    ZYM_2 = "ZYM_2"
    EXT = "EXT"

    @property
    def is_flat(self) -> bool:
        return self in (Kind.FLAT_0, Kind.FLAT_1, Kind.FLAT_2, Kind.ZFLAT_1, Kind.ZFLAT_2)

    @property
    def is_symmetric(self) -> bool:
        return self in (Kind.ZFLAT_1, Kind.ZFLAT_2, Kind.ZYM_1, Kind.ZYM_2)

    @property
    def cross(self) -> int | None:
        """Crosscap count ``i``; ``None`` for EXT, where it depends on the point."""
        if self is Kind.EXT:
            return None
        return int(self.value[-1])


_TAG_RE = re.compile(r"^(U\((\d+)\)|SO\(3\))$")


def _as_matrix(a) -> np.ndarray:
    return np.array(a, dtype=complex)


@dataclass(frozen=True, eq=False)
class GroupTuplePoint:
    """A tuple of group matrices (plus Lie algebra data) of a given ``kind``.

    Field usage by kind, with ``V = (a_1, b_1, ..., a_ell, b_ell)``:

    ========  ===============================================
    FLAT_0    V
    FLAT_1    V, c
    FLAT_2    V, d, c
    YM_i      as FLAT_i, plus X
    ZFLAT_1   V, c, Vbar, cbar
    ZFLAT_2   V, d, c, Vbar, dbar, cbar
    ZYM_i     as ZFLAT_i, plus X
    EXT       V, optional c (and d), ks = (k_2..k_r), Xs = (X_1..X_r)
    ========  ===============================================

    Flat kinds carry no ``X``; it is taken to be zero. All matrices are
    stored as complex arrays, including SO(3) ones.
    """

    group_tag: str
    kind: Kind
    V: tuple[np.ndarray, ...]
    c: np.ndarray | None = None
    d: np.ndarray | None = None
    Vbar: tuple[np.ndarray, ...] = ()
    cbar: np.ndarray | None = None
    dbar: np.ndarray | None = None
    X: np.ndarray | None = None
    ks: tuple[np.ndarray, ...] = ()
    Xs: tuple[np.ndarray, ...] = ()
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        match = _TAG_RE.match(self.group_tag)
        if not match:
            raise ValueError(f"group tag must be 'U(n)' or 'SO(3)', got {self.group_tag!r}")
        dim = int(match.group(2)) if match.group(2) else 3
        object.__setattr__(self, "dim", dim)
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        for name in ("V", "Vbar", "ks", "Xs"):
            object.__setattr__(self, name, tuple(_as_matrix(a) for a in getattr(self, name)))
        for name in ("c", "d", "cbar", "dbar", "X"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _as_matrix(value))
        self._check_shape()

    def _check_shape(self) -> None:
        kind = self.kind
        if len(self.V) % 2:
            raise ValueError(f"V must have even length, got {len(self.V)}")
        needs = {"c": False, "d": False, "bar": False, "X": False}
        if kind is not Kind.EXT:
            i = kind.cross
            needs["c"] = i >= 1
            needs["d"] = i == 2
            needs["bar"] = kind.is_symmetric
            needs["X"] = not kind.is_flat
            for name, present in (
                ("c", self.c is not None),
                ("d", self.d is not None),
                ("X", self.X is not None),
            ):
                if present != needs[name]:
                    verb = "requires" if needs[name] else "does not take"
                    raise ValueError(f"kind {kind.value} {verb} {name}")
            bars = (self.cbar is not None, self.dbar is not None, bool(self.Vbar))
            if needs["bar"]:
                if self.cbar is None or (self.dbar is None) == needs["d"]:
                    raise ValueError(f"kind {kind.value} requires cbar{' and dbar' if needs['d'] else ''}")
                if len(self.Vbar) != len(self.V):
                    raise ValueError("Vbar must have the same length as V")
            elif any(bars):
                raise ValueError(f"kind {kind.value} does not take barred data")
            if self.ks or self.Xs:
                raise ValueError(f"kind {kind.value} does not take boundary data")
        else:
            if self.d is not None and self.c is None:
                raise ValueError("EXT point with d requires c")
            if not self.Xs:
                raise ValueError("EXT point requires at least one boundary element X_1")
            if len(self.ks) != len(self.Xs) - 1:
                raise ValueError("EXT point needs len(ks) == len(Xs) - 1")
            if self.X is not None or self.Vbar or self.cbar is not None or self.dbar is not None:
                raise ValueError("EXT point takes only V, c, d, ks, Xs")
        for label, mat in self.labeled_matrices(include_algebra=True):
            if mat.shape != (self.dim, self.dim):
                raise ValueError(f"{label} has shape {mat.shape}, expected {(self.dim, self.dim)}")

    @property
    def is_so3(self) -> bool:
        return self.group_tag == "SO(3)"

    @property
    def ell(self) -> int:
        return len(self.V) // 2

    @property
    def cross(self) -> int:
        if self.kind is Kind.EXT:
            return 0 if self.c is None else (1 if self.d is None else 2)
        return self.kind.cross

    @property
    def X_or_zero(self) -> np.ndarray:
        return self.X if self.X is not None else np.zeros((self.dim, self.dim), complex)

    def labeled_matrices(self, include_algebra: bool = False) -> Iterator[tuple[str, np.ndarray]]:
        """Group elements (and optionally Lie algebra elements) with labels."""
        for idx, a in enumerate(self.V):
            yield f"V[{idx}]", a
        for name in ("d", "c"):
            if getattr(self, name) is not None:
                yield name, getattr(self, name)
        for idx, a in enumerate(self.Vbar):
            yield f"Vbar[{idx}]", a
        for name in ("dbar", "cbar"):
            if getattr(self, name) is not None:
                yield name, getattr(self, name)
        for idx, a in enumerate(self.ks):
            yield f"k[{idx + 2}]", a
        if include_algebra:
            if self.X is not None:
                yield "X", self.X
            for idx, a in enumerate(self.Xs):
                yield f"X[{idx + 1}]", a

    def distance(self, other: GroupTuplePoint) -> float:
        """Largest Frobenius distance between corresponding components."""
        if (self.group_tag, self.kind) != (other.group_tag, other.kind):
            raise ValueError("points of different kind or group are not comparable")
        mine = list(self.labeled_matrices(include_algebra=True))
        theirs = dict(other.labeled_matrices(include_algebra=True))
        if [label for label, _ in mine] != list(theirs):
            raise ValueError("points have different shapes")
        return max((norm(a - theirs[label]) for label, a in mine), default=0.0)

    def identical(self, other: GroupTuplePoint) -> bool:
        try:
            return self.distance(other) == 0.0
        except ValueError:
            return False

    def map_matrices(self, group_fn, algebra_fn=None) -> GroupTuplePoint:
        """Apply ``group_fn`` to every group element and ``algebra_fn`` to X / Xs."""
        algebra_fn = algebra_fn or (lambda x: x)

        def opt(f, a):
            return None if a is None else f(a)

        return replace(
            self,
            V=tuple(group_fn(a) for a in self.V),
            c=opt(group_fn, self.c),
            d=opt(group_fn, self.d),
            Vbar=tuple(group_fn(a) for a in self.Vbar),
            cbar=opt(group_fn, self.cbar),
            dbar=opt(group_fn, self.dbar),
            X=opt(algebra_fn, self.X),
            ks=tuple(group_fn(a) for a in self.ks),
            Xs=tuple(algebra_fn(a) for a in self.Xs),
        )


@dataclass(frozen=True)
class ResidualReport:
    residuals: tuple[tuple[str, float], ...]
    tol: float = DEFAULT_TOL

    @property
    def max_residual(self) -> float:
        return max((r for _, r in self.residuals), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tol

    def worst(self) -> tuple[str, float] | None:
        return max(self.residuals, key=lambda item: item[1], default=None)

    def merged(self, other: ResidualReport, prefix: str = "") -> ResidualReport:
        return ResidualReport(
            self.residuals + tuple((prefix + label, r) for label, r in other.residuals), self.tol
        )

    def to_json(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "tol": self.tol,
            "pass": self.passed,
            "residuals": [{"label": label, "residual": r} for label, r in self.residuals],
        }

    @classmethod
    def from_json(cls, payload: dict) -> ResidualReport:
        return cls(
            tuple((item["label"], float(item["residual"])) for item in payload["residuals"]),
            float(payload["tol"]),
        )


def _stab(g: np.ndarray, X: np.ndarray) -> float:
    return norm(ad(g, X) - X)


def _group_residuals(p: GroupTuplePoint) -> list[tuple[str, float]]:
    out = []
    for label, a in p.labeled_matrices():
        if p.is_so3:
            out.append((f"orthogonal:{label}", unitarity_residual(a)))
            out.append((f"real:{label}", norm(a.imag)))
            out.append((f"det:{label}", abs(np.linalg.det(a) - 1)))
        else:
            out.append((f"unitary:{label}", unitarity_residual(a)))
    algebra = ([("X", p.X)] if p.X is not None else []) + [
        (f"X[{j + 1}]", a) for j, a in enumerate(p.Xs)
    ]
    for label, a in algebra:
        out.append((f"skew:{label}", norm(a + a.conj().T)))
        if p.is_so3:
            out.append((f"real:{label}", norm(a.imag)))
    return out


def membership(p: GroupTuplePoint, tol: float = DEFAULT_TOL) -> ResidualReport:
    """Residuals of the defining equations of ``p.kind``.

    Includes unitarity (orthogonality for SO(3)) of every group element,
    stabilizer conditions ``|Ad(g)X - X|`` and the ``Ad(c)X = -X`` twist where
    the kind requires them.
    """
    res = _group_residuals(p)
    kind, n = p.kind, p.dim
    X = p.X_or_zero
    mV = m_product(p.V, n)
    c, d = p.c, p.d

    def stab_all(prefix: str, mats: Sequence[np.ndarray]) -> None:
        for idx, g in enumerate(mats):
            res.append((f"stab:{prefix}[{idx}]", _stab(g, X)))

    if kind is Kind.FLAT_0:
        res.append(("m(V)=I", norm(mV - np.eye(n))))
    elif kind is Kind.FLAT_1:
        res.append(("m(V)=c^2", norm(mV - c @ c)))
    elif kind is Kind.FLAT_2:
        res.append(("m(V)=cdc^-1d", norm(mV - c @ d @ inv(c) @ d)))
    elif kind is Kind.YM_0:
        stab_all("V", p.V)
        res.append(("m(V)=exp(X)", norm(mV - expm(X))))
    elif kind is Kind.YM_1:
        stab_all("V", p.V)
        res.append(("Ad(c)X=-X", norm(ad(c, X) + X)))
        res.append(("m(V)=exp(X)c^2", norm(mV - expm(X) @ c @ c)))
    elif kind is Kind.YM_2:
        stab_all("V", p.V)
        res.append(("stab:d", _stab(d, X)))
        res.append(("Ad(c)X=-X", norm(ad(c, X) + X)))
        res.append(("m(V)=exp(X)cdc^-1d", norm(mV - expm(X) @ c @ d @ inv(c) @ d)))
    elif kind in (Kind.ZFLAT_1, Kind.ZYM_1):
        mVb = m_product(p.Vbar, n)
        cb = p.cbar
        half = expm(X / 2)
        if kind is Kind.ZYM_1:
            stab_all("V", p.V)
            stab_all("cVbarc^-1", [c @ a @ inv(c) for a in p.Vbar])
            res.append(("derived:stab:c*cbar", _stab(c @ cb, X)))
        res.append(("m(V)=exp(X/2)c*cbar", norm(mV - half @ c @ cb)))
        res.append(("m(Vbar)=cbar*exp(-X/2)c", norm(mVb - cb @ inv(half) @ c)))
    elif kind in (Kind.ZFLAT_2, Kind.ZYM_2):
        mVb = m_product(p.Vbar, n)
        cb, db = p.cbar, p.dbar
        half = expm(X / 2)
        if kind is Kind.ZYM_2:
            stab_all("V", p.V)
            conj = inv(d) @ c
            stab_all("d^-1cVbarc^-1d", [conj @ a @ inv(conj) for a in p.Vbar])
            res.append(("stab:d^-1", _stab(inv(d), X)))
            res.append(("stab:c*cbar", _stab(c @ cb, X)))
        res.append(("m(V)=exp(X/2)c*dbar*c^-1d", norm(mV - half @ c @ db @ inv(c) @ d)))
        res.append(
            ("m(Vbar)=cbar*d*exp(-X/2)cbar^-1dbar", norm(mVb - cb @ d @ inv(half) @ inv(cb) @ db))
        )
    elif kind is Kind.EXT:
        rhs = expm(p.Xs[0])
        for k, Xj in zip(p.ks, p.Xs[1:]):
            rhs = rhs @ expm(ad(k, Xj))
        if p.cross == 1:
            rhs = rhs @ c @ c
            tail = "c^2"
        elif p.cross == 2:
            rhs = rhs @ c @ d @ inv(c) @ d
            tail = "cdc^-1d"
        else:
            tail = ""
        label = "m(V)=exp(X1)exp(Ad(k2)X2)..." + tail
        res.append((label, norm(mV - rhs)))
    return ResidualReport(tuple(res), tol)


def _encode(a: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def _decode(rows: Sequence) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def point_to_json(p: GroupTuplePoint) -> dict:
    """JSON-ready dict; complex entries are ``[re, im]`` pairs, matrices row-major."""
    out: dict = {"group_tag": p.group_tag, "kind": p.kind.value}
    out["V"] = [_encode(a) for a in p.V]
    for name in ("c", "d", "cbar", "dbar", "X"):
        value = getattr(p, name)
        if value is not None:
            out[name] = _encode(value)
    if p.Vbar:
        out["Vbar"] = [_encode(a) for a in p.Vbar]
    if p.kind is Kind.EXT:
        out["ks"] = [_encode(a) for a in p.ks]
        out["Xs"] = [_encode(a) for a in p.Xs]
    return out


def point_from_json(payload: dict) -> GroupTuplePoint:
    kwargs = {}
    for name in ("c", "d", "cbar", "dbar", "X"):
        if name in payload:
            kwargs[name] = _decode(payload[name])
    for name in ("Vbar", "ks", "Xs"):
        if name in payload:
            kwargs[name] = tuple(_decode(a) for a in payload[name])
    return GroupTuplePoint(
        payload["group_tag"],
        Kind(payload["kind"]),
        tuple(_decode(a) for a in payload["V"]),
        **kwargs,
    )
