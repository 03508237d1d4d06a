"""Yang-Mills stratum types for U(n) bundles.

An :class:`HNType` is a Harder-Narasimhan type: a list of blocks ``(n_j, k_j)``
with strictly decreasing slopes ``k_j / n_j``. Over an orientable surface the
types of a degree-``k`` rank-``n`` bundle index its Morse strata. Over a
nonorientable surface the strata are indexed by the types of degree zero that
are fixed by :func:`tau0`, split further by a bundle sign.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "Surface",
    "HNType",
    "SymmetricClass",
    "SymmetricTypeClass",
    "enumerate_types",
    "enumerate_symmetric",
    "tau0",
    "x_mu",
    "separating_invariant",
    "compositions",
]


@dataclass(frozen=True)
class Surface:
    """Closed surface with ``ell`` handles and crosscap contribution ``cross``.

    ``cross = 0`` is the orientable genus-``ell`` surface, ``cross = 1`` adds an
    RP^2 and ``cross = 2`` adds a Klein bottle.
    """

    ell: int
    cross: int = 0

    def __post_init__(self) -> None:
        if self.ell < 0:
            raise ValueError(f"handle count must be nonnegative, got {self.ell}")
        if self.cross not in (0, 1, 2):
            raise ValueError(f"cross must be 0, 1 or 2, got {self.cross}")

    @property
    def orientable(self) -> bool:
        return self.cross == 0

    @property
    def genus(self) -> int:
        if not self.orientable:
            raise ValueError("genus is only defined for orientable surfaces")
        return self.ell

    @property
    def double_cover_genus(self) -> int:
        if self.orientable:
            raise ValueError("double cover genus is only defined for nonorientable surfaces")
        return 2 * self.ell + self.cross - 1

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.ell - self.cross

    @property
    def codim_genus(self) -> int:
        """Genus entering the codimension formula (double cover when nonorientable)."""
        return self.ell if self.orientable else self.double_cover_genus

    def __str__(self) -> str:
        return f"Sigma^{self.ell}_{self.cross}"


@dataclass(frozen=True)
class HNType:
    """Blocks ``(n_j, k_j)`` with ``k_1/n_1 > k_2/n_2 > ...``.

    The empty type (no blocks, ``n = 0``) is allowed; it appears as the
    positive part of a symmetric type without positive slopes.
    """

    blocks: tuple[tuple[int, int], ...]

    def __init__(self, blocks: Sequence[Sequence[int]]):
        normalized = tuple((int(b[0]), int(b[1])) for b in blocks)
        for nj, _ in normalized:
            if nj <= 0:
                raise ValueError(f"block sizes must be positive, got {normalized}")
        slopes = [Fraction(kj, nj) for nj, kj in normalized]
        for left, right in zip(slopes, slopes[1:]):
            if not left > right:
                raise ValueError(f"slopes must be strictly decreasing, got {normalized}")
        object.__setattr__(self, "blocks", normalized)

    @classmethod
    def from_entries(cls, entries: Sequence[Fraction | int]) -> HNType:
        """Group a weakly decreasing entry vector into blocks."""
        values = [Fraction(e) for e in entries]
        blocks: list[list] = []
        for v in values:
            if blocks and blocks[-1][1] == v:
                blocks[-1][0] += 1
            else:
                blocks.append([1, v])
        out = []
        for size, slope in blocks:
            kj = slope * size
            if kj.denominator != 1:
                raise ValueError(f"entry {slope} with multiplicity {size} is not a block slope")
            out.append((size, int(kj)))
        return cls(out)

    @property
    def n(self) -> int:
        return sum(nj for nj, _ in self.blocks)

    @property
    def k(self) -> int:
        return sum(kj for _, kj in self.blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(kj, nj) for nj, kj in self.blocks)

    @property
    def is_semistable(self) -> bool:
        return len(self.blocks) <= 1

    def entries(self) -> tuple[Fraction, ...]:
        out: list[Fraction] = []
        for nj, kj in self.blocks:
            out.extend([Fraction(kj, nj)] * nj)
        return tuple(out)

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries()) + ")"


class SymmetricClass(enum.Enum):
    ZERO_BLOCK = "zero_block"
    PAIRED_PLUS = "paired_plus"
    PAIRED_MINUS = "paired_minus"


@dataclass(frozen=True)
class SymmetricTypeClass:
    """A tau0-fixed degree-zero type ``mu = (nu, 0 x n0, tau0(nu))``.

    ``cross`` is the crosscap count ``i`` the classification refers to.
    """

    nu: HNType
    n0: int
    cross: int
    mu: HNType = field(init=False)

    def __post_init__(self) -> None:
        if self.cross not in (1, 2):
            raise ValueError(f"symmetric types need cross in (1, 2), got {self.cross}")
        if self.n0 < 0:
            raise ValueError("n0 must be nonnegative")
        if any(kj <= 0 for _, kj in self.nu.blocks):
            raise ValueError(f"positive part must have positive slopes, got {self.nu}")
        blocks = list(self.nu.blocks)
        if self.n0:
            blocks.append((self.n0, 0))
        blocks.extend(tau0(self.nu).blocks)
        if not blocks:
            raise ValueError("empty symmetric type")
        object.__setattr__(self, "mu", HNType(blocks))

    @classmethod
    def from_type(cls, mu: HNType, cross: int) -> SymmetricTypeClass:
        if mu.k != 0 or tau0(mu) != mu:
            raise ValueError(f"{mu} is not a tau0-fixed degree-zero type")
        positive = [(nj, kj) for nj, kj in mu.blocks if kj > 0]
        n0 = sum(nj for nj, kj in mu.blocks if kj == 0)
        return cls(HNType(positive), n0, cross)

    @property
    def n(self) -> int:
        return self.mu.n

    @property
    def n_prime(self) -> int:
        return self.nu.n

    @property
    def k(self) -> int:
        """Degree of the positive part."""
        return self.nu.k

    @property
    def parity_sign(self) -> int:
        """``(-1)^(n' i + k)``."""
        return -1 if (self.n_prime * self.cross + self.k) % 2 else 1

    @property
    def classification(self) -> SymmetricClass:
        if self.n0 > 0:
            return SymmetricClass.ZERO_BLOCK
        return SymmetricClass.PAIRED_PLUS if self.parity_sign == 1 else SymmetricClass.PAIRED_MINUS

    @property
    def signs(self) -> tuple[int, ...]:
        """Bundle signs carrying a stratum of this type."""
        if self.n0 > 0:
            return (1, -1)
        return (self.parity_sign,)


def tau0(mu: HNType) -> HNType:
    """``(mu_1, ..., mu_n) -> (-mu_n, ..., -mu_1)``."""
    return HNType([(nj, -kj) for nj, kj in reversed(mu.blocks)])


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All ordered compositions of ``n`` into positive parts."""
    if n == 0:
        yield ()
        return
    for head in range(1, n + 1):
        for tail in compositions(n - head):
            yield (head,) + tail


def _degree_assignments(
    sizes: Sequence[int], total: int, low: Fraction, high: Fraction
) -> Iterator[tuple[int, ...]]:
    """Degrees ``k_j`` summing to ``total`` with slopes strictly decreasing in ``[low, high]``."""

    def rec(idx: int, remaining: int, prev: Fraction | None) -> Iterator[tuple[int, ...]]:
        nj = sizes[idx]
        if idx == len(sizes) - 1:
            slope = Fraction(remaining, nj)
            if low <= slope <= high and (prev is None or slope < prev):
                yield (remaining,)
            return
        top = math.floor(high * nj)
        if prev is not None:
            # strict: kj / nj < prev
            top = min(top, math.ceil(prev * nj) - 1)
        bottom = math.ceil(low * nj)
        for kj in range(top, bottom - 1, -1):
            for rest in rec(idx + 1, remaining - kj, Fraction(kj, nj)):
                yield (kj,) + rest

    if not sizes:
        if total == 0:
            yield ()
        return
    yield from rec(0, total, None)


def _spread_bound(n: int, genus: int, max_codim: int) -> Fraction:
    # the top/bottom entry pair alone contributes (mu_1 - mu_n) + genus - 1;
    # every other strict pair contributes at least genus - 1
    pairs = n * (n - 1) // 2
    return Fraction(max_codim + max(0, 1 - genus) * pairs)


def enumerate_types(n: int, k: int, surface: Surface, max_codim: int) -> list[HNType]:
    """All types in ``I_{n,k}`` with codimension at most ``max_codim``.

    Codimensions use the surface genus, or the double cover genus when the
    surface is nonorientable (which requires ``k = 0``). Output is sorted by
    ``entries()`` in ascending lexicographic order.
    """
    from .morse import codim_orientable

    if n <= 0:
        raise ValueError(f"rank must be positive, got {n}")
    if not surface.orientable and k != 0:
        raise ValueError("nonorientable surfaces only carry degree-zero types")
    if max_codim < 0:
        return []
    genus = surface.codim_genus
    spread = _spread_bound(n, genus, max_codim)
    center = Fraction(k, n)
    found: list[HNType] = []
    for sizes in compositions(n):
        for degrees in _degree_assignments(sizes, k, center - spread, center + spread):
            mu = HNType(list(zip(sizes, degrees)))
            if codim_orientable(mu, genus) <= max_codim:
                found.append(mu)
    found.sort(key=lambda t: t.entries())
    return found


def _positive_types(size: int, slope_cap: Fraction) -> Iterator[HNType]:
    """Types of rank ``size`` whose slopes lie in ``(0, slope_cap]``."""
    if size == 0:
        yield HNType(())
        return
    for sizes in compositions(size):

        def rec(idx: int, prev: Fraction | None) -> Iterator[tuple[int, ...]]:
            if idx == len(sizes):
                yield ()
                return
            nj = sizes[idx]
            top = math.floor(slope_cap * nj)
            if prev is not None:
                top = min(top, math.ceil(prev * nj) - 1)
            for kj in range(top, 0, -1):
                for rest in rec(idx + 1, Fraction(kj, nj)):
                    yield (kj,) + rest

        for degrees in rec(0, None):
            yield HNType(list(zip(sizes, degrees)))


def enumerate_symmetric(
    n: int, i: int, surface: Surface, max_codim: int
) -> list[SymmetricTypeClass]:
    """tau0-fixed degree-zero types of codimension at most ``max_codim``, classified."""
    from .morse import codim_nonorientable

    if n <= 0:
        raise ValueError(f"rank must be positive, got {n}")
    if surface.cross != i:
        raise ValueError(f"surface {surface} does not have cross = {i}")
    if max_codim < 0:
        return []
    genus = surface.double_cover_genus
    # the pair (nu_1, -nu_1) alone forces 2 nu_1 <= spread bound
    slope_cap = _spread_bound(n, genus, max_codim) / 2
    found: list[SymmetricTypeClass] = []
    for n_prime in range(n // 2 + 1):
        n0 = n - 2 * n_prime
        for nu in _positive_types(n_prime, slope_cap):
            cls = SymmetricTypeClass(nu, n0, i)
            if codim_nonorientable(cls, surface) <= max_codim:
                found.append(cls)
    found.sort(key=lambda c: c.mu.entries())
    return found


def x_mu(mu: HNType) -> np.ndarray:
    """Diagonal of ``X_mu = -2 pi sqrt(-1) diag(mu)`` as a complex vector."""
    return np.array([-2j * np.pi * float(e) for e in mu.entries()], dtype=complex)


def separating_invariant(mu: HNType) -> tuple[Fraction, ...]:
    """Power sums ``(sum mu_i, sum mu_i^2, ..., sum mu_i^n)``."""
    entries = mu.entries()
    return tuple(sum((e**p for e in entries), Fraction(0)) for p in range(1, len(entries) + 1))
