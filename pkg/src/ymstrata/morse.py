"""Codimensions of Yang-Mills Morse strata."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hn_types import HNType, Surface, SymmetricTypeClass

__all__ = [
    "CodimensionError",
    "StratumRecord",
    "codim_orientable",
    "codim_nonorientable",
    "pair_sum",
]


class CodimensionError(ArithmeticError):
    """A codimension came out non-integral or negative."""


def pair_sum(mu: HNType, shift: int) -> Fraction:
    """Sum of ``mu_a - mu_b + shift`` over index pairs ``a < b`` with ``mu_a > mu_b``.

    Evaluated block-wise: blocks ``i < j`` contribute
    ``n_j k_i - n_i k_j + n_i n_j shift``.
    """
    total = Fraction(0)
    blocks = mu.blocks
    for a in range(len(blocks)):
        na, ka = blocks[a]
        for b in range(a + 1, len(blocks)):
            nb, kb = blocks[b]
            total += nb * ka - na * kb + na * nb * shift
    return total


def _checked(value: Fraction, mu: HNType) -> int:
    if value.denominator != 1:
        raise CodimensionError(f"non-integral codimension {value} for {mu}")
    if value < 0:
        raise CodimensionError(f"negative codimension {value} for {mu}")
    return int(value)


def codim_orientable(mu: HNType, g: int) -> int:
    """Complex codimension ``d_mu`` of the stratum of type ``mu`` over genus ``g``."""
    return _checked(pair_sum(mu, g - 1), mu)


def codim_nonorientable(cls: SymmetricTypeClass | HNType, surface: Surface) -> int:
    """Real codimension of a symmetric stratum over ``Sigma^ell_i``.

    The additive constant is ``2 ell + i - 2``, so this equals
    ``codim_orientable`` over the double cover.
    """
    if surface.orientable:
        raise ValueError("codim_nonorientable needs a nonorientable surface")
    mu = cls.mu if isinstance(cls, SymmetricTypeClass) else cls
    return _checked(pair_sum(mu, 2 * surface.ell + surface.cross - 2), mu)


@dataclass(frozen=True)
class StratumRecord:
    """One row of a stratification table.

    ``bundle_sign`` is ``None`` over orientable surfaces. ``complex_codim`` is
    the codimension on the orientable surface (or double cover) and
    ``real_codim`` the exponent of ``t`` in the Morse series.
    """

    mu: HNType
    bundle_sign: int | None
    complex_codim: int
    real_codim: int
    surface: Surface
    classification: str | None = None

    @classmethod
    def orientable(cls, mu: HNType, surface: Surface) -> StratumRecord:
        d = codim_orientable(mu, surface.genus)
        return cls(mu, None, d, 2 * d, surface)

    @classmethod
    def nonorientable(cls, sym: SymmetricTypeClass, sign: int, surface: Surface) -> StratumRecord:
        if sign not in sym.signs:
            raise ValueError(f"type {sym.mu} carries no stratum on the {sign:+d} bundle")
        d = codim_nonorientable(sym, surface)
        return cls(sym.mu, sign, d, d, surface, sym.classification.name)

    def as_dict(self) -> dict:
        return {
            "mu": [str(e) for e in self.mu.entries()],
            "blocks": [list(b) for b in self.mu.blocks],
            "bundle_sign": self.bundle_sign,
            "complex_codim": self.complex_codim,
            "real_codim": self.real_codim,
            "classification": self.classification,
            "surface": {"ell": self.surface.ell, "cross": self.surface.cross},
        }
