"""Truncated power series in ``t`` with exact rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "TruncatedSeries",
    "Factor",
    "expand_rational",
    "parse_factors",
    "format_factors",
]

Number = int | Fraction


class TruncatedSeries:
    """``c_0 + c_1 t + ... + c_D t^D + O(t^{D+1})``.

    Binary operations truncate at the smaller of the two degrees.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Number], degree: int | None = None):
        values = [Fraction(c) for c in coeffs]
        if degree is None:
            degree = len(values) - 1
        if degree < 0:
            raise ValueError("truncation degree must be nonnegative")
        values = values[: degree + 1]
        values.extend([Fraction(0)] * (degree + 1 - len(values)))
        self._coeffs = tuple(values)

    @classmethod
    def one(cls, degree: int) -> TruncatedSeries:
        return cls([1], degree)

    @classmethod
    def zero(cls, degree: int) -> TruncatedSeries:
        return cls([], degree)

    @classmethod
    def monomial(cls, power: int, degree: int, coeff: Number = 1) -> TruncatedSeries:
        if power > degree:
            return cls.zero(degree)
        return cls([0] * power + [coeff], degree)

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, idx: int) -> Fraction:
        return self._coeffs[idx]

    def __len__(self) -> int:
        return len(self._coeffs)

    def truncate(self, degree: int) -> TruncatedSeries:
        if degree > self.degree:
            raise ValueError(f"cannot extend a series known to degree {self.degree} to {degree}")
        return TruncatedSeries(self._coeffs[: degree + 1], degree)

    def _coerce(self, other: TruncatedSeries | Number) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other], self.degree)

    def __add__(self, other: TruncatedSeries | Number) -> TruncatedSeries:
        other = self._coerce(other)
        d = min(self.degree, other.degree)
        return TruncatedSeries((a + b for a, b in zip(self._coeffs, other._coeffs)), d)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries((-a for a in self._coeffs), self.degree)

    def __sub__(self, other: TruncatedSeries | Number) -> TruncatedSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other: TruncatedSeries | Number) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries((c * a for a in self._coeffs), self.degree)
        d = min(self.degree, other.degree)
        a, b = self._coeffs, other._coeffs
        out = [Fraction(0)] * (d + 1)
        for i in range(d + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(d + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncatedSeries(out, d)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> TruncatedSeries:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TruncatedSeries.one(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> TruncatedSeries:
        a = self._coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for i in range(1, self.degree + 1):
            s = sum((a[j] * out[i - j] for j in range(1, i + 1)), Fraction(0))
            out.append(-s * inv0)
        return TruncatedSeries(out, self.degree)

    def __truediv__(self, other: TruncatedSeries | Number) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def shift(self, power: int) -> TruncatedSeries:
        """Multiply by ``t^power``; the result is known to degree ``degree + power``."""
        if power < 0:
            raise ValueError("negative shift")
        return TruncatedSeries([0] * power + list(self._coeffs), self.degree + power)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.degree == other.degree and self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_poincare_like(self) -> bool:
        """Nonnegative integer coefficients."""
        return all(c.denominator == 1 and c >= 0 for c in self._coeffs)

    def as_ints(self) -> list[int]:
        if any(c.denominator != 1 for c in self._coeffs):
            raise ValueError("series has non-integral coefficients")
        return [int(c) for c in self._coeffs]

    def to_text(self) -> str:
        terms = []
        for power, c in enumerate(self._coeffs):
            if not c:
                continue
            mag = abs(c)
            monomial = "t" if power == 1 else f"t^{power}"
            if power == 0:
                body = str(mag)
            elif mag == 1:
                body = monomial
            else:
                body = f"{mag}*{monomial}"
            terms.append(("-" if c < 0 else "+", body))
        pieces = []
        for idx, (sign, body) in enumerate(terms):
            if idx == 0:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f"{sign} {body}")
        order = self.degree + 1
        pieces.append(f"{'+ ' if terms else ''}O({'t' if order == 1 else f't^{order}'})")
        return " ".join(pieces)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self._coeffs]}, degree={self.degree})"

    def to_json(self) -> dict:
        return {"coefficients": [str(c) for c in self._coeffs], "degree": self.degree}

    @classmethod
    def from_json(cls, payload: dict) -> TruncatedSeries:
        return cls([Fraction(c) for c in payload["coefficients"]], int(payload["degree"]))


@dataclass(frozen=True)
class Factor:
    """``(1 + t^power)^mult`` when ``sign = +1``, ``(1 - t^power)^mult`` when ``sign = -1``."""

    sign: int
    power: int
    mult: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"factor sign must be +1 or -1, got {self.sign}")
        if self.power < 0 or self.mult < 0:
            raise ValueError("factor power and multiplicity must be nonnegative")

    def series(self, degree: int) -> TruncatedSeries:
        base = TruncatedSeries.one(degree) + TruncatedSeries.monomial(self.power, degree, self.sign)
        return base**self.mult


FactorLike = Factor | tuple


def _as_factor(f: FactorLike) -> Factor:
    if isinstance(f, Factor):
        return f
    sign, power, mult = f
    if isinstance(sign, str):
        sign = {"+": 1, "-": -1}[sign]
    return Factor(int(sign), int(power), int(mult))


def expand_rational(
    numerator: Sequence[FactorLike], denominator: Sequence[FactorLike], degree: int
) -> TruncatedSeries:
    """Expand ``prod (1 +- t^a)^b / prod (1 +- t^a)^b`` to ``degree``."""
    num = TruncatedSeries.one(degree)
    for f in numerator:
        num = num * _as_factor(f).series(degree)
    den = TruncatedSeries.one(degree)
    for f in denominator:
        den = den * _as_factor(f).series(degree)
    if den[0] == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    return num / den


_FACTOR_RE = re.compile(r"^([+-])(\d+)(?:\^(\d+))?$")


def parse_factors(text: str) -> tuple[list[Factor], list[Factor]]:
    """Parse ``"+1^4 +3^2 / -2 -4"`` into numerator and denominator factors.

    Each token is ``<sign><power>[^<mult>]`` standing for ``(1 <sign> t^power)^mult``.
    """
    parts = text.split("/")
    if len(parts) > 2:
        raise ValueError(f"at most one '/' allowed in {text!r}")
    sides: list[list[Factor]] = []
    for part in parts:
        side = []
        for token in part.split():
            if token == "1":
                continue
            match = _FACTOR_RE.match(token)
            if not match:
                raise ValueError(f"bad factor token {token!r}")
            sign, power, mult = match.groups()
            side.append(Factor(1 if sign == "+" else -1, int(power), int(mult or 1)))
        sides.append(side)
    if len(sides) == 1:
        sides.append([])
    return sides[0], sides[1]


def format_factors(numerator: Sequence[Factor], denominator: Sequence[Factor]) -> str:
    def side(fs: Sequence[Factor]) -> str:
        if not fs:
            return "1"
        return " ".join(f"{'+' if f.sign > 0 else '-'}{f.power}^{f.mult}" for f in fs)

    return f"{side(numerator)} / {side(denominator)}"
