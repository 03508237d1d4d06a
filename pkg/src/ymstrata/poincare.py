"""Equivariant Poincare series of Yang-Mills strata.

Orientable surfaces: the semistable series ``P^{U(n)}_t(V_ss(P^{n,k}))`` is
obtained from the Atiyah-Bott recursion, subtracting from the series of the
classifying space of the gauge group the contributions
``t^{2 d_mu} prod_j P^{U(n_j)}_t(V_ss(P^{n_j,k_j}))`` of all unstable types.

Nonorientable surfaces: stratum series factor into a flat part over the
nonorientable surface (an external input, except for rank one) and semistable
series over the orientable double cover.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .hn_types import (
    HNType,
    Surface,
    SymmetricClass,
    SymmetricTypeClass,
    enumerate_symmetric,
    enumerate_types,
)
from .morse import StratumRecord, codim_orientable
from .series import Factor, TruncatedSeries, expand_rational, format_factors, parse_factors

__all__ = [
    "RecursionInconsistency",
    "EmptyStratumError",
    "Unknown",
    "FlatEntry",
    "FlatSeriesTable",
    "VssEngine",
    "MorseSeriesReport",
    "bg_series",
    "vss_series",
    "stratum_series_orientable",
    "stratum_series_nonorientable",
    "u1_flat_series",
    "morse_series",
    "default_engine",
]


class RecursionInconsistency(ArithmeticError):
    """The recursion produced a coefficient that is negative or non-integral."""


class EmptyStratumError(ValueError):
    """A paired symmetric type was requested on the bundle it does not live on."""


@dataclass(frozen=True)
class Unknown:
    """Placeholder for a series that depends on data we were not given."""

    reason: str
    key: tuple | None = None

    def __str__(self) -> str:
        return f"UNKNOWN({self.reason})"


def bg_series(n: int, g: int, degree: int) -> TruncatedSeries:
    """``P_t(B G(P))`` for a U(n)-bundle over a genus-``g`` surface.

    ``prod_{k=1}^{n} (1 + t^{2k-1})^{2g} / (prod_{k=1}^{n-1} (1 - t^{2k})^2 (1 - t^{2n}))``
    """
    if n < 1 or g < 0:
        raise ValueError(f"need n >= 1 and g >= 0, got n={n}, g={g}")
    numerator = [Factor(1, 2 * k - 1, 2 * g) for k in range(1, n + 1)]
    denominator = [Factor(-1, 2 * k, 2) for k in range(1, n)] + [Factor(-1, 2 * n, 1)]
    return expand_rational(numerator, denominator, degree)


class VssEngine:
    """Memoized Atiyah-Bott recursion for semistable series.

    With ``normalize_degree`` the memo is keyed on ``k mod n``; switching it
    off runs the recursion on the literal degree (used to check that the two
    agree). A series cached to degree ``D`` serves every request ``D' <= D``.
    """

    def __init__(self, normalize_degree: bool = True):
        self.normalize_degree = normalize_degree
        self._cache: dict[tuple[int, int, int], TruncatedSeries] = {}
        self._lock = threading.Lock()

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()

    def __call__(self, n: int, k: int, g: int, degree: int) -> TruncatedSeries:
        return self.vss(n, k, g, degree)

    def vss(self, n: int, k: int, g: int, degree: int) -> TruncatedSeries:
        if n < 1:
            raise ValueError(f"rank must be positive, got {n}")
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        kk = k % n if self.normalize_degree else k
        key = (n, kk, g)
        cached = self._cache.get(key)
        if cached is not None and cached.degree >= degree:
            return cached.truncate(degree)
        result = self._compute(n, kk, g, degree)
        with self._lock:
            current = self._cache.get(key)
            if current is None or current.degree < result.degree:
                self._cache[key] = result
        return result

    def _compute(self, n: int, k: int, g: int, degree: int) -> TruncatedSeries:
        total = bg_series(n, g, degree)
        surface = Surface(g, 0)
        for mu in enumerate_types(n, k, surface, degree // 2):
            if mu.is_semistable:
                continue
            lam = 2 * codim_orientable(mu, g)
            rest = degree - lam
            product = TruncatedSeries.one(rest)
            for nj, kj in mu.blocks:
                product = product * self.vss(nj, kj, g, rest)
            total = total - product.shift(lam)
        if total[0] != 1 or not total.is_poincare_like():
            raise RecursionInconsistency(
                f"semistable series for (n={n}, k={k}, g={g}) is not a Poincare series: {total}"
            )
        return total

    def stratum(self, mu: HNType, g: int, degree: int) -> TruncatedSeries:
        product = TruncatedSeries.one(degree)
        for nj, kj in mu.blocks:
            product = product * self.vss(nj, kj, g, degree)
        return product


default_engine = VssEngine()


def vss_series(n: int, k: int, g: int, degree: int) -> TruncatedSeries:
    """``P^{U(n)}_t(V_ss(P^{n,k}))`` over a genus-``g`` surface, to ``degree``."""
    return default_engine.vss(n, k, g, degree)


def stratum_series_orientable(mu: HNType, g: int, degree: int) -> TruncatedSeries:
    """Product of semistable series over the blocks of ``mu``."""
    return default_engine.stratum(mu, g, degree)


def u1_flat_series(surface: Surface, degree: int) -> TruncatedSeries:
    """``P^{U(1)}_t`` of either component of flat U(1) connections on ``Sigma^ell_i``.

    The component is ``U(1)^{2 ell + i - 1}`` with trivial action, so the series
    is ``(1 + t)^{2 ell + i - 1} / (1 - t^2)``.
    """
    if surface.orientable:
        raise ValueError("u1_flat_series is for nonorientable surfaces")
    return expand_rational([Factor(1, 1, surface.double_cover_genus)], [Factor(-1, 2, 1)], degree)


@dataclass(frozen=True)
class FlatEntry:
    """A flat-part series given as a polynomial, a factored rational function, or unknown."""

    poly: tuple[Fraction, ...] | None = None
    numerator: tuple[Factor, ...] = ()
    denominator: tuple[Factor, ...] = ()
    rational: bool = False

    @property
    def known(self) -> bool:
        return self.poly is not None or self.rational

    def series(self, degree: int) -> TruncatedSeries:
        if self.poly is not None:
            return TruncatedSeries(self.poly[: degree + 1], degree)
        if self.rational:
            return expand_rational(self.numerator, self.denominator, degree)
        raise LookupError("flat entry is an explicit placeholder")

    def to_text(self) -> str:
        if self.poly is not None:
            return "poly: " + " ".join(str(c) for c in self.poly)
        if self.rational:
            return "rat: " + format_factors(self.numerator, self.denominator)
        return "unknown"


FlatKey = tuple[int, int, int, int]


def _parse_sign(token: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if token not in table:
        raise ValueError(f"bad sign {token!r}")
    return table[token]


@dataclass
class FlatSeriesTable:
    """Flat-part series ``P^{U(n0)}_t(V_ss(Sigma^ell_i, P^{n0,sign}))`` keyed by ``(n0, ell, i, sign)``.

    File format, one record per line (``#`` starts a comment)::

        n0 ell i sign poly: c0 c1 c2 ...
        n0 ell i sign rat: +1^4 / -2^1 -4^1
        n0 ell i sign unknown
    """

    entries: dict[FlatKey, FlatEntry] = field(default_factory=dict)

    def set_poly(self, n0: int, ell: int, i: int, sign: int, coeffs: Iterable) -> None:
        self.entries[(n0, ell, i, sign)] = FlatEntry(poly=tuple(Fraction(c) for c in coeffs))

    def set_rational(
        self, n0: int, ell: int, i: int, sign: int, numerator: Iterable, denominator: Iterable
    ) -> None:
        num = tuple(f if isinstance(f, Factor) else Factor(*f) for f in numerator)
        den = tuple(f if isinstance(f, Factor) else Factor(*f) for f in denominator)
        self.entries[(n0, ell, i, sign)] = FlatEntry(numerator=num, denominator=den, rational=True)

    def lookup(self, n0: int, ell: int, i: int, sign: int, degree: int) -> TruncatedSeries | Unknown:
        key = (n0, ell, i, sign)
        entry = self.entries.get(key)
        if entry is not None and entry.known:
            return entry.series(degree)
        if n0 == 1:
            return u1_flat_series(Surface(ell, i), degree)
        reason = "placeholder" if entry is not None else "missing"
        return Unknown(f"flat U({n0}) series on Sigma^{ell}_{i}, sign {sign:+d}: {reason}", key)

    @classmethod
    def parse(cls, text: str) -> FlatSeriesTable:
        table = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, body = line.partition(":")
            fields = head.split()
            try:
                if len(fields) == 5 and fields[4] == "unknown" and not body:
                    n0, ell, i = (int(x) for x in fields[:3])
                    table.entries[(n0, ell, i, _parse_sign(fields[3]))] = FlatEntry()
                    continue
                if len(fields) != 5:
                    raise ValueError("expected 'n0 ell i sign poly:|rat:|unknown'")
                n0, ell, i = (int(x) for x in fields[:3])
                sign = _parse_sign(fields[3])
                kind = fields[4]
                if kind == "poly":
                    table.set_poly(n0, ell, i, sign, [Fraction(c) for c in body.split()])
                elif kind == "rat":
                    num, den = parse_factors(body)
                    table.set_rational(n0, ell, i, sign, num, den)
                else:
                    raise ValueError(f"unknown entry kind {kind!r}")
            except ValueError as exc:
                raise ValueError(f"flat table line {lineno}: {exc}") from None
        return table

    @classmethod
    def load(cls, path: str | Path) -> FlatSeriesTable:
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def dumps(self) -> str:
        lines = []
        for (n0, ell, i, sign), entry in sorted(self.entries.items()):
            lines.append(f"{n0} {ell} {i} {'+' if sign > 0 else '-'} {entry.to_text()}")
        return "\n".join(lines) + "\n"


def stratum_series_nonorientable(
    cls: SymmetricTypeClass,
    sign: int,
    surface: Surface,
    flat_table: FlatSeriesTable | None,
    degree: int,
    engine: VssEngine | None = None,
) -> TruncatedSeries | Unknown:
    """Equivariant series of the stratum of ``cls`` on the ``sign`` bundle over ``surface``."""
    if surface.cross not in (1, 2) or surface.cross != cls.cross:
        raise ValueError(f"type classified for cross={cls.cross} used on {surface}")
    if sign not in (1, -1):
        raise ValueError(f"bundle sign must be +1 or -1, got {sign}")
    engine = engine or default_engine
    cover = surface.double_cover_genus
    product = TruncatedSeries.one(degree)
    for nj, kj in cls.nu.blocks:
        product = product * engine.vss(nj, kj, cover, degree)
    if cls.classification is SymmetricClass.ZERO_BLOCK:
        table = flat_table or FlatSeriesTable()
        flat = table.lookup(cls.n0, surface.ell, surface.cross, sign * cls.parity_sign, degree)
        if isinstance(flat, Unknown):
            return flat
        return flat * product
    if sign != cls.parity_sign:
        raise EmptyStratumError(
            f"type {cls.mu} lives only on the {cls.parity_sign:+d} bundle over {surface}"
        )
    return product


@dataclass
class MorseSeriesReport:
    """Morse series assembled from strata with ``lambda_mu <= degree``.

    ``total`` sums only the known terms; terms whose flat factor is missing are
    listed in ``unknown`` instead of being counted as zero.
    """

    degree: int
    surface: Surface
    bundle: int
    terms: list[tuple[StratumRecord, TruncatedSeries | Unknown]]
    total: TruncatedSeries

    @property
    def unknown(self) -> list[tuple[StratumRecord, Unknown]]:
        return [(r, s) for r, s in self.terms if isinstance(s, Unknown)]

    @property
    def complete(self) -> bool:
        return not self.unknown


def morse_series(
    n: int,
    bundle: int,
    surface: Surface,
    flat_table: FlatSeriesTable | None,
    degree: int,
    engine: VssEngine | None = None,
) -> MorseSeriesReport:
    """``sum_mu t^{lambda_mu} P_t(stratum mu)`` over strata of one bundle.

    ``bundle`` is the degree ``k`` on an orientable surface and the sign
    ``+1``/``-1`` on a nonorientable one.
    """
    engine = engine or default_engine
    total = TruncatedSeries.zero(degree)
    terms: list[tuple[StratumRecord, TruncatedSeries | Unknown]] = []
    if surface.orientable:
        g = surface.genus
        for mu in enumerate_types(n, bundle, surface, degree // 2):
            record = StratumRecord.orientable(mu, surface)
            series = engine.stratum(mu, g, degree - record.real_codim)
            terms.append((record, series))
            total = total + series.shift(record.real_codim)
    else:
        if bundle not in (1, -1):
            raise ValueError(f"nonorientable bundles are labelled +1/-1, got {bundle}")
        for cls in enumerate_symmetric(n, surface.cross, surface, degree):
            if bundle not in cls.signs:
                continue
            record = StratumRecord.nonorientable(cls, bundle, surface)
            rest = degree - record.real_codim
            series = stratum_series_nonorientable(cls, bundle, surface, flat_table, rest, engine)
            terms.append((record, series))
            if not isinstance(series, Unknown):
                total = total + series.shift(record.real_codim)
    return MorseSeriesReport(degree, surface, bundle, terms, total)


def perfectness_defect(n: int, k: int, g: int, degree: int, engine: VssEngine | None = None) -> TruncatedSeries:
    """``P_t(BG) - sum_mu t^{2 d_mu} prod_j P_t(V_ss(n_j, k_j))``; zero when the recursion is consistent."""
    report = morse_series(n, k, Surface(g, 0), None, degree, engine)
    return bg_series(n, g, degree) - report.total


def flat_table_from_mapping(mapping: Mapping[FlatKey, Iterable]) -> FlatSeriesTable:
    table = FlatSeriesTable()
    for (n0, ell, i, sign), coeffs in mapping.items():
        table.set_poly(n0, ell, i, sign, coeffs)
    return table
