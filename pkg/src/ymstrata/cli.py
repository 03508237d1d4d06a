"""Command-line front end: ``ymstrata {strata,series,verify,witness}``.

Exit codes: 0 success, 1 invalid input, 2 verification failure,
3 missing flat-series data under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hn_types import HNType, Surface, SymmetricClass, enumerate_symmetric, enumerate_types
from .morse import StratumRecord
from .poincare import (
    FlatSeriesTable,
    Unknown,
    VssEngine,
    bg_series,
    morse_series,
)
from .repvar import membership, point_to_json, witness_point
from .repvar.harness import run_verify
from .repvar.witness import bundle_sign, det_reduction_check

__all__ = ["RunConfig", "ConfigError", "main", "build_parser"]

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2
EXIT_MISSING_FLAT = 3


class ConfigError(ValueError):
    """Rejected command-line parameters."""


@dataclass
class RunConfig:
    subcommand: str
    n: int = 2
    k: int = 0
    ell: int = 1
    i: int = 0
    max_codim: int = 12
    degree: int = 20
    seed: int | None = None
    trials: int = 1000
    tol: float = 1e-9
    flat_table_path: str | None = None
    output_format: str = "text"
    strict: bool = False
    sign: int | None = None
    mu: str | None = None

    def validate(self) -> None:
        if self.n < 1:
            raise ConfigError(f"--n must be positive, got {self.n}")
        if self.ell < 0:
            raise ConfigError(f"--ell must be nonnegative, got {self.ell}")
        if self.i not in (0, 1, 2):
            raise ConfigError(f"--i must be 0, 1 or 2, got {self.i}")
        if self.max_codim < 0:
            raise ConfigError("--max-codim must be nonnegative")
        if self.degree < 0:
            raise ConfigError("--degree must be nonnegative")
        if self.trials < 1:
            raise ConfigError("--trials must be positive")
        if not self.tol > 0:
            raise ConfigError("--tol must be positive")
        if self.output_format not in ("text", "json"):
            raise ConfigError("--format must be text or json")
        if self.i and self.k:
            raise ConfigError("nonorientable bundles are selected with --sign, not --k")
        if self.sign is not None:
            if self.i == 0:
                raise ConfigError("--sign applies only to nonorientable surfaces (--i 1 or 2)")
            if self.sign not in (1, -1):
                raise ConfigError("--sign must be +1 or -1")

    @property
    def surface(self) -> Surface:
        return Surface(self.ell, self.i)

    @property
    def signs(self) -> tuple[int, ...]:
        return (self.sign,) if self.sign is not None else (1, -1)

    def flat_table(self) -> FlatSeriesTable | None:
        if self.flat_table_path is None:
            return None
        try:
            return FlatSeriesTable.load(self.flat_table_path)
        except OSError as exc:
            raise ConfigError(f"cannot read flat table: {exc}") from None

    def type_argument(self) -> HNType:
        if self.mu is None:
            return HNType([(self.n, self.k)])
        try:
            entries = [Fraction(e) for e in self.mu.replace(" ", "").split(",")]
            mu = HNType.from_entries(entries)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad --mu {self.mu!r}: {exc}") from None
        if mu.n != self.n:
            raise ConfigError(f"--mu has {mu.n} entries but --n is {self.n}")
        return mu


def _sign_arg(text: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if text not in table:
        raise argparse.ArgumentTypeError(f"sign must be +1 or -1, got {text!r}")
    return table[text]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="rank (default 2)")
    common.add_argument("--k", type=int, default=0, help="degree, orientable surfaces only (default 0)")
    common.add_argument("--ell", type=int, default=1, help="number of handles (default 1)")
    common.add_argument("--i", type=int, default=0, choices=(0, 1, 2), help="0 orientable, 1 or 2 crosscap type")
    common.add_argument("--max-codim", type=int, default=12, help="codimension bound (default 12)")
    common.add_argument("--degree", type=int, default=20, help="series truncation degree (default 20)")
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--trials", type=int, default=1000, help="trials per configuration (default 1000)")
    common.add_argument("--tol", type=float, default=1e-9, help="residual tolerance (default 1e-9)")
    common.add_argument("--flat-table", dest="flat_table", metavar="PATH", help="flat-series table file")
    common.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")
    common.add_argument("--strict", action="store_true", help="exit 3 when flat-series data is missing")
    common.add_argument("--sign", type=_sign_arg, default=None, help="bundle sign on a nonorientable surface")
    common.add_argument("--mu", default=None, help="type as comma-separated entries, e.g. 1,0,-1")

    parser = argparse.ArgumentParser(
        prog="ymstrata", description="Yang-Mills strata, series and representation-variety checks."
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("strata", parents=[common], help="list strata with codimensions")
    sub.add_parser("series", parents=[common], help="equivariant Poincare series")
    sub.add_parser("verify", parents=[common], help="run the randomized property suite")
    sub.add_parser("witness", parents=[common], help="construct a point in a stratum")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        subcommand=args.subcommand,
        n=args.n,
        k=args.k,
        ell=args.ell,
        i=args.i,
        max_codim=args.max_codim,
        degree=args.degree,
        seed=args.seed,
        trials=args.trials,
        tol=args.tol,
        flat_table_path=args.flat_table,
        output_format=args.output_format,
        strict=args.strict,
        sign=args.sign,
        mu=args.mu,
    )
    cfg.validate()
    return cfg


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.output_format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)


def strata_records(cfg: RunConfig) -> list[StratumRecord]:
    surface = cfg.surface
    if surface.orientable:
        return [StratumRecord.orientable(mu, surface) for mu in enumerate_types(cfg.n, cfg.k, surface, cfg.max_codim)]
    records = []
    for cls in enumerate_symmetric(cfg.n, cfg.i, surface, cfg.max_codim):
        for sign in cls.signs:
            if sign in cfg.signs:
                records.append(StratumRecord.nonorientable(cls, sign, surface))
    return records


def cmd_strata(cfg: RunConfig) -> int:
    records = strata_records(cfg)
    surface = cfg.surface
    zero = sorted({str(r.mu) for r in records if r.classification == SymmetricClass.ZERO_BLOCK.name})
    paired = [r for r in records if r.classification not in (None, SymmetricClass.ZERO_BLOCK.name)]
    summary = {"strata": len(records)}
    if not surface.orientable:
        summary.update(zero_block_types=len(zero), paired_strata=len(paired))
    payload = {
        "n": cfg.n,
        "surface": {"ell": cfg.ell, "cross": cfg.i},
        "max_codim": cfg.max_codim,
        "records": [r.as_dict() for r in records],
        "summary": summary,
    }
    if surface.orientable:
        head = f"Strata of U({cfg.n}) bundles of degree {cfg.k} over {surface}, d <= {cfg.max_codim}"
        rows = [["type", "d", "lambda"]] + [[str(r.mu), str(r.complex_codim), str(r.real_codim)] for r in records]
        foot = f"{len(records)} strata"
    else:
        head = f"Strata of U({cfg.n}) bundles over {surface}, d <= {cfg.max_codim}"
        rows = [["type", "sign", "class", "d", "lambda"]] + [
            [str(r.mu), f"{r.bundle_sign:+d}", r.classification, str(r.complex_codim), str(r.real_codim)]
            for r in records
        ]
        foot = (
            f"{len(records)} strata: {len(zero)} zero-block types on "
            f"{len(cfg.signs)} bundle(s), {len(paired)} paired"
        )
    _emit(cfg, payload, "\n".join([head, _table(rows), foot]))
    return EXIT_OK


def _series_json(s) -> dict | str:
    return {"unknown": s.reason} if isinstance(s, Unknown) else s.to_json()


def cmd_series(cfg: RunConfig) -> int:
    surface = cfg.surface
    engine = VssEngine()
    D = cfg.degree
    lines: list[str] = []
    payload: dict = {"n": cfg.n, "surface": {"ell": cfg.ell, "cross": cfg.i}, "degree": D}
    missing = False
    if surface.orientable:
        g = surface.genus
        bg = bg_series(cfg.n, g, D)
        vss = engine.vss(cfg.n, cfg.k, g, D)
        report = morse_series(cfg.n, cfg.k, surface, None, D, engine)
        diff = bg - report.total
        lines.append(f"P_t(BG) = {bg}")
        lines.append(f"P_t(V_ss(n={cfg.n}, k={cfg.k})) = {vss}")
        for record, series in report.terms:
            lines.append(f"  t^{record.real_codim} * P_t{record.mu} = t^{record.real_codim} * ({series})")
        lines.append(f"sum over strata = {report.total}")
        lines.append("difference = 0" if diff.is_zero() else f"difference = {diff}")
        payload.update(
            k=cfg.k,
            bg=bg.to_json(),
            vss=vss.to_json(),
            terms=[{"record": r.as_dict(), "series": s.to_json()} for r, s in report.terms],
            total=report.total.to_json(),
            difference=diff.to_json(),
        )
    else:
        table = cfg.flat_table()
        bundles = []
        for sign in cfg.signs:
            report = morse_series(cfg.n, sign, surface, table, D, engine)
            lines.append(f"bundle {sign:+d} over {surface}:")
            for record, series in report.terms:
                if not isinstance(series, Unknown):
                    lines.append(f"  t^{record.real_codim} * P_t{record.mu} = t^{record.real_codim} * ({series})")
            for record, unknown in report.unknown:
                lines.append(f"  UNKNOWN term t^{record.real_codim} for {record.mu}: {unknown.reason}")
            suffix = "" if report.complete else f" (excluding {len(report.unknown)} unknown term(s))"
            lines.append(f"  morse series{suffix} = {report.total}")
            missing = missing or not report.complete
            bundles.append(
                {
                    "sign": sign,
                    "terms": [{"record": r.as_dict(), "series": _series_json(s)} for r, s in report.terms],
                    "unknown": [{"record": r.as_dict(), "reason": u.reason} for r, u in report.unknown],
                    "total": report.total.to_json(),
                    "complete": report.complete,
                }
            )
        payload["bundles"] = bundles
    _emit(cfg, payload, "\n".join(lines))
    if missing and cfg.strict:
        print("missing flat-series data (strict mode)", file=sys.stderr)
        return EXIT_MISSING_FLAT
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    report = run_verify(seed=cfg.seed or 0, trials=cfg.trials, tol=cfg.tol)
    _emit(cfg, report.to_json(), report.to_text())
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_witness(cfg: RunConfig) -> int:
    mu = cfg.type_argument()
    point = witness_point(mu, cfg.ell, cfg.i, cfg.sign, rng=cfg.seed)
    report = membership(point, cfg.tol)
    if cfg.i:
        report = report.merged(det_reduction_check(point, mu, cfg.tol))
    payload = {"point": point_to_json(point), "report": report.to_json()}
    lines = [
        f"witness {point.kind.value} over {point.group_tag} for type {mu} on {cfg.surface}",
        f"max residual {report.max_residual:.3e} ({'pass' if report.passed else 'FAIL'} at tol {cfg.tol:.0e})",
    ]
    if cfg.i:
        lines.append(f"bundle sign {bundle_sign(point):+d}")
    worst = report.worst()
    if worst:
        lines.append(f"largest residual: {worst[0]} = {worst[1]:.3e}")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMANDS = {"strata": cmd_strata, "series": cmd_series, "verify": cmd_verify, "witness": cmd_witness}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        cfg = _config(args)
        return COMMANDS[cfg.subcommand](cfg)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
