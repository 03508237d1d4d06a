"""Randomized verification of the representation-variety identities.

Every configuration ``(n, ell, i)`` draws from its own generator, seeded from
``(seed, n, ell, i)``, so reports do not depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from ..hn_types import HNType, Surface, enumerate_symmetric, enumerate_types
from ..poincare import EmptyStratumError
from .maps import embed_fixed, phi, phi_section, sample_orbit, tau_involution
from .obstruction import (
    obstruction_laws,
    obstruction_so3,
    random_flat_so3,
    random_flat_so3_nonorientable,
)
from .points import DEFAULT_TOL, GroupTuplePoint, Kind, membership
from .witness import bundle_sign, det_reduction_check, witness_point

__all__ = ["CheckResult", "VerifyReport", "identity_trials", "witness_sweep", "obstruction_trials", "run_verify"]

# per-check ceilings; a smaller user tolerance overrides them
SECTION_TOL = 1e-10
EXACT_TOL = 1e-12
WITNESS_TOL = 1e-10
# failures below this are floating-point noise, not broken identities
NOISE_FLOOR = 1e-8


@dataclass
class CheckResult:
    name: str
    tol: float
    trials: int = 0
    failures: int = 0
    max_residual: float = 0.0

    def record(self, residual: float, ok: bool | None = None) -> None:
        self.trials += 1
        self.max_residual = max(self.max_residual, float(residual))
        if not (residual < self.tol if ok is None else ok):
            self.failures += 1

    def absorb(self, other: CheckResult) -> None:
        self.trials += other.trials
        self.failures += other.failures
        self.max_residual = max(self.max_residual, other.max_residual)

    @property
    def passed(self) -> bool:
        return self.trials > 0 and self.failures == 0

    @property
    def tolerance_bound(self) -> bool:
        return not self.passed and self.max_residual < NOISE_FLOOR

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "tol": self.tol,
            "trials": self.trials,
            "failures": self.failures,
            "max_residual": self.max_residual,
            "pass": self.passed,
            "tolerance_bound": self.tolerance_bound,
        }


@dataclass
class VerifyReport:
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"seed": self.seed, "pass": self.passed, "checks": [c.to_json() for c in self.checks]}

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            note = "  (tolerance-bound: residuals at floating-point noise)" if c.tolerance_bound else ""
            lines.append(
                f"{status}  {c.name:<28} trials={c.trials:<6} failures={c.failures:<5} "
                f"max_residual={c.max_residual:.3e} tol={c.tol:.0e}{note}"
            )
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} (seed {self.seed})")
        return "\n".join(lines)


def _merge(into: dict[str, CheckResult], results: dict[str, CheckResult]) -> None:
    for name, res in results.items():
        if name in into:
            into[name].absorb(res)
        else:
            into[name] = res


MAX_SLOPE = 3


@lru_cache(maxsize=None)
def _orientable_types(n: int, genus: int) -> tuple[HNType, ...]:
    # every type with |k| <= 3 and entries in [-3, 3]; the codimension bound
    # below is large enough not to cut any of them
    bound = n * n * (2 * MAX_SLOPE + genus)
    return tuple(
        t
        for k in range(-MAX_SLOPE, MAX_SLOPE + 1)
        for t in enumerate_types(n, k, Surface(genus), bound)
        if max(abs(e) for e in t.entries()) <= MAX_SLOPE
    )


@lru_cache(maxsize=None)
def _symmetric_types(n: int, ell: int, i: int, bound: int = 12):
    return tuple(enumerate_symmetric(n, i, Surface(ell, i), bound))


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *key]))


def identity_trials(n: int, ell: int, i: int, trials: int, seed: int, tol: float = DEFAULT_TOL) -> dict[str, CheckResult]:
    """Random trials of the map identities over ``U(n)`` and ``Sigma^ell_i``.

    Symmetric points are orbit-randomized sections of random points over the
    double cover; nonorientable points are orbit-randomized witnesses.
    """
    rng = _rng(seed, n, ell, i)
    genus = 2 * ell + i - 1
    types = _orientable_types(n, genus)
    sym = _symmetric_types(n, ell, i)
    checks = {
        "phi_image": CheckResult("phi_image", tol),
        "section_roundtrip": CheckResult("section_roundtrip", min(tol, SECTION_TOL)),
        "section_membership": CheckResult("section_membership", tol),
        "tau_membership": CheckResult("tau_membership", tol),
        "tau_squared": CheckResult("tau_squared", min(tol, EXACT_TOL)),
        "embed_membership": CheckResult("embed_membership", tol),
        "embed_tau_fixed": CheckResult("embed_tau_fixed", min(tol, EXACT_TOL)),
        "diagonal_orbit_tau_fixed": CheckResult("diagonal_orbit_tau_fixed", min(tol, EXACT_TOL)),
    }
    for _ in range(trials):
        mu = types[rng.integers(len(types))]
        q = witness_point(mu, genus, 0, rng=rng)
        if mu.k == 0 and mu.is_semistable:
            q = GroupTuplePoint(q.group_tag, Kind.FLAT_0, q.V)
        section = phi_section(q, i)
        checks["section_roundtrip"].record(phi(section).distance(q))
        z = sample_orbit(section, rng)
        checks["section_membership"].record(membership(z, tol).max_residual)
        checks["phi_image"].record(membership(phi(z), tol).max_residual)
        tz = tau_involution(z)
        checks["tau_membership"].record(membership(tz, tol).max_residual)
        checks["tau_squared"].record(tau_involution(tz).distance(z))

        cls = sym[rng.integers(len(sym))]
        sign = cls.signs[rng.integers(len(cls.signs))]
        x = sample_orbit(witness_point(cls, ell, i, sign, rng=rng), rng)
        e = embed_fixed(x)
        checks["embed_membership"].record(membership(e, tol).max_residual)
        checks["embed_tau_fixed"].record(tau_involution(e).distance(e))
        moved = sample_orbit(e, rng, diagonal=True)
        checks["diagonal_orbit_tau_fixed"].record(tau_involution(moved).distance(moved))
    return checks


def witness_sweep(
    max_n: int = 4, ells=(1, 2), crosses=(1, 2), bound: int = 12, seed: int = 0, tol: float = DEFAULT_TOL
) -> dict[str, CheckResult]:
    """Witnesses for every enumerated symmetric type and admissible sign, canonical and randomized."""
    checks = {
        "witness_membership": CheckResult("witness_membership", min(tol, WITNESS_TOL)),
        "witness_det_relation": CheckResult("witness_det_relation", min(tol, WITNESS_TOL)),
        "witness_sign": CheckResult("witness_sign", 0.5),
        "forbidden_sign_rejected": CheckResult("forbidden_sign_rejected", 0.5),
    }
    rng = _rng(seed, 0xC0DE)
    for n, ell, i in product(range(1, max_n + 1), ells, crosses):
        for cls in _symmetric_types(n, ell, i, bound):
            for sign in (1, -1):
                if sign not in cls.signs:
                    try:
                        witness_point(cls, ell, i, sign)
                    except EmptyStratumError:
                        checks["forbidden_sign_rejected"].record(0.0)
                    else:
                        checks["forbidden_sign_rejected"].record(1.0)
                    continue
                for source in (None, rng):
                    p = witness_point(cls, ell, i, sign, rng=source)
                    checks["witness_membership"].record(membership(p, tol).max_residual)
                    checks["witness_det_relation"].record(det_reduction_check(p, cls, tol).max_residual)
                    checks["witness_sign"].record(float(bundle_sign(p) != sign))
    return checks


def obstruction_trials(trials: int, seed: int, tol: float = DEFAULT_TOL) -> dict[str, CheckResult]:
    """SO(3) obstruction laws over random flat points."""
    rng = _rng(seed, 0x503)
    checks = {
        "so3_identity": CheckResult("so3_identity", 0.5),
        "so3_half_turn_pair": CheckResult("so3_half_turn_pair", 0.5),
        "so3_tau_law": CheckResult("so3_tau_law", 0.5),
        "so3_pullback_trivial": CheckResult("so3_pullback_trivial", 0.5),
        "so3_conjugation_invariant": CheckResult("so3_conjugation_invariant", 0.5),
        "so3_section_compatible": CheckResult("so3_section_compatible", 0.5),
    }
    eye = np.eye(3)
    ident = GroupTuplePoint("SO(3)", Kind.FLAT_0, (eye, eye))
    checks["so3_identity"].record(float(obstruction_so3(ident) != 1))
    pair = GroupTuplePoint("SO(3)", Kind.FLAT_0, (np.diag([1.0, -1, -1]), np.diag([-1.0, 1, -1])))
    checks["so3_half_turn_pair"].record(float(obstruction_so3(pair) != -1))
    for _ in range(trials):
        ell = int(rng.integers(1, 4))
        i = int(rng.integers(1, 3))
        q = random_flat_so3(2 * ell + i - 1, rng)
        y = sample_orbit(phi_section(q, i), rng)
        x = sample_orbit(random_flat_so3_nonorientable(ell, i, rng), rng)
        laws = obstruction_laws(y, (x,), tol)
        by_label = dict(laws.residuals)
        checks["so3_tau_law"].record(by_label["o'(tau y)=o'(y)^-1"])
        checks["so3_pullback_trivial"].record(by_label["o'(I x[0])=+1"])
        o_q = obstruction_so3(q)
        checks["so3_conjugation_invariant"].record(float(obstruction_so3(sample_orbit(q, rng)) != o_q))
        checks["so3_section_compatible"].record(float(obstruction_so3(y) != o_q))
    return checks


def _identity_job(args) -> dict[str, CheckResult]:
    return identity_trials(*args)


def run_verify(
    seed: int = 0,
    trials: int = 1000,
    tol: float = DEFAULT_TOL,
    ns=(1, 2, 3),
    ells=(1, 2, 3),
    crosses=(1, 2),
    workers: int = 1,
) -> VerifyReport:
    """The full property suite; deterministic for a fixed ``seed``."""
    jobs = [(n, ell, i, trials, seed, tol) for n, ell, i in product(ns, ells, crosses)]
    merged: dict[str, CheckResult] = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_identity_job, jobs):
                _merge(merged, result)
    else:
        for job in jobs:
            _merge(merged, _identity_job(job))
    _merge(merged, witness_sweep(seed=seed, tol=tol))
    _merge(merged, obstruction_trials(trials, seed, tol))
    return VerifyReport(seed, list(merged.values()))
