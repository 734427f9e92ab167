"""Declarative registry of verifiable integral identities.

Each identity is stored as an IdentityCase: a sampler that draws parameter
points satisfying the identity's hypotheses, a pair of independent LHS/RHS
evaluators, and a tolerance.  verify_identity evaluates both sides on a batch
of points and aggregates residuals; evaluator errors are recorded as
failures, never aborting the batch.
"""

from __future__ import annotations

import os
import time
import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import QContext
from .errors import ConfigError

__all__ = [
    "EvalSettings",
    "ParameterPoint",
    "Constraint",
    "IdentityCase",
    "Failure",
    "VerificationResult",
    "builtin_registry",
    "sample_parameters",
    "verify_identity",
]


def _env_order(default: int) -> int:
    raw = os.environ.get("SARANFK_DEFAULT_ORDER")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"SARANFK_DEFAULT_ORDER must be an integer, got {raw!r}") from e


@dataclass(frozen=True)
class EvalSettings:
    """Numerical knobs shared by all identity evaluations.

    quad_order applies to 1-D and 2-D classical integrals, quad_order_triple
    per axis of 3-D ones and quad_order_quad per axis of 4-D ones.
    jackson_scale stretches every q-lattice cutoff (refinement knob).
    """

    q: float = 0.5
    quad_order: int = 64
    quad_order_triple: int = 32
    quad_order_quad: int = 24
    series_tol: float = 1e-12
    jackson_tail_tol: float = 1e-10
    jackson_scale: float = 1.0

    @property
    def qctx(self) -> QContext:
        return QContext(q=self.q, jackson_tail_tol=self.jackson_tail_tol)

    def refined(self) -> "EvalSettings":
        """Doubled quadrature orders and Jackson cutoffs.

        Series tolerances are left alone: at the rounding floor, re-stopping
        a series changes the residual by noise, which is what the refinement
        comparison must not measure.
        """
        return EvalSettings(
            q=self.q,
            quad_order=min(256, self.quad_order * 2),
            quad_order_triple=min(256, self.quad_order_triple * 2),
            quad_order_quad=min(128, self.quad_order_quad * 2),
            series_tol=self.series_tol,
            jackson_tail_tol=self.jackson_tail_tol,
            jackson_scale=self.jackson_scale * 2.0,
        )

    def with_q(self, q: float) -> "EvalSettings":
        return EvalSettings(
            q=q,
            quad_order=self.quad_order,
            quad_order_triple=self.quad_order_triple,
            quad_order_quad=self.quad_order_quad,
            series_tol=self.series_tol,
            jackson_tail_tol=self.jackson_tail_tol,
            jackson_scale=self.jackson_scale,
        )

    @staticmethod
    def default() -> "EvalSettings":
        order = _env_order(64)
        return EvalSettings(
            quad_order=order,
            quad_order_triple=max(8, order // 2),
            quad_order_quad=max(8, order // 3 + 3),
        )


@dataclass(frozen=True)
class ParameterPoint:
    """One sampled instance of an identity: named parameter values plus the
    function arguments (x, y, z, ...)."""

    values: dict
    arguments: dict

    def flat(self) -> dict:
        return {**self.values, **self.arguments}


@dataclass(frozen=True)
class Constraint:
    name: str
    check: Callable[[ParameterPoint], bool]


Evaluator = Callable[[ParameterPoint, EvalSettings], complex]


@dataclass(frozen=True)
class IdentityCase:
    """Registry entry pairing a parameter sampler with LHS/RHS evaluators."""

    id: str
    anchor: str
    constraints: tuple
    sampler: Callable[[np.random.Generator], ParameterPoint]
    lhs: Evaluator
    rhs: Evaluator
    tol: float
    cost_class: str  # cheap | single-integral | triple-integral | q-lattice
    uses_q: bool = False
    default_samples: int = 10


@dataclass(frozen=True)
class Failure:
    point: ParameterPoint
    residual: float
    message: str = ""


@dataclass(frozen=True)
class VerificationResult:
    id: str
    samples: int
    max_rel_residual: float
    failures: tuple
    wall_time: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_rel_residual <= self.tol and not self.failures


def _case_rng(case_id: str, seed: int) -> np.random.Generator:
    return np.random.default_rng((seed, zlib.crc32(case_id.encode())))


REJECTION_CAP = 2000


def sample_parameters(
    case: IdentityCase, seed: int, count: int
) -> list[ParameterPoint]:
    """Deterministic batch of parameter points satisfying the case's
    constraints, by rejection sampling with a hard attempt cap."""
    if count > 10_000:
        raise ConfigError("sample count capped at 10000")
    rng = _case_rng(case.id, seed)
    points: list[ParameterPoint] = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > REJECTION_CAP * count:
            raise ConfigError(
                f"{case.id}: rejection cap exceeded; sampler and constraints disagree"
            )
        pt = case.sampler(rng)
        if all(c.check(pt) for c in case.constraints):
            points.append(pt)
    return points


def verify_identity(
    case: IdentityCase,
    seed: int = 42,
    count: int | None = None,
    tol_override: float | None = None,
    settings: EvalSettings | None = None,
) -> VerificationResult:
    """Evaluate LHS and RHS at sampled points; the residual is
    |LHS-RHS| / (1 + |LHS|).  Per-point evaluator errors become failures with
    a diagnostic instead of aborting the batch."""
    settings = settings or EvalSettings.default()
    count = count if count is not None else case.default_samples
    tol = tol_override if tol_override is not None else case.tol
    points = sample_parameters(case, seed, count)
    t0 = time.perf_counter()
    worst = 0.0
    failures: list[Failure] = []
    for pt in points:
        try:
            lhs = complex(case.lhs(pt, settings))
            rhs = complex(case.rhs(pt, settings))
        except Exception as exc:
            failures.append(Failure(pt, float("nan"), f"{type(exc).__name__}: {exc}"))
            continue
        residual = abs(lhs - rhs) / (1.0 + abs(lhs))
        worst = max(worst, residual)
        if residual > tol:
            failures.append(Failure(pt, residual, "residual above tolerance"))
    return VerificationResult(
        id=case.id,
        samples=len(points),
        max_rel_residual=worst,
        failures=tuple(failures),
        wall_time=time.perf_counter() - t0,
        tol=tol,
    )


def builtin_registry() -> tuple[IdentityCase, ...]:
    """Every verifiable identity, one immutable entry per id."""
    from . import classical_cases, q_cases

    cases = (*classical_cases.build(), *q_cases.build())
    ids = [c.id for c in cases]
    if len(ids) != len(set(ids)):
        raise RuntimeError("duplicate identity ids in registry")
    return cases


def registry_lookup(case_id: str) -> IdentityCase:
    for case in builtin_registry():
        if case.id == case_id:
            return case
    raise ConfigError(f"unknown identity id {case_id!r}")
