"""Batch sweeps over the near-commuting perturbation size."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import DEFAULT_CONFIG, NumericalError, ToleranceConfig
from .randgen import GenSpec, InvalidSpec, mix_seed, near_commuting_pair
from .verify import classify_gaps, proof_chain_report

__all__ = ["SweepSpec", "SweepRow", "run_sweep"]


@dataclass(frozen=True)
class SweepSpec:
    """A grid of perturbation sizes with repeated trials per size.

    base.seed acts as the master seed; trial (i, t) runs with
    mix_seed(base.seed, i * trials_per_epsilon + t).
    """

    base: GenSpec
    epsilons: tuple[float, ...]
    trials_per_epsilon: int

    def __post_init__(self) -> None:
        if len(self.epsilons) == 0:
            raise InvalidSpec("epsilons must be non-empty")
        if any(e < 0.0 for e in self.epsilons):
            raise InvalidSpec("epsilons must be >= 0")
        if any(b <= a for a, b in zip(self.epsilons, self.epsilons[1:])):
            raise InvalidSpec("epsilons must be strictly increasing")
        if self.trials_per_epsilon < 1:
            raise InvalidSpec("trials_per_epsilon must be >= 1")


@dataclass(frozen=True)
class SweepRow:
    """One (epsilon, trial) outcome; verdict is "error:<Type>" and the
    gaps are NaN when that trial failed numerically."""

    epsilon: float
    seed: int
    mean_gap: float
    commutator_gap: float
    trace_gap: float
    verdict: str


def run_sweep(spec: SweepSpec, cfg: ToleranceConfig = DEFAULT_CONFIG) -> list[SweepRow]:
    """One row per (epsilon, trial), in deterministic grid order.

    Numerical failures are recorded per row rather than aborting the
    batch.
    """
    rows: list[SweepRow] = []
    for ei, eps in enumerate(spec.epsilons):
        for trial in range(spec.trials_per_epsilon):
            seed = mix_seed(spec.base.seed, ei * spec.trials_per_epsilon + trial)
            gspec = GenSpec(
                dim=spec.base.dim,
                seed=seed,
                cond_target=spec.base.cond_target,
                family="near_commuting",
                epsilon=eps,
            )
            try:
                pair = near_commuting_pair(gspec, cfg)
                report = proof_chain_report(pair, cfg)
                verdict = classify_gaps(report.mean_gap, report.commutator_gap, cfg)
                rows.append(SweepRow(
                    epsilon=eps,
                    seed=seed,
                    mean_gap=report.mean_gap,
                    commutator_gap=report.commutator_gap,
                    trace_gap=report.trace_gap,
                    verdict=verdict.value,
                ))
            except NumericalError as exc:
                rows.append(SweepRow(
                    epsilon=eps,
                    seed=seed,
                    mean_gap=math.nan,
                    commutator_gap=math.nan,
                    trace_gap=math.nan,
                    verdict=f"error:{type(exc).__name__}",
                ))
    return rows
