"""Fixed-weight Monte-Carlo decoding experiments.

Errors are added to the all-zero codeword. The pattern for ``(weight,
trial)`` comes from its own seeded substream, so any trial can be
regenerated alone and trials can run in any order.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

from .code import CodeParams, LdpcCode, read_code, sample_regular_code
from .decoder import ThresholdSchedule, decode_multi
from .rng import make_rng


class ConfigError(ValueError):
    pass


class PairingError(RuntimeError):
    pass


@dataclass
class SimConfig:
    weights: Sequence[int]
    trials: int
    schedule: ThresholdSchedule = field(default_factory=lambda: ThresholdSchedule((0,)))
    seed: int = 0
    params: CodeParams | None = None
    code_seed: int = 0
    code_girth: int = 4
    code_path: str | None = None
    order: str = "sweep"

    def __post_init__(self):
        if not isinstance(self.schedule, ThresholdSchedule):
            self.schedule = ThresholdSchedule(self.schedule)
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.weights or min(self.weights) < 1:
            raise ConfigError("weights must be >= 1")
        if (self.params is None) == (self.code_path is None):
            raise ConfigError("give exactly one of params or code_path")

    def load_code(self) -> LdpcCode:
        if self.code_path is not None:
            code = read_code(self.code_path)
        else:
            code = sample_regular_code(self.params, self.code_seed, girth=self.code_girth)
        self.schedule.validate_for(code.ell)
        if max(self.weights) > code.N:
            raise ConfigError(f"weight {max(self.weights)} exceeds N={code.N}")
        return code


@dataclass
class SimRecord:
    weight: int
    trial: int
    success: bool
    replacements: int
    passes: int
    final_syndrome_weight: int
    phase_boundaries: list[list[int]]  # [threshold, replacements in that phase]
    pattern_hash: str

    def to_dict(self) -> dict:
        return asdict(self)


def error_pattern(seed: int, N: int, q: int, weight: int, trial: int) -> list[int]:
    rng = make_rng(seed, weight, trial)
    e = [0] * N
    for p in sorted(rng.sample(range(N), weight)):
        e[p] = rng.randrange(1, q)
    return e


def pattern_digest(e: Sequence[int]) -> str:
    return hashlib.sha256(",".join(map(str, e)).encode()).hexdigest()[:16]


def _run_trial(code: LdpcCode, schedule, seed: int, order: str, weight: int, trial: int) -> SimRecord:
    e = error_pattern(seed, code.N, code.params.q, weight, trial)
    res = decode_multi(code, e, schedule, order=order)
    return SimRecord(
        weight=weight,
        trial=trial,
        success=res.failure == 0 and not any(res.word),
        replacements=res.replacements,
        passes=res.passes,
        final_syndrome_weight=res.syndrome_weight,
        phase_boundaries=[[theta, n] for theta, _, n in res.phases],
        pattern_hash=pattern_digest(e),
    )


def _run_chunk(code, schedule, seed, order, jobs):
    return [_run_trial(code, schedule, seed, order, w, t) for w, t in jobs]


def run_simulation(config: SimConfig, code: LdpcCode | None = None, workers: int = 1) -> Iterator[SimRecord]:
    """One record per (weight, trial), in weight-then-trial order."""
    if code is None:
        code = config.load_code()
    jobs = [(w, t) for w in config.weights for t in range(config.trials)]
    args = (code, config.schedule, config.seed, config.order)
    if workers <= 1:
        for w, t in jobs:
            yield _run_trial(*args, w, t)
        return
    size = max(1, len(jobs) // (4 * workers))
    chunks = [jobs[k : k + size] for k in range(0, len(jobs), size)]
    with ProcessPoolExecutor(workers) as pool:
        futures = [pool.submit(_run_chunk, *args, chunk) for chunk in chunks]
        for fut in futures:
            yield from fut.result()


@dataclass
class ComparisonRow:
    weight: int
    trials: int
    successes: list[int]

    def rates(self) -> list[float]:
        return [s / self.trials for s in self.successes]


def compare_schedules(
    config: SimConfig,
    schedules: Sequence[ThresholdSchedule | Sequence[int]],
    code: LdpcCode | None = None,
    workers: int = 1,
) -> list[ComparisonRow]:
    """Decode the same error patterns under every schedule; per-weight success counts."""
    if len(schedules) < 2:
        raise ConfigError("need at least two schedules to compare")
    if code is None:
        code = config.load_code()
    columns = []
    for sched in schedules:
        cfg = SimConfig(
            weights=config.weights, trials=config.trials, schedule=sched, seed=config.seed,
            params=config.params, code_seed=config.code_seed, code_girth=config.code_girth,
            code_path=config.code_path, order=config.order,
        )
        cfg.schedule.validate_for(code.ell)
        columns.append(list(run_simulation(cfg, code, workers)))
    for col in columns[1:]:
        if [r.pattern_hash for r in col] != [r.pattern_hash for r in columns[0]]:
            raise PairingError("schedules saw different error patterns")
    rows = []
    for w in config.weights:
        counts = [sum(r.success for r in col if r.weight == w) for col in columns]
        rows.append(ComparisonRow(w, config.trials, counts))
    return rows
