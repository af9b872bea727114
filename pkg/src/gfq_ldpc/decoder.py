"""Majority (symbol-flipping) decoding with one or several thresholds.

Each check ``j`` adjacent to symbol ``i`` with coefficient ``h`` proposes the
error estimate ``e_j = S_j / h``: subtracting it from ``r[i]`` satisfies
check ``j``. A zero estimate means the check is already satisfied. With
``a`` the size of the largest group of equal nonzero estimates and ``z`` the
number of zero estimates, the symbol is replaced when ``a - z > theta``.
A replacement changes the syndrome weight by exactly ``z - a``.
"""

from __future__ import annotations

import heapq
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .code import LdpcCode, Syndrome, Word, syndrome, syndrome_update


class ScheduleError(ValueError):
    pass


class DecoderInternalError(RuntimeError):
    """Raised when a decode exceeds its sweep cap; termination is guaranteed otherwise."""


@dataclass(frozen=True)
class ThresholdSchedule:
    thresholds: tuple[int, ...]

    def __init__(self, thresholds: Iterable[int]):
        object.__setattr__(self, "thresholds", tuple(int(t) for t in thresholds))
        ts = self.thresholds
        if not ts or ts[0] != 0:
            raise ScheduleError(f"schedule {ts} must start at 0")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ScheduleError(f"schedule {ts} is not strictly increasing")

    @classmethod
    def full(cls, ell: int) -> "ThresholdSchedule":
        return cls(range(ell))

    @classmethod
    def parse(cls, text: str) -> "ThresholdSchedule":
        return cls(int(t) for t in text.split(",") if t.strip())

    def validate_for(self, ell: int) -> "ThresholdSchedule":
        if self.thresholds[-1] >= ell:
            raise ScheduleError(f"largest threshold {self.thresholds[-1]} must be < ell={ell}")
        return self

    def __len__(self) -> int:
        return len(self.thresholds)

    def __iter__(self):
        return iter(self.thresholds)

    def __str__(self) -> str:
        return ",".join(map(str, self.thresholds))


@dataclass(frozen=True)
class MessageSummary:
    a: int
    v: int
    z: int
    estimate: int = 0  # common error estimate of the winning group; 0 when a == 0

    @property
    def score(self) -> int:
        return self.a - self.z


@dataclass(frozen=True)
class TraceEvent:
    position: int
    old: int
    new: int
    threshold: int
    syndrome_weight_after: int
    a: int
    z: int
    true_error_weight_after: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["true_error_weight_after"] is None:
            del d["true_error_weight_after"]
        return d


@dataclass
class DecodeResult:
    word: Word
    failure: int
    trace: list[TraceEvent]
    passes: int
    replacements: int
    syndrome_weight: int
    initial_syndrome_weight: int
    initial_error_weight: int | None = None
    # (threshold, syndrome weight at phase start, replacements in phase)
    phases: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.failure == 0


def compute_messages(code: LdpcCode, r: Sequence[int], S: Syndrome, i: int) -> MessageSummary:
    """Summarise the ell check messages arriving at symbol ``i``.

    Ties between equally large groups of nonzero estimates go to the
    smallest estimate (as an integer).
    """
    gf = code.field
    values = S.values
    counts: dict[int, int] = {}
    z = 0
    for j, h in code.var_adjacency[i]:
        s = values[j]
        if s == 0:
            z += 1
        else:
            e = gf.div(s, h)
            counts[e] = counts.get(e, 0) + 1
    if not counts:
        return MessageSummary(0, r[i], z)
    a, neg_e = max((c, -e) for e, c in counts.items())
    e = -neg_e
    return MessageSummary(a, gf.sub(r[i], e), z, e)


def replacement_decision(ms: MessageSummary, theta: int) -> int | None:
    if ms.a - ms.z > theta:
        return ms.v
    return None


class _State:
    def __init__(self, code: LdpcCode, r: Sequence[int], reference: Sequence[int] | None):
        if len(r) != code.N:
            raise ValueError(f"word length {len(r)} != N={code.N}")
        self.code = code
        self.word = list(r)
        self.S = syndrome(code, self.word)
        self.initial_weight = self.S.weight
        self.reference = None if reference is None else list(reference)
        self.errors = (
            None
            if reference is None
            else sum(1 for x, y in zip(self.word, self.reference) if x != y)
        )
        self.initial_errors = self.errors
        self.trace: list[TraceEvent] = []
        self.passes = 0
        self.phases: list[tuple[int, int, int]] = []

    def apply(self, i: int, new: int, ms: MessageSummary, theta: int) -> None:
        old = self.word[i]
        syndrome_update(self.code, self.S, i, old, new)
        self.word[i] = new
        if self.reference is not None:
            ref = self.reference[i]
            self.errors += (new != ref) - (old != ref)
        self.trace.append(
            TraceEvent(i, old, new, theta, self.S.weight, ms.a, ms.z, self.errors)
        )

    def result(self) -> DecodeResult:
        return DecodeResult(
            word=self.word,
            failure=int(self.S.weight != 0),
            trace=self.trace,
            passes=self.passes,
            replacements=len(self.trace),
            syndrome_weight=self.S.weight,
            initial_syndrome_weight=self.initial_weight,
            initial_error_weight=self.initial_errors,
            phases=self.phases,
        )


def _sweep_phase(state: _State, theta: int, max_sweeps: int) -> None:
    code = state.code
    word = state.word
    S = state.S
    sweeps = 0
    changed = True
    while changed:
        if sweeps >= max_sweeps:
            raise DecoderInternalError(f"no convergence after {max_sweeps} sweeps at theta={theta}")
        changed = False
        sweeps += 1
        for i in range(code.N):
            if S.weight == 0:
                break
            ms = compute_messages(code, word, S, i)
            new = replacement_decision(ms, theta)
            if new is not None:
                state.apply(i, new, ms, theta)
                changed = True
    state.passes += sweeps


def _sorted_phase(state: _State, theta: int, max_steps: int) -> None:
    """Best-first variant: always replace the symbol with the largest ``a - z``."""
    code = state.code
    word = state.word
    S = state.S
    version = [0] * code.N
    heap = []
    summaries = {}
    for i in range(code.N):
        ms = compute_messages(code, word, S, i)
        summaries[i] = ms
        heap.append((-ms.score, i, 0))
    heapq.heapify(heap)
    steps = 0
    while heap:
        neg_score, i, ver = heapq.heappop(heap)
        if ver != version[i]:
            continue
        ms = summaries[i]
        new = replacement_decision(ms, theta)
        if new is None:
            break
        steps += 1
        if steps > max_steps:
            raise DecoderInternalError(f"sorted phase exceeded {max_steps} replacements")
        state.apply(i, new, ms, theta)
        touched = {p for j, _ in code.var_adjacency[i] for p, _ in code.checks[j]}
        for p in touched:
            version[p] += 1
            ms_p = compute_messages(code, word, S, p)
            summaries[p] = ms_p
            heapq.heappush(heap, (-ms_p.score, p, version[p]))
    state.passes += 1


def _run(code, r, thresholds, reference, order, max_sweeps) -> DecodeResult:
    if max_sweeps is None:
        max_sweeps = 10 * code.N
    state = _State(code, r, reference)
    for theta in thresholds:
        start_weight = state.S.weight
        before = len(state.trace)
        if order == "sweep":
            _sweep_phase(state, theta, max_sweeps)
        elif order == "sorted":
            _sorted_phase(state, theta, max_sweeps * code.N)
        else:
            raise ValueError(f"unknown order {order!r}")
        state.phases.append((theta, start_weight, len(state.trace) - before))
    return state.result()


def decode_single(
    code: LdpcCode,
    r: Sequence[int],
    theta: int = 0,
    reference: Sequence[int] | None = None,
    *,
    order: str = "sweep",
    max_sweeps: int | None = None,
) -> DecodeResult:
    """Sweep positions in index order, replacing symbols with ``a - z > theta``.

    Replacements take effect immediately, so later positions in the same
    sweep see the updated syndrome. Sweeps repeat until one makes no change.
    """
    if not 0 <= theta < code.ell:
        raise ScheduleError(f"theta={theta} outside [0, {code.ell})")
    return _run(code, r, (theta,), reference, order, max_sweeps)


def decode_multi(
    code: LdpcCode,
    r: Sequence[int],
    schedule: ThresholdSchedule | Iterable[int],
    reference: Sequence[int] | None = None,
    *,
    order: str = "sweep",
    max_sweeps: int | None = None,
) -> DecodeResult:
    """Run single-threshold decoding for each threshold, largest first, down to 0."""
    if not isinstance(schedule, ThresholdSchedule):
        schedule = ThresholdSchedule(schedule)
    schedule.validate_for(code.ell)
    return _run(code, r, tuple(reversed(schedule.thresholds)), reference, order, max_sweeps)
