"""Brute-force checks of the combinatorics behind the decoder's guarantees.

Everything here enumerates directly over positions, values or error
patterns; none of it goes through :func:`decoder.compute_messages`, so it can
be used to cross-check the decoder.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Sequence

from .code import LdpcCode, syndrome
from .decoder import DecodeResult, ThresholdSchedule, decode_multi
from .radius import guaranteed_weight, w_sequence

DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    pass


class Verdict(str, enum.Enum):
    PASS = "pass"
    VACUOUS = "vacuous"
    FAIL = "fail"


def enumeration_budget() -> int:
    return int(os.environ.get("GFQ_LDPC_BUDGET", DEFAULT_BUDGET))


def pattern_count(N: int, q: int, w_max: int, w_min: int = 0) -> int:
    return sum(math.comb(N, w) * (q - 1) ** w for w in range(w_min, w_max + 1))


def _check_budget(n: int, budget: int | None) -> None:
    budget = enumeration_budget() if budget is None else budget
    if n > budget:
        raise BudgetExceededError(f"{n} patterns exceed the enumeration budget {budget}")


def iter_error_patterns(N: int, q: int, w: int) -> Iterator[list[int]]:
    """All weight-``w`` error vectors: positions lexicographic, then values ascending."""
    for support in combinations(range(N), w):
        for vals in product(range(1, q), repeat=w):
            e = [0] * N
            for p, v in zip(support, vals):
                e[p] = v
            yield e


# ---------------------------------------------------------------------------
# Edge census of the erroneous subgraph
# ---------------------------------------------------------------------------

@dataclass
class SubgraphCensus:
    W: int
    S_weight: int
    a_counts: list[int]  # a_counts[k-1]: unsatisfied checks with exactly k erroneous edges
    c: int
    e_A1: dict[int, int]
    e_C: dict[int, int]
    edges_A1: int
    edges_A_geq2: int
    edges_C: int
    ell: int

    @property
    def a1(self) -> int:
        return self.a_counts[0] if self.a_counts else 0

    @property
    def a_geq2(self) -> int:
        return sum(self.a_counts[1:])

    def edge_conservation(self) -> bool:
        return (
            self.W * self.ell == self.edges_A1 + self.edges_A_geq2 + self.edges_C
            and self.edges_A1 == self.a1
            and self.edges_A_geq2 >= 2 * self.a_geq2
            and sum(self.a_counts) == self.S_weight
            and sum(self.e_A1.values()) == self.a1
            and sum(self.e_C.values()) == self.edges_C
        )

    def counting_inequality(self) -> bool:
        return self.W * self.ell >= self.a1 + 2 * (self.S_weight - self.a1) + sum(self.e_C.values())

    def derived_inequality(self) -> bool:
        return self.a1 - sum(self.e_C.values()) >= 2 * self.S_weight - self.W * self.ell


def subgraph_census(code: LdpcCode, error: Sequence[int]) -> SubgraphCensus:
    S = syndrome(code, error)
    bad = [i for i, x in enumerate(error) if x]
    n0 = code.params.n0
    a_counts = [0] * n0
    c = 0
    edges_A1 = edges_A_geq2 = edges_C = 0
    e_A1 = {i: 0 for i in bad}
    e_C = {i: 0 for i in bad}
    for j, row in enumerate(code.checks):
        hit = [p for p, _ in row if error[p]]
        k = len(hit)
        if k == 0:
            continue
        if S.values[j]:
            a_counts[k - 1] += 1
            if k == 1:
                edges_A1 += 1
                e_A1[hit[0]] += 1
            else:
                edges_A_geq2 += k
        else:
            c += 1
            edges_C += k
            for p in hit:
                e_C[p] += 1
    return SubgraphCensus(
        W=len(bad), S_weight=S.weight, a_counts=a_counts, c=c, e_A1=e_A1, e_C=e_C,
        edges_A1=edges_A1, edges_A_geq2=edges_A_geq2, edges_C=edges_C, ell=code.ell,
    )


# ---------------------------------------------------------------------------
# Exhaustive single-symbol replacement search
# ---------------------------------------------------------------------------

def replacement_drops(code: LdpcCode, word: Sequence[int], i: int, S=None) -> dict[int, int]:
    """Syndrome-weight drop for every alternative value at position ``i``."""
    gf = code.field
    if S is None:
        S = syndrome(code, word)
    local = [(S.values[j], h) for j, h in code.var_adjacency[i]]
    before = sum(1 for s, _ in local if s)
    old = word[i]
    drops = {}
    for v in range(code.params.q):
        if v == old:
            continue
        delta = gf.sub(v, old)
        after = sum(1 for s, h in local if gf.add(s, gf.mul(h, delta)))
        drops[v] = before - after
    return drops


def best_single_replacement(code: LdpcCode, word: Sequence[int]) -> tuple[int, int, int]:
    """(position, value, drop) maximising the drop; ties go to lowest position, then value."""
    S = syndrome(code, word)
    best = None
    for i in range(code.N):
        for v, drop in replacement_drops(code, word, i, S).items():
            if best is None or drop > best[2]:
                best = (i, v, drop)
    return best


def verify_lemma2(code: LdpcCode, theta: int, error: Sequence[int]) -> Verdict:
    """If |S| > W(ell+theta)/2, some single replacement must drop |S| by theta+1."""
    if not 0 <= theta < code.ell:
        raise ValueError(f"theta={theta} outside [0, {code.ell})")
    W = sum(1 for x in error if x)
    S = syndrome(code, error)
    if 2 * S.weight <= W * (code.ell + theta):
        return Verdict.VACUOUS
    _, _, drop = best_single_replacement(code, error)
    return Verdict.PASS if drop >= theta + 1 else Verdict.FAIL


# ---------------------------------------------------------------------------
# Trace invariants
# ---------------------------------------------------------------------------

def trace_violations(result: DecodeResult) -> list[str]:
    """Every way ``result`` breaks the replacement laws; empty when all hold."""
    out = []
    prev = result.initial_syndrome_weight
    prev_err = result.initial_error_weight
    for n, ev in enumerate(result.trace):
        delta = ev.syndrome_weight_after - prev
        if delta != ev.z - ev.a:
            out.append(f"event {n}: drop {delta} != z - a = {ev.z - ev.a}")
        if delta > -(ev.threshold + 1):
            out.append(f"event {n}: drop {delta} too small for theta={ev.threshold}")
        if ev.true_error_weight_after is not None and prev_err is not None:
            if abs(ev.true_error_weight_after - prev_err) > 1:
                out.append(f"event {n}: error weight jumped by more than 1")
        prev = ev.syndrome_weight_after
        prev_err = ev.true_error_weight_after
    for theta, start, count in result.phases:
        if count * (theta + 1) > start:
            out.append(f"phase theta={theta}: {count} replacements from |S|={start}")
    if result.replacements > result.initial_syndrome_weight:
        out.append("more replacements than initial syndrome weight")
    return out


# ---------------------------------------------------------------------------
# Exhaustive certification on tiny codes
# ---------------------------------------------------------------------------

@dataclass
class Certification:
    W_max: int
    min_syndrome_weight: dict[int, int]
    W_cert: int
    patterns: int


def _min_weights_from(code: LdpcCode, lead: int, W_max: int) -> tuple[list[int], int]:
    """Min |S| per weight over patterns whose lowest error position is ``lead``."""
    gf = code.field
    q = code.params.q
    N = code.N
    adj = code.var_adjacency
    values = [0] * code.M
    best = [math.inf] * (W_max + 1)
    count = 0

    def place(i, v):
        w = 0
        for j, h in adj[i]:
            before = values[j]
            after = gf.add(before, gf.mul(h, v))
            values[j] = after
            w += (after != 0) - (before != 0)
        return w

    def dfs(last, depth, weight):
        nonlocal count
        count += 1
        if weight < best[depth]:
            best[depth] = weight
        if depth == W_max:
            return
        for i in range(last + 1, N):
            for v in range(1, q):
                dw = place(i, v)
                dfs(i, depth + 1, weight + dw)
                place(i, gf.neg(v))

    for v in range(1, q):
        dw = place(lead, v)
        dfs(lead, 1, dw)
        place(lead, gf.neg(v))
    return best, count


def certify_code_radius(
    code: LdpcCode, W_max: int, budget: int | None = None, workers: int = 1
) -> Certification:
    """Exhaustive minimum syndrome weight per error weight, up to ``W_max``.

    ``W_cert`` is the largest W such that every weight w in 1..W has
    min |S| > w*ell/2.
    """
    _check_budget(pattern_count(code.N, code.params.q, W_max), budget)
    best = [math.inf] * (W_max + 1)
    best[0] = 0
    patterns = 1
    if W_max >= 1:
        leads = range(code.N)
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                parts = list(pool.map(_min_weights_from, [code] * code.N, leads, [W_max] * code.N))
        else:
            parts = [_min_weights_from(code, lead, W_max) for lead in leads]
        for part, n in parts:
            patterns += n
            best = [min(x, y) for x, y in zip(best, part)]
    mins = {w: int(best[w]) for w in range(W_max + 1) if best[w] != math.inf}
    W_cert = 0
    for w in range(1, W_max + 1):
        if w not in mins or 2 * mins[w] <= w * code.ell:
            break
        W_cert = w
    return Certification(W_max, mins, W_cert, patterns)


@dataclass
class CorrectionCheck:
    W_cert: int
    schedule: tuple[int, ...]
    radius_bound: Fraction
    radius: int
    patterns: int = 0
    failures: list[list[int]] = field(default_factory=list)
    invariant_violations: list[str] = field(default_factory=list)
    replacements: int = 0

    @property
    def verdict(self) -> Verdict:
        if self.failures or self.invariant_violations:
            return Verdict.FAIL
        return Verdict.PASS if self.patterns else Verdict.VACUOUS


def _correct_from(code: LdpcCode, schedule: tuple[int, ...], lead: int, radius: int):
    zero = code.zero_word()
    patterns = replacements = 0
    failures, violations = [], []
    q = code.params.q
    for w in range(1, radius + 1):
        for rest in combinations(range(lead + 1, code.N), w - 1):
            support = (lead, *rest)
            for vals in product(range(1, q), repeat=w):
                e = [0] * code.N
                for p, v in zip(support, vals):
                    e[p] = v
                res = decode_multi(code, e, schedule, reference=zero)
                patterns += 1
                replacements += res.replacements
                if res.failure or any(res.word):
                    failures.append(e)
                violations.extend(trace_violations(res))
    return patterns, replacements, failures, violations


def verify_guaranteed_correction(
    code: LdpcCode,
    W_cert: int,
    schedule: ThresholdSchedule | Sequence[int],
    budget: int | None = None,
    workers: int = 1,
) -> CorrectionCheck:
    """Decode every error pattern inside the guaranteed radius and demand exact correction."""
    if not isinstance(schedule, ThresholdSchedule):
        schedule = ThresholdSchedule(schedule)
    schedule.validate_for(code.ell)
    ths = schedule.thresholds
    if W_cert < 1:
        return CorrectionCheck(W_cert, ths, Fraction(0), 0)
    bound = w_sequence(Fraction(W_cert), schedule, code.ell, exact=True)[-1]
    radius = guaranteed_weight(W_cert, schedule, code.ell)
    check = CorrectionCheck(W_cert, ths, bound, radius)
    if radius < 1:
        return check
    _check_budget(pattern_count(code.N, code.params.q, radius, w_min=1), budget)
    leads = range(code.N)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(
                _correct_from, [code] * code.N, [ths] * code.N, leads, [radius] * code.N
            ))
    else:
        parts = [_correct_from(code, ths, lead, radius) for lead in leads]
    for n, reps, fails, viol in parts:
        check.patterns += n
        check.replacements += reps
        check.failures.extend(fails)
        check.invariant_violations.extend(viol)
    return check
