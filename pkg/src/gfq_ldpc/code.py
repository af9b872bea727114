"""Regular LDPC codes over GF(q) with single-parity-check constituents.

A code is stored as its Tanner graph: ``checks[j]`` lists the
``(position, coefficient)`` pairs of check ``j`` and ``var_adjacency[i]``
lists the ``(check, coefficient)`` pairs of variable ``i``. Positions and
check indices are 0-based in memory and 1-based in code files.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .galois import GaloisField
from .rng import make_rng

Word = list[int]


class ParameterError(ValueError):
    pass


class ConstructionError(ValueError):
    pass


class LengthMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class CodeParams:
    N: int
    ell: int
    n0: int
    q: int
    modulus: int | None = None

    def __post_init__(self):
        if self.ell < 2 or self.n0 < 2:
            raise ParameterError("need ell >= 2 and n0 >= 2")
        if self.N < self.n0 or self.N % self.n0:
            raise ParameterError(f"n0={self.n0} does not divide N={self.N}")
        if not 0 < self.design_rate < 1:
            raise ParameterError(
                f"design rate 1 - ell/n0 = {self.design_rate} outside (0, 1)"
            )

    @property
    def M(self) -> int:
        return self.ell * self.N // self.n0

    @property
    def R0(self) -> Fraction:
        return Fraction(self.n0 - 1, self.n0)

    @property
    def m0(self) -> int:
        return 1

    @property
    def d0(self) -> int:
        return 2

    @property
    def design_rate(self) -> Fraction:
        """Lower bound 1 - ell*(1 - R0) on the rate of the code."""
        return 1 - self.ell * (1 - Fraction(self.n0 - 1, self.n0))


class LdpcCode:
    """Immutable Tanner graph of an (ell, n0)-regular code with SPC checks."""

    def __init__(self, params: CodeParams, checks: Sequence[Sequence[tuple[int, int]]]):
        self.field = GaloisField(params.q, params.modulus)
        if (params.modulus or 0) != self.field.modulus:
            params = replace(params, modulus=self.field.modulus or None)
        self.params = params
        N, M, n0, ell = params.N, params.M, params.n0, params.ell
        if len(checks) != M:
            raise ConstructionError(f"expected {M} checks, got {len(checks)}")
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(N)]
        frozen = []
        for j, row in enumerate(checks):
            row = tuple((int(p), int(h)) for p, h in row)
            if len(row) != n0:
                raise ConstructionError(f"check {j} has {len(row)} entries, expected {n0}")
            if len({p for p, _ in row}) != n0:
                raise ConstructionError(f"check {j} touches a variable twice")
            for p, h in row:
                if not 0 <= p < N:
                    raise ConstructionError(f"check {j} references position {p}")
                if not 0 < h < params.q:
                    raise ConstructionError(f"check {j} has coefficient {h}")
                adjacency[p].append((j, h))
            frozen.append(row)
        for i, adj in enumerate(adjacency):
            if len(adj) != ell:
                raise ConstructionError(f"variable {i} has degree {len(adj)}, expected {ell}")
        self.checks: tuple[tuple[tuple[int, int], ...], ...] = tuple(frozen)
        self.var_adjacency: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            tuple(adj) for adj in adjacency
        )

    @property
    def N(self) -> int:
        return self.params.N

    @property
    def M(self) -> int:
        return self.params.M

    @property
    def ell(self) -> int:
        return self.params.ell

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LdpcCode)
            and self.params == other.params
            and self.field == other.field
            and self.checks == other.checks
        )

    def __repr__(self) -> str:
        p = self.params
        return f"LdpcCode(N={p.N}, M={p.M}, ell={p.ell}, n0={p.n0}, q={p.q})"

    def dense(self) -> list[list[int]]:
        """The M x N parity-check matrix H as nested lists."""
        H = [[0] * self.N for _ in range(self.M)]
        for j, row in enumerate(self.checks):
            for p, h in row:
                H[j][p] = h
        return H

    def zero_word(self) -> Word:
        return [0] * self.N


MAX_STRATUM_RETRIES = 1000


class ConstructionRetryError(ConstructionError):
    pass


def _fill_stratum(rng, N: int, n0: int, neighbours: list[set[int]], girth: int) -> list[list[int]] | None:
    # Randomised greedy fill: each variable joins a random open group with no conflicting member.
    def clash(u: int, v: int) -> bool:
        if u in neighbours[v]:
            return True
        return girth >= 8 and not neighbours[u].isdisjoint(neighbours[v])

    order = list(range(N))
    rng.shuffle(order)
    groups: list[list[int]] = [[] for _ in range(N // n0)]
    for v in order:
        open_groups = [g for g in groups if len(g) < n0 and not any(clash(u, v) for u in g)]
        if not open_groups:
            return None
        rng.choice(open_groups).append(v)
    return groups


def sample_regular_code(params: CodeParams, seed: int, girth: int = 4) -> LdpcCode:
    """Gallager-style ensemble member: ell strata, each a random partition.

    Stratum ``s`` shuffles the N variables and cuts the permutation into
    N/n0 consecutive groups of n0; each group is one check. Every edge gets
    an independent uniform nonzero coefficient. A variable appears once per
    stratum, so no variable can meet the same check twice.

    ``girth=6`` (no two variables share two checks) or ``girth=8`` (also no
    6-cycles) switches each stratum to a constrained random fill, retried up
    to ``MAX_STRATUM_RETRIES`` times before :class:`ConstructionRetryError`.
    """
    if girth not in (4, 6, 8):
        raise ParameterError(f"girth must be 4, 6 or 8, got {girth}")
    rng = make_rng(seed)
    N, n0, q = params.N, params.n0, params.q
    checks = []
    neighbours: list[set[int]] = [set() for _ in range(N)]
    for s in range(params.ell):
        if girth > 4:
            for _ in range(MAX_STRATUM_RETRIES):
                groups = _fill_stratum(rng, N, n0, neighbours, girth)
                if groups is not None:
                    break
            else:
                raise ConstructionRetryError(
                    f"stratum {s}: no girth-{girth} partition after {MAX_STRATUM_RETRIES} tries"
                )
            for g in groups:
                for v in g:
                    neighbours[v].update(u for u in g if u != v)
        else:
            perm = list(range(N))
            rng.shuffle(perm)
            groups = [perm[k : k + n0] for k in range(0, N, n0)]
        checks.extend(sorted(g) for g in groups)
    rows = [[(p, rng.randrange(1, q)) for p in row] for row in checks]
    return LdpcCode(params, rows)


@dataclass
class Syndrome:
    """Per-check values of H r^T plus the running count of nonzero entries."""

    values: list[int]
    weight: int = field(default=-1)

    def __post_init__(self):
        if self.weight < 0:
            self.weight = self.recount()

    def recount(self) -> int:
        return sum(1 for s in self.values if s)

    def copy(self) -> "Syndrome":
        return Syndrome(list(self.values), self.weight)


def syndrome(code: LdpcCode, r: Sequence[int]) -> Syndrome:
    if len(r) != code.N:
        raise LengthMismatchError(f"word length {len(r)} != N={code.N}")
    gf = code.field
    add, mul = gf.add, gf.mul
    values = []
    for row in code.checks:
        s = 0
        for p, h in row:
            s = add(s, mul(h, r[p]))
        values.append(s)
    return Syndrome(values)


def syndrome_update(code: LdpcCode, S: Syndrome, i: int, old: int, new: int) -> Syndrome:
    """Account for ``r[i]`` changing from ``old`` to ``new``; updates ``S`` in place."""
    gf = code.field
    delta = gf.sub(new, old)
    if delta == 0:
        return S
    values = S.values
    weight = S.weight
    for j, h in code.var_adjacency[i]:
        before = values[j]
        after = gf.add(before, gf.mul(h, delta))
        values[j] = after
        if before and not after:
            weight -= 1
        elif after and not before:
            weight += 1
    S.weight = weight
    return S


def syndrome_bounds(W: int, ell: int) -> tuple[Fraction, Fraction]:
    """``(W*ell/2, W*ell)``: the ensemble lower bound and the trivial upper bound on |S|."""
    return Fraction(W * ell, 2), Fraction(W * ell)


def hamming_weight(word: Sequence[int]) -> int:
    return sum(1 for x in word if x)


# ---------------------------------------------------------------------------
# Code files
# ---------------------------------------------------------------------------

def format_code(code: LdpcCode) -> str:
    p = code.params
    lines = [f"{p.N} {p.M} {p.q} {p.ell} {p.n0} {code.field.modulus}"]
    for row in code.checks:
        lines.append(" ".join(f"{pos + 1}:{h}" for pos, h in row))
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> LdpcCode:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ConstructionError("empty code file")
    try:
        N, M, q, ell, n0, modulus = (int(x) for x in lines[0])
    except ValueError as exc:
        raise ConstructionError(f"bad header {' '.join(lines[0])!r}") from exc
    params = CodeParams(N=N, ell=ell, n0=n0, q=q, modulus=modulus or None)
    if params.M != M:
        raise ConstructionError(f"header M={M} inconsistent with ell*N/n0={params.M}")
    rows = []
    for tokens in lines[1:]:
        row = []
        for tok in tokens:
            pos, _, coef = tok.partition(":")
            row.append((int(pos) - 1, int(coef)))
        rows.append(row)
    return LdpcCode(params, rows)


def read_code(path: str | Path) -> LdpcCode:
    return parse_code(Path(path).read_text())


def write_code(code: LdpcCode, path: str | Path) -> None:
    Path(path).write_text(format_code(code))


def parse_word(text: str) -> Word:
    return [int(x) for x in text.split()]


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(x) for x in word) + "\n"
