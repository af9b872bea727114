"""Closed-form decoding-radius estimates for single and multiple thresholds.

``omega_star`` (the relative weight below which every error pattern has
syndrome weight above ``W*ell/2``) is input data; the functions here turn it
into guaranteed radii.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .decoder import ThresholdSchedule

LIMIT_ALPHA_MULTI = 2 ** (-2 / 3)


def threshold_bound(theta: int, W, ell: int):
    """Syndrome weight above which a replacement dropping |S| by theta+1 exists."""
    if isinstance(W, (int, Fraction)):
        return Fraction(W) * (ell + theta) / 2
    return W * (ell + theta) / 2


def alpha_single(ell: int, exact: bool = False):
    if ell < 2:
        raise ValueError("ell must be >= 2")
    value = Fraction(ell + 2, 2 * (ell + 1))
    return value if exact else float(value)


def alpha_multi(ell: int, exact: bool = False):
    """Product over i < ell of (ell+3i+2)/(ell+3i+3).

    The float path sums ``log1p(-1/(ell+3i+3))`` with ``math.fsum``, which
    keeps the relative error near machine precision even for 10**6 factors.
    """
    if ell < 2:
        raise ValueError("ell must be >= 2")
    if exact:
        num = den = 1
        for i in range(ell):
            num *= ell + 3 * i + 2
            den *= ell + 3 * i + 3
        return Fraction(num, den)
    return math.exp(math.fsum(math.log1p(-1.0 / (ell + 3 * i + 3)) for i in range(ell)))


def w_sequence(W_star, schedule: ThresholdSchedule | Iterable[int], ell: int, exact: bool = False) -> list:
    """W_1 .. W_{t+1}; the last entry is the weight the multi-threshold decoder is guaranteed to correct.

    ``W_1 = W_star`` and the step from W_{i-1} to W_i uses thresholds
    theta_{i-1} and theta_i, with theta_{t+1} = ell.
    """
    if not isinstance(schedule, ThresholdSchedule):
        schedule = ThresholdSchedule(schedule)
    schedule.validate_for(ell)
    if W_star <= 0:
        raise ValueError("W_star must be positive")
    th = list(schedule.thresholds) + [ell]
    W = Fraction(W_star) if exact else float(W_star)
    out = [W]
    for prev, cur in zip(th, th[1:]):
        num = ell + 3 * prev + 2
        den = ell + 2 * prev + cur + 2
        W = W * Fraction(num, den) if exact else W * num / den
        out.append(W)
    return out


def guaranteed_weight(W_star, schedule, ell: int) -> int:
    """floor(W_{t+1}), computed exactly so integer inputs never round down wrongly."""
    return math.floor(w_sequence(Fraction(W_star), schedule, ell, exact=True)[-1])


@dataclass(frozen=True)
class RadiusRow:
    R: float
    ell: int
    omega_star: float
    rho_s: float
    rho_m: float

    @property
    def rho_s_rounded(self) -> float:
        return round(self.rho_s, 4)

    @property
    def rho_m_rounded(self) -> float:
        return round(self.rho_m, 4)

    @property
    def gain(self) -> float:
        return alpha_multi(self.ell) / alpha_single(self.ell)


def radius_table(rows: Iterable[tuple[float, int, float]]) -> list[RadiusRow]:
    return [
        RadiusRow(R, ell, w, alpha_single(ell) * w, alpha_multi(ell) * w)
        for R, ell, w in rows
    ]


BUILTIN_TABLES = {"q16": "q16.csv", "q64": "q64.csv"}


def _parse_rows(text: str) -> list[tuple[float, int, float]]:
    reader = csv.DictReader(io.StringIO(text))
    return [(float(r["R"]), int(r["ell"]), float(r["omega_star"])) for r in reader]


def load_table(source: str) -> list[tuple[float, int, float]]:
    """Load ``(R, ell, omega_star)`` rows from ``builtin:q16``, ``builtin:q64`` or a CSV path."""
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in BUILTIN_TABLES:
            raise ValueError(f"unknown builtin table {name!r}")
        text = resources.files("gfq_ldpc").joinpath("data", BUILTIN_TABLES[name]).read_text()
    else:
        text = Path(source).read_text()
    return _parse_rows(text)


def format_table_csv(rows: Sequence[RadiusRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["R", "ell", "omega_star", "rho_s", "rho_m", "rho_s_rounded", "rho_m_rounded"])
    for r in rows:
        writer.writerow([
            r.R, r.ell, r.omega_star, repr(r.rho_s), repr(r.rho_m),
            f"{r.rho_s_rounded:.4f}", f"{r.rho_m_rounded:.4f}",
        ])
    return buf.getvalue()
