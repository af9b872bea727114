import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfq_ldpc.decoder import ScheduleError, ThresholdSchedule
from gfq_ldpc.radius import (
    LIMIT_ALPHA_MULTI,
    alpha_multi,
    alpha_single,
    format_table_csv,
    guaranteed_weight,
    load_table,
    radius_table,
    threshold_bound,
    w_sequence,
)


def test_threshold_bound_examples():
    assert threshold_bound(0, 7, 5) == Fraction(35, 2)
    assert threshold_bound(3, 10, 5) == 40
    assert threshold_bound(0, 0, 45) == 0
    assert threshold_bound(1, 2.0, 3) == pytest.approx(4.0)


def test_alpha_single_examples():
    assert alpha_single(45, exact=True) == Fraction(47, 92)
    assert alpha_single(22, exact=True) == Fraction(24, 46)
    assert round(alpha_single(45) * 0.0103, 4) == 0.0053
    assert round(alpha_single(22) * 0.0081, 4) == 0.0042


def test_alpha_single_decreases_to_half():
    vals = [alpha_single(ell) for ell in range(2, 500)]
    assert all(a > b > 0.5 for a, b in zip(vals, vals[1:]))


def test_alpha_multi_examples():
    assert alpha_multi(2, exact=True) == Fraction(4, 5) * Fraction(7, 8)
    assert round(alpha_multi(45) * 0.0103, 4) == 0.0065
    assert round(alpha_multi(21) * 0.0156, 4) == 0.0099


def test_alpha_multi_float_matches_exact():
    for ell in list(range(2, 60)) + [100, 257, 1000]:
        exact = alpha_multi(ell, exact=True)
        assert abs(alpha_multi(ell) - float(exact)) <= 1e-14 * float(exact)


def test_alpha_multi_stays_above_limit():
    prev = None
    for ell in [2, 3, 5, 10, 100, 1000, 10**4, 10**5]:
        a = alpha_multi(ell)
        assert a > LIMIT_ALPHA_MULTI
        if prev is not None:
            assert a < prev
        prev = a
    assert LIMIT_ALPHA_MULTI == pytest.approx(0.6299605249, abs=1e-10)


def test_alpha_rejects_small_ell():
    for f in (alpha_single, alpha_multi):
        with pytest.raises(ValueError):
            f(1)


def test_w_sequence_hand_example():
    # ell=4, thresholds (0, 2), closing threshold 4:
    # W2 = 1 * (4+0+2)/(4+0+2+2) = 6/8, W3 = W2 * (4+6+2)/(4+4+4+2) = 9/14
    seq = w_sequence(1, (0, 2), 4, exact=True)
    assert seq == [1, Fraction(3, 4), Fraction(9, 14)]
    assert w_sequence(1, (0, 2), 4)[-1] == pytest.approx(9 / 14, rel=1e-15)


def test_w_sequence_validation():
    with pytest.raises(ScheduleError):
        w_sequence(1, (0, 4), 4)
    with pytest.raises(ScheduleError):
        w_sequence(1, (1, 2), 4)
    with pytest.raises(ValueError):
        w_sequence(0, (0,), 4)


@pytest.mark.parametrize("ell", range(2, 101))
def test_single_threshold_degeneration_is_exact(ell):
    W = Fraction(37, 3)
    assert w_sequence(W, (0,), ell, exact=True)[-1] == alpha_single(ell, exact=True) * W


@pytest.mark.parametrize("ell", [2, 3, 7, 24, 45, 100])
def test_full_schedule_telescopes(ell):
    full = ThresholdSchedule.full(ell)
    assert w_sequence(1, full, ell, exact=True)[-1] == alpha_multi(ell, exact=True)
    got = w_sequence(2.5, full, ell)[-1]
    assert abs(got - 2.5 * alpha_multi(ell)) <= 1e-12 * got


def _all_schedules(ell):
    for k in range(ell):
        for rest in combinations(range(1, ell), k):
            yield (0, *rest)


@pytest.mark.parametrize("ell", range(2, 9))
def test_refinement_never_hurts(ell):
    final = {s: w_sequence(1, s, ell, exact=True)[-1] for s in _all_schedules(ell)}
    for s, val in final.items():
        for extra in set(range(1, ell)) - set(s):
            finer = tuple(sorted((*s, extra)))
            assert final[finer] >= val
    assert max(final.values()) == final[tuple(range(ell))]
    assert min(final.values()) == final[(0,)]


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 40), st.data(), st.fractions(min_value=Fraction(1, 100), max_value=100))
def test_w_sequence_scales_linearly(ell, data, W):
    rest = data.draw(st.sets(st.integers(1, ell - 1), max_size=ell - 1)) if ell > 1 else set()
    sched = (0, *sorted(rest))
    seq = w_sequence(W, sched, ell, exact=True)
    unit = w_sequence(1, sched, ell, exact=True)
    assert seq == [W * u for u in unit]
    assert all(a > b for a, b in zip(seq, seq[1:]))
    assert alpha_single(ell, exact=True) * W <= seq[-1] <= alpha_multi(ell, exact=True) * W


def test_guaranteed_weight_is_exact_floor():
    # 14 * 9/14 = 9 exactly; a float product could land just below 9
    assert guaranteed_weight(14, (0, 2), 4) == 9
    assert guaranteed_weight(3, (0,), 3) == math.floor(Fraction(15, 8))
    assert guaranteed_weight(1, (0, 1, 2), 3) == 0


PUBLISHED_Q16 = {
    0.125: (0.0053, 0.0065), 0.25: (0.0049, 0.0060), 0.375: (0.0044, 0.0054),
    0.5: (0.0037, 0.0046), 0.625: (0.0028, 0.0034), 0.75: (0.0017, 0.0021),
    0.875: (0.0008, 0.0010),
}
PUBLISHED_Q64 = {
    0.125: (0.0082, 0.0099), 0.25: (0.0068, 0.0083), 0.375: (0.0054, 0.0066),
    0.5: (0.0042, 0.0052), 0.625: (0.0031, 0.0038), 0.75: (0.0019, 0.0024),
    0.875: (0.0009, 0.0011),
}


@pytest.mark.parametrize("name, expected", [("q16", PUBLISHED_Q16), ("q64", PUBLISHED_Q64)])
def test_builtin_tables(name, expected):
    rows = radius_table(load_table(f"builtin:{name}"))
    assert [r.R for r in rows] == sorted(expected)
    for r in rows:
        s, m = expected[r.R]
        assert (r.rho_s_rounded, r.rho_m_rounded) == (s, m)
        assert r.gain >= 1.21


def test_table_rows_examples():
    (r,) = radius_table([(0.5, 31, 0.0072)])
    assert (r.rho_s_rounded, r.rho_m_rounded) == (0.0037, 0.0046)
    (r,) = radius_table([(0.875, 26, 0.0017)])
    assert (r.rho_s_rounded, r.rho_m_rounded) == (0.0009, 0.0011)
    (r,) = radius_table([(0.3, 12, 0.0)])
    assert (r.rho_s, r.rho_m) == (0, 0)


def test_table_csv_round_trip(tmp_path):
    text = format_table_csv(radius_table(load_table("builtin:q64")))
    lines = text.splitlines()
    assert lines[0] == "R,ell,omega_star,rho_s,rho_m,rho_s_rounded,rho_m_rounded"
    assert lines[1].endswith(",0.0082,0.0099")
    path = tmp_path / "t.csv"
    path.write_text(text)
    assert load_table(str(path)) == load_table("builtin:q64")


def test_unknown_builtin_table():
    with pytest.raises(ValueError):
        load_table("builtin:q8")
