import pytest

from gfq_ldpc.code import CodeParams, write_code, sample_regular_code
from gfq_ldpc.decoder import ScheduleError
from gfq_ldpc.simulate import (
    ConfigError,
    PairingError,
    SimConfig,
    compare_schedules,
    error_pattern,
    pattern_digest,
    run_simulation,
)
import gfq_ldpc.simulate as simulate

GIRTH6 = CodeParams(48, 3, 4, 16)


def config(**kw):
    base = dict(weights=[1, 2, 3], trials=20, seed=11, params=GIRTH6, code_seed=1, code_girth=6)
    base.update(kw)
    return SimConfig(**base)


@pytest.mark.parametrize(
    "kw",
    [dict(trials=0), dict(weights=[]), dict(weights=[0, 1]), dict(params=None)],
)
def test_config_rejected(kw):
    with pytest.raises(ConfigError):
        config(**kw)


def test_config_rejects_both_code_sources(tmp_path):
    with pytest.raises(ConfigError):
        config(code_path=str(tmp_path / "c.txt"))


def test_weight_above_length_rejected():
    with pytest.raises(ConfigError):
        list(run_simulation(config(weights=[49])))


def test_schedule_checked_against_code():
    with pytest.raises(ScheduleError):
        list(run_simulation(config(schedule=(0, 3))))


def test_error_pattern_substreams():
    e = error_pattern(5, 48, 16, 4, 7)
    assert sum(1 for x in e if x) == 4 and all(0 <= x < 16 for x in e)
    assert e == error_pattern(5, 48, 16, 4, 7)
    assert e != error_pattern(5, 48, 16, 4, 8)
    assert e != error_pattern(6, 48, 16, 4, 7)
    assert pattern_digest(e) == pattern_digest(list(e))


def test_weight_one_always_corrected_without_4_cycles():
    recs = list(run_simulation(config(weights=[1], trials=200)))
    assert len(recs) == 200
    assert all(r.success and r.replacements == 1 for r in recs)


def test_records_are_ordered_and_reproducible():
    a = [r.to_dict() for r in run_simulation(config(schedule=(0, 1, 2)))]
    b = [r.to_dict() for r in run_simulation(config(schedule=(0, 1, 2)))]
    assert a == b
    assert [(r["weight"], r["trial"]) for r in a] == [(w, t) for w in (1, 2, 3) for t in range(20)]
    for r in a:
        assert [p[0] for p in r["phase_boundaries"]] == [2, 1, 0]
        assert sum(p[1] for p in r["phase_boundaries"]) == r["replacements"]


def test_workers_match_sequential():
    cfg = config(weights=[2, 4], trials=15)
    assert list(run_simulation(cfg, workers=3)) == list(run_simulation(cfg))


def test_code_file_source(tmp_path):
    code = sample_regular_code(GIRTH6, 1, girth=6)
    path = tmp_path / "c.txt"
    write_code(code, path)
    from_file = SimConfig(weights=[1, 2, 3], trials=20, seed=11, code_path=str(path))
    assert list(run_simulation(from_file)) == list(run_simulation(config()))


def test_compare_pairs_patterns():
    rows = compare_schedules(config(weights=[1, 4]), [(0,), (0, 1, 2)])
    assert [r.weight for r in rows] == [1, 4]
    assert rows[0].successes == [20, 20]
    assert rows[0].rates() == [1.0, 1.0]
    with pytest.raises(ConfigError):
        compare_schedules(config(), [(0,)])


def test_compare_detects_unpaired_patterns(monkeypatch):
    real = simulate.error_pattern
    calls = {"n": 0}

    def drifting(seed, N, q, weight, trial):
        calls["n"] += 1
        # the second schedule gets different patterns
        return real(seed + (calls["n"] > 20), N, q, weight, trial)

    monkeypatch.setattr(simulate, "error_pattern", drifting)
    with pytest.raises(PairingError):
        compare_schedules(config(weights=[2]), [(0,), (0, 1)])
