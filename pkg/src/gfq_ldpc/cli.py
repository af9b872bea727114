"""Command-line front end.

Exit codes: 0 success, 1 at least one decode failure, 2 configuration
error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager
from pathlib import Path

from .code import (
    CodeParams,
    ConstructionError,
    ParameterError,
    format_code,
    format_word,
    parse_word,
    read_code,
    sample_regular_code,
    write_code,
)
from .decoder import DecoderInternalError, ScheduleError, ThresholdSchedule, decode_multi
from .galois import FieldError
from .oracle import (
    BudgetExceededError,
    Verdict,
    certify_code_radius,
    subgraph_census,
    verify_guaranteed_correction,
    verify_lemma2,
)
from .radius import format_table_csv, load_table, radius_table, w_sequence
from .rng import make_rng
from .simulate import ConfigError, PairingError, SimConfig, compare_schedules, run_simulation

EXIT_OK, EXIT_DECODE_FAILURE, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2, 3


class InvariantViolation(RuntimeError):
    pass


def parse_weights(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _load_params(args) -> CodeParams:
    return CodeParams(N=args.n, ell=args.ell, n0=args.n0, q=args.q, modulus=args.modulus)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_gen_code(args) -> int:
    code = sample_regular_code(_load_params(args), args.seed, girth=args.girth)
    if args.out in (None, "-"):
        sys.stdout.write(format_code(code))
    else:
        write_code(code, args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    code = read_code(args.code)
    word = parse_word(Path(args.word).read_text())
    for x in word:
        code.field.check(x)
    reference = parse_word(Path(args.reference).read_text()) if args.reference else None
    schedule = ThresholdSchedule.parse(args.thresholds)
    res = decode_multi(code, word, schedule, reference=reference, order=args.order)
    if args.trace:
        with open(args.trace, "w") as fh:
            for ev in res.trace:
                fh.write(json.dumps(ev.to_dict()) + "\n")
    with _output(args.out) as fh:
        fh.write(format_word(res.word))
    print(
        f"failure={res.failure} replacements={res.replacements} passes={res.passes} "
        f"syndrome_weight={res.syndrome_weight}",
        file=sys.stderr,
    )
    return EXIT_DECODE_FAILURE if res.failure else EXIT_OK


def _sim_config(args, schedule) -> SimConfig:
    common = dict(
        weights=parse_weights(args.weights), trials=args.trials, schedule=schedule,
        seed=args.seed, order=args.order,
    )
    if args.code:
        return SimConfig(code_path=args.code, **common)
    if None in (args.n, args.ell, args.n0, args.q):
        raise ConfigError("give --code or all of --n --ell --n0 --q")
    return SimConfig(
        params=_load_params(args), code_seed=args.code_seed, code_girth=args.girth, **common
    )


def cmd_simulate(args) -> int:
    config = _sim_config(args, ThresholdSchedule.parse(args.thresholds))
    records = list(run_simulation(config, workers=args.workers))
    with _output(args.out) as fh:
        if args.format in (None, "jsonl"):
            for r in records:
                fh.write(json.dumps(r.to_dict()) + "\n")
        else:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["weight", "trials", "successes", "success_rate"])
            for weight in config.weights:
                rs = [r for r in records if r.weight == weight]
                ok = sum(r.success for r in rs)
                w.writerow([weight, len(rs), ok, f"{ok / len(rs):.6f}"])
    return EXIT_DECODE_FAILURE if not all(r.success for r in records) else EXIT_OK


def cmd_compare(args) -> int:
    schedules = [ThresholdSchedule.parse(s) for s in args.schedule]
    config = _sim_config(args, schedules[0])
    rows = compare_schedules(config, schedules, workers=args.workers)
    with _output(args.out) as fh:
        if args.format == "jsonl":
            for row in rows:
                fh.write(json.dumps({
                    "weight": row.weight, "trials": row.trials,
                    "schedules": [str(s) for s in schedules], "successes": row.successes,
                }) + "\n")
        else:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["weight", "trials"] + [f"success_rate[{s}]" for s in schedules])
            for row in rows:
                w.writerow([row.weight, row.trials] + [f"{x:.6f}" for x in row.rates()])
    return EXIT_OK


def cmd_radius(args) -> int:
    if args.table:
        text = format_table_csv(radius_table(load_table(args.table)))
        with _output(args.out) as fh:
            fh.write(text)
        return EXIT_OK
    if args.ell is None:
        raise ConfigError("give --table or --ell")
    schedule = ThresholdSchedule.parse(args.thresholds) if args.thresholds else ThresholdSchedule.full(args.ell)
    seq = w_sequence(args.w_star, schedule, args.ell)
    with _output(args.out) as fh:
        for i, W in enumerate(seq, start=1):
            fh.write(f"W_{i} {W!r}\n")
    return EXIT_OK


def cmd_verify_lemma2(args) -> int:
    code = read_code(args.code)
    rng = make_rng(args.seed)
    thetas = range(code.ell) if args.theta is None else [args.theta]
    counts = {v.value: 0 for v in Verdict}
    census_failures = 0
    for _ in range(args.samples):
        w = rng.randint(1, min(args.max_weight, code.N))
        e = [0] * code.N
        for p in rng.sample(range(code.N), w):
            e[p] = rng.randrange(1, code.params.q)
        census = subgraph_census(code, e)
        if not (census.edge_conservation() and census.counting_inequality()):
            census_failures += 1
        for theta in thetas:
            counts[verify_lemma2(code, theta, e).value] += 1
    report = dict(counts, census_failures=census_failures)
    with _output(args.out) as fh:
        fh.write(json.dumps(report) + "\n")
    if counts[Verdict.FAIL.value] or census_failures:
        raise InvariantViolation(f"lemma check failed: {report}")
    return EXIT_OK


def cmd_verify_radius(args) -> int:
    code = read_code(args.code)
    schedule = ThresholdSchedule.parse(args.thresholds) if args.thresholds else ThresholdSchedule((0,))
    cert = certify_code_radius(code, args.wmax, workers=args.workers)
    check = verify_guaranteed_correction(code, cert.W_cert, schedule, workers=args.workers)
    report = {
        "min_syndrome_weight": cert.min_syndrome_weight,
        "W_cert": cert.W_cert,
        "schedule": list(schedule.thresholds),
        "radius_bound": str(check.radius_bound),
        "radius": check.radius,
        "patterns": check.patterns,
        "pass": check.patterns - len(check.failures),
        "vacuous": int(check.verdict is Verdict.VACUOUS),
        "fail": len(check.failures),
        "verdict": check.verdict.value,
    }
    with _output(args.out) as fh:
        fh.write(json.dumps(report) + "\n")
    if check.verdict is Verdict.FAIL:
        raise InvariantViolation("guaranteed correction failed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    # default resolved per command: simulate writes jsonl records, the rest csv
    common.add_argument("--format", choices=["csv", "jsonl"], default=None)

    code_args = argparse.ArgumentParser(add_help=False)
    code_args.add_argument("--n", type=int)
    code_args.add_argument("--ell", type=int)
    code_args.add_argument("--n0", type=int)
    code_args.add_argument("--q", type=int)
    code_args.add_argument("--modulus", type=lambda s: int(s, 0), default=None)
    code_args.add_argument("--girth", type=int, choices=[4, 6, 8], default=4)

    parser = argparse.ArgumentParser(prog="gfq-ldpc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-code", parents=[common, code_args], help="sample a regular code")
    p.set_defaults(func=cmd_gen_code)

    p = sub.add_parser("decode", parents=[common], help="decode one word")
    p.add_argument("--code", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--thresholds", default="0")
    p.add_argument("--trace")
    p.add_argument("--reference")
    p.add_argument("--order", choices=["sweep", "sorted"], default="sweep")
    p.set_defaults(func=cmd_decode)

    for name, func, help_ in [
        ("simulate", cmd_simulate, "fixed-weight Monte-Carlo run"),
        ("compare", cmd_compare, "paired comparison of schedules"),
    ]:
        p = sub.add_parser(name, parents=[common, code_args], help=help_)
        p.add_argument("--code")
        p.add_argument("--code-seed", type=int, default=0)
        p.add_argument("--weights", required=True, help="e.g. 1-6 or 1,2,5")
        p.add_argument("--trials", type=int, required=True)
        p.add_argument("--order", choices=["sweep", "sorted"], default="sweep")
        p.add_argument("--workers", type=int, default=1)
        if name == "simulate":
            p.add_argument("--thresholds", default="0")
        else:
            p.add_argument("--schedule", action="append", required=True,
                           help="thresholds, repeat for each schedule")
        p.set_defaults(func=func)

    p = sub.add_parser("radius", parents=[common], help="radius estimates")
    p.add_argument("--table", help="builtin:q16, builtin:q64 or a CSV path")
    p.add_argument("--ell", type=int)
    p.add_argument("--thresholds")
    p.add_argument("--w-star", type=float, default=1.0)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("verify", help="brute-force verification suites")
    vsub = p.add_subparsers(dest="suite", required=True)
    v = vsub.add_parser("lemma2", parents=[common])
    v.add_argument("--code", required=True)
    v.add_argument("--theta", type=int)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--max-weight", type=int, default=5)
    v.set_defaults(func=cmd_verify_lemma2)
    v = vsub.add_parser("radius", parents=[common])
    v.add_argument("--code", required=True)
    v.add_argument("--wmax", type=int, required=True)
    v.add_argument("--thresholds")
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify_radius)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DecoderInternalError, InvariantViolation, PairingError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (
        ConfigError, ParameterError, ConstructionError, ScheduleError, FieldError,
        BudgetExceededError, OSError, ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
