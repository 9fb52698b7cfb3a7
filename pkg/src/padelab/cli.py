"""Batch front-end: parse experiment configs, run, write CSV/JSON artifacts.

Exit codes: 0 success, 2 verification failure, 3 config error, 4 oracle
escalation failure.  Outputs are byte-identical across runs for identical
configs: no timestamps, sorted JSON keys, fixed CSV column orders.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction

from . import serialize as ser
from .errors import ConfigError, EscalationError, PadeLabError, VerificationError
from .gaps import build_gap_series, transfer_to_pade
from .pade import hankel_det, pade_via_system
from .polelab import (
    place_pole,
    place_zero,
    poles_outside_disk_witness,
    poly_roots_numeric,
)
from .poly import Polynomial
from .series import PowerSeries
from .universal import build_universal, span_pade_check, verify_checkpoint

PADE_COLUMNS = ["m", "n", "status", "c_mn", "c_m1n", "numerator", "denominator"]
POLE_COLUMNS = ["m", "n", "pole_index", "re", "im", "residual"]
CERT_COLUMNS = [
    "task", "step", "p", "sampled_error_K", "sampled_error_L", "denominator_hash",
]
TRANSFER_COLUMNS = ["checkpoint", "p", "q", "exact_match", "denominator_hash"]


def _write_csv(path, columns, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)


def _pade_row(r):
    return [
        r.m,
        r.n,
        r.status.value,
        str(r.c_mn),
        str(r.c_m1n),
        "" if r.numerator is None else str(r.numerator),
        "" if r.denominator is None else str(r.denominator),
    ]


def _pole_rows(m, n, denominator, precision):
    rows = []
    for idx, est in enumerate(poly_roots_numeric(denominator, precision)):
        rows.append(
            [m, n, idx, repr(est.value.real), repr(est.value.imag), str(est.residual)]
        )
    return rows


def _config_fields(path, spec):
    obj = ser.load_json(path)
    fields = ser._take(ser._expect_mapping(obj, "$"), "$", {
        "schema": (True, ser._dec_int),
        "command": (True, ser._dec_str),
        **spec,
    })
    if fields["schema"] != ser.SCHEMA_VERSION:
        raise ConfigError(f"{path}: unsupported schema version {fields['schema']}")
    return fields


# -- commands -----------------------------------------------------------------

def cmd_pade(args) -> int:
    s = ser.load_document(args.series, "series")
    r = pade_via_system(s, args.m, args.n)
    print(r)
    if args.out:
        _write_csv(args.out, PADE_COLUMNS, [_pade_row(r)])
    return 0


def cmd_table(args) -> int:
    s = ser.load_document(args.series, "series")
    rows = []
    for m in range(args.max_m + 1):
        line = []
        for n in range(args.max_n + 1):
            if s.truncation_len < m + n + 1:
                raise ConfigError(
                    f"series too short for the ({m},{n}) cell; need {m + n + 1} coefficients"
                )
            r = pade_via_system(s, m, n)
            rows.append(_pade_row(r))
            line.append(f"{r.status.value}:{r.c_mn}")
        print(" | ".join(f"{cell:>24}" for cell in line))
    if args.out:
        _write_csv(args.out, PADE_COLUMNS, rows)
    return 0


def _placement(args, placer) -> int:
    fields = _config_fields(args.config, {
        "base": (True, ser.dec_poly),
        "m": (True, ser._dec_int),
        "n": (True, ser._dec_int),
        "target": (True, ser.dec_gr),
        "c1": (True, ser.dec_gr),
        "precision": (False, ser._dec_int),
        "out": (False, ser._dec_str),
    })
    w = placer(fields["base"], fields["m"], fields["n"], fields["target"], fields["c1"])
    r = w.approximant
    print(f"witness c1={w.c1} c2={w.c2}; {r}")
    if fields["out"]:
        precision = fields["precision"] or 53
        poles = _pole_rows(w.m, w.n, r.denominator, precision)
        _write_csv(fields["out"], POLE_COLUMNS, poles)
    return 0


def cmd_place_pole(args) -> int:
    return _placement(args, place_pole)


def cmd_place_zero(args) -> int:
    return _placement(args, place_zero)


def cmd_poles_away(args) -> int:
    fields = _config_fields(args.config, {
        "base": (True, ser.dec_poly),
        "m": (True, ser._dec_int),
        "n": (True, ser._dec_int),
        "mu": (True, ser.dec_gr),
        "trunc": (True, ser._dec_int),
        "precision": (False, ser._dec_int),
        "out_series": (False, ser._dec_str),
        "out": (False, ser._dec_str),
    })
    f = poles_outside_disk_witness(
        fields["base"], fields["m"], fields["n"], fields["mu"], fields["trunc"]
    )
    r = pade_via_system(f, fields["m"], fields["n"])
    print(r)
    if fields["out_series"]:
        ser.write_document(fields["out_series"], "series", f)
    if fields["out"]:
        precision = fields["precision"] or 53
        _write_csv(
            fields["out"],
            POLE_COLUMNS,
            _pole_rows(fields["m"], fields["n"], r.denominator, precision),
        )
    return 0


def _certificate_rows(trace):
    rows = []
    for cert in trace.certificates:
        for c in cert.checkpoints:
            rows.append([
                cert.task_index,
                c.step,
                c.p,
                str(c.error_K),
                str(c.error_L),
                ser.polynomial_digest(c.denominator),
            ])
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows


def cmd_build_universal(args) -> int:
    fields = _config_fields(args.config, {
        "denominator_roots": (True, ser._dec_list(ser.dec_gr)),
        "tasks": (True, ser._dec_list(ser.dec_universal_task)),
        "mu": (True, ser.dec_mu),
        "T": (True, ser.dec_poly),
        "L": (True, ser.dec_disk_samples),
        "epsilon0": (True, ser.dec_fraction),
        "rounds": (True, ser._dec_int),
        "escalation_cap": (False, ser._dec_int),
        "out_trace": (False, ser._dec_str),
        "out_certificates": (False, ser._dec_str),
    })
    from .universal import DenominatorSpec

    spec = DenominatorSpec.from_roots(fields["denominator_roots"])
    trace = build_universal(
        spec,
        fields["tasks"],
        fields["mu"],
        fields["T"],
        fields["L"],
        fields["epsilon0"],
        fields["rounds"],
        escalation_cap=fields["escalation_cap"] or 64,
    )
    print(
        f"built {len(trace.steps)} steps; disk error {trace.disk_error}; "
        f"final checkpoint {trace.steps[-1].checkpoint_degree if trace.steps else trace.initial_checkpoint}"
    )
    if fields["out_trace"]:
        ser.write_document(fields["out_trace"], "build_trace", trace)
    if fields["out_certificates"]:
        _write_csv(fields["out_certificates"], CERT_COLUMNS, _certificate_rows(trace))
    return 0


def cmd_verify(args) -> int:
    trace = ser.load_document(args.trace, "build_trace")
    for j in range(len(trace.steps) + 1):
        cert = verify_checkpoint(trace, trace.spec, j)
        print(
            f"checkpoint {j}: p={cert.p} exact equality holds; "
            f"C=({cert.c_pq}, {cert.c_p1q}) normal={cert.normal}"
        )
    print(f"verified {len(trace.steps) + 1} checkpoints")
    return 0


def cmd_gap_build(args) -> int:
    fields = _config_fields(args.config, {
        "mu": (True, ser.dec_mu),
        "schedule": (True, ser.dec_gap_schedule),
        "tasks": (True, ser._dec_list(ser.dec_universal_task)),
        "T": (True, ser.dec_poly),
        "L": (True, ser.dec_disk_samples),
        "epsilon0": (True, ser.dec_fraction),
        "rounds": (True, ser._dec_int),
        "out_series": (False, ser._dec_str),
        "out_certificates": (False, ser._dec_str),
    })
    result = build_gap_series(
        fields["mu"],
        fields["schedule"],
        fields["tasks"],
        fields["T"],
        fields["L"],
        fields["epsilon0"],
        fields["rounds"],
    )
    print(
        f"gap series with checkpoints {result.series.checkpoints}; "
        f"disk error {result.disk_error}"
    )
    if fields["out_series"]:
        ser.write_document(fields["out_series"], "gap_series", result.series)
    if fields["out_certificates"]:
        rows = []
        for per_task in result.certificates:
            for c in per_task:
                rows.append([
                    c.task_index, c.step, c.p, str(c.error_K), str(c.epsilon),
                ])
        rows.sort(key=lambda r: (r[1], r[0]))
        _write_csv(
            fields["out_certificates"],
            ["task", "step", "p", "sampled_error_K", "epsilon"],
            rows,
        )
    return 0


def cmd_gap_transfer(args) -> int:
    fields = _config_fields(args.config, {
        "series": (True, ser._dec_str),
        "denominator_roots": (True, ser._dec_list(ser.dec_gr)),
        "out_series": (False, ser._dec_str),
        "out_certificates": (False, ser._dec_str),
    })
    gs = ser.load_document(fields["series"], "gap_series")
    from .universal import DenominatorSpec

    spec = DenominatorSpec.from_roots(fields["denominator_roots"])
    result = transfer_to_pade(gs, spec)
    for rec in result.records:
        print(
            f"checkpoint {rec.gap_index}: [f;{rec.p}/{rec.q}] = S_{rec.p}(g)/Q exactly "
            f"(normal={rec.normal})"
        )
    if fields["out_series"]:
        ser.write_document(fields["out_series"], "series", result.f)
    if fields["out_certificates"]:
        rows = [
            [rec.gap_index, rec.p, rec.q, "yes" if rec.exact_match else "no",
             ser.polynomial_digest(rec.denominator)]
            for rec in result.records
        ]
        _write_csv(fields["out_certificates"], TRANSFER_COLUMNS, rows)
    return 0


def cmd_span_check(args) -> int:
    fields = _config_fields(args.config, {
        "members": (True, lambda o, p: o),
        "m": (True, ser._dec_int),
        "q": (True, ser._dec_int),
        "out": (False, ser._dec_str),
    })
    members = []
    for i, item in enumerate(fields["members"]):
        got = ser._take(ser._expect_mapping(item, f"$.members[{i}]"), f"$.members[{i}]", {
            "series": (True, ser.dec_series),
            "alpha": (True, ser.dec_gr),
        })
        members.append((got["series"], got["alpha"]))
    result = span_pade_check(members, fields["m"], fields["q"])
    print(
        f"linearity holds; reduced denominator degree p0={result.p0}: "
        f"{result.reduced_denominator}"
    )
    if fields["out"]:
        _write_csv(
            fields["out"],
            ["m", "q", "p0", "reduced_denominator", "linear"],
            [[fields["m"], fields["q"], result.p0,
              str(result.reduced_denominator), "yes"]],
        )
    return 0


COMMANDS = {
    "pade": cmd_pade,
    "table": cmd_table,
    "place-pole": cmd_place_pole,
    "place-zero": cmd_place_zero,
    "poles-away": cmd_poles_away,
    "build-universal": cmd_build_universal,
    "gap-build": cmd_gap_build,
    "gap-transfer": cmd_gap_transfer,
    "span-check": cmd_span_check,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padelab",
        description="Exact-arithmetic Pade approximation experiments",
    )
    parser.add_argument(
        "--seed", type=int, default=0,
        help="seed for randomized drivers (all built-in commands are deterministic)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pade", help="one approximant of a series document")
    p.add_argument("--series", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("table", help="status/Hankel grid up to (max-m, max-n)")
    p.add_argument("--series", required=True)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out")

    for name in ("place-pole", "place-zero", "poles-away", "build-universal",
                 "gap-build", "gap-transfer", "span-check"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)

    p = sub.add_parser("verify", help="re-check every checkpoint of a build trace")
    p.add_argument("--trace", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except EscalationError as exc:
        print(f"oracle escalation failure: {exc}", file=sys.stderr)
        return 4
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    except (PadeLabError, ValueError, ZeroDivisionError) as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
