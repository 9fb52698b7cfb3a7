"""Structured-text (JSON) encoding of every value the front-end exchanges.

One schema, version-tagged; rationals travel as canonical strings so no
precision is ever lost.  Decoding is strict: unknown fields are rejected, and
every document round-trips bit-exactly.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

from .errors import ConfigError
from .gaussian import GaussianRational
from .gaps import GapSchedule, GapSeries
from .poly import Polynomial, RationalFunction
from .sampling import CompactSetSpec, DiskSampleSpec
from .series import PowerSeries
from .universal import (
    BuildTrace,
    CheckpointRecord,
    DenominatorSpec,
    OracleReport,
    StepRecord,
    TaskCertificate,
    UniversalTask,
)

SCHEMA_VERSION = 1


def _fail(path: str, message: str):
    raise ConfigError(f"{path}: {message}")


def _expect_mapping(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    return obj


def _take(obj: dict, path: str, spec: dict) -> dict:
    """Strict field extraction: all required keys, no unknown keys."""
    out = {}
    for key, (required, decoder) in spec.items():
        if key in obj:
            out[key] = decoder(obj[key], f"{path}.{key}")
        elif required:
            _fail(path, f"missing required field {key!r}")
        else:
            out[key] = None
    unknown = set(obj) - set(spec)
    if unknown:
        _fail(path, f"unknown fields {sorted(unknown)}")
    return out


# -- scalar codecs ----------------------------------------------------------

def enc_gr(x: GaussianRational) -> str:
    return str(x)


def dec_gr(obj, path: str) -> GaussianRational:
    if not isinstance(obj, str):
        _fail(path, "Gaussian rationals are encoded as strings")
    try:
        return GaussianRational.from_string(obj)
    except ValueError as exc:
        _fail(path, str(exc))


def enc_fraction(x: Fraction) -> str:
    return str(Fraction(x))


def dec_fraction(obj, path: str) -> Fraction:
    if not isinstance(obj, str):
        _fail(path, "rationals are encoded as strings")
    try:
        return Fraction(obj)
    except (ValueError, ZeroDivisionError) as exc:
        _fail(path, f"bad rational literal {obj!r}: {exc}")


def _dec_int(obj, path: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        _fail(path, "expected an integer")
    return obj


def _dec_bool(obj, path: str) -> bool:
    if not isinstance(obj, bool):
        _fail(path, "expected a boolean")
    return obj


def _dec_str(obj, path: str) -> str:
    if not isinstance(obj, str):
        _fail(path, "expected a string")
    return obj


def _dec_list(decoder):
    def inner(obj, path: str):
        if not isinstance(obj, list):
            _fail(path, "expected an array")
        return [decoder(v, f"{path}[{i}]") for i, v in enumerate(obj)]

    return inner


def enc_coeffs(coeffs) -> list[str]:
    return [enc_gr(c) for c in coeffs]


def enc_poly(p: Polynomial) -> list[str]:
    return enc_coeffs(p.coeffs)


def dec_poly(obj, path: str) -> Polynomial:
    return Polynomial(_dec_list(dec_gr)(obj, path))


def enc_series(s: PowerSeries) -> list[str]:
    return enc_coeffs(s.coeffs)


def dec_series(obj, path: str) -> PowerSeries:
    coeffs = _dec_list(dec_gr)(obj, path)
    if not coeffs:
        _fail(path, "a series needs at least one coefficient")
    return PowerSeries(coeffs)


def enc_rational_function(f: RationalFunction) -> dict:
    return {"num": enc_poly(f.num), "den": enc_poly(f.den)}


def dec_rational_function(obj, path: str) -> RationalFunction:
    fields = _take(_expect_mapping(obj, path), path, {
        "num": (True, dec_poly),
        "den": (True, dec_poly),
    })
    if fields["den"].is_zero():
        _fail(path, "zero denominator")
    return RationalFunction(fields["num"], fields["den"])


def enc_compact_set(k: CompactSetSpec) -> dict:
    return {
        "samples": [enc_gr(z) for z in k.samples],
        "margin": enc_fraction(k.margin),
        "excluded": [enc_gr(w) for w in k.excluded],
    }


def dec_compact_set(obj, path: str) -> CompactSetSpec:
    fields = _take(_expect_mapping(obj, path), path, {
        "samples": (True, _dec_list(dec_gr)),
        "margin": (True, dec_fraction),
        "excluded": (False, _dec_list(dec_gr)),
    })
    try:
        return CompactSetSpec(
            tuple(fields["samples"]), fields["margin"], tuple(fields["excluded"] or ())
        )
    except ValueError as exc:
        _fail(path, str(exc))


def enc_disk_samples(l: DiskSampleSpec) -> dict:
    return {"samples": [enc_gr(z) for z in l.samples], "radius": enc_fraction(l.radius)}


def dec_disk_samples(obj, path: str) -> DiskSampleSpec:
    fields = _take(_expect_mapping(obj, path), path, {
        "samples": (True, _dec_list(dec_gr)),
        "radius": (True, dec_fraction),
    })
    try:
        return DiskSampleSpec(tuple(fields["samples"]), fields["radius"])
    except ValueError as exc:
        _fail(path, str(exc))


def enc_denominator(spec: DenominatorSpec) -> dict:
    return {"roots": [enc_gr(w) for w in spec.roots]}


def dec_denominator(obj, path: str) -> DenominatorSpec:
    fields = _take(_expect_mapping(obj, path), path, {
        "roots": (True, _dec_list(dec_gr)),
    })
    try:
        return DenominatorSpec.from_roots(fields["roots"])
    except ValueError as exc:
        _fail(path, str(exc))


def enc_universal_task(t: UniversalTask) -> dict:
    return {
        "target": enc_rational_function(t.target),
        "K": enc_compact_set(t.K),
        "epsilon": enc_fraction(t.epsilon),
    }


def dec_universal_task(obj, path: str) -> UniversalTask:
    fields = _take(_expect_mapping(obj, path), path, {
        "target": (True, dec_rational_function),
        "K": (True, dec_compact_set),
        "epsilon": (True, dec_fraction),
    })
    try:
        return UniversalTask(fields["target"], fields["K"], fields["epsilon"])
    except ValueError as exc:
        _fail(path, str(exc))


def dec_mu(obj, path: str) -> tuple:
    """The row-index pool: either an explicit array or {"start","stop"}."""
    if isinstance(obj, list):
        return tuple(_dec_int(v, f"{path}[{i}]") for i, v in enumerate(obj))
    fields = _take(_expect_mapping(obj, path), path, {
        "start": (True, _dec_int),
        "stop": (True, _dec_int),
    })
    if not 1 <= fields["start"] < fields["stop"]:
        _fail(path, "need 1 <= start < stop")
    return tuple(range(fields["start"], fields["stop"]))


def enc_gap_schedule(s: GapSchedule) -> dict:
    return {"pairs": [[p, q] for p, q in s.pairs], "phi_table": list(s.phi_table)}


def dec_gap_schedule(obj, path: str) -> GapSchedule:
    fields = _take(_expect_mapping(obj, path), path, {
        "pairs": (True, _dec_list(_dec_list(_dec_int))),
        "phi_table": (True, _dec_list(_dec_int)),
    })
    for i, pair in enumerate(fields["pairs"]):
        if len(pair) != 2:
            _fail(f"{path}.pairs[{i}]", "each gap pair is [p, q]")
    try:
        return GapSchedule(tuple(map(tuple, fields["pairs"])), tuple(fields["phi_table"]))
    except ValueError as exc:
        _fail(path, str(exc))


def enc_gap_series(gs: GapSeries) -> dict:
    return {
        "series": enc_series(gs.g),
        "schedule": enc_gap_schedule(gs.schedule),
        "checkpoints": list(gs.checkpoints),
    }


def dec_gap_series(obj, path: str) -> GapSeries:
    fields = _take(_expect_mapping(obj, path), path, {
        "series": (True, dec_series),
        "schedule": (True, dec_gap_schedule),
        "checkpoints": (False, _dec_list(_dec_int)),
    })
    try:
        return GapSeries(
            fields["series"], fields["schedule"], tuple(fields["checkpoints"] or ())
        )
    except ValueError as exc:
        _fail(path, str(exc))


def _enc_oracle(r: OracleReport) -> dict:
    return {
        "fit_degree": r.fit_degree,
        "error_K": enc_fraction(r.error_K),
        "error_L": enc_fraction(r.error_L),
        "monomial_exponent": r.monomial_exponent,
        "monomial_coeff": enc_gr(r.monomial_coeff) if r.monomial_coeff else None,
    }


def _dec_oracle(obj, path: str) -> OracleReport:
    fields = _take(_expect_mapping(obj, path), path, {
        "fit_degree": (True, _dec_int),
        "error_K": (True, dec_fraction),
        "error_L": (True, dec_fraction),
        "monomial_exponent": (False, lambda o, p: None if o is None else _dec_int(o, p)),
        "monomial_coeff": (False, lambda o, p: None if o is None else dec_gr(o, p)),
    })
    return OracleReport(**fields)


def _enc_step(s: StepRecord) -> dict:
    return {
        "index": s.index,
        "task_index": s.task_index,
        "increment": enc_poly(s.increment),
        "valuation": s.valuation,
        "valuation_floor": s.valuation_floor,
        "epsilon": enc_fraction(s.epsilon),
        "checkpoint_degree": s.checkpoint_degree,
        "oracle": _enc_oracle(s.oracle),
    }


def _dec_step(obj, path: str) -> StepRecord:
    fields = _take(_expect_mapping(obj, path), path, {
        "index": (True, _dec_int),
        "task_index": (True, _dec_int),
        "increment": (True, dec_poly),
        "valuation": (True, _dec_int),
        "valuation_floor": (True, _dec_int),
        "epsilon": (True, dec_fraction),
        "checkpoint_degree": (True, _dec_int),
        "oracle": (True, _dec_oracle),
    })
    return StepRecord(**fields)


def _enc_checkpoint(c: CheckpointRecord) -> dict:
    return {
        "step": c.step,
        "p": c.p,
        "error_K": enc_fraction(c.error_K),
        "error_L": enc_fraction(c.error_L),
        "denominator": enc_poly(c.denominator),
        "c_pq": enc_gr(c.c_pq),
        "c_p1q": enc_gr(c.c_p1q),
        "normal": c.normal,
    }


def _dec_checkpoint(obj, path: str) -> CheckpointRecord:
    fields = _take(_expect_mapping(obj, path), path, {
        "step": (True, _dec_int),
        "p": (True, _dec_int),
        "error_K": (True, dec_fraction),
        "error_L": (True, dec_fraction),
        "denominator": (True, dec_poly),
        "c_pq": (True, dec_gr),
        "c_p1q": (True, dec_gr),
        "normal": (True, _dec_bool),
    })
    return CheckpointRecord(**fields)


def _enc_certificate(c: TaskCertificate) -> dict:
    return {
        "task_index": c.task_index,
        "checkpoints": [_enc_checkpoint(x) for x in c.checkpoints],
    }


def _dec_certificate(obj, path: str) -> TaskCertificate:
    fields = _take(_expect_mapping(obj, path), path, {
        "task_index": (True, _dec_int),
        "checkpoints": (True, _dec_list(_dec_checkpoint)),
    })
    return TaskCertificate(fields["task_index"], tuple(fields["checkpoints"]))


def enc_build_trace(t: BuildTrace) -> dict:
    return {
        "spec": enc_denominator(t.spec),
        "mu": list(t.mu),
        "epsilon0": enc_fraction(t.epsilon0),
        "T": enc_poly(t.T),
        "L": enc_disk_samples(t.L),
        "f0": enc_poly(t.f0),
        "initial_checkpoint": t.initial_checkpoint,
        "steps": [_enc_step(s) for s in t.steps],
        "f_tilde": enc_poly(t.f_tilde),
        "f": enc_series(t.f),
        "certificates": [_enc_certificate(c) for c in t.certificates],
        "disk_error": enc_fraction(t.disk_error),
    }


def dec_build_trace(obj, path: str) -> BuildTrace:
    fields = _take(_expect_mapping(obj, path), path, {
        "spec": (True, dec_denominator),
        "mu": (True, dec_mu),
        "epsilon0": (True, dec_fraction),
        "T": (True, dec_poly),
        "L": (True, dec_disk_samples),
        "f0": (True, dec_poly),
        "initial_checkpoint": (True, _dec_int),
        "steps": (True, _dec_list(_dec_step)),
        "f_tilde": (True, dec_poly),
        "f": (True, dec_series),
        "certificates": (True, _dec_list(_dec_certificate)),
        "disk_error": (True, dec_fraction),
    })
    return BuildTrace(
        spec=fields["spec"],
        mu=fields["mu"],
        epsilon0=fields["epsilon0"],
        T=fields["T"],
        L=fields["L"],
        f0=fields["f0"],
        initial_checkpoint=fields["initial_checkpoint"],
        steps=tuple(fields["steps"]),
        f_tilde=fields["f_tilde"],
        f=fields["f"],
        certificates=tuple(fields["certificates"]),
        disk_error=fields["disk_error"],
    )


# -- documents ---------------------------------------------------------------

_KIND_CODECS = {
    "polynomial": (enc_poly, dec_poly),
    "series": (enc_series, dec_series),
    "rational_function": (enc_rational_function, dec_rational_function),
    "compact_set": (enc_compact_set, dec_compact_set),
    "disk_samples": (enc_disk_samples, dec_disk_samples),
    "denominator": (enc_denominator, dec_denominator),
    "universal_task": (enc_universal_task, dec_universal_task),
    "gap_schedule": (enc_gap_schedule, dec_gap_schedule),
    "gap_series": (enc_gap_series, dec_gap_series),
    "build_trace": (enc_build_trace, dec_build_trace),
}


def document(kind: str, value) -> dict:
    enc, _ = _KIND_CODECS[kind]
    return {"schema": SCHEMA_VERSION, "kind": kind, "payload": enc(value)}


def dumps_document(kind: str, value) -> str:
    return json.dumps(document(kind, value), sort_keys=True, indent=2) + "\n"


def write_document(path, kind: str, value):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_document(kind, value))


def parse_document(obj: Any, expected_kind: str | None = None):
    doc = _expect_mapping(obj, "$")
    fields = _take(doc, "$", {
        "schema": (True, _dec_int),
        "kind": (True, _dec_str),
        "payload": (True, lambda o, p: o),
    })
    if fields["schema"] != SCHEMA_VERSION:
        _fail("$.schema", f"unsupported schema version {fields['schema']}")
    kind = fields["kind"]
    if kind not in _KIND_CODECS:
        _fail("$.kind", f"unknown document kind {kind!r}")
    if expected_kind is not None and kind != expected_kind:
        _fail("$.kind", f"expected a {expected_kind!r} document, found {kind!r}")
    _, dec = _KIND_CODECS[kind]
    return dec(fields["payload"], "$.payload")


def load_document(path, expected_kind: str | None = None):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}")
    return parse_document(obj, expected_kind)


def load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}")


def polynomial_digest(p: Polynomial) -> str:
    """Stable content hash used in certificate CSVs."""
    text = ";".join(str(c) for c in p.coeffs)
    return hashlib.sha256(text.encode()).hexdigest()[:16]
