"""Command-line front end.

Exit codes: 0 ok, 1 round-trip mismatch, 2 bad input, 3 insufficient data,
4 payload does not fit, 5 undecodable symbol, 6 grammar violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import grammar
from .errors import CodecError, GrammarError, InsufficientDataError, TraceError
from .grammar import Schema
from .qr import EcLevel, decode, encode_numeric, format_pbm, parse_pbm, read_pbm, write_pbm, write_png
from .qr.tables import MODE_NUMERIC
from .retrieval import RetrievalParams, gate_sequences, reconstruct, write_reconstruction
from .signal_model import (
    DEFAULT_WINDOW_S,
    GateKind,
    LightCondition,
    StimulusSchedule,
    format_trace_csv,
    proteinoid_from_code,
    read_trace_csv,
    synthesize_trace,
)
from .spike_gates import DetectionParams, analyze_trace

EXIT_OK = 0
EXIT_MISMATCH = 1


def _gate(token: str) -> GateKind:
    token = token.strip()
    try:
        return GateKind(token)
    except ValueError:
        pass
    try:
        return GateKind[token.upper().replace("-", "_")]
    except KeyError:
        raise TraceError(f"unknown gate {token!r}") from None


def _proteinoid(code: str):
    if len(code) != 2 or not set(code) <= set("357"):
        raise TraceError(f"not a proteinoid code: {code!r}")
    return proteinoid_from_code(code)


def _light(code: str) -> LightCondition:
    try:
        return LightCondition(code)
    except ValueError:
        raise TraceError(f"not a light code: {code!r}") from None


def _detection(args) -> DetectionParams:
    try:
        return DetectionParams(args.threshold_sigma, args.refractory, not args.no_detrend, args.noise_sigma)
    except ValueError as exc:
        raise TraceError(str(exc)) from None


def _schedule(args) -> StimulusSchedule:
    return StimulusSchedule(args.window, _light(args.light))


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _analyze(path: str, schedule: StimulusSchedule, params: DetectionParams):
    trace = read_trace_csv(path)
    analyses = analyze_trace(trace, schedule, params)
    if not analyses:
        raise InsufficientDataError("trace shorter than one window")
    return analyses


def cmd_synth(args) -> int:
    gates = [_gate(g) for g in args.gates.split(",") if g.strip()]
    trace = synthesize_trace(
        _proteinoid(args.proteinoid),
        _schedule(args),
        gates,
        sample_rate_hz=args.rate,
        noise_rms_mv=args.noise,
        seed=args.seed,
    )
    text = format_trace_csv(trace)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    for analysis in _analyze(args.csv, _schedule(args), _detection(args)):
        _emit(json.dumps(analysis.to_json()))
    return EXIT_OK


def _load_message(path: str) -> grammar.Message:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise GrammarError(f"cannot read message JSON: {exc}") from None
    return grammar.message_from_json(obj)


def cmd_encode(args) -> int:
    digits = grammar.serialize(_load_message(args.message)) if args.message else args.payload
    if digits is None:
        raise TraceError("give a digit payload or --message")
    matrix = encode_numeric(digits, args.ec, args.version)
    write_pbm(matrix, args.out)
    if args.png:
        write_png(matrix, args.png, scale=args.scale)
    _emit(f"version={matrix.version} ec={matrix.ec_level.value} mask={matrix.mask_id} digits={digits}")
    return EXIT_OK


def _decode_digits(bitmap) -> str:
    result = decode(bitmap)
    if not result.segments or any(mode != MODE_NUMERIC for mode, _ in result.segments):
        _emit(result.text)
        raise GrammarError("payload is not a numeric digit string")
    return "".join(p for _, p in result.segments)


def cmd_decode(args) -> int:
    digits = _decode_digits(read_pbm(args.pbm))
    _emit(digits)
    subject = grammar.parse_subject(args.schema, args.subject) if args.schema else None
    message = grammar.parse(digits, args.schema, subject)
    _emit(json.dumps(grammar.message_to_json(message)))
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    if args.pbm:
        digits = _decode_digits(read_pbm(args.pbm))
    elif args.digits:
        digits = args.digits
    else:
        raise TraceError("give --digits or --pbm")
    schema = Schema(args.schema) if args.schema else grammar.infer_schema(digits)
    message = grammar.parse(digits, schema, grammar.parse_subject(schema, args.subject))
    params = RetrievalParams(sample_rate_hz=args.rate, window_len_s=args.window)
    for path in write_reconstruction(message, args.out_dir, params):
        _emit(str(path))
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    schedule = _schedule(args)
    params = _detection(args)
    proteinoid = _proteinoid(args.proteinoid)
    light = schedule.light

    gates = [a.gate for a in _analyze(args.csv, schedule, params)]
    _emit("analyzed: " + " ".join(g.code for g in gates))

    schema = Schema(args.schema)
    subject = light if schema is Schema.BY_LIGHT else proteinoid
    message = grammar.message_from_analysis({(light, proteinoid): gates}, schema, subject)
    digits = grammar.serialize(message)
    _emit(f"digits: {digits}")

    matrix = encode_numeric(digits, args.ec, args.version)
    pbm = format_pbm(matrix)
    if args.pbm_out:
        Path(args.pbm_out).write_text(pbm, encoding="ascii", newline="\n")
    _emit(f"qr: version={matrix.version} ec={matrix.ec_level.value} mask={matrix.mask_id}")

    decoded = _decode_digits(parse_pbm(pbm))
    _emit(f"decoded: {decoded}")
    parsed = grammar.parse(decoded, schema, subject)
    retrieved = gate_sequences(parsed)[light, proteinoid]

    traces = reconstruct(parsed, RetrievalParams(window_len_s=schedule.window_len_s))
    reanalyzed = [a.gate for a in analyze_trace(traces[light, proteinoid], schedule, params)]
    _emit("reanalyzed: " + " ".join(g.code for g in reanalyzed))

    identical = parsed == message and retrieved == gates and reanalyzed == gates
    _emit("IDENTICAL" if identical else "DIFFERENT")
    return EXIT_OK if identical else EXIT_MISMATCH


def _add_schedule_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", type=float, default=DEFAULT_WINDOW_S, help="window length in seconds")
    p.add_argument("--light", default="10", help="light condition code (01, 10, 11)")


def _add_detection_flags(p: argparse.ArgumentParser) -> None:
    d = DetectionParams()
    p.add_argument("--threshold-sigma", type=float, default=d.threshold_sigma)
    p.add_argument("--noise-sigma", type=float, default=d.noise_sigma)
    p.add_argument("--refractory", type=float, default=d.refractory_s, help="seconds")
    p.add_argument("--no-detrend", action="store_true")


def _add_qr_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ec", choices=[lv.value for lv in EcLevel], default="M")
    p.add_argument("--version", type=int, default=None, help="QR version 1-10 (default: smallest that fits)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="proteinoid-qr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    schemas = [s.value for s in Schema]

    p = sub.add_parser("synth", help="write a synthetic trace for a gate program")
    p.add_argument("--gates", required=True, help="comma-separated gate codes or names, e.g. 42,44 or AND,OR")
    p.add_argument("--proteinoid", default="35")
    p.add_argument("--rate", type=float, default=1.0, help="sample rate in Hz")
    p.add_argument("--noise", type=float, default=0.0, help="noise rms in mV")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out")
    _add_schedule_flags(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("analyze", help="classify each window of a CSV trace (JSON lines)")
    p.add_argument("csv")
    _add_schedule_flags(p)
    _add_detection_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("encode", help="render a digit string or message JSON as a QR PBM")
    p.add_argument("payload", nargs="?")
    p.add_argument("--message", help="message JSON file")
    p.add_argument("--out", required=True, help="PBM output path")
    p.add_argument("--png", help="also write a PNG")
    p.add_argument("--scale", type=int, default=8, help="PNG pixels per module")
    _add_qr_flags(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="read a QR PBM back to digits and a message")
    p.add_argument("pbm")
    p.add_argument("--schema", choices=schemas)
    p.add_argument("--subject", help="subject code attached to the parsed message")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("reconstruct", help="rebuild CSV traces from digits or a QR PBM")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--digits")
    src.add_argument("--pbm")
    p.add_argument("--schema", choices=schemas)
    p.add_argument("--subject")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--rate", type=float, default=1.0)
    p.add_argument("--window", type=float, default=DEFAULT_WINDOW_S)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("roundtrip", help="analyze, encode, decode, reconstruct and compare")
    p.add_argument("csv")
    p.add_argument("--proteinoid", default="35")
    p.add_argument("--schema", choices=[Schema.BY_LIGHT.value, Schema.BY_PROTEINOID.value], default="by_light")
    p.add_argument("--pbm-out", help="keep the intermediate PBM")
    _add_schedule_flags(p)
    _add_detection_flags(p)
    _add_qr_flags(p)
    p.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CodecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
