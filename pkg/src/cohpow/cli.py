"""Command-line client for the coherence-power service.

Subcommands build the same request models the HTTP endpoints accept and
execute them in process by default, or against a running server when
``--server URL`` is given.  Exit codes: 0 success, 1 verification failure,
2 malformed JSON input (the message names the offending field), 3 physical
invariant violations (the message carries the measured residual).

JSON output is deterministic for a fixed argv and seed (sorted keys, no
timing fields); wall-clock times appear only in CSV and table output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from pydantic import ValidationError

from .errors import DimensionError, FormatError, InvariantError
from .schemas import (
    ChannelModel,
    ChannelSpecModel,
    MeasureRequest,
    PowerRequest,
    StateModel,
    SweepRequest,
    VerifyRequest,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_FORMAT = 2
EXIT_BAD_INVARIANT = 3


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(path, f"cannot read file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(path, f"invalid JSON: {exc}") from exc


def _validate(model_cls, obj, context: str):
    try:
        return model_cls.model_validate(obj)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(part) for part in first.get("loc", ()))
        field = f"{context}.{loc}" if loc else context
        raise FormatError(field, first.get("msg", "invalid value")) from exc


def _channel_args(args):
    if (args.channel is None) == (args.spec is None):
        raise FormatError("channel", "provide exactly one of --channel or --spec")
    if args.channel is not None:
        return _validate(ChannelModel, _load_json(args.channel), "channel"), None
    return None, _validate(ChannelSpecModel, _load_json(args.spec), "spec")


def _post(server: str, path: str, payload: dict) -> dict:
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=3600.0)
    if resp.status_code == 422:
        detail = resp.json().get("detail", resp.text)
        if isinstance(detail, str) and detail.startswith("field '"):
            raise FormatError("request", detail)
        raise DimensionError(str(detail))
    resp.raise_for_status()
    return resp.json()


def _execute(args, path: str, request, runner) -> dict:
    """Run a request remotely or in process; either way return a plain dict."""
    payload = request.model_dump(exclude_none=True)
    if args.server:
        return _post(args.server, path, payload)
    return runner(request).model_dump()


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_measure(args) -> int:
    from .service import run_measure

    state = _validate(StateModel, _load_json(args.state), "state")
    req = MeasureRequest(state=state, kind=args.kind)
    result = _execute(args, "/measure", req, run_measure)
    if args.format == "json":
        _emit(_json_text(result), args.out)
    else:
        _emit(f"{result['value']:.12g}\n", args.out)
    return EXIT_OK


def _power_table(result: dict) -> str:
    lines = [f"power: {result['power']}   measure: {result['measure']}"]
    if result.get("cgen_upper_bound") is not None:
        lines.append(
            "coherence generating capacity: "
            f"<= {result['cgen_upper_bound']:.9g} "
            "(exact under maximal incoherent operations)"
        )
    header = f"{'k':>3}  {'value':>14}  {'upper_bound':>12}  {'family':<16}  {'feasible':<8}"
    lines.append(header)
    for rep in result["reports"]:
        ub = rep["upper_bound"]
        ub_text = ub if isinstance(ub, str) else f"{ub:.6g}"
        lines.append(
            f"{rep['k']:>3}  {rep['value']:>14.9f}  {ub_text:>12}  "
            f"{rep['family']:<16}  {str(rep['feasible']):<8}"
        )
        if rep.get("product_lower_bound") is not None:
            lines.append(f"     product lower bound: {rep['product_lower_bound']:.9g}")
    return "\n".join(lines) + "\n"


def cmd_power(args) -> int:
    from .service import run_power

    channel, spec = _channel_args(args)
    req = PowerRequest(
        channel=channel,
        spec=spec,
        power=args.power,
        measure=args.measure,
        k_max=args.kmax,
        restarts=args.restarts,
        seed=args.seed,
    )
    result = _execute(args, "/power", req, run_power)
    if args.format == "json":
        _emit(_json_text(result), args.out)
    else:
        _emit(_power_table(result), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    from .service import run_sweep

    channel, spec = _channel_args(args)
    req = SweepRequest(
        channel=channel,
        spec=spec,
        power=args.power,
        measure=args.measure,
        k_max=args.kmax,
        restarts=args.restarts,
        seed=args.seed,
    )
    result = _execute(args, "/sweep", req, run_sweep)
    if args.format == "json":
        for row in result["rows"]:
            row.pop("wall_ms", None)  # keep JSON reports byte-reproducible
        _emit(_json_text(result), args.out)
        return EXIT_OK
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["k", "value", "upper_bound", "family", "seed", "wall_ms"])
        for row in result["rows"]:
            writer.writerow(
                [
                    row["k"],
                    repr(row["value"]),
                    row["upper_bound"],
                    row["family"],
                    row["seed"],
                    f"{row['wall_ms']:.1f}",
                ]
            )
        _emit(buf.getvalue(), args.out)
        return EXIT_OK
    lines = [f"sweep: {result['power']}   measure: {result['measure']}"]
    for row in result["rows"]:
        ub = row["upper_bound"]
        ub_text = ub if isinstance(ub, str) else f"{ub:.6g}"
        lines.append(
            f"k={row['k']}  value={row['value']:.9f}  bound={ub_text}  "
            f"family={row['family']}  wall={row['wall_ms']:.0f}ms"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _verify_table(result: dict) -> str:
    lines = []
    for claim in result["claims"]:
        status = "PASS" if claim["passed"] else "FAIL"
        lines.append(f"[{status}] {claim['claim_id']} (tolerance {claim['tolerance']:g})")
        lines.append(f"       {claim['description']}")
        for name, value in claim["measured"].items():
            text = value if isinstance(value, str) else f"{value:.9g}"
            lines.append(f"       {name} = {text}")
    lines.append(
        "all claims passed" if result["all_passed"] else "SOME CLAIMS FAILED"
    )
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    from .service import run_verify

    claims = args.claims.split(",") if args.claims else None
    req = VerifyRequest(seed=args.seed, claims=claims)
    result = _execute(args, "/verify", req, run_verify)
    if args.format == "json":
        _emit(_json_text(result), args.out)
    else:
        _emit(_verify_table(result), args.out)
    return EXIT_OK if result["all_passed"] else EXIT_VERIFY_FAILED


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _add_common(parser, formats, default_format):
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--format", choices=formats, default=default_format)
    parser.add_argument("--server", help="base URL of a running service (default: run in process)")


def _add_channel_source(parser):
    parser.add_argument("--channel", help="path to a Kraus-channel JSON file")
    parser.add_argument("--spec", help="path to a channel-spec JSON file")
    parser.add_argument("--seed", type=int, default=0, help="optimizer seed")
    parser.add_argument("--restarts", type=int, help="optimizer restarts override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohpow",
        description="Coherence measures and channel cohering/decohering powers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="coherence of a state read from JSON")
    p.add_argument("--state", required=True, help="path to a state JSON file")
    p.add_argument("--kind", choices=["rel-entropy", "l1"], required=True)
    _add_common(p, ["json", "table"], "table")
    p.set_defaults(fn=cmd_measure)

    p = sub.add_parser("power", help="one channel power (optimized + bound)")
    _add_channel_source(p)
    p.add_argument(
        "--power",
        required=True,
        choices=[
            "cohering",
            "generalized-cohering",
            "complete-cohering",
            "decohering",
            "generalized-decohering",
            "complete-decohering",
            "separable-complete-decohering",
            "cgen-upper-bound",
        ],
    )
    p.add_argument("--measure", choices=["rel-entropy", "l1"], default="rel-entropy")
    p.add_argument("--kmax", type=int, help="ancilla sweep bound for complete powers")
    _add_common(p, ["json", "table"], "table")
    p.set_defaults(fn=cmd_power)

    p = sub.add_parser("sweep", help="complete-power sweep over ancilla dimensions")
    _add_channel_source(p)
    p.add_argument(
        "--power",
        required=True,
        choices=[
            "complete-cohering",
            "complete-decohering",
            "separable-complete-decohering",
        ],
    )
    p.add_argument("--measure", choices=["rel-entropy", "l1"], default="rel-entropy")
    p.add_argument("--kmax", type=int, default=4)
    _add_common(p, ["csv", "json", "table"], "csv")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("verify", help="run the claim verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--claims", help="comma-separated claim ids (default: all)")
    _add_common(p, ["json", "table"], "table")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(part) for part in first.get("loc", ())) or "request"
        print(f"error: field '{loc}': {first.get('msg', exc)}", file=sys.stderr)
        return EXIT_BAD_FORMAT
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_FORMAT
    except (InvariantError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
