"""Command-line front end.

Every subcommand prints one JSON document (sorted keys, two-space indent)
and exits with a documented code:

    0  success (simulate: the orbit escaped)
    1  undecided or internal error
    2  parse error in a file or parameter
    3  Jordan certificate failure
    4  simulate: step cap reached without escaping
    5  simulate: the start point is not in K
    6  verify: a measured time exceeded its bound
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .bounds import formulas as F
from .bounds.constants import BoundConstants
from .bounds.magnitude import Mag
from .core import roots
from .core.rational import fmt_rational, parse_rational
from .dynamics.orbit import escape_time
from .errors import CertificateFailure, EscapeTimeError, ParseError, StartOutside
from .linalg.jordan import real_jordan, rec_split
from .linalg.matrix import matrix_from_json
from .semialg.families import additive_start, gen_additive_instance, gen_rotation_instance, rotation_start
from .semialg.formula import EscapeInstance
from .semialg.transform import transform_full
from .verify import check_block_case, family_row, random_block_case

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_CERT, EXIT_CAP, EXIT_OUTSIDE, EXIT_VIOLATION = 0, 1, 2, 3, 4, 5, 6


class _Exit(Exception):
    def __init__(self, code: int, payload: dict | None = None, message: str = ""):
        super().__init__(message)
        self.code = code
        self.payload = payload
        self.message = message


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _ints(text: str) -> list[int]:
    """'1,2' or '1-3' or a mix: '1-3,7'."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part[1:]:
                a, b = part.split("-", 1)
                out.extend(range(int(a), int(b) + 1))
            elif part:
                out.append(int(part))
    except ValueError as exc:
        raise ParseError(f"bad integer list {text!r}") from exc
    return sorted(set(out))


def _point(text: str) -> list[Fraction]:
    return [parse_rational(p) for p in text.split(",") if p.strip()]


def _mag_report(name: str, params: dict, m: Mag, digits: int) -> dict:
    lo, hi = m.decimal_enclosure(digits)
    out = {"bound": name, "params": params, "expression": str(m), "enclosure": [lo, hi],
           "tree": m.to_json()}
    ex = m.exact()
    if ex is not None and ex.is_rational:
        out["value"] = fmt_rational(ex.coef)
    return out


# -- subcommands -------------------------------------------------------------


def cmd_jordan(args, consts) -> dict:
    A = matrix_from_json(_load_json(args.matrix))
    try:
        form = real_jordan(A)
    except CertificateFailure as exc:
        raise _Exit(EXIT_CERT, {"certificate": "failed", "reason": str(exc)}, str(exc)) from exc
    out = form.to_json()
    out["split"] = rec_split(form).to_json()
    return out


def _instance(args) -> tuple[EscapeInstance, list | None]:
    data = _load_json(args.instance)
    inst = EscapeInstance.from_json(data)
    x0 = data.get("x0") if isinstance(data, dict) else None
    if args.x0 is not None:
        x0 = _point(args.x0)
    elif x0 is not None:
        x0 = [parse_rational(v) for v in x0]
    if x0 is None:
        raise ParseError("no start point: pass --x0 or put 'x0' in the instance")
    if len(x0) != len(inst.matrix):
        raise ParseError(f"x0 has {len(x0)} coordinates, the instance has {len(inst.matrix)}")
    return inst, x0


def cmd_simulate(args, consts) -> dict:
    inst, x0 = _instance(args)
    kw = {}
    if args.eps is not None:
        kw = {"form": real_jordan(inst.matrix), "eps": parse_rational(args.eps)}
    try:
        rep = escape_time(inst, x0, args.cap, **kw)
    except StartOutside as exc:
        raise _Exit(EXIT_OUTSIDE, {"error": "start point outside K"}, str(exc)) from exc
    out = rep.to_json()
    out["x0"] = [fmt_rational(v) for v in x0]
    if not rep.escaped:
        raise _Exit(EXIT_CAP, out)
    return out


def cmd_transform(args, consts) -> dict:
    inst = EscapeInstance.from_json(_load_json(args.instance))
    tr = transform_full(inst.matrix, inst.set)
    return {"report": tr.report.to_json(), "set": tr.set.to_json(),
            "gammas": [g.to_json() for g in tr.gammas], "jordan": tr.form.to_json()}


def cmd_generate(args, consts) -> dict:
    if args.family == "additive":
        inst, x0 = gen_additive_instance(args.n, args.d, args.tau), additive_start(args.n, args.d, args.tau)
    else:
        inst, x0 = gen_rotation_instance(args.n, args.d, args.tau), rotation_start(args.n, args.d, args.tau)
    out = inst.to_json()
    out["x0"] = [fmt_rational(v) for v in x0]
    return out


def cmd_verify(args, consts) -> dict:
    rows = []
    if args.family in ("additive", "rotation"):
        ns = _ints(args.n) if args.n else ([2, 3] if args.family == "additive" else [1])
        ds = _ints(args.d) if args.d else [1, 2]
        taus = _ints(args.tau) if args.tau else [1, 2]
        for n in ns:
            for d in ds:
                for tau in taus:
                    rows.append(family_row(args.family, n, d, tau, args.cap, consts).to_json())
        rows.sort(key=lambda r: (r["family"], r["params"]))
        bad = [r for r in rows if r["verdict"] == "VIOLATION"]
    else:
        regimes = ["poly", "exp", "shrink"] if args.regime == "all" else [args.regime]
        for regime in regimes:
            rng = random.Random(f"{args.seed}:{regime}")
            for i in range(args.count):
                o = check_block_case(random_block_case(rng, regime), cap=min(args.cap, 200_000))
                row = o.to_json()
                row["index"] = i
                row["verdict"] = ("measured <= bound" if o.ok else
                                  ("cap exceeded" if o.measured is None else "VIOLATION"))
                rows.append(row)
        rows.sort(key=lambda r: (r["case"]["regime"], r["index"]))
        bad = [r for r in rows if r["verdict"] == "VIOLATION"]
    out = {"family": args.family, "rows": rows, "violations": len(bad),
           "cap_exceeded": sum(r["verdict"] == "cap exceeded" for r in rows)}
    if bad:
        raise _Exit(EXIT_VIOLATION, out)
    return out


def _kv(pairs: list[str]) -> dict:
    out = {}
    for p in pairs:
        if "=" not in p:
            raise ParseError(f"expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


_BOUNDS = {
    # name: (required keys with converters, builder)
    "block-poly": ({"k": int, "C": parse_rational, "eps": parse_rational},
                   lambda p, c: F.block_bound_poly(p["k"], Mag.const(p["C"]), p["eps"])),
    "block-exp": ({"k": int, "C": parse_rational, "eps": parse_rational, "gamma": parse_rational},
                  lambda p, c: F.block_bound_exp(p["k"], Mag.const(p["C"]), p["eps"], p["gamma"])),
    "block-shrink": ({"k": int, "C": parse_rational, "eps": parse_rational, "gamma": parse_rational},
                     lambda p, c: F.block_bound_shrink(p["k"], Mag.const(p["C"]), p["eps"], p["gamma"])),
    "mignotte": ({"d": int, "H": int}, lambda p, c: F.mignotte_gap(p["d"], p["H"])),
    "compact": ({"n": int, "d": int, "tau": int},
                lambda p, c: F.compact_escape_bound(p["n"], p["d"], p["tau"], c)),
    "rec": ({"n": int, "d": int, "tau": int}, lambda p, c: F.rec_bound(p["n"], p["d"], p["tau"], c)),
    "nonrec": ({"n": int, "d": int, "tau": int, "eps": parse_rational},
               lambda p, c: F.nonrec_bound(p["n"], p["d"], p["tau"], p["eps"], c)),
    "switching": ({"n": int}, lambda p, c: Mag.const(F.switching_budget(p["n"]))),
    "crossing": ({"m": int}, lambda p, c: Mag.const(F.block_crossing_budget(p["m"]))),
}

_DEFAULTS = {"compact": {"n": "1", "d": "1", "tau": "1"}}


def cmd_bounds(args, consts) -> dict:
    keys, build = _BOUNDS[args.kind]
    raw = dict(_DEFAULTS.get(args.kind, {}))
    raw.update(_kv(args.params))
    unknown = set(raw) - set(keys)
    missing = set(keys) - set(raw)
    if unknown or missing:
        raise ParseError(f"{args.kind} takes {sorted(keys)}; unknown {sorted(unknown)}, missing {sorted(missing)}")
    try:
        params = {k: conv(raw[k]) for k, conv in keys.items()}
        m = build(params, consts)
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc
    shown = {k: (fmt_rational(v) if isinstance(v, Fraction) else v) for k, v in params.items()}
    return _mag_report(args.kind, shown, m, args.digits)


# -- plumbing ----------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--cap", type=lambda s: int(float(s)), default=10 ** 6, help="step cap (default 1e6)")
    p.add_argument("--precision-bits", type=int, default=1 << 16, help="refinement cap in bits (default 65536)")
    p.add_argument("--constants", help="JSON file with BoundConstants")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    p.add_argument("--json-out", help="also write the report to this path")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="escapetime", description="Exact escape-time experiments for linear loops.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jordan", parents=[common], help="certified real Jordan form of a rational matrix")
    p.add_argument("matrix", help="matrix JSON file ('-' for stdin)")
    p.set_defaults(func=cmd_jordan)

    p = sub.add_parser("simulate", parents=[common], help="exact escape time of one orbit")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--x0", help="start point as comma-separated rationals")
    p.add_argument("--eps", help="also label the orbit and count eps-crossings per block")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("transform", parents=[common], help="Jordan-coordinate rewrite of an instance")
    p.add_argument("instance")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("generate", parents=[common], help="write an example family instance")
    p.add_argument("family", choices=["additive", "rotation"])
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("tau", type=int)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", parents=[common], help="measured times against their bounds")
    p.add_argument("family", choices=["additive", "rotation", "random-block"])
    p.add_argument("--n", help="values of n, e.g. 2,3 or 1-4")
    p.add_argument("--d")
    p.add_argument("--tau")
    p.add_argument("--regime", choices=["poly", "exp", "shrink", "all"], default="shrink")
    p.add_argument("--count", type=int, default=20, help="random blocks per regime")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", parents=[common], help="evaluate one bound formula")
    p.add_argument("kind", choices=sorted(_BOUNDS))
    p.add_argument("params", nargs="*", help="key=value pairs, e.g. k=2 C=10 eps=1")
    p.add_argument("--digits", type=int, default=20, help="significant digits of the enclosure")
    p.set_defaults(func=cmd_bounds)
    return ap


def _emit(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        if args.cap < 1:
            raise ParseError("--cap must be at least 1")
        roots.set_precision_cap(args.precision_bits)
        consts = BoundConstants.load(args.constants) if args.constants else BoundConstants()
        payload = args.func(args, consts)
    except _Exit as exc:
        code, payload = exc.code, exc.payload
        if exc.message:
            print(exc.message, file=sys.stderr)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EscapeTimeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if payload is not None:
        payload = dict(payload)
        payload["command"] = args.command
        payload["constants"] = consts.to_json()
        _emit(payload, args.json_out)
    return code


if __name__ == "__main__":
    sys.exit(main())
