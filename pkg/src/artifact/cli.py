"""Command line front end.

Input is a JSON file (or ``-`` for stdin) of the form
``{"rank": d, "generators": [[...], ...]}``.  Exit status is 0 on success,
2 for malformed input and 1 for errors raised by the engine.
"""
import argparse
import json
import sys

from .errors import ArtifactError
from .logjac import build_semigroup, candidate_pole_set, log_jacobian_ladder, phi_profile
from .motivic_engine import motivic_volume, p_geom_global_normal, p_geom_local
from .oracle import compare
from .series_ring import format_poly


class InputError(ValueError):
    def __init__(self, field, msg):
        super().__init__(f"{field}: {msg}")
        self.field = field


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_input(text: str):
    """Validate the JSON input and return (rank, generators)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("input", f"not valid JSON ({e.msg})") from None
    if not isinstance(obj, dict):
        raise InputError("input", "expected a JSON object")
    if "rank" not in obj:
        raise InputError("rank", "missing")
    d = obj["rank"]
    if not _is_int(d) or d < 1:
        raise InputError("rank", "must be a positive integer")
    if "generators" not in obj:
        raise InputError("generators", "missing")
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise InputError("generators", "must be a nonempty list of integer vectors")
    for i, g in enumerate(gens):
        if not isinstance(g, list) or not all(_is_int(x) for x in g):
            raise InputError(f"generators[{i}]", "must be a list of integers")
        if len(g) != d:
            raise InputError(f"generators[{i}]", f"has length {len(g)}, expected rank {d}")
    return d, [tuple(g) for g in gens]


def _poly_json(p):
    return [{"l": e[0], "c": c} for e, c in p.items()]


def _coeffs(coeffs, fmt):
    if fmt == "json":
        return [_poly_json(c) for c in coeffs]
    latex = fmt == "latex"
    return [format_poly(c, (r"\mathbb{L}" if latex else "L",), latex) for c in coeffs]


def _render(obj, fmt) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2)
    lines = []
    for key, val in obj.items():
        if isinstance(val, list) and val and isinstance(val[0], str):
            lines.append(f"{key}:")
            lines += [f"  {v}" for v in val]
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def cmd_analyze(s, args):
    l = log_jacobian_ladder(s)
    out = {
        "rank": s.rank,
        "generators": [list(g) for g in s.input_generators],
        "rebased_generators": [list(g) for g in s.generators],
    }
    for k in range(1, l.d + 1):
        out[f"J_{k}"] = [list(p) for p in l.ideals[k - 1]]
        out[f"newton_vertices_{k}"] = [list(p) for p in l.newton[k - 1].vertices]
        out[f"fan_rays_{k}"] = [list(r) for r in l.fans[k - 1].rays]
    rays = l.refinements[-1].rays
    out["refinement_rays"] = [list(r) for r in rays]
    table = []
    for r in rays:
        p = phi_profile(l, r)
        row = {"ray": list(r), "phi": p.phi, "psi": p.psi[1:]}
        table.append(row if args.format == "json" else f"{list(r)}: phi={p.phi} psi={p.psi[1:]}")
    out["phi_table"] = table
    out["candidate_poles"] = [list(ab) for ab in sorted(candidate_pole_set(l))]
    if args.format != "json":
        out["candidate_poles"] = ", ".join(f"({a},{b})" for a, b in sorted(candidate_pole_set(l)))
        for key in list(out):
            if isinstance(out[key], list) and out[key] and isinstance(out[key][0], list):
                out[key] = " ".join(str(tuple(v)) for v in out[key])
    return 0, _render(out, args.format)


def _series_output(r, order, fmt):
    if fmt == "json":
        return {"series": r.to_json(), "expansion": _coeffs(r.expand(order), fmt)}
    return {"series": r.render(fmt), "expansion": _coeffs(r.expand(order), fmt)}


def cmd_series(s, args):
    return 0, _render(_series_output(p_geom_local(s, args.budget), args.order, args.format), args.format)


def cmd_global_series(s, args):
    return 0, _render(_series_output(p_geom_global_normal(s, args.budget), args.order, args.format), args.format)


def cmd_volume(s, args):
    direct, spec = motivic_volume(s, args.budget, both=True)
    if args.format == "json":
        out = {"direct": direct.to_json(), "specialized": spec.to_json(), "agree": True}
    else:
        out = {"direct": direct.render(args.format), "specialized": spec.render(args.format), "agree": True}
    return 0, _render(out, args.format)


def cmd_check(s, args):
    rep = compare(s, args.order, args.budget)
    if args.format == "json":
        out = {
            "order": rep.order,
            "ok": rep.ok,
            "mismatches": rep.mismatches,
            "engine": _coeffs(rep.engine, "json"),
            "oracle": _coeffs(rep.oracle, "json"),
        }
    else:
        rows = []
        for i, (a, b) in enumerate(zip(_coeffs(rep.engine, args.format), _coeffs(rep.oracle, args.format))):
            rows.append(f"T^{i}: {'ok' if i not in rep.mismatches else 'MISMATCH'} engine={a} oracle={b}")
        out = {"order": rep.order, "ok": rep.ok, "coefficients": rows}
    return (0 if rep.ok else 1), _render(out, args.format)


COMMANDS = {
    "analyze": cmd_analyze,
    "series": cmd_series,
    "volume": cmd_volume,
    "global-series": cmd_global_series,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description="Motivic series of affine toric varieties from semigroup generators.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", help="JSON file with rank and generators, or - for stdin")
        sp.add_argument("--order", type=int, default=10)
        sp.add_argument("--format", choices=["plain", "latex", "json"], default="plain")
        sp.add_argument("--budget", type=int, default=10**8)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
    except OSError as e:
        print(f"error: input: cannot read {args.input} ({e.strerror})", file=sys.stderr)
        return 2
    try:
        if args.order < 0:
            raise InputError("order", "must be nonnegative")
        d, gens = parse_input(text)
        try:
            s = build_semigroup(gens, d)
        except ValueError as e:
            raise InputError("generators", str(e)) from None
        code, text = COMMANDS[args.command](s, args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ArtifactError as e:
        print(f"error: {e.name}: {e}", file=sys.stderr)
        return 1
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
