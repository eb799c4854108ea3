"""The ``qg`` command line tool.

Exit status: 0 on success, 1 when a verification finds a mismatch, 2 on
bad input (unreadable file, malformed literal, unknown name ...).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import scenarios
from .corpus import build_curve
from .errors import ParseError, QGError
from .exactnum import FieldElement, make_context, parse_expr
from .groupkit import DEFAULT_CAP, closure, group_report
from .plane import ProjPoint
from .polyring import TriForm
from .qgal import DEFAULT_DISCOVERY_CAP, census, discover, quasi_galois_order


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# curve files


def curve_to_record(name: str, form: TriForm, seeds=()) -> dict:
    ctx = form.ctx
    field = {"conductor": ctx.conductor}
    if ctx.has_adjunct:
        field["sqrt_adjunct"] = str(FieldElement._make(ctx.base, ctx._w, None))
    rec = {
        "name": name,
        "field": field,
        "degree": form.degree,
        "terms": [
            {"exponents": list(e), "coefficient": str(c)} for e, c in form.sorted_terms()
        ],
    }
    if seeds:
        rec["seeds"] = [":".join(str(x) for x in P.coords) for P in seeds]
    return rec


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind) or isinstance(val, bool) and kind is not bool:
        raise InputError(f"{where}: field {key!r} has the wrong type")
    return val


def curve_from_record(rec) -> tuple[str, TriForm, list[ProjPoint]]:
    name = _require(rec, "name", str, "curve file")
    fld = _require(rec, "field", dict, "curve file")
    N = _require(fld, "conductor", int, "field")
    if N < 1:
        raise InputError("field: conductor must be positive")
    try:
        ctx = make_context(N, fld.get("sqrt_adjunct"))
    except ParseError as exc:
        raise InputError(f"field.sqrt_adjunct: {exc}") from None
    degree = _require(rec, "degree", int, "curve file")
    terms = {}
    for k, t in enumerate(_require(rec, "terms", list, "curve file")):
        where = f"terms[{k}]"
        exps = _require(t, "exponents", list, where)
        if len(exps) != 3 or not all(isinstance(e, int) and e >= 0 for e in exps):
            raise InputError(f"{where}.exponents: expected three nonnegative integers")
        if sum(exps) != degree:
            raise InputError(f"{where}.exponents: {exps} do not sum to degree {degree}")
        text = _require(t, "coefficient", str, where)
        try:
            coeff = parse_expr(ctx, text)
        except ParseError as exc:
            raise InputError(f"{where}.coefficient: {exc}") from None
        if coeff.is_zero():
            raise InputError(f"{where}.coefficient: coefficient is zero")
        key = tuple(exps)
        if key in terms:
            raise InputError(f"{where}.exponents: duplicate monomial {exps}")
        terms[key] = coeff
    form = TriForm(ctx, degree, terms)
    seeds = [parse_point(ctx, s, f"seeds[{k}]") for k, s in enumerate(rec.get("seeds", []))]
    return name, form, seeds


def parse_point(ctx, text, where="--point") -> ProjPoint:
    if not isinstance(text, str):
        raise InputError(f"{where}: point literal must be a string")
    try:
        return ProjPoint.parse(ctx, text)
    except ParseError as exc:
        raise InputError(f"{where}: {exc}") from None


def load_curve(path) -> tuple[str, TriForm, list[ProjPoint]]:
    try:
        rec = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return curve_from_record(rec)


def load_seeds(ctx, path) -> list[ProjPoint]:
    """Seeds file: a JSON list of point literals, or one literal per line."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        items = json.loads(text)
        if not isinstance(items, list):
            raise InputError(f"{path}: expected a JSON list of point literals")
    except json.JSONDecodeError:
        items = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    return [parse_point(ctx, s, f"{path}[{k}]") for k, s in enumerate(items)]


# ---------------------------------------------------------------------------
# output


def _emit(args, record: dict, lines: list[str]):
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _cert_lines(certs) -> list[str]:
    rows = [f"{'point':<40} {'on C':<5} {'r':>3} {'n':>3}  galois"]
    for c in certs:
        rows.append(f"{str(c.point):<40} {str(c.on_curve):<5} {c.projection_degree:>3} "
                    f"{c.order:>3}  {c.galois}")
    return rows


def _census_lines(rep) -> list[str]:
    t = rep.tallies()
    lines = [f"inner delta[n]:  {t['inner'] or '{}'}", f"outer delta'[n]: {t['outer'] or '{}'}"]
    bad = [c for c in rep.checks if not c.holds]
    lines.append("bounds: all hold" if not bad else "bounds violated: " + "; ".join(map(str, bad)))
    return lines


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    name, form, _ = load_curve(args.curve)
    P = parse_point(form.ctx, args.point)
    cert = quasi_galois_order(form, P)
    rec = {"curve": name, "certificate": cert.to_record()}
    lines = [f"curve {name}, degree {form.degree}"] + _cert_lines([cert])
    if cert.order >= 2:
        lines += [f"axis: {cert.axis.equation()}",
                  "generator: " + " ".join(str(r) for r in cert.generator.rows_str())]
    _emit(args, rec, lines)
    return 0


def _discover(args):
    name, form, seeds = load_curve(args.curve)
    if args.seeds:
        seeds = load_seeds(form.ctx, args.seeds)
    if not seeds:
        raise InputError("no seeds: pass --seeds or include a 'seeds' list in the curve file")
    return name, form, discover(form, seeds, args.cap)


def cmd_discover(args) -> int:
    name, form, certs = _discover(args)
    rep = census(form, certs)
    rec = {"curve": name, "certificates": [c.to_record() for c in certs],
           "census": rep.to_record()}
    _emit(args, rec, [f"curve {name}: {len(certs)} quasi-Galois points"]
          + _cert_lines(certs) + _census_lines(rep))
    return 0 if rep.bounds_hold else 1


def cmd_group(args) -> int:
    if not args.from_discovered:
        raise InputError("group: only --from-discovered is supported")
    name, form, certs = _discover(args)
    if not certs:
        raise InputError("group: discovery found no quasi-Galois points")
    G = closure([c.generator for c in certs], args.group_cap)
    rep = group_report(G)
    rec = {"curve": name, "group": rep}
    lines = [f"curve {name}: group generated by {len(certs)} homologies",
             f"order {rep['order']}, involutions {rep['involutions']}",
             f"element orders {rep['element_orders']}",
             f"homology centers {len(rep['homology_centers'])}"]
    _emit(args, rec, lines)
    return 0


def _params(pairs) -> dict:
    out = {}
    for p in pairs:
        key, sep, val = p.partition("=")
        if not sep or not key:
            raise InputError(f"parameter {p!r} is not of the form key=value")
        out[key] = val
    return out


def cmd_verify(args) -> int:
    scenario = args.scenario
    if args.params:
        scenario += ":" + ",".join(v for v in _params(args.params).values())
    res = scenarios.run(scenario)
    rec = res.to_record()
    lines = [f"scenario {res.scenario}: {'PASS' if res.passed else 'FAIL'} "
             f"({res.duration:.2f}s)"]
    for c in res.checks:
        mark = "ok " if c.passed else "BAD"
        lines.append(f"  [{mark}] {c.name}: computed {scenarios._plain(c.computed)}"
                     + ("" if c.passed else f", expected {scenarios._plain(c.expected)}"))
        if c.provenance:
            lines.append(f"        source: {c.provenance}")
    _emit(args, rec, lines)
    return 0 if res.passed else 1


def cmd_export(args) -> int:
    curve = build_curve(args.name, _params(args.params))
    rec = curve_to_record(curve.name, curve.form, curve.seeds)
    text = json.dumps(rec, indent=2) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parser = argparse.ArgumentParser(prog="qg", description="Quasi-Galois points of plane curves")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="certificate for one point")
    p.add_argument("curve")
    p.add_argument("--point", required=True, help='point literal "x:y:z"')
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("discover", parents=[common], help="discover quasi-Galois points from seeds")
    p.add_argument("curve")
    p.add_argument("--seeds")
    p.add_argument("--cap", type=int, default=DEFAULT_DISCOVERY_CAP)
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("verify", parents=[common], help="run a named verification scenario")
    p.add_argument("scenario", help=", ".join(scenarios.SCENARIOS))
    p.add_argument("params", nargs="*", help="extra key=value parameters")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("group", parents=[common], help="group generated by discovered homologies")
    p.add_argument("curve")
    p.add_argument("--from-discovered", action="store_true")
    p.add_argument("--seeds")
    p.add_argument("--cap", type=int, default=DEFAULT_DISCOVERY_CAP)
    p.add_argument("--group-cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("export-corpus", parents=[common], help="write a corpus curve as a curve file")
    p.add_argument("name")
    p.add_argument("params", nargs="*", help="key=value parameters, e.g. d=6")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, QGError, ValueError) as exc:
        code = getattr(exc, "code", "INPUT_ERROR")
        print(f"qg: error [{code}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
