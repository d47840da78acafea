"""``deltafilt`` command-line frontend.

Every command reads a JSON workspace, writes a JSON report (stdout or
``--out``) and exits 0 on success, 1 on a semantic failure and 2 on bad
input.  ``--pretty`` prints a short human summary instead of JSON on stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import filt, preord, symb
from .errors import DeltaFiltError, UnknownLabel
from .hsys import ext_pattern, validate_prime
from .io import WorkspaceError, hom_to_json, jsonable, load_workspace, ordered_to_json
from .qrep import decompose, euler_form, ext1_basis, hom_basis

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Anything wrong with the command line or the workspace document."""


# ----------------------------------------------------------------------
# commands: each returns (ok, report, summary lines)


def _load(args):
    try:
        return load_workspace(args.path)
    except (OSError, json.JSONDecodeError, WorkspaceError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"cannot load workspace: {exc}") from exc


def cmd_validate(args):
    ws = _load(args)
    system = ws.system(args.system)
    report = system.report
    out = {"system": repr(system), **report.to_json()}
    ok = report.passed
    lines = [f"{name}: {'pass' if r.passed else 'FAIL'}"
             + (f"  witnesses {jsonable(r.witnesses)}" if r.witnesses else "")
             for name, r in report.axioms.items()]
    if args.all_linearizations:
        prime = validate_prime(system, args.cap)
        out["prime"] = prime.to_json()
        ok = ok and prime.passed and prime.agrees_with_validate
        lines.append(f"HS3'/HS4' over {prime.linearizations} linearizations: "
                     f"{'pass' if prime.passed else 'FAIL'}")
    return ok, out, lines


def _preorder_from(args):
    if args.divisibility is not None:
        return preord.divisibility(args.divisibility)
    if args.path is None:
        raise InputError("linearize needs a workspace path or --divisibility/--inverter")
    raw = _raw_json(args.path)
    if "preorder" in raw:
        spec = raw["preorder"]
        carrier = [str(x) for x in spec["carrier"]]
        return preord.close_transitive(carrier, [(str(a), str(b)) for a, b in spec.get("pairs", [])])
    return _load(args).system(args.system).preorder


def _raw_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def cmd_linearize(args):
    if args.inverter:
        n, m, bound = args.inverter
        lin, data = preord.inverter_linearization(n, m, bound)
        order = lin.labels()
        flat = [x for cls in order for x in (cls if isinstance(cls, tuple) else (cls,))]
        report = {"inverter": {"n": n, "m": m, "bound": bound}, "order": flat,
                  "n_before_m": flat.index(n) < flat.index(m), "extends": lin.extends()}
        return True, report, [" ".join(map(str, flat)), f"{n} before {m}: {report['n_before_m']}"]
    if args.q_lex:
        if args.divisibility is None:
            raise InputError("--q-lex needs --divisibility N")
        lin = preord.q_lex_linearization(args.divisibility)
        flat = _flatten(lin)
        return True, {"divisibility": args.divisibility, "order": flat, "extends": lin.extends()}, \
            [" ".join(map(str, flat))]
    pre = _preorder_from(args)
    q = preord.quotient(pre)
    report = {"classes": [list(c) for c in q.classes]}
    if args.enumerate:
        lins = preord.enumerate_linearizations(q, args.cap)
        report["count"] = len(lins)
        report["linearizations"] = [_flatten_classes(q, l) for l in lins]
        lines = [f"{len(lins)} linear extension(s)"] + [" < ".join(x) for x in report["linearizations"]]
    else:
        lin = preord.linearize(q)
        report["linearization"] = _flatten_classes(q, lin)
        report["extends"] = lin.extends()
        lines = [" < ".join(report["linearization"])]
    return True, report, lines


def _flatten(lin):
    out = []
    for cls in lin.labels():
        out.extend(cls if isinstance(cls, tuple) else (cls,))
    return out


def _flatten_classes(q, lin):
    return [q.class_name(u) for u in lin.order]


def _two_modules(args):
    ws = _load(args)
    return ws, ws.module(args.m), ws.module(args.n)


def cmd_hom(args):
    ws, m, n = _two_modules(args)
    basis = hom_basis(m, n).basis
    report = {"source": args.m, "target": args.n, "dim": len(basis),
              "basis": [hom_to_json(f) for f in basis]}
    ok = True
    lines = [f"dim Hom({args.m}, {args.n}) = {len(basis)}"]
    if args.euler:
        ok, extra = _euler(ws, m, n, report)
        lines.append(extra)
    return ok, report, lines


def cmd_ext(args):
    ws, m, n = _two_modules(args)
    _, reps = ext1_basis(m, n)
    report = {"source": args.m, "target": args.n, "dim": len(reps),
              "cocycles": [hom_to_json(f) for f in reps]}
    ok = True
    lines = [f"dim Ext^1({args.m}, {args.n}) = {len(reps)}"]
    if args.euler:
        ok, extra = _euler(ws, m, n, report)
        lines.append(extra)
    return ok, report, lines


def _euler(ws, m, n, report):
    from .qrep import ext1_dim, hom_dim

    alg = ws.algebra
    if not alg.is_hereditary:
        report["euler"] = None
        return True, "Euler check skipped: algebra has relations or cycles"
    value = euler_form(alg, m.dims, n.dims)
    diff = hom_dim(m, n) - ext1_dim(m, n)
    report["euler"] = {"form": value, "hom_minus_ext": diff, "agrees": value == diff}
    return value == diff, f"Euler form {value}, Hom - Ext = {diff}"


def cmd_filter(args):
    ws = _load(args)
    if args.symbolic:
        return _filter_symbolic(ws, args)
    if not args.filtration:
        raise InputError("filter needs --filtration NAME or --symbolic NAME")
    f = ws.filtration(args.filtration)
    if args.module and ws.filtration_spec(args.filtration)["module"] != args.module:
        raise InputError(f"filtration {args.filtration!r} is not of module {args.module!r}")
    system = ws.system(args.system or ws.filtration_spec(args.filtration).get("system"))
    system.require_valid()
    f = filt.validate_filtration(system, f)
    slim = filt.refine_to_slim(system, f)
    before = filt.order_vector(system, slim)
    ordered_slim = filt.sort_slim(system, slim)
    after = filt.order_vector(system, ordered_slim)
    ordered = filt.merge_to_ordered(system, ordered_slim)
    name = system.class_label
    report = {"filtration": args.filtration,
              "factors": [filt_factors(fl) for fl in f.factors],
              "order_vector_before": [name(u) for u in before],
              "order_vector_after": [name(u) for u in after],
              "swaps": len(ordered_slim.log),
              "ordered": ordered_to_json(system, ordered),
              "ell": filt.ell(f)}
    ok = True
    lines = [f"order vector {tuple(map(name, before))} -> {tuple(map(name, after))} "
             f"({report['swaps']} swaps)",
             "layers (bottom-up): " + ", ".join(f"{name(l.cls)} dims {l.sub.dim_vector()}"
                                                for l in ordered.layers),
             f"ell = {filt.ell(f)}"]
    if args.check_unique:
        other = ws.filtration(args.check_unique)
        verdict = filt.check_uniqueness(system, f, other)
        report["uniqueness"] = {"other": args.check_unique, "equal": verdict.passed, "reason": verdict.reason,
                                "ell": verdict.ell_first, "ell_other": verdict.ell_second}
        ok = ok and verdict.passed
        lines.append(f"same ordered filtration as {args.check_unique}: {verdict.passed}")
    if args.all_linearizations:
        sweep = filt.linearization_sweep(system, f, args.cap)
        same = all(o.same_chain(ordered) for _, o in sweep)
        report["linearizations"] = {"count": len(sweep), "identical": same}
        ok = ok and same
        lines.append(f"identical chain under all {len(sweep)} linearizations: {same}")
    return ok, report, lines


def filt_factors(fl):
    return [{"omega": w, "mult": k} for w, k in fl]


def _filter_symbolic(ws, args):
    system = ws.system(args.system)
    pattern = ext_pattern(system)
    f = ws.symbolic(args.symbolic)
    g = symb.symb_sort(pattern, f)
    layers = symb.symb_merge(pattern, g)
    report = {"symbolic": args.symbolic, "input": f.to_json(), "sorted": g.to_json(),
              "layers": [{"class": system.class_label(u), "factors": {w: c.to_json() for w, c in b.items()},
                          "total": symb.layer_total((u, b)).to_json()} for u, b in layers],
              "ell": {w: c.to_json() for w, c in symb.symb_ell(f).items()},
              "ell_invariant": symb.symb_ell(f) == symb.symb_ell(g) == symb.symb_ell(layers)}
    lines = ["sorted: " + ", ".join(f"({w}, {c})" for w, c in g.steps),
             "layers: " + ", ".join(f"{system.class_label(u)}: {symb.layer_total((u, b))}" for u, b in layers)]
    return report["ell_invariant"], report, lines


def cmd_split(args):
    ws = _load(args)
    f = ws.filtration(args.filtration)
    m, e = ws.endomorphism(args.idempotent)
    if m is not f.module:
        raise InputError("idempotent and filtration refer to different modules")
    system = ws.system(args.system or ws.filtration_spec(args.filtration).get("system"))
    ordered = filt.ordered_filtration(system, f)
    result = filt.summand_split(system, m, ordered, e)
    name = system.class_label
    cert = [{"class": name(cls), "ell": {w: {"W": t[0], "L": t[1], "N": t[2]} for w, t in row.items()}}
            for cls, row in result.certificate.rows]
    report = {"image": ordered_to_json(system, result.image), "kernel": ordered_to_json(system, result.kernel),
              "image_dims": list(result.image_sub.dim_vector()),
              "kernel_dims": list(result.kernel_sub.dim_vector()),
              "certificate": {"passed": result.certificate.passed, "layers": cert}}
    lines = [f"image dims {result.image_sub.dim_vector()}, kernel dims {result.kernel_sub.dim_vector()}"]
    for cls, row in result.certificate.rows:
        lines.append(f"layer {name(cls)}: " + "; ".join(f"ell_{w}: {a}={b}+{c}" for w, (a, b, c) in row.items()))
    return result.certificate.passed, report, lines


def cmd_decompose(args):
    ws = _load(args)
    m = ws.module(args.module)
    system = None
    if ws.system_names():
        system = ws.system(args.system)
    parts = []
    for rep, mult in decompose(m):
        label = system.identify(rep) if system is not None else None
        parts.append({"dims": list(rep.dim_vector()), "mult": mult, "omega": label,
                      "maps": {k: v.tolist() for k, v in rep.maps.items() if v.size}})
    lines = [f"{p['mult']} x dims {tuple(p['dims'])}" + (f" (Δ_{p['omega']})" if p["omega"] else "")
             for p in parts] or ["zero module"]
    return True, {"module": args.module, "summands": parts}, lines


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human-readable summary on stdout")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    common.add_argument("--system", help="system name (default: first in the workspace)")
    common.add_argument("--cap", type=int, default=720, help="linear extension enumeration cap")

    p = argparse.ArgumentParser(prog="deltafilt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the system axioms")
    s.add_argument("path")
    s.add_argument("--all-linearizations", action="store_true")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("linearize", parents=[common], help="quotient classes and linear extensions")
    s.add_argument("path", nargs="?")
    s.add_argument("--enumerate", action="store_true")
    s.add_argument("--divisibility", type=int, metavar="N")
    s.add_argument("--q-lex", action="store_true")
    s.add_argument("--inverter", type=int, nargs=3, metavar=("n", "m", "N"))
    s.set_defaults(func=cmd_linearize)

    for name, func in (("hom", cmd_hom), ("ext", cmd_ext)):
        s = sub.add_parser(name, parents=[common], help=f"dimension and basis of {name.capitalize()}(M, N)")
        s.add_argument("path")
        s.add_argument("m", metavar="M")
        s.add_argument("n", metavar="N")
        s.add_argument("--euler", action="store_true", help="cross-check against the Euler form")
        s.set_defaults(func=func)

    s = sub.add_parser("filter", parents=[common], help="run the filtration pipeline")
    s.add_argument("path")
    s.add_argument("--module")
    s.add_argument("--filtration")
    s.add_argument("--check-unique", metavar="FILTRATION")
    s.add_argument("--all-linearizations", action="store_true")
    s.add_argument("--symbolic", metavar="NAME")
    s.set_defaults(func=cmd_filter)

    s = sub.add_parser("split", parents=[common], help="split an ordered filtration along an idempotent")
    s.add_argument("path")
    s.add_argument("--filtration", required=True)
    s.add_argument("--idempotent", required=True)
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("decompose", parents=[common], help="indecomposable summands of a module")
    s.add_argument("path")
    s.add_argument("module")
    s.set_defaults(func=cmd_decompose)
    return p


INPUT_ERRORS = (InputError, UnknownLabel, WorkspaceError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    report = {"command": args.command}
    if not args.no_timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat()
    try:
        ok, body, lines = args.func(args)
        code = EXIT_OK if ok else EXIT_FAIL
        report.update(body)
    except INPUT_ERRORS as exc:
        code, lines = EXIT_INPUT, [f"input error: {exc}"]
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except DeltaFiltError as exc:
        code, lines = EXIT_FAIL, [f"{type(exc).__name__}: {exc}"]
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    report["ok"] = code == EXIT_OK
    text = json.dumps(jsonable(report), indent=2, ensure_ascii=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.pretty:
        print("\n".join(lines))
    elif not args.out:
        print(text)
    if code and not args.pretty:
        print("\n".join(lines), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
