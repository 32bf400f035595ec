"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 resource limit.
Reports are JSON with sorted keys; only the ``timing`` field varies between
identical runs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from twsep import kernels
from twsep.cayley import BALL_CAP, free_product_ball, group_from_json, validate_group
from twsep.errors import GraphFormatError, InputError, SizeLimitError, TwsepError
from twsep.graph import Graph, induced_subgraph, parse_graph, serialize_graph
from twsep.layout import (
    cutwidth_exact,
    is_path_decomposition,
    pathwidth_exact,
    sumcut_exact,
)
from twsep.profiles import BUDGET_ENV, INVARIANTS, MODES, Profile, default_budget, profile
from twsep.separation import (
    BalancedSeparator,
    balanced_separator_min,
    cutset_to_balanced_separator,
    cutsize_exact,
    is_half_cutset,
    separation_number,
    validate_balanced_separator,
)
from twsep.treegraded import (
    compose,
    grading_from_json,
    gluing_spec_from_json,
    piece_widths,
    tw_profile_via_pieces,
    tw_via_grading,
    validate_tree_grading,
)
from twsep.treewidth import (
    decomposition_from_json,
    decomposition_from_pace,
    TREEWIDTH_LIMIT,
    treewidth_exact,
    validate_tree_decomposition,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3
COMPUTE_INVARIANTS = ("tw", "cut", "sn", "bsep", "cw", "pw", "sumcut")
SCOPE_NOTE = ("finite, exact checks of the identities behind the asymptotic statements; "
              "no asymptotic equivalence is verified")


# -- helpers ------------------------------------------------------------------


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _load_json(path: str, inputs: dict):
    data = _read(path)
    inputs[path] = _digest(data)
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: invalid JSON: {exc.msg}", line=exc.lineno) from None


def _load_graph(path: str, inputs: dict, fmt: str | None = None) -> Graph:
    data = _read(path)
    inputs[path] = _digest(data)
    if fmt is None:
        fmt = "json" if path.endswith(".json") or data.lstrip().startswith(b"{") else "edge-list"
    try:
        return parse_graph(data, fmt)
    except UnicodeDecodeError:
        raise GraphFormatError(f"{path}: input is not ASCII") from None


def _subgraph_certificate(x: Graph, invariant: str, witness) -> dict:
    """Certificate for the invariant on ``x[witness]``, in ``x``'s vertex ids."""
    sub, pos = induced_subgraph(x, witness)
    back = sorted(pos, key=pos.get)
    if invariant == "tw":
        _, td = treewidth_exact(sub)
        ok = validate_tree_decomposition(td) is None
        td = td.embed(x, back)
        return {"tree_decomposition": td.to_json(), "validated": ok}
    if invariant == "cut":
        value, s = cutsize_exact(sub)
        return {"S": sorted(back[v] for v in s), "value": value, "validated": is_half_cutset(sub, s)}
    if invariant == "pw":
        _, td = pathwidth_exact(sub)
        ok = validate_tree_decomposition(td) is None and is_path_decomposition(td)
        return {"path_decomposition": td.embed(x, back).to_json(), "validated": ok}
    solver = {"cw": cutwidth_exact, "sumcut": sumcut_exact}[invariant]
    value, layout = solver(sub)
    name = {"cw": "cutwidth", "sumcut": "sumcut"}[invariant]
    recomputed = layout.cutwidth() if invariant == "cw" else layout.sumcut()
    cert = layout.to_json(name, value)
    cert["order"] = [back[v] for v in cert["order"]]
    cert["validated"] = recomputed == value
    return cert


def _profile_block(x: Graph, prof: Profile) -> dict:
    out = prof.to_json()
    out["certificates"] = [
        {"k": row.k, **_subgraph_certificate(x, prof.invariant, row.witness)} if row.witness else
        {"k": row.k, "certificate": "no-certificate"}
        for row in prof.rows
    ]
    return out


def _parse_cutset(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad cutset {text!r}; expected comma-separated vertex ids") from None


# -- commands -----------------------------------------------------------------


def cmd_compute(args, report):
    g = _load_graph(args.graph, report["inputs"], args.input_format)
    inv = args.invariant
    results, certs = report["results"], report["certificates"]
    kw = {} if args.limit is None else {"limit": args.limit}
    if inv == "tw":
        value, td = treewidth_exact(g, **kw)
        results["value"] = value
        certs["tree_decomposition"] = {**td.to_json(), "validated": validate_tree_decomposition(td) is None}
    elif inv == "cut":
        value, s = cutsize_exact(g, **kw)
        results["value"] = value
        results["S"] = sorted(s)
        certs["cutset"] = {"S": sorted(s), "value": value, "validated": is_half_cutset(g, s)}
    elif inv == "bsep":
        value, sep = balanced_separator_min(g, completion=not args.no_completion, **kw)
        results["value"] = value
        certs["balanced_separator"] = {**sep.to_json(),
                                       "validated": validate_balanced_separator(sep, not args.no_completion) is None}
    elif inv == "sn":
        value, witness = separation_number(g, completion=not args.no_completion, **kw)
        results["value"] = value
        results["witness_subgraph"] = sorted(witness)
        if args.no_completion:
            certs["witness_separator"] = {"A": [], "B": [], "size": 0, "validated": True}
        else:
            sub, pos = induced_subgraph(g, witness)
            back = sorted(pos, key=pos.get)
            _, sep = balanced_separator_min(sub)
            certs["witness_separator"] = {
                "A": sorted(back[v] for v in sep.A), "B": sorted(back[v] for v in sep.B), "size": sep.size,
                "validated": validate_balanced_separator(sep) is None,
            }
        certs["maximality"] = "no-certificate"
    elif inv == "pw":
        value, td = pathwidth_exact(g, **kw)
        results["value"] = value
        certs["path_decomposition"] = {**td.to_json(),
                                       "validated": validate_tree_decomposition(td) is None and is_path_decomposition(td)}
    else:
        solver, name = {"cw": (cutwidth_exact, "cutwidth"), "sumcut": (sumcut_exact, "sumcut")}[inv]
        value, layout = solver(g, **kw)
        results["value"] = value
        recomputed = layout.cutwidth() if inv == "cw" else layout.sumcut()
        certs["layout"] = {**layout.to_json(name, value), "validated": recomputed == value}
    if args.no_completion:
        report["flags"]["definition_variant"] = "no-completion"
    if inv == "sumcut":
        report["flags"]["definition_variant"] = "sumcut: summed vertex boundary (chosen definition)"
    return EXIT_OK


def cmd_profile(args, report):
    g = _load_graph(args.graph, report["inputs"], args.input_format)
    prof = profile(g, args.r, args.invariant, mode=args.mode, budget=args.budget, jobs=args.jobs,
                   time_limit=args.time_limit)
    report["results"]["profile"] = _profile_block(g, prof)
    report["flags"]["lower_bound"] = prof.partial
    report["flags"]["mode"] = args.mode
    if args.format == "csv":
        report["_csv"] = prof.to_csv()
    return EXIT_OK


def _sandwich(args, report):
    g = _load_graph(args.target, report["inputs"], args.input_format)
    kw = dict(mode=args.mode, budget=args.budget, jobs=args.jobs)
    sep = profile(g, args.r, "cut", **kw)
    tw = profile(g, args.r, "tw", **kw)
    checks = []
    for s_row, t_row in zip(sep.rows, tw.rows):
        checks.append({
            "k": s_row.k, "sep": s_row.value, "tw": t_row.value,
            "lower": s_row.value - 1 <= t_row.value,
            "upper": t_row.value <= 15 * s_row.value,
            "ratio_tw_over_sep": round(t_row.value / s_row.value, 6) if s_row.value else None,
        })
    report["results"]["profile_checks"] = checks
    report["certificates"]["sep_profile"] = _profile_block(g, sep)
    report["certificates"]["tw_profile"] = _profile_block(g, tw)
    ok = all(c["lower"] and c["upper"] for c in checks)
    if g.n <= args.local_limit:
        cut, s = cutsize_exact(g)
        tw_value, td = treewidth_exact(g)
        sn, witness = separation_number(g)
        local = {"cut": cut, "tw": tw_value, "sn": sn,
                 "lower": cut - 1 <= tw_value, "upper": tw_value <= 15 * sn}
        report["results"]["graph_checks"] = local
        report["certificates"]["graph"] = {
            "cutset": {"S": sorted(s), "value": cut},
            "tree_decomposition": td.to_json(),
            "sn_witness_subgraph": sorted(witness),
        }
        ok = ok and local["lower"] and local["upper"]
    report["flags"]["lower_bound"] = sep.partial or tw.partial
    return ok


def _treegraded_eq(args, report):
    tg = grading_from_json(_load_json(args.target, report["inputs"]))
    bad = validate_tree_grading(tg, allow_non_induced=args.allow_non_induced)
    if bad:
        raise InputError(f"target is not a tree-grading: {bad.message}")
    kw = dict(mode=args.mode, budget=args.budget, jobs=args.jobs)
    host = profile(tg.host, args.r, "tw", **kw)
    pieces = tw_profile_via_pieces(tg, args.r, **kw)
    checks = [{"k": a.k, "host": a.value, "pieces": b.value, "equal": a.value == b.value}
              for a, b in zip(host.rows, pieces.rows)]
    report["results"]["checks"] = checks
    report["certificates"]["host_profile"] = _profile_block(tg.host, host)
    report["certificates"]["pieces_profile"] = {
        **pieces.to_json(),
        "certificates": [{"k": row.k, **_subgraph_certificate(tg.host, "tw", row.witness)} for row in pieces.rows],
    }
    report["flags"]["lower_bound"] = host.partial or pieces.partial
    return all(c["equal"] for c in checks)


def _join(args, report):
    tg = grading_from_json(_load_json(args.target, report["inputs"]))
    bad = validate_tree_grading(tg)
    if bad:
        raise InputError(f"target is not a tree-grading: {bad.message}")
    width, td = tw_via_grading(tg)
    widths = piece_widths(tg)
    valid = validate_tree_decomposition(td) is None
    results = {"joined_width": width, "piece_widths": widths, "max_piece_width": max(widths),
               "valid": valid, "width_is_max": width == max(widths)}
    ok = valid and width == max(widths)
    if tg.host.n <= TREEWIDTH_LIMIT:
        exact, _ = treewidth_exact(tg.host)
        results["treewidth_exact"] = exact
        results["equal_exact"] = exact == width
        ok = ok and exact == width
    else:
        report["flags"]["exact_comparison"] = f"skipped: host has more than {TREEWIDTH_LIMIT} vertices"
    report["results"].update(results)
    report["certificates"]["tree_decomposition"] = td.to_json()
    return ok


def _conversion(args, report):
    g = _load_graph(args.target, report["inputs"], args.input_format)
    if args.cutset is not None:
        c = _parse_cutset(args.cutset)
        source = "given"
    else:
        _, s = cutsize_exact(g)
        c = sorted(s)
        source = "cutsize_exact"
    sep = cutset_to_balanced_separator(g, c)
    bad = validate_balanced_separator(sep)
    report["results"].update({
        "cutset": sorted(c), "cutset_source": source, "valid": bad is None,
        "size": sep.size, "size_equals_cutset": sep.size == len(set(c)),
    })
    if bad:
        report["results"]["violation"] = bad.to_json()
    report["certificates"]["balanced_separator"] = sep.to_json()
    return bad is None and sep.size == len(set(c))


def cmd_verify(args, report):
    suite = {"sandwich": _sandwich, "treegraded-eq": _treegraded_eq, "join": _join, "conversion": _conversion}[args.suite]
    ok = suite(args, report)
    report["results"]["passed"] = bool(ok)
    report["flags"]["scope"] = SCOPE_NOTE
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args, report):
    if args.kind == "cayley":
        obj = _load_json(args.spec, report["inputs"])
        if not isinstance(obj, dict) or "G" not in obj or "H" not in obj:
            raise InputError("cayley spec must be an object with 'G' and 'H' group specs")
        groups = {}
        for name in ("G", "H"):
            spec = group_from_json(obj[name])
            bad = validate_group(spec)
            if bad:
                report["results"]["violation"] = {"group": name, **bad.to_json()}
                raise InputError(f"group {name}: {bad.message}")
            groups[name] = spec
        if args.radius is None:
            raise InputError("--radius is required for gen cayley")
        graph, tg, words = free_product_ball(groups["G"], groups["H"], args.radius, cap=args.cap)
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / "graph.json").write_text(serialize_graph(graph, "json") + "\n")
        (out / "grading.json").write_text(json.dumps(tg.to_json()) + "\n")
        report["results"].update({"vertices": graph.n, "edges": graph.m, "pieces": len(tg.pieces),
                                  "grading_valid": validate_tree_grading(tg) is None,
                                  "files": [str(out / "graph.json"), str(out / "grading.json")]})
    else:
        spec, templates = gluing_spec_from_json(_load_json(args.spec, report["inputs"]))
        tg = compose(spec, templates)
        Path(args.output).write_text(json.dumps(tg.to_json()) + "\n")
        report["results"].update({"vertices": tg.host.n, "edges": tg.host.m, "pieces": len(tg.pieces),
                                  "grading_valid": validate_tree_grading(tg) is None, "files": [args.output]})
    return EXIT_OK


def cmd_validate(args, report):
    if args.kind == "grading":
        tg = grading_from_json(_load_json(args.graph, report["inputs"]))
        bad = validate_tree_grading(tg, allow_non_induced=args.allow_non_induced)
    else:
        g = _load_graph(args.graph, report["inputs"], args.input_format)
        cert_bytes = _read(args.certificate)
        report["inputs"][args.certificate] = _digest(cert_bytes)
        text = cert_bytes.decode("ascii", errors="replace")
        if args.kind == "td":
            td = (decomposition_from_pace(g, text) if text.lstrip().startswith(("s", "c"))
                  else decomposition_from_json(g, json.loads(text)))
            bad = validate_tree_decomposition(td)
            report["results"]["width"] = td.width
        else:
            obj = json.loads(text)
            sep = BalancedSeparator(g, frozenset(obj["A"]), frozenset(obj["B"]))
            bad = validate_balanced_separator(sep, completion=not args.no_completion)
            report["results"]["size"] = sep.size
    report["results"]["valid"] = bad is None
    if bad:
        report["results"]["violation"] = bad.to_json()
    return EXIT_OK if bad is None else EXIT_FAIL


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twsep", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"twsep 0.1.0 ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph_input=True):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        if graph_input:
            sp.add_argument("--input-format", choices=("edge-list", "json"), default=None,
                            help="graph file format (default: guessed from extension/content)")

    def enumeration(sp):
        sp.add_argument("--mode", choices=MODES, default="connected")
        sp.add_argument("--budget", type=int, default=None,
                        help=f"max subgraphs scored (default {default_budget()}, env {BUDGET_ENV})")
        sp.add_argument("--jobs", type=int, default=1)

    c = sub.add_parser("compute", help="exact invariant with certificate")
    c.add_argument("invariant", choices=COMPUTE_INVARIANTS)
    c.add_argument("graph")
    c.add_argument("--limit", type=int, default=None, help="override the solver's vertex limit")
    c.add_argument("--no-completion", action="store_true",
                   help="diagnostic: drop the A|B = V requirement for balanced separators")
    common(c)
    c.set_defaults(func=cmd_compute)

    pr = sub.add_parser("profile", help="profile table k -> max over <= k-vertex subgraphs")
    pr.add_argument("invariant", choices=INVARIANTS)
    pr.add_argument("graph")
    pr.add_argument("--r", type=int, required=True)
    pr.add_argument("--time-limit", type=float, default=None, help="seconds; exceeding it flags lower bounds")
    enumeration(pr)
    common(pr)
    pr.set_defaults(func=cmd_profile)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=("sandwich", "treegraded-eq", "join", "conversion"))
    v.add_argument("target")
    v.add_argument("--r", type=int, default=6)
    v.add_argument("--cutset", default=None, help="comma-separated cutset for the conversion suite")
    v.add_argument("--local-limit", type=int, default=12,
                   help="run graph-level sandwich checks when the target has at most this many vertices")
    v.add_argument("--allow-non-induced", action="store_true")
    enumeration(v)
    common(v)
    v.set_defaults(func=cmd_verify)

    gn = sub.add_parser("gen", help="generate Cayley balls or composed tree-graded graphs")
    gn.add_argument("kind", choices=("cayley", "compose"))
    gn.add_argument("spec")
    gn.add_argument("--radius", type=int, default=None)
    gn.add_argument("--cap", type=int, default=BALL_CAP)
    gn.add_argument("-o", "--output", required=True)
    common(gn, graph_input=False)
    gn.set_defaults(func=cmd_gen)

    va = sub.add_parser("validate", help="check a certificate against its graph")
    va.add_argument("kind", choices=("td", "bsep", "grading"))
    va.add_argument("graph", help="graph file (or tree-grading JSON for 'grading')")
    va.add_argument("certificate", nargs="?")
    va.add_argument("--no-completion", action="store_true")
    va.add_argument("--allow-non-induced", action="store_true")
    common(va)
    va.set_defaults(func=cmd_validate)
    return p


def _emit(report: dict, fmt: str, stream):
    csv_text = report.pop("_csv", None)
    if fmt == "csv" and csv_text is not None:
        stream.write(csv_text)
    else:
        stream.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    if args.command in ("validate",) and args.kind != "grading" and args.certificate is None:
        build_parser().error("validate td/bsep needs a certificate file")
    report = {"command": ["twsep", *argv], "inputs": {}, "results": {}, "certificates": {}, "flags": {},
              "backend": kernels.BACKEND}
    start = time.perf_counter()
    try:
        code = args.func(args, report)
    except SizeLimitError as exc:
        report["error"] = {"type": "resource-limit", "message": str(exc), "limit": exc.limit, "n": exc.n}
        code = EXIT_LIMIT
    except GraphFormatError as exc:
        report["error"] = {"type": "input", "message": str(exc), "line": exc.line}
        code = EXIT_INPUT
    except (InputError, TwsepError, json.JSONDecodeError, KeyError) as exc:
        report["error"] = {"type": "input", "message": str(exc)}
        code = EXIT_INPUT
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    fmt = getattr(args, "format", "json")
    if "error" in report:
        fmt = "json"
    _emit(report, fmt, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
