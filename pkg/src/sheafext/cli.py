"""Command-line interface: ``sheafext <command> ...``.

Exit status is 0 whenever the analysis ran (whatever it concluded) and 2 for
unusable input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import catalog
from .bell import bellify
from .errors import SheafError
from .extension import canonical_extension
from .fileformat import (
    model_to_dict,
    parse_cover_literal,
    parse_model_document,
    render_csv,
    render_json,
    render_support_table,
    render_table,
    tokenize_labels,
)
from .ksgen import ks_model, ks_scenario, random_ks_scenario
from .model import Semiring, format_assignment, induced_submodel, possibilistic_collapse
from .solver import (
    find_consistent_global,
    is_logically_contextual,
    is_probabilistically_extendable,
)
from .solver import classify as classify_model


class InputError(Exception):
    pass


def load_model(ref: str):
    """Resolve ``catalog:<name>``, ``-`` (stdin) or a file path."""
    if ref.startswith("catalog:"):
        name = ref.split(":", 1)[1]
        if name not in catalog.ENTRIES:
            raise InputError(f"no catalog model named {name!r}")
        return catalog.load(name), None
    try:
        text = sys.stdin.read() if ref == "-" else open(ref, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {ref}: {exc.strerror}") from None
    return parse_model_document(text)


def emit_model(model, fmt, structure=None) -> str:
    if fmt == "json":
        return render_json(model, structure)
    if fmt == "csv":
        return render_csv(model)
    return render_table(model)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, default=str) + "\n"


def _globals_text(model, g):
    return None if g is None else format_assignment(g)


def cmd_validate(args):
    model, structure = load_model(args.model)
    if args.format == "table":
        sc = model.scenario
        return (f"ok: {len(sc.measurements)} measurements, {len(sc.outcomes)} outcomes, "
                f"{len(sc.cover)} maximal contexts, {model.semiring.value}\n")
    return emit_model(model, args.format, structure)


def cmd_classify(args):
    model, _ = load_model(args.model)
    cls = classify_model(model)
    if args.format == "table":
        return f"{cls}\n"
    info = {"class": str(cls),
            "consistent_global": _globals_text(model, find_consistent_global(model))}
    logical = is_logically_contextual(model)
    if logical.witness is not None:
        ctx, s = logical.witness
        info["logical_witness"] = {"context": list(ctx), "assignment": format_assignment(s)}
    if model.semiring is Semiring.PROBABILITY and cls.value == "Contextual":
        ext = is_probabilistically_extendable(model)
        info["certificate"] = [
            {"context": list(c), "assignment": format_assignment(s), "multiplier": str(y)}
            for (c, s), y in ext.witness.certificate.items() if y != 0]
    elif model.semiring is Semiring.PROBABILITY and cls.value == "NonContextual":
        ext = is_probabilistically_extendable(model)
        info["global_section"] = {format_assignment(g): str(v)
                                  for g, v in ext.witness.distribution.items()}
    if args.format == "json":
        return _dump(info)
    rows = [["class", info["class"]], ["consistent_global", info["consistent_global"] or ""]]
    return "field,value\n" + "".join(f"{k},{v}\n" for k, v in rows)


def cmd_collapse(args):
    model, structure = load_model(args.model)
    return emit_model(possibilistic_collapse(model), args.format, structure)


def _report_dict(report):
    out = {"status": str(report.status),
           "target_cover": [list(report.target.order(c)) for c in report.target.cover],
           "candidate": [{"context": list(report.target.order(c)),
                          "support": [format_assignment(s) for s in sorted(supp)]}
                         for c, supp in report.candidate.items()]}
    if report.context is not None:
        out["empty_context"] = list(report.context)
    if report.violation is not None:
        v = report.violation
        out["violation"] = {"first": list(v.first), "second": list(v.second),
                            "overlap": list(v.overlap),
                            "assignment": format_assignment(v.assignment),
                            "value_first": str(v.value_first), "value_second": str(v.value_second),
                            "text": str(v)}
    if report.missing is not None:
        out["missing"] = {"context": list(report.missing[0]),
                          "assignment": format_assignment(report.missing[1])}
    if report.model is not None and report.ok:
        out["model"] = model_to_dict(report.model)
    return out


def _status_line(report):
    if report.violation is not None:
        return f"status: {report.status}  ({report.violation})"
    if report.context is not None:
        return f"status: {report.status}  (S_e({' '.join(report.context)}) is empty)"
    if report.missing is not None:
        ctx, s = report.missing
        return f"status: {report.status}  ({' '.join(ctx)} {format_assignment(s)} not reproduced)"
    return f"status: {report.status}"


def cmd_extend(args):
    model, _ = load_model(args.model)
    target = parse_cover_literal(args.to, model.scenario)
    report = canonical_extension(model, target)
    if args.format == "json":
        return _dump(_report_dict(report))
    if args.format == "csv":
        lines = ["context,assignment,value"]
        for c, supp in report.candidate.items():
            for s in sorted(supp):
                lines.append(f"{' '.join(report.target.order(c))},{format_assignment(s)},1")
        return "\n".join(lines) + "\n" + f"# {_status_line(report)}\n"
    return render_support_table(report.target, report.candidate) + _status_line(report) + "\n"


def cmd_bellify(args):
    model, _ = load_model(args.model)
    result = bellify(model)
    if not result.ok:
        report = result.extension
        if args.format == "json":
            return _dump(_report_dict(report))
        return _status_line(report) + "\n"
    return emit_model(result.model, args.format, result.structure)


def cmd_submodel(args):
    model, _ = load_model(args.model)
    keep = tokenize_labels(args.keep, set(model.scenario.measurements))
    return emit_model(induced_submodel(model, keep), args.format)


def cmd_ks_gen(args):
    if args.random:
        if None in (args.x, args.n, args.m):
            raise InputError("--random needs --x, --n and --m")
        ks = random_ks_scenario(random.Random(args.seed), args.x, args.n, args.m)
    elif args.contexts:
        members = args.contexts.strip().strip("{}")
        sep = ";" if ";" in members else ","
        raw = [m.strip() for m in members.split(sep) if m.strip()]
        cover = [m.split() if " " in m else list(m) for m in raw]
        labels = list(dict.fromkeys(x for c in cover for x in c))
        if args.measurements:
            labels = tokenize_labels(args.measurements, set(labels))
        ks = ks_scenario(labels, cover)
    else:
        raise InputError("give --contexts or --random")
    return emit_model(ks_model(ks), args.format)


def cmd_catalog(args):
    if args.action == "list":
        entries = catalog.ENTRIES.values()
        if args.format == "json":
            return _dump([{"name": e.name, "expected_class": str(e.expected_class),
                           "provenance": e.provenance} for e in entries])
        if args.format == "csv":
            return "name,expected_class\n" + "".join(
                f"{e.name},{e.expected_class}\n" for e in entries)
        width = max(len(e.name) for e in entries)
        return "".join(f"{e.name.ljust(width)}  {str(e.expected_class).ljust(19)}  {e.provenance}\n"
                       for e in entries)
    if not args.name:
        raise InputError("catalog show needs a model name")
    if args.name not in catalog.ENTRIES:
        raise InputError(f"no catalog model named {args.name!r}")
    return emit_model(catalog.load(args.name), args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheafext",
        description="Classify, extend and Bell-ify finite empirical models.")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["table", "json", "csv"], default="table")

    def model_cmd(name, func, help_):
        p = sub.add_parser(name, parents=[fmt], help=help_)
        p.add_argument("model", help="model file, '-' for stdin, or catalog:<name>")
        p.set_defaults(func=func)
        return p

    model_cmd("validate", cmd_validate, "check a model file")
    model_cmd("classify", cmd_classify, "place a model in the contextuality hierarchy")
    model_cmd("collapse", cmd_collapse, "possibilistic collapse")
    p = model_cmd("extend", cmd_extend, "canonical extension to a larger cover")
    p.add_argument("--to", required=True, help="P<n>, top, or a cover literal like '{ABD,BCD}'")
    model_cmd("bellify", cmd_bellify, "equivalent Bell model via the canonical extension to P_n X")
    p = model_cmd("submodel", cmd_submodel, "induced sub-model on a subset of measurements")
    p.add_argument("--keep", required=True, help="labels to keep, e.g. 'ABD' or 'A@1,B@1'")

    p = sub.add_parser("ks-gen", parents=[fmt], help="generate a Kochen-Specker model")
    p.add_argument("--contexts", help="cover literal such as '{AB,BC,CA}'")
    p.add_argument("--measurements", help="measurement order (defaults to first appearance)")
    p.add_argument("--random", action="store_true")
    p.add_argument("--x", type=int, help="number of measurements")
    p.add_argument("--n", type=int, help="context size")
    p.add_argument("--m", type=int, help="number of contexts")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_ks_gen)

    p = sub.add_parser("catalog", parents=[fmt], help="built-in models")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def run_command(argv) -> tuple[int, str]:
    """Run one command; returns (exit status, report text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return 0, args.func(args)
    except (InputError, SheafError) as exc:
        return 2, f"error: {exc}\n"


def main(argv=None) -> int:
    try:
        code, text = run_command(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    stream = sys.stdout if code == 0 else sys.stderr
    stream.write(text)
    return code

