"""JSON model files and text/CSV rendering.

File schema::

    {
      "scenario": {
        "measurements": ["A", "B", "C"],
        "outcomes": ["0", "1"],
        "cover": [["A", "B"], ["B", "C"], ["C", "A"]],
        "sites": [["A@1", ...], ...]            # optional, Bell scenarios only
      },
      "model": {
        "semiring": "probability" | "boolean" | "signed",
        "rows": [
          {"context": ["A", "B"], "weights": {"01": 1, "10": 1}},
          ...
        ]
      }
    }

Assignment keys list outcomes in the scenario's measurement order restricted
to the context; absent keys weigh 0.  Rational weights are written "p/q".
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .errors import ParseError, UnknownLabel
from .model import (
    Distribution,
    EmpiricalModel,
    Semiring,
    _outcome_key,
    build_model,
    format_assignment,
)
from .scenario import BellStructure, is_bell_structure, power_cover, top_cover, validate_scenario

TABLE_COLUMN_LIMIT = 64


def _value_text(semiring: Semiring, v) -> str:
    if semiring is Semiring.BOOLEAN:
        return str(int(v))
    return str(Fraction(v))


def model_to_dict(e: EmpiricalModel, structure: BellStructure | None = None) -> dict:
    key = _outcome_key(e.scenario)
    sc = {
        "measurements": list(e.scenario.measurements),
        "outcomes": list(e.scenario.outcomes),
        "cover": [list(e.scenario.order(c)) for c in e.scenario.cover],
    }
    if structure is not None:
        sc["sites"] = [list(s) for s in structure.sites]
    rows = []
    for c, d in e.rows.items():
        weights = {}
        for s in sorted(d.weights, key=key):
            v = d.weights[s]
            weights[format_assignment(s)] = 1 if e.semiring is Semiring.BOOLEAN else str(v)
        rows.append({"context": list(d.context), "weights": weights})
    return {"scenario": sc, "model": {"semiring": e.semiring.value, "rows": rows}}


def render_json(e: EmpiricalModel, structure: BellStructure | None = None) -> str:
    return json.dumps(model_to_dict(e, structure), indent=2) + "\n"


def _require(obj, key, kind, path):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing {path}.{key}")
    value = obj[key]
    if not isinstance(value, kind):
        raise ParseError(f"{path}.{key} should be a {kind.__name__}")
    return value


def model_from_dict(doc: dict) -> tuple[EmpiricalModel, BellStructure | None]:
    sc = _require(doc, "scenario", dict, "$")
    measurements = _require(sc, "measurements", list, "$.scenario")
    outcomes = _require(sc, "outcomes", list, "$.scenario")
    cover = _require(sc, "cover", list, "$.scenario")
    for i, c in enumerate(cover):
        if not isinstance(c, list):
            raise ParseError(f"$.scenario.cover[{i}] should be a list of labels")
    scenario = validate_scenario([str(x) for x in measurements],
                                 [str(o) for o in outcomes], cover)
    structure = None
    if "sites" in sc:
        structure = BellStructure(tuple(tuple(s) for s in sc["sites"]))
        if not is_bell_structure(scenario, structure):
            raise ParseError("$.scenario.sites do not match the cover")
    body = _require(doc, "model", dict, "$")
    semiring = _require(body, "semiring", str, "$.model")
    try:
        semiring = Semiring(semiring)
    except ValueError:
        raise ParseError(f"$.model.semiring: unknown semiring {semiring!r}") from None
    rows = {}
    for i, row in enumerate(_require(body, "rows", list, "$.model")):
        path = f"$.model.rows[{i}]"
        context = _require(row, "context", list, path)
        weights = _require(row, "weights", dict, path)
        if frozenset(context) in rows:
            raise ParseError(f"{path}: context {context} listed twice")
        rows[frozenset(context)] = {k: _read_value(semiring, v, f"{path}.weights[{k!r}]")
                                    for k, v in weights.items()}
    return build_model(scenario, semiring, rows), structure


def _read_value(semiring, v, path):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ParseError(f"{path}: weights are integers or 'p/q' strings")
    if semiring is Semiring.BOOLEAN:
        if str(v).strip() not in ("0", "1"):
            raise ParseError(f"{path}: Boolean weights are 0 or 1")
        return int(v)
    try:
        return Fraction(str(v).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{path}: {v!r} is not a rational 'p/q'") from None


def parse_model_file(text: str) -> EmpiricalModel:
    return parse_model_document(text)[0]


def parse_model_document(text: str) -> tuple[EmpiricalModel, BellStructure | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return model_from_dict(doc)


def _cell_columns(e: EmpiricalModel, size: int):
    return list(e.scenario.assignments(range(size)))


def render_table(e: EmpiricalModel) -> str:
    """Dense table, one block per context size, columns in lexicographic order.

    Contexts with more than TABLE_COLUMN_LIMIT assignments list their support instead.
    """
    out = []
    sizes = list(dict.fromkeys(len(c) for c in e.scenario.cover))
    for size in sizes:
        contexts = [c for c in e.scenario.cover if len(c) == size]
        labels = {c: " ".join(e.scenario.order(c)) for c in contexts}
        lw = max(len(v) for v in labels.values())
        if len(e.scenario.outcomes) ** size > TABLE_COLUMN_LIMIT:
            for c in contexts:
                d = e.rows[c]
                cells = ", ".join(f"{format_assignment(s)}:{_value_text(e.semiring, d[s])}"
                                  for s in sorted(d.weights, key=_outcome_key(e.scenario)))
                out.append(f"{labels[c].ljust(lw)} | {cells}")
            continue
        columns = _cell_columns(e, size)
        heads = [format_assignment(s) for s in columns]
        grid = {c: [_value_text(e.semiring, e.rows[c][s]) for s in columns] for c in contexts}
        widths = [max(len(h), *(len(grid[c][j]) for c in contexts)) for j, h in enumerate(heads)]
        out.append(" " * lw + " | " + " ".join(h.rjust(w) for h, w in zip(heads, widths)))
        out.append("-" * lw + "-+-" + "-".join("-" * w for w in widths))
        for c in contexts:
            out.append(labels[c].ljust(lw) + " | "
                       + " ".join(v.rjust(w) for v, w in zip(grid[c], widths)))
        out.append("")
    return "\n".join(out).rstrip("\n") + "\n"


def render_support_table(scenario, supports: dict) -> str:
    """Boolean table for a (possibly incompatible) family of supports keyed by context."""
    rows = {}
    for c, supp in supports.items():
        rows[frozenset(c)] = Distribution(Semiring.BOOLEAN, scenario.order(c), {s: 1 for s in supp})
    # unchecked on purpose: the family may be incompatible
    return render_table(EmpiricalModel(scenario, Semiring.BOOLEAN, rows))


def render_csv(e: EmpiricalModel) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["context", "assignment", "value"])
    key = _outcome_key(e.scenario)
    for c, d in e.rows.items():
        for s in sorted(d.weights, key=key):
            w.writerow([" ".join(d.context), format_assignment(s), _value_text(e.semiring, d[s])])
    return buf.getvalue()


def tokenize_labels(text: str, labels) -> list[str]:
    """Split a context literal like 'ABD', 'A@1 B@2' or 'A,B' into known labels."""
    text = text.strip()
    if not text:
        return []
    known = sorted(labels, key=len, reverse=True)
    if any(ch in text for ch in " \t,"):
        parts = [p for p in text.replace(",", " ").split() if p]
        for p in parts:
            if p not in labels:
                raise UnknownLabel(p, "context literal")
        return parts
    if text in labels:
        return [text]
    out, i = [], 0
    while i < len(text):
        match = next((x for x in known if text.startswith(x, i)), None)
        if match is None:
            raise UnknownLabel(text[i:], "context literal")
        out.append(match)
        i += len(match)
    return out


def parse_cover_literal(text: str, scenario) -> list[list[str]]:
    """Parse 'P<n>', 'top' or '{ABD,BCD}' (use ';' between contexts with spaced labels)."""
    text = text.strip()
    if text.lower() == "top":
        return [list(scenario.order(c)) for c in top_cover(scenario.measurements)]
    if text[:1] in ("P", "p") and text[1:].isdigit():
        return [list(scenario.order(c)) for c in power_cover(scenario.measurements, int(text[1:]))]
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"cover literal {text!r} should look like {{AB,BC}} or P<n>")
    inner = text[1:-1]
    sep = ";" if ";" in inner else ","
    members = [m for m in inner.split(sep) if m.strip()]
    if not members:
        raise ParseError("empty cover literal")
    labels = set(scenario.measurements)
    return [tokenize_labels(m, labels) for m in members]


__all__ = [
    "model_from_dict", "model_to_dict",
    "parse_cover_literal", "parse_model_document", "parse_model_file", "render_csv",
    "render_json", "render_support_table", "render_table", "tokenize_labels",
]
