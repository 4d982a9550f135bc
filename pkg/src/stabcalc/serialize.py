"""Deterministic text formats for tables and verification reports.

Every emitter sorts its keys and never embeds timestamps, so identical inputs
produce identical bytes.  Suite reports carry a wall_time field that is
explicitly exempt from that guarantee.
"""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction

from .poly_ring import MPoly
from .root_system import RootSystem, WeylElement


class MalformedLabel(ValueError):
    """An element label did not parse as "e" or dot-separated indices."""


def element_label(w: WeylElement | tuple[int, ...]) -> str:
    """Canonical text form of a Weyl element: "e" or "1.2.1"."""
    word = w.word if isinstance(w, WeylElement) else tuple(w)
    return ".".join(str(i) for i in word) if word else "e"


def parse_word(label: str) -> tuple[int, ...]:
    if label == "e":
        return ()
    if not re.fullmatch(r"\d+(\.\d+)*", label):
        raise MalformedLabel(f"bad element label {label!r}")
    return tuple(int(part) for part in label.split("."))


def var_names(nvars: int) -> list[str]:
    return [f"a{i}" for i in range(1, nvars)] + ["h"]


def poly_to_json(p: MPoly) -> dict:
    terms = [{"c": str(c), "e": list(e)} for e, c in p.sorted_terms()]
    return {"vars": var_names(p.nvars), "terms": terms}


def poly_from_json(data: dict) -> MPoly:
    nvars = len(data["vars"])
    terms = {tuple(t["e"]): Fraction(t["c"]) for t in data["terms"]}
    return MPoly.from_terms(nvars, terms)


def _table_meta(table) -> dict:
    rs: RootSystem = table.rs
    meta = {
        "type": rs.cartan_type,
        "rank": rs.rank,
        "chamber": table.chamber,
        "method": table.method,
        "vars": var_names(rs.nvars),
    }
    cs = getattr(table, "cs", None)
    if cs is not None:
        meta["subset"] = sorted(cs.subset)
    return meta


def _table_labels(table) -> list[str]:
    cs = getattr(table, "cs", None)
    if cs is not None:
        return [element_label(rep) for rep in cs.minimal_reps]
    return [element_label(w) for w in table.rs.weyl().elements]


def table_to_json(table) -> dict:
    """JSON document for a Borel or quotient table.

    ``labels`` indexes both coordinates of each entry; for quotient tables a
    coset is named by its minimal-length representative.
    """
    labels = _table_labels(table)
    entries = [
        {"label": labels[lab], "point": labels[pt], "value": poly_to_json(val)}
        for (lab, pt), val in sorted(table.entries.items())
    ]
    doc = _table_meta(table)
    doc["labels"] = labels
    doc["entries"] = entries
    return doc


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def table_to_csv(table) -> str:
    labels = _table_labels(table)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "point", "value"])
    for (lab, pt), val in sorted(table.entries.items()):
        writer.writerow([labels[lab], labels[pt], str(val)])
    return buf.getvalue()


_LATEX_SUBS = (
    (re.compile(r"a(\d+)"), r"\\alpha_{\1}"),
    (re.compile(r"\bh\b"), r"\\hbar"),
    (re.compile(r"\^(\d+)"), r"^{\1}"),
    (re.compile(r"\*"), r" "),
)


def poly_to_latex(p: MPoly) -> str:
    text = str(p)
    for pattern, repl in _LATEX_SUBS:
        text = pattern.sub(repl, text)
    return text


def _label_to_latex(label: str) -> str:
    if label == "e":
        return "e"
    return "".join(f"\\sigma_{{{part}}}" for part in label.split("."))


def table_to_latex(table) -> str:
    """An array environment in the orientation that renders upper-triangular:
    minus puts labels on rows, plus puts points on rows."""
    labels = _table_labels(table)
    n = len(labels)
    if table.chamber == "minus":
        cell = lambda r, c: table.entry(r, c)
        row_kind, col_kind = "label", "point"
    else:
        cell = lambda r, c: table.entry(c, r)
        row_kind, col_kind = "point", "label"
    heads = " & ".join(_label_to_latex(lab) for lab in labels)
    lines = [
        f"% chamber={table.chamber}, rows={row_kind}s, columns={col_kind}s",
        "\\[",
        f"\\begin{{array}}{{r|{'c' * n}}}",
        f" & {heads} \\\\",
        "\\hline",
    ]
    for r in range(n):
        cells = " & ".join(poly_to_latex(cell(r, c)) for c in range(n))
        lines.append(f"{_label_to_latex(labels[r])} & {cells} \\\\")
    lines += ["\\end{array}", "\\]"]
    return "\n".join(lines) + "\n"


FORMATS = ("json", "csv", "latex", "text")


def render_table(table, fmt: str) -> str:
    if fmt == "json":
        return dumps_json(table_to_json(table))
    if fmt == "csv":
        return table_to_csv(table)
    if fmt == "latex":
        return table_to_latex(table)
    if fmt == "text":
        return table_to_text(table)
    raise ValueError(f"unknown format {fmt!r}")


def table_to_text(table) -> str:
    labels = _table_labels(table)
    lines = []
    meta = _table_meta(table)
    subset = f" subset={meta['subset']}" if "subset" in meta else ""
    lines.append(
        f"{meta['type']}{meta['rank']}{subset} chamber={meta['chamber']} "
        f"method={meta['method']}"
    )
    width = max(len(lab) for lab in labels)
    for (lab, pt), val in sorted(table.entries.items()):
        lines.append(f"  {labels[lab]:<{width}} | {labels[pt]:<{width}} | {val}")
    return "\n".join(lines) + "\n"


def report_to_json(results, config: dict | None = None) -> dict:
    """Verification run report; wall_time values vary run to run."""
    suites = [
        {
            "name": r.name,
            "passed": r.passed,
            "checks": r.checks,
            "failures": list(r.failures),
            "wall_time": round(r.wall_time, 3),
        }
        for r in results
    ]
    doc = {"passed": all(r.passed for r in results), "suites": suites}
    if config is not None:
        doc["config"] = {k: config[k] for k in sorted(config)}
    return doc
