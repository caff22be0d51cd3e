"""Rendering of report dictionaries as JSON, CSV, LaTeX or plain text.

Reports are plain nested dicts built in a fixed key order, so every format
is deterministic.  Values under the keys in ``DECOMPOSITION_KEYS`` map
partitions ("2,2,1") to multiplicities and are rendered as sums of S^lambda.
"""

from __future__ import annotations

import csv
import io
import json
from itertools import groupby
from typing import Any

from .combinatorics import parse_partition

DECOMPOSITION_KEYS = frozenset(
    {"decomposition", "engine_decomposition", "predicted_decomposition", "whitehouse_decomposition", "W_nk"}
)


def latex_partition(lam: str) -> str:
    """"2,2,1" -> "2^{2}1"; multi-digit parts keep comma separators."""
    parts = parse_partition(lam)
    sep = "," if any(p >= 10 for p in parts) else ""
    chunks = []
    for p, grp in groupby(parts):
        e = len(list(grp))
        chunks.append(f"{p}^{{{e}}}" if e > 1 else str(p))
    return sep.join(chunks)


def decomposition_latex(dec: dict | None) -> str:
    if dec is None:
        return r"\text{n/a}"
    if not dec:
        return "0"
    terms = [(f"{mult}\\," if mult != 1 else "") + f"S^{{{latex_partition(lam)}}}" for lam, mult in dec.items()]
    return " + ".join(terms)


def decomposition_text(dec: dict | None) -> str:
    if dec is None:
        return "n/a"
    if not dec:
        return "0"
    return " + ".join((f"{mult} " if mult != 1 else "") + f"S^({lam})" for lam, mult in dec.items())


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        if not value:
            out.append((prefix, ""))
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        if not value:
            out.append((prefix, ""))
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    elif value is None:
        out.append((prefix, ""))
    elif isinstance(value, bool):
        out.append((prefix, "true" if value else "false"))
    else:
        out.append((prefix, str(value)))


def to_csv(report: dict) -> str:
    rows: list[tuple[str, str]] = []
    _flatten("", report, rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key", "value"))
    w.writerows(rows)
    return buf.getvalue()


_LATEX_SPECIAL = {c: "\\" + c for c in "_&%#{}$"}
_LATEX_SPECIAL["\\"] = r"\textbackslash{}"


def _latex_escape(s: str) -> str:
    return "".join(_LATEX_SPECIAL.get(c, c) for c in s)


def to_latex(report: dict) -> str:
    lines = [r"\begin{tabular}{ll}", r"\hline"]
    for key, value in report.items():
        if key in DECOMPOSITION_KEYS:
            cell = f"${decomposition_latex(value)}$"
        elif isinstance(value, (dict, list)):
            cell = r"\texttt{" + _latex_escape(json.dumps(value, separators=(",", ":"))) + "}"
        else:
            cell = _latex_escape("n/a" if value is None else str(value))
        lines.append(f"{_latex_escape(str(key))} & {cell} \\\\")
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


def _text_lines(report: dict, indent: int = 0) -> list[str]:
    pad = "  " * indent
    width = max((len(str(k)) for k in report), default=0)
    out = []
    for key, value in report.items():
        if key in DECOMPOSITION_KEYS:
            out.append(f"{pad}{key:<{width}}  {decomposition_text(value)}")
        elif isinstance(value, dict) and value:
            out.append(f"{pad}{key}:")
            out.extend(_text_lines(value, indent + 1))
        elif isinstance(value, list):
            out.append(f"{pad}{key:<{width}}  " + (", ".join(map(str, value)) if value else "-"))
        else:
            out.append(f"{pad}{key:<{width}}  {'n/a' if value is None else value}")
    return out


def conjecture_table(report: dict) -> str:
    """Engine and prediction side by side."""
    rows = [
        ("dim", report["engine_dim"], report["predicted_dim"]),
        (
            "decomposition",
            decomposition_text(report["engine_decomposition"]),
            decomposition_text(report["predicted_decomposition"]),
        ),
    ]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len("engine"), *(len(str(r[1])) for r in rows))
    lines = [
        f"conjecture check n={report['n']} k={report['k']} (S_{report['m']})",
        f"{'':<{w0}}  {'engine':<{w1}}  predicted",
    ]
    for name, a, b in rows:
        lines.append(f"{name:<{w0}}  {'n/a' if a is None else a!s:<{w1}}  {b}")
    lines.append(f"W_{report['k'] + 1}: {decomposition_text(report['whitehouse_decomposition'])}")
    if report["bad_constituents"]:
        lines.append("constituents wider than k-1: " + "; ".join(report["bad_constituents"]))
    lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


def to_text(report: dict) -> str:
    if report.get("command") == "conjecture":
        body = conjecture_table(report)
        cfg = report.get("config")
        return body + ("\n".join(["config:"] + _text_lines(cfg, 1)) + "\n" if cfg else "")
    return "\n".join(_text_lines(report)) + "\n"


RENDERERS = {"json": to_json, "csv": to_csv, "latex": to_latex, "text": to_text}


def render(report: dict, fmt: str) -> str:
    return RENDERERS[fmt](report)
