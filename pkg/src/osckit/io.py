"""Rendering and parsing: text, JSON and Graphviz DOT.

All listings are sorted lexicographically (matrices by (a, b, c, d), residues
by (l1, l2)) so repeated runs give byte-identical output.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from math import gcd

from .classify import ClassList, class_representatives, orbit_reps
from .cycles import Cycle, operator_label
from .mat import Mat2, format_mat, parse_mat
from .quad import divisors


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def parse_residue(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*,\s*(-?\d+)\s*", text)
    if m is None:
        raise ValueError(f"not a residue pair 'l1,l2': {text!r}")
    return int(m.group(1)), int(m.group(2))


def parse_label(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"([AB])(?:\^(\d+))?", label)
    if m is None:
        raise ValueError(f"bad operator label {label!r}")
    return m.group(1), int(m.group(2) or 1)


# -- cycles ----------------------------------------------------------------------


def cycles_to_json(T: int, cycles) -> dict:
    return {
        "T": T,
        "cycles": [
            {
                "elements": [format_mat(b) for b in z.elements],
                "operators": [operator_label(op) for op in z.operators],
            }
            for z in cycles
        ],
    }


def cycles_from_json(obj: dict) -> tuple[int, list[Cycle]]:
    cycles = [
        Cycle(
            tuple(parse_mat(s) for s in c["elements"]),
            tuple(parse_label(s) for s in c["operators"]),
        )
        for c in obj["cycles"]
    ]
    return int(obj["T"]), cycles


def _node_label(b: Mat2) -> str:
    return f"{b.a} {b.b}\\n{b.c} {b.d}"


def cycles_to_dot(T: int, cycles) -> str:
    """One digraph per cycle; edge i -> i+1 is labelled by the conjugating operator."""
    blocks = []
    for i, z in enumerate(cycles):
        lines = [f'digraph "T{T}_cycle{i}" {{']
        for j, b in enumerate(z.elements):
            lines.append(f'  n{j} [shape=box, label="{_node_label(b)}"];')
        n = len(z)
        for j, op in enumerate(z.operators):
            lines.append(f'  n{j} -> n{(j + 1) % n} [label="{operator_label(op)}"];')
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n".join(blocks) + "\n"


_DIGRAPH_RE = re.compile(r'digraph\s+"([^"]*)"\s*\{(.*?)\n\}', re.S)
_NODE_RE = re.compile(r'^\s*(n\d+)\s*\[shape=box,\s*label="(-?\d+) (-?\d+)\\n(-?\d+) (-?\d+)"\];$')
_EDGE_RE = re.compile(r'^\s*(n\d+)\s*->\s*(n\d+)\s*\[label="([^"]+)"\];$')


def cycles_from_dot(text: str) -> list[Cycle]:
    """Parse output of cycles_to_dot back into cycles (strict: rejects malformed lines)."""
    cycles = []
    for _, body in _DIGRAPH_RE.findall(text):
        nodes: dict[str, Mat2] = {}
        edges: dict[str, tuple[str, str]] = {}
        for line in body.strip().splitlines():
            m = _NODE_RE.match(line)
            if m:
                nodes[m.group(1)] = Mat2(*(int(g) for g in m.groups()[1:]))
                continue
            m = _EDGE_RE.match(line)
            if m:
                edges[m.group(1)] = (m.group(2), m.group(3))
                continue
            raise ValueError(f"unparseable DOT line: {line!r}")
        if set(edges) != set(nodes) or len(nodes) == 0:
            raise ValueError("every node needs exactly one outgoing edge")
        order, ops = [], []
        cur = "n0"
        while True:
            order.append(nodes[cur])
            nxt, label = edges[cur]
            ops.append(parse_label(label))
            cur = nxt
            if cur == "n0":
                break
        cycles.append(Cycle(tuple(order), tuple(ops)))
    return cycles


def cycles_to_text(T: int, cycles) -> str:
    out = [f"T = {T}: {len(cycles)} cycle(s)"]
    for i, z in enumerate(cycles):
        out.append(f"cycle {i} (length {len(z)}):")
        for b, op in zip(z.elements, z.operators):
            out.append(f"  ({format_mat(b)})  --{operator_label(op)}-->")
    return "\n".join(out) + "\n"


# -- classification ---------------------------------------------------------------


def _fmt_l(l) -> str:
    return f"({l[0]},{l[1]})"


def classlist_to_text(cl: ClassList) -> str:
    out = [f"T = {cl.T}, r = {cl.r}: {cl.count()} isomorphism class(es)"]
    for e in cl.entries:
        out.append(f"  B = {format_mat(e.B)}:  " + ", ".join(_fmt_l(l) for l in e.l_reps))
    return "\n".join(out) + "\n"


@dataclass
class TableRow:
    condition: str
    gcd_values: list[int]
    r_values: list[int]
    l_reps: list[tuple[int, int]]


def _condition(gs: list[int], n: int) -> str:
    divs = divisors(n)
    if set(gs) == set(divs):
        return "all r"
    h = min(gs)
    if set(gs) == {g for g in divs if g % h == 0}:
        return f"r = 0 (mod {h})"
    if len(gs) == 1:
        return f"gcd(r,{n}) = {gs[0]}"
    return f"gcd(r,{n}) in {{{','.join(map(str, gs))}}}"


def table_rows(B: Mat2, rset: list[int]) -> list[TableRow]:
    """Rows for one class representative: the l-representatives depend on r only via gcd(r, T-2)."""
    n = B.trace - 2
    by_g: dict[int, list] = {g: orbit_reps(B, g) for g in divisors(n)}
    merged: dict[tuple, list[int]] = {}
    for g in sorted(by_g, reverse=True):
        merged.setdefault(tuple(by_g[g]), []).append(g)
    rows = []
    for reps, gs in merged.items():
        gs = sorted(gs)
        rs = [r for r in rset if gcd(r, n) in gs]
        rows.append(TableRow(_condition(gs, n), gs, rs, list(reps)))
    rows.sort(key=lambda row: -max(row.gcd_values))
    return rows


def table_data(tmax: int, rset: list[int]) -> list[dict]:
    out = []
    for T in range(3, tmax + 1):
        classes = []
        for B in class_representatives(T):
            rows = table_rows(B, rset)
            classes.append(
                {
                    "B": format_mat(B),
                    "rows": [
                        {
                            "condition": row.condition,
                            "gcd_values": row.gcd_values,
                            "r_values": row.r_values,
                            "l_reps": [list(l) for l in row.l_reps],
                        }
                        for row in rows
                    ],
                }
            )
        out.append({"T": T, "classes": classes})
    return out


def table_to_text(data: list[dict]) -> str:
    out = []
    for block in data:
        T = block["T"]
        for c in block["classes"]:
            out.append(f"T = {T}   B = {c['B']}")
            for row in c["rows"]:
                reps = ", ".join(_fmt_l(l) for l in row["l_reps"])
                rs = ",".join(map(str, row["r_values"])) or "-"
                out.append(f"    {row['condition']:<22} {reps:<28} r in {{{rs}}}")
    return "\n".join(out) + "\n"


def kv_text(obj: dict) -> str:
    """Flat "key: value" rendering used for the verdict-style commands."""
    lines = []
    for k, v in obj.items():
        lines.append(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
    return "\n".join(lines) + "\n"
