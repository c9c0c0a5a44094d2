"""Text (SGF) and JSON serialisation of signed graphs.

SGF layout::

    n=<int>
    <u> <v> <+|->      one line per edge, 0-indexed, u < v

Blank lines and lines starting with ``#`` are ignored on input.
The writer emits edges in lexicographic order, so ``write_sgf(read_sgf(t)) == t``
for any text the writer produced.
"""
from __future__ import annotations

import json
import re

from .graph import SignedGraph

_HEADER = re.compile(r"^n=(\d+)$")
_EDGE = re.compile(r"^(\d+) (\d+) ([+-])$")


class FormatError(ValueError):
    pass


def write_sgf(g: SignedGraph) -> str:
    lines = [f"n={g.n}"]
    lines += [f"{u} {v} {'+' if s > 0 else '-'}" for u, v, s in g.edges()]
    return "\n".join(lines) + "\n"


def read_sgf(text: str) -> SignedGraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty SGF input")
    m = _HEADER.match(lines[0])
    if not m:
        raise FormatError(f"bad SGF header {lines[0]!r}")
    n = int(m.group(1))
    edges = []
    for ln in lines[1:]:
        m = _EDGE.match(ln)
        if not m:
            raise FormatError(f"unrecognised SGF line {ln!r}")
        u, v = int(m.group(1)), int(m.group(2))
        if not u < v:
            raise FormatError(f"edge line needs u < v: {ln!r}")
        edges.append((u, v, 1 if m.group(3) == "+" else -1))
    try:
        return SignedGraph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def to_json_obj(g: SignedGraph) -> dict:
    return {"n": g.n, "edges": [[u, v, s] for u, v, s in g.edges()]}


def write_json(g: SignedGraph) -> str:
    return json.dumps(to_json_obj(g))


def from_json_obj(obj) -> SignedGraph:
    if not isinstance(obj, dict) or set(obj) != {"n", "edges"}:
        raise FormatError('graph JSON must be an object with exactly "n" and "edges"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise FormatError('"n" must be an integer')
    edges = []
    for e in obj["edges"]:
        if (
            not isinstance(e, list)
            or len(e) != 3
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise FormatError(f"bad edge entry {e!r}")
        u, v, s = e
        edges.append((min(u, v), max(u, v), s))
    try:
        return SignedGraph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_json(text: str) -> SignedGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_json_obj(obj)


def read_graph(text: str) -> SignedGraph:
    """Parse either format, sniffing JSON by its leading brace."""
    if text.lstrip().startswith("{"):
        return read_json(text)
    return read_sgf(text)
