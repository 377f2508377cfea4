"""Graph documents on disk.

Primary format is JSON, ``{"n": 3, "edges": [[3, 1], [1, 2]]}`` with 1-based
vertex ids.  A small DOT subset is also read::

    digraph g {
        1 -> 2 -> 3;
        3 -> 1;
        4;            // isolated vertex
    }

Integer node names only; the vertex count is the largest id mentioned.
"""

from __future__ import annotations

import json
import random
import re
from pathlib import Path

from .digraph import Digraph, from_edge_list
from .errors import ParseError


def parse_json(text: str) -> Digraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ParseError('graph document must be an object with "n" and "edges"')
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError('"n" must be an integer')
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise ParseError('"edges" must be a list of [tail, head] pairs')
    pairs = []
    for k, e in enumerate(edges):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in e)
        ):
            raise ParseError(f"edge #{k} is not an integer [tail, head] pair: {e!r}")
        pairs.append((e[0], e[1]))
    return from_edge_list(n, pairs)


_DOT_HEADER = re.compile(r"^\s*(strict\s+)?digraph\b[^{]*\{", re.S)
_NODE = re.compile(r"^\s*(\d+)\s*$")


def parse_dot(text: str) -> Digraph:
    """Read the integer-node DOT subset described in the module docstring."""
    stripped = re.sub(r"//[^\n]*|#[^\n]*", "", text)
    stripped = re.sub(r"/\*.*?\*/", lambda m: "\n" * m.group().count("\n"), stripped, flags=re.S)
    head = _DOT_HEADER.match(stripped)
    if not head:
        raise ParseError("expected 'digraph {' header", 1, 1)
    close = stripped.rfind("}")
    if close < head.end():
        raise ParseError("missing closing '}'", stripped.count("\n") + 1, 1)
    body = stripped[head.end():close]
    base_line = stripped[: head.end()].count("\n") + 1
    pairs, nodes = [], set()
    offset = 0
    for stmt in re.split(r"[;\n]", body):
        line = base_line + body[:offset].count("\n")
        offset += len(stmt) + 1
        stmt = re.sub(r"\[[^\]]*\]", "", stmt).strip()
        if not stmt:
            continue
        parts = stmt.split("->")
        ids = []
        for p in parts:
            m = _NODE.match(p)
            if not m:
                raise ParseError(f"cannot parse statement {stmt!r}", line, 1)
            ids.append(int(m.group(1)))
        nodes.update(ids)
        pairs.extend(zip(ids, ids[1:]))
    if not nodes:
        raise ParseError("digraph has no vertices", base_line, 1)
    return from_edge_list(max(nodes), pairs)


def load_graph(path) -> Digraph:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix in (".dot", ".gv") or text.lstrip().startswith(("digraph", "strict")):
        return parse_dot(text)
    return parse_json(text)


def to_document(g: Digraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def dump_graph(g: Digraph, path) -> None:
    Path(path).write_text(json.dumps(to_document(g)) + "\n", encoding="utf-8")


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    """Each of the ``n(n-1)`` possible edges present independently with probability ``p``."""
    return Digraph(
        n,
        frozenset(
            (a, b)
            for a in range(1, n + 1)
            for b in range(1, n + 1)
            if a != b and rng.random() < p
        ),
    )
