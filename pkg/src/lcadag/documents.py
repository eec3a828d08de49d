"""JSON and edge-list documents for DAGs and set systems, plus DOT rendering.

DAG document::

    {"format_version": 1,
     "vertices": [{"id": 0}, {"id": 1, "label": "a"}],
     "edges": [[0, 1]],
     "metadata": {}}

System document::

    {"format_version": 1, "ground": ["a", "b"], "sets": [["a"], ["b"], ["a", "b"]]}

Edge-list text (DAGs only): one ``parent child`` pair per line (``/`` also
separates pairs), a single token declares an isolated vertex, ``#`` starts a
comment and ``leaves: a b c`` names the leaves, each labeled by its own id.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Literal

from .dag import Dag, cluster_map, shortcuts, vertex_key
from .errors import DocumentSyntaxError, InputError
from .setsys import SetSystem, fmt_set, set_key

FORMAT_VERSION = 1


def _pos(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None


def _require(doc, key, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentSyntaxError(f"{kind} document needs a {key!r} field")
    return doc[key]


def _check_version(doc):
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DocumentSyntaxError(f"unsupported format_version {version!r}")


def _vertex_id(x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentSyntaxError(f"vertex ids must be integers or strings, got {x!r}")
    return x


def dag_from_document(doc) -> tuple[Dag, dict]:
    """Build a DAG from a parsed document; returns the DAG and its metadata."""
    if not isinstance(doc, dict):
        raise DocumentSyntaxError("DAG document must be a JSON object")
    _check_version(doc)
    vertices, labels = [], {}
    for entry in _require(doc, "vertices", "DAG"):
        if not isinstance(entry, dict) or "id" not in entry:
            raise DocumentSyntaxError(f"vertex entry {entry!r} needs an 'id'")
        vid = _vertex_id(entry["id"])
        if vid in labels or vid in vertices:
            raise InputError(f"duplicate vertex id {vid!r}")
        vertices.append(vid)
        if entry.get("label") is not None:
            labels[vid] = entry["label"]
    edges = []
    for e in _require(doc, "edges", "DAG"):
        if not isinstance(e, list) or len(e) != 2:
            raise DocumentSyntaxError(f"edge {e!r} must be a [src, dst] pair")
        edges.append((_vertex_id(e[0]), _vertex_id(e[1])))
    if len(set(edges)) != len(edges):
        raise InputError("duplicate edge in document")
    meta = doc.get("metadata") or {}
    return Dag(vertices, edges, labels), meta


def dag_to_document(dag: Dag, metadata: dict | None = None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "vertices": [
            {"id": v, "label": dag.labels[v]} if v in dag.labels else {"id": v}
            for v in dag.vertices
        ],
        "edges": [[u, w] for u, w in dag.sorted_edges()],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def system_from_document(doc) -> SetSystem:
    if not isinstance(doc, dict):
        raise DocumentSyntaxError("system document must be a JSON object")
    _check_version(doc)
    ground = _require(doc, "ground", "system")
    sets = _require(doc, "sets", "system")
    if not isinstance(ground, list) or not all(isinstance(x, str) for x in ground):
        raise DocumentSyntaxError("'ground' must be a list of label strings")
    if len(set(ground)) != len(ground):
        raise InputError("duplicate label in ground set")
    seen = set()
    for s in sets:
        if not isinstance(s, list) or not all(isinstance(x, str) for x in s):
            raise DocumentSyntaxError(f"set {s!r} must be a list of labels")
        fs = frozenset(s)
        if len(fs) != len(s):
            raise InputError(f"set {s!r} repeats a label")
        if fs in seen:
            raise InputError(f"duplicate set {fmt_set(fs)}")
        seen.add(fs)
    return SetSystem(frozenset(ground), frozenset(seen))


def system_to_document(sys: SetSystem) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "ground": sorted(sys.ground),
        "sets": [sorted(m) for m in sys.sorted_members()],
    }


def parse_edge_list(text: str) -> Dag:
    edges, singles, leaves = [], [], []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if stripped.lower().startswith("leaves:"):
            leaves.extend(stripped.split(":", 1)[1].split())
        else:
            start = offset
            for chunk in line.split("/"):
                tokens = chunk.split()
                if len(tokens) == 2:
                    edges.append((tokens[0], tokens[1]))
                elif len(tokens) == 1:
                    singles.append(tokens[0])
                elif tokens:
                    ln, col = _pos(text, start + len(chunk) - len(chunk.lstrip()))
                    raise DocumentSyntaxError(f"expected 'parent child', got {chunk.strip()!r}", ln, col)
                start += len(chunk) + 1
        offset += len(raw)
    if len(set(leaves)) != len(leaves):
        raise InputError("a leaf is listed twice")
    return Dag.from_edges(edges, leaves=leaves, vertices=singles)


def dag_to_edge_list(dag: Dag) -> str:
    if any(not isinstance(v, str) or dag.labels.get(v, v) != v for v in dag.vertices):
        raise InputError("edge-list format needs string ids with leaves labeled by their id")
    lines = [f"{u} {w}" for u, w in dag.sorted_edges()]
    lines += [v for v in dag.vertices if not dag.children(v) and not dag.parents(v)]
    lines.append("leaves: " + " ".join(sorted(dag.labels.values())))
    return "\n".join(lines) + "\n"


def parse_input(data: bytes | str, kind: Literal["dag", "system"]):
    """Parse a document. DAG input may be JSON or edge-list text."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"input is not UTF-8: {exc.reason}") from None
    else:
        text = data
    if kind == "system":
        return system_from_document(_load_json(text))
    if kind != "dag":
        raise ValueError(f"unknown document kind {kind!r}")
    if text.lstrip().startswith(("{", "[")):
        return dag_from_document(_load_json(text))[0]
    return parse_edge_list(text)


def dumps(doc: dict) -> str:
    """Canonical layout: one top-level field per line, one list element per line."""
    parts = []
    for key, value in doc.items():
        if isinstance(value, list) and any(isinstance(x, (list, dict)) for x in value):
            body = ",\n    ".join(json.dumps(x, sort_keys=True) for x in value)
            text = f"[\n    {body}\n  ]"
        else:
            text = json.dumps(value, sort_keys=True)
        parts.append(f"  {json.dumps(key)}: {text}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def serialize(obj) -> str:
    """Canonical JSON text for a Dag or SetSystem."""
    doc = dag_to_document(obj) if isinstance(obj, Dag) else system_to_document(obj)
    return dumps(doc)


def load(path: str | Path, kind: Literal["dag", "system"]):
    return parse_input(Path(path).read_bytes(), kind)


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(dag: Dag, show_clusters: bool = False, highlight: Iterable = (),
               dashed_shortcuts: bool = False, name: str = "G") -> str:
    """Deterministic Graphviz text for ``dag``."""
    hl = set(highlight)
    cm = cluster_map(dag) if show_clusters else {}
    cut = set(shortcuts(dag)) if dashed_shortcuts else set()
    out = [f"digraph {_q(name)} {{"]
    for v in dag.vertices:
        attrs = [f"label={_q(dag.labels.get(v, v))}"]
        if v in dag.labels:
            attrs.append("shape=plaintext")
        if show_clusters:
            attrs.append(f"xlabel={_q(fmt_set(cm[v]))}")
        if v in hl:
            attrs.append("color=blue")
            attrs.append("style=filled")
            attrs.append("fillcolor=lightblue")
        out.append(f"  {_q(v)} [{', '.join(attrs)}];")
    for u, w in dag.sorted_edges():
        style = " [style=dashed]" if (u, w) in cut else ""
        out.append(f"  {_q(u)} -> {_q(w)}{style};")
    out.append("}")
    return "\n".join(out) + "\n"


def sorted_sets(sets: Iterable[Iterable[str]]) -> list[list[str]]:
    return [sorted(s) for s in sorted((frozenset(s) for s in sets), key=set_key)]


def sorted_vertices(vs: Iterable) -> list:
    return sorted(vs, key=vertex_key)
