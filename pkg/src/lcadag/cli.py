"""Command-line entry point: ``lcadag <command> ...``.

Exit codes: 0 success, 1 a checked property or law failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .dag import Dag, cluster_map, recognize_shape, vertex_key
from .documents import dag_to_document, dumps, export_dot, parse_input, serialize
from .errors import (
    InputError,
    LcaDagError,
    NotGroundedError,
    NotIAryError,
    NotPreIAryError,
    ResourceLimitError,
    UnknownVertexError,
)
from .hasse import hasse_dag, realize_with_property
from .lca import i_lca_vertices, lca_property_witness
from .oracle import GenParams, all_laws, check_corpus
from .sizes import SizeIndex
from .transform import ominus, simplify, verify_preservation

OK, FAILED, BAD_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _dag(path: str) -> Dag:
    return parse_input(_read(path), "dag")


def _sizes(text: str | None, default: str | None = None) -> SizeIndex:
    text = text if text is not None else default
    if text is None:
        raise UsageError("--sizes is required")
    index, added = SizeIndex.parse(text)
    if added:
        print(f"warning: size index must contain 1; using {index}", file=sys.stderr)
    return index


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _vertex_ids(dag: Dag, text: str) -> list:
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok in dag.index:
            out.append(tok)
        elif tok.lstrip("-").isdigit() and int(tok) in dag.index:
            out.append(int(tok))
        else:
            raise UnknownVertexError(tok)
    return out


def _ids(vs) -> list:
    return sorted(vs, key=vertex_key)


def cmd_check(args) -> int:
    dag = _dag(args.dag)
    index = _sizes(args.sizes, "1,2")
    report = recognize_shape(dag).as_dict()
    _, w = i_lca_vertices(dag, index)
    witness = lca_property_witness(dag, index)
    report["sizes"] = list(index.sizes)
    report["lca_relevant"] = not w
    report["non_lca_vertices"] = _ids(w)
    report["lca_property"] = witness is None
    report["lca_property_witness"] = sorted(witness) if witness else None
    sys.stdout.write(_json(report))
    return OK


def cmd_clusters(args) -> int:
    dag = _dag(args.dag)
    cm = cluster_map(dag)
    out = {
        "clusters": [{"id": v, "cluster": sorted(cm[v])} for v in dag.vertices],
        "sets": [sorted(m) for m in sorted(set(cm.values()), key=lambda s: (len(s), sorted(s)))],
    }
    sys.stdout.write(_json(out))
    return OK


def cmd_hasse(args) -> int:
    system = parse_input(_read(args.system), "system")
    if args.realize:
        dag = realize_with_property(system, _sizes(args.sizes), args.realize)
    else:
        dag = hasse_dag(system)
    sys.stdout.write(export_dot(dag, show_clusters=True) if args.format == "dot" else serialize(dag))
    return OK


def cmd_simplify(args) -> int:
    dag = _dag(args.dag)
    res = simplify(dag, _sizes(args.sizes))
    removed = _ids(res.removed)
    if args.emit == "diff":
        if args.format == "dot":
            raise UsageError("--emit diff has no DOT form")
        sys.stdout.write(_json({
            "removed": removed,
            "lost_clusters": [sorted(c) for c in res.cluster_diff],
            "uniqueness_certified": res.uniqueness_certified,
        }))
        return OK
    out = res.reduced if args.emit == "reduced" else res.reduced_shortcut_free
    if args.format == "dot":
        sys.stdout.write(export_dot(out, show_clusters=True))
    else:
        meta = {"removed": removed, "uniqueness_certified": res.uniqueness_certified}
        sys.stdout.write(dumps(dag_to_document(out, meta)))
    return OK


def cmd_ominus(args) -> int:
    dag = _dag(args.dag)
    sys.stdout.write(serialize(ominus(dag, _vertex_ids(dag, args.remove))))
    return OK


def cmd_verify(args) -> int:
    report = verify_preservation(_dag(args.original), _dag(args.transformed), _sizes(args.sizes))
    out = report.as_dict()
    out["all_pass"] = report.all_pass
    sys.stdout.write(_json(out))
    return OK if report.all_pass else FAILED


def cmd_shape(args) -> int:
    sys.stdout.write(_json(recognize_shape(_dag(args.dag)).as_dict()))
    return OK


def cmd_dot(args) -> int:
    dag = _dag(args.dag)
    highlight = ()
    if args.highlight_w:
        highlight = i_lca_vertices(dag, _sizes(args.sizes))[1]
    sys.stdout.write(export_dot(dag, show_clusters=args.clusters, highlight=highlight,
                                dashed_shortcuts=args.dashed_shortcuts))
    return OK


def cmd_fuzz(args) -> int:
    laws = all_laws() if args.laws in (None, "all") else [x.strip() for x in args.laws.split(",") if x.strip()]
    params = GenParams(seed=args.seed, leaf_count=(args.min_leaves, args.max_leaves),
                       max_vertices=args.max_vertices)
    report = check_corpus(laws, params, args.trials)
    sys.stdout.write(_json(report.as_dict(timings=args.timings)))
    for name, r in report.results.items():
        status = "ok" if r.failed == 0 else "FAIL"
        print(f"{name}: {status} {r.passed}/{r.trials} in {r.seconds:.2f}s", file=sys.stderr)
    return OK if report.ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lcadag", description="LCA analysis and simplification of DAGs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="structural flags plus lca-relevance and lca-property")
    c.add_argument("dag")
    c.add_argument("--sizes", help="size index, e.g. 1,2 or 1-3 (default 1,2)")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("clusters", help="cluster of every vertex")
    c.add_argument("dag")
    c.set_defaults(func=cmd_clusters)

    c = sub.add_parser("hasse", help="Hasse diagram of a set system")
    c.add_argument("system")
    c.add_argument("--realize", choices=("property", "ary"))
    c.add_argument("--sizes")
    c.add_argument("--format", choices=("json", "dot"), default="json")
    c.set_defaults(func=cmd_hasse)

    c = sub.add_parser("simplify", help="remove every non-lca vertex")
    c.add_argument("dag")
    c.add_argument("--sizes", required=True)
    c.add_argument("--emit", choices=("reduced", "shortcut-free", "diff"), default="reduced")
    c.add_argument("--format", choices=("json", "dot"), default="json")
    c.set_defaults(func=cmd_simplify)

    c = sub.add_parser("ominus", help="remove vertices, bridging parents to children")
    c.add_argument("dag")
    c.add_argument("--remove", required=True, help="comma-separated vertex ids")
    c.set_defaults(func=cmd_ominus)

    c = sub.add_parser("verify", help="check S0-S4 between two DAGs")
    c.add_argument("original")
    c.add_argument("transformed")
    c.add_argument("--sizes", required=True)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("shape", help="structural flags with witnesses")
    c.add_argument("dag")
    c.set_defaults(func=cmd_shape)

    c = sub.add_parser("dot", help="Graphviz rendering")
    c.add_argument("dag")
    c.add_argument("--clusters", action="store_true")
    c.add_argument("--highlight-w", action="store_true", help="highlight the non-lca vertices")
    c.add_argument("--sizes")
    c.add_argument("--dashed-shortcuts", action="store_true")
    c.set_defaults(func=cmd_dot)

    c = sub.add_parser("fuzz", help="check laws on generated instances")
    c.add_argument("--laws", help=f"comma list or 'all'; known: {', '.join(all_laws())}")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--min-leaves", type=int, default=2)
    c.add_argument("--max-leaves", type=int, default=6)
    c.add_argument("--max-vertices", type=int, default=16)
    c.add_argument("--timings", action="store_true", help="include wall-clock seconds in the JSON")
    c.set_defaults(func=cmd_fuzz)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NotPreIAryError, NotIAryError, NotGroundedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except (UsageError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except LcaDagError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return BAD_INPUT if isinstance(exc, InputError) else FAILED


if __name__ == "__main__":
    sys.exit(main())
