"""``zfc`` command-line front end.

Exit status: 0 when the analysis ran (whatever the verdict), 2 on bad
input, 3 when two independent methods disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from zfc import controllability as ctl
from zfc import matching as mt
from zfc import zero_forcing as zf
from zfc.formats import (
    FormatError,
    loads_graph,
    loads_pattern,
    matching_from_dict,
    matching_to_dict,
)
from zfc.graph_model import GraphKind, graph_bipartite, to_bipartite

DEFAULT_SEED = 7
DEFAULT_SAMPLES = 100

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISAGREE = 3


class Disagreement(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def parse_vertex_list(text: Optional[str]) -> tuple[int, ...]:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise FormatError(f"bad vertex list {text!r}; expected e.g. 1,3,4") from None


def _graph(args):
    if not args.graph:
        raise FormatError("--graph is required")
    return loads_graph(_read(args.graph))


def _bipartite(args):
    if args.pattern:
        return to_bipartite(loads_pattern(_read(args.pattern)))
    g, _ = _graph(args)
    return graph_bipartite(g)


def _forces_text(forces) -> str:
    return ", ".join(f"{x} -> {y}" for x, y in forces) or "(none)"


def cmd_zf_propagate(args):
    g, kind = _graph(args)
    res = zf.propagate(g, kind, parse_vertex_list(args.set))
    text = f"complete: {res.is_complete}\nblack: {sorted(res.final_black)}\nforces: {_forces_text(res.forces)}"
    return res.to_dict(), text


def cmd_zf_check(args):
    g, kind = _graph(args)
    s = parse_vertex_list(args.set)
    res = zf.propagate(g, kind, s)
    doc = {"set": sorted(set(s)), "zero_forcing": res.is_complete, **res.to_dict()}
    return doc, f"zero forcing set: {res.is_complete}\nforces: {_forces_text(res.forces)}"


def cmd_zf_number(args):
    g, kind = _graph(args)
    z, w = zf.zero_forcing_number(g, kind)
    return {"Z": z, "witness": sorted(w)}, f"Z = {z}, witness {sorted(w)}"


def cmd_zf_tree(args):
    g, _ = _graph(args)
    z, w = zf.tree_min_zero_forcing_set(g)
    return {"Z": z, "witness": sorted(w)}, f"Z = {z}, witness {sorted(w)}"


def cmd_mr_tree(args):
    g, _ = _graph(args)
    mr = zf.tree_min_rank(g)
    return {"min_rank": mr}, f"minimum rank = {mr}"


def cmd_tri(args):
    g, _ = _graph(args)
    t = mt.triangle_number(g)
    return {"triangle_number": t}, f"triangle number = {t}"


def cmd_match_check(args):
    b = _bipartite(args)
    if not args.matching:
        raise FormatError("--matching is required")
    try:
        doc = json.loads(_read(args.matching))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid matching JSON: {exc}") from None
    edges, _ = matching_from_dict(doc)
    ok, cert = mt.is_constrained(b, edges)
    out = matching_to_dict(edges, ok)
    out["certificate"] = [list(p) for p in cert] if cert else None
    return out, f"constrained: {ok}" + (f"\nordering: {cert}" if cert else "")


def cmd_match_max(args):
    b = _bipartite(args)
    forbid = parse_vertex_list(args.forbid)
    if args.self_less:
        forbid = tuple(range(1, min(b.row_count, b.col_count) + 1))
    size, m = mt.max_constrained_matching(b, forbid)
    out = {"size": size, **matching_to_dict(m, True)}
    return out, f"maximum constrained matching size {size}: {sorted(m)}"


def _spec(args):
    g, kind = _graph(args)
    return ctl.SystemSpec(g, kind, parse_vertex_list(args.input))


def cmd_ctrl_strong(args):
    spec = _spec(args)
    if spec.kind is GraphKind.SIMPLE or args.method != "both":
        rep = ctl.strong(spec, args.method if args.method != "both" else "zf")
        doc = rep.to_dict()
    else:
        a, b = ctl.strong_zf(spec), ctl.strong_matching(spec)
        doc = {"verdict": a.verdict, "method": "both", "zf": a.to_dict(), "matching": b.to_dict()}
        if a.verdict != b.verdict:
            raise Disagreement(json.dumps(doc, sort_keys=True))
    lines = [f"strongly controllable from {list(spec.input_set)}: {doc['verdict']}"]
    for key in ("forces", "forces_all_loops"):
        ev = doc.get("evidence", doc.get("zf", {}).get("evidence", {}))
        if key in ev:
            lines.append(f"{key}: {_forces_text(ev[key])}")
    return doc, "\n".join(lines)


def cmd_ctrl_min_input(args):
    g, kind = _graph(args)
    size, w, method = ctl.min_input_set(g, kind)
    doc = {"size": size, "witness": sorted(w), "method": method}
    text = f"minimum input set size {size}: {sorted(w)} ({method})"
    if args.selfless_gap:
        if kind is not GraphKind.LOOP or g.loop_vertices():
            raise FormatError("--selfless-gap applies to undamped loop-directed graphs only")
        sel = ctl.selfless_matching_input_set(g)
        doc["selfless_matching"] = {"size": len(sel), "set": sorted(sel), "gap": len(sel) - size}
        text += f"\nself-less matching input set size {len(sel)}: {sorted(sel)}"
    return doc, text


def cmd_ctrl_kalman(args):
    spec = _spec(args)
    try:
        rep = ctl.kalman_trial(spec, args.samples, args.seed)
    except ctl.SoundnessError as exc:
        raise Disagreement(str(exc)) from None
    return rep.to_dict(), f"{rep.controllable_count}/{rep.samples} sampled realizations controllable"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="FILE", help="graph JSON ('-' for stdin)")
    common.add_argument("--pattern", metavar="FILE", help="pattern text ('-' for stdin)")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="zfc", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def add(sub, name, func):
        p = sub.add_parser(name, parents=[common])
        p.set_defaults(func=func)
        return p

    zfp = groups.add_parser("zf").add_subparsers(dest="cmd", required=True)
    for name, func in (("propagate", cmd_zf_propagate), ("check", cmd_zf_check)):
        add(zfp, name, func).add_argument("--set", default="", metavar="LIST")
    add(zfp, "number", cmd_zf_number)
    add(zfp, "tree", cmd_zf_tree)

    mp = groups.add_parser("match").add_subparsers(dest="cmd", required=True)
    add(mp, "check", cmd_match_check).add_argument("--matching", metavar="FILE")
    p = add(mp, "max", cmd_match_max)
    p.add_argument("--self-less", action="store_true")
    p.add_argument("--forbid", metavar="LIST")

    add(groups, "tri", cmd_tri)
    add(groups, "mr-tree", cmd_mr_tree)

    cp = groups.add_parser("ctrl").add_subparsers(dest="cmd", required=True)
    p = add(cp, "strong", cmd_ctrl_strong)
    p.add_argument("--input", default="", metavar="LIST")
    p.add_argument("--method", choices=("zf", "matching", "both"), default="zf")
    p = add(cp, "min-input", cmd_ctrl_min_input)
    p.add_argument("--selfless-gap", action="store_true")
    p = add(cp, "kalman", cmd_ctrl_kalman)
    p.add_argument("--input", default="", metavar="LIST")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, text = args.func(args)
    except Disagreement as exc:
        print(f"error: methods disagree: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except (FormatError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())

