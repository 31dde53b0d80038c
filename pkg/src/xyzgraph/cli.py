"""Command-line interface: ``xyz <subcommand>``.

Exit codes: 0 success, 1 negative verdict (a JSON reason is still printed),
2 usage or input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from . import __version__
from .covers import (
    classify_cover_case,
    even_polyhedral_cover,
    reduced_cover,
    sixfold_cover,
)
from .embed import (
    apply_override,
    coordinates_from_surface,
    drawing_metrics,
    export_svg,
    grid_extent,
)
from .errors import (
    MalformedDocument,
    PreconditionViolated,
    TooLarge,
    UnknownName,
    XYZError,
)
from .families import (
    PermutationGroupSpec,
    ambiguous_torus,
    builtin,
    builtin_map,
    builtin_names,
    cayley,
    ccc,
    gem,
    generalized_petersen,
    grid_mod_surface,
    hex_klein_bottle,
    hex_rhombus_torus,
    k33_projective_map,
    mobius_ladder,
    prism,
    tetrahedron_map,
    truncated_square_torus,
)
from .graph import CubicGraph, graph_from_dict, is_bipartite
from .recognize import (
    planar_faces,
    planar_recognize,
    recognize_xyz,
    test_partition,
)
from .reduction import SimpleGraph, reduce_3coloring
from .surface import (
    ColoredSurface,
    FaceSet,
    classify_topology,
    diagnose_xyz_surface,
    map_from_dict,
    map_to_dict,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Negative(Exception):
    """A well-formed run whose verdict is negative; carries the JSON payload."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("reason"))
        self.payload = payload


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON: {exc}") from exc


def _load_graph(path: str) -> CubicGraph:
    try:
        return graph_from_dict(_read_json(path))
    except XYZError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_map(path: str) -> tuple[CubicGraph, FaceSet, tuple[str, ...] | None]:
    try:
        return map_from_dict(_read_json(path))
    except XYZError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _threads(arg: int | None) -> int:
    if arg is not None:
        return max(1, arg)
    env = os.environ.get("XYZ_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"XYZ_THREADS must be an integer, got {env!r}") from exc
    return 1


def _surface_from_input(path: str, threads: int = 1) -> ColoredSurface:
    """A map document is checked as given; a bare graph is recognised first."""
    doc = _read_json(path)
    try:
        if isinstance(doc, dict) and "faces" in doc:
            g, faces, colors = map_from_dict(doc)
            surf, reason, witness = diagnose_xyz_surface(g, faces, colors)
            if surf is None:
                raise Negative({"format": "xyz-check/1", "ok": False, "reason": reason, "witness": _jsonable(witness)})
            return surf
        g = graph_from_dict(doc)
    except XYZError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    rec = recognize_xyz(g, threads=threads)
    if not rec.accepted:
        raise Negative({"format": "xyz-recognition/1", "accepted": False, "reason": rec.reason})
    return rec.surface


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_recognize(args) -> str:
    g = _load_graph(args.graph)
    if args.planar_fast:
        try:
            rec = planar_recognize(g)
        except XYZError as exc:
            raise UsageError(str(exc)) from exc
    else:
        rec = recognize_xyz(g, find_all=args.all, threads=_threads(args.threads))
    out = {
        "format": "xyz-recognition/1",
        "accepted": rec.accepted,
        "partitions_tested": rec.partitions_tested,
    }
    if not rec.accepted:
        out["reason"] = rec.reason or "no-valid-partition"
        raise Negative(out)
    out["surface"] = rec.surface.to_dict()
    out["topology"] = classify_topology(g, rec.surface.faces).to_dict()
    if args.all:
        out["census"] = rec.census()
        out["surfaces"] = [
            {"faces": [list(f) for f in s.faces], "colors": list(s.colors),
             "topology": classify_topology(g, s.faces).to_dict()}
            for s in rec.surfaces
        ]
    return dumps(out)


def cmd_check_surface(args) -> str:
    g, faces, colors = _load_map(args.map)
    surf, reason, witness = diagnose_xyz_surface(g, faces, colors)
    if surf is None:
        raise Negative({"format": "xyz-check/1", "ok": False, "reason": reason, "witness": _jsonable(witness)})
    return dumps({
        "format": "xyz-check/1",
        "ok": True,
        "colors": list(surf.colors),
        "topology": classify_topology(g, faces).to_dict(),
    })


def cmd_embed(args) -> str:
    surf = _surface_from_input(args.input, _threads(args.threads))
    return dumps(coordinates_from_surface(surf).to_dict())


def cmd_metrics(args) -> str:
    surf = _surface_from_input(args.input, _threads(args.threads))
    if args.override:
        try:
            emb = apply_override(surf, _read_json(args.override))
        except MalformedDocument as exc:
            raise UsageError(f"{args.override}: {exc}") from exc
        except ValueError as exc:
            raise Negative({"format": "xyz-metrics/1", "ok": False, "reason": str(exc)}) from exc
    else:
        emb = coordinates_from_surface(surf)
    out = {"format": "xyz-metrics/1", "ok": True, "extent": list(grid_extent(emb))}
    out.update(drawing_metrics(surf.graph, emb).to_dict())
    return dumps(out)


def cmd_svg(args) -> str:
    surf = _surface_from_input(args.input, _threads(args.threads))
    return export_svg(coordinates_from_surface(surf), scale=args.scale)


def _ints(params: Sequence[str], count: int, family: str) -> list[int]:
    if len(params) != count:
        raise UsageError(f"family {family!r} takes {count} integer parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError as exc:
        raise UsageError(f"family {family!r}: parameters must be integers") from exc


def _cayley_instance(params: Sequence[str]):
    if len(params) not in (3, 4):
        raise UsageError("cayley takes DEGREE and two or three generators in cycle notation, e.g. '(1 2)'")
    try:
        spec = PermutationGroupSpec.from_cycles(int(params[0]), *params[1:])
    except (ValueError, XYZError) as exc:
        raise UsageError(f"cayley: {exc}") from exc
    cg = cayley(spec)
    if cg.kind == "ab":
        return cg.graph, cg.ab_faces(), None
    surf = test_partition(cg.graph, cg.natural_partition())
    if surf is None:
        return cg.graph, None, None
    return cg.graph, surf.faces, surf.colors


def _square_octagon(p: Sequence[str]):
    a, b, c, d = _ints(p, 4, "square-octagon")
    return tuple(truncated_square_torus((a, b), (c, d)))


def _gem_of(build: Callable, name: str):
    def make(p: Sequence[str]):
        _ints(p, 0, name)
        return tuple(gem(build()).instance)

    return make


# Each family returns (graph, faces or None, colours or None).
FAMILIES: dict[str, tuple[str, Callable[[Sequence[str]], tuple]]] = {
    "prism": ("M", lambda p: (prism(*_ints(p, 1, "prism")), None, None)),
    "gp": ("N K", lambda p: (generalized_petersen(*_ints(p, 2, "gp")), None, None)),
    "mobius-ladder": ("N", lambda p: (mobius_ladder(*_ints(p, 1, "mobius-ladder")), None, None)),
    "ccc": ("N", lambda p: tuple(ccc(*_ints(p, 1, "ccc")))),
    "grid-mod": ("K", lambda p: tuple(grid_mod_surface(*_ints(p, 1, "grid-mod")))),
    "hex-torus": ("P Q", lambda p: tuple(hex_rhombus_torus(*_ints(p, 2, "hex-torus")))),
    "square-octagon": ("A B C D", _square_octagon),
    "hex-klein": ("P T", lambda p: tuple(hex_klein_bottle(*_ints(p, 2, "hex-klein")))),
    "ambiguous-torus": ("K", lambda p: tuple(ambiguous_torus(*_ints(p, 1, "ambiguous-torus")).gem.instance)),
    "gem-tetrahedron": ("", _gem_of(tetrahedron_map, "gem-tetrahedron")),
    "gem-k33": ("", _gem_of(k33_projective_map, "gem-k33")),
    "cayley": ("DEGREE GEN GEN [GEN]", _cayley_instance),
}


def _generate(family: str, params: list[str]):
    key = family.lower()
    if key in FAMILIES:
        return FAMILIES[key][1](params)
    if params:
        raise UsageError(f"named graph {family!r} takes no parameters")
    try:
        inst = builtin_map(key)
        return inst.graph, inst.faces, inst.colors
    except UnknownName:
        pass
    try:
        return builtin(key), None, None
    except UnknownName as exc:
        raise UsageError(f"unknown family {family!r}; families: {', '.join(sorted(FAMILIES))}; "
                         f"named: {', '.join(builtin_names())}") from exc


def cmd_generate(args) -> str:
    try:
        g, faces, colors = _generate(args.family, list(args.params))
    except (XYZError, ValueError) as exc:
        raise UsageError(f"{args.family}: {exc}") from exc
    if args.with_faces:
        if faces is None:
            try:
                faces = planar_faces(g)
            except XYZError as exc:
                raise UsageError(f"family {args.family!r} has no declared faces and is not planar") from exc
        doc = map_to_dict(g, faces, colors)
    else:
        doc = g.to_dict()
    return dumps(doc)


def cmd_cover(args) -> str:
    g, faces, _ = _load_map(args.map)
    try:
        if args.mode == "sixfold":
            res = sixfold_cover(g, faces)
        elif args.mode == "full":
            res = even_polyhedral_cover(g, faces, cap=args.cap)
            res.metadata.setdefault("mode", "full")
        else:
            if args.k is None:
                raise UsageError("--mode random needs --k")
            run = reduced_cover(g, faces, args.k, args.seed, budget=args.budget)
            if run.result is None:
                raise Negative({
                    "format": "xyz-cover/1", "ok": False, "reason": "no-cover-within-budget",
                    "metadata": {"mode": "random", "seed": args.seed, "k": args.k, "attempts": run.attempts},
                })
            res = run.result
            res.metadata["k"] = args.k
    except (PreconditionViolated, TooLarge) as exc:
        raise Negative({"format": "xyz-cover/1", "ok": False, "reason": str(exc)}) from exc
    return dumps(res.to_dict())


def cmd_reduce(args) -> str:
    doc = _read_json(args.graph)
    try:
        h = SimpleGraph.from_dict(doc)
    except MalformedDocument as exc:
        raise UsageError(f"{args.graph}: {exc}") from exc
    r = reduce_3coloring(h)
    full = r.graph.to_dict()
    full["metadata"] = r.metadata
    wanted = [s.strip() for s in args.report.split(",") if s.strip()] if args.report else []
    keys = {"sizes": "sizes", "genus-claim": "genus_claim"}
    for w in wanted:
        if w not in keys:
            raise UsageError(f"unknown report section {w!r}; choose from {', '.join(keys)}")
    if args.output:
        Path(args.output).write_text(dumps(full))
        report = {"format": r.metadata["format"], "vertices": r.graph.n}
        for w in wanted:
            report[keys[w]] = r.metadata[keys[w]]
        return dumps(report)
    return dumps(full)


def cmd_classify(args) -> str:
    g, faces, colors = _load_map(args.map)
    surf, reason, _ = diagnose_xyz_surface(g, faces, colors)
    out = {
        "format": "xyz-classify/1",
        "topology": classify_topology(g, faces).to_dict(),
        "bipartite": bool(is_bipartite(g)),
        "xyz_surface": surf is not None,
    }
    if surf is None:
        out["reason"] = reason
    try:
        out["cover_case"] = classify_cover_case(g, faces)
    except PreconditionViolated as exc:
        out["cover_case"] = None
        out["cover_case_reason"] = str(exc)
    return dumps(out)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 2 with help text, never a traceback
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="xyz", description="Recognise, build and draw xyz graphs.")
    p.add_argument("--version", action="version", version=f"xyz {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def threads(sp):
        sp.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $XYZ_THREADS or 1)")

    s = sub.add_parser("recognize", help="decide whether a cubic graph is an xyz graph")
    s.add_argument("graph")
    s.add_argument("--all", action="store_true", help="list every distinct face set")
    s.add_argument("--planar-fast", action="store_true", help="planar shortcut (planar input only)")
    threads(s)
    s.set_defaults(run=cmd_recognize)

    s = sub.add_parser("check-surface", help="verify a map against the xyz-surface conditions")
    s.add_argument("map")
    s.set_defaults(run=cmd_check_surface)

    for name, fn, helptext in (
        ("embed", cmd_embed, "integer coordinates from a surface or graph"),
        ("metrics", cmd_metrics, "plane counts, volume and crossings"),
        ("svg", cmd_svg, "isometric SVG drawing"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("input", help="map/surface JSON, or a graph JSON to recognise first")
        threads(s)
        if name == "metrics":
            s.add_argument("--override", help="JSON file with per-face plane values")
        if name == "svg":
            s.add_argument("--scale", type=float, default=40.0)
        s.set_defaults(run=fn)

    s = sub.add_parser("generate", help="build a named graph or family member")
    s.add_argument("family")
    s.add_argument("params", nargs="*")
    s.add_argument("-o", "--output")
    s.add_argument("--with-faces", action="store_true", help="emit the map with its faces")
    s.set_defaults(run=cmd_generate)

    s = sub.add_parser("cover", help="covering constructions")
    s.add_argument("map")
    s.add_argument("--mode", choices=("sixfold", "full", "random"), default="sixfold")
    s.add_argument("--k", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cap", type=int, default=14, help="edge cap for --mode full")
    s.add_argument("--budget", type=int, default=64, help="attempts for --mode random")
    s.set_defaults(run=cmd_cover)

    s = sub.add_parser("reduce", help="reduce graph 3-colouring to xyz recognition")
    s.add_argument("graph")
    s.add_argument("-o", "--output")
    s.add_argument("--report", default="", help="comma list: sizes,genus-claim")
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("classify", help="topology and cover case of a map")
    s.add_argument("map")
    s.set_defaults(run=cmd_classify)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Execute one command; returns (exit code, stdout text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = args.run(args)
        if getattr(args, "output", None) and args.command == "generate":
            Path(args.output).write_text(text)
            return EXIT_OK, ""
        return EXIT_OK, text
    except Negative as neg:
        return EXIT_NEGATIVE, dumps(neg.payload)
    except UsageError as exc:
        print(f"xyz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, text = run(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001 - last-resort internal error
        print(f"xyz: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
