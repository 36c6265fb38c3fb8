"""``isbell`` command-line front end.

Every command prints a JSON report to stdout and, with ``--out``, also writes
it to ``<out>/<command>.json``.  ``plot`` (or any command given ``--svg``)
renders the 2D chart next to the report.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .chambers import OrderSignature, all_chambers, chamber_adjacency, describe_signature, signature_at
from .errors import CapExceededError, IsbellError, NondegeneracyError
from .events import event_report
from .extreal import render
from .fca import EXT, INT, diamond, point_tower, specialize_to_face, chamber_tower
from .gap import gap_matrix
from .metric import profunctor_norm
from .plot import chart_figure
from .polyhedra import DEFAULT_CAP, enumerate_cells, face_poset
from .profunctor import (
    NucleusPoint,
    Potential,
    closure,
    is_nucleus_point,
    make_nucleus_point,
    transform,
)


def _point(args, M) -> NucleusPoint:
    if args.point:
        return io.read_point(M, args.point)
    if args.potential:
        return make_nucleus_point(M, io.read_potential(M, args.potential))
    return make_nucleus_point(M, Potential.presheaf(M, [0] * len(M.rows)))


def _base(args, p: NucleusPoint) -> NucleusPoint:
    return p.normalized(args.base_row) if p.is_finite else p


def cmd_transform(args, M) -> dict:
    if args.potential:
        pot = io.read_potential(M, args.potential)
    else:
        pot = Potential.presheaf(M, [0] * len(M.rows))
    other = transform(M, pot)
    return {
        "input": io.potential_json(pot),
        "transform": io.potential_json(other),
        "closure": io.potential_json(closure(M, pot)),
        "back": io.potential_json(transform(M, other)),
    }


def cmd_nucleus(args, M) -> dict:
    if args.point:
        f = io.read_point(M, args.point)
        check = is_nucleus_point(M, f.f, f.g)
        return {"nucleus": bool(check), "point": io.point_json(f)}
    p = _point(args, M)
    return {"nucleus": True, "point": io.point_json(p),
            "normalized": io.point_json(_base(args, p)),
            "norm": render(profunctor_norm(M))}


def cmd_gap(args, M) -> dict:
    p = _point(args, M)
    gap = gap_matrix(M, p)
    return {
        "point": io.point_json(p),
        "gap": [[render(x) for x in row] for row in gap.entries],
        "zero_set": io.pairs_json(M, gap.zero_set),
        "radii": [render(x) for x in gap.radii()],
        "event_radii": [[render(v), k] for v, k in gap.radius_multiplicities() if v.is_finite and v.value > 0],
    }


def cmd_cells(args, M) -> dict:
    cells = enumerate_cells(M, cap=args.cap, base_row=args.base_row)
    return {
        "count": len(cells),
        "by_dimension": _by_dim(cells),
        "cells": [
            {"tight_set": io.pairs_json(M, c.tight_set), "dimension": c.dimension,
             "interior_point": io.point_json(c.interior_point)}
            for c in cells
        ],
        "face_poset": [list(e) for e in face_poset(cells)],
    }


def _by_dim(cells) -> dict:
    out: dict[str, int] = {}
    for c in cells:
        out[str(c.dimension)] = out.get(str(c.dimension), 0) + 1
    return out


def cmd_events(args, M) -> dict:
    p = _point(args, M)
    return {
        "point": io.point_json(p),
        "events": [
            {"pair": list(e["pair"]), "radius": render(e["radius"]),
             "point": io.point_json(e["point"]),
             "witnesses": io.pairs_json(M, e["witnesses"])}
            for e in event_report(M, p, args.base_row)
        ],
    }


def cmd_chambers(args, M) -> dict:
    cells = enumerate_cells(M, cap=args.cap, base_row=args.base_row)
    results = all_chambers(M, cells)
    graph = chamber_adjacency(M, results)
    report = []
    for ci, res in enumerate(results):
        report.append({
            "tight_set": io.pairs_json(M, res.cell.tight_set),
            "dimension": res.cell.dimension,
            "chambers": [
                {"signature": [[list(p) for p in b] for b in describe_signature(M, ch.signature)],
                 "point": io.point_json(ch.point.normalized(args.base_row)),
                 "color": graph.coloring.get((ci, k)) if graph.coloring else None}
                for k, ch in enumerate(res.chambers)
            ],
            "walls": [
                {"between": [w.a, w.b],
                 "ties": [[list(p), list(q)] for p, q in w.hyperplane.ties]}
                for w in res.walls
            ],
        })
    return {
        "cells": report,
        "edges": [[list(a), list(b)] for a, b in graph.edges],
        "bipartite": graph.is_bipartite,
        "odd_cycle": [list(v) for v in graph.odd_cycle] if graph.odd_cycle else None,
    }


def _tower_json(M, tower) -> dict:
    levels = []
    for k, (R, L) in enumerate(zip(tower.relations, tower.lattices)):
        lvl = tower.levels[k]
        entry = {
            "level": render(lvl) if hasattr(lvl, "kind") else lvl,
            "relation": io.pairs_json(M, R.incidences),
            "concepts": [{"extent": ext_, "intent": int_}
                         for ext_, int_ in (x.describe(R) for x in L)],
            "hasse": [list(e) for e in L.hasse_edges()],
        }
        if k + 1 < len(tower):
            nxt = tower.lattices[k + 1]
            entry["transport"] = {
                kind: [nxt.index(tower.maps[kind][k][x]) for x in L] for kind in (EXT, INT)
            }
        levels.append(entry)
    return {"levels": levels}


def cmd_tower(args, M) -> dict:
    p = _point(args, M)
    tower = point_tower(M, p)
    sig = signature_at(M, p)
    ctower = chamber_tower(sig, M)
    out = {"point": io.point_json(p), "tower": _tower_json(M, tower),
           "matches_chamber_tower": [R.incidences for R in tower.relations]
           == [R.incidences for R in ctower.relations]}
    # every square of single pairs: a two-pair tie, or two adjacent single blocks
    checks = []
    blocks = sig.blocks
    for i in range(1, len(blocks)):
        if len(blocks[i]) == 2:
            a, b = blocks[i]
            head, tail = blocks[:i], blocks[i + 1:]
        elif i + 1 < len(blocks) and len(blocks[i]) == len(blocks[i + 1]) == 1:
            (a,), (b,) = blocks[i], blocks[i + 1]
            head, tail = blocks[:i], blocks[i + 2:]
        else:
            continue
        fine_l = chamber_tower(OrderSignature(head + ((a,), (b,)) + tail), M)
        fine_r = chamber_tower(OrderSignature(head + ((b,), (a,)) + tail), M)
        coarse = chamber_tower(OrderSignature(head + ((a, b),) + tail), M)
        verdicts = diamond(fine_l.relations[i - 1], fine_l.relations[i],
                           fine_r.relations[i], fine_l.relations[i + 1])
        face_ok = all(c.ok for c in specialize_to_face(fine_l, coarse)) and \
            all(c.ok for c in specialize_to_face(fine_r, coarse))
        checks.append({
            "pairs": [list(a), list(b)],
            "tied_here": len(blocks[i]) == 2,
            "diamond": {v.kind: v.ok for v in verdicts},
            "face_specialization": face_ok,
        })
    out["diamonds"] = checks
    return out


def cmd_plot(args, M) -> dict:
    cells = enumerate_cells(M, cap=args.cap, base_row=args.base_row)
    p = _point(args, M)
    radii = []
    if len(M.rows) == 3 and p.is_finite:
        radii = [v for v, _ in gap_matrix(M, p).radius_multiplicities()
                 if v.is_finite and v.value > 0]
    chambers = graph = None
    if M.is_finite and len(M.rows) == 3:
        chambers = all_chambers(M, cells)
        graph = chamber_adjacency(M, chambers)
    out = Path(args.out or ".")
    return chart_figure(M, cells, out, point=p, radii=radii, chambers=chambers,
                        graph=graph, base_row=args.base_row)


COMMANDS = {
    "transform": cmd_transform,
    "nucleus": cmd_nucleus,
    "gap": cmd_gap,
    "cells": cmd_cells,
    "events": cmd_events,
    "chambers": cmd_chambers,
    "tower": cmd_tower,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isbell", description="Isbell nucleus toolkit")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--matrix", required=True, help="JSON file with rows, cols, entries")
    ap.add_argument("--potential", help="JSON potential used as a seed")
    ap.add_argument("--point", help="JSON nucleus point with f and g")
    ap.add_argument("--base-row", help="row pinned to 0 in reports and charts")
    ap.add_argument("--out", help="directory for report files")
    ap.add_argument("--svg", action="store_true", help="also render the 2D chart")
    ap.add_argument("--cap", type=int, default=DEFAULT_CAP,
                    help="largest matrix size accepted for cell enumeration")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        M = io.read_profunctor(args.matrix)
        if args.base_row is not None:
            M.row_index(args.base_row)
        report = COMMANDS[args.command](args, M)
        if args.svg and args.command != "plot":
            report["chart"] = cmd_plot(args, M)
    except CapExceededError as exc:
        print(f"isbell: refused: {exc}", file=sys.stderr)
        return 3
    except NondegeneracyError as exc:
        print(f"isbell: nondegeneracy failure: {exc}", file=sys.stderr)
        return 4
    except IsbellError as exc:
        print(f"isbell: error: {exc}", file=sys.stderr)
        return 2
    text = io.dump(report)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{args.command}.json").write_text(text)
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
