"""Command-line interface.

Exit codes: 0 success, 2 usage or parse error, 3 size guard exceeded.
"""

from __future__ import annotations

import argparse
import glob
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, formats
from . import invariants as inv
from .analysis import METHODS, distance_matrix, single_linkage
from .bounds import BoundMethod, lower_bound
from .errors import GuardError, NetdistError
from .exact import dn_exact, dnhat_exact
from .generators import Environment, circle, circle_rev, n1, simulate_hippocampus

EXIT_USAGE = 2
EXIT_GUARD = 3


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _load(path, missing=0.0):
    return formats.load_network(path, missing)


def invariant_report(X) -> dict:
    return {
        "nodes": X.n,
        "diam": inv.diam(X),
        "m_out": inv.m_out(X),
        "m_in": inv.m_in(X),
        "trace": list(inv.trace_set(X)),
        "out": list(inv.out_set(X)),
        "in": list(inv.in_set(X)),
        "spec": list(inv.spec_global(X)),
    }


def cmd_invariants(args):
    report = invariant_report(_load(args.file, args.missing))
    if args.json:
        print(json.dumps(report, indent=2))
        return
    for key, value in report.items():
        if isinstance(value, list):
            value = "{" + ", ".join(_fmt(v) for v in value) + "}"
        elif isinstance(value, float):
            value = _fmt(value)
        print(f"{key}: {value}")


def cmd_bound(args):
    X, Y = _load(args.file_a, args.missing), _load(args.file_b, args.missing)
    print(_fmt(lower_bound(X, Y, args.method)))


def cmd_exact(args):
    X, Y = _load(args.file_a, args.missing), _load(args.file_b, args.missing)
    if args.method == "dn":
        value = dn_exact(X, Y, guard=args.guard)
    else:
        if X.n != Y.n:
            raise UsageError(f"dnhat needs equal node counts, got {X.n} and {Y.n}")
        value = dnhat_exact(X, Y, guard=args.guard)
    print(_fmt(value))


def cmd_matrix(args):
    paths = sorted(glob.glob(args.glob, recursive=True))
    if len(paths) < 2:
        raise UsageError(f"pattern {args.glob!r} matched {len(paths)} file(s); need at least 2")
    nets = [_load(p, args.missing) for p in paths]
    D = distance_matrix(nets, args.method, normalize=args.normalize_diam,
                        labels=[Path(p).stem for p in paths], workers=args.workers)
    text = formats.matrix_to_csv(D)
    if args.output:
        formats.atomic_write(args.output, text)
    else:
        sys.stdout.write(text)


def cmd_cluster(args):
    try:
        D = formats.parse_matrix_csv(Path(args.matrix).read_text(), args.matrix)
    except OSError as exc:
        raise UsageError(f"{args.matrix}: {exc.strerror}") from None
    dendro = single_linkage(D)
    text = formats.dendrogram_to_json(dendro) if args.format == "json" else formats.dendrogram_to_newick(dendro)
    if args.output:
        formats.atomic_write(args.output, text)
    else:
        sys.stdout.write(text)


def cmd_gen(args):
    if args.kind == "n1":
        X = n1(args.alpha)
    elif args.kind == "circle":
        X = circle(args.n)
    else:
        X = circle_rev(args.n, args.rho)
    formats.save_network(X, args.output)


def cmd_sim_hippocampus(args):
    env = Environment.square(args.side) if args.env == "square" else Environment.one_hole(args.side)
    radius = args.radius * args.side
    X, raster, _ = simulate_hippocampus(env, cells=args.cells, steps=args.steps, radius=radius,
                                        seed=args.seed, window=args.window)
    formats.save_network(X, args.output)
    meta = {
        "env": args.env,
        "side": args.side,
        "hole_radius": env.hole_radius,
        "cells": args.cells,
        "steps": args.steps,
        "radius": radius,
        "step_len": 0.1 * args.side,
        "window": args.window,
        "seed": args.seed,
        "total_spikes": int(raster.spikes.sum()),
        "version": __version__,
    }
    formats.atomic_write(_sidecar(args.output), json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _sidecar(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".meta.json")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0 or not np.isfinite(v):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="netdist", description="Compare finite directed weighted networks.")
    p.add_argument("--version", action="version", version=f"netdist {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def network_opts(sp):
        sp.add_argument("--missing", type=float, default=0.0,
                        help="fill value for pairs absent from an edge list (default 0)")

    sp = sub.add_parser("invariants", help="print the invariants of one network")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true", help="emit JSON")
    network_opts(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("bound", help="lower bound on the network distance")
    sp.add_argument("--method", default=BoundMethod.SPEC_LOCAL_BOTH.value,
                    choices=[m.value for m in BoundMethod], metavar="METHOD",
                    help="one of: " + ", ".join(m.value for m in BoundMethod))
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    network_opts(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("exact", help="exact distance by exhaustive search")
    sp.add_argument("--method", choices=["dn", "dnhat"], default="dn")
    sp.add_argument("--guard", type=_positive_int, default=None,
                    help="size guard (n*m cells for dn, n for dnhat)")
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    network_opts(sp)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("matrix", help="pairwise distance matrix over a set of files")
    sp.add_argument("--method", default=BoundMethod.SPEC_LOCAL_BOTH.value, choices=list(METHODS),
                    metavar="METHOD", help="one of: " + ", ".join(METHODS))
    sp.add_argument("--glob", required=True, help="file pattern, e.g. 'data/*.json'")
    sp.add_argument("--normalize-diam", action="store_true", help="divide each network by its diameter")
    sp.add_argument("--workers", type=_positive_int, default=1)
    sp.add_argument("-o", "--output")
    network_opts(sp)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("cluster", help="single-linkage dendrogram of a distance matrix")
    sp.add_argument("matrix")
    sp.add_argument("--format", choices=["json", "newick"], default="json")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_cluster)

    sp = sub.add_parser("gen", help="write an example network")
    sp.add_argument("--kind", choices=["n1", "circle", "circle-rev"], required=True)
    sp.add_argument("--alpha", type=float, default=0.0, help="self-loop weight for n1")
    sp.add_argument("--n", type=_positive_int, default=6, help="node count for circles")
    sp.add_argument("--rho", type=float, default=1.0, help="reversibility for circle-rev (>= 1)")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("sim-hippocampus", help="simulate a place-cell network")
    sp.add_argument("--cells", type=_positive_int, default=200)
    sp.add_argument("--steps", type=_positive_int, default=5000)
    sp.add_argument("--radius", type=_positive_float, default=0.1,
                    help="place-field radius as a fraction of the side length")
    sp.add_argument("--env", choices=["square", "one-hole"], default="square")
    sp.add_argument("--side", type=_positive_float, default=1.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--window", type=_positive_int, default=5)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_sim_hippocampus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except GuardError as exc:
        print(f"netdist: {exc}. Exhaustive search is too large here; "
              f"use 'netdist bound' for a polynomial-time lower bound.", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, formats.ParseError, NetdistError, ValueError) as exc:
        print(f"netdist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
