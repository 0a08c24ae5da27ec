"""
Command-line front end.

    torusquad build --n 3 --k 3 --out out/
    torusquad aut --n 4 --k 4
    torusquad realize --n 5 --k 7
    torusquad verify --n 3 --k 5 --out out/
    torusquad verify --sweep 3..8
    torusquad count-hypercube
    torusquad export --n 4 --k 4 --format off --out q44.off
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import autgroup as ag
from .complex_core import build_duoprism_boundary, build_torus_quadrangulation
from .geometry import DEFAULT_TOL, Realization, clifford_check, duoprism_vertices, metric_report
from .verify import hypercube_report, sweep, sweep_table, verify_no_hidden_symmetries


@dataclass(frozen=True)
class RunConfig:
    n: int
    k: int
    tolerance: float = DEFAULT_TOL
    cap: int = ag.DEFAULT_VERTEX_CAP
    out: str | None = None
    fmt: str = "json"


def _write(path: str, text: str) -> None:
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _sweep_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    if lo < 3 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad sweep range {text!r}")
    return lo, hi


def _config(parser: argparse.ArgumentParser, args) -> RunConfig:
    if args.n is None or args.k is None:
        parser.error("--n and --k are required")
    if args.n < 3 or args.k < 3:
        parser.error(f"cycle lengths must be >= 3 (got n={args.n}, k={args.k})")
    if args.tol <= 0:
        parser.error("--tol must be positive")
    return RunConfig(args.n, args.k, args.tol, args.cap, args.out, args.format)


def cmd_build(cfg: RunConfig) -> int:
    quad = build_torus_quadrangulation(cfg.n, cfg.k)
    boundary = build_duoprism_boundary(cfg.n, cfg.k)
    V, E, F = quad.counts()
    print(f"V={V} E={E} F={F}")
    print(f"duoprism boundary: V={V} E={E} F={len(boundary.faces)} C={len(boundary.cells3)}")
    if cfg.out:
        _write(os.path.join(cfg.out, f"Q_{cfg.n}_{cfg.k}.json"), quad.to_json())
        _write(os.path.join(cfg.out, f"B_{cfg.n}_{cfg.k}.json"), boundary.to_json())
    return 0


def cmd_aut(cfg: RunConfig) -> int:
    quad = build_torus_quadrangulation(cfg.n, cfg.k)
    g = ag.graph_automorphisms(quad.graph, cfg.cap)
    c = ag.cellular_automorphisms(quad, cfg.cap, graph_group=g)
    stab = ag.vertex_stabilizer(c, 0)
    rep = ag.transitivity_report(c, quad)
    ok = (g.order == ag.expected_graph_order(cfg.n, cfg.k)
          and c.order == ag.expected_cellular_order(cfg.n, cfg.k))
    print(f"|Aut(C_{cfg.n} x C_{cfg.k})|={g.order} |Aut(Q_{cfg.n},{cfg.k})|={c.order} "
          f"stabilizer={stab.order}")
    print(f"orbits: vertices={rep.vertex_orbits} edges={rep.edge_orbits} "
          f"faces={rep.face_orbits} flags={rep.flag_orbits}")
    if cfg.out:
        _write(cfg.out, c.to_json(with_elements=True))
    return 0 if ok else 1


def cmd_realize(cfg: RunConfig) -> int:
    quad = build_torus_quadrangulation(cfg.n, cfg.k)
    r = duoprism_vertices(cfg.n, cfg.k)
    m = metric_report(r, quad, cfg.tolerance)
    on_torus = clifford_check(r, cfg.tolerance)
    print(f"clifford={on_torus}")
    print("edge lengths: " + " ".join(f"{x:.12f}" for x in m.edge_length_orbits))
    print("dihedral angles: " + " ".join(f"{x:.12f}" for x in m.dihedral_angle_classes))
    print(f"face classes={m.face_congruence_classes} vertex figure classes={m.vertex_figure_classes}")
    if cfg.out:
        _write(cfg.out, r.to_off(quad) if cfg.fmt == "off" else r.to_json(quad))
    return 0 if on_torus else 1


def cmd_export(cfg: RunConfig) -> int:
    quad = build_torus_quadrangulation(cfg.n, cfg.k)
    r = duoprism_vertices(cfg.n, cfg.k)
    if cfg.fmt == "off":
        text = r.to_off(quad)
    elif cfg.fmt == "text":
        V, E, F = quad.counts()
        text = f"Q_{{{cfg.n},{cfg.k}}} V={V} E={E} F={F}\n"
    else:
        text = r.to_json(quad)
    if cfg.out:
        _write(cfg.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(cfg: RunConfig, import_path: str | None = None) -> int:
    realization = None
    if import_path:
        with open(import_path) as fh:
            realization = Realization.from_dict(json.load(fh))
    try:
        cert = verify_no_hidden_symmetries(cfg.n, cfg.k, cfg.tolerance, cfg.cap, realization)
    except ValueError as exc:
        print(f"error: Q_{{{cfg.n},{cfg.k}}}: {exc}", file=sys.stderr)
        return 2
    summary = cert.summary()
    sys.stdout.write(summary)
    if cfg.out:
        stem = os.path.join(cfg.out, f"certificate_{cfg.n}_{cfg.k}")
        _write(stem + ".json", cert.to_json())
        _write(stem + ".txt", summary)
    return 0 if cert.passed else 1


def cmd_sweep(lo: int, hi: int, tol: float, cap: int, out: str | None) -> int:
    certs = sweep(lo, hi, tol, cap)
    table = sweep_table(certs)
    sys.stdout.write(table)
    if out:
        _write(os.path.join(out, "sweep.txt"), table)
    return 0 if all(c.passed for c in certs) else 1


def cmd_count_hypercube(out: str | None = None) -> int:
    rep = hypercube_report()
    print(f"copies={rep.copies} ratio={rep.ratio:g}")
    print(f"naive scan={rep.copies_naive} isomorphic to Q_4,4={rep.all_isomorphic} "
          f"orbits under Aut(4-cube)={rep.orbits_under_cube_group}")
    if out:
        _write(out, json.dumps(rep.to_dict(), sort_keys=True) + "\n")
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusquad", description=__doc__.split("\n")[1])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--cap", type=int, default=ag.DEFAULT_VERTEX_CAP, help="vertex cap")
    common.add_argument("--format", choices=("json", "off", "text"), default="json")
    common.add_argument("--out")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="build Q_{n,k} and the duoprism boundary")
    sub.add_parser("aut", parents=[common], help="automorphism groups and orbits")
    sub.add_parser("realize", parents=[common], help="duoprism coordinates and metric report")
    sub.add_parser("export", parents=[common], help="write the realization as JSON/OFF")
    v = sub.add_parser("verify", parents=[common], help="certificate for one (n,k) or a sweep")
    v.add_argument("--sweep", type=_sweep_range, metavar="LO..HI")
    v.add_argument("--import", dest="import_path", metavar="COORDS.json",
                   help="realization JSON to check instead of the duoprism coordinates")
    h = sub.add_parser("count-hypercube", help="count copies of Q_{4,4} in the 4-cube")
    h.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "count-hypercube":
        return cmd_count_hypercube(args.out)
    if args.command == "verify" and args.sweep:
        return cmd_sweep(*args.sweep, args.tol, args.cap, args.out)
    cfg = _config(parser, args)
    if args.command == "build":
        return cmd_build(cfg)
    if args.command == "aut":
        return cmd_aut(cfg)
    if args.command == "realize":
        return cmd_realize(cfg)
    if args.command == "export":
        return cmd_export(cfg)
    return cmd_verify(cfg, args.import_path)


if __name__ == "__main__":
    sys.exit(main())
