"""Command line front end: ``qdm analyze|fuse|confine|glue --config FILE``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .cells import vertex_star, Incidence
from .checks import TOL, algebra_suite
from .config import ConfigError, ModelConfig, dumps_report
from .cyclic import is_special_form, orbit_decomposition
from .excitations import PathUnavailable, confinement_scan, scan_csv
from .fusion import (
    FusionError,
    as_w,
    detect_nonabelian,
    edge_fixture,
    fusion_table,
    orbital_basis,
    solve_w,
    verify_w,
)
from .gluing import glue_experiment
from .operators import DENSE_CAP
from .space import DimensionCap
from .spectrum import (
    AnnihilatedSeed,
    NonIntegerTrace,
    ground_report,
    low_spectrum,
    vacuum_state,
)

EXIT_CONFIG, EXIT_CAP, EXIT_INTERNAL, EXIT_FUSION, EXIT_PATH = 2, 3, 4, 5, 6


def _has_loops(c) -> bool:
    return any(inc is Incidence.LOOP for v in range(c.vertex_count) for _, inc in vertex_star(c, v))


def cmd_analyze(cfg: ModelConfig, seed=0, dense_cap=DENSE_CAP) -> dict:
    space = cfg.build_space()
    action = space.action
    dec = orbit_decomposition(action)
    flag, k, ident = is_special_form(action)
    excluded = cfg.excluded_vertices
    keep = bool(cfg.options.get("keep_incident_edges", False))
    ground = ground_report(space, excluded, keep)
    report = {
        "model": {
            "group_order": space.N,
            "matter_dim": space.M,
            "action": list(action.generator_map),
            "vertices": space.n_vertices,
            "edges": space.n_edges,
            "faces": space.n_faces,
            "euler_characteristic": space.complex2.euler_characteristic,
            "dim": space.dim,
            "excluded_vertices": list(excluded),
        },
        "orbits": [list(o) for o in dec.orbits],
        "d_alg": dec.d_alg,
        "special_form": flag,
        "nontrivial_orbits": k,
        "identity_dim": ident,
        "degeneracy": ground.degeneracy,
        "sector_count": ground.sector_count,
        "energy_floor": ground.energy_floor,
        "vacua": ground.vacua,
    }
    if cfg.options.get("algebra", True):
        res = algebra_suite(space, int(cfg.options.get("vectors", 20)), seed)
        report["algebra_suite"] = {
            "passed": all(v < TOL for v in res.values()),
            "residuals": res,
        }
    vecs = []
    for vac in ground.vacua:
        try:
            vecs.append(vacuum_state(space, vac["representative"], excluded, keep))
        except AnnihilatedSeed:
            vecs.append(None)
    report["vacuum_overlaps"] = [
        [0.0 if a is None or b is None else float(abs(np.vdot(a, b))) for b in vecs]
        for a in vecs
    ]
    if space.dim <= dense_cap:
        levels = low_spectrum(space, None, excluded, keep, dense_cap)
        report["low_spectrum"] = [[e, m] for e, m in levels[: int(cfg.options.get("levels", 4))]]
    notes = []
    if _has_loops(space.complex2):
        notes.append("self-loop edges present: vertex operators leave them unchanged")
    report["notes"] = notes
    return report


def _read_w_file(path) -> list:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError("w_file", str(err)) from err
    if not isinstance(data, list) or not data:
        raise ConfigError("w_file", "expected a non-empty list of {label, matrix} objects")
    out = []
    for item in data:
        try:
            mat = np.array(
                [[complex(*x) if isinstance(x, list) else complex(x) for x in row]
                 for row in item["matrix"]]
            )
            out.append(as_w(item["label"], mat, item.get("note", "")))
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigError("w_file", f"bad entry {item!r}: {err}") from err
    return out


def solved_w_set(action, relation="operator") -> list:
    """W operators from the two-vertex fixture.

    ``operator`` and ``vertex`` collect the solution basis for every ``(J, K)``;
    ``orbital`` splits the ``J = 1`` vertex-only solutions into disjoint supports.
    """
    fx = edge_fixture(action)
    if relation == "orbital":
        return orbital_basis(solve_w(fx, 1, 1, "vertex"))
    out = []
    ks = range(1, fx.M + 1) if relation == "operator" else [None]
    for J in range(1, fx.N + 1):
        for K in ks:
            sols = solve_w(fx, J, K, relation)
            for i, mat in enumerate(sols, 1):
                if K is None:
                    label = (J, i)
                else:
                    label = (J, K) if len(sols) == 1 else (J, K, i)
                w = as_w(label, mat)
                w.K = K
                out.append(w)
    return out


def _matrix_json(m):
    m = np.asarray(m)
    if np.all(np.abs(m.imag) < 1e-12):
        return m.real.tolist()
    return [[[z.real, z.imag] for z in row] for row in m]


def cmd_fuse(cfg: ModelConfig, w_source="solve", w_file=None) -> dict:
    action = cfg.build_action()
    relation = cfg.options.get("relation", "operator" if w_source == "solve" else "vertex")
    if w_source == "file":
        ws = _read_w_file(w_file)
        fx = edge_fixture(action)
        check = "operator" if relation == "operator" else "vertex"
        verification = {w.name: verify_w(fx, w, check) for w in ws}
    else:
        ws = solved_w_set(action, relation)
        verification = None
    if not ws:
        raise ConfigError("w_source", "no W operators to fuse")
    table = fusion_table(ws)
    report = {
        "w_source": w_source,
        "relation": relation,
        "operators": [{"label": w.name, "matrix": _matrix_json(w.matrix)} for w in ws],
    }
    if verification is not None:
        report["verification"] = verification
        report["verified"] = all(r < TOL for r in verification.values())
    report["table"] = table.to_json()
    report["vacuum"] = None if table.vacuum is None else ws[table.labels.index(table.vacuum)].name
    report["nonabelian"] = detect_nonabelian(table)
    report["phases"] = {
        f"{ws[table.labels.index(a)].name},{ws[table.labels.index(b)].name}": [z.real, z.imag]
        for (a, b), z in table.phases.items()
    }
    return report


def cmd_confine(cfg: ModelConfig, lengths, closed=False) -> str:
    space = cfg.build_space()
    vac = vacuum_state(space, int(cfg.options.get("vacuum", 0)), cfg.excluded_vertices)
    rows = confinement_scan(space, vac, lengths, closed, int(cfg.options.get("charge", 1)),
                            cfg.excluded_vertices)
    return scan_csv(rows)


def cmd_glue(cfg: ModelConfig, mode="union", exclude_shared=False) -> dict:
    if cfg.parts is None:
        raise ConfigError("parts", "glue needs two complex specs under 'parts'")
    a, b = cfg.build_parts()
    at = cfg.at or [0, 0]
    res = glue_experiment(cfg.build_action(), a, b, mode, exclude_shared, tuple(at),
                          cfg.options.get("wall_labels"),
                          cfg.options.get("dim_cap", 2**27))
    return res.to_dict()


def _pair_name(a, b):
    def name(x):
        return "(" + ",".join(str(v) for v in x) + ")"

    return f"({name(a)},{name(b)})"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdm", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", required=True, help="model configuration JSON")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=1,
                        help="worker cap (operators currently run single-threaded)")
        sp.add_argument("--dense-cap", type=int, default=DENSE_CAP)

    common(sub.add_parser("analyze", help="orbits, degeneracy, algebra checks, vacua"))
    sp = sub.add_parser("fuse", help="fusion table from solved or supplied W operators")
    common(sp)
    sp.add_argument("--w-source", choices=["solve", "file"], default="solve")
    sp.add_argument("--w-file")
    sp = sub.add_parser("confine", help="string energy scan as CSV")
    common(sp)
    sp.add_argument("--lengths", help="comma-separated string lengths (config options.lengths, else 1,2,3)")
    sp.add_argument("--closed", action="store_true")
    sp = sub.add_parser("glue", help="degeneracy of unions and wedges")
    common(sp)
    sp.add_argument("--mode", choices=["union", "wedge"], default="union")
    sp.add_argument("--exclude-shared", action="store_true")
    return p


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = ModelConfig.load(args.config)
        if args.command == "analyze":
            cfg.options.setdefault("dim_cap", 2**27)
            text = dumps_report(cmd_analyze(cfg, args.seed, args.dense_cap))
        elif args.command == "fuse":
            if args.w_source == "file" and not args.w_file:
                raise ConfigError("w_file", "--w-file is required with --w-source file")
            text = dumps_report(cmd_fuse(cfg, args.w_source, args.w_file))
        elif args.command == "confine":
            try:
                if args.lengths is not None:
                    lengths = [int(x) for x in args.lengths.split(",") if x.strip()]
                else:
                    lengths = [int(x) for x in cfg.options.get("lengths", [1, 2, 3])]
            except (TypeError, ValueError) as err:
                raise ConfigError("lengths", str(err)) from err
            text = cmd_confine(cfg, lengths, args.closed)
        else:
            text = dumps_report(cmd_glue(cfg, args.mode, args.exclude_shared))
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except DimensionCap as err:
        print(f"dimension cap: {err}", file=sys.stderr)
        return EXIT_CAP
    except FusionError as err:
        names = ", ".join(_pair_name(a, b) for a, b, _ in err.pairs)
        print(f"{type(err).__name__}: offending pairs {names}", file=sys.stderr)
        if err.noncommuting:
            nc = ", ".join(_pair_name(a, b) for a, b in err.noncommuting)
            print(f"non-commuting pairs: {nc}", file=sys.stderr)
        return EXIT_FUSION
    except PathUnavailable as err:
        print(f"path unavailable: {err}", file=sys.stderr)
        return EXIT_PATH
    except (NonIntegerTrace, AnnihilatedSeed, AssertionError) as err:
        print(f"internal invariant failed: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
