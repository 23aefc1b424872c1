"""Command-line entry point: instance generation, matrix analysis, and
experiment sweeps.

Exit codes: 0 success (including capability-skipped fields), 2 usage or
input error, 3 internal invariant violation (a guaranteed property failed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import blocky as bk
from . import boolmat as bm
from . import constructions as cons
from . import discrepancy as dsc
from . import extraction as ext
from . import gamma2 as g2
from . import semilinear as sl
from .boolmat import BoolMatrix
from .errors import CapabilityError, ConvergenceError, InputError, InternalInvariantError
from .seeding import split_seed


def _fmt(x) -> str:
    return format(float(x), ".12g")


def gen_random(m: int, n: int, density: float, seed: int) -> BoolMatrix:
    if not (0.0 <= density <= 1.0):
        raise InputError(f"density must be in [0, 1], got {density}")
    rng = np.random.default_rng(split_seed(seed, 0xA11))
    return BoolMatrix.from_dense((rng.random((m, n)) < density).astype(int))


def gen_polh_random(n: int, d: int, s: int, seed: int) -> BoolMatrix:
    """n points vs n random polytopes from POL(H) for s random half-spaces."""
    rng = np.random.default_rng(split_seed(seed, 0x901))
    normals = rng.standard_normal((s, d))
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    halfspaces = [(normals[i].tolist(), -0.5) for i in range(s)]
    points = [rng.random(d).tolist() for _ in range(n)]
    translates = [
        [rng.uniform(-0.5, 1.0, size=d).tolist() for _ in range(s)] for _ in range(n)
    ]
    return sl.gen_pol_h(points, halfspaces, translates)


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    fam = args.family
    seed = args.seed
    out = args.out
    if fam == "pmodp":
        M = cons.gen_P_modp(args.q, args.p)
        prov = f"pmodp q={args.q} p={args.p}"
    elif fam == "preal":
        M = cons.gen_P_real(args.q, args.p)
        prov = f"preal q={args.q} p={args.p}"
    elif fam == "setsystem":
        c = cons.gen_setsystem(args.gamma, args.m, seed)
        M = c.matrix
        prov = f"setsystem gamma={args.gamma} m={args.m} seed={seed} retries={c.retries}"
    elif fam == "random":
        M = gen_random(args.m, args.n, args.density, seed)
        prov = f"random m={args.m} n={args.n} density={args.density} seed={seed}"
    elif fam == "polh":
        M = gen_polh_random(args.n, args.d, args.s, seed)
        prov = f"polh n={args.n} d={args.d} s={args.s} seed={seed}"
    elif fam == "boxes":
        inst = sl.gen_points_boxes(args.n, args.d, seed)
        sl.save_instance(inst, out)
        print(f"# boxes n={args.n} d={args.d} seed={seed} -> {out}")
        return 0
    elif fam == "corners":
        inst = sl.gen_points_corners(args.n, args.d, seed)
        sl.save_instance(inst, out)
        print(f"# corners n={args.n} d={args.d} seed={seed} -> {out}")
        return 0
    elif fam == "dominance":
        inst = sl.gen_dominance(args.n, args.s, seed)
        sl.save_instance(inst, out)
        print(f"# dominance n={args.n} s={args.s} seed={seed} -> {out}")
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown family {fam}")
    bm.write_bmx(M, out)
    print(f"# {prov} -> {out} ({M.m}x{M.n}, {M.count_ones} ones)")
    return 0


# ---------------------------------------------------------------------------
# analyze


def analyze_matrix(
    M: BoolMatrix,
    provenance: str,
    with_exact: bool = False,
    with_disc: bool = False,
    with_blocky: bool = False,
    max_exact_dim: int = 32,
    seed: int = 0,
) -> dict:
    report: dict = {"provenance": provenance, "m": M.m, "n": M.n, "ones": M.count_ones}
    timings: dict = {}

    t0 = time.perf_counter()
    report["avg_degree"] = bm.avg_degree(M)
    dg = bm.degeneracy(M)
    report["degeneracy"] = dg.value
    report["four_cycle_free"] = is4 = bm.is_four_cycle_free(M)
    timings["combinatorics"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    bounds = g2.best_bounds(M)
    report["gamma2_lower"] = bounds.lower
    report["gamma2_upper"] = bounds.upper
    timings["bounds"] = time.perf_counter() - t0

    if with_exact:
        t0 = time.perf_counter()
        if min(M.m, M.n) > max_exact_dim or min(M.m, M.n) > g2.EXACT_DIM_LIMIT:
            report["gamma2_exact"] = None
            report["gamma2_exact_skipped"] = (
                f"skipped: min(m,n)={min(M.m, M.n)} exceeds cap {max_exact_dim}"
            )
        else:
            try:
                report["gamma2_exact"] = g2.exact_gamma2(M)
            except (CapabilityError, ConvergenceError) as exc:
                report["gamma2_exact"] = None
                report["gamma2_exact_skipped"] = f"skipped: {exc}"
        timings["exact"] = time.perf_counter() - t0

    if with_blocky:
        t0 = time.perf_counter()
        dec = bk.thin_decompose(M)
        report["blocky_terms"] = len(dec.terms)
        timings["blocky"] = time.perf_counter() - t0

    if with_disc:
        t0 = time.perf_counter()
        if M.n > dsc.DISC_COL_CAP:
            report["disc"] = None
            report["disc_skipped"] = f"skipped: n={M.n} exceeds cap {dsc.DISC_COL_CAP}"
        else:
            res = dsc.disc_exact(M)
            report["disc"] = res.value
            report["herdisc_lower"] = dsc.herdisc_lower(M, samples=32, seed=seed)
        timings["disc"] = time.perf_counter() - t0

    report["timings"] = {k: round(v, 6) for k, v in timings.items()}
    if not bounds.lower <= bounds.upper + 1e-6:  # pragma: no cover - guarded upstream
        raise InternalInvariantError("bounds inconsistent")
    return report


def cmd_analyze(args) -> int:
    M = bm.read_bmx(args.path)
    report = analyze_matrix(
        M,
        provenance=os.path.abspath(args.path),
        with_exact=args.exact,
        with_disc=args.disc,
        with_blocky=args.blocky,
        max_exact_dim=args.max_exact_dim,
        seed=args.seed,
    )
    if args.format == "csv":
        flat = dict(report)
        for k, v in flat.pop("timings", {}).items():
            flat[f"time_{k}"] = v
        print("field,value")
        for k, v in flat.items():
            print(f"{k},{_fmt(v) if isinstance(v, float) else v}")
    else:
        json.dump(report, sys.stdout, indent=1)
        print()
    return 0


# ---------------------------------------------------------------------------
# experiments


def _write_csv(path: str, header_comment: str, columns: list[str], rows: list[list]) -> None:
    with open(path, "w") as fh:
        fh.write(f"# {header_comment}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def experiment_c4sandwich(ps: list[int], out: str, seed: int) -> None:
    """Four-cycle-free sandwich on the modular point-line family."""
    rows = []
    for p in ps:
        for q in range(1, p):
            M = cons.gen_P_modp(q, p)
            dg = bm.degeneracy(M).value
            b = g2.best_bounds(M)
            rows.append([p, q, dg, b.lower, b.upper, b.upper / b.lower])
    _write_csv(
        out,
        "c4sandwich: modular point-line incidences; ratio = upper/lower certificate",
        ["p", "q", "dgc", "lower", "upper", "ratio"],
        rows,
    )


def experiment_zarabound(s: int, t: int, ns: list[int], out: str, seed: int) -> None:
    """Near-antichain dominance instances filtered K_{t,t}-free, checked
    against the recursion bound.  Uniform instances are useless here: they
    contain a 2x2 all-ones block almost surely beyond a few dozen points,
    so every row would be filtered away."""
    rows = []
    for idx, n in enumerate(ns):
        for attempt in range(8):
            inst = sl.gen_dominance_anti(n, s, split_seed(seed, idx, attempt))
            M = inst.biadjacency()
            found, _ = bm.has_allones_submatrix(M, t)
            if not found:
                break
        else:
            continue
        edges = sl.count_dominance_edges(inst)
        bound = sl.f_s_bound(n, t, s)
        rows.append([s, t, n, edges, bound, int(edges <= bound)])
    _write_csv(
        out,
        "zarabound: K_{t,t}-free dominance instances vs the recursion bound",
        ["s", "t", "n", "edges", "f_s_bound", "within_bound"],
        rows,
    )


def experiment_gammagrowth(d: int, ns: list[int], out: str, seed: int) -> None:
    """gamma_2 upper-bound growth for point-box incidences; the fitted
    exponent of n is reported in the header (expected small, polylog)."""
    rows = []
    for idx, n in enumerate(ns):
        inst = sl.gen_points_boxes(n, d, split_seed(seed, idx))
        M = sl.biadjacency(inst)
        upper = g2.best_bounds(M).upper
        rows.append([n, M.count_ones, float(upper)])
    xs = np.log([r[0] for r in rows])
    ys = np.log([max(r[2], 1e-12) for r in rows])
    slope = float(np.polyfit(xs, ys, 1)[0]) if len(rows) > 1 else float("nan")
    _write_csv(
        out,
        f"gammagrowth: points x boxes d={d}; fitted exponent of n = {_fmt(slope)}",
        ["n", "ones", "gamma2_upper"],
        rows,
    )


def experiment_construction(gamma: float, ms: list[int], n_seeds: int, out: str, seed: int) -> None:
    rows = []
    for m in ms:
        for k in range(n_seeds):
            c = cons.gen_setsystem(gamma, m, split_seed(seed, m, k))
            max_int = 0
            fam = [set(s) for s in c.family]
            for i in range(len(fam)):
                for j in range(i + 1, len(fam)):
                    max_int = max(max_int, len(fam[i] & fam[j]))
            rows.append(
                [m, k, c.ell, len(c.family), len(c.a_half), float(c.cert.value),
                 max_int, c.m0.count_ones]
            )
    _write_csv(
        out,
        "construction: pruned set-system complement construction diagnostics",
        ["m", "seed_index", "ell", "family", "n", "cert_value", "max_intersection", "m0_ones"],
        rows,
    )


def cmd_experiment(args) -> int:
    name = args.name
    if name == "c4sandwich":
        experiment_c4sandwich(args.ps, args.out, args.seed)
    elif name == "zarabound":
        experiment_zarabound(args.s, args.t, args.ns, args.out, args.seed)
    elif name == "gammagrowth":
        experiment_gammagrowth(args.d, args.ns, args.out, args.seed)
    elif name == "construction":
        experiment_construction(args.gamma, args.ms, args.n_seeds, args.out, args.seed)
    else:  # pragma: no cover
        raise InputError(f"unknown experiment {name}")
    print(f"# experiment {name} -> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gamma2lab")
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a matrix or instance file")
    gen.add_argument(
        "family",
        choices=["pmodp", "preal", "setsystem", "boxes", "corners", "polh", "dominance", "random"],
    )
    gen.add_argument("--q", type=int, default=2)
    gen.add_argument("--p", type=int, default=5)
    gen.add_argument("--gamma", type=float, default=4.0)
    gen.add_argument("--m", type=int, default=8)
    gen.add_argument("--n", type=int, default=8)
    gen.add_argument("--d", type=int, default=2)
    gen.add_argument("--s", type=int, default=2)
    gen.add_argument("--density", type=float, default=0.5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default="out.bmx")
    gen.set_defaults(func=cmd_gen)

    an = sub.add_parser("analyze", help="analyze a .bmx matrix")
    an.add_argument("path")
    an.add_argument("--exact", action="store_true")
    an.add_argument("--disc", action="store_true")
    an.add_argument("--blocky", action="store_true")
    an.add_argument("--max-exact-dim", type=int, default=32)
    an.add_argument("--seed", type=int, default=0)
    an.add_argument("--format", choices=["json", "csv"], default="json")
    an.set_defaults(func=cmd_analyze)

    ex = sub.add_parser("experiment", help="run an experiment sweep to CSV")
    ex.add_argument("name", choices=["c4sandwich", "zarabound", "gammagrowth", "construction"])
    ex.add_argument("--ps", type=_int_list, default=[5, 7, 11, 13])
    ex.add_argument("--ns", type=_int_list, default=[64, 128, 256])
    ex.add_argument("--ms", type=_int_list, default=[40, 60])
    ex.add_argument("--s", type=int, default=2)
    ex.add_argument("--t", type=int, default=2)
    ex.add_argument("--d", type=int, default=2)
    ex.add_argument("--gamma", type=float, default=4.0)
    ex.add_argument("--n-seeds", type=int, default=3)
    ex.add_argument("--seed", type=int, default=0)
    ex.add_argument("--out", default="experiment.csv")
    ex.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
