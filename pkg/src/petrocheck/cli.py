"""Command-line front end: reproducible experiments with JSON/CSV reports.

Subcommands: lemma-check, barenblatt-check, verify, classify, solve, sweep,
scale-check.  All runs are deterministic (fixed internal seeds, no wall-clock
inputs); reports carry schema "petrocheck/1", floats at 17 significant
digits, and a sha256 report hash computed over the canonical payload with
the timestamp excluded.  Exit codes: 0 pass, 1 usage/precondition error,
2 certificate failure, 3 solver failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time as _time

import numpy as np

from . import barriers as bar
from . import calculus as calc
from . import domains as dom
from . import solver as sol
from . import verify as ver
from .errors import DomainError, SolverError

SCHEMA = "petrocheck/1"
EXIT_PASS, EXIT_USAGE, EXIT_CERT_FAIL, EXIT_SOLVER_FAIL = 0, 1, 2, 3


def _emit(payload: dict, out_path=None) -> None:
    body = dict(payload)
    body["schema"] = SCHEMA
    body["report_hash"] = hashlib.sha256(ver.canonical_json(body).encode()).hexdigest()
    body["generated_at"] = _time.strftime("%Y-%m-%dT%H:%M:%SZ", _time.gmtime())
    text = ver.canonical_json(body)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _solver_config(args) -> sol.SolverConfig:
    return sol.SolverConfig(
        n_y=args.grid_y, n_t=args.grid_t, eps_min=args.eps_min,
        eps_reg=args.eps_reg, c_step=args.c_step,
    )


def cmd_lemma_check(args) -> int:
    """Closed-form vs oracle table for the radial-power p-Laplacian."""
    if args.p <= 1 or args.n < 1:
        print("usage error: need p > 1 and n >= 1", file=sys.stderr)
        return EXIT_USAGE
    rng = np.random.default_rng(20260809)
    rows = []
    worst = 0.0
    for _ in range(args.samples):
        C = float(rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0]))
        alpha = float(rng.uniform(0.6, 3.0))
        r = float(rng.uniform(0.3, 2.0))
        closed = float(calc.p_laplacian_radial_power(C, alpha, args.p, args.n, r))
        u = calc.SpaceTimeFunction(fn=lambda rr, tt, C=C, alpha=alpha: np.asarray(rr, dtype=float) ** alpha * C)
        oracle = calc.p_laplacian_radial_fd(u, args.p, args.n, r, -1.0, h=args.h)
        err = abs(closed - oracle) / (1.0 + abs(closed))
        worst = max(worst, err)
        rows.append((C, alpha, r, closed, oracle, err))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("C,alpha,r,closed,oracle,rel_err\n")
            for row in rows:
                fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
    ok = worst <= args.tol
    print(f"lemma-check: {args.samples} samples, worst rel err {worst:.3e}, "
          f"tol {args.tol:.1e}: {'PASS' if ok else 'FAIL'}")
    if not ok:
        bad = max(rows, key=lambda row: row[5])
        print(f"worst row: C={bad[0]:.6g} alpha={bad[1]:.6g} r={bad[2]:.6g} "
              f"closed={bad[3]:.6g} oracle={bad[4]:.6g}", file=sys.stderr)
    return EXIT_PASS if ok else EXIT_CERT_FAIL


def cmd_barenblatt_check(args) -> int:
    """FD residual of the self-similar source solution at interior points."""
    try:
        B = calc.barenblatt_function(args.p, args.n, args.C)
    except DomainError as err:
        print(f"precondition violated: {err}", file=sys.stderr)
        return EXIT_USAGE
    rng = np.random.default_rng(20260809)
    worst = 0.0
    for _ in range(args.points):
        t = float(rng.uniform(0.5, 2.0))
        if args.p > 2:
            rs = calc.barenblatt_support_radius(t, args.p, args.n, args.C)
            r = float(rng.uniform(0.01 * rs, 0.95 * rs))
        else:
            r = float(rng.uniform(0.05, 3.0))
        res = calc.residual(B, args.p, args.n, r, t, method="fd", h=args.h)
        worst = max(worst, abs(res))
    ok = worst <= args.tol
    print(f"barenblatt-check(p={args.p}, n={args.n}): worst |residual| {worst:.3e}, "
          f"tol {args.tol:.1e}: {'PASS' if ok else 'FAIL'}")
    return EXIT_PASS if ok else EXIT_CERT_FAIL


def cmd_verify(args) -> int:
    """Build a barrier and certify its defining inequalities on a grid."""
    try:
        if args.kind == "degenerate_family_member":
            profile = dom.make_profile("power", K=args.K, q=args.q, t0=args.t0)
            gauge = dom.envelope_gauge(profile, args.p, args.n)
            C0, det = bar.find_family_threshold(args.p, args.n, gauge)
            ladder = [bar.make_barrier(args.kind, p=args.p, n=args.n, q=args.q,
                                       K=args.K, C=C0 * 2 ** j, gauge=gauge)
                      for j in range(args.ladder + 1)]
            grid = ver.make_cert_grid(profile, n_t=args.grid_t, n_y=args.grid_y)
            rep = ver.check_barrier_family(ladder, profile, args.p, args.n,
                                           k_max=args.k_max, grid=grid)
            payload = {"command": "verify", "kind": args.kind,
                       "config": {"p": args.p, "n": args.n, "q": args.q,
                                  "K": args.K, "t0": args.t0,
                                  "grid_y": args.grid_y, "grid_t": args.grid_t,
                                  "ladder": args.ladder, "k_max": args.k_max},
                       "C0": C0, "threshold_details": det,
                       "certificate": rep.to_dict()}
        else:
            spec = bar.make_barrier(args.kind, p=args.p, n=args.n, q=args.q,
                                    K=args.K, t0=args.t0, C=args.C, beta=args.beta)
            profile = spec.reference_profile()
            grid = ver.make_cert_grid(profile, n_t=args.grid_t, n_y=args.grid_y)
            rep = ver.check_sign(spec.fn, profile, args.p, args.n, grid=grid)
            payload = {"command": "verify", "kind": args.kind,
                       "config": {"p": args.p, "n": args.n, "q": args.q,
                                  "K": args.K, "t0": args.t0, "C": args.C,
                                  "beta": args.beta, "grid_y": args.grid_y,
                                  "grid_t": args.grid_t},
                       "barrier": spec.to_json_dict(grid_hash=grid.hash()),
                       "certificate": rep.to_dict()}
    except DomainError as err:
        print(f"precondition violated: {err}", file=sys.stderr)
        return EXIT_USAGE
    _emit(payload, args.out)
    return EXIT_PASS if payload["certificate"]["pass"] else EXIT_CERT_FAIL


def cmd_classify(args) -> int:
    """Regularity verdict for the power cusp, optionally with a solver probe."""
    try:
        verdict = sol.classify(args.p, args.q, n=args.n, K=args.K,
                               with_probe=args.with_probe)
    except DomainError as err:
        print(f"precondition violated: {err}", file=sys.stderr)
        return EXIT_USAGE
    payload = {"command": "classify",
               "config": {"p": args.p, "q": args.q, "n": args.n, "K": args.K,
                          "with_probe": args.with_probe},
               "verdict": verdict.to_dict()}
    if "probe_warning" in verdict.meta:
        payload["warning"] = verdict.meta["probe_warning"]
    _emit(payload, args.out)
    return EXIT_PASS


def cmd_solve(args) -> int:
    """Run the Dirichlet solver on a power cusp and export the field."""
    try:
        profile = dom.make_profile("power", K=args.K, q=args.q, t0=args.t0)
        if args.data == "probe":
            f = sol.default_probe
        elif args.data.startswith("const:"):
            cval = float(args.data.split(":", 1)[1])
            f = lambda r, t: cval + 0.0 * np.asarray(r, dtype=float)
        else:
            print(f"usage error: unknown --data {args.data!r}", file=sys.stderr)
            return EXIT_USAGE
        cfg = _solver_config(args)
        field = sol.solve_dirichlet(profile, args.p, args.n, f, cfg)
    except DomainError as err:
        print(f"precondition violated: {err}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as err:
        print(f"solver failure: {err}", file=sys.stderr)
        return EXIT_SOLVER_FAIL
    if args.out:
        field.to_csv(args.out)
    ok, margins = field.check_max_principle()
    print(f"solve: {field.meta['n_steps']} steps, u(0, {field.t_nodes[-1]:.6g}) = "
          f"{field.values[-1, 0]:.10g}, max principle {'OK' if ok else 'VIOLATED'}")
    return EXIT_PASS if ok else EXIT_SOLVER_FAIL


def cmd_sweep(args) -> int:
    """Classify a (p, q) grid; deterministic cell order, partial failures kept."""
    try:
        p_list = [float(x) for x in args.p_list.split(",") if x.strip()]
        q_list = [float(x) for x in args.q_list.split(",") if x.strip()]
    except ValueError:
        print("usage error: lists must be comma-separated floats", file=sys.stderr)
        return EXIT_USAGE
    if not p_list or not q_list:
        print("usage error: empty p or q list", file=sys.stderr)
        return EXIT_USAGE
    cells = []
    failures = 0
    for p in p_list:
        for q in q_list:
            try:
                verdict = sol.classify(p, q, n=args.n, K=args.K,
                                       with_probe=args.with_probe)
                cells.append({"p": p, "q": q, "verdict": verdict.theorem_verdict,
                              "trend": verdict.numeric_trend})
            except (DomainError, SolverError) as err:
                failures += 1
                cells.append({"p": p, "q": q, "error": str(err)})
    payload = {"command": "sweep",
               "config": {"p_list": p_list, "q_list": q_list, "n": args.n,
                          "K": args.K, "with_probe": args.with_probe},
               "cells": cells, "failures": failures}
    _emit(payload, args.out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("p,q,verdict\n")
            for cell in cells:
                fh.write(f"{cell['p']:.17g},{cell['q']:.17g},"
                         f"{cell.get('verdict', 'ERROR')}\n")
    return EXIT_PASS if failures < len(cells) else EXIT_USAGE


def cmd_scale_check(args) -> int:
    """Dilation equivariance of the discrete solver."""
    if args.p == 2:
        print("precondition violated: p = 2 has no scaling invariance", file=sys.stderr)
        return EXIT_USAGE
    try:
        profile = dom.make_profile("power", K=args.K, q=args.q, t0=args.t0)
        cfg = _solver_config(args)
        rep = ver.check_scaling_equivariance(None, profile, args.p, args.a,
                                             cfg=cfg, n=args.n, tol=args.tol)
    except DomainError as err:
        print(f"precondition violated: {err}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as err:
        print(f"solver failure: {err}", file=sys.stderr)
        return EXIT_SOLVER_FAIL
    payload = {"command": "scale-check",
               "config": {"p": args.p, "n": args.n, "a": args.a, "q": args.q,
                          "K": args.K, "t0": args.t0, "grid_y": args.grid_y,
                          "grid_t": args.grid_t, "eps_min": args.eps_min,
                          "tol": args.tol},
               "certificate": rep.to_dict()}
    _emit(payload, args.out)
    return EXIT_PASS if rep.passed else EXIT_CERT_FAIL


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="petrocheck",
        description="Certify barrier constructions and probe tip regularity "
                    "for the p-parabolic equation on shrinking cusp domains.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(sp, n_default=2):
        sp.add_argument("--p", type=float, required=True)
        sp.add_argument("--n", type=int, default=n_default)
        sp.add_argument("--out", type=str, default=None)

    sp = sub.add_parser("lemma-check", help="closed form vs finite-difference oracle")
    common(sp)
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--h", type=float, default=1e-4)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.set_defaults(func=cmd_lemma_check)

    sp = sub.add_parser("barenblatt-check", help="residual of the source solution")
    common(sp)
    sp.add_argument("--C", type=float, default=1.0)
    sp.add_argument("--points", type=int, default=100)
    sp.add_argument("--h", type=float, default=1e-4)
    sp.add_argument("--tol", type=float, default=1e-5)
    sp.set_defaults(func=cmd_barenblatt_check)

    sp = sub.add_parser("verify", help="sign/family certificate for a barrier kind")
    sp.add_argument("--kind", type=str, required=True, choices=bar.BARRIER_KINDS)
    common(sp)
    sp.add_argument("--q", type=float, default=None)
    sp.add_argument("--K", type=float, default=1.0)
    sp.add_argument("--t0", type=float, default=-1.0)
    sp.add_argument("--C", type=float, default=None)
    sp.add_argument("--beta", type=float, default=None)
    sp.add_argument("--grid-y", type=int, default=128)
    sp.add_argument("--grid-t", type=int, default=128)
    sp.add_argument("--ladder", type=int, default=8)
    sp.add_argument("--k-max", type=int, default=4)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", help="regularity verdict for a power cusp")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--K", type=float, default=1.0)
    sp.add_argument("--with-probe", action="store_true")
    sp.add_argument("--out", type=str, default=None)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("solve", help="march the Dirichlet problem, export CSV")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--K", type=float, default=1.0)
    sp.add_argument("--t0", type=float, default=-1.0)
    sp.add_argument("--data", type=str, default="probe",
                    help="'probe' or 'const:<value>'")
    sp.add_argument("--grid-y", type=int, default=129)
    sp.add_argument("--grid-t", type=int, default=400)
    sp.add_argument("--eps-reg", type=float, default=1e-8)
    sp.add_argument("--eps-min", type=float, default=None)
    sp.add_argument("--c-step", type=float, default=0.5)
    sp.add_argument("--out", type=str, default=None)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("sweep", help="classify over a (p, q) grid")
    sp.add_argument("--p-list", type=str, required=True)
    sp.add_argument("--q-list", type=str, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--K", type=float, default=1.0)
    sp.add_argument("--with-probe", action="store_true")
    sp.add_argument("--out", type=str, default=None)
    sp.add_argument("--csv", type=str, default=None)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("scale-check", help="dilation equivariance of the solver")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--a", type=float, default=2.0)
    sp.add_argument("--q", type=float, default=0.5)
    sp.add_argument("--K", type=float, default=1.0)
    sp.add_argument("--t0", type=float, default=-1.0)
    sp.add_argument("--grid-y", type=int, default=65)
    sp.add_argument("--grid-t", type=int, default=200)
    sp.add_argument("--eps-reg", type=float, default=1e-8)
    sp.add_argument("--eps-min", type=float, default=1e-3)
    sp.add_argument("--c-step", type=float, default=0.5)
    sp.add_argument("--tol", type=float, default=1e-3)
    sp.add_argument("--out", type=str, default=None)
    sp.set_defaults(func=cmd_scale_check)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
