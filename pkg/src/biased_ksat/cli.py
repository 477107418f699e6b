"""Command line entry point: ``biased-ksat <subcommand> [flags]``.

Exit codes: 0 success, 1 runtime error, 2 usage error.  JSON outputs carry a
``schema`` field and the full configuration including the seed.
"""

import argparse
import sys
from dataclasses import asdict

from . import bounds, dimacs, harness, kk, liquid, russo
from .formula import BiasParams, InvalidParameters, sample_formula
from .solvers.brute import brute_force_sat
from .solvers.dpll import dpll_sat
from .solvers.spine import spine_set
from .solvers.twosat import two_sat_solve
from .solvers.ucp import ucp_run


def _bias(args) -> float:
    if args.b is not None and args.p is not None:
        raise InvalidParameters("give --p or --b, not both")
    if args.b is not None:
        return 0.5 - args.b
    return 0.5 if args.p is None else args.p


def _common(sp, *names):
    add = {
        "k": lambda: sp.add_argument("--k", type=int, default=3, help="clause width"),
        "p": lambda: (
            sp.add_argument("--p", type=float, help="probability a literal is negated (default 0.5)"),
            sp.add_argument("--b", type=float, help="bias b = 1/2 - p"),
        ),
        "n": lambda: sp.add_argument("--n", type=int, default=100, help="number of variables"),
        "m": lambda: sp.add_argument("--m", type=float, help="number of clauses (mean in poisson mode)"),
        "trials": lambda: sp.add_argument("--trials", type=int, default=100),
        "seed": lambda: sp.add_argument("--seed", type=int, default=0, help="base seed"),
        "out": lambda: sp.add_argument("--out", help="output path (default stdout)"),
        "format": lambda: sp.add_argument("--format", choices=("csv", "json"), default="json"),
        "solver": lambda: sp.add_argument("--solver", choices=harness.SOLVERS, default=None),
        "mode": lambda: sp.add_argument("--mode", choices=("discrete", "poisson"), default="discrete"),
        "in": lambda: sp.add_argument("--in", dest="infile", help="DIMACS input (instead of generating)"),
        "t": lambda: sp.add_argument("--t", type=float, default=4.0, help="clause density m/n"),
        "tol": lambda: sp.add_argument("--tol", type=float, default=0.02, help="bisection tolerance"),
    }
    for name in names:
        add[name]()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="biased-ksat", description="Biased random k-SAT toolkit.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("gen", help="sample a formula and write DIMACS")
    _common(sp, "k", "p", "n", "m", "seed", "out", "mode")

    sp = sub.add_parser("solve", help="decide a DIMACS formula; JSON result")
    _common(sp, "in", "k", "p", "n", "m", "seed", "out", "mode")
    sp.set_defaults(format="json")
    sp.add_argument("--solver", choices=("dpll", "two_sat", "brute"), default="dpll")

    sp = sub.add_parser("ucp", help="run UCP; csv = trajectory (j,S_0..S_k), json = summary")
    _common(sp, "in", "k", "p", "n", "m", "seed", "out", "format", "mode")

    sp = sub.add_parser("bounds", help="all analytic quantities at (k, p)")
    _common(sp, "k", "p", "out", "format")
    sp.add_argument("--K", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=10**4, help="size for the exact layer quantities")

    sp = sub.add_parser("trajectory", help="UCP census vs liquid-model closed form; csv t,i,empirical,closed_form")
    _common(sp, "k", "p", "n", "trials", "seed", "out", "format")
    sp.add_argument("--c", type=float, default=0.4, help="initial clause density")

    sp = sub.add_parser("threshold", help="bisection estimate of the Pr(sat)=1/2 density")
    _common(sp, "k", "p", "n", "trials", "seed", "out", "format", "solver", "mode", "tol")
    sp.add_argument("--lo", type=float)
    sp.add_argument("--hi", type=float)

    sp = sub.add_parser("spine", help="locked-TRUE fraction of spine variables")
    _common(sp, "k", "p", "n", "trials", "seed", "out", "format", "t")

    sp = sub.add_parser("kk", help="Kruskal-Katona cascade and shadow bound, or f-vector check")
    sp.add_argument("--N", type=int)
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--fvector", help="comma-separated f-vector, f[0] = empty face")
    _common(sp, "out", "format")

    sp = sub.add_parser("russo", help="Monte Carlo pivotal probabilities rho, rho+, rho-")
    _common(sp, "k", "p", "n", "trials", "seed", "out", "format", "t")
    sp.add_argument("--verify", type=int, default=1000)

    sp = sub.add_parser("parabola", help="alpha(1/2-b)/alpha(1/2) over a b grid")
    _common(sp, "k", "n", "trials", "seed", "out", "format", "solver", "mode", "tol")
    sp.add_argument("--b-grid", default="0,0.1,0.2", help="comma-separated b values")
    return ap


def _formula(args):
    if getattr(args, "infile", None):
        with open(args.infile, "rb") as fh:
            return dimacs.read(fh)
    if args.m is None:
        raise InvalidParameters("--m is required when no --in file is given")
    return sample_formula(args.n, args.k, BiasParams(_bias(args)), args.m, args.mode, args.seed)


def _emit(args, payload, rows=None):
    fmt = getattr(args, "format", "json")
    text = harness.write_output(rows if (fmt == "csv" and rows is not None) else payload, None, fmt)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(args) -> int:
    cmd = args.cmd
    if cmd == "gen":
        f = _formula(args)
        data = dimacs.dumps(f)
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.write(data.decode())
        return 0

    if cmd == "solve":
        f = _formula(args)
        if args.solver == "two_sat":
            a = two_sat_solve(f)
        elif args.solver == "brute":
            counts = brute_force_sat(f)
            _emit(args, {"schema": "biased-ksat/solve/1", "sat": counts.satisfiable,
                         "Z": counts.Z.tolist(), "M": counts.M.tolist(), "n": f.n, "m": f.m})
            return 0
        else:
            a = dpll_sat(f)
        payload = {"schema": "biased-ksat/solve/1", "sat": a is not None, "n": f.n, "m": f.m,
                   "seed": f.seed, "solver": args.solver}
        if a is not None:
            payload["assignment"] = [int(x) for x in a]
            if f.n <= 60:
                sp = spine_set(f)
                payload["spine"] = {"plus": sorted(sp.s_plus), "minus": sorted(sp.s_minus)}
        _emit(args, payload)
        return 0

    if cmd == "ucp":
        f = _formula(args)
        out = ucp_run(f, f.bias, args.seed)
        if args.format == "csv":
            text = out.to_csv()
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        _emit(args, {"schema": "biased-ksat/ucp/1", "success": out.success, "first_failure": out.first_failure,
                     "false_count": int((out.assignment == -1).sum()), "n": f.n, "m": f.m, "seed": args.seed,
                     "p": f.bias.p, "k": f.k})
        return 0

    if cmd == "bounds":
        rep = bounds.closed_form_bounds(args.k, _bias(args), K=args.K, n=args.n)
        d = rep.to_dict()
        d["schema"] = "biased-ksat/bounds/1"
        _emit(args, d, [rep.to_dict()])
        return 0

    if cmd == "trajectory":
        tr = liquid.empirical_trajectory(args.n, args.k, _bias(args), args.c, args.trials, args.seed)
        rows = [dict(zip(("t", "i", "empirical", "closed_form"), r)) for r in tr.rows()]
        _emit(args, {"schema": "biased-ksat/trajectory/1", "n": args.n, "k": args.k, "p": _bias(args),
                     "c": args.c, "runs": args.trials, "seed": args.seed, "sup_error": tr.sup_error(),
                     "rows": rows}, rows)
        return 0

    if cmd == "threshold":
        solver = args.solver or ("two_sat" if args.k == 2 else "dpll")
        bracket = (args.lo, args.hi) if args.lo is not None and args.hi is not None else None
        cfg = harness.ExperimentConfig(args.k, _bias(args), args.n, args.trials, solver, args.mode,
                                       args.seed, args.out, args.tol, bracket)
        est = harness.threshold_bisect(cfg)
        _emit(args, est.to_dict(), [asdict(r) for r in est.table])
        return 0

    if cmd == "spine":
        cfg = harness.ExperimentConfig(args.k, _bias(args), args.n, args.trials, "dpll", "poisson",
                                       args.seed, args.out, t=args.t)
        rep = harness.spine_experiment(cfg)
        d = rep.to_dict()
        _emit(args, d, [{k: v for k, v in d.items() if k not in ("histogram", "config")}])
        return 0

    if cmd == "kk":
        if args.fvector:
            f = [int(x) for x in args.fvector.split(",")]
            payload = {"schema": "biased-ksat/kk/1", "fvector": f, "valid": kk.fvector_valid(f)}
        elif args.N is not None:
            c = kk.cascade_decompose(args.N, args.r)
            payload = {"schema": "biased-ksat/kk/1", "N": args.N, "r": args.r, "cascade": list(c.a),
                       "shadow_bound": kk.shadow_bound(c)}
        else:
            raise InvalidParameters("kk needs --N or --fvector")
        _emit(args, payload, [{k: v for k, v in payload.items() if k != "schema"}])
        return 0

    if cmd == "russo":
        est = russo.pivotal_rho_estimate(args.n, args.k, _bias(args), args.t, args.trials, args.seed, args.verify)
        d = est.to_dict()
        _emit(args, d, [{k: v for k, v in d.items() if k != "ci"}])
        return 0

    if cmd == "parabola":
        grid = [float(x) for x in args.b_grid.split(",") if x.strip()]
        rows = harness.parabola_experiment(args.k, grid, args.n, args.trials, args.seed, args.tol,
                                           args.solver, args.mode)
        rd = [asdict(r) for r in rows]
        _emit(args, {"schema": "biased-ksat/parabola/1", "k": args.k, "n": args.n, "trials": args.trials,
                     "seed": args.seed, "rows": rd}, rd)
        return 0
    return 2


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 2
    try:
        return run(args)
    except (InvalidParameters, ValueError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
