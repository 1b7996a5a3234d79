"""Command-line entry point: ``qpt-entanglement {sweep,table1,gl,oracle}``.

Exit codes: 0 success, 1 usage or I/O error, 2 numerical failure. Failure
details go to stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import runner
from ._errors import NumericalError
from .quadrature import QuadratureSpec


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _fail(1, "usage", message)


def _fail(code: int, kind: str, message: str):
    print(json.dumps({"error": kind, "detail": message}), file=sys.stderr)
    sys.exit(code)


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _refine(text: str):
    if text.lower() == "none":
        return None
    vals = _floats(text)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError("expected CENTER,HALF_WIDTH,STEP or 'none'")
    return tuple(vals)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qpt-entanglement",
                description="Multipartite entanglement of the transverse-field Ising chain.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
        sp.add_argument("--quad-tol", type=float, default=1e-10)
        sp.add_argument("--quad-max-nodes", type=int, default=4096)
        sp.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: all cores)")

    s = sub.add_parser("sweep", help="E_G^(1), S_V, G(2,l), E_G^(2) versus coupling")
    common(s)
    s.add_argument("--lambda-min", type=float, default=0.0)
    s.add_argument("--lambda-max", type=float, default=2.0)
    s.add_argument("--steps", type=int, default=401)
    s.add_argument("--refine", type=_refine, default=runner.DEFAULT_REFINE,
                   help="CENTER,HALF_WIDTH,STEP fine window, or 'none' (default 1,0.1,0.001)")
    s.add_argument("--lmax", type=int, default=15)

    t = sub.add_parser("table1", help="paradigm states: closed form vs brute force")
    common(t)
    t.add_argument("--n", type=_ints, default=list(runner.DEFAULT_TABLE1_N))

    g = sub.add_parser("gl", help="G(2,l) versus separation at one coupling")
    common(g)
    g.add_argument("--lambda", dest="lam", type=float, default=1.0)
    g.add_argument("--lmax", type=int, default=50)

    o = sub.add_parser("oracle", help="exact diagonalization vs analytic correlators")
    common(o)
    o.add_argument("--n", type=_ints, default=list(runner.DEFAULT_ORACLE_N))
    o.add_argument("--lambda", dest="lam", type=_floats,
                   default=list(runner.DEFAULT_ORACLE_LAMBDA))
    o.add_argument("--lmax", type=int, default=3)
    o.add_argument("--allow-above-critical", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        quad = QuadratureSpec(max_nodes=args.quad_max_nodes, rel_tol=args.quad_tol)
        if args.command == "sweep":
            cfg = runner.SweepConfig(
                lambda_min=args.lambda_min, lambda_max=args.lambda_max, steps=args.steps,
                refine=args.refine, l_max=args.lmax, quad=quad, output_path=args.out,
                threads=args.threads)
            runner.run_sweep(cfg)
        elif args.command == "table1":
            runner.run_table1(args.n, out=args.out)
        elif args.command == "gl":
            if args.lmax < 1:
                raise ValueError("--lmax must be >= 1")
            runner.run_gl_profile(args.lam, range(1, args.lmax + 1), out=args.out, quad=quad)
        else:
            runner.run_oracle_compare(args.n, args.lam, args.lmax, out=args.out,
                                      allow_above_critical=args.allow_above_critical,
                                      quad=quad, threads=args.threads)
    except NumericalError as exc:
        _fail(2, type(exc).__name__, str(exc))
    except (ValueError, OSError) as exc:
        _fail(1, type(exc).__name__, str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
