#!/usr/bin/env python3
"""Adjudicate both closed-form solution variants against the Volterra oracle
across the forcing types and fractional orders, printing one summary per case.
"""

import argparse

from kstruve import KineticProblem, TimeGrid, adjudicate
from kstruve.specfun import TruncationPolicy


def run(args: argparse.Namespace) -> int:
    grid = TimeGrid(t_max=args.t_max, n_points=args.n_points)
    pol = TruncationPolicy(max_terms=args.max_terms)
    disagreements = 0
    for forcing in ("thm1", "thm2", "thm3"):
        for nu in args.nu:
            problem = KineticProblem(
                n0=1.0, d=1.0, nu=nu, mu=1.0, c=1.0, k=args.k, a=2.0, forcing=forcing
            )
            report = adjudicate(problem, grid, pol, tol=args.tol)
            print(f"{forcing} nu={nu:g} k={args.k:g}: {report.summary()}")
            if not report.agreeing:
                disagreements += 1
    return 4 if disagreements else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nu", type=float, nargs="+", default=[0.5, 0.9, 1.0])
    parser.add_argument("--k", type=float, default=1.0)
    parser.add_argument("--t-max", type=float, default=1.0)
    parser.add_argument("--n-points", type=int, default=512)
    parser.add_argument("--max-terms", type=int, default=100)
    parser.add_argument("--tol", type=float, default=1e-3)
    return parser


if __name__ == "__main__":
    raise SystemExit(run(build_parser().parse_args()))
