"""Command line front end; a thin text renderer over the service layer."""
from __future__ import annotations

import argparse
import sys

from .api import (
    bound_table,
    exact_report,
    simulate_report,
    subspace_report,
    verify_report,
)


def _fmt(v: float) -> str:
    # fixed display precision: six significant digits, '.' separator
    return f"{v:.6g}"


def _pairs(pairs) -> str:
    if not pairs:
        return "(none)"
    return " ".join(f"({i},{j})" for i, j in pairs)


def cmd_bound(args, parser) -> int:
    try:
        table = bound_table(args.m_max)
    except ValueError as exc:
        parser.error(str(exc))
    for row in table.rows:
        flag = "ok" if row.envelope_ok else "out"
        print(f"{row.m}, {row.bound}, {_fmt(row.decimal)}, {flag}")
    return 0


def cmd_exact(args, parser) -> int:
    try:
        rep = exact_report(args.m)
    except ValueError as exc:
        parser.error(str(exc))
    if rep.tight:
        print(f"{rep.value} TIGHT")
        return 0
    print(f"{rep.value} NOT TIGHT (bound {rep.bound})")
    return 1


def cmd_simulate(args, parser) -> int:
    try:
        rep = simulate_report(args.m, args.rounds, args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    print("m,rounds,seed,joint_wins,bob_wins,charlie_wins,joint_rate,bob_rate,charlie_rate")
    print(
        f"{rep.m},{rep.rounds},{rep.seed},{rep.joint_wins},{rep.bob_wins},"
        f"{rep.charlie_wins},{_fmt(rep.joint_rate)},{_fmt(rep.bob_rate)},"
        f"{_fmt(rep.charlie_rate)}"
    )
    return 0


def cmd_subspace(args, parser) -> int:
    try:
        rep = subspace_report(args.matrix)
    except ValueError as exc:
        parser.error(str(exc))
    print(f"rref: {rep.rref}")
    print(f"pivots I: {' '.join(str(i) for i in rep.pivots)}")
    print(f"cross pairs J: {_pairs(rep.cross_pairs)}")
    print(f"x representatives: {' '.join(f'e{i}' for i in rep.x_rep_coords)}")
    print(f"z representatives: {' '.join(f'e{i}' for i in rep.z_rep_coords)}")
    print("encoder:")
    print(rep.encoder)
    print(f"bell pairs: {rep.bell_pairs}")
    print(f"residual pairs: {_pairs(rep.residual_pairs)}")
    print(f"h pairing: {_pairs(rep.h_pairs)}")
    print(f"win probability: {rep.win_probability} ({_fmt(rep.win_probability_decimal)})")
    return 0


def cmd_verify(args, parser) -> int:
    try:
        rep = verify_report(args.m)
    except ValueError as exc:
        parser.error(str(exc))
    for check in rep.checks:
        if check.passed:
            print(f"{check.name}: PASS")
        else:
            print(f"{check.name}: FAIL ({check.detail})")
    passed = sum(c.passed for c in rep.checks)
    print(f"{passed}/{len(rep.checks)} checks passed")
    return 0 if rep.all_passed else 1


def cmd_serve(args, parser) -> int:
    import uvicorn

    uvicorn.run("cosetgame.api:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosetgame",
        description="Coset guessing game: exact bounds, simulation, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="q-binomial upper bound table")
    p.add_argument("--m-max", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("exact", help="exact game value and tightness")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("simulate", help="seeded Monte Carlo run, CSV output")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("subspace", help="analyze one subspace from its matrix")
    p.add_argument("--matrix", type=str, required=True)
    p.set_defaults(func=cmd_subspace)

    p = sub.add_parser("verify", help="run the invariant checks at scale m")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", type=str, default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
