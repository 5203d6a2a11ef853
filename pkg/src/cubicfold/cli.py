"""Command line interface: ``python -m cubicfold <command> [flags]``.

Exit codes: 0 when every verification passes, 1 on a verification failure,
2 on configuration or parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import hassett, search
from .arith import DEFAULT_Q
from .imageideal import DEFAULT_D
from .pipeline import (
    ConfigError,
    Options,
    RetriesExhausted,
    WrongVariableCount,
    emit_report,
    ingest_ideal,
    verify_all,
    verify_ingested,
    verify_row,
)
from .poly import NonHomogeneous, ParseError
from .tables import UnknownRow


def _common(p: argparse.ArgumentParser):
    p.add_argument("--q", type=int, default=DEFAULT_Q, help="prime field size (> 1000)")
    p.add_argument("--seed", type=int, default=0, help="base seed")
    p.add_argument("--max-gen-degree", type=int, default=DEFAULT_D, help="generator search bound D")
    p.add_argument("--syzygy-bound", type=int, default=None, help="syzygy bound E (default: max generator degree + 3)")
    p.add_argument("--check-smoothness", choices=("off", "probabilistic", "jacobian"), default="probabilistic")
    p.add_argument("--emit", choices=("json", "csv", "md"), default="md")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--timings", action="store_true", help="include timings in json/csv output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubicfold", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify one table row")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--row", type=int, default=None, help="table index when (d, p) is ambiguous")
    _common(p)

    p = sub.add_parser("verify-all", help="verify every table row")
    _common(p)

    p = sub.add_parser("ingest", help="verify a surface given by an ideal file")
    p.add_argument("path")
    _common(p)

    p = sub.add_parser("search", help="enumerate polarization shapes for a discriminant")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a-max", type=int, default=search.A_MAX)
    p.add_argument("--p-max", type=int, default=search.P_MAX)
    p.add_argument("--relaxed", action="store_true", help="drop chi(H)=6 and allow multiplicity 4")

    p = sub.add_parser("classify", help="arithmetic facts about C_d")
    p.add_argument("--d", type=int, required=True)
    return parser


def _options(args) -> Options:
    return Options(
        q=args.q,
        max_gen_degree=args.max_gen_degree,
        syzygy_bound=args.syzygy_bound,
        smoothness=args.check_smoothness,
    ).validate()


def _print(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command in ("verify", "verify-all", "ingest"):
            opts = _options(args)
            if args.command == "verify":
                reports = [verify_row(args.d, args.p, args.row, args.seed, opts)]
            elif args.command == "verify-all":
                reports = verify_all(args.seed, opts)
            else:
                ideal = ingest_ideal(args.path)
                if ideal.q != opts.q and args.q == DEFAULT_Q:
                    opts = Options(**{**opts.__dict__, "q": ideal.q}).validate()
                reports = [verify_ingested(ideal, opts)]
            _print(emit_report(reports, args.emit, args.out, args.timings), args.out)
            return 0 if all(r.passed for r in reports) else 1
        if args.command == "search":
            cands = search.enumerate(args.d, args.a_max, args.p_max, args.relaxed)
            rows = [
                {"a": c.a, "i": c.i, "j": c.j, "k": c.k, "l": c.l, "p": c.p, "H2": c.H2, "HK": c.HK,
                 "S2": c.S2, "d": c.d, "status": "table row" if c.verified else "unverified"}
                for c in cands
            ]
            sys.stdout.write(json.dumps(rows, indent=2) + "\n")
            return 0
        if args.command == "classify":
            d = args.d
            out = {"d": d, "admissible": hassett.admissible(d)}
            if out["admissible"]:
                st = hassett.kodaira_status(d)
                out.update(
                    associated_k3=hassett.has_associated_k3(d),
                    kodaira=st.status.value,
                    provenance=list(st.provenance),
                )
            sys.stdout.write(json.dumps(out, indent=2) + "\n")
            return 0
    except (ConfigError, ParseError, NonHomogeneous, WrongVariableCount, UnknownRow, hassett.NotAdmissible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RetriesExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
