"""
Command line interface.

Exit status is 0 on success, 2 for usage and input errors (bad arguments,
unreadable or malformed files) and 1 when the computation itself fails
(degenerate data, dimension mismatch).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import bench as _bench
from .approx import DEFAULT_K, adcov
from .dataset import CSVFormatError, Dataset, load_csv
from .eqdist import eqdist_test
from .estimators import EnergyMatrix, dcor, dcov, dvar, edist, edist_matrix, pdcor


class _InputError(Exception):
    pass


def _fmt(v: float) -> str:
    return format(v, ".7g")


def _load(paths: Sequence[str], header: bool) -> list[Dataset]:
    out = []
    for path in paths:
        try:
            out.append(load_csv(path, has_header=header))
        except OSError as exc:
            raise _InputError(f"cannot read {path}: {exc.strerror or exc}") from None
        except CSVFormatError as exc:
            raise _InputError(f"{path}: {exc}") from None
    return out


def _matrix_text(m: np.ndarray) -> str:
    cells = [[_fmt(v) for v in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def _emit(args, value) -> None:
    if args.json:
        if isinstance(value, EnergyMatrix):
            payload = {"edist": value.values.tolist()}
        elif isinstance(value, dict):
            payload = value
        else:
            payload = {args.command: value}
        print(json.dumps(payload))
        return
    if isinstance(value, EnergyMatrix):
        print(_matrix_text(value.values))
    elif isinstance(value, dict):
        width = max(len(k) for k in value)
        for k, v in value.items():
            print(f"{k.ljust(width)}  {_fmt(v) if isinstance(v, float) else v}")
    else:
        print(_fmt(value))


def _cmd_edist(args):
    ds = _load(args.files, args.header)
    if len(ds) == 2:
        return edist(ds[0], ds[1])
    return edist_matrix(ds)


def _cmd_dvar(args):
    (x,) = _load([args.x], args.header)
    return dvar(x, args.bc)


def _cmd_dcov(args):
    x, y = _load([args.x, args.y], args.header)
    return dcov(x, y, args.bc)


def _cmd_dcor(args):
    x, y = _load([args.x, args.y], args.header)
    return dcor(x, y, args.bc).as_dict()


def _cmd_pdcor(args):
    x, y, z = _load([args.x, args.y, args.z], args.header)
    return pdcor(x, y, z)


def _cmd_eqdist(args):
    x, y = _load([args.x, args.y], args.header)
    res = eqdist_test(x, y, args.perms, args.seed)
    if args.json:
        return {
            "statistic": res.statistic,
            "permutations": res.permutations,
            "exceed_count": res.exceed_count,
            "p_value": res.p_value,
        }
    return res.p_value


def _cmd_adcov(args):
    x, y = _load([args.x, args.y], args.header)
    return adcov(x, y, args.k, args.seed).estimate


def _cmd_bench(args):
    grid = [(n, p) for p in args.p for n in args.n]
    records = list(_bench.run_bench(grid, args.ops, args.replicates, args.seed))
    fits = _bench.fit_slopes(records)
    if args.records:
        with open(args.records, "w") as fh:
            _bench.write_records(records, fh)
    else:
        _bench.write_records(records, sys.stdout)
        print()
    if args.slopes:
        with open(args.slopes, "w") as fh:
            _bench.write_slopes(fits, fh)
    else:
        _bench.write_slopes(fits, sys.stdout)
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="estat", description="Energy statistics on CSV data.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--header", action="store_true", help="skip the first CSV line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("edist", parents=[common], help="energy distance (matrix for 3+ files)")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=_cmd_edist)

    p = sub.add_parser("dvar", parents=[common], help="distance variance")
    p.add_argument("x")
    p.add_argument("--bc", action="store_true", help="bias-corrected")
    p.set_defaults(func=_cmd_dvar)

    for name, func, helptext in (
        ("dcov", _cmd_dcov, "distance covariance"),
        ("dcor", _cmd_dcor, "distance correlation"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("x")
        p.add_argument("y")
        p.add_argument("--bc", action="store_true", help="bias-corrected")
        p.set_defaults(func=func)

    p = sub.add_parser("pdcor", parents=[common], help="partial distance correlation")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("z")
    p.set_defaults(func=_cmd_pdcor)

    p = sub.add_parser("eqdist", parents=[common], help="energy test of equal distributions")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--perms", type=int, default=999)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_eqdist)

    p = sub.add_parser("adcov", parents=[common], help="approximate distance covariance")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_adcov)

    p = sub.add_parser("bench", help="timing grid and log-log slope fits")
    p.add_argument("--n", type=int, nargs="+", default=[1000, 2000, 4000, 8000])
    p.add_argument("--p", type=int, nargs="+", default=[2, 5])
    p.add_argument("--ops", nargs="+", default=["dcor", "edist"], choices=sorted(_bench.OPS))
    p.add_argument("--replicates", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--records", help="write records TSV here instead of stdout")
    p.add_argument("--slopes", help="write slope TSV here instead of stdout")
    p.set_defaults(func=_cmd_bench, json=False)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        value = args.func(args)
    except _InputError as exc:
        print(f"estat {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"estat {args.command}: {exc}", file=sys.stderr)
        return 1
    if value is not None:
        _emit(args, value)
    return 0


if __name__ == "__main__":
    sys.exit(main())
