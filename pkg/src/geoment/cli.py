"""Command-line interface: ``geoment {gme,hierarchy,sweep,search,bench,dump}``.

Exit codes: 0 success, 1 benchmark failure, 2 malformed input, 3 zero state.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import bench
from .errors import GmeError, ZeroTensor
from .hierarchy import hierarchy_report
from .io import digest, dump_state, load_state, state_to_dict
from .optimizer import OptimizerConfig, best_rank_one
from .search import SearchConfig, SweepSpec, exhaustive_search, mc_search, parse_grid, sweep
from .states import DEFAULT_AMPLITUDE_CAP, Family, StateFamily
from .tensor import normalize

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ZERO = 0, 1, 2, 3


@dataclass
class RunReport:
    command: list[str]
    config: dict
    results: object
    input_digest: str | None = None
    wall_time: float = 0.0
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


class InputError(Exception):
    pass


def _add_optimizer_flags(p: argparse.ArgumentParser, restarts: int = 20) -> None:
    g = p.add_argument_group("optimizer")
    g.add_argument("--restarts", type=int, default=restarts)
    g.add_argument("--max-iter", type=int, default=500)
    g.add_argument("--tol", type=float, default=1e-12)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--workers", type=int, default=1)


def _add_state_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--file", help="JSON state file")
    src.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                   help="family parameter; repeatable, angles in radians")
    p.add_argument("--no-normalize", action="store_true",
                   help="use file amplitudes as given (must already have unit norm)")


def _add_report_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--report", help="also write the full JSON run report here")


def _optimizer_config(args) -> OptimizerConfig:
    return OptimizerConfig(restarts=args.restarts, max_iterations=args.max_iter,
                           tolerance=args.tol, seed=args.seed, workers=args.workers)


def _parse_params(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items:
        if "=" not in item:
            raise InputError(f"--param expects NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _family(args) -> StateFamily:
    return StateFamily(args.family, _parse_params(args.param))


def _load(args):
    if args.file:
        if args.param:
            raise InputError("--param only applies with --family")
        try:
            return load_state(args.file, normalize_state=not args.no_normalize)
        except OSError as exc:
            raise InputError(str(exc)) from exc
    T = _family(args).build()
    return T if args.no_normalize else normalize(T)


def _source_echo(args) -> dict:
    if getattr(args, "file", None):
        return {"file": args.file, "normalize": not args.no_normalize}
    return {"family": args.family, "params": _parse_params(args.param)}


def _write_csv(header, rows) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _f(x: float) -> str:
    return f"{x:.6f}"


def cmd_gme(args) -> RunReport:
    T = _load(args)
    cfg = _optimizer_config(args)
    r = best_rank_one(T, cfg)
    report = RunReport(args.argv,
                       {"source": _source_echo(args), "optimizer": asdict(cfg)},
                       {"lambda": r.overlap, "E": r.entanglement, "dims": list(T.dims)},
                       input_digest=digest(T), diagnostics=r.as_dict())
    if args.output == "json":
        return report
    if args.output == "csv":
        _write_csv(["dims", "lambda", "E"], [["x".join(map(str, T.dims)), _f(r.overlap),
                                              _f(r.entanglement)]])
    else:
        print(f"lambda = {r.overlap:.6f}")
        print(f"E      = {r.entanglement:.6f}")
        for k, f in enumerate(r.best_state.factors):
            print(f"factor[{k}] = " + " ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in f))
        if not all(r.converged):
            print(f"note: {r.converged.count(False)} restart(s) hit --max-iter", file=sys.stderr)
    return report


def cmd_hierarchy(args) -> RunReport:
    T = _load(args)
    cfg = _optimizer_config(args)
    rep = hierarchy_report(T, cfg, group_by_signature=args.by_signature,
                           min_blocks=args.min_blocks)
    rows = [[r.label, "x".join(map(str, r.dims)), _f(r.overlap), _f(r.entanglement)]
            for r in rep.rows]
    report = RunReport(args.argv, {"source": _source_echo(args), "optimizer": asdict(cfg),
                                   "by_signature": args.by_signature},
                       [dict(zip(["partition", "dims", "lambda", "E"], row)) for row in rows],
                       input_digest=digest(T))
    if args.output != "json":
        _write_csv(["partition", "dims", "lambda", "E"], rows)
    return report


def cmd_sweep(args) -> RunReport:
    name, grid = parse_grid(args.param_grid)
    spec = SweepSpec(_family(args), name, grid)
    cfg = _optimizer_config(args)
    out = sweep(spec, cfg)
    rows = [[_f(r.value), _f(r.overlap), _f(r.entanglement)] for r in out]
    report = RunReport(args.argv, {"family": args.family, "params": _parse_params(args.param),
                                   "grid": args.param_grid, "optimizer": asdict(cfg)},
                       [{"param": r.value, "lambda": r.overlap, "E": r.entanglement} for r in out])
    if args.output != "json":
        _write_csv([name, "lambda", "E"], rows)
    return report


def cmd_search(args) -> RunReport:
    opt = _optimizer_config(args)
    if args.exhaustive:
        hits = exhaustive_search(args.qubits, args.ones, opt, cap=args.cap)[:args.keep_top]
        conf = {"exhaustive": True, "cap": args.cap}
    else:
        scfg = SearchConfig(args.qubits, args.ones, args.samples, seed=args.seed, optimizer=opt,
                            keep_top=args.keep_top, confirm_restarts=args.confirm_restarts,
                            workers=args.workers)
        hits = mc_search(scfg)
        conf = {"samples": args.samples, "keep_top": args.keep_top,
                "confirm_restarts": args.confirm_restarts}
    report = RunReport(args.argv, {"qubits": args.qubits, "ones": args.ones, "seed": args.seed,
                                   "optimizer": asdict(opt), **conf},
                       [h.as_dict() for h in hits])
    if args.output != "json":
        for h in hits:
            print(json.dumps(h.as_dict()))
    return report


def cmd_bench(args) -> RunReport:
    cfg = _optimizer_config(args)
    kwargs = {"large": args.large, "cap": args.cap} if args.selector == "table2" else {}
    rows = bench.run(args.selector, cfg, **kwargs)
    header, lines = bench.to_csv_rows(rows)
    report = RunReport(args.argv, {"selector": args.selector, "optimizer": asdict(cfg),
                                   "references_version": bench.references()["version"], **kwargs},
                       [dict(zip(header, line)) for line in lines])
    if args.output != "json":
        _write_csv(header, lines)
    report.diagnostics["failed"] = sum(not r.passed for r in rows)
    return report


def cmd_dump(args) -> RunReport:
    T = _load(args)
    if args.out:
        dump_state(T, args.out)
    else:
        print(json.dumps(state_to_dict(T)))
    return RunReport(args.argv, {"source": _source_echo(args)}, {"dims": list(T.dims)},
                     input_digest=digest(T))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geoment", description="Geometric measure of entanglement of pure multipartite states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gme", help="entanglement of one state")
    _add_state_flags(p)
    _add_optimizer_flags(p)
    p.add_argument("--output", choices=["text", "csv", "json"], default="text")
    _add_report_flag(p)
    p.set_defaults(func=cmd_gme)

    p = sub.add_parser("hierarchy", help="entanglement for every partition of the parties")
    _add_state_flags(p)
    _add_optimizer_flags(p)
    p.add_argument("--by-signature", action="store_true",
                   help="one row per block-size signature (largest overlap)")
    p.add_argument("--min-blocks", type=int, default=2)
    p.add_argument("--output", choices=["csv", "json"], default="csv")
    _add_report_flag(p)
    p.set_defaults(func=cmd_hierarchy)

    p = sub.add_parser("sweep", help="entanglement along one parameter of a family")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--param-grid", required=True, metavar="NAME=START:STOP:COUNT")
    _add_optimizer_flags(p)
    p.add_argument("--output", choices=["csv", "json"], default="csv")
    _add_report_flag(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("search", help="Monte Carlo search over equal-weight supports")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--ones", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--keep-top", type=int, default=10)
    p.add_argument("--confirm-restarts", type=int, default=30)
    p.add_argument("--exhaustive", action="store_true", help="enumerate every support instead")
    p.add_argument("--cap", type=int, default=100_000, help="support budget for --exhaustive")
    _add_optimizer_flags(p, restarts=8)
    p.add_argument("--output", choices=["jsonl", "json"], default="jsonl")
    _add_report_flag(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bench", help="regenerate a table or figure check")
    p.add_argument("selector", choices=bench.SELECTORS)
    p.add_argument("--large", action="store_true", help="table2: include the optional large-d rows")
    p.add_argument("--cap", type=int, default=DEFAULT_AMPLITUDE_CAP,
                   help="table2: amplitude cap for --large rows")
    _add_optimizer_flags(p)
    p.add_argument("--output", choices=["csv", "json"], default="csv")
    _add_report_flag(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dump", help="write a state to the JSON state-file format")
    _add_state_flags(p)
    p.add_argument("--out", help="output path (stdout if omitted)")
    _add_report_flag(p)
    p.set_defaults(func=cmd_dump, output=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    t0 = time.perf_counter()
    try:
        report = args.func(args)
    except ZeroTensor as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO
    except (GmeError, InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report.wall_time = time.perf_counter() - t0
    if args.output == "json":
        print(report.to_json())
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json())
    if report.diagnostics.get("failed"):
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
