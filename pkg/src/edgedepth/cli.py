"""``edgedepth`` command line: depth reports, formula tables and the verification suites.

Exit codes: 0 all pass, 2 mathematical mismatch, 3 input error, 4 a cap was
hit and nothing mismatched.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .cache import ReportCache, cached_depth
from .depth import DEFAULT_MAX_GENS, DEFAULT_MAX_LATTICE, SizeLimitExceeded
from .graphs import CASES, GraphError, build_cycle, build_path, edge_ideal, graph_from_json
from .monomials import power
from . import suites

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_INPUT = 3
EXIT_CAP = 4

ENV_PREFIX = "EDGEDEPTH_"


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    field: str = "gf2"
    max_gens: int = DEFAULT_MAX_GENS
    max_lattice: int = DEFAULT_MAX_LATTICE
    cache_dir: str | None = None
    format: str = "csv"
    seed: int = suites.DEFAULT_SEED
    workers: int = 1

    def __post_init__(self):
        if self.field not in ("gf2", "rational", "both"):
            raise InputError(f"unknown field {self.field!r}")
        if self.format not in ("csv", "json"):
            raise InputError(f"unknown format {self.format!r}")
        if self.max_gens < 1 or self.max_lattice < 1 or self.workers < 1:
            raise InputError("caps and worker count must be positive")

    @property
    def fields(self) -> tuple:
        return ("gf2", "rational") if self.field == "both" else (self.field,)

    @property
    def caps(self) -> dict:
        return {"max_gens": self.max_gens, "max_lattice": self.max_lattice}

    def cache(self) -> ReportCache | None:
        return ReportCache(self.cache_dir) if self.cache_dir else None


_OPTIONS = {  # name -> (type, default)
    "field": (str, "gf2"),
    "max_gens": (int, DEFAULT_MAX_GENS),
    "max_lattice": (int, DEFAULT_MAX_LATTICE),
    "cache_dir": (str, None),
    "format": (str, "csv"),
    "seed": (int, suites.DEFAULT_SEED),
    "workers": (int, 1),
}


def config_from(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    """Flags beat ``EDGEDEPTH_*`` environment variables, which beat defaults."""
    values = {}
    for name, (typ, default) in _OPTIONS.items():
        v = getattr(args, name, None)
        if v is None:
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is not None:
                try:
                    v = typ(raw)
                except ValueError:
                    raise InputError(f"bad {ENV_PREFIX}{name.upper()}={raw!r}") from None
        values[name] = default if v is None else v
    return RunConfig(**values)


def parse_range(text: str) -> list:
    """``"4-7"``, ``"1,3,5"`` or ``"2"``."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = (int(x) for x in part.split("-", 1))
                out.extend(range(lo, hi + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise InputError(f"bad range {text!r}") from None
    if not out:
        raise InputError(f"empty range {text!r}")
    return out


def load_graph(spec: str):
    """A JSON object, a path to one, or shorthand ``cycle:2,1,2`` / ``path:1,1``."""
    try:
        if spec.startswith(("cycle:", "path:")):
            kind, ws = spec.split(":", 1)
            weights = [int(x) for x in ws.split(",")]
            if kind == "cycle":
                return build_cycle(len(weights), weights)
            return build_path(len(weights) + 1, weights)
        if not spec.lstrip().startswith("{"):
            spec = Path(spec).read_text()
        return graph_from_json(spec)
    except (GraphError, ValueError, OSError) as exc:
        raise InputError(f"cannot read graph: {exc}") from None


# -- output -----------------------------------------------------------------------

def _emit_records(records: list, columns: list, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(records, out, indent=2)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in records:
        w.writerow(["" if r.get(c) is None else json.dumps(r[c]) if isinstance(r.get(c), (list, dict))
                    else r[c] for c in columns])


def _emit_checks(checks: list, fmt: str, out) -> None:
    records = [{"suite": c.suite, "name": c.name, "params": c.params, "passed": c.passed,
                "detail": c.detail} for c in checks]
    _emit_records(records, ["suite", "name", "params", "passed", "detail"], fmt, out)


def _checks_exit(checks: list, err) -> int:
    bad = [c for c in checks if not c.passed]
    for c in bad:
        print(c.line(), file=err)
    print(f"{len(checks) - len(bad)}/{len(checks)} checks passed", file=err)
    return EXIT_MISMATCH if bad else EXIT_OK


# -- commands ---------------------------------------------------------------------

def cmd_depth(args, cfg: RunConfig, out, err) -> int:
    G = load_graph(args.graph)
    if args.t < 1:
        raise InputError("t must be at least 1")
    if not G.edges:
        raise InputError("graph has no edges")
    cache = cfg.cache()
    It = power(edge_ideal(G), args.t)
    reports = [cached_depth(It, f, args.t, cache, **cfg.caps) for f in cfg.fields]
    code = EXIT_OK
    if len({r.depth for r in reports}) > 1:
        flag = "field disagreement: " + " ".join(f"{r.field}={r.depth}" for r in reports)
        for r in reports:
            r.flags.append(flag)
        print(flag, file=err)
        code = EXIT_MISMATCH
    records = [r.to_json() for r in reports]
    _emit_records(records, ["ideal_hash", "n", "t", "depth", "pd", "field", "witness_b",
                            "witness_i", "elapsed_ms", "flags"], cfg.format, out)
    return code


def cmd_table(args, cfg: RunConfig, out, err) -> int:
    try:
        rows = suites.comparison_table(args.family, parse_range(args.n), parse_range(args.t),
                                       w1=args.w1, w3=args.w3, w5=args.w5, fields=cfg.fields,
                                       caps=cfg.caps, workers=cfg.workers, cache_dir=cfg.cache_dir)
    except (GraphError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if cfg.format == "json":
        json.dump([r.to_json() for r in rows], out, indent=2)
        out.write("\n")
    else:
        out.write(suites.rows_to_csv(rows))
    failed = [r for r in rows if r.match is False]
    capped = [r for r in rows if r.match is None and r.note.startswith("skipped")]
    for r in capped:
        print(f"skipped n={r.n} t={r.t}: {r.note}", file=err)
    print(f"{len(rows)} rows, {len(failed)} mismatches, {len(capped)} skipped for caps", file=err)
    if failed:
        return EXIT_MISMATCH
    return EXIT_CAP if capped else EXIT_OK


def cmd_colon_suite(args, cfg: RunConfig, out, err) -> int:
    checks = suites.colon_suite()
    _emit_checks(checks, cfg.format, out)
    return _checks_exit(checks, err)


def cmd_closure_suite(args, cfg: RunConfig, out, err) -> int:
    if args.max_n < 1 or args.max_w < 1:
        raise InputError("max-n and max-w must be positive")
    checks = suites.closure_suite(args.max_n, args.max_w,
                                  cycles_paths_n=args.cycles_paths or None, seed=cfg.seed)
    _emit_checks(checks, cfg.format, out)
    return _checks_exit(checks, err)


def cmd_property_suite(args, cfg: RunConfig, out, err) -> int:
    checks = suites.property_suite(cfg.seed, cfg.cache_dir)
    _emit_checks(checks, cfg.format, out)
    code = _checks_exit(checks, err)
    if code:
        print(f"seed={cfg.seed}", file=err)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=("gf2", "rational", "both"))
    common.add_argument("--max-gens", dest="max_gens", type=int)
    common.add_argument("--max-lattice", dest="max_lattice", type=int)
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)

    p = argparse.ArgumentParser(prog="edgedepth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("depth", parents=[common], help="depth of S/I(G)^t")
    d.add_argument("graph", help="graph JSON, a JSON file, or cycle:w1,..,wn / path:w1,..")
    d.add_argument("--t", type=int, default=1)
    d.set_defaults(run=cmd_depth)

    t = sub.add_parser("table", parents=[common], help="formula vs engine over a cycle family")
    t.add_argument("--family", choices=CASES, required=True)
    t.add_argument("--n", required=True, help="e.g. 4-7 or 4,6")
    t.add_argument("--t", required=True, help="e.g. 1-3")
    t.add_argument("--w1", type=int, default=2)
    t.add_argument("--w3", type=int, default=2)
    t.add_argument("--w5", type=int, default=2)
    t.set_defaults(run=cmd_table)

    c = sub.add_parser("colon-suite", parents=[common], help="replay the colon identities")
    c.set_defaults(run=cmd_colon_suite)

    cl = sub.add_parser("closure-suite", parents=[common], help="graph criterion vs Newton polyhedron")
    cl.add_argument("--max-n", dest="max_n", type=int, default=4)
    cl.add_argument("--max-w", dest="max_w", type=int, default=2)
    cl.add_argument("--cycles-paths", dest="cycles_paths", type=int, default=5,
                    help="also every cycle and path on this many vertices (0 to skip)")
    cl.set_defaults(run=cmd_closure_suite)

    pr = sub.add_parser("property-suite", parents=[common], help="seeded invariant checks")
    pr.set_defaults(run=cmd_property_suite)
    return p


def main(argv=None, out=None, err=None, environ=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = config_from(args, os.environ if environ is None else environ)
        return args.run(args, cfg, out, err)
    except InputError as exc:
        print(f"input error: {exc}", file=err)
        return EXIT_INPUT
    except SizeLimitExceeded as exc:
        print(f"cap exceeded: {exc}", file=err)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
