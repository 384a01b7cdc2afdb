"""Command line: ``cbtpq bench``, ``cbtpq verify``, ``cbtpq sort``.

Exit codes: 0 success, 1 bad configuration, 2 verification failure, 3 I/O or
input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import bench, verify
from .pqcore import KINDS
from .supercbt import sort_in_place

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class CliConfig:
    subcommand: str
    structures: list = field(default_factory=lambda: list(KINDS))
    ns: list = field(default_factory=lambda: [1024])
    distributions: list = field(default_factory=lambda: list(bench.DISTRIBUTIONS))
    metrics: list = field(default_factory=lambda: ["hold", "sort"])
    warmup: int = 10**6
    ops: int = 10**6
    repeats: int = 10
    seed: int = 0
    max_n: int = 4096
    output: str | None = None
    input: str | None = None
    ascending: bool = False
    mutate_sister_guard: bool = False

    def validate(self):
        for s in self.structures:
            if s not in KINDS:
                raise ConfigError(f"unknown structure {s!r} (choose from {', '.join(KINDS)})")
        if self.warmup < 0 or self.ops < 1 or self.repeats < 1:
            raise ConfigError("--warmup must be >= 0, --ops and --repeats positive")
        for n in self.ns:
            if n < 2:
                raise ConfigError(f"--n {n}: benchmarks need at least 2 keys")
            if n < 3 and "sort" in self.metrics:
                raise ConfigError(f"--n {n}: the sort metric needs at least 3 keys")
        for m in self.metrics:
            if m not in ("hold", "sort"):
                raise ConfigError(f"unknown metric {m!r}")


def _csv_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _int_list(text):
    try:
        return [int(t) for t in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(prog="cbtpq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    b = sub.add_parser("bench", help="hold-model and shrink-to-sort benchmarks")
    b.add_argument("--structure", type=_csv_list, default=list(KINDS),
                   help="comma list of " + ",".join(KINDS))
    b.add_argument("--n", type=_int_list, default=[1024], help="comma list of key counts")
    b.add_argument("--dist", type=_csv_list, default=[d.value for d in bench.DISTRIBUTIONS],
                   help="comma list of exponential,uniform,biased")
    b.add_argument("--metric", type=_csv_list, default=["hold", "sort"])
    b.add_argument("--warmup", type=int, default=10**6)
    b.add_argument("--ops", type=int, default=10**6, help="timed holds per repeat")
    b.add_argument("--repeats", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default="bench.csv")

    v = sub.add_parser("verify", help="run the invariant and differential suites")
    v.add_argument("--max-n", type=int, default=4096)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--ops", type=int, default=20000, help="ops per differential script")
    v.add_argument("--mutate-sister-guard", action="store_true", help=argparse.SUPPRESS)

    s = sub.add_parser("sort", help="sort 'id,priority' lines, largest priority first")
    s.add_argument("input")
    s.add_argument("--out", default=None, help="output file (default stdout)")
    s.add_argument("--ascending", action="store_true", help="smallest priority first")
    return parser


def config_from_args(args):
    cfg = CliConfig(subcommand=args.subcommand)
    if args.subcommand == "bench":
        cfg.structures = args.structure
        cfg.ns = args.n
        try:
            cfg.distributions = [bench.PriorityDistribution.parse(d) for d in args.dist]
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        cfg.metrics = args.metric
        cfg.warmup, cfg.ops, cfg.repeats = args.warmup, args.ops, args.repeats
        cfg.seed = args.seed
        cfg.output = args.out
    elif args.subcommand == "verify":
        cfg.max_n, cfg.seed, cfg.ops = args.max_n, args.seed, args.ops
        cfg.mutate_sister_guard = args.mutate_sister_guard
        if cfg.ops < 1:
            raise ConfigError("--ops must be positive")
    else:
        cfg.input, cfg.output, cfg.ascending = args.input, args.out, args.ascending
    if cfg.subcommand == "bench":
        cfg.validate()
    return cfg


def cmd_bench(cfg, out=None):
    out = out or sys.stdout
    try:
        timer = bench.Timer()
    except bench.TimerUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    records = bench.run_suite(cfg.structures, cfg.ns, cfg.distributions,
                              warmup_ops=cfg.warmup, timed_ops=cfg.ops,
                              repeats=cfg.repeats, seed=cfg.seed,
                              metrics=cfg.metrics, timer=timer)
    meta = {"seed": cfg.seed, "warmup": cfg.warmup, "ops": cfg.ops,
            "repeats": cfg.repeats, "rng": "PCG64", "timer": timer.identity,
            "unit": "ns"}
    try:
        bench.write_csv(records, cfg.output, meta)
    except OSError as exc:
        print(f"error: cannot write {cfg.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(records)} rows to {cfg.output}", file=out)
    return EXIT_OK


def cmd_verify(cfg, out=None):
    out = out or sys.stdout
    results = verify.run_all(cfg.max_n, cfg.seed, cfg.ops, cfg.mutate_sister_guard)
    failed = False
    for r in results:
        print(f"{r.status.upper():4}  {r.name}  {r.detail}", file=out)
        failed |= r.status == "fail"
    if failed:
        print(f"replay with --seed {cfg.seed}", file=out)
        return EXIT_VERIFY
    return EXIT_OK


def read_pairs(path):
    """Parse ``id,priority`` lines; returns (ids, priority texts, priority values)."""
    ids, texts, values = [], [], []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            id_, sep, prio = line.rpartition(",")
            try:
                if not sep:
                    raise ValueError
                value = float(prio)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: expected 'id,priority', got {line!r}") from None
            ids.append(id_)
            texts.append(prio.strip())
            values.append(value)
    return ids, texts, values


def cmd_sort(cfg, out=None):
    out = out or sys.stdout
    try:
        ids, texts, values = read_pairs(cfg.input)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    order = sort_in_place(values, list(range(len(values))))
    if cfg.ascending:
        order = order[::-1]
    lines = "".join(f"{ids[k]},{texts[k]}\n" for k in order)
    if cfg.output is None:
        out.write(lines)
        return EXIT_OK
    try:
        tmp = cfg.output + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(lines)
        os.replace(tmp, cfg.output)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return {"bench": cmd_bench, "verify": cmd_verify, "sort": cmd_sort}[cfg.subcommand](cfg)


if __name__ == "__main__":
    sys.exit(main())
