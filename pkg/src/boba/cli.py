"""Command-line front end.

Subcommands: generate | ingest | reorder | metrics | bench | compare.
Exit codes: 0 success, 1 usage error, 2 parse or data error.

Inputs are file paths (.mtx or whitespace edge lists) or in-memory
synthetic datasets written as ``synth:`` URIs, e.g.::

    synth:lcd:n=100000,c=8,seed=1,randomize=7
    synth:regular:n=8,d=3,seed=2
    synth:grid:rows=3,cols=4

The optional ``randomize=SEED`` applies a seeded uniform relabeling, the
neutral baseline expected by ``bench``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import pandas as pd

from .bench import KERNEL_CHOICES, _ms, compare_records, records_to_frame, run_bench
from .errors import BobaError
from .generators import LcdParams, generate_grid, generate_lcd, generate_regular_sorted
from .graph import CooGraph, apply_permutation, symmetrize
from .io import randomize_labels, read_graph, read_provenance, write_edge_list
from .metrics import DEFAULT_LINE_SIZE, locality_report
from .ordering import ORDERING_CHOICES, compute_ordering

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _default_threads() -> int:
    env = os.environ.get("BOBA_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--threads", type=int, default=_default_threads(),
                        help="thread count (default: BOBA_THREADS or 1)")
    common.add_argument("--line-size", type=int, default=DEFAULT_LINE_SIZE,
                        help="vertex IDs per cache line (default 32)")
    common.add_argument("--w", type=int, default=1, help="window width (default 1)")
    common.add_argument("--mode", choices=("deterministic", "relaxed"),
                        default="deterministic", help="parallel reorder mode")
    common.add_argument("--output", type=Path, default=None, help="output path")
    common.add_argument("--assume-randomized", action="store_true",
                        help="skip the randomized-input check in bench")
    return common


def _parse_kv(body: str, spec: dict, uri: str) -> dict:
    out = {}
    for item in body.split(","):
        if not item:
            continue
        key, _, value = item.partition("=")
        if key not in spec:
            raise BobaError(f"unknown parameter {key!r} in {uri!r}")
        out[key] = int(value)
    return out


def load_input(source: str) -> tuple[CooGraph, str, list[str]]:
    """Load a file path or a ``synth:`` URI.

    Returns the graph, a dataset name, and its provenance entries.
    """
    if not source.startswith("synth:"):
        g, _ = read_graph(source)
        return g, Path(source).name, read_provenance(source)

    try:
        _, kind, body = source.split(":", 2)
    except ValueError:
        raise BobaError(f"malformed synthetic dataset URI: {source!r}") from None
    provenance = []
    if kind == "lcd":
        kv = _parse_kv(body, {"n", "c", "seed", "randomize"}, source)
        rand = kv.pop("randomize", None)
        g = generate_lcd(LcdParams(**kv))
        provenance.append(f"generate:lcd(n={kv['n']},c={kv['c']},seed={kv['seed']})")
    elif kind == "regular":
        kv = _parse_kv(body, {"n", "d", "seed", "randomize"}, source)
        rand = kv.pop("randomize", None)
        g = generate_regular_sorted(kv["n"], kv["d"], kv.get("seed", 0))
        provenance.append(f"generate:regular(n={kv['n']},d={kv['d']},seed={kv.get('seed', 0)})")
    elif kind == "grid":
        kv = _parse_kv(body, {"rows", "cols", "randomize"}, source)
        rand = kv.pop("randomize", None)
        g = generate_grid(kv["rows"], kv["cols"])
        provenance.append(f"generate:grid(rows={kv['rows']},cols={kv['cols']})")
    else:
        raise BobaError(f"unknown synthetic dataset kind: {kind!r}")
    if rand is not None:
        g, _ = randomize_labels(g, rand)
        provenance.append(f"randomize:seed={rand}")
    return g, source, provenance


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        output.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def cmd_generate(args) -> int:
    if args.output is None:
        raise BobaError("generate requires --output")
    if args.kind == "lcd":
        g = generate_lcd(LcdParams(n=args.n, c=args.c, seed=args.seed))
        prov = f"generate:lcd(n={args.n},c={args.c},seed={args.seed})"
    elif args.kind == "regular":
        g = generate_regular_sorted(args.n, args.d, args.seed)
        prov = f"generate:regular(n={args.n},d={args.d},seed={args.seed})"
    else:
        g = generate_grid(args.rows, args.cols)
        prov = f"generate:grid(rows={args.rows},cols={args.cols})"
    write_edge_list(g, args.output, provenance=[prov])
    print(f"wrote {args.output} n={g.n} m={g.m}")
    return 0


def cmd_ingest(args) -> int:
    if args.output is None:
        raise BobaError("ingest requires --output")
    g, _ = read_graph(args.input)
    provenance = read_provenance(args.input) if not str(args.input).endswith(".mtx") else []
    provenance.append(f"ingest:{Path(args.input).name}")
    if args.symmetrize:
        g = symmetrize(g, drop_self_loops=True)
        provenance.append("symmetrize")
    if args.randomize:
        g, _ = randomize_labels(g, args.seed)
        provenance.append(f"randomize:seed={args.seed}")
    write_edge_list(g, args.output, provenance=provenance)
    print(f"wrote {args.output} n={g.n} m={g.m}")
    return 0


def cmd_reorder(args) -> int:
    if args.output is None:
        raise BobaError("reorder requires --output")
    g, name, provenance = load_input(args.input)

    def work():
        p = compute_ordering(g, args.method, seed=args.seed, mode=args.mode,
                             thread_hint=args.threads)
        return apply_permutation(g, p)

    relabeled, reorder_ms = _ms(work)
    provenance.append(f"reorder:method={args.method},seed={args.seed},mode={args.mode}")
    if args.method == "random":
        provenance.append(f"randomize:seed={args.seed}")
    write_edge_list(relabeled, args.output, provenance=provenance)
    print(f"dataset={name} method={args.method} reorder_ms={reorder_ms:.3f} "
          f"n={g.n} m={g.m}")
    return 0


def cmd_metrics(args) -> int:
    g, name, _ = load_input(args.input)
    p = compute_ordering(g, args.ordering, seed=args.seed, mode=args.mode,
                         thread_hint=args.threads)
    report = locality_report(g, p, w=args.w, line_size=args.line_size,
                             nbr_on_reversed=args.nbr_reverse)
    frame = pd.DataFrame([{
        "dataset": name,
        "ordering": args.ordering,
        "n": g.n,
        "m": report.m,
        "nscore": report.nscore,
        "gscore": report.gscore,
        "w": report.w,
        "nbr": report.nbr,
        "bandwidth": report.bandwidth,
        "line_size": report.line_size,
    }])
    _emit(frame.to_csv(index=False), args.output)
    return 0


def cmd_bench(args) -> int:
    g, name, provenance = load_input(args.input)
    randomized = any(entry.startswith("randomize") for entry in provenance)
    if not randomized and not args.assume_randomized:
        raise BobaError(
            f"input {name!r} is not marked as randomized; benchmark baselines "
            "need randomized labels (re-ingest with --randomize, use a "
            "randomize= synth parameter, or pass --assume-randomized)"
        )
    records = run_bench(
        g, name, args.ordering, args.kernel,
        seed=args.seed, threads=args.threads, mode=args.mode,
        repeats=args.repeats, w=args.w, line_size=args.line_size,
        compute_locality=not args.no_locality,
    )
    _emit(records_to_frame(records).to_csv(index=False), args.output)
    return 0


def cmd_compare(args) -> int:
    frames = [pd.read_csv(path) for path in args.records]
    table = compare_records(pd.concat(frames, ignore_index=True))
    if args.output is not None:
        table.to_csv(args.output, index=False)
    print(table.to_string(index=False, float_format=lambda v: f"{v:.3f}"))
    return 0


def build_parser() -> _Parser:
    common = _common_flags()
    parser = _Parser(prog="boba", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate",
                           help="write a synthetic graph as an edge list")
    gen_sub = p_gen.add_subparsers(dest="kind", required=True)
    g_lcd = gen_sub.add_parser("lcd", parents=[common],
                               help="preferential attachment")
    g_lcd.add_argument("--n", type=int, required=True)
    g_lcd.add_argument("--c", type=int, required=True)
    g_reg = gen_sub.add_parser("regular", parents=[common],
                               help="random simple d-regular, destination-sorted")
    g_reg.add_argument("--n", type=int, required=True)
    g_reg.add_argument("--d", type=int, required=True)
    g_grid = gen_sub.add_parser("grid", parents=[common], help="4-neighbor lattice")
    g_grid.add_argument("--rows", type=int, required=True)
    g_grid.add_argument("--cols", type=int, required=True)

    p_ing = sub.add_parser("ingest", parents=[common],
                           help="parse a graph file and write a canonical edge list")
    p_ing.add_argument("input")
    p_ing.add_argument("--randomize", action="store_true",
                       help="relabel with a seeded random permutation")
    p_ing.add_argument("--symmetrize", action="store_true",
                       help="add reverse edges, dedupe, drop self-loops")

    p_re = sub.add_parser("reorder", parents=[common], help="reorder and relabel")
    p_re.add_argument("input")
    p_re.add_argument("--method", choices=ORDERING_CHOICES, required=True)

    p_met = sub.add_parser("metrics", parents=[common],
                           help="locality report for one ordering, as CSV")
    p_met.add_argument("input")
    p_met.add_argument("--ordering", choices=ORDERING_CHOICES, default="identity")
    p_met.add_argument("--nbr-reverse", action="store_true",
                       help="evaluate the line ratio on in-neighborhoods")

    p_ben = sub.add_parser("bench", parents=[common],
                           help="timed reorder/convert/kernel pipeline, as CSV")
    p_ben.add_argument("input")
    p_ben.add_argument("--ordering", choices=ORDERING_CHOICES, required=True)
    p_ben.add_argument("--kernel", choices=KERNEL_CHOICES, required=True)
    p_ben.add_argument("--repeats", type=int, default=3)
    p_ben.add_argument("--no-locality", action="store_true",
                       help="skip locality metrics (cheaper on huge graphs)")

    p_cmp = sub.add_parser("compare", parents=[common],
                           help="normalize benchmark CSVs against the random baseline")
    p_cmp.add_argument("records", nargs="+", type=Path)

    parser.set_defaults(func=None)
    p_gen.set_defaults(func=cmd_generate)
    for sp in (g_lcd, g_reg, g_grid):
        sp.set_defaults(func=cmd_generate)
    g_lcd.set_defaults(kind="lcd")
    g_reg.set_defaults(kind="regular")
    g_grid.set_defaults(kind="grid")
    p_ing.set_defaults(func=cmd_ingest)
    p_re.set_defaults(func=cmd_reorder)
    p_met.set_defaults(func=cmd_metrics)
    p_ben.set_defaults(func=cmd_bench)
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.func is None:
        parser.error("a subcommand is required")
    try:
        code = args.func(args)
    except BobaError as exc:
        print(f"boba: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"boba: error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
