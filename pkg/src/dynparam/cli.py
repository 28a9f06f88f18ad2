"""Command line entry point: ``run``, ``gen``, ``bench`` and ``reduce``.

Exit codes: 0 success, 1 oracle disagreement (``--verified`` / ``reduce``),
2 malformed input, 3 out-of-range operation or contract violation.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import oracles
from .errors import ContractError, FormatError, RangeError
from .formats import parse_instance, parse_ops, serialize_instance, serialize_ops, split_document, SEPARATOR
from .harness import BENCH_HEADER, CS_MODES, DF_MODES, ED_MODES, GenParams, Session, bench, generate, oracle_answers, yes_no
from .reductions import PrefixU1Harness

EXIT_MISMATCH = 1
EXIT_FORMAT = 2
EXIT_CONTRACT = 3


class OpError(Exception):
    def __init__(self, line: int, err: Exception) -> None:
        super().__init__(f"line {line}: {err}")
        self.err = err


def _load(path: str, ops_path: str | None):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    inst_text, ops_text = split_document(text)
    inst = parse_instance(inst_text)
    first = len(inst_text.splitlines()) + 2
    if ops_path is not None:
        ops_text, first = Path(ops_path).read_text(), 1
    ops = parse_ops(ops_text or "", inst, first)
    return inst, ops


def _session(inst, args) -> Session:
    return Session(inst, seed=args.seed, copies=args.copies)


def cmd_run(args, out) -> int:
    inst, ops = _load(args.instance, args.ops)
    if args.verified:
        oracle_session = Session(inst, copies=1)
    session = _session(inst, args)
    status = 0
    for op in ops:
        try:
            ans = session.apply(op)
            if args.verified:
                if op.kind == "U":
                    oracle_session.update(op.args)
                elif ans != oracle_session.oracle():
                    print(f"line {op.line}: structure says {yes_no(ans)}, oracle says {yes_no(not ans)}", file=sys.stderr)
                    status = EXIT_MISMATCH
        except (RangeError, ContractError, oracles.OracleLimitError) as err:
            raise OpError(op.line, err) from err
        if ans is not None:
            print(yes_no(ans), file=out)
    return status


def cmd_gen(args, out) -> int:
    params = GenParams(
        kind=args.kind, n=args.n, L=args.L, sigma=args.sigma, d=args.d, k=args.k,
        mode=args.mode or ("planted" if args.kind == "CS" else "random"),
        updates=args.updates, edits=args.edits,
    )
    inst, ops = generate(params, args.seed)
    ops_text = serialize_ops(ops, inst)
    if args.verified:
        answers = iter(oracle_answers(inst, ops))
        lines = [f"{ln}  # oracle: {yes_no(next(answers))}" if ln == "Q" else ln for ln in ops_text.splitlines()]
        ops_text = "\n".join(lines) + "\n"
    out.write(serialize_instance(inst) + SEPARATOR + "\n" + ops_text)
    return 0


def cmd_bench(args, out) -> int:
    inst, ops = _load(args.instance, args.ops)
    rows = bench(inst, ops, args.repetitions, seed=args.seed, copies=args.copies)
    if args.csv and args.csv != "-":
        with open(args.csv, "w", newline="") as fh:
            _write_csv(fh, rows)
    else:
        _write_csv(out, rows)
    return 0


def _write_csv(fh, rows) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(BENCH_HEADER)
    w.writerows(rows)


def cmd_reduce(args, out) -> int:
    """Random prefix-U1 stream answered three ways: direct, via DF, via ED."""
    if args.n < 1 or args.ops < 0:
        raise RangeError("reduce needs n >= 1 and ops >= 0")
    rng = np.random.default_rng(args.seed)
    h = PrefixU1Harness(args.n)
    status = 0
    for _ in range(args.ops):
        kind = int(rng.integers(0, 3))
        i = int(rng.integers(1, args.n + 1))
        if kind == 0:
            h.insert(i)
            print(f"I {i}", file=out)
        elif kind == 1:
            h.delete(i)
            print(f"D {i}", file=out)
        else:
            answers = h.query(i)
            print(f"Q {i} " + " ".join(yes_no(a) for a in answers), file=out)
            if len(set(answers)) != 1:
                print(f"disagreement on Q {i}: direct/df/ed = {answers}", file=sys.stderr)
                status = EXIT_MISMATCH
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynparam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_copies=True):
        p.add_argument("--seed", type=int, default=0, help="randomness seed (default 0)")
        if with_copies:
            p.add_argument("--copies", type=int, default=None, help="Closest String copy count R (default 3*4^d)")

    run = sub.add_parser("run", help="replay an op stream, one YES/NO per Q")
    run.add_argument("instance", help="instance file ('-' for stdin), optionally followed by '---' and ops")
    run.add_argument("--ops", help="separate op-stream file")
    run.add_argument("--verified", action="store_true", help="check every answer against the brute-force oracle")
    common(run)
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen", help="write a seeded instance and op stream")
    gen.add_argument("kind", choices=["CS", "DF", "ED"])
    gen.add_argument("--mode", help=f"CS: {'/'.join(CS_MODES)}; DF: {'/'.join(DF_MODES)}; ED: {'/'.join(ED_MODES)}")
    gen.add_argument("--n", type=int, default=8, help="word count (CS) or word length (DF, ED)")
    gen.add_argument("--L", type=int, default=8, help="CS word length")
    gen.add_argument("--sigma", type=int, default=2, help="alphabet size (CS, ED)")
    gen.add_argument("--d", type=int, default=1, help="CS distance bound")
    gen.add_argument("--k", type=int, default=3, help="DF alphabet size or ED threshold")
    gen.add_argument("--edits", type=int, default=2, help="ED: at most this many random edits between x and y")
    gen.add_argument("--updates", type=int, default=0, help="random updates, each followed by Q")
    gen.add_argument("--verified", action="store_true", help="annotate each Q with the oracle answer")
    gen.add_argument("-o", "--output", help="write here instead of stdout")
    common(gen, with_copies=False)
    gen.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="per-op latency percentiles and counters as CSV")
    b.add_argument("instance")
    b.add_argument("--ops")
    b.add_argument("--repetitions", type=int, default=5)
    b.add_argument("--csv", help="CSV output path (default stdout)")
    common(b)
    b.set_defaults(func=cmd_bench)

    red = sub.add_parser("reduce", help="prefix-U1 stream answered directly, via DF and via ED")
    red.add_argument("--n", type=int, default=32)
    red.add_argument("--ops", type=int, default=100)
    common(red, with_copies=False)
    red.set_defaults(func=cmd_reduce)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen" and args.output:
            with open(args.output, "w") as fh:
                return args.func(args, fh)
        return args.func(args, out)
    except FormatError as err:
        print(f"format error: {err}", file=sys.stderr)
        return EXIT_FORMAT
    except OpError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONTRACT
    except (RangeError, ContractError, oracles.OracleLimitError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONTRACT
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
