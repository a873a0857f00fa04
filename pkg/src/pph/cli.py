"""Command-line front end: build, query, verify, export, stats.

Exit codes: 0 success (a query with no matches still succeeds), 1 usage
error, 2 input or validation error, 3 internal invariant violation or a
failed verification run.
"""

from __future__ import annotations

import argparse
import sys

from .cstrie import load_strings, load_trie, build_from_strings
from .errors import InputError, InvariantError, PphError
from .index import build_index
from .indexio import export_dot, load_index, save_index, stats
from .matcher import query
from .oracle import cross_check

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _print_stats(rec: dict) -> None:
    print(f"N={rec['trie_nodes']} N_p={rec['pcst_nodes']}")
    print(f"ratio={rec['compression_ratio']:.4f}")
    print(f"sigma={rec['sigma']} pi={rec['pi']} strings={rec['strings']}")
    print(f"heap_height={rec['heap_height']} mean_depth={rec['heap_mean_depth']:.4f}")
    print(f"rsl={rec['rsl_links']}")
    for k in sorted(rec["build_counters"]):
        print(f"counter_{k}={rec['build_counters'][k]}")


def cmd_build(args) -> int:
    if args.format == "strings":
        W, alphabet = load_strings(args.input)
        trie = build_from_strings(W, alphabet)
    else:
        trie = load_trie(args.input)
    index = build_index(trie, naive=args.naive)
    save_index(index, args.output)
    _print_stats(stats(index))
    return 0


def cmd_query(args) -> int:
    index = load_index(args.index)
    if args.pattern == "-":
        patterns = [ln.strip() for ln in sys.stdin if ln.strip()]
        tagged = True
    else:
        patterns = [args.pattern]
        tagged = False
    for text in patterns:
        res = query(index, text, expand=args.expand)
        prefix = f"{text}\t" if tagged else ""
        if args.count_only:
            print(f"{prefix}{res.pocc}")
        elif args.expand:
            for sid, off in res.expanded:
                print(f"{prefix}s{sid} {off}")
        else:
            for v in sorted(res.trie_hits):
                print(f"{prefix}{v}")
    return 0


def cmd_verify(args) -> int:
    report = cross_check(seed=args.seed, samples=args.samples, sigma_max=args.sigma_max,
                         pi_max=args.pi_max, len_max=args.len_max,
                         max_strings=args.max_strings, pattern_len_max=args.pattern_len_max)
    print(report.summary())
    return 0 if report.passed else 3


def cmd_export(args) -> int:
    index = load_index(args.index)
    export_dot(index, args.what, args.output)
    return 0


def cmd_stats(args) -> int:
    index = load_index(args.index)
    _print_stats(stats(index))
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="pph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an index from a strings or trie file")
    b.add_argument("--input", required=True)
    b.add_argument("--format", choices=["strings", "trie"], default="strings")
    b.add_argument("--output", required=True)
    b.add_argument("--naive", action="store_true",
                   help="use the definitional builders instead of the link-driven ones")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="run patterns against a saved index")
    q.add_argument("--index", required=True)
    q.add_argument("--pattern", required=True,
                   help="pattern text, or '-' to read one pattern per stdin line")
    q.add_argument("--expand", action="store_true",
                   help="print (string id, offset) pairs instead of node ids")
    q.add_argument("--count-only", action="store_true", help="print only the match count")
    q.set_defaults(func=cmd_query)

    v = sub.add_parser("verify", help="randomized cross-check against brute force")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--sigma-max", type=int, default=2)
    v.add_argument("--pi-max", type=int, default=3)
    v.add_argument("--len-max", type=int, default=8)
    v.add_argument("--max-strings", type=int, default=8)
    v.add_argument("--pattern-len-max", type=int, default=4)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="write a Graphviz rendering of one structure")
    e.add_argument("--index", required=True)
    e.add_argument("--what", choices=["trie", "pcst", "heap"], required=True)
    e.add_argument("--output", required=True)
    e.set_defaults(func=cmd_export)

    s = sub.add_parser("stats", help="print structural statistics of a saved index")
    s.add_argument("--index", required=True)
    s.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"pph: internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except (InputError, PphError) as exc:
        print(f"pph: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"pph: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
