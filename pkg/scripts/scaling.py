"""Print N and N/n for the c-packed benchmark family over a range of sizes.

Example:
    python scripts/scaling.py --c 4 8 --sizes 10k,20k,40k --eps 0.04 0.01
"""

import argparse
import json

from cpfrechet.bench import BenchConfig, bench_record, cpacked_pair, parse_sizes


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--c", type=float, nargs="+", default=[4.0, 8.0])
    parser.add_argument("--sizes", type=parse_sizes, default=parse_sizes("10k,20k,40k"))
    parser.add_argument("--eps", type=float, nargs="+", default=[0.04, 0.01])
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--time", action="store_true", help="Also time one decider call per row.")
    parser.add_argument("--json", action="store_true", help="Emit JSON lines instead of a table.")
    args = parser.parse_args()

    cfg = BenchConfig()
    if not args.json:
        print(f"{'c':>5} {'eps':>6} {'n':>8} {'N':>10} {'N/n':>8} {'ratio':>6} {'decide_s':>9}")
    for c in args.c:
        for eps in args.eps:
            prev = None
            for n in args.sizes:
                pi, sigma = cpacked_pair(c, n, args.seed, cfg)
                rec = bench_record(pi, sigma, cfg.delta, eps, time_decide=args.time)
                rec["c"] = c
                if args.json:
                    print(json.dumps(rec))
                    continue
                ratio = f"{rec['N'] / prev:.2f}" if prev else "-"
                secs = f"{rec['wall_time_ns'] / 1e9:.2f}" if args.time else "-"
                print(f"{c:>5g} {eps:>6g} {n:>8} {rec['N']:>10} {rec['N'] / n:>8.1f} {ratio:>6} {secs:>9}")
                prev = rec["N"]


if __name__ == "__main__":
    main()
