"""Desk-scale version of the computational experiment.

Generates the corpus (n = 5..9 for the exact comparison, by default),
benchmarks the heuristic against the exact search for both leader styles,
writes the per-run CSV and prints the summary table.

    python3 scripts/run_desk_experiment.py --out results/desk
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

from orblab.harness import BenchConfig, format_summary, run_corpus, summarize, write_csv
from orblab.instance import Distribution, generate_corpus, write_json

log = logging.getLogger("desk")


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--out", default="results/desk")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--per-combo", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--solvers", nargs="+", default=["heuristic", "exact_bb"])
    p.add_argument("--time-limit", type=float, default=60.0)
    args = p.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    out = Path(args.out)
    corpus_dir = out / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    corpus = generate_corpus(range(args.n_min, args.n_max + 1), list(Distribution), args.per_combo, args.seed)
    for inst in corpus:
        write_json(inst, corpus_dir / f"{inst.id}.json")
    log.info("corpus: %d instances in %s", len(corpus), corpus_dir)

    records = run_corpus(corpus_dir, ["SL", "OR"], args.solvers, args.repeats, BenchConfig(time_limit=args.time_limit))
    write_csv(records, out / "bench.csv")
    log.info("wrote %d records to %s", len(records), out / "bench.csv")
    print(format_summary(summarize(records)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
