"""Run every suite with default settings and write one JSON report per suite."""

import argparse
import pathlib
import time

from cdu.harness import SUITE_IDS, SuiteConfig, build_report, dumps, run_suite
from cdu.harness.report import failures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="reports", help="directory for the JSON reports")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bad = 0
    for suite in SUITE_IDS:
        cfg = SuiteConfig(seed=args.seed, workers=args.workers)
        t0 = time.perf_counter()
        results = run_suite(suite, cfg)
        (out / f"{suite}.json").write_text(dumps(build_report(suite, cfg, results)))
        failed = failures(results)
        bad += len(failed)
        print(f"{suite:14s} {len(results):4d} claims  {len(failed):3d} failed  {time.perf_counter() - t0:6.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
