"""Run the whole lemma registry on U(N) and write the JSON report."""

import argparse
import sys

from digdef.universe import get_universe
from digdef.verifier.registry import verify_all
from digdef.verifier.report import FAIL, render, summary_line


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", default="report.json")
    args = ap.parse_args()
    reports = verify_all(get_universe(args.n, use_disk=True), threads=args.threads, seed=args.seed)
    for r in reports:
        print(f"{summary_line(r)} millis={r.millis}")
    with open(args.json, "w") as fh:
        fh.write(render(reports))
    return 1 if any(r.status == FAIL for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
