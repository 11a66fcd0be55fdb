"""Print the audit findings: digraphs admitted by a defining condition beyond
the intended construction."""

import argparse

from digdef.universe import get_universe
from digdef.verifier.audits import audits_json, render_audits, run_audits


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3, help="universe for the universe-mode audit")
    ap.add_argument("--json")
    args = ap.parse_args()
    found = run_audits(get_universe(args.n, use_disk=True))
    print(render_audits(found), end="")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(audits_json(found))


if __name__ == "__main__":
    main()
