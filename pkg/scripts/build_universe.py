"""Build and cache the truncated universes U(1)..U(N)."""

import argparse
import time

from digdef.universe import cache_path, enumerate_universe


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out-dir")
    args = ap.parse_args()
    for n in range(1, args.n + 1):
        start = time.perf_counter()
        u = enumerate_universe(n, threads=args.threads)
        path = cache_path(n, args.out_dir)
        u.save(path)
        print(f"N={n} types={len(u)} seconds={time.perf_counter() - start:.2f} -> {path}")


if __name__ == "__main__":
    main()
