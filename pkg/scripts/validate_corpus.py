"""Check every corpus machine against its language definition."""

import argparse
import time

from parikhkit import corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", help="entries to check (default: all)")
    ap.add_argument("--bound", type=int, help="word length bound (default: per entry)")
    args = ap.parse_args()
    failed = 0
    for name in args.names or corpus.names():
        e = corpus.build(name)
        t = time.perf_counter()
        bad = corpus.validate(e, args.bound)
        n = e.bound if args.bound is None else args.bound
        tag = " (reconstruction)" if e.reconstruction else ""
        print(f"{name:20s} {e.model:5s} <= {n:2d}  mismatches {len(bad):4d}  "
              f"{time.perf_counter() - t:6.2f}s{tag}")
        for w in bad[:5]:
            print(f"    {''.join(w)!r}")
        failed += bool(bad)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
