"""Run the full verification matrix and print one line per item, then per criterion."""
import argparse
import sys
from collections import defaultdict

from ffcenter.suites import acceptance_items, run_items


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", default=None)
    args = ap.parse_args()
    sys.setrecursionlimit(10000)
    items = acceptance_items(args.seed)
    if args.suite:
        items = [it for it in items if it.suite == args.suite]
    res = run_items(items)
    by = defaultdict(list)
    for r in res:
        by[r["criterion"]].append(r)
        print(f"{'ok  ' if r['ok'] else 'FAIL'} {r['criterion']:>2} {r['suite']:<16} {r['label']:<40} {r['seconds']:.3f}s")
    print()
    for c, rows in sorted(by.items()):
        bad = sum(not r["ok"] for r in rows)
        print(f"criterion {c:>2}: {'PASS' if not bad else 'FAIL'} ({len(rows)} items, {sum(r['seconds'] for r in rows):.2f}s)")
    return 0 if all(r["ok"] for r in res) else 1


if __name__ == "__main__":
    sys.exit(main())
