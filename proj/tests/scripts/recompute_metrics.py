#!/usr/bin/env python3
"""Recompute NDCG and mAP from exported rankings and compare with report.json.

Reads rankings_<method>.json files written by `collabrec experiment` and
applies the metric definitions directly to the stored grades, without using
any collabrec code.
"""

import argparse
import json
import math
import pathlib
import sys


def dcg(grades, depth):
    return sum((2 ** g - 1) / math.log2(rank + 2) for rank, g in enumerate(grades[:depth]))


def ndcg(grades, depth):
    best = dcg(sorted(grades, reverse=True), depth)
    return 0.0 if best == 0 else dcg(grades, depth) / best


def average_precision(relevant):
    m = sum(relevant)
    if m == 0:
        return None
    hits = 0
    total = 0.0
    for k, rel in enumerate(relevant, start=1):
        if rel:
            hits += 1
            total += hits / k
    return total / m


def recompute(path):
    doc = json.loads(path.read_text())
    depth = doc["ndcg_depth"]
    cut = doc["relevant_grade_min"]
    nd = [ndcg(q["grades"], depth) for q in doc["queries"]]
    aps = [average_precision([g >= cut for g in q["grades"]]) for q in doc["queries"]]
    aps = [a for a in aps if a is not None]
    return doc["technique"], sum(nd) / len(nd), (sum(aps) / len(aps) if aps else None)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output_dir", type=pathlib.Path)
    parser.add_argument("--tolerance", type=float, default=1e-9)
    args = parser.parse_args()

    report = json.loads((args.output_dir / "report.json").read_text())
    reported = {m["technique"]: m for m in report["methods"]}
    failed = False
    for path in sorted(args.output_dir.glob("rankings_*.json")):
        technique, nd, mp = recompute(path)
        ref = reported[technique]
        dn = abs(nd - ref["ndcg"])
        dm = abs(mp - ref["map"]) if mp is not None and ref["map"] is not None else 0.0
        ok = dn <= args.tolerance and dm <= args.tolerance
        failed |= not ok
        print(f"{'ok  ' if ok else 'FAIL'} {technique:10s} ndcg={nd:.12f} (|d|={dn:.1e}) "
              f"map={mp:.12f} (|d|={dm:.1e})")
    if not reported:
        print("no methods in report", file=sys.stderr)
        return 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
