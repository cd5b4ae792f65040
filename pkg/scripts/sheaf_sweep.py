"""Compare the sheaf condition with pullback preservation on a truncated site.

Writes a summary and one JSON line per disagreement; progress goes to stderr.

    python3 scripts/sheaf_sweep.py --sorts a,b --fiber 2 --out results/sweep_2sort
"""
import argparse
import json
import sys
import time

from nomabt.sheafcheck import (AgreementReport, TruncatedSite, enumerate_presheaves,
                               judge, random_presheaves)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sorts", default="exp")
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--margin", type=int, default=1)
    p.add_argument("--pullbacks", choices=("all", "core"), default="all")
    p.add_argument("--fiber", type=int, default=2, help="exhaustive bound, negative to skip")
    p.add_argument("--labelled", action="store_true", help="do not prune isomorphic copies")
    p.add_argument("--random", type=int, default=0)
    p.add_argument("--random-fiber", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output prefix")
    a = p.parse_args()

    site = TruncatedSite(a.sorts.split(","), a.max_size, margin=a.margin, skeletal=True,
                         pullback_scope=a.pullbacks)
    report = AgreementReport(repr(site))
    start = time.time()
    with open(a.out + ".disagreements.jsonl", "w") as fh:
        streams = []
        if a.fiber >= 0:
            streams.append(enumerate_presheaves(site, a.fiber, up_to_iso=not a.labelled and a.fiber <= 2))
        if a.random:
            streams.append(random_presheaves(site, a.random, a.random_fiber, a.seed))
        for stream in streams:
            for x in stream:
                rec = judge(x)
                report.add(rec)
                if not rec.agrees:
                    fh.write(json.dumps(rec.as_json(), sort_keys=True, ensure_ascii=False) + "\n")
                if report.checked % 10000 == 0:
                    print(f"{report.checked} checked, {len(report.disagreements)} disagreements, "
                          f"{time.time() - start:.0f}s", file=sys.stderr, flush=True)
    summary = report.summary() + f"\nelapsed: {time.time() - start:.1f}s\n"
    with open(a.out + ".txt", "w") as fh:
        fh.write(summary)
    print(summary)


if __name__ == "__main__":
    main()
