"""Run every algebraic law on a range of seeds and report violating seeds.

    python3 scripts/law_sweep.py --seeds 5000
"""
import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from laws import LAWS, interpret_is_the_composite  # noqa: E402


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=1000)
    p.add_argument("--start", type=int, default=0)
    a = p.parse_args()
    laws = dict(LAWS, **{"interpret is the composite": interpret_is_the_composite})
    bad = 0
    for name, law in laws.items():
        t = time.perf_counter()
        failed = []
        for seed in range(a.start, a.start + a.seeds):
            try:
                law(random.Random(seed))
            except AssertionError:
                failed.append(seed)
        bad += len(failed)
        print(f"{name:40} {len(failed):5} violations  {time.perf_counter() - t:6.1f}s"
              + (f"  first seeds {failed[:5]}" if failed else ""))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
