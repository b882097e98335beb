"""Time the strict-law kernels under both backends.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import os
import time

from omegacat import kernels
from omegacat.fixtures import posets2, vecf2
from omegacat.validate import validate_strict


def timed(fn, repeat):
    fn()  # compile / warm caches
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    cases = {
        "VecF2 d=2": vecf2(2),
        "VecF2 d=2 N=2": vecf2(2, 2),
        "posets (5 objects)": posets2(),
    }
    print(f"{'case':<22}{'cells':>7}{'numpy s':>11}{'numba s':>11}")
    for name, P in cases.items():
        row = []
        for choice in ("numpy", "numba"):
            os.environ["OMEGACAT_KERNELS"] = choice
            if choice == "numba" and not kernels.HAVE_NUMBA:
                row.append(float("nan"))
                continue
            row.append(timed(lambda: validate_strict(P), args.repeat))
        print(f"{name:<22}{len(P):>7}{row[0]:>11.4f}{row[1]:>11.4f}")
    os.environ.pop("OMEGACAT_KERNELS", None)


if __name__ == "__main__":
    main()
