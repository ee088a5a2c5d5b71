"""Compare the compiled 2-cell join kernel against the pure-Python fallback.

Run from the repository root::

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --example vect:2 --repeat 1

The heavy preset (vect:2) scans ~1.2e7 candidate grids and is where the
compiled kernel pays off; the smaller presets mostly measure driver
overhead.
"""

from __future__ import annotations

import argparse
import time

from sqcat import kernel
from sqcat.gallery import example
from sqcat.nerve import diagonal_2_skeleton

PRESETS = ["finset:2", "grid:2", "vect:2"]


def run_once(sq, backend: str, max_grids: int) -> tuple[float, int]:
    start = time.perf_counter()
    cw = diagonal_2_skeleton(sq, max_grids=max_grids, backend=backend)
    return time.perf_counter() - start, cw.candidate_count


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--example", action="append", dest="examples",
                        help="gallery name; may repeat (default: "
                             + ", ".join(PRESETS) + ")")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-grids", type=int, default=20_000_000)
    args = parser.parse_args()

    backends = ["python"]
    if kernel.BACKEND == "cython":
        backends.insert(0, "cython")
    else:
        print("note: compiled kernel unavailable, timing the fallback only")

    print(f"{'example':<12} {'grids':>12} " +
          " ".join(f"{b + ' (s)':>12}" for b in backends) +
          ("   speedup" if len(backends) == 2 else ""))
    for name in args.examples or PRESETS:
        sq = example(name)
        grids = None
        best = {}
        for backend in backends:
            times = []
            for _ in range(args.repeat):
                dt, grids = run_once(sq, backend, args.max_grids)
                times.append(dt)
            best[backend] = min(times)
        row = f"{name:<12} {grids:>12} " + \
            " ".join(f"{best[b]:>12.3f}" for b in backends)
        if len(backends) == 2:
            row += f"   {best['python'] / best['cython']:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
