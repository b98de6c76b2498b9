"""Compare the compiled and pure-Python kernels on the survey workload.

    python benchmarks/bench_kernels.py --n 14 --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from forts import kernels
from forts.treegen import special_tree


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def run(n: int, repeat: int) -> list[tuple[str, str, float]]:
    results = []
    big = list(special_tree(48, 5, 9, 3).masks)
    for name, mod in sorted(kernels.available_backends().items()):
        levels = np.concatenate(list(mod.free_tree_chunks(n)))
        results.append((name, f"generate all trees, n={n} ({len(levels)})",
                        best_of(lambda: sum(len(c) for c in mod.free_tree_chunks(n)), repeat)))
        results.append((name, f"count forts over all trees, n={n}",
                        best_of(lambda: mod.count_forts_levels(levels), repeat)))
        results.append((name, "count forts, T(48,5,9,3)", best_of(lambda: mod.count_tree_forts(big), repeat)))
    return results


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=14)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    rows = run(args.n, args.repeat)
    base = {task: t for name, task, t in rows if name == "python"}
    print(f"{'backend':<8} {'task':<40} {'seconds':>10} {'speedup':>8}")
    for name, task, t in rows:
        print(f"{name:<8} {task:<40} {t:>10.4f} {base[task] / t:>7.1f}x")


if __name__ == "__main__":
    main()
