"""Time the compiled and numpy kernels on one Lloyd step.

    python benchmarks/bench_kernels.py --count 200000 --dim 3 --repeat 20
"""
import argparse
import timeit

import numpy as np

from twospheres import _pykernels
from twospheres.empirical import sample_spheres

try:
    from twospheres import _ckernels
except ImportError:
    _ckernels = None


def lloyd_step(mod, points, c1, c2):
    labels, sums, counts = mod.assign_accumulate(points, c1, c2)
    means = sums / counts[:, None]
    return mod.cluster_sse(points, labels, means[0], means[1])


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=200_000)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    points = np.ascontiguousarray(sample_spheres(args.dim, args.count, seed=args.seed).points)
    c1 = np.zeros(args.dim)
    c2 = np.zeros(args.dim)
    c1[0], c2[0] = 0.0, 2.0

    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("compiled extension not built; timing numpy fallback only")

    results = {}
    for name, mod in backends:
        sse = lloyd_step(mod, points, c1, c2)
        best = min(timeit.repeat(lambda: lloyd_step(mod, points, c1, c2), number=1, repeat=args.repeat))
        results[name] = best
        print(f"{name:>7}: {best * 1e3:8.2f} ms/step  (sse {sse:.6f})")
    if len(results) == 2:
        print(f"speedup: {results['python'] / results['cython']:.2f}x")


if __name__ == "__main__":
    main()
