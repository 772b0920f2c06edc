"""Time the numba kernels against their numpy counterparts.

    python benchmarks/bench_kernels.py [--repeat 3] [--k 5]

Both implementations are imported directly, so SATDESIGN_BACKEND does not
matter here. Results are checked for equality before timings are printed.
"""

import argparse
import time

import numpy as np

from satdesign.kernels import _numba, _numpy
from satdesign.maxdet import _random_start


def best_time(fn, repeat):
    fn()  # warm-up, includes jit compilation or cache load
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--k", type=int, default=5, help="order for the exhaustive scan (<= 6)")
    args = p.parse_args()

    rng = np.random.default_rng(0)
    mats = rng.choice(np.array([-1, 1], dtype=np.int64), size=(20000, 12, 12))
    starts = [_random_start(rng, 15) for _ in range(4)]

    cases = {
        "det_batch 20000 x order 12": lambda m: lambda: m.det_batch(mats),
        f"exhaustive scan k={args.k}": lambda m: lambda: m.scan_chunks(args.k, 64),
        "hillclimb order 15 x 4 starts": lambda m: lambda: [m.hillclimb(s.copy())[0] for s in starts],
    }
    print(f"{'case':34s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, make in cases.items():
        t_nb, out_nb = best_time(make(_numba), args.repeat)
        t_np, out_np = best_time(make(_numpy), args.repeat)
        if not same(out_nb, out_np):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:34s} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}")


if __name__ == "__main__":
    main()
