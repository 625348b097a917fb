"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 20000]

Every kernel is run on identical inputs in both backends; the table shows
the best time per call, the speed-up and the largest relative difference.
"""
import argparse
import time

import numpy as np

from xilab._kernels import IMPLEMENTATIONS


def best_time(fn, args, repeat):
    fn(*args)  # warm-up (triggers compilation for numba)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def max_rel(a, b):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    scale = np.maximum(np.abs(b), 1e-300)
    return float(np.max(np.abs(a - b) / scale))


def cases(size, rng):
    t = rng.uniform(-3.0, 3.0, size)
    x = rng.uniform(0.05, 10.0, size)
    nodes = np.sort(rng.uniform(0.0, 4.0, 15 * (size // 150)))
    wk = rng.uniform(0.0, 1.0, nodes.size)
    wg = rng.uniform(0.0, 1.0, nodes.size)
    omegas = np.linspace(0.0, 30.0, 100)
    return {
        "e0": (t,),
        "de0": (t,),
        "theta_w": (x,),
        "panel_trig": (nodes, wk, wg, omegas, False),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if "numba" not in IMPLEMENTATIONS:
        raise SystemExit("numba is not importable; nothing to compare")
    inputs = cases(args.size, np.random.default_rng(args.seed))

    print(f"{'kernel':<12}{'numpy [ms]':>12}{'numba [ms]':>12}{'speed-up':>10}{'max rel diff':>14}")
    for name, call in inputs.items():
        ref = IMPLEMENTATIONS["numpy"][name]
        fast = IMPLEMENTATIONS["numba"][name]
        t_np = best_time(ref, call, args.repeat)
        t_nb = best_time(fast, call, args.repeat)
        out_np, out_nb = ref(*call), fast(*call)
        if isinstance(out_np, tuple):
            out_np, out_nb = out_np[0], out_nb[0]
        print(f"{name:<12}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>10.1f}{max_rel(out_nb, out_np):>14.2e}")


if __name__ == "__main__":
    main()
