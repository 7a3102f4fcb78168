"""Compare the compiled core with the pure-Python fallback on the hot kernels.

Run:  python benchmarks/bench_kernels.py [--scale 1.0]

Each kernel runs on both implementations with identical inputs; outputs are
checked for bit equality before timings are reported.
"""

import argparse
import time

import numpy as np

from betaflow import _fallback
from betaflow.models import build_case
from betaflow.rngdist import Beta, Gamma

try:
    from betaflow import _kernels
except ImportError:  # pragma: no cover
    _kernels = None


def cases(scale):
    m12 = build_case("m1_t2", {"z": 2.0, "p": 0.3}).mu.array
    dg = build_case("m2_dg", {"w": 2.0, "y": 1.0, "z": 3.0}).mu.array
    n = lambda k: max(1, int(k * scale))
    xs = np.linspace(0.0, 1.0, n(20000))
    return [
        ("beta sampler", "dist_batch", (np.array(Beta(0.5, 1.5).as_array()), 7, 0, n(20000))),
        ("gamma sampler", "dist_batch", (np.array(Gamma(2.5).as_array()), 7, 0, n(20000))),
        ("backward nest", "backward_batch", (m12, 1e-12, 100000, 7, 0, 0, n(2000))),
        ("forward chain", "forward_batch", (dg, 0.5, 200, 7, 0, 0, n(200))),
        ("gamma chain", "gamma_forward_batch", (dg, 4.0, 3.0, 200, 7, 0, 0, n(200))),
        ("left products", "left_product_batch", (m12, 1e-12, 100000, 0, 7, 0, 0, n(2000))),
        ("beta cdf", "beta_cdf", (xs, 2.5, 0.7)),
        ("urn", "polya_batch", (2.0, 3.0, 500, 7, 0, n(200))),
    ]


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return out, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scale", type=float, default=1.0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled core not built; nothing to compare")
        return
    print(f"{'kernel':16s} {'compiled':>11s} {'python':>11s} {'speedup':>9s}  identical")
    for label, name, fargs in cases(args.scale):
        c_out, c_t = timed(getattr(_kernels, name), fargs, args.repeat)
        p_out, p_t = timed(getattr(_fallback, name), fargs, 1)
        print(f"{label:16s} {c_t * 1e3:9.2f}ms {p_t * 1e3:9.2f}ms {p_t / c_t:8.0f}x  {same(c_out, p_out)}")


if __name__ == "__main__":
    main()
