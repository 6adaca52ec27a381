"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import cmath
import random
import timeit

from selberglab import _kernels_py

try:
    from selberglab import _kernels as compiled
except ImportError:
    compiled = None


def workloads():
    rng = random.Random(0)
    zs = [complex(rng.uniform(-20, 20), rng.uniform(-40, 40)) for _ in range(200)]
    xs = [rng.uniform(-10, 30) for _ in range(200)]
    coeffs = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(400)]
    ws = [cmath.rect(rng.uniform(0, 5), rng.uniform(-3, 3)) for _ in range(50)]
    return {
        "loggamma x200": lambda k: [k.loggamma(z) for z in zs],
        "rgamma_real x200": lambda k: [k.rgamma_real(x) for x in xs],
        "qseries_sum 400 terms x20": lambda k: [k.qseries_sum(coeffs, complex(0.1 * j, 0.05), 400) for j in range(20)],
        "mittag_leffler x50": lambda k: [k.mittag_leffler_sum(-0.5, w, 1e-16, 500) for w in ws],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':28s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, fn in workloads().items():
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:28s} {t_py:10.2f} {'n/a':>12s} {'n/a':>8s}")
            continue
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:28s} {t_py:10.2f} {t_c:12.2f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
