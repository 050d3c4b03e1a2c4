"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat R]
"""

import argparse
import time

import numpy as np

from fdradius import _core_py
from fdradius.engine import sphere_samples

try:
    from fdradius import _core
except ImportError:
    _core = None


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled extension not built; only the fallback is available")
        return 1

    rng = np.random.default_rng(0)
    cases = []
    for n, d in ((2, 3), (3, 4), (2, 6)):
        mats = (rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))) / np.sqrt(2)
        cases.append((f"n={n} d={d}", mats))

    print(f"{'kernel':14s} {'case':10s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s} {'max diff':>10s}")
    for label, mats in cases:
        d = mats.shape[1]
        X = sphere_samples(d, 200_000, 1)
        tp, (fp, vp) = _best(lambda: _core_py.moduli(mats, X), args.repeat)
        tc, (fc, vc) = _best(lambda: _core.moduli(mats, X), args.repeat)
        diff = max(np.max(np.abs(fp - fc)), np.max(np.abs(vp - vc)))
        print(f"{'moduli':14s} {label:10s} {1e3 * tp:10.2f} {1e3 * tc:12.2f} {tp / tc:8.1f} {diff:10.1e}")

        X0 = sphere_samples(d, 64, 2)
        level = 0.5 * np.sum(np.linalg.norm(mats, ord=2, axis=(1, 2)))
        for obj, name in ((_core_py.FORM, "form"), (_core_py.VECTOR, "vector")):
            run_p = lambda: _core_py.ascend(mats, X0, obj, level, 500, 0.1, 1e-9, 1e-12, p=2.0)
            run_c = lambda: _core.ascend(mats, X0, obj, level, 500, 0.1, 1e-9, 1e-12, 2.0)
            tp, rp = _best(run_p, args.repeat)
            tc, rc = _best(run_c, args.repeat)
            ok = rp[4] & rc[4]
            diff = float(np.max(np.abs(rp[1][ok] - rc[1][ok]))) if ok.any() else float("nan")
            print(f"{'ascent/' + name:14s} {label:10s} {1e3 * tp:10.2f} {1e3 * tc:12.2f} {tp / tc:8.1f} {diff:10.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
