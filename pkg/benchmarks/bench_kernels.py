#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure numpy fallback.

Times the three hot kernels on several batch sizes (quadrature panels call
them with ~15..1000 points at a time) plus one representative end-to-end
oracle integral per backend.

Run:  python benchmarks/bench_kernels.py
"""

import os
import sys
import time

import numpy as np

from abflux._kernels import _pure

try:
    from abflux._kernels import _core
except ImportError:
    _core = None


def _time(fn, *args, repeat=7):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels():
    rng = np.random.default_rng(0)
    rows = []
    for size in (15, 240, 4000, 40000):
        x = rng.uniform(0.05, 300.0, size)
        w = x * np.exp(1j * rng.uniform(0.0, np.pi, size))
        z = rng.uniform(0.5, 20, size) + 1j * rng.uniform(-50, 50, size)
        for name, args in (
            ("bessel_j nu=0.3", ("bessel_j_arr", 0.3, x)),
            ("hankel1 nu=0.7", ("hankel1_arr", 0.7, w)),
            ("loggamma", ("loggamma_arr", z)),
        ):
            fn, *rest = args
            t_pure = _time(getattr(_pure, fn), *rest)
            t_core = _time(getattr(_core, fn), *rest) if _core else float("nan")
            rows.append((name, size, t_pure, t_core))
    return rows


def bench_oracle():
    """hankel-norm oracle wall time under each backend (fresh interpreter)."""
    import subprocess
    code = ("import time; t0=time.time(); "
            "from abflux import verify; verify.hankel_norm_check(0.3); "
            "print(time.time()-t0)")
    out = []
    for env_val in ("", "1"):
        env = dict(os.environ, ABFLUX_PURE=env_val)
        if not env_val:
            env.pop("ABFLUX_PURE")
        r = subprocess.run([sys.executable, "-c", code], env=env,
                           capture_output=True, text=True)
        out.append(float(r.stdout.strip()) if r.returncode == 0 else float("nan"))
    return out


def main():
    print(f"compiled core available: {_core is not None}")
    print(f"{'kernel':<18}{'n':>7}{'pure [ms]':>12}{'compiled [ms]':>15}{'speedup':>9}")
    for name, size, t_pure, t_core in bench_kernels():
        speed = t_pure / t_core if t_core == t_core else float("nan")
        print(f"{name:<18}{size:>7}{t_pure * 1e3:>12.3f}{t_core * 1e3:>15.3f}"
              f"{speed:>9.1f}")
    t_default, t_pure = bench_oracle()
    print(f"\nhankel-norm oracle end to end: default backend {t_default:.3f} s, "
          f"pure {t_pure:.3f} s")


if __name__ == "__main__":
    main()
