"""Time the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from harrisar import _kernels_py

try:
    from harrisar import _kernels as _compiled
except ImportError:
    _compiled = None


def cases(rng):
    steps, paths, k = 200, 2000, 2
    y0 = rng.random((paths, k))
    innov = rng.random((steps, paths, k))
    apply = rng.random((steps, paths, k)) < 0.5
    x = rng.random(4096)
    y = rng.random(4096)
    target = rng.normal(size=200_000) * 20
    return {
        "ar_recursion (200x2000x2, min)": lambda m: m.ar_recursion(_kernels_py.OP_MIN, 0.6, y0, innov, apply),
        "truncated_convolve (n=4096)": lambda m: m.truncated_convolve(x, y, 4096),
        "solve_log_periodic (2e5 points)": lambda m: m.solve_log_periodic(target, 1.2, 0.08, 2 * np.pi / np.log(2)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    backends = {"python": _kernels_py}
    if _compiled is not None:
        backends["cython"] = _compiled
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':36s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in cases(rng).items():
        times = {}
        for b, mod in backends.items():
            fn(mod)  # warm up
            times[b] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        row = f"{name:36s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times.values())
        if len(times) == 2:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)
        if len(backends) == 2:
            np.testing.assert_allclose(fn(_compiled), fn(_kernels_py), rtol=1e-12, atol=1e-12)


if __name__ == "__main__":
    main()
