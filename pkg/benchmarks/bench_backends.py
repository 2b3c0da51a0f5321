"""Compare the compiled and pure-Python Jacobi kernels.

Usage::

    python3 benchmarks/bench_backends.py [--repeat N]

Times ``herm_eigen`` on random Hermitian matrices of every supported size
and a full ``analyze`` call (four eigenproblems per state), per backend.
"""
import argparse
import timeit

import numpy as np

from telemix import metrics, numerics, states


def _hermitian(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = sorted(numerics.KERNELS)
    if "compiled" not in backends:
        print("compiled kernel not built; only the Python fallback is available")

    cases = [(f"herm_eigen n={n}", lambda b, h=_hermitian(n, n): numerics.herm_eigen(h, backend=b))
             for n in numerics.ALLOWED_DIMS]
    rho = states.make_state(states.WernerDerivative(0.9, 0.7))
    cases.append(("analyze(wd state)", lambda b: metrics.analyze(rho, backend=b)))

    print(f"{'case':<22}" + "".join(f"{b + ' [us]':>16}" for b in backends)
          + ("   speedup" if len(backends) > 1 else ""))
    for name, fn in cases:
        times = {}
        for b in backends:
            timer = timeit.Timer(lambda: fn(b))
            number, _ = timer.autorange()
            times[b] = min(timer.repeat(args.repeat, number)) / number * 1e6
        row = f"{name:<22}" + "".join(f"{times[b]:>16.1f}" for b in backends)
        if len(backends) > 1:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
