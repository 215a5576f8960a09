"""Time the numba and numpy backends of the two hot kernels.

    python3 benchmarks/bench_kernels.py [--lps 20] [--directions 2000] [--samples 2000000]

Each kernel is warmed up once (numba compiles on first call) and then timed
over several repeats; both backends must agree on every result.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from frir import worked_example, solve_frir
from frir._accel import NUMBA_ENABLED
from frir.generate import random_ensemble
from frir.verify import lp_oracle, monte_carlo


def _best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_lp(n_lps: int, n_dirs: int, repeats: int) -> dict[str, float]:
    rng = np.random.default_rng(0)
    cases = [(random_ensemble(rng), float(Q)) for Q in np.linspace(0.0, 0.9, n_lps)]
    out, values = {}, {}
    for backend in ("numba", "numpy"):
        lp_oracle(cases[0][0], 0.1, n_dirs, backend)  # warm-up / compile
        values[backend] = [lp_oracle(e, Q, n_dirs, backend).P_cor_lp for e, Q in cases]
        out[backend] = _best_of(lambda: [lp_oracle(e, Q, n_dirs, backend) for e, Q in cases], repeats)
    assert np.allclose(values["numba"], values["numpy"], rtol=0, atol=1e-12), "backends disagree on LP optima"
    return out


def bench_mc(n_samples: int, repeats: int) -> dict[str, float]:
    ens = worked_example()
    povm = solve_frir(ens, 0.3).povm
    out, counts = {}, {}
    for backend in ("numba", "numpy"):
        monte_carlo(ens, povm, 1000, 0, backend)
        counts[backend] = monte_carlo(ens, povm, n_samples, 0, backend).counts
        out[backend] = _best_of(lambda: monte_carlo(ens, povm, n_samples, 0, backend), repeats)
    assert np.array_equal(counts["numba"], counts["numpy"]), "backends disagree on Monte-Carlo counts"
    return out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lps", type=int, default=20)
    p.add_argument("--directions", type=int, default=2000)
    p.add_argument("--samples", type=int, default=2_000_000)
    p.add_argument("--repeats", type=int, default=3)
    args = p.parse_args()
    if not NUMBA_ENABLED:
        raise SystemExit("numba is disabled (FRIR_DISABLE_NUMBA) or missing; nothing to compare")

    rows = [
        (f"simplex LP x{args.lps} ({args.directions} dirs)", bench_lp(args.lps, args.directions, args.repeats)),
        (f"Monte Carlo ({args.samples:,} samples)", bench_mc(args.samples, args.repeats)),
    ]
    print(f"{'kernel':<36}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, t in rows:
        print(f"{name:<36}{t['numba']:>12.4f}{t['numpy']:>12.4f}{t['numpy'] / t['numba']:>9.2f}x")


if __name__ == "__main__":
    main()
