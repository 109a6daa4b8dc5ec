"""Numba vs numpy timings for the mod-p kernels, plus an end-to-end run.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sizes 50 100 200]

The end-to-end section runs one campaign in a subprocess per path, toggling
CMREG_DISABLE_NUMBA, so both timings include import and (for numba) the
cached-compile load.
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from cmreg import _kernels
from cmreg.ring import monomial_array

P = 32003


def bench(fn, repeat):
    fn()  # warm-up (JIT compile on the numba path)
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_rows(sizes, repeat):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        a = rng.integers(0, P, size=(n, n + n // 2), dtype=np.int64)
        assert _kernels.rank_mod_p(a, P, use_numba=True) == _kernels.rank_mod_p(a, P, use_numba=False)
        t_np = bench(lambda: _kernels.rank_mod_p(a, P, use_numba=False), repeat)
        t_nb = bench(lambda: _kernels.rank_mod_p(a, P, use_numba=True), repeat)
        rows.append((f"rank {n}x{n + n // 2}", t_np, t_nb))
    for nv, d in [(4, 10), (6, 8)]:
        monos = monomial_array(nv, d)
        leads = rng.integers(0, 4, size=(30, nv), dtype=np.int64)
        t_np = bench(lambda: _kernels.count_divisible(monos, leads, use_numba=False), repeat)
        t_nb = bench(lambda: _kernels.count_divisible(monos, leads, use_numba=True), repeat)
        rows.append((f"divisible {len(monos)} monos x 30 leads", t_np, t_nb))
    return rows


def end_to_end(trials):
    code = (
        "from cmreg.harness import CampaignConfig, run_campaign;"
        f"r = run_campaign(CampaignConfig('two-planes', trials={trials}, seed=1));"
        "print(r.count('pass'))"
    )
    out = {}
    for label, flag in [("numpy", "1"), ("numba", "0")]:
        env = dict(os.environ, CMREG_DISABLE_NUMBA=flag)
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-c", code], env=env, check=True, capture_output=True)
        out[label] = time.perf_counter() - t0
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--trials", type=int, default=15)
    args = ap.parse_args()
    if not _kernels.HAS_NUMBA:
        sys.exit("numba is not importable; nothing to compare")

    print(f"{'kernel':<34} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, t_np, t_nb in kernel_rows(args.sizes, args.repeat):
        print(f"{name:<34} {t_np:>10.5f} {t_nb:>10.5f} {t_np / t_nb:>7.1f}x")
    e2e = end_to_end(args.trials)
    print(f"{'two-planes campaign (subprocess)':<34} {e2e['numpy']:>10.2f} {e2e['numba']:>10.2f} {e2e['numpy'] / e2e['numba']:>7.1f}x")


if __name__ == "__main__":
    main()
