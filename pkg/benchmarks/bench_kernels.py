"""Benchmark the numba kernels against the pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py

Both implementations are always importable from cyclid._kernels; the
library itself selects numba unless CYCLID_DISABLE_NUMBA is set.
"""

import time

import numpy as np

from cyclid import _kernels as K
from cyclid import gf2

rng = np.random.default_rng(0)


def bench(label, fn, *args, repeat=5):
    fn(*args)  # warm up / JIT
    best = min(
        (lambda t0: (fn(*args), time.perf_counter() - t0)[1])(time.perf_counter())
        for _ in range(repeat)
    )
    print(f"  {label:<46} {best * 1e3:9.2f} ms")
    return best


def main():
    if not K.HAVE_NUMBA:
        print("numba unavailable or disabled; nothing to compare")
        return
    print(f"active backend: {K.BACKEND}")

    print("residue tally, dim=22, deg f=16")
    basis = rng.integers(0, 1 << 16, size=22, dtype=np.uint64)
    a = bench("numba gray-code tally", K.residue_counts_dense_nb, basis, 16)
    b = bench("numpy doubling + bincount", K.residue_counts_dense_np, basis, 16)
    print(f"  speedup numba vs numpy: {b / a:.1f}x")

    print("weight distribution, n=31, k=21")
    g = gf2.mul(gf2.parse_poly("x^5+x^2+1"), gf2.parse_poly("x^5+x^4+x^3+x^2+1"))
    a = bench("numba gray-code popcount", K.weight_counts_nb, g, 21, 31)
    b = bench("numpy doubling + bitwise_count", K.weight_counts_np, g, 21, 31)
    print(f"  speedup numba vs numpy: {b / a:.1f}x")

    print("orthogonality count, dim=20")
    basis = rng.integers(0, 1 << 24, size=20, dtype=np.uint64)
    a = bench("numba", K.ortho_zero_count_nb, basis, 0x5A5A5A)
    b = bench("numpy", K.ortho_zero_count_np, basis, 0x5A5A5A)
    print(f"  speedup numba vs numpy: {b / a:.1f}x")

    print("block remainders, 1M words, deg f=10")
    vals = rng.integers(0, 1 << 40, size=1_000_000, dtype=np.uint64)
    f = int(gf2.factor_xn1(33)[2][0])
    a = bench("numba scalar loop", K.rem_many_nb, vals, f)
    b = bench("numpy vectorized bit sweep", K.rem_many_np, vals, f)
    print(f"  speedup numba vs numpy: {b / a:.1f}x")

    print("error-residue DP, n=24, deg f=18")
    ff = 1
    for p_, m_ in gf2.factor_xn1(24):
        for _ in range(m_):
            if gf2.degree(ff) + gf2.degree(p_) <= 18:
                ff = gf2.mul(ff, p_)
    masks = np.empty(24, dtype=np.int64)
    r = 1
    for i in range(24):
        masks[i] = r
        r = gf2.rem(r << 1, ff)
    deg = gf2.degree(ff)
    a = bench("numba in-place DP", K.bsc_residue_dp_nb, masks, 0.05, deg)
    b = bench("numpy fancy-index DP", K.bsc_residue_dp_np, masks, 0.05, deg)
    print(f"  speedup numba vs numpy: {b / a:.1f}x")

    print("xor convolution, 2^18")
    x = rng.random(1 << 18)
    x /= x.sum()
    y = rng.random(1 << 18)
    y /= y.sum()
    a = bench("numba in-place transform", K.xor_convolve_nb, x, y)
    b = bench("numpy reshape transform", K.xor_convolve_np, x, y)
    print(f"  speedup numba vs numpy: {b / a:.1f}x")


if __name__ == "__main__":
    main()
