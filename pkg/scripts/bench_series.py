"""Timing comparison of the compiled series kernel against its pure
fallback, on the hot power-block loop.

Run from a checkout with the extension built:
    python3 scripts/bench_series.py [terms]

Both backends are driven over the same range and must produce the
same block sums; the report gives terms/second for each and the ratio.
"""

import sys
import time

from schurbound import _series_py

try:
    from schurbound import _series
except ImportError:
    _series = None


def drive(mod, terms, p=6.0, delta=0.125, block=4096):
    a0 = b0 = a1 = b1 = 0.0
    sums = []
    t0 = time.perf_counter()
    done = 0
    while done < terms:
        stop = min(done + block, terms)
        blocks, a0, b0, a1, b1 = mod.power_blocks(
            1.0, 0.0, 1.0, 0.0, 0.0, delta, p, done, stop, block, a0, b0, a1, b1
        )
        sums.extend(blocks)
        done = stop
    return time.perf_counter() - t0, sums


def main():
    terms = int(sys.argv[1]) if len(sys.argv) > 1 else 2_000_000
    t_py, sums_py = drive(_series_py, terms)
    print(f"pure:     {terms / t_py:12.0f} terms/s  ({t_py:.3f} s)")
    if _series is None:
        print("compiled: not built")
        return
    t_c, sums_c = drive(_series, terms)
    print(f"compiled: {terms / t_c:12.0f} terms/s  ({t_c:.3f} s)")
    print(f"speedup:  {t_py / t_c:.1f}x")
    if sums_py == sums_c:
        print("block sums bit-identical")
    else:
        worst = max(
            abs(x - y) / max(abs(x), 1e-300) for x, y in zip(sums_py, sums_c)
        )
        print(f"block sums differ; worst relative gap {worst:.3e}")


if __name__ == "__main__":
    main()
