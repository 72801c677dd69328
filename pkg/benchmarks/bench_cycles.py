"""Compare the compiled cycle-enumeration kernel against the pure-Python
fallback on progressively harder balls.

Run: python3 benchmarks/bench_cycles.py
"""

import time

from gdecomp import build_ball
from gdecomp._cycles_py import simple_cycles as py_cycles
from gdecomp.cycles import BACKEND
from gdecomp.fixtures import load_fixture

try:
    from gdecomp._cycles import simple_cycles as ext_cycles
except ImportError:
    ext_cycles = None


def adjacency(ball):
    return [sorted(ns) for ns in ball.adj]


CASES = [
    ("sl2z", 8, 6),
    ("sl2z", 10, 6),
    ("sl2z", 10, 8),
    ("c4*c2*c6", 8, 6),
]


def main():
    print(f"import-selected backend: {BACKEND}")
    header = f"{'case':24} {'cycles':>8} {'pure (s)':>10} {'ext (s)':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, radius, r in CASES:
        case = f"{name} R={radius} r={r}"
        ball = build_ball(load_fixture(name), radius)
        adj = adjacency(ball)
        t0 = time.perf_counter()
        ref = py_cycles(adj, r)
        t_py = time.perf_counter() - t0
        if ext_cycles is None:
            print(f"{case:24} {len(ref):>8} {t_py:>10.3f} {'n/a':>10} {'n/a':>8}")
            continue
        t0 = time.perf_counter()
        got = ext_cycles(adj, r)
        t_ext = time.perf_counter() - t0
        assert sorted(got) == sorted(ref), f"backend mismatch on {name}"
        ratio = t_py / t_ext if t_ext > 0 else float("inf")
        print(f"{case:24} {len(ref):>8} {t_py:>10.3f} {t_ext:>10.3f} {ratio:>7.1f}x")


if __name__ == "__main__":
    main()
