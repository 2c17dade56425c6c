"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--n 7] [--repeat 3]
"""
import argparse
import timeit

from posetlin import _pycore
from posetlin.poset import antichain, from_relations, ordinal_sum

try:
    from posetlin import _core
except ImportError:
    _core = None


def workloads(n):
    # a zigzag fence plus a wide antichain layer keeps every kernel busy
    fence = from_relations(n, [(i, i + 1) if i % 2 else (i + 1, i) for i in range(n - 1)])
    wide = ordinal_sum(antichain(n // 2), antichain(n - n // 2))
    m = n - 1
    fam = _pycore.plucking(n, fence.up, tuple(reversed(range(n))))
    return [
        ("count_extensions", lambda k: k.count_extensions(n, fence.up)),
        ("m_coefficients", lambda k: k.m_coefficients(n, wide.up)),
        ("reversing", lambda k: k.reversing(n, fence.up)),
        ("f_direct", lambda k: k.f_direct(n, fence.up)),
        ("chi_transform", lambda k: k.chi_transform(fam, m)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _pycore)] + ([("cython", _core)] if _core else [])
    print(f"n = {args.n}")
    print(f"{'kernel':18}" + "".join(f"{name:>12}" for name, _ in backends) + "     speedup")
    for name, call in workloads(args.n):
        times = []
        for _, mod in backends:
            times.append(min(timeit.repeat(lambda: call(mod), number=1, repeat=args.repeat)))
        row = f"{name:18}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
