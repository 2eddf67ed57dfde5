"""Benchmark the compiled tree kernel against the pure-Python fallback.

Times the three hot workloads (canonical construction, grafting-product
expansion, iterated coproduct splitting) on identical inputs through each
backend's own API and prints a speedup table.

Usage: python benchmarks/bench_kernel.py [--degree N] [--repeat R]
"""

import argparse
import time

from treelie import _kernel_py

try:
    from treelie import _kernel_c
except ImportError:
    _kernel_c = None


def build_levels(kernel, letters, max_degree):
    """All canonical trees per degree, built through the backend under test."""
    levels = {1: [kernel.leaf(a) for a in sorted(letters)]}
    for n in range(2, max_degree + 1):
        seen = set()
        for d1 in range(1, n):
            for s in levels[d1]:
                for t in levels[n - d1]:
                    for i in range(s.degree):
                        seen.add(kernel.graft_at(s, i, t))
        levels[n] = sorted(seen, key=lambda t: t.key)
    return levels


def workload_construction(kernel, max_degree):
    levels = build_levels(kernel, ["a", "b"], max_degree)
    return sum(len(v) for v in levels.values())


def workload_products(kernel, max_degree):
    levels = build_levels(kernel, ["a"], max_degree)
    flat = [t for level in levels.values() for t in level]
    acc = {}
    for s in flat:
        for t in flat:
            if s.degree + t.degree > max_degree + 1:
                continue
            for g, m in kernel.prelie_counts(s, t).items():
                acc[g] = acc.get(g, 0) + m
    return len(acc)


def workload_coproducts(kernel, max_degree, rounds=40):
    levels = build_levels(kernel, ["a"], max_degree)
    flat = [t for level in levels.values() for t in level]
    total = 0
    for _ in range(rounds):
        for t in flat:
            # split every term of the coproduct once more, mimicking Delta^2
            for left, right in kernel.coproduct_terms(t):
                total += len(kernel.coproduct_terms(left))
    return total


WORKLOADS = [
    ("construction (2 letters)", workload_construction),
    ("grafting products (1 letter)", workload_products),
    ("iterated coproducts (1 letter)", workload_coproducts),
]


def run(kernel, max_degree, repeat):
    results = {}
    for name, fn in WORKLOADS:
        best = float("inf")
        value = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            value = fn(kernel, max_degree)
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, value)
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--degree", type=int, default=7)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", _kernel_py)]
    if _kernel_c is not None:
        backends.append(("cython", _kernel_c))
    else:
        print("compiled kernel not available; timing the fallback only")

    timings = {name: run(mod, args.degree, args.repeat) for name, mod in backends}

    width = max(len(n) for n, _ in WORKLOADS)
    header = "%-*s  %10s" % (width, "workload", "python")
    if "cython" in timings:
        header += "  %10s  %8s" % ("cython", "speedup")
    print(header)
    for name, _ in WORKLOADS:
        py_t, py_v = timings["python"][name]
        line = "%-*s  %9.3fs" % (width, name, py_t)
        if "cython" in timings:
            cy_t, cy_v = timings["cython"][name]
            if cy_v != py_v:
                raise SystemExit("backends disagree on %r: %r vs %r" % (name, py_v, cy_v))
            line += "  %9.3fs  %7.2fx" % (cy_t, py_t / cy_t if cy_t else float("inf"))
        print(line)


if __name__ == "__main__":
    main()
