"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot paths: the pairwise similarity numerator (best-alignment
scan plus weighted match sum) over a slice of the constrained candidate
space, and the exact maximum-clique search on a screening graph.

Usage:
    python benchmarks/bench_kernels.py [--n 8] [--pairs 20000] [--clique-n 5]
"""

import argparse
import random
import time

from dnacode import _kernels_py
from dnacode.seq import ConstraintSpec, enumerate_constrained, reverse_complement

try:
    from dnacode import _kernels_c
except ImportError:
    _kernels_c = None


def bench_pair_kernel(impl, pairs, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        acc = 0.0
        for u, v in pairs:
            acc += impl.best_match_weight_sum(u, v, 1.0, 0.0)
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return best, acc


def build_screening_graph(n, t_th):
    """Adjacency bitmasks of the pair-compatibility graph at threshold t_th."""
    words = enumerate_constrained(ConstraintSpec(n=n))
    info = []
    for w in words:
        r = reverse_complement(w)
        bu, br = w.encode(), r.encode()
        info.append((bu, br, _kernels_py.self_weight_sum(bu, 1.0, 0.0),
                     _kernels_py.self_weight_sum(br, 1.0, 0.0)))
    impl = _kernels_c if _kernels_c is not None else _kernels_py

    def tau(a, b, sa, sb):
        if a == b:
            return 1.0
        if b < a:
            a, b = b, a
        return impl.best_match_weight_sum(a, b, 1.0, 0.0) / min(sa, sb)

    limit = t_th + 1e-12
    verts = [e for e in info if tau(e[0], e[1], e[2], e[3]) <= limit]
    masks = [0] * len(verts)
    for i, (bu, bru, su, sru) in enumerate(verts):
        for j in range(i + 1, len(verts)):
            bv, brv, sv, srv = verts[j]
            if (tau(bu, bv, su, sv) <= limit
                    and tau(bu, brv, su, srv) <= limit
                    and tau(bv, bru, sv, sru) <= limit):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=8, help="sequence length for pair timing")
    parser.add_argument("--pairs", type=int, default=20000, help="number of pairs to score")
    parser.add_argument("--repeat", type=int, default=3, help="timing repeats (best of)")
    parser.add_argument("--clique-n", type=int, default=5, dest="clique_n",
                        help="sequence length for the clique benchmark")
    parser.add_argument("--clique-t", type=float, default=0.4, dest="clique_t",
                        help="similarity threshold for the clique benchmark")
    args = parser.parse_args()

    rng = random.Random(7)
    words = enumerate_constrained(ConstraintSpec(n=args.n))
    encoded = [w.encode() for w in words]
    pairs = [(rng.choice(encoded), rng.choice(encoded)) for _ in range(args.pairs)]

    print(f"pair kernel: {args.pairs} scores at n={args.n}")
    t_py, acc_py = bench_pair_kernel(_kernels_py, pairs, args.repeat)
    rate = args.pairs / t_py
    print(f"  pure      {t_py * 1e3:8.1f} ms  ({rate:,.0f} pairs/s)")
    if _kernels_c is not None:
        t_c, acc_c = bench_pair_kernel(_kernels_c, pairs, args.repeat)
        assert acc_c == acc_py, "backends disagree"
        rate = args.pairs / t_c
        print(f"  compiled  {t_c * 1e3:8.1f} ms  ({rate:,.0f} pairs/s)")
        print(f"  speedup   {t_py / t_c:8.1f}x")
    else:
        print("  compiled  not built")

    print(f"max clique: screening graph at n={args.clique_n}, t_th={args.clique_t}")
    masks = build_screening_graph(args.clique_n, args.clique_t)
    edges = sum(m.bit_count() for m in masks) // 2
    print(f"  instance  {len(masks)} vertices, {edges} edges")
    t0 = time.perf_counter()
    size_py = _kernels_py.max_clique_size(masks)
    t_py = time.perf_counter() - t0
    print(f"  pure      {t_py * 1e3:8.1f} ms  (clique {size_py})")
    if _kernels_c is not None:
        t0 = time.perf_counter()
        size_c = _kernels_c.max_clique_size(masks)
        t_c = time.perf_counter() - t0
        assert size_c == size_py, "backends disagree"
        print(f"  compiled  {t_c * 1e3:8.1f} ms  (clique {size_c})")
        print(f"  speedup   {t_py / t_c:8.1f}x")
    else:
        print("  compiled  not built")


if __name__ == "__main__":
    main()
