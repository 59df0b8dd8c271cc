"""Compare the compiled and pure-Python star-product kernels.

    python benchmarks/bench_star.py [--repeat 5] [--terms 12] [--degree 4]

Inputs are random dense-ish symbols in n = 3; both backends receive the
same integer-numerator term lists, and their outputs are checked equal.
"""
import argparse
import random
import timeit

from wkbcalc import _kernels_py

try:
    from wkbcalc import _ckernels
except ImportError:
    _ckernels = None


def random_terms(rng, n, count, max_deg):
    out = []
    for _ in range(count):
        mono = [0] * (2 * n)
        for _ in range(rng.randint(0, max_deg)):
            mono[rng.randrange(2 * n)] += 1
        out.append((rng.randint(-3, 3), tuple(mono), rng.randint(-99, 99) or 1))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--terms", type=int, default=12)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cases = [
        (random_terms(rng, args.n, args.terms, args.degree), random_terms(rng, args.n, args.terms, args.degree))
        for _ in range(20)
    ]
    backends = {"python": _kernels_py}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled kernels not built; timing the Python fallback only")

    ref = [_kernels_py.star_terms(p, q, args.n, None) for p, q in cases]
    timings = {}
    for name, mod in backends.items():
        assert [mod.star_terms(p, q, args.n, None) for p, q in cases] == ref, name
        best = min(
            timeit.repeat(lambda: [mod.star_terms(p, q, args.n, None) for p, q in cases], number=1, repeat=args.repeat)
        )
        timings[name] = best
        print(f"star  {name:7s} {best * 1e3:9.2f} ms  (20 products, {args.terms}x{args.terms} terms, degree <= {args.degree})")
    for name, mod in backends.items():
        best = min(timeit.repeat(lambda: [mod.adjoint_terms(p, args.n, None) for p, _ in cases], number=1, repeat=args.repeat))
        print(f"adj   {name:7s} {best * 1e3:9.2f} ms")
    if "cython" in timings:
        print(f"speedup (star): {timings['python'] / timings['cython']:.1f}x")


if __name__ == "__main__":
    main()
