"""Time the compiled closure kernel against the Python fallback.

    python3 benchmarks/bench_kernels.py --rules 40 --repeat 2000

Each case is a random rule set over `--atoms` atoms; both kernels must
agree on every closure before any timing is reported.
"""

import argparse
import random
import timeit

from artifact import _closure_py

try:
    from artifact import _closure as _compiled
except ImportError:
    _compiled = None


def make_case(rng, atoms, rules, max_body):
    width = 2 * atoms
    heads, bodies = [], []
    for _ in range(rules):
        heads.append(rng.randrange(width))
        body = 0
        for _ in range(rng.randint(0, max_body)):
            body |= 1 << rng.randrange(width)
        bodies.append(body)
    seed = 0
    for _ in range(max(1, atoms // 4)):
        seed |= 1 << rng.randrange(width)
    return heads, bodies, seed, width


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=24)
    ap.add_argument("--rules", type=int, default=40)
    ap.add_argument("--body", type=int, default=2)
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cases = [make_case(rng, args.atoms, args.rules, args.body) for _ in range(args.cases)]

    def run(kernel):
        for heads, bodies, seed, width in cases:
            kernel.closure(heads, bodies, seed, width)

    kernels = [("python", _closure_py)]
    if _compiled is None:
        print("compiled kernel not built; timing the Python fallback only")
    else:
        for heads, bodies, seed, width in cases:
            if _compiled.closure(heads, bodies, seed, width) != _closure_py.closure(heads, bodies, seed, width):
                raise SystemExit("kernels disagree")
        kernels.append(("cython", _compiled))

    per_call = {}
    for name, kernel in kernels:
        best = min(timeit.repeat(lambda: run(kernel), number=args.repeat, repeat=3))
        per_call[name] = best / (args.repeat * len(cases)) * 1e6
        print(f"{name:<8}{per_call[name]:10.2f} us per closure")
    if len(per_call) == 2:
        print(f"speedup  {per_call['python'] / per_call['cython']:9.1f}x")


if __name__ == "__main__":
    main()
