"""Time the compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on the same seeded inputs in both backends; outputs are
compared before timing so a speedup never hides a wrong answer.
"""

import argparse
import random
import sys
import timeit
from array import array

from topospace.knots import KnotDiagram, arcs
from topospace.kernels import _pykernels

try:
    from topospace.kernels import _ckernels
except ImportError:
    sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")


def random_flat(rng, n, hi=1000):
    flat = [0] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            flat[i * n + j] = flat[j * n + i] = rng.randint(1, hi)
    return flat


def ultra_flat(rng, n):
    # cophenetic matrix of a random caterpillar: every triple is isosceles
    heights = sorted(rng.sample(range(1, 10 * n), n))
    flat = [0] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            flat[i * n + j] = flat[j * n + i] = heights[j]
    return flat


def random_code(rng, crossings):
    ids = list(range(1, crossings + 1)) * 2
    rng.shuffle(ids)
    seen, code = set(), []
    for c in ids:
        over = c not in seen
        seen.add(c)
        code.append(c << 2 | over << 1 | 1)
    return code


def cases(rng):
    flat60 = random_flat(rng, 60)
    ultra80 = ultra_flat(rng, 80)
    code = random_code(rng, 12)
    # three figure-eights joined end to end: 12 arcs, no colouring, full search
    fig8 = "O{a}- U{b}+ O{c}+ U{a}- O{d}- U{c}+ O{b}+ U{d}-"
    chain = " ".join(fig8.format(a=4 * k + 1, b=4 * k + 2, c=4 * k + 3, d=4 * k + 4) for k in range(3))
    n_arcs, triples = arcs(KnotDiagram.parse(chain))
    return [
        ("closure n=60", "closure", (flat60, 60)),
        ("scan_triples n=80 ultrametric", "scan_triples", (ultra80, 80)),
        ("census n=80", "census", (ultra80, 80)),
        ("canonical 12 crossings", "canonical", (code,)),
        ("tricolorable 3 figure-eights", "tricolorable", (n_arcs, [a for t in triples for a in t])),
    ]


def to_native(args):
    return tuple(array("q", a) if isinstance(a, list) else a for a in args)


def normalize(value):
    if isinstance(value, array):
        return list(value)
    if isinstance(value, tuple):
        return tuple(normalize(v) for v in value)
    return value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    print(f"{'kernel':34} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, name, py_args in cases(rng):
        py_fn, c_fn = getattr(_pykernels, name), getattr(_ckernels, name)
        c_args = to_native(py_args)
        if normalize(py_fn(*py_args)) != normalize(c_fn(*c_args)):
            sys.exit(f"{label}: backends disagree")
        number = 1 if name == "closure" else 3
        py_t = min(timeit.repeat(lambda: py_fn(*py_args), number=number, repeat=args.repeat)) / number
        c_t = min(timeit.repeat(lambda: c_fn(*c_args), number=number, repeat=args.repeat)) / number
        print(f"{label:34} {py_t * 1e3:10.3f} {c_t * 1e3:10.3f} {py_t / c_t:7.1f}x")


if __name__ == "__main__":
    main()
