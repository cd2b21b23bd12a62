"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from hilbpts import kernel
from hilbpts.hilbtangent import HomData, square_of_maximal
from hilbpts.kernel import _kernels_py, integer_row


def constraint_matrix(d):
    data = HomData(square_of_maximal(d))
    rows = [integer_row(r) for r in data.constraint_rows()]
    return f"Hom constraints at m^2, d={d}", rows, data.nunknowns


def random_matrix(n, m, bound, seed, density=0.5):
    rng = random.Random(seed)
    rows = [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(m)]
            for _ in range(n)]
    return f"random {n}x{m}, |a|<={bound}", rows, m


def best_time(fn, rows, ncols, repeat):
    return min(timeit.repeat(lambda: fn([list(r) for r in rows], ncols), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    cases = [constraint_matrix(d) for d in (4, 5, 6)]
    cases += [random_matrix(40, 40, 9, 1), random_matrix(80, 80, 9, 2),
              random_matrix(60, 60, 10 ** 12, 3), random_matrix(30, 30, 2 ** 70, 4)]
    compiled = kernel._compiled
    print(f"{'case':40s} {'rows':>6s} {'cols':>6s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, rows, ncols in cases:
        py = best_time(_kernels_py.echelon, rows, ncols, args.repeat)
        if compiled is None:
            print(f"{name:40s} {len(rows):6d} {ncols:6d} {py * 1e3:10.2f} {'n/a':>12s} {'':>8s}")
            continue
        a = _kernels_py.echelon([list(r) for r in rows], ncols)[1]
        b = compiled.echelon([list(r) for r in rows], ncols)[1]
        assert list(a) == list(b), name
        cc = best_time(compiled.echelon, rows, ncols, args.repeat)
        print(f"{name:40s} {len(rows):6d} {ncols:6d} {py * 1e3:10.2f} {cc * 1e3:12.2f} {py / cc:7.1f}x")


if __name__ == "__main__":
    main()
