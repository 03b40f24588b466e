"""Compiled vs pure-Python Howell kernel.

    python3 benchmarks/bench_howell.py [--repeat N]

Both kernels run on the same random matrices; outputs are compared before
any timing is reported.
"""
import argparse
import random
import timeit

from comax.linalg import _howell_py, howell_form_ext

SHAPES = [(4, 4, 12), (8, 8, 64), (16, 12, 360), (32, 24, 720720), (64, 32, 2**30 - 35)]


def cases(seed=1):
    rng = random.Random(seed)
    for rows, cols, m in SHAPES:
        A = [[rng.randrange(m) for _ in range(cols)] for _ in range(rows)]
        yield rows, cols, m, A


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if howell_form_ext is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    print(f"{'shape':>14} {'modulus':>12} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for rows, cols, m, A in cases():
        if _howell_py.howell_form(A, cols, m) != howell_form_ext(A, cols, m):
            raise SystemExit(f"kernels disagree on {rows}x{cols} mod {m}")
        t_py = min(timeit.repeat(lambda: _howell_py.howell_form(A, cols, m), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: howell_form_ext(A, cols, m), number=1, repeat=args.repeat))
        print(f"{rows:>6}x{cols:<7} {m:>12} {t_py * 1e3:>10.3f} {t_c * 1e3:>12.3f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
