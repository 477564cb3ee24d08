"""Compiled vs pure-Python kernels on the two hot loops.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from butsonbent import kernels
from butsonbent.butson import build_code, fourier_matrix
from butsonbent.cyclotomic import reduction_matrix
from butsonbent.metrics import WeightTable


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    cases = []
    for q in (6, 8):
        C = build_code(fourier_matrix(q))
        w = WeightTable.for_modulus(q).w
        cases.append((f"covering sweep F_{q}",
                      lambda b, C=C, w=w, q=q: kernels.covering_sweep(C.as_array(), q, w, True,
                                                                       threads=args.threads, backend=b)))
    for q in (5, 6):
        H = fourier_matrix(q)
        red = reduction_matrix(q)
        cases.append((f"bent sweep F_{q}, k=1",
                      lambda b, H=H, red=red: len(kernels.bent_sweep(H.L, H.q, 1, red,
                                                                     threads=args.threads, backend=b))))

    backends = sorted(kernels.BACKENDS)
    print(f"{'case':<24}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in cases:
        res = {b: best_of(lambda: fn(b), args.repeat) for b in backends}
        outs = {repr(o) for _, o in res.values()}
        assert len(outs) == 1, f"backends disagree on {name}: {outs}"
        row = f"{name:<24}" + "".join(f"{res[b][0]:>11.4f}s" for b in backends)
        if len(backends) == 2:
            row += f"{res['python'][0] / res['compiled'][0]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
