"""Compare the compiled and pure-Python norm kernels.

    python benchmarks/bench_kernels.py [--repeat 100] [--size 12]

Times each kernel on random normalised amplitude vectors, then the full
transitivity check end to end with each backend (in a subprocess, since
the backend is chosen at import).
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from orlicz_cosine import _kernels_py, _scalar

try:
    from orlicz_cosine import _kernels as compiled
except ImportError:
    compiled = None

CASES = [("entropy", _scalar.ENTROPY, 0.0), ("exp", _scalar.EXP, 0.0),
         ("power:3", _scalar.POWER, 3.0)]
DUAL_SAMPLE = 5

SETUP = ("from orlicz_cosine import WeightedTranslation, Weight, check_transitive, "
         "paper_entropy; op = WeightedTranslation((1,), Weight.paper_step())")
END_TO_END = "check_transitive(op, paper_entropy(), range(-3, 4), 80, 1e-6, 'greedy')"


def kernel_table(repeat, size, seed):
    rng = np.random.default_rng(seed)
    vecs = [rng.uniform(1e-3, 1.0, size) for _ in range(repeat)]
    vecs = [np.ascontiguousarray(v / v.max()) for v in vecs]
    nus = [rng.uniform(0.05, 1.0, size) for _ in range(repeat)]
    print(f"{'kernel (ms per call)':<24}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for label, kind, p in CASES:
        jobs = {
            "luxemburg": lambda m: [m.luxemburg(kind, p, a) for a in vecs],
            "amemiya": lambda m: [m.amemiya(kind, p, a) for a in vecs],
        }
        if kind != _scalar.POWER:
            ckind, cp = _scalar.conjugate_kind(kind, p)
            # the Python ascent takes ~0.5 s per call; time a small sample
            jobs["dual_ascent"] = lambda m: [m.dual_ascent(ckind, cp, a, nu, 20)
                                             for a, nu in zip(vecs[:DUAL_SAMPLE], nus)]
        for name, job in jobs.items():
            calls = min(repeat, DUAL_SAMPLE) if name == "dual_ascent" else repeat
            t_py = min(timeit.repeat(lambda: job(_kernels_py), number=1, repeat=3))
            row = f"{name + ' / ' + label:<24}{1e3 * t_py / calls:>12.4f}"
            if compiled is not None:
                t_c = min(timeit.repeat(lambda: job(compiled), number=1, repeat=3))
                row += f"{1e3 * t_c / calls:>12.4f}{t_py / t_c:>10.1f}"
            print(row)


def end_to_end():
    for label, env in (("python", {"ORLICZ_COSINE_PURE": "1"}), ("cython", {})):
        code = f"import timeit; print(min(timeit.repeat({END_TO_END!r}, {SETUP!r}, number=1, repeat=3)))"
        out = subprocess.run([sys.executable, "-c", code], env={**os.environ, **env},
                             capture_output=True, text=True, check=True)
        print(f"check_transitive (K = -3..3, horizon 80, greedy), {label}: "
              f"{float(out.stdout):.3f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=100)
    ap.add_argument("--size", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; timing the Python kernels only")
    kernel_table(args.repeat, args.size, args.seed)
    end_to_end()


if __name__ == "__main__":
    main()
