"""Acceptance criteria 1-10, one test each.

Every test records a one-line PASS/FAIL summary; ``conftest.py`` prints
them at the end of the run.  ``python tests/test_acceptance.py`` prints
the same lines without pytest.
"""
import math
import random
import time

import numpy as np

from orlicz_cosine import group
from orlicz_cosine.criteria import (Verdict, check_direct_sum, check_mixing,
                                    check_transitive, choose_partition)
from orlicz_cosine.example import conjugate_pair_check
from orlicz_cosine.group import AperiodicityError
from orlicz_cosine.ops import PHI, PHI_TILDE, Weight, WeightedTranslation
from orlicz_cosine.seq import (FinSupSeq, luxemburg_norm, modular, orlicz_norm,
                               orlicz_norm_dual_bound)
from orlicz_cosine.witness import build_vk, cosine_expansion, verify_witness
from orlicz_cosine.young import (YoungFunction, check_invariants, inverse, is_delta2,
                                 paper_entropy, paper_exp, preset)

try:
    from oracles import T_STAR, exp_conj
except ImportError:  # run as a script from the repo root
    from tests.oracles import T_STAR, exp_conj

RESULTS = {}
SEED = 20240607
K7 = tuple(range(-3, 4))


def record(number, ok, detail):
    RESULTS[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, RESULTS[number]


def step_op():
    return WeightedTranslation((1,), Weight.paper_step())


def flat_op():
    return WeightedTranslation((1,), Weight.constant(1.0))


def random_suite(n=200, seed=SEED):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        size = int(rng.integers(1, 13))
        pts = rng.choice(np.arange(-50, 51), size=size, replace=False)
        vals = rng.uniform(-10, 10, size)
        out.append(FinSupSeq({int(p): float(v) for p, v in zip(pts, vals)}))
    return out


def test_1_conjugate_pair():
    res = conjugate_pair_check()
    record(1, res["ok"],
           f"conjugate of entropy vs e^y-y-1 on {res['points']} points in [0, 20]: "
           f"max |err|/max(1,psi) = {res['max_scaled_error']:.2e} (tol 1e-8), "
           f"max |err| = {res['max_abs_error']:.2e}")


def test_2_feasibility_bound():
    t = inverse(paper_exp(), 1.0)
    direct = exp_conj(t)
    ok = abs(t - T_STAR) <= 1e-12 and t <= 2.0 and abs(direct - 1.0) <= 1e-12
    just_above = modular(paper_exp(), FinSupSeq({0: t * (1 + 1e-9)}))
    ok = ok and just_above > 1.0
    record(2, ok, f"max feasible single-point nu = {t:.12f} (oracle {T_STAR:.12f}) <= 2")


def test_3_norm_sandwich():
    worst = -math.inf
    for name in ("square", "power:3", "paper-entropy"):
        phi = preset(name)
        for f in random_suite():
            lux, orl = luxemburg_norm(phi, f), orlicz_norm(phi, f)
            worst = max(worst, lux - orl, orl - 2 * lux)
    record(3, worst <= 1e-9,
           f"600 checks of N <= ||.|| <= 2N, worst violation {worst:.2e} (tol 1e-9)")


def test_4_dual_agreement():
    worst, count = 0.0, 0
    for name in ("square", "power:3", "paper-entropy"):
        phi = preset(name)
        for i, f in enumerate(random_suite()):
            if len(f) > 8:
                continue
            orl = orlicz_norm(phi, f)
            dual = orlicz_norm_dual_bound(phi, f, seed=i)
            worst = max(worst, abs(orl - dual) / orl)
            count += 1
    record(4, worst <= 1e-4,
           f"{count} sequences with <= 8 points: max relative gap {worst:.2e} (tol 1e-4)")


def test_5_example_transitivity():
    op, phi = step_op(), paper_entropy()
    rep = check_transitive(op, phi, K7, 80, 1e-6, "all_plus")
    d = rep.decay
    phi_side = [d["Q_phi"], d["Q2_plus"]]
    tilde_side = [d["Q_tilde"]] + ([d["Q2_minus"]] if d["Q2_minus"] is not None else [])
    ok = rep.verdict is Verdict.SATISFIED
    ok = ok and all(0.45 <= r <= 0.55 for r in phi_side)
    ok = ok and all(0.6 <= r <= 0.72 for r in tilde_side)
    bounds_ok = True
    for r in rep.rows:
        s_phi = math.fsum(op.weight_product(x, r.n, PHI) for x in K7)
        s_tilde = math.fsum(op.weight_product(x, r.n, PHI_TILDE) for x in K7)
        bounds_ok &= r.Q_phi <= 2 * s_phi and r.Q_tilde <= 2 * s_tilde
    record(5, ok and bounds_ok,
           f"verdict {rep.verdict.value}; decay Q_phi {d['Q_phi']:.4f}, Q2_plus "
           f"{d['Q2_plus']:.4f}, Q_tilde {d['Q_tilde']:.4f}; row bounds "
           f"{'hold' if bounds_ok else 'FAIL'}")


def test_6_negative_control():
    rep = check_transitive(flat_op(), paper_entropy(), K7, 80, 1e-6, "all_plus")
    try:
        WeightedTranslation((0,), Weight.paper_step())
        rejected = False
    except AperiodicityError:
        rejected = True
    record(6, rep.verdict is Verdict.VIOLATED and rejected,
           f"w = 1 gives {rep.verdict.value}; g = 0 "
           f"{'rejected' if rejected else 'ACCEPTED'}")


def test_7_witness_convergence():
    chi = FinSupSeq.indicator([-1, 0, 1])
    trace = verify_witness(step_op(), paper_entropy(), chi, chi, [10, 20, 40, 80],
                           "all_plus")
    df = [r.dist_to_f for r in trace.rows]
    dh = [r.dist_to_h for r in trace.rows]
    dec = all(b < a for a, b in zip(df, df[1:])) and all(b < a for a, b in zip(dh, dh[1:]))
    small = df[-1] < 1e-4 and dh[-1] < 1e-4
    # 1e-9 absolute slack: S^n T^n h = h only up to rounding once products go to log space
    excess = max(r.dist_to_h - r.bound_total for r in trace.rows)
    record(7, dec and small and excess <= 1e-9,
           f"dist_to_f {df[-1]:.2e}, dist_to_h {dh[-1]:.2e} at n = 80; strictly "
           f"decreasing: {dec}; max(dist_to_h - bound) = {excess:.1e}")


def test_8_proof_algebra():
    rng = random.Random(SEED)
    worst, overlaps = 0.0, 0
    for _ in range(50):
        g = (rng.choice([-3, -2, -1, 1, 2, 3]),)
        a, b = rng.uniform(0.2, 0.95), rng.uniform(1.05, 2.5)
        op = WeightedTranslation(g, Weight(lambda x, a=a, b=b: a if x[0] >= 0 else b, "rand"))
        K = group.finite_set(rng.sample(range(-8, 9), rng.randint(1, 6)))
        f = FinSupSeq({x: rng.uniform(-5, 5) for x in K})
        h = FinSupSeq({x: rng.uniform(-5, 5) for x in K})
        n = group.separation_index(K, g) + rng.randint(1, 15)
        part = choose_partition(op, K, n, rng.choice(["greedy", "all_plus", "all_minus"]))
        direct = op.apply_cosine(build_vk(op, f, h, n, part), n)
        terms = cosine_expansion(op, f, h, n, part)
        total = FinSupSeq.zero(1)
        for t in terms:
            total = total + t
        for p in direct.support | total.support:
            worst = max(worst, abs(direct[p] - total[p]) / max(1.0, abs(total[p])))
        sups = [t.support for t in terms]
        overlaps += sum(bool(sups[i] & sups[j]) for i in range(6) for j in range(i + 1, 6))
    record(8, worst <= 1e-12 and overlaps == 0,
           f"50 random triples: max pointwise gap {worst:.1e} relative to max(1, |value|) "
           f"(tol 1e-12), "
           f"{overlaps} overlapping supports")


def test_9_mixing_and_direct_sum():
    phi = paper_entropy()
    mix = check_mixing(step_op(), phi, K7, 80, 1e-6)
    full = mix.verdict is Verdict.SATISFIED and all(
        r.worst() < 1e-6 for r in mix.rows[mix.n0 - 1:])
    both = check_direct_sum([step_op(), step_op()], phi, K7, 80, 1e-6)
    mixed = check_direct_sum([step_op(), flat_op()], phi, K7, 80, 1e-6)
    ok = (full and both.verdict is Verdict.SATISFIED and both.joint_ns
          and mixed.verdict is Verdict.VIOLATED)
    record(9, ok,
           f"mixing {mix.verdict.value} from n0 = {mix.n0}; two copies "
           f"{both.verdict.value} with {len(both.joint_ns)} joint n; with w = 1 "
           f"{mixed.verdict.value}")


def test_10_young_invariants():
    names = ("paper-entropy", "paper-exp", "square", "power:1.5", "power:3", "power:7")
    bad = {n: check_invariants(preset(n)) for n in names}
    bad = {n: v for n, v in bad.items() if v}
    raw_exp = YoungFunction(lambda t: math.expm1(abs(t)) - abs(t), "e^|x|-|x|-1")
    exp_d2 = is_delta2(raw_exp)
    ent_d2 = is_delta2(paper_entropy())
    ok = not bad and not exp_d2.satisfied and ent_d2.satisfied
    record(10, ok,
           f"{len(names)} presets pass sampled invariants{'' if not bad else f' except {bad}'}; "
           f"doubling constant entropy {ent_d2.constant:.3f} (satisfied), exp "
           f"{exp_d2.constant:.3g} (not satisfied)")


if __name__ == "__main__":
    start = time.time()
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in sorted(tests, key=lambda fn: int(fn.__name__.split("_")[1])):
        try:
            t()
        except AssertionError:
            pass
    for k in sorted(RESULTS):
        print(RESULTS[k])
    print(f"elapsed {time.time() - start:.1f} s")
