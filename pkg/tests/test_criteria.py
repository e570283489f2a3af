import json

import pytest
from hypothesis import given, strategies as st

from orlicz_cosine import group
from orlicz_cosine.criteria import (PreconditionError, Verdict, check_direct_sum,
                                    check_mixing, check_transitive, choose_partition,
                                    criterion_quantity, dyadic_subsequence, fit_decay,
                                    shifted_products)
from orlicz_cosine.ops import PHI, PHI_TILDE, Weight, WeightedTranslation
from orlicz_cosine.seq import FinSupSeq, orlicz_norm, orlicz_norm_dual_bound
from orlicz_cosine.young import paper_entropy

from oracles import ORLICZ_DELTA

PHI_E = paper_entropy()
STEP = WeightedTranslation((1,), Weight.paper_step())
FLAT = WeightedTranslation((1,), Weight.constant(1.0))
K7 = range(-3, 4)


def test_quantity_examples():
    chi = orlicz_norm(PHI_E, FinSupSeq.indicator(K7))
    for n in (1, 5, 40):
        assert criterion_quantity(FLAT, PHI_E, K7, n) == pytest.approx(chi, rel=1e-12)
    assert criterion_quantity(STEP, PHI_E, [0], 3) == pytest.approx(ORLICZ_DELTA / 8, rel=1e-11)
    assert criterion_quantity(STEP, PHI_E, [], 3) == 0.0
    with pytest.raises(ValueError):
        criterion_quantity(STEP, PHI_E, [0], 0)


@given(E=st.frozensets(st.integers(-6, 6), min_size=1, max_size=5), n=st.integers(1, 25),
       variant=st.sampled_from([PHI, PHI_TILDE]))
def test_quantity_upper_bound_and_dual(E, n, variant):
    q = criterion_quantity(STEP, PHI_E, E, n, variant)
    total = sum(STEP.weight_product(x, n, variant) for x in E)
    assert q <= 2 * total
    seq = shifted_products(STEP, E, n, variant)
    assert q == pytest.approx(orlicz_norm(PHI_E, seq), rel=1e-9)
    assert orlicz_norm_dual_bound(PHI_E, seq) <= q * (1 + 1e-6)


@given(c=st.floats(1.01, 3.0), n=st.integers(1, 20),
       E=st.frozensets(st.integers(-5, 5), min_size=1, max_size=4))
def test_scaling_by_constant(c, n, E):
    base = Weight.paper_step()
    scaled = WeightedTranslation((1,), Weight(lambda x: c * base(x), "scaled"))
    assert criterion_quantity(scaled, PHI_E, E, n, PHI) == \
        pytest.approx(c ** n * criterion_quantity(STEP, PHI_E, E, n, PHI), rel=1e-9)
    assert criterion_quantity(scaled, PHI_E, E, n, PHI_TILDE) == \
        pytest.approx(c ** -n * criterion_quantity(STEP, PHI_E, E, n, PHI_TILDE), rel=1e-9)


@given(E=st.frozensets(st.integers(-6, 6), max_size=5),
       extra=st.frozensets(st.integers(-6, 6), max_size=3), n=st.integers(1, 20))
def test_monotone_in_E(E, extra, n):
    for variant in (PHI, PHI_TILDE):
        small = criterion_quantity(STEP, PHI_E, E, n, variant)
        assert small <= criterion_quantity(STEP, PHI_E, E | extra, n, variant) * (1 + 1e-12)


def test_partition_examples():
    K = group.finite_set(K7)
    assert choose_partition(STEP, K, 4, "all_plus") == (K, frozenset())
    assert choose_partition(STEP, K, 4, "all_minus") == (frozenset(), K)
    assert choose_partition(STEP, [], 4, "greedy") == (frozenset(), frozenset())
    plus, minus = choose_partition(STEP, [-5, 5], 40, "greedy")
    assert (5,) in plus
    fwd = STEP.weight_product(-5, 80, PHI)
    bwd = STEP.weight_product(-5, 80, PHI_TILDE)
    assert ((-5,) in plus) == (fwd <= bwd)
    with pytest.raises(ValueError):
        choose_partition(STEP, K, 4, "random")


def test_transitive_example():
    rep = check_transitive(STEP, PHI_E, K7, 80, 1e-6, "all_plus")
    assert rep.verdict is Verdict.SATISFIED
    assert rep.decay["Q_phi"] == pytest.approx(0.5, abs=1e-9)
    assert rep.decay["Q2_plus"] == pytest.approx(0.5, abs=1e-9)
    assert rep.decay["Q_tilde"] == pytest.approx(2 / 3, abs=1e-9)
    assert rep.decay["Q2_minus"] is None
    last = rep.row(rep.subsequence[-1])
    assert last.worst() < 1e-6
    for r in rep.rows:
        assert r.E_plus | r.E_minus == rep.K and not (r.E_plus & r.E_minus)
        assert min(q for q in (r.Q_phi, r.Q_tilde, r.Q2_plus, r.Q2_minus)) >= 0


def test_transitive_greedy_and_singleton():
    assert check_transitive(STEP, PHI_E, K7).verdict is Verdict.SATISFIED
    assert check_transitive(STEP, PHI_E, [0]).verdict is Verdict.SATISFIED


def test_flat_weight_violated():
    for check in (check_transitive, check_mixing):
        rep = check(FLAT, PHI_E, K7)
        assert rep.verdict is Verdict.VIOLATED
        assert rep.warnings


@pytest.mark.parametrize("c", [0.5, 0.9, 1.0])
def test_weak_constant_weight_never_satisfied(c):
    op = WeightedTranslation((1,), Weight.constant(c))
    assert check_transitive(op, PHI_E, [0, 1], horizon=30).verdict is not Verdict.SATISFIED


def test_preconditions():
    with pytest.raises(PreconditionError, match="horizon >= 7"):
        check_transitive(STEP, PHI_E, K7, horizon=6)
    with pytest.raises(PreconditionError):
        check_transitive(STEP, PHI_E, [], horizon=6)
    with pytest.raises(PreconditionError):
        check_mixing(STEP, PHI_E, K7, eps=0.0)


def test_mixing_example():
    rep = check_mixing(STEP, PHI_E, K7)
    assert rep.verdict is Verdict.SATISFIED
    assert rep.n0 is not None and rep.n0 < 80
    assert all(r.worst() < 1e-6 for r in rep.rows[rep.n0 - 1:])
    assert rep.subsequence == list(range(rep.n0, 81))


def test_oscillating_weight_not_satisfied():
    alt = WeightedTranslation((1,), Weight(lambda x: 0.25 if x[0] % 2 == 0 else 4.0, "alt"))
    assert check_mixing(alt, PHI_E, K7).verdict is not Verdict.SATISFIED
    assert check_transitive(alt, PHI_E, K7).verdict is not Verdict.SATISFIED


def test_direct_sum():
    both = check_direct_sum([STEP, STEP], PHI_E, K7)
    assert both.verdict is Verdict.SATISFIED
    assert both.joint_ns and both.joint_ns == list(range(both.joint_ns[0], 81))
    mixed = check_direct_sum([STEP, FLAT], PHI_E, K7)
    assert mixed.verdict is Verdict.VIOLATED and mixed.joint_ns == []
    single = check_direct_sum([STEP], PHI_E, K7)
    assert single.verdict is check_transitive(STEP, PHI_E, K7).verdict
    with pytest.raises(ValueError):
        check_direct_sum([], PHI_E, K7)


def test_direct_sum_uses_each_components_own_g():
    backward = WeightedTranslation((-1,), Weight.piecewise(0.5, [(1, 1.5)]))
    rep = check_direct_sum([STEP, backward], PHI_E, K7)
    assert rep.per_component[1].g == (-1,)
    assert rep.verdict is Verdict.SATISFIED


def test_fit_and_dyadic_helpers():
    rep = check_transitive(STEP, PHI_E, [0], horizon=20)
    assert fit_decay(rep.rows[:1], "Q_phi") is None
    assert dyadic_subsequence(rep.rows)[:3] == [1, 3, 7]
    assert len(dyadic_subsequence(rep.rows)) == 5


def test_report_serialisation_is_deterministic():
    a = check_transitive(STEP, PHI_E, K7, horizon=20)
    b = check_transitive(STEP, PHI_E, K7, horizon=20)
    assert a.to_json() == b.to_json()
    doc = json.loads(a.to_json())
    assert doc["schema"].startswith("orlicz-cosine/report/")
    assert doc["evidence"] == "numerical evidence"
    header = a.to_csv().splitlines()[0]
    assert header == "n,Q_phi,Q_tilde,Q2_plus,Q2_minus,partition_size_plus"
    assert len(a.to_csv().splitlines()) == 21
