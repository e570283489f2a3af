import math
import re

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orlicz_cosine import young
from orlicz_cosine.young import (DomainError, UnboundedConjugateError, YoungFunction,
                                 YoungFunctionError, check_invariants, conjugate,
                                 is_delta2, paper_entropy, paper_exp, power, preset,
                                 square, validate)

from oracles import PHI_ENTROPY_AT_1, PSI_AT_1, exp_conj

PRESETS = ["paper-entropy", "paper-exp", "square", "quarter-square",
           "power:1.5", "power:3", "power:7"]


def test_eval_examples():
    phi = paper_entropy()
    assert phi(0.0) == 0.0
    assert phi(1.0) == pytest.approx(PHI_ENTROPY_AT_1, rel=1e-15)
    assert square()(-3.0) == 9.0


def test_eval_rejects_non_finite():
    with pytest.raises(DomainError):
        paper_entropy()(math.nan)
    with pytest.raises(DomainError):
        square()(math.inf)


@pytest.mark.parametrize("name", PRESETS)
def test_presets_pass_invariants(name):
    assert check_invariants(preset(name)) == []


def test_preset_names():
    assert preset("power:3").name == "power:3"
    with pytest.raises(KeyError):
        preset("cube")
    with pytest.raises(DomainError):
        preset("power:1")
    with pytest.raises(DomainError):
        preset("power:abc")


@pytest.mark.parametrize("fn, invariant", [
    (lambda t: t, "evenness"),
    (lambda t: abs(t) ** 0.5, "convexity"),
    (lambda t: t * t + 1.0, "phi(0) = 0"),
    (lambda t: min(abs(t), 5.0), "convexity"),
    (lambda t: max(abs(t) - 1.0, 0.0), "vanishes only at 0"),
    (lambda t: 1e-12 * abs(t), "divergence"),
])
def test_invariant_violations_are_named(fn, invariant):
    problems = check_invariants(YoungFunction(fn, "bad"))
    assert problems and problems[0].invariant == invariant
    with pytest.raises(YoungFunctionError, match=re.escape(invariant)):
        validate(YoungFunction(fn, "bad"))


def test_conjugate_examples():
    psi = conjugate(paper_entropy())
    assert psi(1.0) == pytest.approx(PSI_AT_1, abs=1e-12)
    assert psi(0.0) == 0.0
    assert conjugate(square())(2.0) == pytest.approx(1.0, abs=1e-12)


def test_conjugate_without_derivative_uses_grid():
    raw = YoungFunction(lambda t: t * t, "x^2")
    psi = conjugate(raw)
    for y in (0.3, 1.0, 2.0, 7.5):
        assert psi(y) == pytest.approx(y * y / 4, rel=1e-9, abs=1e-12)


def test_conjugate_unbounded():
    linear = YoungFunction(lambda t: abs(t), "abs", derivative=lambda t: 1.0)
    with pytest.raises(UnboundedConjugateError):
        conjugate(linear)(2.0)


def test_entropy_exp_pair_on_grid():
    psi = conjugate(paper_entropy())
    for y in np.linspace(0, 20, 200):
        exact = exp_conj(y)
        assert abs(psi(y) - exact) <= 1e-8 * max(1.0, exact)


@given(x=st.floats(0, 50), y=st.floats(0, 50),
       name=st.sampled_from(["paper-entropy", "square", "power:3", "power:1.5"]))
def test_young_inequality(x, y, name):
    phi = preset(name)
    psi = young.closed_form_conjugate(phi)
    lhs = x * y
    rhs = phi(x) + psi(y)
    assert lhs <= rhs * (1 + 1e-12) + 1e-12


@given(x=st.floats(0, 10), name=st.sampled_from(["paper-entropy", "square", "power:3"]))
def test_young_equality_at_derivative(x, name):
    phi = preset(name)
    psi = young.closed_form_conjugate(phi)
    y = phi.deriv(x)
    assert x * y == pytest.approx(phi(x) + psi(y), rel=1e-8, abs=1e-8)


@pytest.mark.parametrize("name", ["paper-entropy", "power:3", "square"])
def test_conjugate_round_trip(name):
    phi = preset(name)
    back = conjugate(conjugate(phi))
    for t in np.linspace(0, 5, 41):
        assert back(t) == pytest.approx(phi(t), rel=1e-6, abs=1e-6)


def test_closed_form_conjugates():
    assert young.closed_form_conjugate(paper_entropy()).name == "paper-exp"
    assert young.closed_form_conjugate(paper_exp()).name == "paper-entropy"
    assert young.closed_form_conjugate(power(3)).param == pytest.approx(1.5)
    assert young.closed_form_conjugate(YoungFunction(abs, "abs")) is None


def test_delta2_examples():
    sq = is_delta2(square())
    assert sq.satisfied and sq.constant == pytest.approx(4.0, rel=1e-12)
    ent = is_delta2(paper_entropy())
    assert ent.satisfied and ent.constant <= 4.0
    assert not is_delta2(paper_exp()).satisfied
    assert ent.label == "numerical evidence"
    assert ent.grid == (1e-6, 1e6, 512)


def test_delta2_rejects_degenerate():
    with pytest.raises(YoungFunctionError):
        is_delta2(YoungFunction(lambda t: max(abs(t) - 1, 0.0), "flat"))
    with pytest.raises(DomainError):
        is_delta2(square(), t_grid=[0.0, 1.0])


def test_inverse():
    assert young.inverse(paper_exp(), 1.0) == pytest.approx(1.146193220620582585, rel=1e-14)
    assert young.inverse(square(), 4.0) == pytest.approx(2.0, rel=1e-14)
    assert young.inverse(square(), 0.0) == 0.0
