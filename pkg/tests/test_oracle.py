import random

import pytest

from oremodel.gb import module_equal
from oremodel.oracle import (
    BinomialPoly,
    delta_action_binomial,
    derivative_family,
    difference_oracle_kernel,
    falling_factorial_coeffs,
    from_binomial,
    shift_family,
    to_binomial,
    to_binomial_recursive,
    weyl_oracle_kernel,
)
from oremodel.orecore import PolySignal, act, difference, weyl
from oremodel.problem import parse_operator
from support import module, random_poly

S1, S2, W1, W2 = difference(1), difference(2), weyl(1), weyl(2)


def op(spec, text):
    return parse_operator(text, spec)


def test_binomial_example():
    p = op(S1, "t1^3 + t1^2 + 1")
    assert to_binomial(p) == BinomialPoly(1, {(3,): 6, (2,): 8, (1,): 2, (0,): 1})
    assert to_binomial_recursive(p) == to_binomial(p)
    assert from_binomial(to_binomial(p), S1) == p


def test_binomial_small_cases():
    assert to_binomial(S1.const(5)) == BinomialPoly(1, {(0,): 5})
    assert to_binomial(op(S2, "t1*t2")) == BinomialPoly(2, {(1, 1): 1})
    assert falling_factorial_coeffs(3) == [0, 2, -3, 1]


def test_delta_on_binomial_basis():
    assert delta_action_binomial((1,), BinomialPoly(1, {(3,): 1})) == BinomialPoly(1, {(2,): 1})
    assert delta_action_binomial((2,), BinomialPoly(1, {(1,): 1})) == BinomialPoly(1, {})
    p = op(S1, "t1^3 + t1^2 + 1")
    shifted = delta_action_binomial((1,), to_binomial(p))
    assert shifted == BinomialPoly(1, {(2,): 6, (1,): 8, (0,): 2})
    direct = act(S1, S1.op(0), PolySignal(p)).poly
    assert shifted == to_binomial(direct)


def test_binomial_routes_agree_randomly():
    rng = random.Random(3)
    for _ in range(30):
        p = random_poly(S2, rng, 5)
        assert to_binomial(p) == to_binomial_recursive(p)
        assert from_binomial(to_binomial(p), S2) == p


def test_derivative_family_layout():
    fam = derivative_family([W1.t(0)], W1)
    assert [str(v) for v in fam.values] == ["t1", "1", "0"]
    assert [a for _, a, _ in fam.entries] == [(0,), (1,), (2,)]
    assert fam.tag_row(1, 1).to_strings() == ["d1"]


def test_shift_family_example():
    fam = shift_family([op(S1, "t1^3"), S1.t(0)], S1)
    values = [str(v) for v in fam.values]
    assert values == ["t1^3", "3*t1^2 + 3*t1 + 1", "6*t1 + 6", "6", "0", "t1", "1", "0"]


def test_weyl_oracle_examples():
    assert module_equal(weyl_oracle_kernel([W1.t(0)], W1), module(W1, [["d1^2"], ["t1*d1 - 1"]]))
    six = module(W2, [["d2^3"], ["d1*d2"], ["d1^3 + 3*d2^2"], ["t2*d2^2 - d2"], ["t2*d1^2 + 3*t1*d2"],
                      ["2*t1*d1 + 3*t2*d2 - 6"]])
    assert module_equal(weyl_oracle_kernel([op(W2, "t1^3 - t2^2")], W2), six)
    assert module_equal(weyl_oracle_kernel([W1.one()], W1), module(W1, [["d1"]]))


def test_difference_oracle_examples():
    ker = difference_oracle_kernel([op(S1, "t1^3"), S1.t(0)], S1)
    assert module_equal(ker, module(S1, [["0", "D1^2"], ["0", "t1*D1 - 1"], ["1", "-t1^2"]]))
    assert module_equal(difference_oracle_kernel([S1.one()], S1), module(S1, [["D1"]]))
    from oremodel.vmpum import kernel_kappa

    p = [op(S1, "t1^2")]
    assert module_equal(difference_oracle_kernel(p, S1), kernel_kappa(p, S1))


def test_oracle_rejects_wrong_algebra():
    with pytest.raises(ValueError):
        weyl_oracle_kernel([S1.t(0)], S1)
    with pytest.raises(ValueError):
        difference_oracle_kernel([S1.zero()], S1)
