import pytest

from oremodel.gb import (
    GroebnerDegreeError,
    ModuleOrder,
    ModuleVector,
    MonomialOrder,
    Submodule,
    leading_term,
    left_groebner,
    left_normal_form,
    module_equal,
)
from oremodel.orecore import difference, sw, weyl
from support import module, rows

W = weyl(1)
S = difference(1)


def test_leading_term_examples():
    (v,) = rows(W, [["d1^2 + t1", "0"]])
    assert leading_term(v) == (1, (0, 2), 1)
    (v,) = rows(S, [["0", "t1*D1 - 1"]])
    assert leading_term(v) == (2, (1, 1), 1)
    (v,) = rows(S, [["1", "-t1^2"]])
    assert leading_term(v) == (1, (0, 0), 1)


def test_leading_term_of_zero():
    with pytest.raises(ValueError):
        leading_term(ModuleVector.zero(W, 2))


def test_operators_outrank_t_by_default():
    o = MonomialOrder.for_spec(W)
    assert o.key((0, 1)) > o.key((1, 0))
    # the flag only reorders operator groups of the mixed algebra
    o2 = MonomialOrder.for_spec(W, opvars_first=False)
    assert o2.key((0, 1)) > o2.key((1, 0))


def test_sw_precedence():
    A = sw(1)
    # exponent layout (t, D, d)
    first = MonomialOrder.for_spec(A, opvars_first=True)
    assert first.key((0, 1, 0)) > first.key((0, 0, 1))
    second = MonomialOrder.for_spec(A, opvars_first=False)
    assert second.key((0, 0, 1)) > second.key((0, 1, 0))


def test_deglex_vs_degrevlex():
    W2 = weyl(2)
    lex = MonomialOrder.for_spec(W2, "deglex")
    rev = MonomialOrder.for_spec(W2, "degrevlex")
    # layout (t1, t2, d1, d2); precedence d1 > d2 > t1 > t2
    a, b = (1, 0, 1, 0), (0, 0, 0, 2)  # t1*d1, d2^2
    assert lex.key(a) > lex.key(b)
    assert rev.key(b) > rev.key(a)
    with pytest.raises(ValueError):
        MonomialOrder.for_spec(W2, "lex")


def test_normal_form_examples():
    G = module(W, [["d1^2"], ["t1*d1 - 1"]])
    for g in G.gens:
        assert left_normal_form(g, G).is_zero()
    (d,) = rows(W, [["d1"]])
    assert left_normal_form(d, module(W, [["d1^2"]])) == d


def test_groebner_examples():
    G = module(W, [["d1^2"], ["t1*d1 - 1"]])
    assert module_equal(left_groebner(G), G)
    assert [str(g) for g in G.groebner_basis()] == ["[d1^2]", "[t1*d1 - 1]"]
    whole = module(W, [["t1"], ["d1"]]).groebner_basis()
    assert [str(g) for g in whole] == ["[1]"]
    assert Submodule(W, 1, []).groebner_basis() == []


def test_reduced_basis_is_monic_and_sorted():
    G = module(W, [["3*t1*d1 - 3"], ["2*d1^2"], ["t1*d1^2"]]).groebner_basis()
    o = ModuleOrder.default(W)
    leads = [leading_term(g, o) for g in G]
    assert all(c == 1 for _, _, c in leads)
    keys = [o.key((comp - 1, m)) for comp, m, _ in leads]
    assert keys == sorted(keys, reverse=True)


def test_s_pairs_reduce_to_zero():
    A = difference(2)
    G = module(A, [["D1*D2"], ["t1*D2 - 1"], ["D1^3 + D2"]]).groebner_basis()
    basis = Submodule(A, 1, G)
    for i, g in enumerate(G):
        for h in G[i + 1:]:
            for u in (A.op(0), A.op(1), A.t(0)):
                assert basis.contains(g.lmul(u) - h.lmul(u))


def test_module_equal_examples():
    a = module(W, [["d1^2"], ["t1*d1 - 1"]])
    b = module(W, [["t1*d1 - 1"], ["d1^2"], ["t1*d1^2"]])
    assert module_equal(a, b)
    # d1 does not annihilate t1, so this extra row enlarges the module
    assert not module_equal(a, module(W, [["d1^2"], ["t1*d1 - 1"], ["t1*d1^2 - d1"]]))
    assert not module_equal(module(W, [["d1^2"]]), module(W, [["d1^3"]]))
    W2 = weyl(2)
    six = module(W2, [["d2^3"], ["d1*d2"], ["d1^3 + 3*d2^2"], ["t2*d2^2 - d2"], ["t2*d1^2 + 3*t1*d2"],
                      ["2*t1*d1 + 3*t2*d2 - 6"]])
    three = module(W2, [["d1*d2"], ["d1^3 + 3*d2^2"], ["2*t1*d1 + 3*t2*d2 - 6"]])
    assert module_equal(six, three)


def test_membership_operator():
    G = module(W, [["d1^2"], ["t1*d1 - 1"]])
    (v,) = rows(W, [["t1^2*d1^2"]])
    assert v in G
    (w,) = rows(W, [["d1"]])
    assert w not in G


def test_pot_module_basis():
    G = module(S, [["1", "-t1^2"], ["0", "D1^2"], ["0", "t1*D1 - 1"]]).groebner_basis()
    assert [g.to_strings() for g in G] == [["1", "-t1^2"], ["0", "D1^2"], ["0", "t1*D1 - 1"]]


def test_degree_cap():
    with pytest.raises(GroebnerDegreeError):
        module(W, [["t1^3*d1^3 + 1"], ["d1^5 + t1"]]).groebner_basis(degree_cap=4)


def test_vector_arithmetic():
    a, b = rows(W, [["d1", "t1"], ["1", "0"]])
    assert (a + b) - b == a
    assert a.lmul(W.t(0)).to_strings() == ["t1*d1", "t1^2"]
    assert str(a) == "[d1, t1]"
    assert ModuleVector.unit(W, 2, 1).to_strings() == ["0", "1"]
