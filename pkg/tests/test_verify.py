import pytest

from oremodel.gb import ModuleOrder
from oremodel.orecore import PolySignal, difference, weyl
from oremodel.problem import parse_operator
from oremodel.verify import check_annihilation, falsifiability_probe, row_residual
from oremodel.vmpum import KernelRepresentation, Signal, vmpum_of
from support import rows

W1, W2 = weyl(1), weyl(2)


def rep(spec, matrix):
    return KernelRepresentation(spec, rows(spec, matrix), ModuleOrder.default(spec), len(matrix[0]))


def sig(spec, text, lam=None):
    return PolySignal(parse_operator(text, spec), lam)


def test_cusp_matrix_annihilates():
    R = rep(W2, [["d2^3"], ["d1*d2"], ["d1^3 + 3*d2^2"], ["t2*d2^2 - d2"], ["t2*d1^2 + 3*t1*d2"],
                 ["2*t1*d1 + 3*t2*d2 - 6"]])
    report = check_annihilation(R, [[sig(W2, "t1^3 - t2^2")]])
    assert report.passed and len(report.residuals) == 6


def test_single_residuals():
    assert check_annihilation(rep(W1, [["d1^3"]]), [[sig(W1, "2*t1 - t1^2")]]).passed
    report = check_annihilation(rep(W1, [["d1^2"]]), [[sig(W1, "t1^3")]])
    assert not report.passed
    ((_, _, r),) = report.failures()
    assert r == sig(W1, "6*t1")
    assert report.to_dict() == {"passed": False, "failures": [{"row": 0, "signal": 0, "residual": "6*t1"}]}


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        check_annihilation(rep(W1, [["d1", "1"]]), [[sig(W1, "t1")]])


def test_residual_linearity():
    S = difference(1)
    (r,) = rows(S, [["t1*D1^2 - 3*D1 + t1"]])
    a, b = sig(S, "t1^2 + 1", (2,)), sig(S, "t1^3", (2,))
    lhs = row_residual(r, Signal([a.scale(3) + b.scale(-2)]))
    rhs = row_residual(r, Signal([a])).scale(3) + row_residual(r, Signal([b])).scale(-2)
    assert lhs == rhs


def test_probe_on_t():
    R = vmpum_of([[sig(W1, "t1")]])
    (_, t_d_minus_1) = R.rows
    assert row_residual(t_d_minus_1, Signal([sig(W1, "t1^2")])) == sig(W1, "t1^2")
    report = falsifiability_probe(R, sig(W1, "t1"), trials=20)
    assert report.passed and len(report.trials) == 20
    assert report.to_dict()["seed"] == report.seed


def test_probe_skips_proportional_candidates():
    R = vmpum_of([[sig(W1, "t1")]])
    report = falsifiability_probe(R, sig(W1, "t1"), trials=30, seed=5)
    for cand, _ in report.trials:
        terms = cand.terms
        assert not (len(terms) == 1 and (1, 0) in terms)


def test_probe_cusp():
    R = vmpum_of([[sig(W2, "t1^3 - t2^2")]])
    q = Signal([sig(W2, "t1^3")])
    assert any(not row_residual(r, q).is_zero() for r in R.rows)
    assert falsifiability_probe(R, sig(W2, "t1^3 - t2^2"), trials=20).passed


def test_probe_is_reproducible():
    R = vmpum_of([[sig(W1, "t1^2 - 1")]])
    a = falsifiability_probe(R, sig(W1, "t1^2 - 1"), trials=10, seed=7)
    b = falsifiability_probe(R, sig(W1, "t1^2 - 1"), trials=10, seed=7)
    assert [str(c) for c, _ in a.trials] == [str(c) for c, _ in b.trials]


def test_probe_preconditions():
    R = vmpum_of([[sig(W1, "t1")]])
    with pytest.raises(ValueError):
        falsifiability_probe(R, sig(W1, "t1", (2,)))
    with pytest.raises(ValueError):
        falsifiability_probe(R, sig(W1, "0"))
