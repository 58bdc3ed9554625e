from oremodel.gb import ModuleVector, Submodule, module_equal
from oremodel.modops import Homomorphism, annihilator, eliminate_components, intersect, kernel_of_hom, left_syzygy
from oremodel.orecore import PolySignal, act, commutative, difference, weyl
from oremodel.problem import parse_operator
from support import module, rows

W = weyl(1)


def _vecs(spec, texts):
    return [ModuleVector([parse_operator(t, spec)], spec) for t in texts]


def _combine(spec, syz, fam):
    out = ModuleVector.zero(spec, fam[0].rank)
    for a, f in zip(syz.entries, fam):
        out = out + f.lmul(a)
    return out


def test_commutative_syzygies():
    C = commutative(1)
    fam = _vecs(C, ["t1^3", "3*t1^2 + 3*t1 + 1", "6*t1 + 6", "6", "t1", "1"])
    syz = left_syzygy(fam, C)
    (a,) = rows(C, [["0", "0", "0", "0", "1", "-t1"]])
    (b,) = rows(C, [["1", "0", "0", "0", "0", "-t1^3"]])
    assert syz.contains(a) and syz.contains(b)
    for g in syz.gens:
        assert _combine(C, g, fam).is_zero()


def test_single_vector_has_no_syzygies():
    assert left_syzygy(_vecs(W, ["t1*d1 + 1"]), W).is_zero()


def test_weyl_syzygies_expand_to_zero():
    fam = _vecs(W, ["d1", "t1"])
    syz = left_syzygy(fam, W)
    assert not syz.is_zero()
    for g in syz.gens:
        assert _combine(W, g, fam).is_zero()


def test_eliminate_components():
    S = module(W, [["1", "t1"], ["0", "d1"]])
    E = eliminate_components(S, 2)
    assert all(g[0].is_zero() for g in E.gens)
    # any combination with a zero first entry drops the first generator
    assert module_equal(E, module(W, [["0", "d1"]]))
    assert eliminate_components(module(W, [["1", "0"]]), 2).is_zero()
    assert module_equal(eliminate_components(Submodule.free(W, 3), 2), module(W, [["0", "1", "0"], ["0", "0", "1"]]))


def test_kernel_of_hom_examples():
    d = _vecs(W, ["d1"])
    ker = kernel_of_hom(Homomorphism(W, _vecs(W, ["t1"]), d, 1))
    assert module_equal(ker, module(W, [["d1^2"], ["t1*d1 - 1"]]))
    ker = kernel_of_hom(Homomorphism(W, _vecs(W, ["1"]), d, 1))
    assert module_equal(ker, module(W, [["d1"]]))
    ker = kernel_of_hom(Homomorphism(W, [ModuleVector.zero(W, 1)], d, 1))
    assert module_equal(ker, Submodule.free(W, 1))


def test_kernel_on_quotient_source():
    d = _vecs(W, ["d1"])
    ker = kernel_of_hom(Homomorphism(W, _vecs(W, ["t1"]), d, 1, source_relations=_vecs(W, ["d1^2"])))
    # modulo d1^2 only t1*d1 - 1 survives
    assert len(ker.gens) == 1
    assert ker.gens[0].to_strings() == ["t1*d1 - 1"]


def test_annihilator_routes_agree():
    d = _vecs(W, ["d1"])
    (v,) = _vecs(W, ["t1^3"])
    ann = annihilator(v, d)
    assert module_equal(ann, kernel_of_hom(Homomorphism(W, [v], d, 1)))
    assert ann.contains(_vecs(W, ["d1^4"])[0]) and ann.contains(_vecs(W, ["t1*d1 - 3"])[0])
    assert module_equal(annihilator(ModuleVector.zero(W, 1), d), Submodule.free(W, 1))


def test_annihilator_difference():
    S = difference(1)
    ann = annihilator(_vecs(S, ["t1"])[0], _vecs(S, ["D1"]))
    sig = PolySignal(S.t(0))
    for g in ann.groebner_basis():
        assert act(S, g[0], sig).is_zero()
    assert module_equal(ann, module(S, [["D1^2"], ["t1*D1 - 1"]]))


def test_intersection():
    a = module(W, [["t1*d1 - 1"], ["d1^2"]])
    b = module(W, [["-4*d1^2 + (4*t1 - 4)*d1 - 8"], ["d1^3"]])
    assert module_equal(intersect([a, b]), module(W, [["t1^2*d1^2 - 2*t1*d1 + 2"], ["d1^3"]]))
    assert module_equal(intersect([a, a]), a)
    assert module_equal(intersect([a, Submodule.free(W, 1)]), a)
