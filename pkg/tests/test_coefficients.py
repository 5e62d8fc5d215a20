import pytest

from bredon.coefficients import (
    BurnsideRing,
    CentralExtensionData,
    CoefficientSystem,
    ComplexRepRing,
    ConstantZ,
    KCentralRepRing,
    TensorSystem,
    k_central_basis,
    kron,
    system_from_spec,
)
from bredon.complexes import load_bundled
from bredon.errors import (
    CoefficientError,
    ExtensionMismatch,
    MissingExtensionData,
    NonInjectiveHomomorphism,
    UnsupportedVariance,
)
from bredon.groups import GroupHomomorphism, cyclic_group, direct_product, identity_hom, product_hom


def test_ranks(sl2z):
    C6, C4, C2 = (sl2z.groups[n] for n in ("C6", "C4", "C2"))
    assert [ConstantZ().rank(G) for G in (C6, C4, C2)] == [1, 1, 1]
    assert [ComplexRepRing().rank(G) for G in (C6, C4, C2)] == [6, 4, 2]
    assert [BurnsideRing().rank(G) for G in (C6, C4, C2)] == [4, 3, 2]


def test_shapes_and_condition_d(sl2z):
    rep = ComplexRepRing()
    for inc in sl2z.incidences:
        cov, contra = rep.map_covariant(inc.hom), rep.map_contravariant(inc.hom)
        assert len(cov) == rep.rank(inc.hom.target) and len(cov[0]) == rep.rank(inc.hom.source)
        assert contra == tuple(zip(*cov))
        # memoised per homomorphism
        assert rep.map_covariant(inc.hom) is cov


def test_non_injective_rejected_covariantly():
    C2, C4 = cyclic_group(2), cyclic_group(4)
    h = GroupHomomorphism(C2, C4, (0, 0))
    with pytest.raises(NonInjectiveHomomorphism):
        ConstantZ().map_covariant(h)
    assert ConstantZ().map_contravariant(h) == ((1,),)


def test_unsupported_variance():
    class HomologyOnly(ConstantZ):
        name = "homology-only"
        contravariant = False

    h = identity_hom(cyclic_group(2))
    with pytest.raises(UnsupportedVariance):
        HomologyOnly().map_contravariant(h)


def test_k_central_split():
    X = load_bundled("sl2z_twisted")
    exts = X.extension_map()
    for G in X.groups.values():
        ext = exts[G]
        b0, b1 = k_central_basis(ext, 0), k_central_basis(ext, 1)
        # a cyclic group splits evenly between the two central characters
        assert len(b0) == len(b1) == G.order // 2
        assert sorted(b0 + b1) == list(range(G.order))
    with pytest.raises(ValueError):
        k_central_basis(next(iter(exts.values())), 2)


def test_k_central_errors():
    X = load_bundled("sl2z_twisted")
    exts = X.extension_map()
    C12, C4 = X.groups["C12"], X.groups["C4"]
    with pytest.raises(MissingExtensionData):
        KCentralRepRing(1, {}).rank(C12)
    with pytest.raises(CoefficientError):
        KCentralRepRing(5, exts).rank(C12)
    lift = GroupHomomorphism(C4, C12, tuple(C12.power(C12.gens[0], 3 * k) for k in range(4)))
    assert KCentralRepRing(1, exts).map_covariant(lift)
    # orders of the central subgroups differ
    C6, C3 = cyclic_group(6), cyclic_group(3)
    mismatch = {C6: CentralExtensionData(C6, C6.power(C6.gens[0], 3), 2),
                C3: CentralExtensionData(C3, C3.gens[0], 3)}
    h = GroupHomomorphism(C3, C6, tuple(C6.power(C6.gens[0], 2 * k) for k in range(3)))
    with pytest.raises(ExtensionMismatch):
        KCentralRepRing(0, mismatch).map_covariant(h)
    # t is sent to a non-central-generator involution
    C2 = cyclic_group(2)
    V, _, _ = direct_product(C2, C2)
    wrong_t = {C2: CentralExtensionData(C2, 1, 2), V: CentralExtensionData(V, 2, 2)}
    with pytest.raises(ExtensionMismatch):
        KCentralRepRing(0, wrong_t).map_covariant(GroupHomomorphism(C2, V, (0, 1)))


def test_extension_validation():
    C4 = cyclic_group(4)
    CentralExtensionData(C4, C4.power(C4.gens[0], 2), 2).validate()
    with pytest.raises(CoefficientError):
        CentralExtensionData(C4, C4.gens[0], 2).validate()


def test_tensor_system_is_kronecker():
    A, B = cyclic_group(2), cyclic_group(3)
    A4, B6 = cyclic_group(4), cyclic_group(6)
    P, _, _ = direct_product(A, B)
    Q, _, _ = direct_product(A4, B6)
    f = GroupHomomorphism(A, A4, (0, 2))
    g = GroupHomomorphism(B, B6, (0, 2, 4))
    h = product_hom(f, g, P, Q)
    rep = ComplexRepRing()
    T = TensorSystem(rep, rep)
    assert T.rank(P) == 6
    assert T.map_covariant(h) == kron(rep.map_covariant(f), rep.map_covariant(g))
    assert T.map_contravariant(h) == tuple(zip(*T.map_covariant(h)))
    with pytest.raises(CoefficientError):
        T.rank(cyclic_group(6))


def test_kron():
    assert kron(((1, 2),), ((0,), (1,))) == ((0, 0), (1, 2))


def test_system_from_spec():
    assert isinstance(system_from_spec("constant"), ConstantZ)
    assert isinstance(system_from_spec("rep"), ComplexRepRing)
    assert isinstance(system_from_spec("burnside"), BurnsideRing)
    k = system_from_spec("kcentral:1", {})
    assert isinstance(k, KCentralRepRing) and k.k == 1
    assert system_from_spec("rep", cap=50).cap == 50
    for bad in ("nope", "kcentral:x"):
        with pytest.raises(ValueError):
            system_from_spec(bad)


def test_base_class_is_abstract():
    with pytest.raises(NotImplementedError):
        CoefficientSystem().rank(cyclic_group(2))
