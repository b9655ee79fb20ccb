"""Module-category layer: Hom spaces, kernels, radicals, standard modules."""

import pytest

from sphq.constructions import cb, kronecker, kronecker_quasi_simple
from sphq.corpus import load_fixture
from sphq.errors import UnknownVertex
from sphq.linalg import QQ, Matrix
from sphq.reps import (Representation, direct_sum, hom_basis,
                       injective_module, kernel_cokernel, projective_module,
                       rep_from_json, rep_to_json, simple_module,
                       standard_module, top_and_radical)


def test_projective_dims_cb3():
    alg = cb(3)
    # P(x) has basis the paths with source x
    for v in alg.quiver.vertices:
        P = projective_module(alg, v)
        expect = sum(1 for p in alg.basis if p.source == v)
        assert P.total_dim() == expect


def test_hom_from_projective_is_fiber():
    # Hom(P(x), M) has dimension dim M_x
    alg = load_fixture("auslander_x3")
    for v in alg.quiver.vertices:
        P = projective_module(alg, v)
        for w in alg.quiver.vertices:
            for kind in ("simple", "projective", "injective"):
                M = standard_module(alg, kind, w)
                assert len(hom_basis(P, M)) == M.dims[v]


def test_hom_into_injective_is_fiber():
    # Hom(M, I(x)) has dimension dim M_x
    alg = cb(3)
    for v in alg.quiver.vertices:
        I = injective_module(alg, v)
        for w in alg.quiver.vertices:
            M = projective_module(alg, w)
            assert len(hom_basis(M, I)) == M.dims[v]


def test_hom_between_simples():
    alg = cb(3)
    S1, S2 = simple_module(alg, "1"), simple_module(alg, "2")
    assert len(hom_basis(S1, S1)) == 1
    assert len(hom_basis(S1, S2)) == 0


def test_kernel_cokernel_rank_nullity():
    alg = cb(3)
    P1 = projective_module(alg, "1")
    S1 = simple_module(alg, "1")
    (f,) = hom_basis(P1, S1)
    ker, coker, kincl, cproj = kernel_cokernel(f)
    assert ker.total_dim() == P1.total_dim() - 1
    assert coker.total_dim() == 0
    # inclusion followed by f vanishes
    assert f.compose(kincl).is_zero()


def test_top_and_radical():
    alg = cb(3)
    P1 = projective_module(alg, "1")
    tr = top_and_radical(P1)
    assert tr.rad.total_dim() == P1.total_dim() - 1
    # the radical of P(1) over cb3 is generated in vertex 2
    assert tr.rad.dims["2"] == 1


def test_direct_sum_dims():
    alg = cb(2)
    M, _ = direct_sum([projective_module(alg, "1"), simple_module(alg, "2")])
    assert M.total_dim() == projective_module(alg, "1").total_dim() + 1


def test_quasi_simple_action():
    alg = kronecker(2)
    M = kronecker_quasi_simple(alg, 5)
    assert M.dims == {"1": 1, "2": 1}
    assert M.maps["a2"].entries[0][0] == QQ.parse("5")


def test_unknown_vertex():
    alg = cb(2)
    with pytest.raises(UnknownVertex):
        simple_module(alg, "9")


def test_rep_json_roundtrip():
    alg = kronecker(2)
    M = kronecker_quasi_simple(alg, "2/3")
    again = rep_from_json(alg, rep_to_json(M))
    assert again.dims == M.dims
    for a in alg.quiver.arrows:
        assert again.maps[a.name] == M.maps[a.name]


def test_representation_relation_check():
    alg = cb(2)
    # a 2-dim rep violating the relation a2*a1 = 0 must be rejected
    one = Matrix(1, 1, [[QQ.one()]], QQ)
    with pytest.raises(Exception):
        Representation(alg, {"1": 1, "2": 1},
                       {"a1": one, "a2": one.transpose()})
