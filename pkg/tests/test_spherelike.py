"""Classification engine: verdicts, asphericality, membership, scans."""

import pytest

from sphq.constructions import (cb, circular, induce, kronecker,
                                kronecker_quasi_simple)
from sphq.corpus import load_fixture
from sphq.derived import minimal_projective_resolution, hom_profile, resolve
from sphq.errors import DZeroUnsupported, UnsupportedCandidateSet
from sphq.linalg import PrimeField
from sphq.reps import projective_module, simple_module
from sphq.spherelike import (asphericality, certify_finite_gldim,
                             classify_spherelike, fractional_cy_check,
                             in_spherical_subcat, scan)


def test_simple_over_cb_is_spherical():
    for t in (2, 3, 4):
        alg = cb(t)
        rep = classify_spherelike(simple_module(alg, "1"), "S:1")
        assert rep.verdict == "d_spherical"
        assert rep.d == t


def test_auslander_verdicts():
    alg = load_fixture("auslander_x3")
    want = {"1": ("d_spherical", 2), "2": ("d_spherical", 2),
            "3": ("not_spherelike", None)}
    for v, (verdict, d) in want.items():
        rep = classify_spherelike(simple_module(alg, v), "S:%s" % v)
        assert (rep.verdict, rep.d) == (verdict, d)


def test_induced_circular_properly_spherelike():
    big, emb = circular(7, [5], with_embedding=True)
    R = minimal_projective_resolution(simple_module(emb.small, "1"))
    G = induce(emb, R)
    rep = classify_spherelike(G, "induced:S:1")
    assert rep.verdict == "properly_d_spherelike"
    assert rep.d == 2


def test_asphericality_acyclic_iff_spherical():
    alg = cb(3)
    F = resolve(simple_module(alg, "1"))
    Q = asphericality(F)
    assert Q.is_acyclic()

    big, emb = circular(7, [5], with_embedding=True)
    G = induce(emb, minimal_projective_resolution(simple_module(emb.small, "1")))
    Q2 = asphericality(G)
    assert not Q2.is_acyclic()


def test_membership_table_circular():
    big, emb = circular(7, [5], with_embedding=True)
    G = induce(emb, minimal_projective_resolution(simple_module(emb.small, "1")))
    Q = asphericality(G)
    want = {"1": True, "2": True, "3": True, "4": False, "6": False}
    for v, expect in want.items():
        assert in_spherical_subcat(simple_module(big, v), Q) == expect


def test_d_zero_asphericality_refused():
    alg = cb(2)
    P = resolve(projective_module(alg, "2"))
    rep = classify_spherelike(P, "P:2")
    assert rep.d == 0 and rep.is_spherelike()
    with pytest.raises(DZeroUnsupported):
        asphericality(P, rep)


def test_fractional_cy():
    alg = cb(3)
    F = resolve(simple_module(alg, "1"))
    assert fractional_cy_check(F, 1, 3)
    assert not fractional_cy_check(F, 1, 2)


def test_gldim_certificates():
    assert certify_finite_gldim(cb(3)) == 3
    alg = load_fixture("preprojective_a3_cluster")
    assert certify_finite_gldim(alg) >= 3


def test_scan_simples_deterministic_and_complete():
    alg = cb(3)
    reports = scan(alg, "all_simples")
    assert [r.desc for r in reports] == ["S:1", "S:2", "S:3"]
    again = scan(alg, "all_simples")
    assert [r.to_json() for r in reports] == [r.to_json() for r in again]


def test_scan_intervals_finds_zero_spherical():
    alg = load_fixture("dda_1_2_0")
    reports = scan(alg, "all_interval_modules")
    assert any(r.verdict == "d_spherical" and r.d == 0 for r in reports)


def test_scan_dimvector_needs_prime_field():
    alg = cb(2)
    with pytest.raises(UnsupportedCandidateSet):
        scan(alg, "all_indecomposables_up_to_dimvector", dim_bound=1)
    alg2 = cb(2, field=PrimeField(2))
    reports = scan(alg2, "all_indecomposables_up_to_dimvector", dim_bound=1)
    assert any(r.verdict == "d_spherical" for r in reports)


def test_quasi_simple_family_spherical():
    alg = kronecker(2)
    for lam in (0, 1, "2/3", -4):
        M = kronecker_quasi_simple(alg, lam)
        rep = classify_spherelike(M, "quasi:%s" % lam)
        assert rep.verdict == "d_spherical" and rep.d == 1


def test_report_json_fields():
    alg = cb(2)
    rep = classify_spherelike(simple_module(alg, "1"), "S:1")
    data = rep.to_json()
    assert data["verdict"] == "d_spherical"
    assert data["d"] == 2
    assert data["object"] == "S:1"
