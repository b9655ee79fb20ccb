"""Path-basis computation checked against an independent brute-force oracle.

The oracle enumerates all paths of the quiver up to a length limit with
plain tuples, spans the two-sided ideal generated by the relations inside
that truncation with sympy, and counts dimensions by rank.  It shares no
code with the engine.
"""

from fractions import Fraction

import pytest
import sympy

from sphq.algebra import (Arrow, Element, Quiver, algebra_from_json,
                          algebra_to_json, build_algebra)
from sphq.constructions import (canonical, cb, ci, circular, insert_An,
                                kronecker, tensor_algebra)
from sphq.errors import CapInsufficient, NotAdmissible, SchemaError
from sphq.linalg import QQ


def oracle_dim(vertices, arrows, relations, maxlen):
    """arrows: (name, source, target); relations: list of {path-tuple: coeff}
    with paths as arrow-name tuples in traversal order."""
    src = {n: s for n, s, _ in arrows}
    tgt = {n: t for n, _, t in arrows}
    out_of = {v: [n for n, s, _ in arrows if s == v] for v in vertices}

    paths = [((), v, v) for v in vertices]  # (names, source, target)
    frontier = list(paths)
    for _ in range(maxlen):
        nxt = []
        for names, s, t in frontier:
            for a in out_of[t]:
                nxt.append((names + (a,), s, tgt[a]))
        paths += nxt
        frontier = nxt
    index = {p[0] if p[0] else ("e", p[1]): i for i, p in enumerate(paths)}

    def key(names, source):
        return names if names else ("e", source)

    spanning = []
    for rel in relations:
        # extend u . rel . w over all composable prefixes and suffixes
        some_path = next(iter(rel))
        rsrc, rtgt = src[some_path[0]], tgt[some_path[-1]]
        prefixes = [(n, s) for n, s, t in paths if t == rsrc]
        suffixes = [(n, t) for n, s, t in paths if s == rtgt]
        for pn, ps in prefixes:
            for sn, _ in suffixes:
                row = [0] * len(paths)
                skip = False
                for names, c in rel.items():
                    full = pn + names + sn
                    if len(full) > maxlen:
                        skip = True
                        break
                    row[index[key(full, ps)]] += c
                if not skip and any(row):
                    spanning.append(row)
    r = sympy.Matrix(spanning).rank() if spanning else 0
    # certify the truncation: every path of maximal length must be in the span
    long_paths = [p for p in paths if len(p[0]) == maxlen]
    if long_paths:
        M = sympy.Matrix(spanning)
        for names, s, t in long_paths:
            row = [0] * len(paths)
            row[index[key(names, s)]] = 1
            assert sympy.Matrix(list(M) and M.tolist() + [row]).rank() == r, \
                "truncation too short for the oracle"
    return len(paths) - r


def quiver_data(alg):
    vs = list(alg.quiver.vertices)
    ars = [(a.name, a.source, a.target) for a in alg.quiver.arrows]
    rels = [{p.arrows: Fraction(c) for p, c in rel.terms.items()}
            for rel in alg.relations]
    return vs, ars, rels


@pytest.mark.parametrize("make,maxlen,expected", [
    (lambda: cb(2), 6, 5),
    (lambda: cb(3), 6, 7),
    (lambda: ci(2), 6, 4),
    (lambda: circular(7, [5]), 9, 42),
    (lambda: insert_An(cb(2), "1", 1)[0], 7, 9),
    (lambda: canonical((2, 2, 2), [1]), 6, 13),
    (lambda: tensor_algebra(kronecker(2).quiver, kronecker(2).quiver), 5, 16),
])
def test_dimension_against_oracle(make, maxlen, expected):
    alg = make()
    vs, ars, rels = quiver_data(alg)
    assert oracle_dim(vs, ars, rels, maxlen) == expected
    assert alg.total_dim == expected


def test_two_vertex_chain():
    q = Quiver(["1", "2"], [Arrow("a", "1", "2")])
    alg = build_algebra(q, [], field=QQ)
    assert alg.total_dim == 3
    assert oracle_dim(*quiver_data(alg), maxlen=3) == 3


def test_multiplication_convention():
    # multiply(a, b) composes "first b, then a"
    q = Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "3")])
    alg = build_algebra(q, [], field=QQ)
    ab = alg.multiply(q.path(["b"]), q.path(["a"]))
    (p, c), = ab.terms.items()
    assert p.arrows == ("a", "b")
    assert (p.source, p.target) == ("1", "3")
    assert alg.multiply(q.path(["a"]), q.path(["b"])).is_zero()


def test_slice_basis_direction():
    # slice_basis(x, y) = e_x A e_y: paths from y to x
    q = Quiver(["1", "2"], [Arrow("a", "1", "2")])
    alg = build_algebra(q, [], field=QQ)
    assert [p.arrows for p in alg.slice_basis("2", "1")] == [("a",)]
    assert alg.slice_basis("1", "2") == []


def test_reduce_path_applies_relations():
    alg = cb(2)
    q = alg.quiver
    assert alg.reduce_path(q.path(["a1", "a2"])).is_zero()
    assert not alg.reduce_path(q.path(["a2", "a1"])).is_zero()


def test_opposite_reverses():
    alg = cb(3)
    op = alg.opposite()
    assert op.total_dim == alg.total_dim
    a = op.quiver.arrow_by_name["a1"]
    assert (a.source, a.target) == ("2", "1")


def test_relation_of_length_one_rejected():
    q = Quiver(["1", "2"], [Arrow("a", "1", "2")])
    one = QQ.one()
    with pytest.raises(NotAdmissible):
        build_algebra(q, [Element({q.path(["a"]): one}, QQ)], field=QQ)


def test_cap_insufficient_for_cycle():
    q = Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "2", "1")])
    with pytest.raises(CapInsufficient):
        build_algebra(q, [], cap=3, field=QQ)


def test_json_roundtrip():
    for alg in (cb(3), ci(2), canonical((2, 2, 2), [1])):
        again = algebra_from_json(algebra_to_json(alg), name=alg.name)
        assert again.total_dim == alg.total_dim
        assert [p.label() for p in again.basis] == [p.label() for p in alg.basis]


def test_malformed_json_rejected():
    with pytest.raises(SchemaError):
        algebra_from_json({"quiver": {"vertices": ["1"]}})
    data = algebra_to_json(cb(2))
    data["relations"] = [[{"coeff": "1", "path": ["nope"]}]]
    with pytest.raises(Exception):
        algebra_from_json(data)
