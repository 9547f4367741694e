import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbskein.relations import (
    RelationSet,
    _kernel,
    enumerate_monomials,
    enumerate_supports,
    export_presentation,
    find_relations,
    generators,
    verify_localization,
)
from kbskein.ring import SpecializationError
from kbskein.skein import ResourceCapError, theta_eval
from kbskein.terms import TermPoly, graded_key, monomial_degree
from kbskein.topology import genus_boundary, planar, subsurface


def test_support_counts():
    assert enumerate_supports(planar(3)) == [(1, 2), (1, 3), (2, 3), (1, 2, 3)]
    assert enumerate_supports(planar(2)) == [(1, 2)]
    assert len(enumerate_supports(planar(7))) == 21 + 35 + 35 + 21 + 7


def test_monomials_small():
    ms = enumerate_monomials((1, 2), 2)
    assert set(ms) == {(), ((1,),), ((2,),), ((1,), (1,)), ((1,), (2,)), ((2,), (1,)), ((2,), (2,)), ((1, 2),)}
    assert len(ms) == 8
    assert enumerate_monomials((1, 2, 3), 0) == [()]


@pytest.mark.parametrize("support,degree", [((1, 2, 3), 3), ((1, 2), 5), ((1, 2, 3, 4), 3)])
def test_monomial_count_recount(support, degree):
    alphabet = [S for r in (1, 2, 3) for S in itertools.combinations(support, r)]
    brute = set()
    for length in range(degree + 1):
        for w in itertools.product(alphabet, repeat=length):
            if sum(map(len, w)) <= degree:
                brute.add(w)
    ms = enumerate_monomials(support, degree)
    assert len(ms) == len(set(ms)) == len(brute)
    assert set(ms) == brute
    assert ms == sorted(ms, key=graded_key)


def test_generator_counts():
    for n in range(2, 6):
        cs = planar(n)
        doc = json.loads(export_presentation(cs, []))
        assert len(doc["generators"]) == n + n * (n - 1) // 2 + n * (n - 1) * (n - 2) // 6
    assert len(generators(planar(3))) == 7
    assert len(generators(planar(4))) == 14


def test_commuting_generators_planar():
    cs = planar(3)
    rs = find_relations(cs, (1, 2), 2)
    comm = TermPoly.gen(1) * TermPoly.gen(2) - TermPoly.gen(2) * TermPoly.gen(1)
    (rel,) = rs.relations
    assert rel == comm or rel == -comm


def test_torus_q_commutation_shape():
    cs = genus_boundary(1, 0)
    rs = find_relations(cs, (1, 2), 2)
    assert rs.relations
    shapes = [set(p.terms) for p in rs.relations]
    assert any(((1, 2),) in s and (((1,), (2,)) in s or ((2,), (1,)) in s) for s in shapes)
    for p in rs.relations:
        assert theta_eval(p, cs).is_zero()


@pytest.mark.parametrize("cs,support", [(planar(3), (1, 2, 3)), (genus_boundary(1, 0), (1, 2)),
                                        (genus_boundary(1, 1), (1, 3))])
def test_relations_vanish(cs, support):
    rs = find_relations(cs, support, 4)
    assert len(rs.relations) == rs.monomials - rs.rank
    for p in rs.relations:
        assert theta_eval(p, cs).is_zero()
        assert all(e in support for m in p.terms for S in m for e in S)


def test_relations_pushed_forward():
    # relations of a subsurface stay relations in larger subsurfaces and in the whole surface
    for cs in (planar(4), genus_boundary(1, 1)):
        small = find_relations(cs, (1, 2), 4)
        mid = subsurface(cs, (1, 2, 3))
        for p in small.relations:
            assert theta_eval(p, mid).is_zero()
            assert theta_eval(p, cs).is_zero()


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_kernel_dimension_order_free(seed):
    cs = genus_boundary(1, 0)
    monos = enumerate_monomials((1, 2), 4)
    _, rank = _kernel(cs, monos)
    shuffled = list(monos)
    random.Random(seed).shuffle(shuffled)
    rels, rank2 = _kernel(cs, shuffled)
    assert rank == rank2
    assert len(rels) == len(monos) - rank


def test_relation_set_json():
    rs = find_relations(genus_boundary(1, 0), (1, 2), 3)
    again = RelationSet.from_json(json.loads(json.dumps(rs.to_json())))
    assert again.support == rs.support and again.relations == rs.relations


def test_localization_small_degree():
    for cs in (planar(3), genus_boundary(1, 0)):
        r = verify_localization(cs, 3)
        assert r.equal and not r.gaps
        assert r.kernel_dim == r.monomials - r.theta_rank
        assert r.conclusion == "verified up to degree 3"
        assert "verified up to degree 3" in r.to_text()
        doc = r.to_json()
        assert doc["equal"] and doc["ideal_rank"] == doc["kernel_dim"]


def test_localization_degree_two_containment():
    cs = planar(3)
    rels = [find_relations(cs, v, 2) for v in enumerate_supports(cs)]
    r = verify_localization(cs, 2, rels)
    assert r.ideal_rank == r.kernel_dim


def test_localization_reports_gaps():
    cs = genus_boundary(1, 0)
    r = verify_localization(cs, 2, [])
    assert not r.equal and r.ideal_rank == 0
    assert len(r.gaps) == r.kernel_dim > 0
    assert r.conclusion == "gap found at degree 2"
    for g in r.gaps:
        assert theta_eval(g, cs).is_zero()


def test_localization_cap():
    with pytest.raises(ResourceCapError):
        verify_localization(planar(4), 6, monomial_cap=1000)


def test_export_plain():
    cs = planar(3)
    rels = [find_relations(cs, (1, 2), 2)]
    doc = json.loads(export_presentation(cs, rels))
    assert set(doc) == {"surface", "generators", "relations"}
    assert doc["generators"][:3] == ["t1", "t2", "t3"] and "t123" in doc["generators"]
    assert doc["relations"][0]["support"] == [1, 2]
    assert TermPoly.from_json(doc["relations"][0]["poly"]) == rels[0].relations[0]
    text = export_presentation(cs, rels, "text")
    assert "generators (7)" in text and "= 0" in text


def test_export_specialized():
    cs = genus_boundary(1, 0)
    rels = [find_relations(cs, (1, 2), 4)]
    doc = json.loads(export_presentation(cs, rels, specialize_at=-1))
    assert doc["specialization"] == {"q_half": "-1"}
    assert len(doc["commutators"]) == 3
    for r in doc["relations"]:
        for t in r["poly"]["terms"]:
            den = Fraction(t["coeff"]).denominator
            assert den & (den - 1) == 0
    assert "commutators (3)" in export_presentation(cs, rels, "text", -1)
    with pytest.raises(SpecializationError):
        export_presentation(cs, rels, specialize_at=0)
    with pytest.raises(ValueError):
        export_presentation(cs, rels, "xml")


def test_monomial_degrees_bounded():
    ms = enumerate_monomials((2, 5), 4)
    assert max(monomial_degree(m) for m in ms) == 4
    assert all(e in (2, 5) for m in ms for S in m for e in S)
