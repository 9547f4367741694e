import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbskein.topology import (
    CuttingSystem,
    CuttingSystemError,
    Gate,
    Hole,
    flip,
    genus_boundary,
    planar,
    standard_cutting_system,
    subsurface,
    surface_invariants,
    validate,
)


def boundary_circles(cs):
    """Trace boundary circles as cycles of hole segments.

    Leaving a hole, the next polygon segment is either another hole or a
    gate; crossing the gate lands after its partner gate.
    """
    segs = cs.segments
    n = len(segs)
    partner = {}
    for k, s in enumerate(segs):
        if isinstance(s, Gate) and s.edge in cs.active_edges:
            partner[k] = next(j for j, t in enumerate(segs)
                              if isinstance(t, Gate) and t.edge == s.edge and t.side == flip(s.side))
    holes = [k for k in range(n) if k not in partner]

    def succ(k):
        j = (k + 1) % n
        while j in partner:
            j = (partner[j] + 1) % n
        return j

    seen, circles = set(), 0
    for h in holes:
        if h in seen:
            continue
        circles += 1
        k = h
        while k not in seen:
            seen.add(k)
            k = succ(k)
    return circles


def genus_oracle(cs):
    n = len(cs.active_edges)
    b = boundary_circles(cs)
    chi = 1 - n  # a disk with n pairs of boundary arcs glued
    assert (2 - chi - b) % 2 == 0
    return (2 - chi - b) // 2, b


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_planar_genus_and_boundary(n):
    cs = planar(n)
    assert validate(cs).ok
    assert genus_oracle(cs) == (0, n + 1)
    inv = surface_invariants(cs)
    assert (inv["genus"], inv["boundary_components"]) == (0, n + 1)


@pytest.mark.parametrize("g,k", [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (3, 0), (0, 2)])
def test_genus_boundary(g, k):
    cs = genus_boundary(g, k)
    assert validate(cs).ok
    assert len(cs.active_edges) == 2 * g + k
    assert genus_oracle(cs) == (g, k + 1)
    inv = surface_invariants(cs)
    assert (inv["genus"], inv["boundary_components"]) == (g, k + 1)


def test_planar_one_is_annulus():
    cs = planar(1)
    gates = [s for s in cs.segments if isinstance(s, Gate)]
    holes = [s for s in cs.segments if isinstance(s, Hole)]
    assert sorted((g.edge, g.side) for g in gates) == [(1, "+"), (1, "-")]
    assert len(holes) == 2
    # gates alternate with holes
    kinds = [isinstance(s, Gate) for s in cs.segments]
    assert kinds in ([True, False, True, False], [False, True, False, True])


def test_torus_word_is_square_with_slit():
    cs = genus_boundary(1, 0)
    gates = [(s.edge, s.side) for s in cs.segments if isinstance(s, Gate)]
    assert len(gates) == 4 and len(cs.segments) == 5
    # the two edges alternate around the square
    assert [e for e, _ in gates] == [1, 2, 1, 2]
    assert gates[0][1] == gates[1][1] and gates[2][1] == gates[3][1] != gates[0][1]


def test_standard_dispatch():
    assert standard_cutting_system("planar", 3) == planar(3)
    assert standard_cutting_system("genus-boundary", 2, 0) == genus_boundary(2, 0)
    with pytest.raises(CuttingSystemError):
        standard_cutting_system("sphere", 1)
    with pytest.raises(CuttingSystemError):
        genus_boundary(0, 0)
    with pytest.raises(CuttingSystemError):
        planar(0)


def test_subsurface_all_and_empty():
    cs = genus_boundary(2, 0)
    assert subsurface(cs, cs.active_edges) == cs
    disk = subsurface(cs, [])
    assert validate(disk).ok
    assert genus_oracle(disk) == (0, 1)


def test_subsurface_of_genus_two():
    cs = genus_boundary(2, 0)
    sub = subsurface(cs, [1, 2])
    assert validate(sub).ok
    assert genus_oracle(sub) == (1, 1)
    assert surface_invariants(sub)["genus"] == 1
    sub = subsurface(cs, [2, 3])
    assert genus_oracle(sub) == (0, 3)


def test_subsurface_rejects_inactive():
    with pytest.raises(CuttingSystemError):
        subsurface(planar(2), [3])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(0, 4), (1, 2), (2, 1), (2, 0)]), st.data())
def test_subsurface_monotone(gk, data):
    g, k = gk
    cs = planar(k) if g == 0 else genus_boundary(g, k)
    edges = sorted(cs.active_edges)
    v = data.draw(st.sets(st.sampled_from(edges)))
    u = data.draw(st.sets(st.sampled_from(sorted(v)))) if v else set()
    sv = subsurface(cs, v)
    assert sv.active_edges == frozenset(v)
    assert subsurface(sv, u) == subsurface(cs, u)
    assert validate(sv).ok
    inv = surface_invariants(sv)
    assert (inv["genus"], inv["boundary_components"]) == genus_oracle(sv)


def test_validate_same_side_twice():
    cs = CuttingSystem.build([Gate(1, "+"), Hole("a"), Gate(1, "+"), Hole("b")])
    d = validate(cs)
    assert not d.gluing and not d.ok


def test_validate_two_polygons():
    cs = CuttingSystem(((Gate(1, "+"), Hole("a")), (Gate(1, "-"), Hole("b"))), frozenset({1}),
                       ((1, "+"),))
    d = validate(cs)
    assert not d.condition_i and not d.ok


def test_validate_interior_vertex():
    # the closed torus word has no hole: its single vertex is interior
    cs = CuttingSystem.build([Gate(1, "-"), Gate(2, "-"), Gate(1, "+"), Gate(2, "+")])
    d = validate(cs)
    assert not d.ok and not d.condition_iii


def test_json_round_trip():
    cs = CuttingSystem.build(genus_boundary(1, 1).segments, entry_side={2: "-"})
    data = json.loads(json.dumps(cs.to_json()))
    back = CuttingSystem.from_json(data)
    assert back == cs
    assert back.entry(2) == "-" and back.entry(1) == "+"
    assert back.digest() == cs.digest()
    assert set(data) >= {"segments", "active", "entry_side"}
