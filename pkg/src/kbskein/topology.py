"""Polygon-with-gates model of a surface with boundary and a cutting system.

The closure of the complement of the cutting arcs is a disk, drawn as a
polygon whose boundary is a cyclic word of segments.  ``Gate(i, '+')`` and
``Gate(i, '-')`` are the two sides of edge ``i``; gluing them (with reversed
orientation) rebuilds the surface.  ``Hole`` segments lie on the boundary of
the surface.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "Gate",
    "Hole",
    "CuttingSystem",
    "Diagnostics",
    "CuttingSystemError",
    "standard_cutting_system",
    "planar",
    "genus_boundary",
    "subsurface",
    "validate",
    "surface_invariants",
]


class CuttingSystemError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    edge: int
    side: str  # '+' or '-'

    def __post_init__(self):
        if self.side not in "+-" or len(self.side) != 1:
            raise CuttingSystemError(f"bad gate side {self.side!r}")

    def to_json(self):
        return ["gate", self.edge, self.side]


@dataclass(frozen=True)
class Hole:
    label: str

    def to_json(self):
        return ["hole", self.label]


def flip(side: str) -> str:
    return "-" if side == "+" else "+"


def _segment_from_json(item) -> object:
    kind = item[0]
    if kind == "gate":
        return Gate(int(item[1]), str(item[2]))
    if kind == "hole":
        return Hole(str(item[1]))
    raise CuttingSystemError(f"unknown segment kind {kind!r}")


@dataclass(frozen=True)
class CuttingSystem:
    """A polygon model of (surface, cutting system).

    ``faces`` normally holds a single cyclic segment word; more than one face
    is accepted only so that ``validate`` can report the failure.
    """

    faces: Tuple[Tuple[object, ...], ...]
    active_edges: FrozenSet[int]
    entry_side: Tuple[Tuple[int, str], ...] = ()
    _gate_index: Dict[Tuple[int, str], int] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        index = {}
        for k, seg in enumerate(self.faces[0] if self.faces else ()):
            if isinstance(seg, Gate) and seg.edge in self.active_edges:
                index.setdefault((seg.edge, seg.side), k)
        object.__setattr__(self, "_gate_index", index)

    @classmethod
    def build(cls, segments: Sequence[object], active: Optional[Iterable[int]] = None,
              entry_side: Optional[Dict[int, str]] = None) -> "CuttingSystem":
        segs = tuple(segments)
        if active is None:
            active = {s.edge for s in segs if isinstance(s, Gate)}
        active = frozenset(int(a) for a in active)
        sides = {i: "+" for i in active}
        if entry_side:
            sides.update({int(k): v for k, v in entry_side.items()})
        return cls((segs,), active, tuple(sorted(sides.items())))

    # -- basic accessors ---------------------------------------------------
    @property
    def segments(self) -> Tuple[object, ...]:
        return self.faces[0]

    @property
    def edge_count(self) -> int:
        edges = [s.edge for f in self.faces for s in f if isinstance(s, Gate)]
        return max(edges, default=0)

    @property
    def edges(self) -> Tuple[int, ...]:
        return tuple(sorted(self.active_edges))

    def entry(self, edge: int) -> str:
        """Side through which a positive (x_edge recording) passage enters."""
        return dict(self.entry_side).get(edge, "+")

    def gate_index(self, edge: int, side: str) -> int:
        try:
            return self._gate_index[(edge, side)]
        except KeyError:
            raise CuttingSystemError(f"edge {edge} is not an active edge") from None

    def is_gate(self, k: int) -> bool:
        seg = self.segments[k]
        return isinstance(seg, Gate) and seg.edge in self.active_edges

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        data = {}
        if len(self.faces) == 1:
            data["segments"] = [s.to_json() for s in self.segments]
        else:
            data["faces"] = [[s.to_json() for s in f] for f in self.faces]
        data["active"] = sorted(self.active_edges)
        data["entry_side"] = {str(i): s for i, s in self.entry_side}
        return data

    @classmethod
    def from_json(cls, data: dict) -> "CuttingSystem":
        if "faces" in data:
            faces = tuple(tuple(_segment_from_json(x) for x in f) for f in data["faces"])
        else:
            faces = (tuple(_segment_from_json(x) for x in data["segments"]),)
        active = data.get("active")
        if active is None:
            active = {s.edge for f in faces for s in f if isinstance(s, Gate)}
        active = frozenset(int(a) for a in active)
        sides = {i: "+" for i in active}
        sides.update({int(k): v for k, v in data.get("entry_side", {}).items()})
        return cls(faces, active, tuple(sorted(sides.items())))

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def word(self) -> str:
        parts = []
        for s in self.segments:
            if isinstance(s, Gate):
                mark = "" if s.edge in self.active_edges else "~"
                parts.append(f"{mark}g{s.edge}{s.side}")
            else:
                parts.append(f"h:{s.label}")
        return " ".join(parts)


# ---------------------------------------------------------------------------
# Standard systems


def planar(n: int) -> CuttingSystem:
    """Sigma_{0,n+1}: a disk with n inner holes, each joined to the outer circle."""
    if n < 1:
        raise CuttingSystemError("planar cutting system needs n >= 1")
    segs: List[object] = []
    for i in range(1, n + 1):
        segs += [Gate(i, "-"), Hole(f"h{i}"), Gate(i, "+"), Hole(f"o{i}")]
    return CuttingSystem.build(segs)


def genus_boundary(g: int, k: int) -> CuttingSystem:
    """Sigma_{g,k+1} with the 2g+k arcs of the preferred system."""
    if g < 0 or k < 0 or (g, k) == (0, 0):
        raise CuttingSystemError("need g, k >= 0 and (g, k) != (0, 0)")
    segs: List[object] = []
    e = 0
    for _ in range(g):
        a, b = e + 1, e + 2
        segs += [Gate(a, "-"), Gate(b, "-"), Gate(a, "+"), Gate(b, "+")]
        e += 2
    for j in range(1, k + 1):
        e += 1
        segs += [Gate(e, "-"), Hole(f"b{j}"), Gate(e, "+")]
    segs.append(Hole("b0"))
    return CuttingSystem.build(segs)


def standard_cutting_system(kind: str, *params: int) -> CuttingSystem:
    if kind == "planar":
        (n,) = params
        return planar(n)
    if kind in ("genus", "genus-boundary"):
        g, k = params
        return genus_boundary(g, k)
    raise CuttingSystemError(f"unknown kind {kind!r}")


def subsurface(cs: CuttingSystem, edges: Iterable[int]) -> CuttingSystem:
    """Cut along every active edge outside ``edges``."""
    keep = frozenset(edges)
    if not keep <= cs.active_edges:
        raise CuttingSystemError(f"{sorted(keep - cs.active_edges)} are not active edges")
    return CuttingSystem(cs.faces, keep, tuple((i, s) for i, s in cs.entry_side if i in keep))


# ---------------------------------------------------------------------------
# Invariants and validation


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, a):
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[a] = b


def _corners(cs: CuttingSystem):
    """Corner ids: (face, k) is the corner at the end of segment k."""
    ids = {}
    for f, face in enumerate(cs.faces):
        for k in range(len(face)):
            ids[(f, k)] = len(ids)
    return ids


def _gate_locations(cs: CuttingSystem):
    loc: Dict[Tuple[int, str], List[Tuple[int, int]]] = {}
    for f, face in enumerate(cs.faces):
        for k, seg in enumerate(face):
            if isinstance(seg, Gate) and seg.edge in cs.active_edges:
                loc.setdefault((seg.edge, seg.side), []).append((f, k))
    return loc


def surface_invariants(cs: CuttingSystem) -> dict:
    """Euler characteristic, boundary count and genus of the glued complex.

    Counts cells directly (vertices are classes of polygon corners) and
    traces the boundary graph formed by the hole segments.
    """
    ids = _corners(cs)
    uf = _UF(len(ids))
    loc = _gate_locations(cs)

    def start(f, k):
        return ids[(f, (k - 1) % len(cs.faces[f]))]

    def end(f, k):
        return ids[(f, k)]

    for i in cs.active_edges:
        for (fp, kp) in loc.get((i, "+"), [])[:1]:
            for (fm, km) in loc.get((i, "-"), [])[:1]:
                uf.union(start(fp, kp), end(fm, km))
                uf.union(end(fp, kp), start(fm, km))
    vertices = {uf.find(c) for c in ids.values()}
    holes = [(f, k) for f, face in enumerate(cs.faces) for k, s in enumerate(face)
             if not (isinstance(s, Gate) and s.edge in cs.active_edges)]
    V = len(vertices)
    E = len(cs.active_edges) + len(holes)
    F = len(cs.faces)
    chi = V - E + F
    # boundary graph: vertices + hole edges
    degree = {v: 0 for v in vertices}
    buf = _UF(len(ids))
    for f, k in holes:
        a, b = uf.find(start(f, k)), uf.find(end(f, k))
        degree[a] += 1
        degree[b] += 1
        buf.union(a, b)
    comps = {buf.find(v) for v in vertices if degree[v] > 0}
    h = len(comps)
    twice_genus = 2 - chi - h
    genus = twice_genus // 2 if twice_genus >= 0 and twice_genus % 2 == 0 else None
    return {
        "V": V,
        "E": E,
        "F": F,
        "euler_characteristic": chi,
        "boundary_components": h,
        "genus": genus,
        "vertex_hole_degrees": sorted(degree.values()),
    }


@dataclass
class Diagnostics:
    gluing: bool
    condition_i: bool
    condition_ii: bool
    condition_iii: bool
    condition_iv: bool
    messages: List[str]

    @property
    def ok(self) -> bool:
        return all((self.gluing, self.condition_i, self.condition_ii, self.condition_iii,
                    self.condition_iv))

    def to_json(self):
        return {
            "ok": self.ok,
            "gluing": self.gluing,
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "condition_iii": self.condition_iii,
            "condition_iv": self.condition_iv,
            "messages": list(self.messages),
        }


def validate(cs: CuttingSystem) -> Diagnostics:
    msgs: List[str] = []
    loc = _gate_locations(cs)
    gluing = True
    for i in sorted(cs.active_edges):
        for side in "+-":
            count = len(loc.get((i, side), []))
            if count != 1:
                gluing = False
                msgs.append(f"edge {i} has {count} gates on side {side!r}")
    # (i): one face, and the glued complex is connected
    cond_i = len(cs.faces) == 1
    if not cond_i:
        msgs.append(f"complement has {len(cs.faces)} components, expected one disk")
    if gluing and len(cs.faces) > 1:
        uf = _UF(len(cs.faces))
        for i in cs.active_edges:
            uf.union(loc[(i, "+")][0][0], loc[(i, "-")][0][0])
        if len({uf.find(f) for f in range(len(cs.faces))}) > 1:
            msgs.append("glued surface is disconnected")
    cond_ii = cond_iii = True
    if gluing and cond_i:
        inv = surface_invariants(cs)
        degs = inv["vertex_hole_degrees"]
        if any(d == 0 for d in degs):
            cond_iii = False
            msgs.append("interior vertex present (not supported)")
        if any(d not in (0, 2) for d in degs):
            cond_ii = False
            msgs.append("edge endpoints are not univalent boundary vertices")
        if inv["genus"] is None:
            cond_ii = False
            msgs.append("inconsistent Euler characteristic")
    elif not gluing:
        cond_ii = cond_iii = False
    cond_iv = all(cs.entry(i) in ("+", "-") for i in cs.active_edges)
    return Diagnostics(gluing, cond_i, cond_ii, cond_iii, cond_iv, msgs)
