"""Positioned curves and arcs in the cut-open polygon.

A curve is recorded by its passages through the cutting arcs.  Passage
``(edge, direction, slot)`` sits at position ``slot`` along the edge; the two
copies of that point on the polygon boundary are on gate ``(edge, '+')`` at
offset ``slot`` and on gate ``(edge, '-')`` at offset ``-slot`` (gluing
reverses order).  Between consecutive passages a curve runs along a straight
chord of the polygon, so two chords meet exactly when their endpoints
interlace on the boundary circle.

Words are tuples of nonzero ints: ``i`` is x_i and ``-i`` its inverse.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .topology import CuttingSystem, CuttingSystemError, Gate, flip

__all__ = [
    "DiagramError",
    "Passage",
    "Point",
    "PositionedComponent",
    "PositionedDiagram",
    "CurveName",
    "TRIVIAL_LOOP",
    "Crossing",
    "Measure",
    "free_reduce",
    "cyclic_reduce",
    "canonical_name",
    "word_to_str",
    "word_from_str",
    "generator_diagram",
    "generator_sides",
    "loop_from_word_slots",
    "stack",
    "stack_all",
    "crossings",
    "measure",
    "lam_le",
    "trace_word",
    "reslot",
    "reduce_loops",
    "relative_normal_form",
    "interlaced",
    "in_side",
    "exit_key",
    "arrive_key",
    "point_key",
]


class DiagramError(ValueError):
    pass


Word = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Words and names


def free_reduce(word: Iterable[int]) -> Word:
    out: List[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def _letter_key(a: int):
    return (abs(a), a < 0)


def _word_key(w: Word):
    return tuple(_letter_key(a) for a in w)


def inverse(word: Word) -> Word:
    return tuple(-a for a in reversed(word))


def word_to_str(word: Word) -> str:
    if not word:
        return "1"
    return ".".join(f"x{a}" if a > 0 else f"X{-a}" for a in word)


def word_from_str(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for tok in text.split("."):
        if tok[0] == "x":
            out.append(int(tok[1:]))
        elif tok[0] == "X":
            out.append(-int(tok[1:]))
        else:
            raise DiagramError(f"bad letter {tok!r}")
    return tuple(out)


@dataclass(frozen=True)
class CurveName:
    """Isotopy class of an unoriented simple closed curve: a canonical cyclic word."""

    word: Word

    @property
    def is_trivial(self) -> bool:
        return not self.word

    def __len__(self):
        return len(self.word)

    def sort_key(self):
        return (len(self.word), _word_key(self.word))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return word_to_str(self.word)


TRIVIAL_LOOP = CurveName(())


def canonical_name(word: Iterable[int]) -> CurveName:
    """Reduced cyclic word, least among rotations of it and its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return TRIVIAL_LOOP
    n = len(w)
    best = None
    for cand in (w, inverse(w)):
        for i in range(n):
            r = cand[i:] + cand[:i]
            k = _word_key(r)
            if best is None or k < best[0]:
                best = (k, r)
    return CurveName(best[1])


# ---------------------------------------------------------------------------
# Positioned pieces


@dataclass(frozen=True, order=True)
class Passage:
    edge: int
    direction: int
    slot: Fraction

    @property
    def letter(self) -> int:
        return self.edge * self.direction


@dataclass(frozen=True)
class Point:
    """A boundary point that is not a passage.

    Used for arc anchors on hole segments and for junctions where a
    component changes height.  ``value`` uses slot coordinates on gates.
    """

    segment: int
    value: Fraction


Stop = Union[Passage, Point]


def in_side(cs: CuttingSystem, p: Passage) -> str:
    e = cs.entry(p.edge)
    return e if p.direction > 0 else flip(e)


def point_key(cs: CuttingSystem, segment: int, value: Fraction):
    seg = cs.segments[segment]
    if isinstance(seg, Gate) and seg.side == "-":
        return (segment, -value)
    return (segment, value)


def exit_key(cs: CuttingSystem, stop: Stop):
    """Boundary point where the chord after ``stop`` starts."""
    if isinstance(stop, Passage):
        return point_key(cs, cs.gate_index(stop.edge, in_side(cs, stop)), stop.slot)
    return point_key(cs, stop.segment, stop.value)


def arrive_key(cs: CuttingSystem, stop: Stop):
    """Boundary point where the chord before ``stop`` ends."""
    if isinstance(stop, Passage):
        return point_key(cs, cs.gate_index(stop.edge, flip(in_side(cs, stop))), stop.slot)
    return point_key(cs, stop.segment, stop.value)


@dataclass(frozen=True)
class PositionedComponent:
    """A loop (cyclic stops) or an arc (linear stops, anchors at both ends)."""

    kind: str
    stops: Tuple[Stop, ...]
    height: int = 0
    chord_heights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("loop", "arc"):
            raise DiagramError(f"unknown component kind {self.kind!r}")
        if self.kind == "arc":
            if len(self.stops) < 2 or not isinstance(self.stops[0], Point) \
                    or not isinstance(self.stops[-1], Point):
                raise DiagramError("an arc needs anchor points at both ends")
        if self.chord_heights is not None and len(self.chord_heights) != self.chord_count:
            raise DiagramError("chord_heights has the wrong length")

    @property
    def chord_count(self) -> int:
        if self.kind == "loop":
            return len(self.stops) if self.stops else 0
        return len(self.stops) - 1

    @property
    def passages(self) -> Tuple[Passage, ...]:
        return tuple(s for s in self.stops if isinstance(s, Passage))

    @property
    def anchors(self):
        if self.kind != "arc":
            return None
        return self.stops[0], self.stops[-1]

    def heights(self) -> Tuple[int, ...]:
        if self.chord_heights is not None:
            return self.chord_heights
        return (self.height,) * self.chord_count

    def chords(self, cs: CuttingSystem):
        """List of (start_key, end_key, height)."""
        hs = self.heights()
        st = self.stops
        out = []
        for j in range(self.chord_count):
            a, b = st[j], st[(j + 1) % len(st)]
            out.append((exit_key(cs, a), arrive_key(cs, b), hs[j]))
        return out

    def reversed(self) -> "PositionedComponent":
        """Orientation reversal: stops reversed, passage directions flipped."""
        st = tuple(replace(s, direction=-s.direction) if isinstance(s, Passage) else s
                   for s in reversed(self.stops))
        hs = None
        if self.chord_heights is not None:
            if self.kind == "loop":
                # chord j joins stop j to j+1; after reversal the chord leaving
                # new stop k joins old stops (m-1-k) -> (m-2-k)
                m = len(self.stops)
                hs = tuple(self.chord_heights[(m - 2 - k) % m] for k in range(m))
            else:
                hs = tuple(reversed(self.chord_heights))
        if self.kind == "loop" and st:
            st = st[-1:] + st[:-1]
            if hs is not None:
                hs = hs[-1:] + hs[:-1]
        return PositionedComponent(self.kind, st, self.height, hs)

    def with_height(self, h: int) -> "PositionedComponent":
        if self.chord_heights is not None:
            d = h - self.height
            return PositionedComponent(self.kind, self.stops, h,
                                       tuple(x + d for x in self.chord_heights))
        return PositionedComponent(self.kind, self.stops, h)

    def max_height(self) -> int:
        return max(self.heights(), default=self.height)

    def min_height(self) -> int:
        return min(self.heights(), default=self.height)


@dataclass(frozen=True)
class PositionedDiagram:
    cs: CuttingSystem
    components: Tuple[PositionedComponent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def arcs(self):
        return [c for c in self.components if c.kind == "arc"]

    def max_height(self) -> int:
        return max((c.max_height() for c in self.components), default=-1)

    def min_height(self) -> int:
        return min((c.min_height() for c in self.components), default=0)

    def all_chords(self):
        """[(component index, chord index, start_key, end_key, height)]."""
        out = []
        for ci, comp in enumerate(self.components):
            for j, (a, b, h) in enumerate(comp.chords(self.cs)):
                out.append((ci, j, a, b, h))
        return out

    def check_generic(self):
        """Every passage end and every anchor or junction is a distinct boundary point."""
        keys = []
        for comp in self.components:
            for st in comp.stops:
                if isinstance(st, Passage):
                    keys.append(exit_key(self.cs, st))
                    keys.append(arrive_key(self.cs, st))
                else:
                    keys.append(point_key(self.cs, st.segment, st.value))
        if len(set(keys)) != len(keys):
            raise DiagramError("diagram is not in generic position (repeated boundary point)")


# ---------------------------------------------------------------------------
# Geometry of chords


def interlaced(a, b, c, d) -> bool:
    """Whether chords (a, b) and (c, d) cross; shared endpoints never count."""
    if a == c or a == d or b == c or b == d:
        return False
    if a > b:
        a, b = b, a
    return (a < c < b) != (a < d < b)


@dataclass(frozen=True)
class Crossing:
    over: Tuple[int, int]   # (component, chord)
    under: Tuple[int, int]
    over_component: int
    under_component: int


def crossings(d: PositionedDiagram) -> List[Crossing]:
    chords = d.all_chords()
    out = []
    for x in range(len(chords)):
        ci, cj, a, b, h = chords[x]
        for y in range(x + 1, len(chords)):
            di, dj, c, e, g = chords[y]
            if not interlaced(a, b, c, e):
                continue
            if h == g:
                raise DiagramError(
                    f"chords {(ci, cj)} and {(di, dj)} interlace at the same height {h}")
            if h > g:
                out.append(Crossing((ci, cj), (di, dj), ci, di))
            else:
                out.append(Crossing((di, dj), (ci, cj), di, ci))
    return out


@dataclass(frozen=True)
class Measure:
    degree: int
    cn: int
    md: Tuple[Tuple[int, int], ...]

    @property
    def lam(self) -> Tuple[int, int]:
        return (self.degree, self.cn)

    def md_dict(self) -> Dict[int, int]:
        return dict(self.md)


def lam_le(a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    """The order on (degree, crossing number): degree first, then crossings."""
    return a[0] < b[0] or (a[0] == b[0] and a[1] <= b[1])


def measure(d: Union[PositionedDiagram, PositionedComponent], cs: Optional[CuttingSystem] = None
            ) -> Measure:
    if isinstance(d, PositionedComponent):
        if cs is None:
            raise DiagramError("cutting system required")
        d = PositionedDiagram(cs, (d,))
    md: Dict[int, int] = defaultdict(int)
    for comp in d.components:
        for p in comp.passages:
            md[p.edge] += 1
    return Measure(sum(md.values()), len(crossings(d)), tuple(sorted(md.items())))


def trace_word(c: PositionedComponent) -> Word:
    return tuple(p.letter for p in c.passages)


# ---------------------------------------------------------------------------
# Generators


def generator_sides(cs: CuttingSystem, S: Sequence[int]):
    """Side choices (eps, varpi) for the generator on edges S.

    Tried in the order ``+`` first; the first embedded choice wins.  The
    choice only depends on the cyclic order of the gates of S.
    """
    S = tuple(S)
    if len(S) == 1:
        return ()
    choices = [("+",), ("-",)] if len(S) == 2 else [("+", "+"), ("+", "-"), ("-", "+"), ("-", "-")]
    for ch in choices:
        comp = _generator_component(cs, S, ch)
        if _self_embedded(cs, comp):
            return ch
    raise DiagramError(f"no embedded generator for edges {S}")


def _passage_with_in_side(cs: CuttingSystem, edge: int, side: str, slot) -> Passage:
    return Passage(edge, 1 if cs.entry(edge) == side else -1, Fraction(slot))


def _generator_component(cs: CuttingSystem, S, ch, slot=0) -> PositionedComponent:
    if len(S) == 1:
        (i,) = S
        stops = (_passage_with_in_side(cs, i, cs.entry(i), slot),)
    elif len(S) == 2:
        i, j = S
        (eps,) = ch
        # chords (x_i^+ -> x_j^eps) and (x_j^-eps -> x_i^-)
        stops = (_passage_with_in_side(cs, i, "+", slot), _passage_with_in_side(cs, j, flip(eps), slot))
    else:
        i, j, k = S
        eps, varpi = ch
        stops = (
            _passage_with_in_side(cs, i, "+", slot),
            _passage_with_in_side(cs, j, flip(eps), slot),
            _passage_with_in_side(cs, k, flip(varpi), slot),
        )
    return PositionedComponent("loop", stops, 0)


def _self_embedded(cs: CuttingSystem, comp: PositionedComponent) -> bool:
    ch = comp.chords(cs)
    for x in range(len(ch)):
        for y in range(x + 1, len(ch)):
            if interlaced(ch[x][0], ch[x][1], ch[y][0], ch[y][1]):
                return False
    return True


def generator_diagram(cs: CuttingSystem, S: Sequence[int], height: int = 0) -> PositionedComponent:
    """The fixed loop t_S crossing each edge of S once (|S| <= 3)."""
    S = tuple(sorted(S))
    if not 1 <= len(S) <= 3 or len(set(S)) != len(S):
        raise DiagramError(f"bad generator index set {S}")
    for i in S:
        if i not in cs.active_edges:
            raise CuttingSystemError(f"edge {i} is not active")
    ch = generator_sides(cs, S)
    return _generator_component(cs, S, ch).with_height(height)


def loop_from_word_slots(word: Word, slots: Sequence, height: int = 0) -> PositionedComponent:
    return PositionedComponent(
        "loop",
        tuple(Passage(abs(a), 1 if a > 0 else -1, Fraction(s)) for a, s in zip(word, slots)),
        height,
    )


# ---------------------------------------------------------------------------
# Stacking and re-slotting


def _edge_slots(d: PositionedDiagram):
    slots: Dict[int, List[Fraction]] = defaultdict(list)
    for comp in d.components:
        for st in comp.stops:
            if isinstance(st, Passage):
                slots[st.edge].append(st.slot)
            else:
                seg = d.cs.segments[st.segment]
                if isinstance(seg, Gate):
                    slots[seg.edge].append(st.value)
    return slots


def _hole_values(d: PositionedDiagram):
    vals: Dict[int, List[Fraction]] = defaultdict(list)
    for comp in d.components:
        for st in comp.stops:
            if isinstance(st, Point) and not isinstance(d.cs.segments[st.segment], Gate):
                vals[st.segment].append(st.value)
    return vals


def _shift_component(cs, comp: PositionedComponent, edge_shift, hole_shift, dh: int):
    stops = []
    for st in comp.stops:
        if isinstance(st, Passage):
            stops.append(replace(st, slot=st.slot + edge_shift.get(st.edge, 0)))
        else:
            seg = cs.segments[st.segment]
            if isinstance(seg, Gate):
                stops.append(replace(st, value=st.value + edge_shift.get(seg.edge, 0)))
            else:
                stops.append(replace(st, value=st.value + hole_shift.get(st.segment, 0)))
    hs = None if comp.chord_heights is None else tuple(h + dh for h in comp.chord_heights)
    return PositionedComponent(comp.kind, tuple(stops), comp.height + dh, hs)


def stack(lower: PositionedDiagram, upper: PositionedDiagram) -> PositionedDiagram:
    """``upper`` stacked over ``lower`` (the product upper * lower).

    The upper factor's heights are raised above the lower ones and its
    slots are moved past the lower factor's slots on every edge.
    """
    if not upper.components:
        return lower
    if not lower.components:
        return upper
    cs = lower.cs
    lo_slots, up_slots = _edge_slots(lower), _edge_slots(upper)
    edge_shift = {}
    for e, vals in up_slots.items():
        if lo_slots.get(e):
            edge_shift[e] = max(lo_slots[e]) - min(vals) + 1
    lo_h, up_h = _hole_values(lower), _hole_values(upper)
    hole_shift = {}
    for s, vals in up_h.items():
        if lo_h.get(s):
            hole_shift[s] = max(lo_h[s]) - min(vals) + 1
    dh = lower.max_height() - upper.min_height() + 1
    comps = tuple(lower.components) + tuple(
        _shift_component(cs, c, edge_shift, hole_shift, dh) for c in upper.components)
    return PositionedDiagram(cs, comps)


def stack_all(cs: CuttingSystem, comps_top_to_bottom: Sequence[PositionedComponent]) -> PositionedDiagram:
    """Stack single components; the first one ends up on top."""
    d = PositionedDiagram(cs, ())
    for comp in reversed(list(comps_top_to_bottom)):
        d = stack(d, PositionedDiagram(cs, (comp,)))
    return d


def reslot(d: PositionedDiagram, rng: random.Random) -> PositionedDiagram:
    """Randomly re-interleave the slots of different components on every edge.

    Each component keeps the relative order of its own passages, so
    single-height components stay embedded.
    """
    per_edge: Dict[int, List[Tuple[Fraction, int]]] = defaultdict(list)
    for ci, comp in enumerate(d.components):
        for st in comp.stops:
            if isinstance(st, Point):
                raise DiagramError("reslot only handles passage-only components")
            per_edge[st.edge].append((st.slot, ci))
    new_slot: Dict[Tuple[int, int, Fraction], Fraction] = {}
    for e, items in per_edge.items():
        by_comp: Dict[int, List[Fraction]] = defaultdict(list)
        for s, ci in items:
            by_comp[ci].append(s)
        for v in by_comp.values():
            v.sort()
        # random merge of the per-component sorted lists
        labels = [ci for ci, v in by_comp.items() for _ in v]
        rng.shuffle(labels)
        pos = {ci: 0 for ci in by_comp}
        for k, ci in enumerate(labels):
            s = by_comp[ci][pos[ci]]
            pos[ci] += 1
            new_slot[(e, ci, s)] = Fraction(k)
    comps = []
    for ci, comp in enumerate(d.components):
        stops = tuple(replace(st, slot=new_slot[(st.edge, ci, st.slot)]) for st in comp.stops)
        comps.append(PositionedComponent(comp.kind, stops, comp.height, comp.chord_heights))
    return PositionedDiagram(d.cs, tuple(comps))


# ---------------------------------------------------------------------------
# Simple multicurves


def reduce_loops(cs: CuttingSystem, loops: Sequence[Sequence[Passage]]) -> List[List[Passage]]:
    """Remove bigons between a simple multicurve and the cutting arcs.

    ``loops`` are the cyclic passage lists of pairwise disjoint simple
    loops.  Innermost cancelling pairs are pushed back across their edge
    until every loop is cyclically reduced; null loops disappear.
    """
    loops = [list(l) for l in loops]
    while True:
        slots: Dict[int, List[Fraction]] = defaultdict(list)
        for l in loops:
            for p in l:
                slots[p.edge].append(p.slot)
        for v in slots.values():
            v.sort()
        done = True
        for l in loops:
            m = len(l)
            if m < 2:
                continue
            for k in range(m):
                p, r = l[k], l[(k + 1) % m]
                if p.edge != r.edge or p.direction != -r.direction:
                    continue
                lo, hi = sorted((p.slot, r.slot))
                v = slots[p.edge]
                if v.index(hi) - v.index(lo) != 1:
                    continue
                if m == 2:
                    l.clear()
                else:
                    k2 = (k + 1) % m
                    for idx in sorted((k, k2), reverse=True):
                        del l[idx]
                done = False
                break
            if not done:
                break
        if done:
            return [l for l in loops if l]


def _reduce_strand(strand: List[Passage], cyclic: bool, slots: Dict[int, List[Fraction]]) -> bool:
    """Remove one innermost cancelling pair from ``strand``; True if one was found."""
    m = len(strand)
    for k in range(m if cyclic else m - 1):
        p, r = strand[k], strand[(k + 1) % m]
        if p.edge != r.edge or p.direction != -r.direction:
            continue
        lo, hi = sorted((p.slot, r.slot))
        v = slots[p.edge]
        if v.index(hi) - v.index(lo) != 1:
            continue
        for idx in sorted((k, (k + 1) % m), reverse=True):
            del strand[idx]
        v.remove(lo)
        v.remove(hi)
        return True
    return False


def relative_normal_form(cs: CuttingSystem, P: Point, Q: Point, arc: Sequence[Passage],
                         loops: Sequence[Sequence[Passage]]) -> Tuple[tuple, int]:
    """Isotopy invariant of a crossingless arc from P to Q together with loops.

    The strands are pulled tight across the cutting arcs; a tight
    configuration is determined by the number of strands on each edge and
    the non-crossing matching of the boundary points it induces in the
    polygon.  Returns (invariant, number of null loops removed).
    """
    strands = [list(arc)] + [list(l) for l in loops]
    slots: Dict[int, List[Fraction]] = defaultdict(list)
    for st in strands:
        for p in st:
            slots[p.edge].append(p.slot)
    for v in slots.values():
        v.sort()
    changed = True
    while changed:
        changed = any(_reduce_strand(st, i > 0, slots) for i, st in enumerate(strands) if len(st) >= 2)
    trivial = sum(1 for st in strands[1:] if not st)
    pairs = []
    a = strands[0]
    ends = [point_key(cs, P.segment, P.value)]
    for p in a:
        pairs.append((ends[-1], arrive_key(cs, p)))
        ends.append(exit_key(cs, p))
    pairs.append((ends[-1], point_key(cs, Q.segment, Q.value)))
    for st in strands[1:]:
        m = len(st)
        for k in range(m):
            pairs.append((exit_key(cs, st[k]), arrive_key(cs, st[(k + 1) % m])))
    keys = sorted({k for pr in pairs for k in pr})
    rank = {k: i for i, k in enumerate(keys)}
    matching = tuple(sorted(tuple(sorted((rank[u], rank[v]))) for u, v in pairs))
    counts = tuple(sorted((e, len(v)) for e, v in slots.items() if v))
    ends_rank = (rank[point_key(cs, P.segment, P.value)], rank[point_key(cs, Q.segment, Q.value)])
    return (counts, matching, ends_rank), trivial
