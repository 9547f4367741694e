"""Kauffman state sums onto the multicurve basis.

The polygon is drawn with its boundary points on a parabola, so chords are
straight segments and crossings along a chord have an exact rational order.
Every state of the crossings is traced into loops (and at most one arc),
loops are named by their reduced words and trivial ones become scalars.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .diagram import (
    CurveName,
    DiagramError,
    Passage,
    PositionedComponent,
    PositionedDiagram,
    Word,
    canonical_name,
    crossings,
    free_reduce,
    generator_diagram,
    reduce_loops,
    relative_normal_form,
    stack,
    word_from_str,
    word_to_str,
)
from .ring import LOOP, ONE, ZERO, LaurentScalar
from .topology import CuttingSystem

__all__ = [
    "BasisName",
    "SkeinVector",
    "ResourceCapError",
    "SkeinEngine",
    "engine_for",
    "bracket",
    "relative_bracket",
    "theta_eval",
    "skein_equal",
    "DEFAULT_CROSSING_CAP",
]

DEFAULT_CROSSING_CAP = 20


class ResourceCapError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Basis names and vectors


@dataclass(frozen=True)
class BasisName:
    loops: Tuple[CurveName, ...] = ()
    arc: Optional[Word] = None
    # for relative names: tight configuration of arc and loops (see
    # relative_normal_form); loop and arc names alone do not record how the
    # loops sit relative to the arc
    frame: Optional[tuple] = None

    @classmethod
    def make(cls, loops: Iterable[CurveName], arc: Optional[Word] = None,
             frame: Optional[tuple] = None) -> "BasisName":
        ls = tuple(sorted(l for l in loops if not l.is_trivial))
        return cls(ls, None if arc is None else tuple(arc), frame)

    @property
    def degree(self) -> int:
        return sum(len(l) for l in self.loops) + (len(self.arc) if self.arc else 0)

    def sort_key(self):
        return (self.degree, len(self.loops), [l.sort_key() for l in self.loops],
                () if self.arc is None else (len(self.arc), self.arc), self.frame or ())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def to_json(self) -> dict:
        out = {"loops": [str(l) for l in self.loops],
               "arc": None if self.arc is None else word_to_str(self.arc)}
        if self.frame is not None:
            out["frame"] = _frame_json(self.frame)
        return out

    @classmethod
    def from_json(cls, data) -> "BasisName":
        loops = [canonical_name(word_from_str(s)) for s in data.get("loops", [])]
        arc = data.get("arc")
        frame = data.get("frame")
        return cls.make(loops, None if arc is None else word_from_str(arc),
                        None if frame is None else _frame_from_json(frame))

    def __str__(self):
        parts = [f"({l})" for l in self.loops]
        if self.arc is not None:
            parts.insert(0, f"[{word_to_str(self.arc)}]")
        return "*".join(parts) if parts else "1"


EMPTY = BasisName()


def _frame_json(frame):
    counts, matching, ends = frame
    return {"counts": [list(c) for c in counts], "matching": [list(m) for m in matching],
            "ends": list(ends)}


def _frame_from_json(data):
    return (tuple(tuple(c) for c in data["counts"]), tuple(tuple(m) for m in data["matching"]),
            tuple(data["ends"]))


class SkeinVector:
    """Finite R-linear combination of basis names."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[BasisName, LaurentScalar]] = None):
        self.terms: Dict[BasisName, LaurentScalar] = {}
        if terms:
            for k, v in terms.items():
                v = LaurentScalar.coerce(v)
                if v:
                    self.terms[k] = v

    @classmethod
    def basis(cls, name: BasisName, coeff=ONE) -> "SkeinVector":
        return cls({name: coeff})

    def copy(self) -> "SkeinVector":
        out = SkeinVector()
        out.terms = dict(self.terms)
        return out

    def iadd(self, other: "SkeinVector", coeff: LaurentScalar = ONE) -> "SkeinVector":
        for k, v in other.terms.items():
            w = self.terms.get(k, ZERO) + coeff * v
            if w:
                self.terms[k] = w
            else:
                self.terms.pop(k, None)
        return self

    def __add__(self, other):
        return self.copy().iadd(other)

    def __sub__(self, other):
        return self.copy().iadd(other, -ONE)

    def __neg__(self):
        return SkeinVector({k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "SkeinVector":
        c = LaurentScalar.coerce(c)
        return SkeinVector({k: c * v for k, v in self.terms.items()})

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, SkeinVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def specialize(self, at) -> Dict[BasisName, Fraction]:
        out = {}
        for k, v in self.terms.items():
            x = v.specialize(at)
            if x:
                out[k] = x
        return out

    def to_json(self) -> dict:
        return {"terms": [dict(k.to_json(), coeff=v.to_json()) for k, v in self.items()]}

    @classmethod
    def from_json(cls, data) -> "SkeinVector":
        out = cls()
        for t in data["terms"]:
            out.iadd(cls.basis(BasisName.from_json(t), LaurentScalar.from_json(t["coeff"])))
        return out

    def __repr__(self):
        if not self.terms:
            return "SkeinVector(0)"
        return "SkeinVector(" + " + ".join(f"[{v}]{k}" for k, v in self.items()) + ")"


def skein_equal(u: SkeinVector, v: SkeinVector) -> bool:
    return (u - v).is_zero()


# ---------------------------------------------------------------------------
# State sum


@lru_cache(maxsize=None)
def _name(word: Word) -> CurveName:
    return canonical_name(word)


@lru_cache(maxsize=None)
def _loop_power_terms(t: int) -> Tuple[Tuple[int, int], ...]:
    return (LOOP ** t).terms


def _intersection_params(p1, p2, p3, p4):
    """Parameters (t, s) of the crossing of segments p1p2 and p3p4."""
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (p4[0] - p3[0], p4[1] - p3[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    w = (p3[0] - p1[0], p3[1] - p1[1])
    t = Fraction(w[0] * d2[1] - w[1] * d2[0], den)
    s = Fraction(w[0] * d1[1] - w[1] * d1[0], den)
    return t, s


class _Prepared:
    """Crossing graph of one diagram, independent of the smoothing state."""

    def __init__(self, d: PositionedDiagram):
        self.d = d
        arcs = d.arcs
        if len(arcs) > 1:
            raise DiagramError("at most one arc component is supported")
        d.check_generic()
        self.has_arc = bool(arcs)
        chords = d.all_chords()
        self.chords = chords
        self.cross = crossings(d)
        cidx = {(ci, j): k for k, (ci, j, _a, _b, _h) in enumerate(chords)}
        keys = sorted({k for (_ci, _j, a, b, _h) in chords for k in (a, b)})
        self.nx = len(self.cross)

        # exact coordinates on a parabola; perturb if three chords concur
        for attempt in range(50):
            if attempt == 0:
                xs = {k: Fraction(i) for i, k in enumerate(keys)}
            else:
                rng = random.Random(attempt)
                xs = {k: Fraction(i) + Fraction(rng.randrange(1, 997), 2000) for i, k in enumerate(keys)}
            pt = {k: (x, x * x) for k, x in xs.items()}
            events: Dict[int, List[Tuple[Fraction, int, int]]] = defaultdict(list)
            for x, cr in enumerate(self.cross):
                co, cu = cidx[cr.over], cidx[cr.under]
                a, b = chords[co][2], chords[co][3]
                c, e = chords[cu][2], chords[cu][3]
                t, s = _intersection_params(pt[a], pt[b], pt[c], pt[e])
                events[co].append((t, x, 0))
                events[cu].append((s, x, 1))
            ok = True
            for ev in events.values():
                ev.sort()
                if any(ev[i][0] == ev[i + 1][0] for i in range(len(ev) - 1)):
                    ok = False
                    break
            if ok:
                break
        else:  # pragma: no cover - generic perturbations always succeed
            raise DiagramError("could not place chords generically")
        self.events = {c: [(x, r) for (_t, x, r) in ev] for c, ev in events.items()}
        # position of each crossing on its chords
        self.event_pos: Dict[Tuple[int, int], int] = {}
        for c, ev in self.events.items():
            for i, (x, r) in enumerate(ev):
                self.event_pos[(x, r)] = i

        # port numbering: 4x + (0 over-back, 1 over-fwd, 2 under-back, 3 under-fwd)
        self.cidx = cidx
        self.chord_of_role = []
        for cr in self.cross:
            self.chord_of_role.append((cidx[cr.over], cidx[cr.under]))
        # smoothing pairings
        self.pair_a: List[Tuple[int, int, int, int]] = []
        self.pair_b: List[Tuple[int, int, int, int]] = []
        for x in range(self.nx):
            co, cu = self.chord_of_role[x]
            targets = [(chords[co][2], 4 * x + 0), (chords[co][3], 4 * x + 1),
                       (chords[cu][2], 4 * x + 2), (chords[cu][3], 4 * x + 3)]
            targets.sort()
            ports = [p for _k, p in targets]
            i = next(i for i, p in enumerate(ports) if (p & 3) < 2)
            o1, u1, o2, u2 = (ports[(i + j) % 4] for j in range(4))
            self.pair_a.append((o1, u1, o2, u2))
            self.pair_b.append((o1, u2, o2, u1))

        # component layout for walking along stops
        self.comp_chord_start = {}
        k = 0
        for ci, comp in enumerate(d.components):
            self.comp_chord_start[ci] = k
            k += comp.chord_count

        self.nxt = [0] * (4 * self.nx)
        self.word: List[Tuple[int, ...]] = [()] * (4 * self.nx)
        self.pas: List[Tuple[Tuple[int, Fraction, int], ...]] = [()] * (4 * self.nx)
        for x in range(self.nx):
            for r in range(4):
                chord = self.chord_of_role[x][r >> 1]
                pos = self.event_pos[(x, r >> 1)]
                direction = 1 if (r & 1) else -1
                dest, w, ps = self._walk(chord, pos, direction)
                p = 4 * x + r
                self.nxt[p] = dest
                self.word[p] = w
                self.pas[p] = ps

        # fixed pieces: crossing-free components and the arc start
        self.fixed_loops: List[Tuple[Tuple[int, ...], Tuple]] = []
        self.arc_start = None
        crossed = {cidx[cr.over] for cr in self.cross} | {cidx[cr.under] for cr in self.cross}
        for ci, comp in enumerate(d.components):
            base = self.comp_chord_start[ci]
            mine = range(base, base + comp.chord_count)
            if comp.kind == "arc":
                self.arc_start = self._walk(base, -1, 1)
                continue
            if any(c in crossed for c in mine):
                continue
            w, ps = [], []
            for st in comp.stops:
                if isinstance(st, Passage):
                    w.append(st.letter)
                    ps.append((st.edge, st.slot, st.direction))
            self.fixed_loops.append((tuple(w), tuple(ps)))

    def _walk(self, chord: int, pos: int, direction: int):
        """Follow the diagram from event ``pos`` of ``chord`` until the next port."""
        chords = self.chords
        comps = self.d.components
        letters: List[int] = []
        pas: List[Tuple[int, Fraction, int]] = []
        while True:
            ev = self.events.get(chord, [])
            nxt = pos + direction
            if 0 <= nxt < len(ev):
                x, role = ev[nxt]
                port = 4 * x + 2 * role + (0 if direction > 0 else 1)
                return port, tuple(letters), tuple(pas)
            ci, j = chords[chord][0], chords[chord][1]
            comp = comps[ci]
            m = len(comp.stops)
            base = self.comp_chord_start[ci]
            if direction > 0:
                stop_i = (j + 1) % m
                if comp.kind == "arc" and stop_i == m - 1:
                    return -1, tuple(letters), tuple(pas)
                st = comp.stops[stop_i]
                if isinstance(st, Passage):
                    letters.append(st.letter)
                    pas.append((st.edge, st.slot, st.direction))
                chord = base + (stop_i % comp.chord_count if comp.kind == "loop" else stop_i)
                pos = -1
            else:
                stop_i = j
                if comp.kind == "arc" and stop_i == 0:
                    return -2, tuple(letters), tuple(pas)
                st = comp.stops[stop_i]
                if isinstance(st, Passage):
                    letters.append(-st.letter)
                    pas.append((st.edge, st.slot, -st.direction))
                chord = base + ((j - 1) % comp.chord_count)
                pos = len(self.events.get(chord, []))


class SkeinEngine:
    """Caches for one cutting system: names, representatives and products."""

    def __init__(self, cs: CuttingSystem, crossing_cap: int = DEFAULT_CROSSING_CAP):
        self.cs = cs
        self.crossing_cap = crossing_cap
        self.reps: Dict[BasisName, PositionedDiagram] = {}
        self._product: Dict[Tuple[BasisName, Tuple[int, ...]], SkeinVector] = {}
        self._product_above: Dict[Tuple[BasisName, Tuple[int, ...]], SkeinVector] = {}
        self._theta: Dict[Tuple[Tuple[int, ...], ...], SkeinVector] = {(): SkeinVector.basis(EMPTY)}
        self.reps[EMPTY] = PositionedDiagram(cs, ())

    # -- state sum ---------------------------------------------------------
    def bracket(self, d: PositionedDiagram, fixed: Optional[Mapping[int, str]] = None,
                register: bool = True) -> SkeinVector:
        prep = _Prepared(d)
        return self._sum(prep, fixed or {}, register)

    def _sum(self, prep: _Prepared, fixed: Mapping[int, str], register: bool) -> SkeinVector:
        nx = prep.nx
        free = [x for x in range(nx) if x not in fixed]
        if len(free) > self.crossing_cap:
            raise ResourceCapError(f"{len(free)} crossings exceed the cap of {self.crossing_cap}")
        for x, v in fixed.items():
            if not 0 <= x < nx or v not in ("A", "B"):
                raise DiagramError(f"bad fixed smoothing {x}: {v}")
        nxt, word = prep.nxt, prep.word
        pair_a, pair_b = prep.pair_a, prep.pair_b
        partner = [0] * (4 * nx)
        for x, v in fixed.items():
            o1, u1, o2, u2 = pair_a[x] if v == "A" else pair_b[x]
            partner[o1], partner[u1], partner[o2], partner[u2] = u1, o1, u2, o2

        name_ids: Dict[CurveName, int] = {}
        id_names: List[CurveName] = []

        def intern(nm: CurveName) -> int:
            if nm.is_trivial:
                return -1
            i = name_ids.get(nm)
            if i is None:
                i = name_ids[nm] = len(id_names)
                id_names.append(nm)
            return i

        fixed_names = []
        fixed_trivial = 0
        for w, _ps in prep.fixed_loops:
            nm = _name(w)
            if nm.is_trivial:
                fixed_trivial += 1
            else:
                fixed_names.append(intern(nm))

        loop_cache: Dict[Tuple[int, ...], int] = {}
        acc: Dict[tuple, Dict[Tuple[int, int], int]] = {}
        state_of: Dict[tuple, List[Tuple[int, ...]]] = {}
        has_arc = prep.has_arc
        nf = len(free)
        nports = 4 * nx
        for bits in range(1 << nf):
            a_count = 0
            for i, x in enumerate(free):
                if (bits >> i) & 1:
                    o1, u1, o2, u2 = pair_b[x]
                    partner[o1], partner[u1], partner[o2], partner[u2] = u1, o1, u2, o2
                else:
                    a_count += 1
                    o1, u1, o2, u2 = pair_a[x]
                    partner[o1], partner[u1], partner[o2], partner[u2] = u1, o1, u2, o2
            visited = bytearray(nports)
            arc_seq = ()
            if has_arc:
                dest = prep.arc_start[0]
                seq = []
                while dest >= 0:
                    visited[dest] = 1
                    r2 = partner[dest]
                    visited[r2] = 1
                    seq.append(r2)
                    dest = nxt[r2]
                arc_seq = tuple(seq)
            names = list(fixed_names)
            trivial = fixed_trivial
            seqs = []
            for p in range(nports):
                if visited[p]:
                    continue
                visited[p] = 1
                seq = [p]
                r = nxt[p]
                while True:
                    visited[r] = 1
                    r2 = partner[r]
                    if r2 == p:
                        break
                    visited[r2] = 1
                    seq.append(r2)
                    r = nxt[r2]
                key = tuple(seq)
                nm = loop_cache.get(key)
                if nm is None:
                    w = []
                    for s in key:
                        w.extend(word[s])
                    nm = intern(_name(tuple(w)))
                    loop_cache[key] = nm
                if nm < 0:
                    trivial += 1
                else:
                    names.append(nm)
                    seqs.append(key)
            arc = None
            frame = None
            if has_arc:
                w = list(prep.arc_start[1])
                for s in arc_seq:
                    w.extend(word[s])
                arc = free_reduce(w)
                frame = self._frame(prep, arc_seq, seqs)
            names.sort()
            bn = (tuple(names), arc, frame)
            e = 2 * a_count - nf
            slot = acc.get(bn)
            if slot is None:
                slot = acc[bn] = {}
                if register and not has_arc:
                    state_of[bn] = seqs
            k = (e, trivial)
            slot[k] = slot.get(k, 0) + 1

        out = SkeinVector()
        names_of = {}
        for bk, slot in acc.items():
            bn = names_of[bk] = BasisName.make([id_names[i] for i in bk[0]], bk[1], bk[2])
            num: Dict[int, int] = {}
            for (e, t), cnt in slot.items():
                for le, lc in _loop_power_terms(t):
                    num[e + le] = num.get(e + le, 0) + cnt * lc
            v = LaurentScalar(num)
            if v:
                out.terms[bn] = v
        if register:
            for bk, seqs in state_of.items():
                bn = names_of[bk]
                if bn not in self.reps and bn in out.terms:
                    self.reps[bn] = self._representative(prep, seqs)
        return out

    def _frame(self, prep: _Prepared, arc_seq, seqs) -> tuple:
        arc_comp = prep.d.arcs[0]
        arc = [Passage(e, dr, s) for e, s, dr in prep.arc_start[2]]
        for s in arc_seq:
            arc.extend(Passage(e, dr, sl) for e, sl, dr in prep.pas[s])
        loops = []
        for w, ps in prep.fixed_loops:
            if not _name(w).is_trivial:
                loops.append([Passage(e, dr, s) for e, s, dr in ps])
        for key in seqs:
            ps = []
            for s in key:
                ps.extend(Passage(e, dr, sl) for e, sl, dr in prep.pas[s])
            loops.append(ps)
        frame, _trivial = relative_normal_form(self.cs, arc_comp.stops[0], arc_comp.stops[-1], arc, loops)
        return frame

    def _representative(self, prep: _Prepared, seqs) -> PositionedDiagram:
        loops = []
        for w, ps in prep.fixed_loops:
            if not _name(w).is_trivial:
                loops.append([Passage(e, dr, s) for e, s, dr in ps])
        for key in seqs:
            ps = []
            for s in key:
                ps.extend(prep.pas[s])
            loops.append([Passage(e, dr, s) for e, s, dr in ps])
        loops = reduce_loops(self.cs, loops)
        comps = tuple(PositionedComponent("loop", tuple(l), 0) for l in loops)
        return PositionedDiagram(self.cs, comps)

    def representative(self, name: BasisName) -> PositionedDiagram:
        try:
            return self.reps[name]
        except KeyError:
            raise KeyError(f"no positioned representative known for {name}") from None

    # -- products of generators -------------------------------------------
    def generator(self, S: Sequence[int]) -> PositionedDiagram:
        return PositionedDiagram(self.cs, (generator_diagram(self.cs, S),))

    def times_generator(self, name: BasisName, S: Tuple[int, ...]) -> SkeinVector:
        """The multicurve ``name`` stacked over the generator t_S."""
        key = (name, S)
        hit = self._product.get(key)
        if hit is None:
            d = stack(self.generator(S), self.representative(name))
            hit = self.bracket(d)
            self._product[key] = hit
        return hit

    def generator_times(self, S: Tuple[int, ...], name: BasisName) -> SkeinVector:
        """The generator t_S stacked over the multicurve ``name``."""
        key = (name, S)
        hit = self._product_above.get(key)
        if hit is None:
            d = stack(self.representative(name), self.generator(S))
            hit = self.bracket(d)
            self._product_above[key] = hit
        return hit

    def left_multiply(self, word: Tuple[Tuple[int, ...], ...], v: SkeinVector) -> SkeinVector:
        """theta(word) * v, the monomial stacked above v."""
        for S in reversed(word):
            out = SkeinVector()
            for name, c in v.terms.items():
                out.iadd(self.generator_times(tuple(sorted(S)), name), c)
            v = out
        return v

    def right_multiply(self, v: SkeinVector, word: Tuple[Tuple[int, ...], ...]) -> SkeinVector:
        """v * theta(word), the monomial stacked below v."""
        for S in word:
            out = SkeinVector()
            for name, c in v.terms.items():
                out.iadd(self.times_generator(name, tuple(sorted(S))), c)
            v = out
        return v

    def theta_monomial(self, word: Tuple[Tuple[int, ...], ...]) -> SkeinVector:
        """Bracket of the stacked product t_{S1} ... t_{Sr} (t_{S1} on top)."""
        word = tuple(tuple(sorted(S)) for S in word)
        hit = self._theta.get(word)
        if hit is not None:
            return hit
        prefix = self.theta_monomial(word[:-1])
        out = SkeinVector()
        for name, c in prefix.terms.items():
            out.iadd(self.times_generator(name, word[-1]), c)
        self._theta[word] = out
        return out

    def theta_eval(self, p) -> SkeinVector:
        out = SkeinVector()
        for mono, c in p.terms.items():
            for S in mono:
                for i in S:
                    if i not in self.cs.active_edges:
                        raise ValueError(f"edge {i} is not active")
            out.iadd(self.theta_monomial(mono), c)
        return out


_ENGINES: Dict[Tuple[str, int], SkeinEngine] = {}


def engine_for(cs: CuttingSystem, crossing_cap: int = DEFAULT_CROSSING_CAP) -> SkeinEngine:
    """Shared engine per cutting system (same faces and entry sides)."""
    key = (cs.digest(), crossing_cap)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = _ENGINES[key] = SkeinEngine(cs, crossing_cap)
    return eng


def bracket(d: PositionedDiagram, fixed: Optional[Mapping[int, str]] = None,
            engine: Optional[SkeinEngine] = None) -> SkeinVector:
    """State sum of a closed diagram.

    ``fixed`` maps crossing indices (as listed by ``crossings``) to ``'A'``
    (the q^(1/2) smoothing) or ``'B'``; fixed crossings carry no coefficient,
    so the result is the bracket of the partially smoothed diagram.
    """
    if d.arcs:
        raise DiagramError("use relative_bracket for diagrams with an arc")
    eng = engine or engine_for(d.cs)
    return eng.bracket(d, fixed)


def relative_bracket(d: PositionedDiagram, fixed: Optional[Mapping[int, str]] = None,
                     engine: Optional[SkeinEngine] = None) -> SkeinVector:
    if len(d.arcs) != 1:
        raise DiagramError("relative_bracket needs exactly one arc component")
    eng = engine or engine_for(d.cs)
    return eng.bracket(d, fixed, register=False)


def theta_eval(p, cs: CuttingSystem, engine: Optional[SkeinEngine] = None) -> SkeinVector:
    eng = engine or engine_for(cs)
    return eng.theta_eval(p)


def bracket_incremental(d: PositionedDiagram, order: Sequence[int],
                        engine: Optional[SkeinEngine] = None) -> SkeinVector:
    """Resolve crossings one at a time in ``order`` (skein relation recursion)."""
    eng = engine or engine_for(d.cs)
    prep = _Prepared(d)
    order = list(order)
    if sorted(order) != list(range(prep.nx)):
        raise ValueError("order must be a permutation of the crossings")
    qh, qbh = LaurentScalar.q_half(1), LaurentScalar.q_half(-1)

    def rec(i, fixed):
        if i == len(order):
            return eng._sum(prep, fixed, False)
        x = order[i]
        out = rec(i + 1, {**fixed, x: "A"}).scale(qh)
        return out.iadd(rec(i + 1, {**fixed, x: "B"}), qbh)

    return rec(0, {})
