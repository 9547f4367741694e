"""Low-degree relations among the generators and the localization check.

For every support (a set of 2 to 6 active edges) the relations of degree at
most 6 living on the subsurface of those edges are found as the exact kernel
of theta.  ``verify_localization`` compares the kernel of theta in degree
<= D on the whole surface with the span of the products a*z*b of these
relations, and ``export_presentation`` writes generators and relations.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .linalg import IncrementalKernel, specialize_mod_p
from .ring import ONE
from .rewrite import enumerate_words
from .skein import ResourceCapError, engine_for
from .terms import Monomial, TermPoly, graded_key, letter_str, monomial_degree
from .topology import CuttingSystem, subsurface, validate

__all__ = [
    "RelationSet",
    "LocalizationReport",
    "enumerate_supports",
    "enumerate_monomials",
    "find_relations",
    "verify_localization",
    "generators",
    "export_presentation",
    "specialized_terms",
]

RELATION_DEGREE = 6
DEFAULT_PRIME = 2147483629
DEFAULT_MONOMIAL_CAP = 20000


def enumerate_supports(cs: CuttingSystem) -> List[Tuple[int, ...]]:
    """All sorted k-subsets of the active edges with 2 <= k <= min(6, n)."""
    edges = sorted(cs.active_edges)
    out: List[Tuple[int, ...]] = []
    for k in range(2, min(6, len(edges)) + 1):
        out.extend(itertools.combinations(edges, k))
    return out


def enumerate_monomials(support: Sequence[int], degree: int) -> List[Monomial]:
    """Words in the generators indexed by ``support`` of degree <= ``degree``.

    Graded order (degree, then length, then letters); starts with the empty
    monomial.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    return enumerate_words(sorted(support), None, degree)


def generators(cs: CuttingSystem) -> List[Tuple[int, ...]]:
    """The index sets of the generators t_S, |S| <= 3, over the active edges."""
    edges = sorted(cs.active_edges)
    return [S for r in (1, 2, 3) for S in itertools.combinations(edges, r)]


@dataclass
class RelationSet:
    support: Tuple[int, ...]
    relations: List[TermPoly]
    degree: int = RELATION_DEGREE
    monomials: int = 0
    rank: int = 0

    def to_json(self) -> dict:
        return {
            "support": list(self.support),
            "degree": self.degree,
            "monomials": self.monomials,
            "rank": self.rank,
            "relations": [p.to_json() for p in self.relations],
        }

    @classmethod
    def from_json(cls, data) -> "RelationSet":
        return cls(tuple(data["support"]), [TermPoly.from_json(p) for p in data["relations"]],
                   data.get("degree", RELATION_DEGREE), data.get("monomials", 0), data.get("rank", 0))


def _leading(p: TermPoly) -> Monomial:
    return max(p.terms, key=graded_key)


def _kernel(cs: CuttingSystem, monomials: Sequence[Monomial]):
    """Exact kernel of theta on ``monomials`` (added in the given order).

    Each relation contains the monomial whose column was found dependent, so
    the relations found up to a degree span the kernel in that degree.
    """
    eng = engine_for(cs)
    ik = IncrementalKernel()
    rels: List[TermPoly] = []
    for m in monomials:
        rel = ik.add(m, eng.theta_monomial(m).terms)
        if rel is not None:
            rels.append(TermPoly(rel))
    return rels, ik.rank


def find_relations(cs: CuttingSystem, support: Sequence[int], degree: int = RELATION_DEGREE,
                   check: bool = True) -> RelationSet:
    """Kernel of theta in degree <= ``degree`` on the subsurface of ``support``."""
    support = tuple(sorted(support))
    sub = subsurface(cs, support)
    diag = validate(sub)
    if not diag.ok:
        raise ValueError(f"subsurface {support} is not valid: {diag.messages}")
    monos = enumerate_monomials(support, degree)
    rels, rank = _kernel(sub, monos)
    eng = engine_for(sub)
    seen = set()
    out = []
    for p in rels:
        lead = _leading(p)
        if lead in seen:
            continue
        if check and not eng.theta_eval(p).is_zero():  # pragma: no cover - exact kernel
            raise ArithmeticError(f"relation {p} does not vanish under theta")
        seen.add(lead)
        out.append(p)
    out.sort(key=lambda p: graded_key(_leading(p)))
    return RelationSet(support, out, degree, len(monos), rank)


# ---------------------------------------------------------------------------
# Localization check


@dataclass
class LocalizationReport:
    surface: str
    degree: int
    monomials: int
    theta_rank: int
    kernel_dim: int
    ideal_rank: int
    supports: List[Tuple[int, ...]]
    relation_counts: Dict[Tuple[int, ...], int]
    prime: int
    point: int
    gaps: List[TermPoly] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.ideal_rank == self.kernel_dim

    @property
    def conclusion(self) -> str:
        if self.equal:
            return f"verified up to degree {self.degree}"
        return f"gap found at degree {self.degree}"

    def to_json(self) -> dict:
        return {
            "surface": self.surface,
            "degree": self.degree,
            "monomials": self.monomials,
            "theta_rank": self.theta_rank,
            "kernel_dim": self.kernel_dim,
            "ideal_rank": self.ideal_rank,
            "equal": self.equal,
            "conclusion": self.conclusion,
            "supports": [{"support": list(v), "relations": self.relation_counts[v]}
                         for v in self.supports],
            "certificate": {"prime": self.prime, "q_half": self.point},
            "gaps": [p.to_json() for p in self.gaps],
        }

    def to_text(self) -> str:
        lines = [
            f"surface {self.surface}",
            f"monomials of degree <= {self.degree}: {self.monomials}",
            f"rank of theta: {self.theta_rank}",
            f"kernel dimension: {self.kernel_dim}",
            f"rank of ideal truncation: {self.ideal_rank}",
        ]
        for v in self.supports:
            lines.append(f"support {','.join(map(str, v))}: {self.relation_counts[v]} relations")
        for p in self.gaps:
            lines.append(f"gap: {p}")
        lines.append(self.conclusion)
        return "\n".join(lines) + "\n"


class _ModPSpan:
    """Row span of sparse vectors modulo p in echelon form.

    Columns are numbered in graded order, so the pivot of a row is its
    leading monomial; rows of the form a*z*b stay sparse under reduction.
    """

    def __init__(self, p: int):
        self.p = p
        self.pivots: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Dict[int, int]) -> bool:
        """Insert a row; True when it enlarged the span."""
        p = self.p
        row = dict(row)
        while row:
            lead = max(row)
            piv = self.pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                self.pivots[lead] = {j: v * inv % p for j, v in row.items()}
                return True
            c = row[lead]
            for j, v in piv.items():
                x = (row.get(j, 0) - c * v) % p
                if x:
                    row[j] = x
                else:
                    row.pop(j, None)
        return False


def _mod_p_row(p: TermPoly, index: Dict[Monomial, int], a: int, prime: int, left=(), right=()):
    row: Dict[int, int] = {}
    for m, c in p.terms.items():
        v = specialize_mod_p(c, a, prime)
        if v:
            row[index[tuple(left) + m + tuple(right)]] = v
    return row


def _ideal_rows(relsets: Sequence[RelationSet], all_monos_by_degree: Dict[int, List[Monomial]],
                degree: int) -> Iterator[Tuple[TermPoly, Monomial, Monomial]]:
    """Triples (z, a, b) with deg a + deg z + deg b <= degree, by increasing deg a + deg b."""
    for extra in range(degree + 1):
        for rs in relsets:
            for z in rs.relations:
                dz = z.degree
                if dz + extra > degree:
                    continue
                for da in range(extra + 1):
                    for a in all_monos_by_degree.get(da, ()):
                        for b in all_monos_by_degree.get(extra - da, ()):
                            yield z, a, b


def verify_localization(cs: CuttingSystem, degree: int = 6, relation_sets: Optional[Sequence[RelationSet]] = None,
                        prime: int = DEFAULT_PRIME, seed: int = 0,
                        monomial_cap: int = DEFAULT_MONOMIAL_CAP) -> LocalizationReport:
    """Compare the degree <= D kernel of theta with the truncated ideal.

    The kernel dimension is exact.  The ideal rank is computed after sending
    q^(1/2) to a random residue mod ``prime``; since specialization can only
    lower a rank and the ideal lies inside the kernel, equality of the two
    numbers proves that the spaces agree.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    edges = sorted(cs.active_edges)
    monos = enumerate_monomials(edges, degree)
    if len(monos) > monomial_cap:
        raise ResourceCapError(f"{len(monos)} monomials of degree <= {degree} exceed the cap {monomial_cap}")
    index = {m: i for i, m in enumerate(monos)}
    by_degree: Dict[int, List[Monomial]] = {}
    for m in monos:
        by_degree.setdefault(monomial_degree(m), []).append(m)

    kernel, theta_rank = _kernel(cs, monos)
    kernel_dim = len(monos) - theta_rank

    if relation_sets is None:
        relation_sets = [find_relations(cs, v, RELATION_DEGREE) for v in enumerate_supports(cs)]
    supports = [rs.support for rs in relation_sets]
    counts = {rs.support: len(rs.relations) for rs in relation_sets}

    rng = random.Random(seed)
    best = None
    for _attempt in range(2):
        a = rng.randrange(2, prime - 1)
        loop = (a * a + pow(a, -2, prime)) % prime
        if loop == 0:  # pragma: no cover - probability ~1/p
            continue
        span = _ModPSpan(prime)
        for z, left, right in _ideal_rows(relation_sets, by_degree, degree):
            span.add(_mod_p_row(z, index, a, prime, left, right))
            if span.rank >= kernel_dim:
                break
        if best is None or span.rank > best[0].rank:
            best = (span, a)
        if span.rank >= kernel_dim:
            break
    span, a = best

    ideal_rank = span.rank
    gaps: List[TermPoly] = []
    if ideal_rank < kernel_dim:
        for g in kernel:
            if span.add(_mod_p_row(g, index, a, prime)):
                gaps.append(g)
    return LocalizationReport(cs.digest(), degree, len(monos), theta_rank, kernel_dim,
                              ideal_rank, supports, counts, prime, a, gaps)


# ---------------------------------------------------------------------------
# Export


def specialized_terms(p: TermPoly, at) -> List[dict]:
    out = []
    for m, c in p.items():
        x = c.specialize(at)
        if x:
            out.append({"monomial": [letter_str(S) for S in m], "coeff": str(x)})
    return out


def _commutators(gens: Sequence[Tuple[int, ...]]) -> List[List[dict]]:
    return [[{"monomial": [letter_str(S), letter_str(T)], "coeff": "1"},
             {"monomial": [letter_str(T), letter_str(S)], "coeff": "-1"}]
            for S, T in itertools.combinations(gens, 2)]


def _text_terms(terms: List[dict]) -> str:
    parts = []
    for t in terms:
        mono = "*".join(t["monomial"]) or "1"
        parts.append(f"({t['coeff']})*{mono}")
    return " + ".join(parts) if parts else "0"


def export_presentation(cs: CuttingSystem, relation_sets: Sequence[RelationSet], fmt: str = "json",
                        specialize_at=None) -> str:
    """Generators and relations as a JSON or text document.

    With ``specialize_at`` the coefficients are evaluated at that value of
    q^(1/2) and the commutators of all generator pairs are appended.
    """
    if fmt not in ("json", "text"):
        raise ValueError("format must be 'json' or 'text'")
    gens = generators(cs)
    at = None
    if specialize_at is not None:
        at = Fraction(specialize_at)
        ONE.specialize(at)
    rels = []
    for rs in relation_sets:
        for p in rs.relations:
            if at is None:
                rels.append({"support": list(rs.support), "poly": p.to_json()})
            else:
                terms = specialized_terms(p, at)
                if terms:
                    rels.append({"support": list(rs.support), "poly": {"terms": terms}})
    doc = {
        "surface": cs.to_json(),
        "generators": [letter_str(S) for S in gens],
        "relations": rels,
    }
    if at is not None:
        doc["specialization"] = {"q_half": str(at)}
        doc["commutators"] = [{"poly": {"terms": c}} for c in _commutators(gens)]
    if fmt == "json":
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    lines = [f"surface {cs.word()}", f"generators ({len(gens)}): " + " ".join(doc["generators"])]
    if at is not None:
        lines.append(f"specialized at q^(1/2) = {at}")
    lines.append(f"relations ({len(rels)}):")
    for r in rels:
        sup = ",".join(map(str, r["support"]))
        if at is None:
            body = str(TermPoly.from_json(r["poly"]))
        else:
            body = _text_terms(r["poly"]["terms"])
        lines.append(f"[{sup}] {body} = 0")
    if at is not None:
        lines.append(f"commutators ({len(doc['commutators'])}):")
        for c in doc["commutators"]:
            lines.append(_text_terms(c["poly"]["terms"]) + " = 0")
    return "\n".join(lines) + "\n"
