"""Noncommutative polynomials in the generators t_S, |S| <= 3.

A letter is a sorted tuple of edge indices; a monomial is a tuple of
letters read left to right (the leftmost factor is stacked on top).
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .ring import ONE, ZERO, LaurentScalar

__all__ = ["TermPoly", "Letter", "Monomial", "letter_str", "parse_letter", "monomial_str",
           "monomial_degree", "monomial_md", "graded_key"]

Letter = Tuple[int, ...]
Monomial = Tuple[Letter, ...]


def letter_str(S: Letter) -> str:
    if all(i < 10 for i in S):
        return "t" + "".join(str(i) for i in S)
    return "t" + ".".join(str(i) for i in S)


def parse_letter(tok: str) -> Letter:
    """``t1``, ``t12`` (one digit per index) or ``t1.12`` (dotted)."""
    m = re.fullmatch(r"t([0-9.]+)", tok.strip())
    if not m:
        raise ValueError(f"unknown generator token {tok!r}")
    body = m.group(1)
    if "." in body:
        idx = tuple(int(x) for x in body.split("."))
    else:
        idx = tuple(int(c) for c in body)
    if not 1 <= len(idx) <= 3 or len(set(idx)) != len(idx) or min(idx) < 1:
        raise ValueError(f"bad generator {tok!r}")
    return tuple(sorted(idx))


def monomial_str(m: Monomial) -> str:
    return "*".join(letter_str(S) for S in m) if m else "1"


def monomial_degree(m: Monomial) -> int:
    return sum(len(S) for S in m)


def monomial_md(m: Monomial) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for S in m:
        for i in S:
            out[i] = out.get(i, 0) + 1
    return out


def graded_key(m: Monomial):
    """Degree first, then length, then letters (shorter index sets first)."""
    return (monomial_degree(m), len(m), tuple((len(S), S) for S in m))


class TermPoly:
    """Finite map monomial -> LaurentScalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, LaurentScalar]] = None):
        self.terms: Dict[Monomial, LaurentScalar] = {}
        if terms:
            for m, c in terms.items():
                c = LaurentScalar.coerce(c)
                if c:
                    m = tuple(tuple(sorted(S)) for S in m)
                    self.terms[m] = self.terms.get(m, ZERO) + c
                    if not self.terms[m]:
                        del self.terms[m]

    @classmethod
    def monomial(cls, m: Iterable[Iterable[int]], coeff=ONE) -> "TermPoly":
        return cls({tuple(tuple(S) for S in m): coeff})

    @classmethod
    def one(cls) -> "TermPoly":
        return cls({(): ONE})

    @classmethod
    def gen(cls, *S: int) -> "TermPoly":
        return cls({(tuple(sorted(S)),): ONE})

    def copy(self) -> "TermPoly":
        out = TermPoly()
        out.terms = dict(self.terms)
        return out

    def iadd(self, other: "TermPoly", coeff=ONE) -> "TermPoly":
        coeff = LaurentScalar.coerce(coeff)
        for m, c in other.terms.items():
            v = self.terms.get(m, ZERO) + coeff * c
            if v:
                self.terms[m] = v
            else:
                self.terms.pop(m, None)
        return self

    def __add__(self, other):
        return self.copy().iadd(other)

    def __sub__(self, other):
        return self.copy().iadd(other, -ONE)

    def __neg__(self):
        return TermPoly({m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "TermPoly":
        c = LaurentScalar.coerce(c)
        return TermPoly({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        if not isinstance(other, TermPoly):
            return NotImplemented
        out = TermPoly()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out.iadd(TermPoly({m1 + m2: ONE}), c1 * c2)
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TermPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: graded_key(kv[0]))

    @property
    def degree(self) -> int:
        return max((monomial_degree(m) for m in self.terms), default=0)

    def edges(self):
        return sorted({i for m in self.terms for S in m for i in S})

    def to_json(self) -> dict:
        return {"terms": [{"monomial": [letter_str(S) for S in m], "coeff": c.to_json()}
                          for m, c in self.items()]}

    @classmethod
    def from_json(cls, data) -> "TermPoly":
        out = cls()
        for t in data["terms"]:
            m = tuple(parse_letter(x) for x in t["monomial"])
            out.iadd(cls({m: LaurentScalar.from_json(t["coeff"])}))
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items():
            ms = monomial_str(m)
            if c == ONE:
                parts.append(ms)
            elif c == -ONE:
                parts.append("-" + ms)
            else:
                parts.append(f"({c})*{ms}" if m else f"({c})")
        return " + ".join(parts)

    def __repr__(self):
        return f"TermPoly({self})"
