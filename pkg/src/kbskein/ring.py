"""Exact arithmetic in Z[q^(1/2), q^(-1/2)] localized at q + q^-1.

Exponents are stored as integers counting half powers of q, so the key ``n``
stands for ``q^(n/2)``.  A value is ``numerator / (q + q^-1)^denom_pow``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

__all__ = ["LaurentScalar", "ZERO", "ONE", "LOOP", "Q_HALF", "QBAR_HALF", "SpecializationError"]


class SpecializationError(ValueError):
    """Raised when q + q^-1 vanishes at the requested specialization point."""


def _clean(terms: Mapping[int, int]) -> Dict[int, int]:
    return {e: c for e, c in terms.items() if c}


def _poly_mul(a: Mapping[int, int], b: Mapping[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return _clean(out)


# q + q^-1 in half-exponent units
_LOOP_POLY = {2: 1, -2: 1}


def _mul_loop_power(terms: Mapping[int, int], k: int) -> Dict[int, int]:
    out = dict(terms)
    for _ in range(k):
        out = _poly_mul(out, _LOOP_POLY)
    return out


def _div_loop(terms: Mapping[int, int]):
    """Exact division by q + q^-1, or None when it does not divide."""
    if not terms:
        return {}
    # (s^2 + s^-2) * sum b_e s^e: peel off the top coefficient repeatedly.
    rem = dict(terms)
    quot: Dict[int, int] = {}
    lo = min(rem)
    while rem:
        top = max(rem)
        if top - 4 < lo:
            return None
        c = rem.pop(top)
        quot[top - 2] = c
        e = top - 4
        v = rem.get(e, 0) - c
        if v:
            rem[e] = v
        else:
            rem.pop(e, None)
    return quot


class LaurentScalar:
    """Element of R = Z[q^(+-1/2), (q + q^-1)^-1] in canonical form."""

    __slots__ = ("_terms", "_k", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], int] = 0,
                 denom_pow: int = 0):
        if isinstance(terms, int):
            num = {0: terms} if terms else {}
        elif isinstance(terms, Mapping):
            num = _clean({int(e): int(c) for e, c in terms.items()})
        else:
            num = {}
            for e, c in terms:
                num[int(e)] = num.get(int(e), 0) + int(c)
            num = _clean(num)
        if denom_pow < 0:
            num = _mul_loop_power(num, -denom_pow)
            denom_pow = 0
        k = denom_pow
        while k > 0:
            q = _div_loop(num)
            if q is None:
                break
            num, k = q, k - 1
        if not num:
            k = 0
        self._terms = tuple(sorted(num.items()))
        self._k = k
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def q_half(cls, n: int, coeff: int = 1) -> "LaurentScalar":
        """``coeff * q^(n/2)``."""
        return cls({n: coeff})

    @classmethod
    def coerce(cls, value) -> "LaurentScalar":
        if isinstance(value, LaurentScalar):
            return value
        if isinstance(value, int):
            return cls(value)
        raise TypeError(f"cannot coerce {value!r} to LaurentScalar")

    # -- accessors ----------------------------------------------------
    @property
    def numerator(self) -> Dict[int, int]:
        return dict(self._terms)

    @property
    def terms(self) -> Tuple[Tuple[int, int], ...]:
        return self._terms

    @property
    def denom_pow(self) -> int:
        return self._k

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit_monomial(self) -> bool:
        """True for +-q^(n/2) (possibly over a power of q + q^-1), a unit of R."""
        return len(self._terms) == 1 and abs(self._terms[0][1]) == 1

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentScalar):
            if isinstance(other, int):
                other = LaurentScalar(other)
            else:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        k = max(self._k, other._k)
        a = _mul_loop_power(dict(self._terms), k - self._k)
        b = _mul_loop_power(dict(other._terms), k - other._k)
        for e, c in b.items():
            a[e] = a.get(e, 0) + c
        return LaurentScalar(a, k)

    __radd__ = __add__

    def __neg__(self):
        out = LaurentScalar.__new__(LaurentScalar)
        out._terms = tuple((e, -c) for e, c in self._terms)
        out._k = self._k
        out._hash = None
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentScalar(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentScalar({e: c * other for e, c in self._terms}, self._k)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        return LaurentScalar(_poly_mul(dict(self._terms), dict(other._terms)), self._k + other._k)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in R in general")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, n: int) -> "LaurentScalar":
        """Multiply by q^(n/2)."""
        return LaurentScalar({e + n: c for e, c in self._terms}, self._k)

    def divide_loop(self, k: int = 1) -> "LaurentScalar":
        """Divide by (q + q^-1)^k; total on R."""
        if k < 0:
            raise ValueError("k must be non-negative")
        return LaurentScalar(dict(self._terms), self._k + k)

    def bar(self) -> "LaurentScalar":
        """The involution q^(1/2) -> q^(-1/2)."""
        return LaurentScalar({-e: c for e, c in self._terms}, self._k)

    def specialize(self, at) -> Fraction:
        """Evaluate at q^(1/2) = ``at`` (a nonzero rational)."""
        s = Fraction(at)
        if s == 0:
            raise SpecializationError("q^(1/2) must be invertible")
        loop = s * s + 1 / (s * s)
        if self._k and loop == 0:
            raise SpecializationError(f"q + q^-1 vanishes at q^(1/2) = {at}")
        num = sum((Fraction(c) * s ** e for e, c in self._terms), Fraction(0))
        return num / loop ** self._k

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentScalar(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._k == other._k and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._terms, self._k))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- display / serialization -----------------------------------------
    def to_json(self) -> dict:
        return {"terms": [[e, c] for e, c in self._terms], "denom_pow": self._k}

    @classmethod
    def from_json(cls, data) -> "LaurentScalar":
        return cls([(e, c) for e, c in data["terms"]], data.get("denom_pow", 0))

    def __repr__(self):
        return f"LaurentScalar({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms, key=lambda t: -t[0]):
            mono = _fmt_mono(e)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = " ".join(f"{sg} {b}" for sg, b in parts)
        s = s[2:] if s.startswith("+ ") else "-" + s[2:]
        if self._k:
            den = "(q+q^-1)" if self._k == 1 else f"(q+q^-1)^{self._k}"
            s = f"({s})/{den}"
        return s


def _fmt_mono(e: int) -> str:
    if e == 0:
        return "1"
    if e % 2 == 0:
        p = e // 2
        return "q" if p == 1 else f"q^{p}"
    return f"q^{{{e}/2}}"


ZERO = LaurentScalar()
ONE = LaurentScalar(1)
Q_HALF = LaurentScalar.q_half(1)
QBAR_HALF = LaurentScalar.q_half(-1)
#: value of a contractible loop, -q - q^-1
LOOP = LaurentScalar({2: -1, -2: -1})
