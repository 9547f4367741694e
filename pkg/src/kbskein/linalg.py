"""Exact sparse linear algebra over Q(s), s = q^(1/2).

Columns are SkeinVectors (or any map key -> LaurentScalar).  Each column is
scaled by a unit of R so that all of its entries become integer polynomials
in s; elimination is fraction-free with gcd cancellation, and results are
mapped back into R.
"""

from __future__ import annotations

import heapq
import random
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from flint import fmpz_poly, nmod_mat

from .ring import ONE, ZERO, LaurentScalar, _div_loop

_LOOP = LaurentScalar({2: 1, -2: 1})

__all__ = ["IncrementalKernel", "scalar_to_poly", "poly_to_scalar", "rank_mod_p",
           "specialize_mod_p", "NotInRingError", "LOOP_POLY", "solve_in_ring", "unit_inverse"]

# s^4 + 1 = s^2 (q + q^-1)
LOOP_POLY = fmpz_poly([1, 0, 0, 0, 1])
_ONE = fmpz_poly([1])


class NotInRingError(ArithmeticError):
    """A solution exists over Q(s) but not with coefficients in R."""


def scalar_to_poly(c: LaurentScalar) -> Tuple[fmpz_poly, int, int]:
    """``c = s^shift * P(s) / (s^4 + 1)^k``, returned as (P, shift, k)."""
    terms = c.terms
    if not terms:
        return fmpz_poly([]), 0, 0
    lo = terms[0][0]
    coeffs = [0] * (terms[-1][0] - lo + 1)
    for e, v in terms:
        coeffs[e - lo] = v
    k = c.denom_pow
    # (q + q^-1)^-k = s^(2k) / (s^4 + 1)^k
    return fmpz_poly(coeffs), lo + 2 * k, k


def poly_to_scalar(p: fmpz_poly, shift: int = 0, k: int = 0) -> LaurentScalar:
    """``s^shift * p(s) / (s^4 + 1)^k`` as an element of R."""
    coeffs = [int(x) for x in p.coeffs()]
    num = {i + shift - 2 * k: c for i, c in enumerate(coeffs) if c}
    return LaurentScalar(num, k)


def _split_unit(p: fmpz_poly) -> Tuple[int, int, fmpz_poly]:
    """Write p = sign * s^a * (s^4+1)^k * rest with rest primitive-ish; returns (a, k, rest)."""
    coeffs = [int(x) for x in p.coeffs()]
    a = 0
    while a < len(coeffs) and coeffs[a] == 0:
        a += 1
    rest = fmpz_poly(coeffs[a:])
    k = 0
    while rest.degree() >= 4:
        q, r = divmod(rest, LOOP_POLY)
        if r != 0:
            break
        rest = q
        k += 1
    return a, k, rest


class IncrementalKernel:
    """Incremental column echelon form tracking column combinations.

    ``add(tag, column)`` returns None when the column is independent of the
    previous ones, otherwise the relation (a map tag -> LaurentScalar, with
    the new tag present) expressing the dependency.
    """

    def __init__(self):
        self.row_index: Dict[Hashable, int] = {}
        self.pivots: Dict[int, int] = {}          # row -> position in self.basis
        self.basis: List[Tuple[int, Dict[int, fmpz_poly], Dict[int, fmpz_poly]]] = []
        self.tags: List[Hashable] = []
        self.scale: List[Tuple[int, int]] = []    # (shift, k): column_j * s^-shift (s^4+1)^k
        self.rank = 0

    def _poly_column(self, column: Mapping[Hashable, LaurentScalar]):
        items = []
        for key, c in column.items():
            if not c:
                continue
            r = self.row_index.get(key)
            if r is None:
                r = self.row_index[key] = len(self.row_index)
            items.append((r, scalar_to_poly(c)))
        if not items:
            return {}, (0, 0)
        K = max(k for _r, (_p, _sh, k) in items)
        S = min(sh for _r, (_p, sh, _k) in items)
        vec = {}
        for r, (p, sh, k) in items:
            q = p * LOOP_POLY ** (K - k)
            if sh > S:
                q = q * fmpz_poly([0] * (sh - S) + [1])
            vec[r] = q
        # column * s^-S * (s^4+1)^K has polynomial entries vec
        return vec, (S, K)

    def _reduce(self, vec: Dict[int, fmpz_poly], comb: Dict[int, fmpz_poly]):
        heap = [self.pivots[r] for r in vec if r in self.pivots]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            bi = heapq.heappop(heap)
            prow, bvec, bcomb = self.basis[bi]
            a = vec.get(prow)
            if a is None:
                continue
            c = bvec[prow]
            g = a.gcd(c)
            fa, fc = a // g, c // g
            # vec <- fc * vec - fa * bvec
            if fc != _ONE:
                for r in vec:
                    vec[r] = vec[r] * fc
                for t in comb:
                    comb[t] = comb[t] * fc
            for r, x in bvec.items():
                v = vec.get(r)
                v = -fa * x if v is None else v - fa * x
                if v == 0:
                    vec.pop(r, None)
                else:
                    vec[r] = v
                    if r in self.pivots:
                        pi = self.pivots[r]
                        if pi not in seen and pi > bi:
                            seen.add(pi)
                            heapq.heappush(heap, pi)
            for t, x in bcomb.items():
                v = comb.get(t)
                v = -fa * x if v is None else v - fa * x
                if v == 0:
                    comb.pop(t, None)
                else:
                    comb[t] = v
            vec.pop(prow, None)
            _remove_content(vec, comb)
        return vec, comb

    def add(self, tag: Hashable, column: Mapping[Hashable, LaurentScalar]):
        j = len(self.tags)
        self.tags.append(tag)
        vec, sc = self._poly_column(column)
        self.scale.append(sc)
        comb = {j: fmpz_poly([1])}
        vec, comb = self._reduce(vec, comb)
        if vec:
            prow = min(vec, key=lambda r: (_poly_weight(vec[r]), r))
            self.pivots[prow] = len(self.basis)
            self.basis.append((prow, vec, comb))
            self.rank += 1
            return None
        return self._relation(comb)

    def _relation(self, comb: Dict[int, fmpz_poly]) -> Dict[Hashable, LaurentScalar]:
        _remove_content({}, comb)
        out = {}
        for t, p in comb.items():
            S, K = self.scale[t]
            # original column_t = s^S (s^4+1)^-K * poly column
            out[self.tags[t]] = poly_to_scalar(p, -S, 0) * poly_to_scalar(LOOP_POLY ** K, 0, 0)
        return _normalize_relation(out)

    def reduce_target(self, column: Mapping[Hashable, LaurentScalar]):
        """Express ``column`` through the added columns, or None if independent.

        Returns a map tag -> LaurentScalar.  Raises NotInRingError when the
        coefficients are not in R.
        """
        vec, sc = self._poly_column(column)
        comb = {-1: fmpz_poly([1])}
        vec, comb = self._reduce(vec, comb)
        if vec:
            return None
        m = comb.pop(-1)
        # m * target_poly = - sum comb_t * col_t_poly
        a, k, rest = _split_unit(m)
        g = rest
        if g.degree() > 0 or abs(int(g.coeffs()[0])) != 1:
            # try to cancel a common factor with the remaining coefficients
            for p in comb.values():
                g = g.gcd(p)
                if g.degree() == 0 and abs(int(g.coeffs()[0])) == 1:
                    break
            rest_q = rest // g
            if rest_q.degree() > 0 or abs(int(rest_q.coeffs()[0])) != 1:
                raise NotInRingError(f"solution has a denominator outside R: {rest_q}")
        else:
            rest_q = rest
            g = _ONE
        sign = int(rest_q.coeffs()[0])
        S0, K0 = sc
        out = {}
        for t, p in comb.items():
            p = p // g
            St, Kt = self.scale[t]
            # m*target*s^-S0 (s^4+1)^K0 = -sum comb_t * col_t * s^-St (s^4+1)^Kt
            # with m = sign * s^a (s^4+1)^k after cancelling g
            coeff = poly_to_scalar(-p * sign, S0 - St - a, 0)
            e = Kt - K0 - k
            if e >= 0:
                coeff = coeff * poly_to_scalar(LOOP_POLY ** e)
            else:
                # (s^4+1)^e = s^(2e) (q + q^-1)^e
                coeff = coeff * LaurentScalar({2 * e: 1}, -e)
            if coeff:
                out[self.tags[t]] = coeff
        return out


def unit_inverse(c: LaurentScalar) -> Optional[LaurentScalar]:
    """Inverse of c when c is a unit of R (+-q^(n/2) times a power of q + q^-1)."""
    num = dict(c.terms)
    j = 0
    while len(num) > 1:
        num = _div_loop(num)
        if num is None:
            return None
        j += 1
    if not num:
        return None
    (e, v), = num.items()
    if abs(v) != 1:
        return None
    out = LaurentScalar({-e: v})
    k = c.denom_pow - j
    return out * _LOOP ** k if k >= 0 else out.divide_loop(-k)


def solve_in_ring(columns: Sequence[Tuple[Hashable, Mapping[Hashable, LaurentScalar]]],
                  target: Mapping[Hashable, LaurentScalar], attempts: int = 24, seed: int = 0):
    """Coefficients in R expressing ``target`` through ``columns``, or None.

    Elimination first uses unit pivots only, which never leaves R.  What
    remains goes through the fraction-free echelon; as the particular
    solution there depends on the pivot order, a few deterministic
    reorderings are tried before giving up with NotInRingError.
    """
    cols = [dict((r, c) for r, c in col.items() if c) for _tag, col in columns]
    combos = [{i: ONE} for i in range(len(cols))]
    t = dict((r, c) for r, c in target.items() if c)
    x: Dict[int, LaurentScalar] = {}
    used = [False] * len(cols)
    while t:
        best = None
        for i, col in enumerate(cols):
            if used[i] or not col:
                continue
            for r, c in col.items():
                inv = unit_inverse(c)
                if inv is not None:
                    cand = (r not in t, len(col), i)
                    if best is None or cand < best[0]:
                        best = (cand, i, r, inv)
                    break
        if best is None:
            break
        _cand, p, r, inv = best
        used[p] = True
        piv = cols[p]
        lam = t.get(r)
        if lam is not None:
            lam = lam * inv
            _axpy(t, piv, -lam)
            for tag, c in combos[p].items():
                x[tag] = x.get(tag, ZERO) + lam * c
        for j, col in enumerate(cols):
            if used[j] or r not in col:
                continue
            mu = col[r] * inv
            _axpy(col, piv, -mu)
            cb = combos[j]
            for tag, c in combos[p].items():
                v = cb.get(tag, ZERO) - mu * c
                if v:
                    cb[tag] = v
                else:
                    cb.pop(tag, None)
    if t:
        rest = [i for i in range(len(cols)) if not used[i] and cols[i]]
        y = _solve_rest([cols[i] for i in rest], t, attempts, seed)
        if y is None:
            return None
        for k, c in y.items():
            for tag, v in combos[rest[k]].items():
                x[tag] = x.get(tag, ZERO) + c * v
    return {columns[i][0]: c for i, c in x.items() if c}


def _axpy(y: Dict, x: Mapping, a: LaurentScalar):
    for r, c in x.items():
        v = y.get(r, ZERO) + a * c
        if v:
            y[r] = v
        else:
            y.pop(r, None)


def _solve_rest(cols, target, attempts: int, seed: int):
    rng = random.Random(seed)
    order = list(range(len(cols)))
    for attempt in range(attempts):
        if attempt == 1:
            order.reverse()
        elif attempt > 1:
            rng.shuffle(order)
        solver = IncrementalKernel()
        for i in order:
            solver.add(i, cols[i])
        try:
            return solver.reduce_target(target)
        except NotInRingError:
            if solver.rank == len(cols):
                raise
    raise NotInRingError("no reordering of the columns gave a solution over R")


def _poly_weight(p: fmpz_poly):
    coeffs = [int(x) for x in p.coeffs()]
    nz = [c for c in coeffs if c]
    return (len(nz), max(abs(c) for c in nz), p.degree())


def _remove_content(vec: Dict[int, fmpz_poly], comb: Dict[int, fmpz_poly]):
    g = None
    for p in list(vec.values()) + list(comb.values()):
        g = p if g is None else g.gcd(p)
        if g.degree() == 0 and abs(int(g.coeffs()[0])) == 1:
            return
    if g is None:
        return
    if g.degree() == 0 and abs(int(g.coeffs()[0])) == 1:
        return
    for r in vec:
        vec[r] = vec[r] // g
    for t in comb:
        comb[t] = comb[t] // g


def _normalize_relation(rel: Dict[Hashable, LaurentScalar]) -> Dict[Hashable, LaurentScalar]:
    """Clear common units so that the relation is canonical up to sign."""
    if not rel:
        return rel
    # divide out a common power of s and of q + q^-1
    k = max(c.denom_pow for c in rel.values())
    lo = min(c.terms[0][0] for c in rel.values())
    out = {t: (c.shift(-lo) * (LaurentScalar({2: 1, -2: 1}) ** k)) for t, c in rel.items()}
    # remaining common factor of q + q^-1 in all numerators
    while all(c.divide_loop(1).denom_pow == 0 for c in out.values()):
        out = {t: c.divide_loop(1) for t, c in out.items()}
    lo = min(c.terms[0][0] for c in out.values())
    out = {t: c.shift(-lo) for t, c in out.items()}
    return out


def specialize_mod_p(c: LaurentScalar, a: int, p: int) -> int:
    """Image of c under s -> a in Z/p; raises ZeroDivisionError when undefined."""
    inv = pow(a, -1, p)
    val = 0
    for e, v in c.terms:
        val = (val + v * pow(a if e >= 0 else inv, abs(e), p)) % p
    if c.denom_pow:
        loop = (a * a + inv * inv) % p
        if loop == 0:
            raise ZeroDivisionError("q + q^-1 vanishes at this point")
        val = val * pow(pow(loop, c.denom_pow, p), -1, p) % p
    return val


def rank_mod_p(columns: Sequence[Mapping[Hashable, LaurentScalar]], p: int = 2147483629,
               a: Optional[int] = None, seed: int = 0) -> int:
    """Rank of the matrix with the given columns after s -> a mod p."""
    if a is None:
        a = random.Random(seed).randrange(2, p - 1)
    rows: Dict[Hashable, int] = {}
    for col in columns:
        for key in col:
            if key not in rows:
                rows[key] = len(rows)
    if not rows or not columns:
        return 0
    m = nmod_mat(len(columns), len(rows), p)
    for j, col in enumerate(columns):
        for key, c in col.items():
            m[j, rows[key]] = specialize_mod_p(c, a, p)
    return m.rank()
