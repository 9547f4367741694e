import random
from fractions import Fraction
from itertools import combinations

import pytest

from kbskein.diagram import generator_diagram, stack_all
from kbskein.topology import genus_boundary, planar


def letters(cs):
    edges = sorted(cs.active_edges)
    return [S for r in (1, 2, 3) for S in combinations(edges, r)]


def random_word(cs, rng, max_degree, min_degree=1):
    L = letters(cs)
    target = rng.randint(min_degree, max_degree)
    word = []
    while sum(map(len, word)) < target:
        S = rng.choice([x for x in L if sum(map(len, word)) + len(x) <= max_degree])
        word.append(S)
    return tuple(word)


def product_diagram(cs, word):
    return stack_all(cs, [generator_diagram(cs, S) for S in word])


# -- independent oracle at q^(1/2) = -1 --------------------------------------
# A closed curve with word w goes to -tr(rho(w)) for a representation rho of
# the free group on the edges; stacked curves multiply.


def _mat_mul(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def _inv(a):
    return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))


def random_sl2(rng):
    """A random integer matrix (a, b; c, d) with ad - bc = 1."""
    while True:
        a, b, c = rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(1, 4)
        if a != 0 and (1 + b * c) % a == 0:
            return ((a, b), (c, (1 + b * c) // a))


class TraceOracle:
    def __init__(self, cs, seed=0):
        rng = random.Random(seed)
        self.rho = {e: random_sl2(rng) for e in sorted(cs.active_edges)}

    def word_trace(self, word):
        m = ((1, 0), (0, 1))
        for a in word:
            g = self.rho[abs(a)]
            m = _mat_mul(m, g if a > 0 else _inv(g))
        return m[0][0] + m[1][1]

    def curve(self, word):
        return -self.word_trace(word)

    def vector(self, v):
        """Evaluate a closed SkeinVector at q^(1/2) = -1."""
        total = Fraction(0)
        for name, c in v.terms.items():
            val = c.specialize(-1)
            for loop in name.loops:
                val *= self.curve(loop.word)
            total += val
        return total

    def diagram(self, d):
        out = Fraction(1)
        for comp in d.components:
            out *= self.curve(tuple(p.letter for p in comp.passages))
        return out


@pytest.fixture(params=["planar3", "torus"])
def small_surface(request):
    return planar(3) if request.param == "planar3" else genus_boundary(1, 0)
