"""Integer multivariate polynomials in pure Python (sympy sparse rings).

Same interface as the FLINT backend; slower, but has no compiled
dependency beyond what sympy itself needs.
"""
from __future__ import annotations

from sympy import ZZ
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import HeuristicGCDFailed
from sympy.polys.rings import ring

NAME = "pure"


class PolyRing:
    def __init__(self, names):
        self.names = tuple(names)
        self.ring, *gens = ring(",".join(self.names), ZZ, lex)
        self._gens = tuple(gens)
        self._zero_exp = (0,) * len(self.names)

    def gen(self, i):
        return self._gens[i]

    def const(self, n: int):
        return self.ring(int(n))

    def from_dict(self, d):
        return self.ring.from_dict({k: ZZ(int(c)) for k, c in d.items() if c})

    def to_dict(self, p):
        return {tuple(e): int(c) for e, c in p.items()}

    def gcd(self, a, b):
        try:
            return a.gcd(b)
        except HeuristicGCDFailed:
            # the dense path retries with the subresultant PRS algorithm
            return self.ring.dmp_inner_gcd(a, b)[0]

    def divexact(self, a, b):
        return a.exquo(b)

    def lc(self, p) -> int:
        return int(p.LC)

    def is_zero(self, p) -> bool:
        return not p

    def is_one(self, p) -> bool:
        return p == 1

    def degrees(self, p):
        if not p:
            return self._zero_exp
        return tuple(max(e[i] for e in p.keys()) for i in range(len(self.names)))

    def derivative(self, p, i):
        return p.diff(self._gens[i])

    def compose(self, p, values):
        return p.compose(list(zip(self._gens, values)))

    def content(self, p) -> int:
        return int(p.content())
