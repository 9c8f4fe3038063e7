"""Integer multivariate polynomials on top of FLINT (python-flint)."""
from __future__ import annotations

import flint

NAME = "flint"


class PolyRing:
    """Z[x_1..x_n] in a fixed lexicographic order."""

    def __init__(self, names):
        self.names = tuple(names)
        self.ctx = flint.fmpz_mpoly_ctx.get(self.names, "lex")
        self._gens = self.ctx.gens()
        self._zero_exp = (0,) * len(self.names)

    def gen(self, i):
        return self._gens[i]

    def const(self, n: int):
        return self.ctx.from_dict({self._zero_exp: int(n)}) if n else self.ctx.from_dict({})

    def from_dict(self, d):
        return self.ctx.from_dict({k: int(c) for k, c in d.items() if c})

    def to_dict(self, p):
        return {tuple(map(int, e)): int(c) for e, c in p.terms()}

    def gcd(self, a, b):
        return a.gcd(b)

    def divexact(self, a, b):
        return a / b

    def lc(self, p) -> int:
        return int(p.leading_coefficient())

    def is_zero(self, p) -> bool:
        return p.is_zero()

    def is_one(self, p) -> bool:
        return p.is_one()

    def degrees(self, p):
        return tuple(int(d) for d in p.degrees())

    def derivative(self, p, i):
        return p.derivative(self.names[i])

    def compose(self, p, values):
        return p.compose(*values)

    def content(self, p) -> int:
        return int(p.content())
