"""Prime-field scalars for randomized identity testing."""
from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 2**61 - 1


class ModInt:
    """Residue modulo a prime; the pure-Python stand-in for ``flint.nmod``."""

    __slots__ = ("v", "p")

    def __init__(self, value, p: int):
        if isinstance(value, ModInt):
            value = value.v
        self.v = int(value) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError("moduli differ")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero modulo p")
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero modulo p")
        return ModInt(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError("division by zero modulo p")
            return ModInt(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return ModInt(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} mod {self.p}"
