"""Coefficient domains.

Every algorithm in the package is written once against a small domain
interface: ``var(name)`` gives the value of a variable, ``const(x)`` embeds
a rational number, and elements support field arithmetic.  Three domains
exist:

* :class:`SymbolicDomain`: elements are :class:`RatFunc`, variables stay
  symbolic.
* :class:`ModularDomain`: elements live in F_p and variables take random
  residues; this is the randomized identity-testing path.
* :class:`RationalDomain`: variables take rational values.

``specialize`` returns a child domain in which some variables are replaced
by fixed elements (e.g. ``a -> v**2/u**2``), which is how weights are
pinned.  Each domain instance owns a lock-protected memo table.
"""
from __future__ import annotations

import random
import threading
from fractions import Fraction

from ._backend import ALPHABET, modint
from .modular import DEFAULT_PRIME
from .ratfunc import ALIASES, RatFunc


class Domain:
    kind = "abstract"

    def __init__(self, values=None, options=None):
        self._values = dict(values or {})
        self.options = dict(options or {})
        self._cache = {}
        self._lock = threading.RLock()

    # -- elements ------------------------------------------------------

    def var(self, name: str):
        if name in ALIASES:
            base, e = ALIASES[name]
            return self.var(base) ** e
        if name in self._values:
            return self._values[name]
        return self._generic(name)

    def _generic(self, name):
        raise NotImplementedError

    def const(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.const(0)

    @property
    def one(self):
        return self.const(1)

    @property
    def q(self):
        return self.var("q")

    @property
    def t(self):
        return self.var("t")

    def from_ratfunc(self, f: RatFunc):
        raise NotImplementedError

    # -- structure -----------------------------------------------------

    def specialize(self, **values) -> "Domain":
        child = self._child()
        child._values = {**self._values, **values}
        child.options = dict(self.options)
        return child

    def with_options(self, **options) -> "Domain":
        child = self._child()
        child._values = dict(self._values)
        child.options = {**self.options, **options}
        return child

    def _child(self):
        raise NotImplementedError

    def memo(self, key, compute):
        """Return the cached value for key, computing it outside the lock."""
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            return self._cache.setdefault(key, value)

    def overrides(self) -> dict:
        return dict(self._values)


class SymbolicDomain(Domain):
    kind = "symbolic"

    def _generic(self, name):
        return RatFunc.var(name)

    def const(self, x):
        return RatFunc(x)

    def from_ratfunc(self, f: RatFunc):
        used = {n: self._values[n] for n in f.variables() if n in self._values}
        return f.subs(used) if used else f

    def _child(self):
        return SymbolicDomain()


class ModularDomain(Domain):
    """All variables are residues modulo the prime ``p``."""

    kind = "modular"

    def __init__(self, p: int, point: dict, values=None, options=None):
        super().__init__(values, options)
        self.p = p
        self.point = dict(point)

    @classmethod
    def random(cls, p: int = DEFAULT_PRIME, rng: random.Random | None = None,
               seed: int | None = None) -> "ModularDomain":
        rng = rng if rng is not None else random.Random(seed)
        point = {name: rng.randrange(2, p - 1) for name in ALPHABET}
        return cls(p, point)

    def _generic(self, name):
        return modint(self.point[name], self.p)

    def const(self, x):
        x = Fraction(x)
        value = modint(x.numerator, self.p)
        if x.denominator != 1:
            value = value / modint(x.denominator, self.p)
        return value

    def from_ratfunc(self, f: RatFunc):
        point = {n: int(self.var(n)) for n in f.variables()}
        return modint(f.evaluate(point, self.p), self.p)

    def _child(self):
        return ModularDomain(self.p, self.point)


class RationalDomain(Domain):
    kind = "rational"

    def __init__(self, point: dict, values=None, options=None):
        super().__init__(values, options)
        self.point = {k: Fraction(v) for k, v in point.items()}

    def _generic(self, name):
        try:
            return self.point[name]
        except KeyError:
            raise KeyError(f"no rational value for variable {name!r}") from None

    def const(self, x):
        return Fraction(x)

    def from_ratfunc(self, f: RatFunc):
        return f.evaluate({n: self.var(n) for n in f.variables()})

    def _child(self):
        return RationalDomain(self.point)


SYMBOLIC = SymbolicDomain()


def to_json_value(x):
    """Serialize a domain element without floats."""
    if isinstance(x, RatFunc):
        return {"ratfunc": x.to_json(), "text": str(x)}
    if isinstance(x, Fraction):
        return {"num": str(x.numerator), "den": str(x.denominator)}
    if isinstance(x, int):
        return {"num": str(x), "den": "1"}
    return {"residue": str(int(x))}
