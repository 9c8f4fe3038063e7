"""Reduced multivariate rational functions over Q.

A :class:`RatFunc` is stored as a pair of integer polynomials (num, den)
with gcd(num, den) = 1 and a positive leading coefficient of ``den`` in
lexicographic order.  This form is canonical: equal functions have equal
representations, so ``==`` is exact symbolic equality.

Laurent monomials simply live in the denominator, which keeps
``u**-3 * v`` and friends inside the same type.  The half-power variables
u, v, w stand for q^(1/2), t^(1/2), Q^(1/2); ``var('q')`` is ``u**2``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as igcd

from ._backend import ALPHABET, RING

ALIASES = {"q": ("u", 2), "t": ("v", 2), "Q": ("w", 2)}
_INDEX = {name: i for i, name in enumerate(ALPHABET)}
_NVARS = len(ALPHABET)


class PoleError(ZeroDivisionError):
    """A denominator vanished; ``assignment`` records where."""

    def __init__(self, message: str, assignment=None):
        super().__init__(message)
        self.assignment = dict(assignment or {})


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise KeyError(f"unknown variable {name!r}; alphabet is {ALPHABET}") from None


class RatFunc:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, RatFunc):
            self.num, self.den = value.num, value.den
        elif isinstance(value, int):
            self.num, self.den = RING.const(value), RING.const(1)
        elif isinstance(value, Fraction):
            self.num = RING.const(value.numerator)
            self.den = RING.const(value.denominator)
        else:
            raise TypeError(f"cannot make a RatFunc from {type(value).__name__}")
        self._hash = None

    # -- construction -------------------------------------------------

    @classmethod
    def _raw(cls, num, den) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def from_polys(cls, num, den=None) -> "RatFunc":
        """Reduce num/den (backend polynomials) to canonical form."""
        if den is None:
            den = RING.const(1)
        if RING.is_zero(den):
            raise PoleError("zero denominator")
        if RING.is_zero(num):
            return cls._raw(RING.const(0), RING.const(1))
        g = RING.gcd(num, den)
        if not RING.is_one(g):
            num, den = RING.divexact(num, g), RING.divexact(den, g)
        if RING.lc(den) < 0:
            num, den = -num, -den
        return cls._raw(num, den)

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        if name in ALIASES:
            base, e = ALIASES[name]
            return cls._raw(RING.gen(var_index(base)) ** e, RING.const(1))
        return cls._raw(RING.gen(var_index(name)), RING.const(1))

    @classmethod
    def monomial(cls, exps: dict, coeff=1) -> "RatFunc":
        """coeff * prod name**e, exponents may be negative."""
        pos = [0] * _NVARS
        neg = [0] * _NVARS
        for name, e in exps.items():
            if name in ALIASES:
                name, m = ALIASES[name][0], ALIASES[name][1] * e
            else:
                m = e
            i = var_index(name)
            if m >= 0:
                pos[i] += m
            else:
                neg[i] -= m
        coeff = Fraction(coeff)
        num = RING.from_dict({tuple(pos): coeff.numerator})
        den = RING.from_dict({tuple(neg): coeff.denominator})
        return cls.from_polys(num, den)

    @classmethod
    def from_laurent(cls, num_terms: dict, den_terms: dict | None = None) -> "RatFunc":
        """Build from dicts mapping exponent tuples (may be negative) to rationals."""
        if den_terms is None:
            den_terms = {(0,) * _NVARS: 1}
        allterms = list(num_terms.items()) + list(den_terms.items())
        if not num_terms:
            return cls(0)
        shift = [min(0, min(e[i] for e, _ in allterms)) for i in range(_NVARS)]
        lcm = 1
        for _, c in allterms:
            d = Fraction(c).denominator
            lcm = lcm * d // igcd(lcm, d)

        def build(terms):
            out = {}
            for e, c in terms.items():
                c = Fraction(c) * lcm
                if c:
                    key = tuple(x - s for x, s in zip(e, shift))
                    out[key] = out.get(key, 0) + int(c)
            return RING.from_dict(out)

        return cls.from_polys(build(num_terms), build(den_terms))

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if RING.is_zero(n1):
            return o
        if RING.is_zero(n2):
            return self
        if d1 == d2:
            return RatFunc.from_polys(n1 + n2, d1)
        g = RING.gcd(d1, d2)
        if RING.is_one(g):
            return RatFunc._raw(n1 * d2 + n2 * d1, d1 * d2)
        s = RING.divexact(d1, g)
        t = RING.divexact(d2, g)
        n = n1 * t + n2 * s
        if RING.is_zero(n):
            return RatFunc(0)
        g2 = RING.gcd(n, g)
        if not RING.is_one(g2):
            n, d2 = RING.divexact(n, g2), RING.divexact(d2, g2)
        den = s * d2
        if RING.lc(den) < 0:
            n, den = -n, -den
        return RatFunc._raw(n, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if RING.is_zero(n1) or RING.is_zero(n2):
            return RatFunc(0)
        g1 = RING.gcd(n1, d2)
        g2 = RING.gcd(n2, d1)
        if not RING.is_one(g1):
            n1, d2 = RING.divexact(n1, g1), RING.divexact(d2, g1)
        if not RING.is_one(g2):
            n2, d1 = RING.divexact(n2, g2), RING.divexact(d1, g2)
        num, den = n1 * n2, d1 * d2
        if RING.lc(den) < 0:
            num, den = -num, -den
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if RING.is_zero(self.num):
            raise PoleError("division by zero rational function")
        num, den = self.den, self.num
        if RING.lc(den) < 0:
            num, den = -num, -den
        return RatFunc._raw(num, den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return RatFunc(1)
        return RatFunc._raw(self.num**e, self.den**e)

    # -- comparison ---------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((_frozen(self.num), _frozen(self.den)))
        return self._hash

    def __bool__(self):
        return not RING.is_zero(self.num)

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return RING.is_zero(self.num)

    def is_constant(self) -> bool:
        return not any(RING.degrees(self.num)) and not any(RING.degrees(self.den))

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        n = RING.to_dict(self.num).get((0,) * _NVARS, 0)
        d = RING.to_dict(self.den)[(0,) * _NVARS]
        return Fraction(n, d)

    def variables(self) -> tuple:
        dn, dd = RING.degrees(self.num), RING.degrees(self.den)
        return tuple(name for i, name in enumerate(ALPHABET) if dn[i] or dd[i])

    def degree(self, name: str) -> tuple:
        """(numerator degree, denominator degree) in one variable."""
        i = var_index(name)
        return RING.degrees(self.num)[i], RING.degrees(self.den)[i]

    def num_terms(self) -> dict:
        return RING.to_dict(self.num)

    def den_terms(self) -> dict:
        return RING.to_dict(self.den)

    def numerator(self) -> "RatFunc":
        return RatFunc._raw(self.num, RING.const(1))

    def denominator(self) -> "RatFunc":
        return RatFunc._raw(self.den, RING.const(1))

    def monomial_form(self):
        """(Fraction, exponent tuple) if self is c * Laurent monomial, else None."""
        nt, dt = RING.to_dict(self.num), RING.to_dict(self.den)
        if len(nt) != 1 or len(dt) != 1:
            return None
        (en, cn), = nt.items()
        (ed, cd), = dt.items()
        return Fraction(cn, cd), tuple(a - b for a, b in zip(en, ed))

    def laurent_terms(self):
        """Exponent tuple -> Fraction if self is a Laurent polynomial, else None."""
        dt = RING.to_dict(self.den)
        if len(dt) != 1:
            return None
        (ed, cd), = dt.items()
        return {tuple(a - b for a, b in zip(e, ed)): Fraction(c, cd)
                for e, c in RING.to_dict(self.num).items()}

    def is_laurent(self) -> bool:
        return len(RING.to_dict(self.den)) == 1

    def laurent_coefficients(self, name: str) -> dict:
        """k -> coefficient of name**k, for f Laurent in one variable.

        Requires the denominator to be (free of ``name``) * name**m.
        """
        i = var_index(name)
        dt = RING.to_dict(self.den)
        shifts = {e[i] for e in dt}
        if len(shifts) != 1:
            raise ValueError(f"not a Laurent polynomial in {name}: {self}")
        m, = shifts

        def strip(e):
            return e[:i] + (0,) + e[i + 1:]

        den = RatFunc.from_polys(RING.from_dict({strip(e): c for e, c in dt.items()}))
        groups = {}
        for e, c in RING.to_dict(self.num).items():
            groups.setdefault(e[i] - m, {})[strip(e)] = c
        return {k: RatFunc.from_polys(RING.from_dict(g)) / den for k, g in groups.items()}

    # -- calculus and substitution -------------------------------------

    def derivative(self, name: str) -> "RatFunc":
        i = var_index(name)
        dn = RING.derivative(self.num, i)
        dd = RING.derivative(self.den, i)
        return RatFunc.from_polys(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, mapping: dict) -> "RatFunc":
        """Simultaneous substitution of variables by rational functions."""
        values = {}
        for name, value in mapping.items():
            if name in ALIASES:
                raise ValueError(f"substitute for the base variable of {name!r}")
            values[var_index(name)] = value if isinstance(value, RatFunc) else RatFunc(value)
        forms = {i: v.monomial_form() for i, v in values.items()}
        if all(f is not None for f in forms.values()):
            mono, general = forms, {}
        else:
            mono, general = {}, values
        if mono:
            return RatFunc.from_laurent(_mono_subs(RING.to_dict(self.num), mono),
                                        _mono_subs(RING.to_dict(self.den), mono))
        num, nd = _general_subs(self.num, general)
        den, dd = _general_subs(self.den, general)
        # num/den scaled by prod d_i**D_i, different exponents on each side
        for i, value in general.items():
            k = dd.get(i, 0) - nd.get(i, 0)
            if k > 0:
                num = num * value.den**k
            elif k < 0:
                den = den * value.den**(-k)
        if RING.is_zero(den):
            raise PoleError("denominator vanishes under substitution",
                            {ALPHABET[i]: str(v) for i, v in general.items()})
        return RatFunc.from_polys(num, den)

    def evaluate(self, point: dict, modulus: int | None = None):
        """Exact value at a point (Fraction), or residue mod a prime (int)."""
        idx = {}
        for name, val in point.items():
            if name in ALIASES:
                raise ValueError(f"give a value for the base variable of {name!r}")
            idx[var_index(name)] = val
        missing = [ALPHABET[i] for i in range(_NVARS)
                   if (RING.degrees(self.num)[i] or RING.degrees(self.den)[i]) and i not in idx]
        if missing:
            raise ValueError(f"no value given for {missing}")
        dv = _eval_poly(RING.to_dict(self.den), idx, modulus)
        if dv == 0:
            raise PoleError("denominator vanishes at the evaluation point", point)
        nv = _eval_poly(RING.to_dict(self.num), idx, modulus)
        if modulus is None:
            return nv / dv
        return nv * pow(dv, -1, modulus) % modulus

    # -- printing and serialization ------------------------------------

    def __str__(self):
        ns = _poly_str(RING.to_dict(self.num))
        dt = RING.to_dict(self.den)
        if dt == {(0,) * _NVARS: 1}:
            return ns
        ds = _poly_str(dt)
        if len(RING.to_dict(self.num)) > 1:
            ns = f"({ns})"
        if len(dt) > 1 or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def to_json(self) -> dict:
        return {"num": _terms_json(RING.to_dict(self.num)),
                "den": _terms_json(RING.to_dict(self.den))}

    @classmethod
    def from_json(cls, obj: dict) -> "RatFunc":
        num = RING.from_dict(_terms_from_json(obj["num"]))
        den = RING.from_dict(_terms_from_json(obj["den"]))
        return cls.from_polys(num, den)


# -- helpers -------------------------------------------------------------

def _frozen(p):
    return tuple(sorted(RING.to_dict(p).items()))


def _mono_subs(terms: dict, mono: dict) -> dict:
    out = {}
    for orig, c in terms.items():
        e = list(orig)
        c = Fraction(c)
        for i in mono:
            e[i] = 0
        for i, (coef, exps) in mono.items():
            k = orig[i]
            if k:
                c *= coef**k
                for j, x in enumerate(exps):
                    e[j] += k * x
        key = tuple(e)
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _general_subs(poly, general: dict):
    """Substitute var_i -> n_i/d_i; returns (poly * prod d_i**D_i, {i: D_i})."""
    terms = RING.to_dict(poly)
    degs = RING.degrees(poly)
    D = {i: degs[i] for i in general}
    groups = {}
    for e, c in terms.items():
        key = tuple(e[i] for i in general)
        rest = list(e)
        for i in general:
            rest[i] = 0
        groups.setdefault(key, {})[tuple(rest)] = c
    powers = {}

    def factor(i, k):
        if (i, k) not in powers:
            value = general[i]
            powers[(i, k)] = value.num**k * value.den**(D[i] - k)
        return powers[(i, k)]

    total = RING.const(0)
    for key, rest in groups.items():
        part = RING.from_dict(rest)
        for i, k in zip(general, key):
            part = part * factor(i, k)
        total = total + part
    return total, D


def _eval_poly(terms: dict, idx: dict, modulus):
    if modulus is None:
        nums, dens, top = {}, {}, {}
        for i, v in idx.items():
            v = Fraction(v)
            nums[i], dens[i] = v.numerator, v.denominator
        for e in terms:
            for i, k in enumerate(e):
                if k and k > top.get(i, 0):
                    top[i] = k
        acc = 0
        for e, c in terms.items():
            term = c
            for i, D in top.items():
                k = e[i]
                term *= nums[i] ** k * dens[i] ** (D - k)
            acc += term
        scale = 1
        for i, D in top.items():
            scale *= dens[i] ** D
        return Fraction(acc, scale)
    vals = {}
    for i, v in idx.items():
        v = Fraction(v)
        vals[i] = v.numerator * pow(v.denominator, -1, modulus) % modulus
    cache = {}
    acc = 0
    for e, c in terms.items():
        term = c % modulus
        for i, k in enumerate(e):
            if k:
                if (i, k) not in cache:
                    cache[(i, k)] = pow(vals[i], k, modulus)
                term = term * cache[(i, k)] % modulus
        acc += term
    return acc % modulus


def _mono_str(e) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(ALPHABET[i])
        elif k:
            parts.append(f"{ALPHABET[i]}^{k}")
    return "*".join(parts)


def _poly_str(terms: dict) -> str:
    if not terms:
        return "0"
    out = []
    for e, c in sorted(terms.items(), reverse=True):
        m = _mono_str(e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = str(a)
        elif a == 1:
            body = m
        else:
            body = f"{a}*{m}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def _terms_json(terms: dict) -> list:
    return [[str(c), _mono_str(e)] for e, c in sorted(terms.items(), reverse=True)]


_MONO_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(\d+))?$")


def _terms_from_json(items) -> dict:
    out = {}
    for c, m in items:
        e = [0] * _NVARS
        if m:
            for factor in m.split("*"):
                match = _MONO_RE.match(factor)
                if not match:
                    raise ValueError(f"bad monomial {m!r}")
                e[var_index(match.group(1))] += int(match.group(2) or 1)
        out[tuple(e)] = out.get(tuple(e), 0) + int(c)
    return out


def var(name: str) -> RatFunc:
    return RatFunc.var(name)


def const(x) -> RatFunc:
    return RatFunc(x)
