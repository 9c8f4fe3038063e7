"""Truncated power series with exact coefficients.

A series is ``sum_{k=val}^{order} c_k X^k + O(X^{order+1})``.  Coefficients
can be anything closed under ring operations with integers (RatFunc,
Fraction, prime-field scalars).  Negative valuations are allowed so that
quotients with a pole at X=0 stay representable.
"""
from __future__ import annotations

from fractions import Fraction

from ._backend import RING
from .ratfunc import ALIASES, RatFunc, var_index


class SeriesError(ArithmeticError):
    pass


class TruncSeries:
    __slots__ = ("val", "coeffs", "var")

    def __init__(self, coeffs, val: int = 0, var: str = "hb"):
        self.coeffs = list(coeffs)
        self.val = val
        self.var = var

    @property
    def order(self) -> int:
        """Highest exponent whose coefficient is known."""
        return self.val + len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int, var: str = "hb") -> "TruncSeries":
        return cls([c] + [0] * order, 0, var)

    @classmethod
    def exp_linear(cls, c, order: int, var: str = "hb") -> "TruncSeries":
        """exp(c X) to the given order."""
        out, term = [], Fraction(1)
        for k in range(order + 1):
            out.append(term)
            term = term * c / (k + 1)
        return cls(out, 0, var)

    def coeff(self, k: int):
        if k > self.order:
            raise SeriesError(f"coefficient {k} beyond known order {self.order}")
        if k < self.val:
            return 0
        return self.coeffs[k - self.val]

    def __getitem__(self, k):
        return self.coeff(k)

    def normalized(self) -> "TruncSeries":
        """Strip leading zero coefficients into the valuation."""
        i = 0
        while i < len(self.coeffs) and _is_zero(self.coeffs[i]):
            i += 1
        return TruncSeries(self.coeffs[i:], self.val + i, self.var)

    def valuation(self):
        s = self.normalized()
        return s.val if s.coeffs else None

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError("cannot extend precision by truncation")
        return TruncSeries(self.coeffs[: max(0, order - self.val + 1)], self.val, self.var)

    def _check(self, other):
        if isinstance(other, TruncSeries):
            if other.var != self.var:
                raise SeriesError("series in different variables")
            return other
        return TruncSeries.constant(other, max(self.order, 0), self.var)

    def __add__(self, other):
        other = self._check(other)
        order = min(self.order, other.order)
        val = min(self.val, other.val)
        out = [self.coeff(k) + other.coeff(k) for k in range(val, order + 1)]
        return TruncSeries(out, val, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.val, self.var)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c * other for c in self.coeffs], self.val, self.var)
        a, b = self.normalized(), other.normalized()
        if a.var != b.var:
            raise SeriesError("series in different variables")
        if not a.coeffs or not b.coeffs:
            order = min(a.order + (b.val if b.coeffs else b.order + 1),
                        b.order + (a.val if a.coeffs else a.order + 1))
            return TruncSeries([], order + 1, self.var)
        val = a.val + b.val
        order = min(a.order + b.val, b.order + a.val)
        n = order - val + 1
        out = []
        for k in range(n):
            acc = 0
            for i in range(max(0, k - len(b.coeffs) + 1), min(k, len(a.coeffs) - 1) + 1):
                acc = acc + a.coeffs[i] * b.coeffs[k - i]
            out.append(acc)
        return TruncSeries(out, val, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        s = self.normalized()
        if not s.coeffs:
            raise SeriesError("inverting a series with no known nonzero term")
        n = len(s.coeffs)
        c0inv = 1 / s.coeffs[0] if not isinstance(s.coeffs[0], int) else Fraction(1, s.coeffs[0])
        out = [c0inv]
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                acc = acc + s.coeffs[i] * out[k - i]
            out.append(-acc * c0inv)
        return TruncSeries(out, -s.val, self.var)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return TruncSeries([c / other for c in self.coeffs], self.val, self.var)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncSeries.constant(1, self.order - self.val if self.val >= 0 else 0, self.var)
        if e == 0:
            return result
        base, result = self, None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exp(self) -> "TruncSeries":
        return series_exp(self)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.val, other.val)
        return all(_is_zero(self.coeff(k) - other.coeff(k)) for k in range(lo, order + 1))

    def __repr__(self):
        terms = [f"({c})*{self.var}^{self.val + i}" for i, c in enumerate(self.coeffs)
                 if not _is_zero(c)]
        return " + ".join(terms + [f"O({self.var}^{self.order + 1})"])


def _is_zero(c) -> bool:
    return c == 0


def series_exp(s: TruncSeries) -> TruncSeries:
    """exp of a series with zero constant term."""
    if s.order < 0:
        raise SeriesError("series order must be nonnegative")
    s = s.normalized()
    if s.coeffs and s.val < 1:
        raise SeriesError("exp needs a zero constant term")
    order = s.order
    g = [s.coeff(k) if k >= 1 else 0 for k in range(order + 1)]
    out = [1]
    for n in range(1, order + 1):
        acc = 0
        for k in range(1, n + 1):
            if not _is_zero(g[k]):
                acc = acc + g[k] * out[n - k] * k
        out.append(acc / n if not isinstance(acc, int) else Fraction(acc, n))
    return TruncSeries(out, 0, s.var)


def exp_of_coefficients(g, order: int, var: str = "z") -> TruncSeries:
    """exp(sum_{k>=1} g[k] X^k) given g as a callable or list (g[0] ignored)."""
    coeffs = [0] + [g(k) if callable(g) else g[k] for k in range(1, order + 1)]
    return series_exp(TruncSeries(coeffs, 0, var))


def series_substitute(f: RatFunc, subs: dict, order: int, var: str = "hb") -> TruncSeries:
    """Expand f after replacing variables by series, to X^order.

    ``subs`` maps variable names to TruncSeries or to callables
    ``order -> TruncSeries``; callables let the working precision grow
    when the denominator series starts at a positive power of X.
    """
    norm = {}
    for name, s in subs.items():
        if name in ALIASES:
            base, e = ALIASES[name]
            raise ValueError(f"substitute for {base!r} (the alias {name!r} is {base}^{e})")
        norm[var_index(name)] = s
    extra = 0
    for _ in range(64):
        work = order + extra
        got = {i: (s(work) if callable(s) else s) for i, s in norm.items()}
        den = _poly_series(f.den, got, work, var)
        d = den.valuation()
        if d is None:
            if all(not callable(s) for s in norm.values()):
                raise SeriesError("denominator series vanishes to the available precision")
            extra += 4
            continue
        num = _poly_series(f.num, got, work, var)
        result = num * den.inverse()
        if result.order >= order:
            return result.truncate(order)
        if all(not callable(s) for s in norm.values()):
            raise SeriesError(f"only order {result.order} reachable with the given series")
        extra += max(1, order - result.order)
    raise SeriesError("precision did not converge")


def _poly_series(poly, subs: dict, order: int, var: str) -> TruncSeries:
    terms = RING.to_dict(poly)
    idx = list(subs)
    groups = {}
    for e, c in terms.items():
        key = tuple(e[i] for i in idx)
        rest = list(e)
        for i in idx:
            rest[i] = 0
        groups.setdefault(key, {})[tuple(rest)] = c
    powers = {}

    def power(i, k):
        if (i, k) not in powers:
            powers[(i, k)] = subs[i] ** k if k else TruncSeries.constant(1, order, var)
        return powers[(i, k)]

    total = TruncSeries([0] * (order + 1), 0, var)
    for key, rest in groups.items():
        part = None
        for i, k in zip(idx, key):
            if k:
                part = power(i, k) if part is None else part * power(i, k)
        if part is None:
            part = TruncSeries.constant(1, order, var)
        total = total + part * RatFunc.from_polys(RING.from_dict(rest))
    return total


def exp_substitution(scales: dict, var: str = "hb"):
    """Factories for ``name -> exp(scale * X)`` usable in series_substitute."""
    return {name: (lambda order, c=c: TruncSeries.exp_linear(c, order, var))
            for name, c in scales.items()}


def hbar_point():
    """The standard degeneration substitution u=e^{e1 hb/2}, v=e^{e2 hb/2}."""
    e1, e2 = RatFunc.var("e1"), RatFunc.var("e2")
    return exp_substitution({"u": e1 / 2, "v": e2 / 2})
