"""Partition combinatorics.

Partitions are weakly decreasing tuples of positive integers.  The
canonical order on partitions of n is reverse lexicographic, so (n) comes
first and (1^n) last; every matrix in the package is indexed this way and
the (1^n),(1^n) entry is always the bottom-right corner.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, gcd


class Partition(tuple):
    """An integer partition, e.g. ``Partition((3, 1))``."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 1:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Accepts '3,1', '3 1', '2^2,1' or '' / '()' / '0' for the empty one."""
        text = text.strip().strip("()[]")
        if text in ("", "0", "empty"):
            return cls(())
        parts = []
        for tok in re.split(r"[,\s]+", text):
            if not tok:
                continue
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise ValueError(f"cannot parse partition {text!r}")
            parts += [int(m.group(1))] * int(m.group(2) or 1)
        return cls(sorted(parts, reverse=True))

    @classmethod
    def rectangle(cls, rows: int, cols: int) -> "Partition":
        """(cols^rows): ``rows`` parts each equal to ``cols``."""
        return cls((cols,) * rows)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def multiplicities(self) -> dict:
        out = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def z(self) -> int:
        """z_lambda = prod_n n^{m_n} m_n!."""
        out = 1
        for n, m in self.multiplicities().items():
            out *= n**m * factorial(m)
        return out

    def boxes(self):
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield i, j

    def arm_leg(self, i: int, j: int):
        return arm_leg(self, i, j)

    def n_stat(self) -> int:
        """n(lambda) = sum (i-1) lambda_i."""
        return sum(i * p for i, p in enumerate(self))

    def union(self, other) -> "Partition":
        return Partition(sorted(tuple(self) + tuple(other), reverse=True))

    def remove(self, other) -> "Partition":
        rest = list(self)
        for p in other:
            rest.remove(p)
        return Partition(rest)

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self):
        return f"Partition({tuple(self)!r})"


EMPTY = Partition(())


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of n in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + (p,))

    rec(n, n, ())
    return tuple(out)


@lru_cache(maxsize=None)
def partition_index(n: int) -> dict:
    return {lam: i for i, lam in enumerate(partitions_of(n))}


def arm_leg(lam: Partition, i: int, j: int):
    """(arm, leg) = (lambda_i - j, lambda'_j - i) of the box (i, j), 1-based."""
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError(f"box ({i},{j}) is not in {lam}")
    conj = lam.conjugate()
    return lam[i - 1] - j, conj[j - 1] - i


def dominance_leq(mu, lam) -> bool:
    """mu <= lam in dominance order (equal sizes required)."""
    if sum(mu) != sum(lam):
        raise ValueError(f"sizes differ: |{mu}| != |{lam}|")
    a = b = 0
    for k in range(max(len(mu), len(lam))):
        a += mu[k] if k < len(mu) else 0
        b += lam[k] if k < len(lam) else 0
        if a > b:
            return False
    return True


def strictly_below(lam: Partition) -> list:
    """Partitions mu < lam in dominance, in canonical order."""
    return [mu for mu in partitions_of(sum(lam)) if mu != lam and dominance_leq(mu, lam)]


# -- counting functions ---------------------------------------------------

def _series_mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(0, n + 1 - i):
                out[i + j] += x * b[j]
    return out


def _geometric(step: int, terms: int, n: int):
    """1 + x^step + ... + x^{step (terms-1)} truncated at x^n."""
    out = [0] * (n + 1)
    for k in range(terms):
        if step * k <= n:
            out[step * k] += 1
    return out


def _inverse_geometric(step: int, n: int):
    """1/(1 - x^step) truncated at x^n."""
    return _geometric(step, n // step + 1, n)


def count_p(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc = [1] + [0] * n
    for m in range(1, n + 1):
        acc = _series_mul(acc, _inverse_geometric(m, n), n)
    return acc[n]


def count_pN(N: int, n: int) -> int:
    """Coefficient of x^n in prod (1 - x^{mN})/(1 - x^m)."""
    if N < 1 or n < 0:
        raise ValueError("need N >= 1 and n >= 0")
    acc = [1] + [0] * n
    for m in range(1, n + 1):
        acc = _series_mul(acc, _geometric(m, N, n), n)
    return acc[n]


def count_qN(N: int, r: int, s: int, n: int) -> int:
    """Coefficient of x^n in (1 + ... + x^{r(N-1-s)}) prod_{m != r}(1 + ... + x^{m(N-1)})."""
    if N < 2 or r < 1 or not (1 <= s <= N - 1) or n < 0:
        raise ValueError(f"invalid (N, r, s, n) = {(N, r, s, n)}: need N>=2, r>=1, 1<=s<=N-1")
    acc = _geometric(r, N - s, n)
    for m in range(1, n + 1):
        if m != r:
            acc = _series_mul(acc, _geometric(m, N, n), n)
    return acc[n]


def counting(kind: str, *args) -> int:
    if kind == "p":
        return count_p(*args)
    if kind == "p_N":
        return count_pN(*args)
    if kind == "q_N":
        return count_qN(*args)
    raise ValueError(f"unknown counting function {kind!r}")


def surjection_count(lam, mu) -> int:
    """#{f : parts of lam -> parts of mu with mu_i = sum_{f(j)=i} lam_j}."""
    if sum(lam) != sum(mu):
        raise ValueError(f"sizes differ: |{lam}| != |{mu}|")
    lam, mu = tuple(lam), tuple(mu)

    @lru_cache(maxsize=None)
    def rec(j, remaining):
        if j == len(lam):
            return 1 if not any(remaining) else 0
        total = 0
        for i, room in enumerate(remaining):
            if room >= lam[j]:
                nxt = remaining[:i] + (room - lam[j],) + remaining[i + 1:]
                total += rec(j + 1, nxt)
        return total

    return rec(0, mu)


# -- weight classification --------------------------------------------------

@dataclass(frozen=True)
class WeightLabel:
    P: int
    Q: int
    r: int
    s: int
    i: int
    sign: str

    def exponents(self):
        """(t-exponent, q-exponent) of the first term, both halved."""
        if self.sign == "+":
            return self.r + self.i * self.Q, -(self.s + self.i * self.P)
        return self.r + self.i * self.Q, -(self.s - self.i * self.P)


DEGENERACY = {
    "1+": "no degeneration",
    "2+": "h_{-i-1} = h_i for i >= 0",
    "3+": "h_{2i} = h_{2i-1} for all i",
    "4+": {"(0,0)": "h_{2i} = h_{2i-1} = h_{-2i} = h_{-2i-1} for i >= 0",
           "(0,Q)": "h_{2i} = h_{2i-1} = h_{-2i-1} = -h_{-2i-2} for i >= 0"},
    "1-": "no degeneration",
    "2-": "h_{-i-1} = h_i for i >= 0",
    "3-": "h_{2i} = h_{2i-1} for all i",
    "4-": {"(0,0)": "h_{2i} = h_{2i-1} = h_{-2i} = h_{-2i-1} for i >= 0",
           "(0,-Q)": "h_{2i+1} = h_{2i} = h_{-2i-1} = -h_{-2i-2} for i >= 0"},
}

EXHAUSTIVE = {
    "1+": "h_i, i in Z", "2+": "h_i, i >= 0", "3+": "h_{(-1)^i i}, i >= 0", "4+": "h_{2i}, i >= 0",
    "1-": "h_i, i != 0", "2-": "h_i, i > 0", "3-": "h_{(-1)^{i-1} i}, i > 0", "4-": "h_{2i}, i > 0",
}


def k_set(P: int, Q: int, sign: str) -> list:
    if P < 1 or Q < 1 or gcd(P, Q) != 1:
        raise ValueError(f"(P, Q) = ({P}, {Q}) must be coprime positive integers")
    if sign == "+":
        return [(r, s) for r in range(P) for s in range(Q + 1) if r * Q + s * P <= P * Q]
    if sign == "-":
        # s runs over -Q..0, mirroring the + set
        return [(r, s) for r in range(P) for s in range(-Q, 1) if r * Q - s * P <= P * Q]
    raise ValueError(f"sign must be '+' or '-', not {sign!r}")


def case_label(P: int, Q: int, r: int, s: int, sign: str) -> str:
    if sign == "+":
        if 0 < r < P and 0 < s < Q:
            return "1+"
        if r == 0 and 0 < s < Q:
            return "2+"
        if 0 < r < P and s == 0:
            return "3+"
        if (r, s) in ((0, 0), (0, Q)):
            return "4+"
    else:
        if 0 < r < P and 0 < -s < Q:
            return "1-"
        if r == 0 and 0 < -s < Q:
            return "2-"
        if 0 < r < P and s == 0:
            return "3-"
        if (r, s) in ((0, 0), (0, -Q)):
            return "4-"
    raise ValueError(f"({r},{s}) is not in K^{sign}_({P},{Q})")


def classify_weights(P: int, Q: int, sign: str):
    """(K set, case label per element) for K^{+-}_{P,Q}."""
    ks = k_set(P, Q, sign)
    return ks, {rs: case_label(P, Q, rs[0], rs[1], sign) for rs in ks}


def h_weight(label: WeightLabel):
    """h_{P,Q;r,s,i} as a Laurent polynomial in u = q^(1/2), v = t^(1/2)."""
    from .exact import RatFunc

    a, b = label.exponents()
    return RatFunc.monomial({"v": a, "u": b}) + RatFunc.monomial({"v": -a, "u": -b})
