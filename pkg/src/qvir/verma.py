"""Verma modules of the deformed Virasoro algebra.

Vectors are kept in the PBW basis T_{-lam_1} T_{-lam_2} ... 1_h with
lam_1 >= lam_2 >= ....  The only rewriting rule ever needed moves one mode
T_a past the leading generator T_{-n}:

    T_a T_{-n} X = T_{-n} (T_a X) + C(a) delta_{a,n} X
                   - sum_{l>=1} f_l T_{a-l} (T_{-n+l} X)
                   + sum_{l>=1} f_l T_{-n-l} (T_{a+l} X)

(valid for a > -n; for a <= -n the product is already ordered).  Every
mode on the right acts on a vector of strictly lower level than T_{-n} X,
so the recursion terminates, and the l-sums stop once the inner vector
vanishes by degree.  Results are memoized per (a, lam) in the domain.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .dva import central_term, f_coeff
from .exact import SYMBOLIC, Domain, RatFunc, det, nullspace, solve
from .fock import fock_gram, h_rs, highest_weight
from .partitions import Partition, count_p, partitions_of


class KacMismatch(AssertionError):
    pass


class SingularVectorError(ArithmeticError):
    pass


class ResidueMismatch(AssertionError):
    def __init__(self, message, computed, displayed):
        super().__init__(message)
        self.computed = computed
        self.displayed = displayed


@dataclass
class PBWVector:
    """sum_lam c_lam T_{-lam}.1_h, all lam of the same size."""

    level: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for lam, c in self.terms.items():
            lam = Partition(lam)
            if sum(lam) != self.level:
                raise ValueError(f"{lam} does not have size {self.level}")
            if not (c == 0):
                clean[lam] = c
        self.terms = clean

    @classmethod
    def highest(cls, one=RatFunc(1)):
        return cls(0, {Partition(()): one})

    def is_zero(self) -> bool:
        return not self.terms


def _add_into(acc: dict, vec: dict, scale=None):
    for lam, c in vec.items():
        x = c if scale is None else c * scale
        if lam in acc:
            y = acc[lam] + x
            if y == 0:
                del acc[lam]
            else:
                acc[lam] = y
        elif not (x == 0):
            acc[lam] = x


def act(a: int, lam, domain: Domain = SYMBOLIC) -> dict:
    """T_a T_{-lam}.1_h as a dict partition -> coefficient."""
    lam = Partition(lam)

    def compute():
        if not lam:
            if a > 0:
                return {}
            if a == 0:
                return {lam: domain.var("h")}
            return {Partition((-a,)): domain.one}
        n = lam[0]
        if a < 0 and -a >= n:
            return {Partition((-a,) + tuple(lam)): domain.one}
        X = Partition(lam[1:])
        level_x = sum(X)
        out = {}
        _add_into(out, apply(-n, act(a, X, domain), domain))
        if a == n:
            _add_into(out, {X: domain.one}, central_term(a, domain))
        for l in range(1, n + level_x + 1):
            f = f_coeff(l, domain)
            inner = act(-n + l, X, domain)
            if inner:
                _add_into(out, apply(a - l, inner, domain), -f)
            if a + l <= level_x:
                inner = act(a + l, X, domain)
                if inner:
                    _add_into(out, apply(-n - l, inner, domain), f)
        return out

    return domain.memo(("pbw_act", a, lam), compute)


def apply(a: int, vec: dict, domain: Domain = SYMBOLIC) -> dict:
    out = {}
    for lam, c in vec.items():
        _add_into(out, act(a, lam, domain), c)
    return out


def act_raise(k: int, v: PBWVector, domain: Domain = SYMBOLIC) -> PBWVector:
    """T_k v for k >= 1."""
    if k < 1:
        raise ValueError("act_raise needs k >= 1")
    if k > v.level:
        return PBWVector(max(v.level - k, 0))
    return PBWVector(v.level - k, apply(k, v.terms, domain))


def _pair_basis(lam: Partition, mu: Partition, domain):
    """[1_h] T_{lam_l} ... T_{lam_1} T_{-mu}.1_h."""
    vec = {mu: domain.one}
    for part in lam:
        vec = apply(part, vec, domain)
        if not vec:
            return domain.zero
    return vec.get(Partition(()), domain.zero)


def abstract_gram(n: int, domain: Domain = SYMBOLIC):
    def compute():
        parts = partitions_of(n)
        K = [[None] * len(parts) for _ in parts]
        for i, lam in enumerate(parts):
            for j, mu in enumerate(parts):
                if j < i:
                    K[i][j] = K[j][i]
                else:
                    K[i][j] = _pair_basis(lam, mu, domain)
        return K

    return domain.memo(("abstract_gram", n), compute)


# -- weight conversion ------------------------------------------------------------

class NotInHForm(ValueError):
    pass


def a_to_h(E: RatFunc) -> RatFunc:
    """Rewrite a Laurent polynomial in a as a polynomial in h = (u/v)a + (v/u)/a.

    With x = (u/v) a the input must be symmetric under x -> 1/x; the result
    is then verified by substituting back.
    """
    coeffs = E.laurent_coefficients("a")
    ratio = RatFunc.var("v") / RatFunc.var("u")
    d = {k: c * ratio**k for k, c in coeffs.items()}
    top = max((abs(k) for k in d), default=0)
    for k in range(1, top + 1):
        if d.get(k, RatFunc(0)) != d.get(-k, RatFunc(0)):
            raise NotInHForm(f"coefficients of x^{k} and x^-{k} differ")
    h = RatFunc.var("h")
    P = [RatFunc(2), h]
    for k in range(2, top + 1):
        P.append(h * P[-1] - P[-2])
    out = d.get(0, RatFunc(0))
    for k in range(1, top + 1):
        if k in d:
            out = out + d[k] * P[k]
    if out.subs({"h": highest_weight()}) != E:
        raise NotInHForm("back-substitution check failed")
    return out


@dataclass
class GramMatrix:
    level: int
    entries: list
    engine: str

    @property
    def partitions(self):
        return partitions_of(self.level)

    def corner_inverse(self):
        """(K^{-1})_{(1^n),(1^n)} via K x = e_{(1^n)}."""
        n = len(self.entries)
        if n == 0:
            return None
        one = self.entries[0][0] * 0 + 1
        e = [one * 0] * (n - 1) + [one]
        return solve(self.entries, e)[-1]


def gram(n: int, engine: str = "fock", domain: Domain = SYMBOLIC) -> GramMatrix:
    """Shapovalov matrix K_n.

    ``engine="abstract"`` pairs PBW vectors through the rewriting rule and
    reads the weight from the domain variable h.  ``engine="fock"`` uses the
    free-field realization with weight variable a; in the plain symbolic
    domain its entries are rewritten in h, so both engines return the same
    objects.
    """
    if engine == "abstract":
        return GramMatrix(n, abstract_gram(n, domain), engine)
    if engine != "fock":
        raise ValueError(f"unknown Gram engine {engine!r}")
    K = fock_gram(n, domain)
    symbolic_a = domain.kind == "symbolic" and "a" not in domain.overrides()
    if symbolic_a:
        K = domain.memo(("fock_gram_h", n), lambda: [[a_to_h(x) for x in row] for row in K])
    return GramMatrix(n, K, engine)


# -- Kac determinant -------------------------------------------------------------

def kac_factor(n: int, domain: Domain = SYMBOLIC):
    """prod_{rs<=n} [(h^2 - h_rs^2)(1-q^r)(1-t^r)/(q^r+t^r)]^{p(n-rs)}."""
    h, q, t = domain.var("h"), domain.q, domain.t
    out = domain.one
    for r in range(1, n + 1):
        for s in range(1, n // r + 1):
            hr = domain.from_ratfunc(h_rs(r, s))
            base = (h**2 - hr**2) * (1 - q**r) * (1 - t**r) / (q**r + t**r)
            out = out * base ** count_p(n - r * s)
    return out


def kac_check(n: int, engine: str = "abstract", domain: Domain = SYMBOLIC) -> RatFunc:
    """C_n = det K_n / (Kac product); raises KacMismatch unless constant."""
    K = gram(n, engine, domain).entries
    D = det(K, domain.one)
    C = D / kac_factor(n, domain)
    if not C.is_constant() or C.is_zero():
        raise KacMismatch(f"det K_{n} / Kac product = {C} is not a nonzero constant")
    return C


# -- singular vectors -------------------------------------------------------------

@dataclass
class SingularVector:
    r: int
    s: int
    vector: PBWVector


def hrs_domain(r: int, s: int, domain: Domain = SYMBOLIC) -> Domain:
    return domain.specialize(h=domain.from_ratfunc(h_rs(r, s)))


def singular_vector(r: int, s: int, bound: int = 6) -> SingularVector:
    """The vector at level rs killed by T_1..T_rs at h = h_{r,s}, with chi_{(1^rs)} = 1."""
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive")
    n = r * s
    if n > bound:
        raise ValueError(f"rs = {n} exceeds the configured bound {bound}")
    dom = hrs_domain(r, s)

    def compute():
        cols = partitions_of(n)
        rows = []
        for k in range(1, n + 1):
            images = [act(k, lam, dom) for lam in cols]
            for nu in partitions_of(n - k):
                rows.append([img.get(nu, RatFunc(0)) for img in images])
        basis = nullspace(rows, len(cols))
        if len(basis) != 1:
            raise SingularVectorError(f"solution space at (r,s)=({r},{s}) has dimension {len(basis)}")
        vec = [RatFunc(x) if not isinstance(x, RatFunc) else x for x in basis[0]]
        lead = vec[-1]
        if lead == 0:
            raise SingularVectorError("coefficient of T_{-1}^{rs} vanishes")
        return SingularVector(r, s, PBWVector(n, {lam: c / lead for lam, c in zip(cols, vec)}))

    return SYMBOLIC.memo(("singular", r, s), compute)


def norm_polynomial(r: int, s: int) -> RatFunc:
    """N(h) = <Phi.1_h, Phi.1_h> with Phi the frozen singular-vector coefficients."""
    sv = singular_vector(r, s)
    K = gram(r * s, "abstract").entries
    parts = partitions_of(r * s)
    chi = [sv.vector.terms.get(lam, RatFunc(0)) for lam in parts]
    acc = RatFunc(0)
    for i, x in enumerate(chi):
        if x == 0:
            continue
        for j, y in enumerate(chi):
            if not (y == 0):
                acc = acc + x * y * K[i][j]
    return acc


def r_displayed(r: int, s: int) -> RatFunc:
    """-sign(r) q^-r t^s (q/t)^{-rs} prod (1 - q^i t^-j) over the residue index set."""
    q, t = RatFunc.var("q"), RatFunc.var("t")
    sign = 1 if r > 0 else -1
    out = -sign * q ** (-r) * t**s * (q / t) ** (-r * s)
    for i in range(-abs(r), abs(r)):
        for j in range(-abs(s), abs(s)):
            if (i, j) != (0, 0):
                out = out * (1 - q**i * t ** (-j))
    return out


def r_derivative(r: int, s: int) -> RatFunc:
    """dN/dh at h = h_{r,s}, after checking N(h_{r,s}) = 0."""
    N = norm_polynomial(r, s)
    hr = h_rs(r, s)
    if N.subs({"h": hr}) != 0:
        raise SingularVectorError(f"N(h_{{{r},{s}}}) != 0")
    return N.derivative("h").subs({"h": hr})


def r_extract(r: int, s: int, bound: int = 6) -> RatFunc:
    """R_{r,s} read off from the norm of the singular vector, compared with the display."""
    if r * s > bound:
        raise ValueError(f"rs = {r * s} exceeds the configured bound {bound}")
    value = r_derivative(r, s)
    shown = r_displayed(r, s)
    if value != shown:
        raise ResidueMismatch(f"dN/dh at h_{{{r},{s}}} differs from the displayed product", value, shown)
    return value
