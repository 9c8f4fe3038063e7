"""Symmetric functions stored in the power-sum basis.

A :class:`SymFunc` maps partitions to coefficients and stands for
sum c_lambda p_lambda.  Coefficients are elements of any coefficient domain
(normally :class:`~qvir.exact.RatFunc`); the monomial and elementary bases
are views through per-degree transition matrices with rational entries.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exact import SYMBOLIC, RatFunc, SeriesError, exp_substitution, series_substitute, solve
from .partitions import Partition, dominance_leq, partitions_of, surjection_count

DEFAULT_DEGREE_BOUND = 8


class SymFunc:
    """sum_lambda c_lambda p_lambda with zero coefficients dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for lam, c in (terms or {}).items():
            if not (c == 0):
                clean[Partition(lam)] = c
        self.terms = clean

    @classmethod
    def one(cls, one=1):
        return cls({Partition(()): one})

    @classmethod
    def p(cls, *parts, coeff=1):
        return cls({Partition(sorted(parts, reverse=True)): coeff})

    def coeff(self, lam, zero=0):
        return self.terms.get(Partition(lam), zero)

    def __getitem__(self, lam):
        return self.coeff(lam)

    def degrees(self):
        return sorted({sum(lam) for lam in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous(self, n: int) -> "SymFunc":
        return SymFunc({lam: c for lam, c in self.terms.items() if sum(lam) == n})

    def __add__(self, other):
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out[lam] + c if lam in out else c
        return SymFunc(out)

    def __neg__(self):
        return SymFunc({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        return SymFunc({lam: c * x for lam, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            return self.scale(other)
        out = {}
        for l1, c1 in self.terms.items():
            for l2, c2 in other.terms.items():
                lam = l1.union(l2)
                v = c1 * c2
                out[lam] = out[lam] + v if lam in out else v
        return SymFunc(out)

    def __rmul__(self, other):
        return self.scale(other)

    def map_coeffs(self, fn) -> "SymFunc":
        return SymFunc({lam: fn(c) for lam, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        if not self.terms:
            return "SymFunc(0)"
        parts = [f"({c})*p{lam}" for lam, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0]), reverse=False)]
        return "SymFunc(" + " + ".join(parts) + ")"

    def to_json(self):
        from .exact import to_json_value

        return [{"partition": list(lam), "coeff": to_json_value(c)}
                for lam, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))]


# -- pairings ---------------------------------------------------------------

def z_qt(lam, domain=SYMBOLIC):
    """z_lambda * prod (1 - q^{lambda_i}) / (1 - t^{lambda_i})."""
    q, t = domain.q, domain.t
    out = domain.const(Partition(lam).z())
    for part in lam:
        out = out * (1 - q**part) / (1 - t**part)
    return out


def z_beta(lam, domain=SYMBOLIC, beta=None):
    beta = domain.var("b") if beta is None else beta
    return domain.const(Partition(lam).z()) * beta ** len(lam)


def pairing(kind: str, f: SymFunc, g: SymFunc, domain=SYMBOLIC, beta=None):
    """<f, g> for kind 'qt' or 'beta'; both are diagonal on power sums."""
    if kind not in ("qt", "beta"):
        raise ValueError(f"unknown pairing {kind!r}")
    acc = domain.zero
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d is None:
            continue
        z = z_qt(lam, domain) if kind == "qt" else z_beta(lam, domain, beta)
        acc = acc + c * d * z
    return acc


# -- transition matrices ----------------------------------------------------

@lru_cache(maxsize=None)
def p_to_m(n: int):
    """L with p_lambda = sum_mu L[lambda][mu] m_mu."""
    parts = partitions_of(n)
    return tuple(tuple(surjection_count(lam, mu) for mu in parts) for lam in parts)


def _inverse(A):
    k = len(A)
    rows = [[Fraction(x) for x in row] for row in A]
    cols = [solve(rows, [Fraction(int(i == j)) for i in range(k)]) for j in range(k)]
    return tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))


@lru_cache(maxsize=None)
def m_to_p(n: int):
    """Inverse of :func:`p_to_m`, so m_lambda = sum_mu M[lambda][mu] p_mu."""
    return _inverse(p_to_m(n))


@lru_cache(maxsize=None)
def e_to_p(n: int):
    """M(e,p) = L' Z^{-1} eps: e_lambda = sum_mu L[mu][lambda] eps_mu / z_mu p_mu."""
    L = p_to_m(n)
    parts = partitions_of(n)
    return tuple(
        tuple(Fraction(L[j][i] * (-1) ** (n - len(mu)), mu.z()) for j, mu in enumerate(parts))
        for i in range(len(parts)))


def _check_degree(n: int, bound: int):
    if n > bound:
        raise ValueError(f"degree {n} exceeds the configured bound {bound}")


def basis_convert(f: SymFunc, source: str, target: str, bound: int = DEFAULT_DEGREE_BOUND) -> SymFunc:
    """Re-express f, read in basis ``source``, in basis ``target`` (each one of p, m, e).

    The input's keys are interpreted in ``source``; the output's keys in ``target``.
    """
    for b in (source, target):
        if b not in ("p", "m", "e"):
            raise ValueError(f"unknown basis {b!r}")
    to_p = {"p": None, "m": m_to_p, "e": e_to_p}
    from_p = {"p": None, "m": p_to_m, "e": _p_to_e}
    out = {}
    for lam, c in f.terms.items():
        n = sum(lam)
        _check_degree(n, bound)
        if source == "p":
            vec = {lam: c}
        else:
            row = to_p[source](n)[partitions_of(n).index(lam)]
            vec = {mu: c * x for mu, x in zip(partitions_of(n), row) if x}
        for mu, x in vec.items():
            if target == "p":
                out[mu] = out[mu] + x if mu in out else x
                continue
            row = from_p[target](sum(mu))[partitions_of(sum(mu)).index(mu)]
            for nu, y in zip(partitions_of(sum(mu)), row):
                if y:
                    out[nu] = out[nu] + x * y if nu in out else x * y
    return SymFunc(out)


@lru_cache(maxsize=None)
def _p_to_e(n: int):
    return _inverse(e_to_p(n))


def monomial(lam, domain=SYMBOLIC) -> SymFunc:
    lam = Partition(lam)
    n = sum(lam)
    row = m_to_p(n)[partitions_of(n).index(lam)]
    return SymFunc({mu: domain.const(x) for mu, x in zip(partitions_of(n), row) if x})


def elementary(lam, domain=SYMBOLIC) -> SymFunc:
    lam = Partition(lam)
    n = sum(lam)
    row = e_to_p(n)[partitions_of(n).index(lam)]
    return SymFunc({mu: domain.const(x) for mu, x in zip(partitions_of(n), row) if x})


# -- orthogonal families ----------------------------------------------------

def _orthogonalize(lam: Partition, zfun, domain):
    """m_lambda + sum_{mu<lambda} c_mu m_mu, orthogonal to every m_nu with nu < lambda."""
    n = sum(lam)
    parts = partitions_of(n)
    minv = m_to_p(n)
    z = [zfun(rho) for rho in parts]
    idx = {mu: i for i, mu in enumerate(parts)}
    below = [mu for mu in parts if mu != lam and dominance_leq(mu, lam)]

    def mpair(a, b):
        acc = domain.zero
        for k in range(len(parts)):
            x, y = minv[idx[a]][k], minv[idx[b]][k]
            if x and y:
                acc = acc + z[k] * domain.const(x * y)
        return acc

    coeffs = {lam: domain.one}
    if below:
        M = [[mpair(nu, mu) for mu in below] for nu in below]
        rhs = [-mpair(nu, lam) for nu in below]
        for mu, c in zip(below, solve(M, rhs)):
            coeffs[mu] = c
    out = {}
    for mu, c in coeffs.items():
        for k, rho in enumerate(parts):
            x = minv[idx[mu]][k]
            if x:
                v = c * domain.const(x)
                out[rho] = out[rho] + v if rho in out else v
    return SymFunc(out), coeffs


def _bound_check(lam, bound):
    lam = Partition(lam)
    _check_degree(sum(lam), bound)
    return lam


def macdonald_norm_factor(lam, domain=SYMBOLIC):
    """prod over boxes of (1 - q^{arm} t^{leg+1})."""
    q, t = domain.q, domain.t
    out = domain.one
    for i, j in lam.boxes():
        a, l = lam.arm_leg(i, j)
        out = out * (1 - q**a * t ** (l + 1))
    return out


def jack_norm_factor(lam, beta, domain=SYMBOLIC):
    out = domain.one
    for i, j in lam.boxes():
        a, l = lam.arm_leg(i, j)
        out = out * (beta * a + l + 1)
    return out


def macdonald(lam, form: str = "P", domain=SYMBOLIC, bound: int = DEFAULT_DEGREE_BOUND) -> SymFunc:
    """Macdonald polynomial P_lambda(q,t) or its integral form J_lambda in the p-basis."""
    lam = _bound_check(lam, bound)
    if form not in ("P", "J"):
        raise ValueError(f"form must be 'P' or 'J', not {form!r}")

    def compute():
        P, _ = _orthogonalize(lam, lambda rho: z_qt(rho, domain), domain)
        return P if form == "P" else P.scale(macdonald_norm_factor(lam, domain))

    return domain.memo(("macdonald", lam, form), compute)


def macdonald_m_expansion(lam, domain=SYMBOLIC):
    """The coefficients of P_lambda on monomial functions (for triangularity checks)."""
    lam = Partition(lam)
    return domain.memo(("macdonald_m", lam),
                       lambda: _orthogonalize(lam, lambda rho: z_qt(rho, domain), domain)[1])


def jack(lam, form: str = "P", beta=None, domain=SYMBOLIC, bound: int = DEFAULT_DEGREE_BOUND) -> SymFunc:
    """Jack polynomial orthogonal for <p_l, p_m> = delta z_l beta^{l(l)}; beta defaults to b."""
    lam = _bound_check(lam, bound)
    if form not in ("P", "J"):
        raise ValueError(f"form must be 'P' or 'J', not {form!r}")
    beta = domain.var("b") if beta is None else beta

    def compute():
        P, _ = _orthogonalize(lam, lambda rho: z_beta(rho, domain, beta), domain)
        return P if form == "P" else P.scale(jack_norm_factor(lam, beta, domain))

    key = ("jack", lam, form, str(beta) if isinstance(beta, RatFunc) else beta)
    return domain.memo(key, compute)


def macdonald_to_jack_limit(lam, order: int = 1, bound: int = DEFAULT_DEGREE_BOUND) -> SymFunc:
    """h^0 term of (1-t)^{-|lam|} J_lam(q,t) under q = e^h, t = e^{b h}.

    The result is a SymFunc over Q(b).  It equals the Jack J-function at
    parameter 1/b (see :func:`jack`), which the tests cross-check.  Raises
    SeriesError if any negative power of h survives.
    """
    lam = _bound_check(lam, bound)
    if order < 1:
        raise ValueError("order must be at least 1")
    n = sum(lam)
    J = macdonald(lam, "J", bound=bound)
    scale = (1 - RatFunc.var("t")) ** (-n)
    subs = exp_substitution({"u": Fraction(1, 2), "v": RatFunc.var("b") / 2})
    out = {}
    for mu, c in J.terms.items():
        s = series_substitute(c * scale, subs, order)
        for k in range(s.val, 0):
            if not (s.coeff(k) == 0):
                raise SeriesError(f"pole term h^{k} survives in the coefficient of p{mu}")
        out[mu] = s.coeff(0)
    return SymFunc(out)


def j_at_q1(lam, domain=SYMBOLIC, bound: int = DEFAULT_DEGREE_BOUND) -> SymFunc:
    """e_{lam'} * prod_boxes (1 - t^{leg+1}) in the p-basis."""
    lam = _bound_check(lam, bound)
    t = domain.t
    factor = domain.one
    for i, j in lam.boxes():
        factor = factor * (1 - t ** (lam.arm_leg(i, j)[1] + 1))
    return elementary(lam.conjugate(), domain).scale(factor)
