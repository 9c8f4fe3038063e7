"""Free-field realization on symmetric functions.

T(z) = sum_k T_k z^{-k} acts on the power-sum ring through two vertex
operators.  On a basis element p_nu the mode T_k is

    T_k p_nu = sum_{mu subset nu} sum_{kappa |- |mu|-k}
        [ a (u/v)^{k+1} (-1)^{l(mu)} + (v/u)^{k+1} a^{-1} (-1)^{l(kappa)} ]
        * prod_i g(kappa_i) / z_kappa * prod_j (1 - q^{mu_j}) * binom(nu, mu)
        * p_{(nu minus mu) union kappa}

with g(n) = (1 - t^-n)/(1 + (q/t)^n), u = q^(1/2), v = t^(1/2) and a = q^alpha.
Here mu runs over sub-multisets of the parts of nu (the annihilated parts,
each hit by n(1-q^n)/(1-t^n) d/dp_n) and kappa over the created parts.

The weight variable ``a`` stays symbolic unless the domain pins it, e.g.
``at_hrs(r, s)`` pins a = t^{(r+1)/2} q^{-(s+1)/2} so the highest weight
(u/v) a + (v/u) / a becomes h_{r,s}.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb

from .exact import SYMBOLIC, Domain, RatFunc, SingularMatrixError, solve
from .partitions import Partition, partition_index, partitions_of
from .symfunc import SymFunc, e_to_p, macdonald


class DegreeOverflow(ValueError):
    pass


class NormalizationError(AssertionError):
    pass


@dataclass(frozen=True)
class FockState:
    """A vector of the Fock module together with the domain fixing its weight."""

    value: SymFunc
    domain: Domain = SYMBOLIC

    @property
    def weight_param(self):
        return self.domain.var("a")


def h_rs(r: int, s: int) -> RatFunc:
    """t^{r/2} q^{-s/2} + t^{-r/2} q^{s/2}."""
    return RatFunc.monomial({"v": r, "u": -s}) + RatFunc.monomial({"v": -r, "u": s})


def a_rs(r: int, s: int) -> RatFunc:
    return RatFunc.monomial({"v": r + 1, "u": -(s + 1)})


def at_hrs(r: int, s: int, domain: Domain = SYMBOLIC) -> Domain:
    """Child domain with a pinned so that the highest weight is h_{r,s}."""
    return domain.specialize(a=domain.from_ratfunc(a_rs(r, s)))


def highest_weight(domain: Domain = SYMBOLIC):
    u, v, a = domain.var("u"), domain.var("v"), domain.var("a")
    return u / v * a + v / u / a


# -- mode matrices -------------------------------------------------------------

def _submultisets(nu: Partition):
    """(mu, nu minus mu, prod of binomials) for every sub-multiset mu of nu."""
    mult = sorted(nu.multiplicities().items(), reverse=True)
    for choice in product(*[range(m + 1) for _, m in mult]):
        mu, rest, binom = [], [], 1
        for (part, m), c in zip(mult, choice):
            mu += [part] * c
            rest += [part] * (m - c)
            binom *= comb(m, c)
        yield Partition(mu), Partition(rest), binom


def _created_weight(kappa: Partition, domain):
    def compute():
        q, t = domain.q, domain.t
        out = domain.const(1) / kappa.z()
        for n in kappa:
            out = out * (1 - t ** (-n)) / (1 + (q / t) ** n)
        return out

    return domain.memo(("fock_create", kappa), compute)


def mode_matrix(k: int, d: int, domain: Domain = SYMBOLIC):
    """Matrix of T_k from degree d to degree d - k (rows: source partitions)."""
    def compute():
        target = d - k
        if target < 0:
            return None
        u, v, a, q = domain.var("u"), domain.var("v"), domain.var("a"), domain.q
        plus = a * (u / v) ** (k + 1)
        minus = (v / u) ** (k + 1) / a
        tidx = partition_index(target)
        rows = []
        for nu in partitions_of(d):
            row = [domain.zero] * len(tidx)
            for mu, rest, binom in _submultisets(nu):
                if sum(mu) < k:
                    continue
                ann = domain.const(binom)
                for part in mu:
                    ann = ann * (1 - q**part)
                if ann == 0:
                    continue
                sgn_mu = -1 if len(mu) % 2 else 1
                for kappa in partitions_of(sum(mu) - k):
                    sgn_k = -1 if len(kappa) % 2 else 1
                    c = (plus * sgn_mu + minus * sgn_k) * _created_weight(kappa, domain) * ann
                    j = tidx[rest.union(kappa)]
                    row[j] = row[j] + c
            rows.append(row)
        return rows

    return domain.memo(("fock_mode", k, d), compute)


def _to_vector(f: SymFunc, d: int, domain):
    idx = partition_index(d)
    vec = [domain.zero] * len(idx)
    for lam, c in f.terms.items():
        vec[idx[lam]] = c
    return vec


def _from_vector(vec, d: int) -> SymFunc:
    return SymFunc(dict(zip(partitions_of(d), vec)))


def apply_vector(k: int, vec, d: int, domain: Domain = SYMBOLIC):
    """T_k on a coefficient vector of degree d; None if the result vanishes by degree."""
    M = mode_matrix(k, d, domain)
    if M is None:
        return None
    out = [domain.zero] * (len(M[0]) if M else 0)
    for x, row in zip(vec, M):
        if x == 0:
            continue
        for j, y in enumerate(row):
            if not (y == 0):
                out[j] = out[j] + x * y
    return out


def mode_act(k: int, state, degree_cap: int | None = None, domain: Domain | None = None):
    """T_k applied to a Fock vector (a SymFunc or FockState)."""
    if isinstance(state, FockState):
        return FockState(mode_act(k, state.value, degree_cap, state.domain), state.domain)
    domain = SYMBOLIC if domain is None else domain
    out = SymFunc()
    for d in state.degrees():
        if degree_cap is not None and (d > degree_cap or d - k > degree_cap):
            raise DegreeOverflow(f"T_{k} on degree {d} exceeds the cap {degree_cap}")
        res = apply_vector(k, _to_vector(state.homogeneous(d), d, domain), d, domain)
        if res is not None:
            out = out + _from_vector(res, d - k)
    return out


# -- the map from the Verma module ------------------------------------------------

def basis_image(lam, domain: Domain = SYMBOLIC):
    """Image of T_{-lam_1} T_{-lam_2} ... 1 as a coefficient vector of degree |lam|."""
    lam = Partition(lam)

    def compute():
        if not lam:
            return [domain.one]
        inner = basis_image(lam[1:], domain)
        return apply_vector(-lam[0], inner, sum(lam[1:]), domain)

    return domain.memo(("fock_image", lam), compute)


def iota_image(vector, domain: Domain = SYMBOLIC) -> SymFunc:
    """Fock image of sum c_lam T_{-lam}.1 (a PBWVector or a dict)."""
    terms = getattr(vector, "terms", vector)
    out = SymFunc()
    for lam, c in terms.items():
        img = _from_vector(basis_image(lam, domain), sum(lam))
        out = out + img.scale(c)
    return out


def _pairing_covector(lam: Partition, domain):
    """Covector x on degree |lam| with x . w = [1] T_{lam_l} ... T_{lam_1} w."""
    def compute():
        if not lam:
            return [domain.one]
        # T_{lam_1} acts first, so it is the innermost matrix
        inner = _pairing_covector(Partition(lam[1:]), domain)
        M = mode_matrix(lam[0], sum(lam), domain)
        out = []
        for row in M:
            acc = domain.zero
            for x, y in zip(row, inner):
                if not (x == 0) and not (y == 0):
                    acc = acc + x * y
            out.append(acc)
        return out

    return domain.memo(("fock_covector", lam), compute)


def fock_gram(n: int, domain: Domain = SYMBOLIC):
    """Gram matrix K_n via the free-field realization, in canonical order."""
    def compute():
        parts = partitions_of(n)
        images = [basis_image(mu, domain) for mu in parts]
        K = []
        for lam in parts:
            cov = _pairing_covector(lam, domain)
            row = []
            for img in images:
                acc = domain.zero
                for x, y in zip(cov, img):
                    if not (x == 0) and not (y == 0):
                        acc = acc + x * y
                row.append(acc)
            K.append(row)
        return K

    return domain.memo(("fock_gram", n), compute)


# -- singular vectors and Macdonald functions -----------------------------------

def normalization_product(r: int, s: int, domain: Domain = SYMBOLIC):
    """prod_{i<=r, j<=s} (q^j - t^i) / (q^j t^i)."""
    q, t = domain.q, domain.t
    out = domain.one
    for i in range(1, r + 1):
        for j in range(1, s + 1):
            out = out * (q**j - t**i) / (q**j * t**i)
    return out


def scalar_ratio(f: SymFunc, g: SymFunc):
    """c with f = c g, or raise NormalizationError."""
    if set(f.terms) != set(g.terms):
        raise NormalizationError("supports differ; the quotient is not a scalar")
    ratio = None
    for lam, c in g.terms.items():
        x = f.terms[lam] / c
        if ratio is None:
            ratio = x
        elif x != ratio:
            raise NormalizationError(f"coefficient ratios differ at p{lam}")
    return ratio


def verify_singular_normalization(r: int, s: int, bound: int = 6):
    """iota(v_{r,s}) / J_{(s^r)}(q,t), checked against the closed product."""
    from .verma import singular_vector

    if r * s > bound:
        raise ValueError(f"rs = {r * s} exceeds the configured bound {bound}")
    v = singular_vector(r, s)
    image = iota_image(v.vector, at_hrs(r, s))
    J = macdonald(Partition.rectangle(r, s), "J")
    ratio = scalar_ratio(image, J)
    expected = normalization_product(r, s)
    if ratio != expected:
        raise NormalizationError(f"normalization {ratio} != {expected}")
    return ratio


# -- the q = 1 algebra ----------------------------------------------------------------

def q1_domain(r_weight: int) -> Domain:
    """q = 1 with the zero mode pinned to k = t^{(r+1)/2}."""
    return SYMBOLIC.specialize(u=RatFunc(1), a=RatFunc.monomial({"v": r_weight + 1}))


def _z_plus(nu: Partition):
    t = RatFunc.var("t")
    out = RatFunc(1)
    for i, m in nu.multiplicities().items():
        out = out * RatFunc(_factorial(m)) * (i * (1 + t ** (-i)) / (1 - t ** (-i))) ** m
    return out


def _factorial(m):
    from math import factorial

    return factorial(m)


def q1_closed_row(lam, r_weight: int) -> SymFunc:
    """M(T,p)_{lam, .} from the multinomial closed formula."""
    lam = Partition(lam)
    t = RatFunc.var("t")
    pref = RatFunc.monomial({"v": sum(lam) + len(lam) * r_weight})
    out = {}
    for pieces in product(*[partitions_of(part) for part in lam]):
        term = RatFunc(1)
        for nu in pieces:
            inner = RatFunc(1)
            for part in nu:
                inner = inner * (-(t ** (-part)))
            term = term * (1 + t ** (-r_weight) * inner) / _z_plus(nu)
        mu = Partition(sorted([x for nu in pieces for x in nu], reverse=True))
        out[mu] = out[mu] + term if mu in out else term
    return SymFunc(out).scale(pref)


class TwoPathMismatch(AssertionError):
    def __init__(self, message, iterated, closed):
        super().__init__(message)
        self.iterated = iterated
        self.closed = closed


def q1_transition(lam, r_weight: int) -> SymFunc:
    """p-expansion of T_{-lam}.1 in the q = 1 algebra, computed two ways."""
    lam = Partition(lam)
    iterated = iota_image({lam: RatFunc(1)}, q1_domain(r_weight))
    closed = q1_closed_row(lam, r_weight)
    if iterated != closed:
        raise TwoPathMismatch(f"q=1 transition disagrees at {lam}", iterated, closed)
    return iterated


def q1_meT_entry(lam, r_weight: int) -> RatFunc:
    """M(e,T)_{lam,(1^n)} where M(e,T) = M(e,p) M(T,p)^{-1}."""
    lam = Partition(lam)
    n = sum(lam)
    parts = partitions_of(n)
    MT = [_to_vector(q1_transition(mu, r_weight), n, SYMBOLIC) for mu in parts]
    erow = [RatFunc(x) for x in e_to_p(n)[parts.index(lam)]]
    # y M(T,p) = e-row  <=>  M(T,p)^T y^T = e-row^T
    MTt = [[MT[i][j] for i in range(len(parts))] for j in range(len(parts))]
    try:
        y = solve(MTt, erow)
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"M(T,p) is singular at level {n}") from exc
    return y[-1]


def meT_corner_product(r: int, s: int) -> RatFunc:
    t = RatFunc.var("t")
    out = RatFunc(1)
    for i in range(1, r + 1):
        out = out * (t**i / (1 - t**i) ** 2) ** s
    return out


def q1_meT_corner(r: int, s: int, bound: int = 6, row: str = "conjugate") -> RatFunc:
    """Corner entry of M(e,T) at weight r, checked against the closed product.

    J_{(s^r)}(1,t) is a multiple of e_{(s^r)'} = e_{(r^s)}, so the entry
    that fixes the normalization sits in row (r^s); ``row="literal"``
    reads row (s^r) instead, which agrees only when r = s.
    """
    if r * s > bound:
        raise ValueError(f"rs = {r * s} exceeds the configured bound {bound}")
    lam = Partition.rectangle(r, s)
    if row == "conjugate":
        lam = lam.conjugate()
    elif row != "literal":
        raise ValueError(f"row must be 'conjugate' or 'literal', not {row!r}")
    value = q1_meT_entry(lam, r)
    expected = meT_corner_product(r, s)
    if value != expected:
        raise NormalizationError(f"M(e,T) corner {value} != {expected}")
    return value
