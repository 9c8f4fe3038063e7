"""The three computations of the Whittaker-norm coefficients F_n.

* ``nekrasov_F``: the 5d pure SU(2) instanton sum over partition pairs.
* ``recursion_F``: the Zamolodchikov-type recursion in Q with residues A_{r,s}.
* ``gram_F``: (q/t)^n times the ((1^n),(1^n)) entry of the inverse Gram matrix,
  with the highest weight tied to Q.

Q is the alias w^2.  Two ways of tying h to Q are implemented: bridge "A"
(h = Q + 1/Q) and bridge "B" (h = Q^{1/2} + Q^{-1/2}); only B makes the
three computations agree, so it is the default.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .exact import (DEFAULT_PRIME, SYMBOLIC, Domain, ModularDomain, PoleError, RatFunc,
                    SingularMatrixError, solve)
from .fock import fock_gram
from .partitions import Partition, partitions_of

BRIDGE = "B"


# -- Nekrasov side -------------------------------------------------------------------

def n_factor(lam, mu, Qval, domain: Domain = SYMBOLIC):
    """N_{lam,mu}(Q) as a product over the boxes of mu and of lam."""
    lam, mu = Partition(lam), Partition(mu)
    q, t = domain.q, domain.t
    lc, mc = lam.conjugate(), mu.conjugate()

    def part(p, i):
        return p[i - 1] if i <= len(p) else 0

    out = domain.one
    for i, j in mu.boxes():
        out = out * (1 - Qval * q ** (part(lam, i) - j) * t ** (part(mc, j) - i + 1))
    for i, j in lam.boxes():
        out = out * (1 - Qval * q ** (-part(mu, i) + j - 1) * t ** (-part(lc, j) + i))
    return out


def nekrasov_term(lam, mu, Qval, domain: Domain = SYMBOLIC):
    one = domain.one
    return one / (n_factor(lam, lam, one, domain) * n_factor(mu, mu, one, domain)
                  * n_factor(lam, mu, Qval, domain) * n_factor(mu, lam, one / Qval, domain))


def nekrasov_F_at(n: int, Qval, domain: Domain = SYMBOLIC):
    acc = domain.zero
    for k in range(n + 1):
        for lam in partitions_of(k):
            for mu in partitions_of(n - k):
                acc = acc + nekrasov_term(lam, mu, Qval, domain)
    return acc


def nekrasov_F(n: int, domain: Domain = SYMBOLIC):
    """sum_{|lam|+|mu|=n} 1/(N_ll(1) N_mm(1) N_lm(Q) N_ml(1/Q))."""
    return domain.memo(("nekrasov", n), lambda: nekrasov_F_at(n, domain.var("Q"), domain))


# -- recursion side -------------------------------------------------------------------

def a_factor(r: int, s: int, domain: Domain = SYMBOLIC):
    """A_{r,s} = -sign(r) q^r t^-s prod 1/(1 - q^i t^-j), (i,j) != (0,0)."""
    if r == 0 or s == 0:
        raise ValueError("r and s must be nonzero")
    q, t = domain.q, domain.t
    sign = 1 if r > 0 else -1
    out = -sign * q**r * t ** (-s)
    for i in range(-abs(r), abs(r)):
        for j in range(-abs(s), abs(s)):
            if (i, j) != (0, 0):
                out = out / (1 - q**i * t ** (-j))
    return out


def pole_labels(n: int):
    """(r, s) with r, s of the same sign and 1 <= rs <= n, positive pairs first."""
    pos = [(r, s) for r in range(1, n + 1) for s in range(1, n // r + 1)]
    return pos + [(-r, -s) for r, s in pos]


def recursion_F(n: int) -> RatFunc:
    """F_n as a rational function of w (Q = w^2), memoized on n.

    The shifted values F_m(q^r t^s) are substitutions w -> u^r v^s.
    """
    def compute():
        q, t, Q = RatFunc.var("q"), RatFunc.var("t"), RatFunc.var("Q")
        acc = RatFunc(int(n == 0))
        for r, s in pole_labels(n):
            shifted = recursion_F(n - r * s).subs({"w": RatFunc.monomial({"u": r, "v": s})})
            acc = acc + a_factor(r, s) * shifted / (Q - q**r * t ** (-s))
        return acc

    return SYMBOLIC.memo(("recursion", n), compute)


def recursion_F_at(n: int, Qval, domain: Domain = SYMBOLIC):
    """F_n evaluated directly at Q = Qval in any domain."""
    key = ("recursion_at", n, Qval if not isinstance(Qval, RatFunc) else str(Qval))

    def compute():
        q, t = domain.q, domain.t
        acc = domain.const(int(n == 0))
        for r, s in pole_labels(n):
            inner = recursion_F_at(n - r * s, q**r * t**s, domain)
            acc = acc + a_factor(r, s, domain) * inner / (Qval - q**r * t ** (-s))
        return acc

    return domain.memo(key, compute)


# -- Gram side ---------------------------------------------------------------------------

def bridge_domain(bridge: str, domain: Domain = SYMBOLIC) -> Domain:
    """Pin a so that h = (u/v)a + (v/u)/a equals w + 1/w (B) or w^2 + 1/w^2 (A)."""
    u, v, w = domain.var("u"), domain.var("v"), domain.var("w")
    if bridge == "B":
        return domain.specialize(a=v / u * w)
    if bridge == "A":
        return domain.specialize(a=v / u * w**2)
    raise ValueError(f"bridge must be 'A' or 'B', not {bridge!r}")


def gram_F(n: int, bridge: str = BRIDGE, domain: Domain = SYMBOLIC):
    """(q/t)^n (K_n^{-1})_{(1^n),(1^n)} with the weight tied to Q."""
    dom = domain.memo(("bridge", bridge), lambda: bridge_domain(bridge, domain))

    def compute():
        if n == 0:
            return dom.one
        K = fock_gram(n, dom)
        size = len(K)
        e = [dom.zero] * (size - 1) + [dom.one]
        try:
            corner = solve(K, e)[-1]
        except SingularMatrixError as exc:
            raise SingularMatrixError(f"K_{n} is singular at the bridged weight") from exc
        return (dom.q / dom.t) ** n * corner

    return dom.memo(("gram_F", n), compute)


# -- verification ------------------------------------------------------------------------

@dataclass
class CheckRecord:
    name: str
    tag: str
    status: str
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "ref": self.tag, "status": self.status, "detail": self.detail}


def _modular_domains(seed: int, prime: int):
    rng = random.Random(seed)
    while True:
        yield ModularDomain.random(prime, rng)


PAIRS = ("nekrasov=recursion", "recursion=gram")


def _triangle_record(n: int, agree: dict, extra: dict, witness=None) -> CheckRecord:
    ok = all(agree.values())
    detail = {"n": n, "pairs": {k: ("pass" if v else "fail") for k, v in agree.items()}}
    detail.update(extra)
    if not ok and witness is not None:
        detail["witness"] = witness
    return CheckRecord(f"triangle n={n}", "main-theorem", "pass" if ok else "fail", detail)


def verify_triangle(n_max: int, mode: str = "symbolic", n_min: int = 1, points: int = 3,
                    seed: int = 0, prime: int = DEFAULT_PRIME, bridge: str = BRIDGE,
                    max_retries: int = 20):
    """nekrasov_F = recursion_F = gram_F for n_min <= n <= n_max, one CheckRecord per n."""
    records = []
    if mode == "symbolic":
        for n in range(n_min, n_max + 1):
            nk, rc, gr = nekrasov_F(n), recursion_F(n), gram_F(n, bridge)
            agree = {PAIRS[0]: nk == rc, PAIRS[1]: rc == gr}
            witness = None
            if not all(agree.values()):
                witness = {"nekrasov": str(nk), "recursion": str(rc), "gram": str(gr)}
            records.append(_triangle_record(n, agree, {}, witness))
        return records
    if mode != "modular":
        raise ValueError(f"mode must be 'symbolic' or 'modular', not {mode!r}")
    source = _modular_domains(seed, prime)
    for n in range(n_min, n_max + 1):
        agree = dict.fromkeys(PAIRS, True)
        witness = None
        done = retries = 0
        while done < points:
            dom = next(source)
            try:
                Q = dom.var("Q")
                nk = nekrasov_F_at(n, Q, dom)
                rc = recursion_F_at(n, Q, dom)
                gr = gram_F(n, bridge, dom)
            except (ZeroDivisionError, PoleError, SingularMatrixError):
                retries += 1
                if retries > max_retries:
                    raise
                continue
            done += 1
            for pair, (x, y) in zip(PAIRS, ((nk, rc), (rc, gr))):
                if x != y:
                    agree[pair] = False
                    if witness is None:
                        witness = {"point": {k: str(v) for k, v in sorted(dom.point.items())},
                                   "prime": str(prime), "pair": pair,
                                   "left": str(int(x)), "right": str(int(y))}
        records.append(_triangle_record(n, agree, {"points": points}, witness))
    return records


def residue_check(n: int, r: int, s: int, which: str = "recursion") -> bool:
    """Res_{Q = q^r t^-s} F_n = A_{r,s} F_{n-rs}(q^r t^s), symbolically."""
    F = recursion_F(n) if which == "recursion" else nekrasov_F(n)
    q, t, Q = RatFunc.var("q"), RatFunc.var("t"), RatFunc.var("Q")
    Q0 = q**r * t ** (-s)
    w0 = RatFunc.monomial({"u": r, "v": -s})
    residue = ((Q - Q0) * F).subs({"w": w0})
    shifted = recursion_F(n - r * s).subs({"w": RatFunc.monomial({"u": r, "v": s})})
    return residue == a_factor(r, s) * shifted


def pole_denominator_at(n: int, Qval, domain: Domain):
    q, t = domain.q, domain.t
    out = domain.one
    for r, s in pole_labels(n):
        out = out * (Qval - q**r * t ** (-s))
    return out


def pole_containment(n: int, which: str = "recursion", seed: int = 0, extra: int = 3,
                     prime: int = DEFAULT_PRIME) -> bool:
    """D(Q) F_n(Q) is a polynomial in Q of degree <= deg D, at a random (q, t).

    D is the product of (Q - q^r t^-s) over the poles allowed by the recursion.
    The product is sampled at deg D + 1 + extra random values of Q; a Newton
    interpolant through the first deg D + 1 samples must reproduce the rest.
    """
    rng = random.Random(seed)
    dom = ModularDomain.random(prime, rng)
    evaluate = recursion_F_at if which == "recursion" else nekrasov_F_at
    deg = len(pole_labels(n))
    xs, ys = [], []
    while len(xs) < deg + 1 + extra:
        Q = dom.const(rng.randrange(2, prime - 1))
        if any(Q == x for x in xs):
            continue
        try:
            ys.append(pole_denominator_at(n, Q, dom) * evaluate(n, Q, dom))
        except (ZeroDivisionError, PoleError):
            continue
        xs.append(Q)
    # Newton divided differences on the first deg+1 nodes
    k = deg + 1
    coef = list(ys[:k])
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])

    def interp(x):
        acc = coef[-1]
        for i in range(k - 2, -1, -1):
            acc = acc * (x - xs[i]) + coef[i]
        return acc

    return all(interp(x) == y for x, y in zip(xs[k:], ys[k:]))


def norm_residue_relation(r: int, s: int) -> RatFunc:
    """A_{r,s} * dN/dQ at the pole Q = q^r t^-s, which must equal (q/t)^{rs}.

    N is the singular-vector norm at h_{s,r} (labels swapped): with bridge B,
    h = w + 1/w and h_{s,r} = w0 + 1/w0 for w0 = u^r v^-s.  Returns the
    product; raises ArithmeticError if it differs from (q/t)^{rs}.
    """
    from .verma import r_derivative

    w0 = RatFunc.monomial({"u": r, "v": -s})
    dh_dQ = (1 - w0 ** (-2)) / (2 * w0)
    value = a_factor(r, s) * r_derivative(s, r) * dh_dQ
    q, t = RatFunc.var("q"), RatFunc.var("t")
    if value != (q / t) ** (r * s):
        raise ArithmeticError(f"A_{{{r},{s}}} dN/dQ = {value} != (q/t)^{r * s}")
    return value
