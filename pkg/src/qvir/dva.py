"""Structure constants of the deformed Virasoro algebra.

The defining relation is

    sum_{l>=0} f_l (T_{m-l} T_{n+l} - T_{n-l} T_{m+l}) = C(m) delta_{m+n,0}

with f(z) = sum f_l z^l = exp(sum_{n>=1} (1/n) (1-q^n)(1-t^-n)/(1+(q/t)^n) z^n)
and C(m) = -(1-q)(1-t^-1)/(1-q/t) * ((q/t)^m - (q/t)^-m).

Both are computed in any coefficient domain.  A domain created with
``with_options(perturb_f1=c)`` returns f_1 + c instead of f_1; this is
the deliberately broken algebra used to exercise failure paths.
"""
from __future__ import annotations

from .exact import SYMBOLIC, RatFunc, TruncSeries, hbar_point, series_substitute


class ExpansionMismatch(AssertionError):
    pass


def _g(n: int, domain):
    q, t = domain.q, domain.t
    return (1 - q**n) * (1 - t ** (-n)) / (1 + (q / t) ** n) / n


def _f_list(L: int, domain):
    """Unperturbed f_0..f_L via E_l = (1/l) sum_k k g_k E_{l-k}."""
    def compute():
        prev = domain.memo(("f_list", L - 1), lambda: _f_list(L - 1, domain)) if L > 0 else []
        out = list(prev)
        if L == 0:
            return [domain.one]
        acc = domain.zero
        for k in range(1, L + 1):
            acc = acc + _g(k, domain) * k * out[L - k]
        out.append(acc / L)
        return out

    return domain.memo(("f_list", L), compute)


def f_coeff(l: int, domain=SYMBOLIC):
    """f_l, the z^l coefficient of the structure series."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    value = _f_list(l, domain)[l]
    if l == 1 and "perturb_f1" in domain.options:
        value = value + domain.const(domain.options["perturb_f1"])
    return value


def central_term(m: int, domain=SYMBOLIC):
    """Right side C(m) of the relation (times delta_{m+n,0})."""
    if m == 0:
        return domain.zero
    q, t = domain.q, domain.t
    x = q / t
    return -(1 - q) * (1 - 1 / t) / (1 - x) * (x**m - x ** (-m))


# -- hbar expansions ----------------------------------------------------------

def _e1e2():
    return RatFunc.var("e1"), RatFunc.var("e2")


def f_closed_forms(l: int):
    """(f^(0), f^(1), f^(2)): the hbar^0, hbar^2, hbar^4 coefficients of f_l."""
    e1, e2 = _e1e2()
    f0 = RatFunc(int(l == 0))
    f1 = -RatFunc(l) / 2 * e1 * e2
    f2 = (RatFunc(l**3) / 24 * e1 * e2 * (e1**2 - 3 * e1 * e2 + e2**2)
          + RatFunc(l**3 - l) / 48 * e1**2 * e2**2)
    return f0, f1, f2


def rhs_closed_forms(m: int):
    """(R^(0), R^(1), R^(2)) for R = -C(m): hbar^0, hbar^2, hbar^4 coefficients."""
    e1, e2 = _e1e2()
    r1 = 2 * m * e1 * e2
    r2 = RatFunc(m) / 6 * e1 * e2 * (2 * m**2 * (e1**2 + e2**2) + (1 - 4 * m**2) * e1 * e2)
    return RatFunc(0), r1, r2


def _compare(series: TruncSeries, closed, order: int, what: str):
    for k in range(order + 1):
        got = series.coeff(k)
        if k % 2:
            want = RatFunc(0)
        elif k // 2 < len(closed):
            want = closed[k // 2]
        else:
            continue
        if got != want:
            raise ExpansionMismatch(f"{what}: hbar^{k} coefficient {got} != {want}")


def f_hbar_expansion(l: int, order: int = 4) -> TruncSeries:
    """f_l under q=e^{hb e1}, t=e^{hb e2}, checked against the closed forms."""
    if order > 4:
        raise ValueError("closed forms are available up to hbar^4")
    s = series_substitute(f_coeff(l), hbar_point(), order)
    _compare(s, f_closed_forms(l), order, f"f_{l}")
    return s


def central_hbar_expansion(m: int, order: int = 4) -> TruncSeries:
    """-C(m) expanded in hbar, checked against the closed forms."""
    if order > 4:
        raise ValueError("closed forms are available up to hbar^4")
    s = series_substitute(-central_term(m), hbar_point(), order)
    _compare(s, rhs_closed_forms(m), order, f"RHS(m={m})")
    return s
