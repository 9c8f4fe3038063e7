import pytest

from qvir.exact import RatFunc, SYMBOLIC
from qvir.partitions import Partition, dominance_leq, partitions_of
from qvir.symfunc import (SymFunc, basis_convert, elementary, j_at_q1, jack, macdonald,
                          macdonald_m_expansion, macdonald_to_jack_limit, monomial, pairing)

P = Partition


def test_pairings(V):
    p1, p2 = SymFunc.p(1), SymFunc.p(2)
    assert pairing("qt", p1, p1) == (1 - V.q) / (1 - V.t)
    assert pairing("qt", p1, p2) == 0
    assert pairing("qt", p2, p2) == 2 * (1 - V.q**2) / (1 - V.t**2)
    assert pairing("beta", p1, p1) == V.b


def test_basis_convert():
    assert basis_convert(SymFunc({P((1,)): RatFunc(1)}), "e", "p") == SymFunc.p(1)
    e2 = basis_convert(SymFunc({P((2,)): RatFunc(1)}), "e", "p")
    assert e2 == SymFunc({P((1, 1)): RatFunc(1) / 2, P((2,)): RatFunc(-1) / 2})
    p3 = SymFunc.p(3)
    assert basis_convert(basis_convert(p3, "p", "m"), "m", "p") == p3


@pytest.mark.parametrize("n", range(1, 6))
def test_transition_round_trips(n):
    for lam in partitions_of(n):
        f = SymFunc({lam: RatFunc(1)})
        for b in ("m", "e"):
            assert basis_convert(basis_convert(f, "p", b), b, "p") == f


def test_macdonald_examples(V):
    assert macdonald(P((1,)), "P") == SymFunc.p(1)
    assert macdonald(P((1,)), "J") == SymFunc.p(1).scale(1 - V.t)
    m = macdonald_m_expansion(P((2,)))
    assert m[P((1, 1))] == (1 + V.q) * (1 - V.t) / (1 - V.q * V.t)
    assert pairing("qt", macdonald(P((2,))), macdonald(P((1, 1)))) == 0


def test_jack_examples(V):
    assert jack(P((1,)), "P") == SymFunc.p(1)
    assert jack(P((1,)), "J") == SymFunc.p(1)
    J2 = jack(P((2,)), "J", beta=RatFunc(2))
    assert J2 == SymFunc({P((1, 1)): RatFunc(1), P((2,)): RatFunc(2)})


@pytest.mark.parametrize("lam", [P((1,)), P((2,)), P((1, 1)), P((2, 1))])
def test_macdonald_to_jack_limit(lam, V):
    assert macdonald_to_jack_limit(lam) == jack(lam, "J", beta=1 / V.b)


def test_j_at_q1(V):
    assert j_at_q1(P((1,))) == SymFunc.p(1).scale(1 - V.t)
    assert j_at_q1(P((2,))) == SymFunc({P((1, 1)): (1 - V.t) ** 2})
    for n in range(1, 5):
        for lam in partitions_of(n):
            at1 = macdonald(lam, "J").map_coeffs(lambda c: c.subs({"u": 1}))
            assert at1 == j_at_q1(lam)


@pytest.mark.parametrize("n", range(1, 6))
def test_macdonald_orthogonal_and_triangular(n):
    parts = partitions_of(n)
    Ps = {lam: macdonald(lam) for lam in parts}
    for i, lam in enumerate(parts):
        for mu in parts[i + 1:]:
            assert pairing("qt", Ps[lam], Ps[mu]) == 0
        m = macdonald_m_expansion(lam)
        assert m[lam] == 1
        for mu in m:
            assert dominance_leq(mu, lam)


@pytest.mark.parametrize("n", range(1, 5))
def test_jack_orthogonal(n, V):
    parts = partitions_of(n)
    Js = {lam: jack(lam, "J") for lam in parts}
    for i, lam in enumerate(parts):
        for mu in parts[i + 1:]:
            assert pairing("beta", Js[lam], Js[mu]) == 0


def test_monomial_and_elementary():
    assert monomial(P((1,))) == SymFunc.p(1)
    assert elementary(P((1, 1))) == SymFunc.p(1, 1)
