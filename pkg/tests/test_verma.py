import pytest

from qvir.dva import central_term, f_coeff
from qvir.exact import RatFunc, SYMBOLIC, det
from qvir.fock import at_hrs, iota_image, mode_act
from qvir.partitions import Partition, partitions_of
from qvir.symfunc import SymFunc
from qvir.verma import (KacMismatch, NotInHForm, PBWVector, ResidueMismatch, a_to_h, act_raise, gram,
                        kac_check, norm_polynomial, r_derivative, r_displayed, r_extract,
                        singular_vector)

P = Partition


def test_act_raise_examples(V):
    v = PBWVector(1, {P((1,)): RatFunc(1)})
    out = act_raise(1, v)
    assert out.level == 0
    assert out.terms[P(())] == -f_coeff(1) * V.h**2 + central_term(1)
    for k in range(1, 4):
        assert act_raise(k, PBWVector.highest()).is_zero()


def test_act_raise_matches_fock():
    """T_2 T_{-1}T_{-1}.1 computed abstractly and in the Fock module."""
    v = PBWVector(2, {P((1, 1)): RatFunc(1)})
    abstract = act_raise(2, v).terms.get(P(()), RatFunc(0))
    fock = mode_act(2, iota_image({P((1, 1)): RatFunc(1)}))
    hw = RatFunc.var("u") / RatFunc.var("v") * RatFunc.var("a") + RatFunc.var("v") / RatFunc.var("u") / RatFunc.var("a")
    assert abstract.subs({"h": hw}) == fock.coeff(P(()), RatFunc(0))


def test_gram_examples(V):
    assert gram(0).entries == [[RatFunc(1)]]
    q, t, h = V.q, V.t, V.h
    want = (1 - q) * (1 - 1 / t) * ((q + t) ** 2 - h**2 * q * t) / (q * (q + t))
    assert gram(1, "abstract").entries == [[want]]


@pytest.mark.parametrize("n", range(1, 5))
def test_fock_and_abstract_gram_agree(n):
    assert gram(n, "fock").entries == gram(n, "abstract").entries


@pytest.mark.parametrize("n", range(1, 6))
def test_gram_symmetric(n):
    K = gram(n, "abstract").entries
    assert all(K[i][j] == K[j][i] for i in range(len(K)) for j in range(i))


@pytest.mark.parametrize("n", range(1, 5))
def test_gram_h_degree_pattern(n):
    K = gram(n, "abstract").entries
    degs = [[max(K[i][j].laurent_coefficients("h"), default=0) for j in range(len(K))] for i in range(len(K))]
    assert degs[-1][-1] == 2 * n
    assert max(max(row) for row in degs) == 2 * n


def test_a_to_h_rejects_asymmetric(V):
    with pytest.raises(NotInHForm):
        a_to_h(V.a)


def test_kac_low_levels():
    assert kac_check(0) == 1
    assert kac_check(1) == 1
    C2 = kac_check(2)
    assert C2.is_constant() and not C2.is_zero()


def test_kac_detects_perturbation():
    with pytest.raises(KacMismatch):
        kac_check(2, domain=SYMBOLIC.with_options(perturb_f1=1))


def test_singular_vectors(V):
    v = singular_vector(1, 1).vector
    assert v.terms == {P((1,)): RatFunc(1)}
    a = singular_vector(1, 2).vector.terms
    b = singular_vector(2, 1).vector.terms
    # the algebra is invariant under (q, t) -> (1/t, 1/q), which swaps h_{1,2} and h_{2,1}
    swap = {"u": 1 / V.v, "v": 1 / V.u}
    assert {k: c.subs(swap) for k, c in a.items()} == b


def test_singular_bound():
    with pytest.raises(ValueError):
        singular_vector(1, 7)


@pytest.mark.parametrize("rs", [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)])
def test_norm_has_simple_zero(rs):
    assert not r_derivative(*rs).is_zero()


def test_r_displayed_example(V):
    q, t = V.q, V.t
    assert r_displayed(1, 1) == -(q**-2) * t**2 * (1 - t / q) * (1 - 1 / q) * (1 - t)


def test_r_extract_reports_both_values():
    with pytest.raises(ResidueMismatch) as info:
        r_extract(1, 1)
    assert info.value.computed == r_derivative(1, 1)
    assert info.value.displayed == r_displayed(1, 1)
