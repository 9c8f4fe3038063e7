import pytest

from qvir.classical import (ClassicalMismatch, b_prime, boson_mode, capply, boson_relation_check,
                            central_charge, degeneration_suite, gram_degeneration, hp_rs, hp_symmetry,
                            iota_prime, jack_limit, jack_normalization, kac_prime_check, product_limit,
                            r_prime, r_prime_displayed, r_prime_index_count, rectangles,
                            singular_vector_prime, vir_gram, weight_series, y_rs)
from qvir.exact import RatFunc, SYMBOLIC, det
from qvir.partitions import Partition, partitions_of
from qvir.symfunc import SymFunc

P = Partition
RS4 = rectangles(4)


def test_vir_gram_low(V):
    assert vir_gram(0) == [[RatFunc(1)]]
    assert vir_gram(1) == [[2 * V.hp]]
    K = vir_gram(2)
    assert K == [[V.c / 2 + 4 * V.hp, 6 * V.hp], [6 * V.hp, 8 * V.hp**2 + 4 * V.hp]]
    assert det(K, RatFunc(1)) == 2 * (16 * V.hp**3 + 2 * V.hp**2 * V.c - 10 * V.hp**2 + V.hp * V.c)


def test_hp_values(V):
    assert hp_rs(1, 1) == 0
    assert central_charge(RatFunc(1)) == 1


@pytest.mark.parametrize("n", range(1, 5))
def test_kac_prime(n):
    kac_prime_check(n)


def test_hp_symmetry():
    hp_symmetry(6)


def test_r_prime_diagonal_and_index_count():
    assert r_prime(1, 1) == 2
    assert r_prime(2, 2) == r_prime_displayed(2, 2)
    assert r_prime_index_count(1, 2) == 6
    assert r_prime_index_count(2, 2) == 14


@pytest.mark.parametrize("rs", RS4)
def test_r_prime_transposed_labels(rs):
    r_prime(*rs, labels="transposed")


@pytest.mark.parametrize("rs", [(1, 2), (2, 1), (1, 3)])
def test_r_prime_literal_labels_fail_off_diagonal(rs):
    with pytest.raises(ClassicalMismatch):
        r_prime(*rs)


def test_singular_prime_normalized():
    for r, s in RS4:
        v = singular_vector_prime(r, s)
        assert v.terms[P((1,) * (r * s))] == 1


def test_iota_prime_examples(V):
    one = SymFunc.one(RatFunc(1))
    assert iota_prime({P(()): RatFunc(1)}) == one
    assert iota_prime({P((1,)): RatFunc(1)}, y_rs(1, 1)) == SymFunc.p(1).scale(V.b - 1)


def test_boson_relations():
    boson_relation_check(3, 3)


def test_intertwining(V):
    """iota'(L_k v) = L_k iota'(v) for k in {+-1, +-2}, level <= 3."""
    for n in range(0, 4):
        for lam in partitions_of(n):
            v = {lam: RatFunc(1)}
            image = iota_prime(v)
            for k in (-2, -1, 1, 2):
                dom = SYMBOLIC.specialize(c=central_charge(V.b), hp=V.y * (V.y - V.b + 1) / V.b)
                moved = capply(k, v, dom)
                assert iota_prime(moved) == boson_mode(k, image)


@pytest.mark.parametrize("rs", RS4)
def test_jack_normalization(rs, V):
    assert jack_normalization(*rs) == b_prime(*rs)


def test_b_prime_example(V):
    assert b_prime(1, 2) == (V.b - 1) * (V.b - 2)


def test_weight_series_matches_hrs(V):
    """h_{r,s} expands as 2 + hb^2 (e1 e2 h'_{r,s}(e2/e1) + (e1-e2)^2/4) + O(hb^4)."""
    from qvir.exact import hbar_point, series_substitute
    from qvir.fock import h_rs

    for r, s in [(1, 1), (1, 2), (3, 1)]:
        got = series_substitute(h_rs(r, s), hbar_point(), 2)
        want = weight_series(2)
        hp = hp_rs(r, s, V.e2 / V.e1)
        assert got.coeff(2) == want.coeff(2).subs({"hp": hp})
        assert got.coeff(0) == 2 and got.coeff(1) == 0


@pytest.mark.parametrize("n", range(0, 4))
def test_gram_degeneration(n):
    gram_degeneration(n)


@pytest.mark.parametrize("rs", RS4)
def test_jack_limit(rs):
    assert jack_limit(*rs) == "1/beta"


@pytest.mark.parametrize("rs", RS4)
def test_product_limit(rs):
    product_limit(*rs)


def test_product_limit_example(V):
    assert product_limit(1, 1) == V.e1 - V.e2


def test_degeneration_suite_small():
    records = degeneration_suite(order=4, l_max=2, gram_levels=1, max_rs=1)
    assert records and all(r.status == "pass" for r in records)
    with pytest.raises(ValueError):
        degeneration_suite(order=6)
