import random

import pytest

from qvir.agt import (a_factor, gram_F, n_factor, nekrasov_F, nekrasov_F_at, norm_residue_relation,
                      pole_containment, pole_labels, recursion_F, recursion_F_at, residue_check,
                      verify_triangle)
from qvir.exact import DEFAULT_PRIME, ModularDomain, RatFunc
from qvir.partitions import Partition

P = Partition
E = P(())


def test_n_factor_examples(V):
    assert n_factor(E, E, V.Q) == 1
    assert n_factor(P((1,)), P((1,)), RatFunc(1)) == (1 - V.t) * (1 - 1 / V.q)
    assert n_factor(P((1,)), E, V.Q) == 1 - V.Q


def test_nekrasov_low(V):
    q, t, Q = V.q, V.t, V.Q
    assert nekrasov_F(0) == 1
    want = 1 / ((1 - t) * (1 - 1 / q)) * (1 / ((1 - Q) * (1 - t / (q * Q))) + 1 / ((1 - t * Q / q) * (1 - 1 / Q)))
    assert nekrasov_F(1) == want
    # the two terms' poles at Q = 1 cancel
    nekrasov_F(1).subs({"w": RatFunc(1)})
    assert ((1 - Q) * nekrasov_F(1)).subs({"w": RatFunc(1)}) == 0


def test_a_factor(V):
    q, t = V.q, V.t
    base = (1 - t / q) * (1 - 1 / q) * (1 - t)
    assert a_factor(1, 1) == -(q / t) / base
    assert a_factor(-1, -1) == (t / q) / base


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (1, 3), (-2, -2)])
def test_a_factor_index_count(r, s):
    count = sum(1 for i in range(-abs(r), abs(r)) for j in range(-abs(s), abs(s)) if (i, j) != (0, 0))
    assert count == 2 * abs(r) * 2 * abs(s) - 1


def test_recursion_low(V):
    q, t, Q = V.q, V.t, V.Q
    assert recursion_F(0) == 1
    assert recursion_F(1) == a_factor(1, 1) / (Q - q / t) + a_factor(-1, -1) / (Q - t / q)
    assert recursion_F(1) == nekrasov_F(1)


def test_pole_labels():
    assert pole_labels(2) == [(1, 1), (1, 2), (2, 1), (-1, -1), (-1, -2), (-2, -1)]


def test_bridge_choice():
    assert gram_F(0) == 1
    assert gram_F(1, "B") == recursion_F(1)
    assert gram_F(1, "A") != recursion_F(1)


def test_wrong_bridge_detected_modularly():
    (rec,) = verify_triangle(1, "modular", points=1, bridge="A")
    assert rec.status == "fail"
    assert rec.detail["witness"]["pair"] == "recursion=gram"
    assert "point" in rec.detail["witness"]


@pytest.mark.parametrize("n", range(0, 4))
def test_triangle_symbolic(n):
    (rec,) = verify_triangle(n, "symbolic", n_min=n)
    assert rec.status == "pass"


def test_triangle_modular():
    assert all(r.status == "pass" for r in verify_triangle(6, "modular", n_min=4))


def test_evaluated_forms_agree_with_symbolic():
    dom = ModularDomain.random(DEFAULT_PRIME, random.Random(3))
    Q = dom.var("Q")
    for n in range(3):
        assert recursion_F_at(n, Q, dom) == dom.from_ratfunc(recursion_F(n))
        assert nekrasov_F_at(n, Q, dom) == dom.from_ratfunc(nekrasov_F(n))


@pytest.mark.parametrize("n", range(1, 5))
def test_nekrasov_Q_inversion(n, V):
    F = nekrasov_F(n)
    assert F.subs({"w": 1 / V.w}) == F


@pytest.mark.parametrize("n,r,s", [(1, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 1), (3, 3, 1), (4, 2, 2), (4, 1, 4)])
def test_residue_law(n, r, s):
    assert residue_check(n, r, s, "recursion")
    assert residue_check(n, r, s, "nekrasov")


@pytest.mark.parametrize("n", range(1, 7))
def test_pole_containment(n):
    assert pole_containment(n, "recursion", seed=n)
    assert pole_containment(n, "nekrasov", seed=n)


@pytest.mark.parametrize("rs", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 4)])
def test_norm_residue_relation(rs):
    norm_residue_relation(*rs)
