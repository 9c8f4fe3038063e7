import pytest

from qvir.exact import RatFunc, SYMBOLIC
from qvir.fock import (DegreeOverflow, NormalizationError, at_hrs, h_rs, highest_weight, iota_image,
                       meT_corner_product, mode_act, q1_meT_corner, q1_meT_entry, q1_transition,
                       verify_singular_normalization)
from qvir.partitions import Partition, partitions_of
from qvir.symfunc import SymFunc

P = Partition
ONE = SymFunc.one(RatFunc(1))


def test_zero_mode_on_vacuum(V):
    assert mode_act(0, ONE) == ONE.scale(highest_weight())
    assert highest_weight() == V.u / V.v * V.a + V.v / V.u / V.a


def test_vacuum_is_highest_weight():
    for k in range(1, 4):
        assert mode_act(k, ONE) == SymFunc()


def test_lowering_on_vacuum(V):
    want = SymFunc.p(1).scale((1 - 1 / V.t) / (1 + V.q / V.t) * (V.a - 1 / V.a))
    assert mode_act(-1, ONE) == want


def test_degree_cap():
    with pytest.raises(DegreeOverflow):
        mode_act(-2, SymFunc.p(1), degree_cap=2)


def test_iota_examples(V):
    assert iota_image({P(()): RatFunc(1)}) == ONE
    generic = iota_image({P((1,)): RatFunc(1)})
    assert generic == SymFunc.p(1).scale((1 - 1 / V.t) / (1 + V.q / V.t) * (V.a - 1 / V.a))
    at11 = iota_image({P((1,)): RatFunc(1)}, at_hrs(1, 1))
    assert at11 == SymFunc.p(1).scale((1 - V.t) * (V.q - V.t) / (V.q * V.t))


def test_hrs_pinning():
    for r, s in [(1, 1), (1, 2), (3, 1)]:
        dom = at_hrs(r, s)
        assert highest_weight(dom) == h_rs(r, s)


def _mode_relation_holds(m, n, f, V):
    """sum_l f_l (T_{m-l}T_{n+l} - T_{n-l}T_{m+l}) = C(m) delta on a Fock vector."""
    from qvir.dva import central_term, f_coeff

    deg = max(f.degrees())
    total = SymFunc()
    for l in range(0, deg + abs(m) + abs(n) + 2):
        fl = f_coeff(l)
        a = mode_act(m - l, mode_act(n + l, f))
        b = mode_act(n - l, mode_act(m + l, f))
        total = total + (a - b).scale(fl)
    want = f.scale(central_term(m)) if m + n == 0 else SymFunc()
    return total == want


@pytest.mark.parametrize("m,n", [(1, -1), (2, -1), (1, -2), (2, -2), (-1, -1)])
def test_fock_module_relation(m, n, V):
    assert _mode_relation_holds(m, n, ONE, V)
    assert _mode_relation_holds(m, n, SymFunc.p(1), V)


def test_singular_normalization_examples(V):
    q, t = V.q, V.t
    assert verify_singular_normalization(1, 1) == (q - t) / (q * t)
    assert verify_singular_normalization(1, 2) == (q - t) / (q * t) * (q**2 - t) / (q**2 * t)


def test_normalization_bound():
    with pytest.raises(ValueError):
        verify_singular_normalization(2, 4, bound=6)


def test_q1_transition(V):
    t = V.t
    assert q1_transition(P((1,)), 1) == SymFunc.p(1).scale((t - 1) ** 2 / t)
    assert q1_transition(P(()), 1) == ONE
    assert q1_meT_entry(P((1,)), 1) == t / (1 - t) ** 2


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("n", range(1, 6))
def test_q1_two_paths(r, n):
    for lam in partitions_of(n):
        q1_transition(lam, r)


def test_q1_corner_examples(V):
    t = V.t
    assert q1_meT_corner(1, 1) == t / (1 - t) ** 2
    assert q1_meT_corner(2, 1) == t / (1 - t) ** 2 * t**2 / (1 - t**2) ** 2


def test_q1_corner_literal_row_only_on_squares():
    q1_meT_corner(2, 2, row="literal")
    with pytest.raises(NormalizationError):
        q1_meT_corner(2, 1, row="literal")


def test_normalization_at_q1(V):
    """At q = 1 the image of v_{r,s} is J_{(s^r)}(1,t) prod_i ((1-t^i)/t^i)^s."""
    from qvir.fock import scalar_ratio
    from qvir.symfunc import j_at_q1
    from qvir.verma import singular_vector

    t = V.t
    for r, s in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        img = iota_image(singular_vector(r, s).vector, at_hrs(r, s)).map_coeffs(lambda c: c.subs({"u": 1}))
        want = RatFunc(1)
        for i in range(1, r + 1):
            want = want * ((1 - t**i) / t**i) ** s
        assert scalar_ratio(img, j_at_q1(Partition.rectangle(r, s))) == want
