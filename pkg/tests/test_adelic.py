import numpy as np
import pytest

from chevalley.adelic import (
    SL2Group, centralizer_H, define_AT, define_U, define_W, gamma1_factor,
    gamma1_report, h_set, higher_rank_width, k_alpha_product, make_tau,
    mult_formula_P, sl2_formula_report, theta_report, theta_sl2, theta_decode,
    u_set, v_set, w_correction,
)
from chevalley.chevgroup import classical_rep
from chevalley.rings import GF, ProductRing

F7 = GF(7)


@pytest.fixture(scope="module")
def g7():
    return SL2Group(F7)


@pytest.fixture(scope="module")
def g7x11():
    return SL2Group(ProductRing([GF(7), GF(11)]))


def test_small_characteristics_rejected():
    for q in (2, 3, 4, 5):
        with pytest.raises(ValueError):
            SL2Group(GF(q))
    with pytest.raises(ValueError):
        SL2Group(ProductRing([GF(7), GF(5)]))


def test_nonfield_rejected():
    from chevalley.rings import Zmod
    with pytest.raises(ValueError):
        SL2Group(Zmod(49))


def test_orders_per_mode():
    for mode, order in (("SL2", 336), ("SL2modZ", 168), ("PSL2", 168)):
        assert SL2Group(F7, mode=mode).order == order
    pr = ProductRing([GF(7), GF(11)])
    for mode, order in (("SL2", 443520), ("SL2modZ", 221760), ("PSL2", 110880)):
        assert SL2Group(pr, mode=mode).order == order


def test_tau_has_order_above_two(g7):
    tau = make_tau(F7)
    assert F7.mul(tau, tau) != F7.one and F7.is_unit(tau)


def test_centralizer_of_h_tau_is_torus(g7):
    H = centralizer_H(g7)
    hs = h_set(g7)
    assert {m.tobytes() for m in H} == {m.tobytes() for m in hs}
    assert len(H) == 6


def test_u_v_h_sizes(g7):
    assert len(u_set(g7)) == 7 and len(v_set(g7)) == 7 and len(h_set(g7)) == 6


def test_define_U_complete_with_zero(g7):
    res = define_U(g7, S=(F7.zero,))
    assert res["complete"] and res["size"] == res["expected"] == 7


def test_define_U_incomplete_without_offsets(g7):
    res = define_U(g7, S=())
    assert not res["complete"] and len(res["missing"]) > 0


def test_mult_formula_P_all_pairs(g7):
    for a in range(7):
        for b in range(7):
            y3 = mult_formula_P(g7, g7.u(F7.dtype(a)), g7.u(F7.dtype(b)))
            assert (g7.canon(y3) == g7.canon(g7.u(F7.mul(F7.dtype(a), F7.dtype(b))))).all()


def test_define_AT(g7):
    res = define_AT(g7, (F7.zero, F7.one))
    assert res["ok"] and res["codes"] == [0, 1]


def test_define_W(g7):
    res = define_W(g7)
    assert res["ok"] and res["size"] == 2


def test_gamma1_factorization(g7):
    g = np.array([[2, 1], [3, 2]], dtype=F7.dtype)  # det = 1
    v, h, u = gamma1_factor(g7, g)
    from chevalley import gfmat
    prod = gfmat.mat_mul(F7, gfmat.mat_mul(F7, v, h), u)
    assert (prod == g).all()
    assert v[0, 1] == 0 and u[1, 0] == 0 and h[0, 1] == 0 and h[1, 0] == 0


def test_gamma1_rejects_non_sl2(g7):
    bad = np.array([[2, 1], [3, 5]], dtype=F7.dtype)  # det = 7 = 0 in F7
    with pytest.raises(ValueError):
        gamma1_factor(g7, bad)


def test_gamma1_needs_unit_corner(g7):
    with pytest.raises(ValueError):
        gamma1_factor(g7, g7.w)


def test_w_correction_restores_unit_corner(g7):
    x = w_correction(g7, g7.w)
    gx = g7.mul(g7.w, x)
    assert F7.is_unit(gx[0, 0])


def test_gamma1_report(g7):
    res = gamma1_report(g7)
    # unit top-left corner: 6 choices of a, free b and c, d determined
    assert res["ok"] and res["size"] == 6 * 7 * 7


def test_theta_is_isomorphism(g7):
    res = theta_report(g7, seed=0)
    assert res["ok"] and res["round_trip"] and res["multiplicative"]


def test_theta_decode_round_trip_samples(g7):
    rng = np.random.default_rng(2)
    for i in rng.integers(g7.order, size=25):
        g = g7.elements[int(i)]
        assert (g7.canon(theta_decode(g7, theta_sl2(g7, g))) == g7.canon(g)).all()


def test_k_alpha_covers_sl2_f7(g7):
    res = k_alpha_product(g7)
    assert res["covered"] and res["w_reached"] and res["h_reached"]


def test_formula_report_f7():
    rpt = sl2_formula_report(F7)
    assert all(v["match"] for v in rpt.values())


def test_formula_report_product_h_w(g7x11):
    rpt = sl2_formula_report(g7x11.ring, sets=("H", "W"))
    assert all(v["match"] for v in rpt.values())


def test_quotient_modes_canonical(g7):
    gm = SL2Group(F7, mode="PSL2")
    minus = gm.ring.neg_t[gm.elements[5]]
    assert (gm.canon(minus) == gm.elements[5]).all()


def test_higher_rank_width_sl3_f3():
    res = higher_rank_width(classical_rep("A", 2), GF(3))
    assert res["order"] == 5616 and res["N"] == 11
