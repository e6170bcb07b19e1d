import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chevalley import gfmat
from chevalley.chevgroup import (
    adjoint_rep, center_set, classical_rep, commutator_word, torus_set,
    verify_bruhat,
)
from chevalley.rings import GF
from chevalley.rootsys import commutator_template, structure_constants

ORDERS = {
    ("A", 2, 2): 168,
    ("A", 2, 3): 5616,
    ("C", 2, 2): 720,
    ("C", 2, 3): 51840,
}


@pytest.mark.parametrize("t,r,q", sorted(ORDERS))
def test_group_orders(group_of, t, r, q):
    E = group_of("classical", t, r, q)
    assert E.order == ORDERS[(t, r, q)]


def test_one_parameter_subgroup(rep_of):
    rep = rep_of("classical", "C", 2)
    ring = GF(5)
    for a in range(len(rep.sys.roots)):
        for r in range(5):
            for s in range(5):
                lhs = gfmat.mat_mul(ring, rep.x(ring, a, ring.dtype(r)),
                                    rep.x(ring, a, ring.dtype(s)))
                assert (lhs == rep.x(ring, a, ring.add(ring.dtype(r), ring.dtype(s)))).all()


def test_torus_action_character(rep_of):
    # x_b(r) conjugated by h_g(t) is x_b(t^-A(g,b) r)
    rep = rep_of("classical", "A", 2)
    ring = GF(7)
    sys = rep.sys
    for g in range(len(sys.roots)):
        for b in range(len(sys.roots)):
            for t in ring.units():
                h = rep.h(ring, g, ring.dtype(t))
                hinv = rep.h(ring, g, ring.inv(ring.dtype(t)))
                x = rep.x(ring, b, ring.one)
                conj = gfmat.mat_mul_many(ring, [hinv, x, h])
                scaled = rep.x(ring, b, ring.pow(ring.dtype(t), -sys.cartan_integer(g, b)))
                assert (conj == scaled).all()


@settings(deadline=None, max_examples=60)
@given(a=st.integers(0, 11), b=st.integers(0, 11), r=st.integers(0, 2), s=st.integers(0, 2))
def test_commutator_word_matches_matrices_g2(a, b, r, s):
    rep = adjoint_rep("G", 2)
    sys = rep.sys
    if b == a or b == sys.neg(a):
        return
    ring = GF(3)
    sc = structure_constants("G", 2)
    r, s = ring.dtype(r), ring.dtype(s)
    direct = gfmat.mat_mul_many(ring, [
        rep.x(ring, a, ring.neg(r)), rep.x(ring, b, ring.neg(s)),
        rep.x(ring, a, r), rep.x(ring, b, s)])
    word = rep.identity(ring)
    for g, val in commutator_word(sc, ring, a, b, r, s):
        word = gfmat.mat_mul(ring, word, rep.x(ring, g, val))
    assert (direct == word).all()


def test_commutator_template_empty_for_orthogonal_a1xa1():
    sc = structure_constants("D", 4)
    sys = sc.sys
    pairs = [(a, b) for a in range(sys.n_pos) for b in range(sys.n_pos)
             if a != b and sys.sum_root(a, b) is None and sys.cartan_integer(a, b) == 0]
    a, b = pairs[0]
    assert commutator_template(sc, a, b) == []


def test_membership_forms(group_of):
    E = group_of("classical", "C", 2, 3)
    ring, rep = E.ring, E.rep
    mask = rep.membership_mask(ring, E.elements)
    assert mask.all()
    # a random GL matrix that is not symplectic must be rejected
    bad = gfmat.identity(ring, rep.dim).copy()
    bad[0, 0] = ring.dtype(2)
    bad[1, 1] = ring.dtype(2)
    assert not rep.membership_mask(ring, bad[None])[0]


def test_inverses_and_words(group_of):
    E = group_of("classical", "A", 2, 2)
    ident = E.rep.identity(E.ring)
    for i in range(0, E.order, 17):
        m = E.elements[i]
        assert (gfmat.mat_mul(E.ring, m, E.elements[E.inv_idx[i]]) == ident).all()
        word = E.word(i)
        prod = ident
        for gi in word:
            a, code = E.gens_meta[gi]
            prod = gfmat.mat_mul(E.ring, prod, E.rep.x(E.ring, a, code))
        assert E.idx(prod) == i


def test_torus_and_center_sizes(group_of):
    E4 = group_of("classical", "A", 2, 4)
    assert len(torus_set(E4.rep, E4.ring)) == 9  # (q-1)^rank
    assert len(center_set(E4.rep, E4.ring, group=E4)) == 3  # cube roots of 1
    E2 = group_of("classical", "A", 2, 2)
    assert len(center_set(E2.rep, E2.ring, group=E2)) == 1


def test_bruhat_uniqueness_sl3_f2(group_of):
    rpt = verify_bruhat(group_of("classical", "A", 2, 2))
    assert rpt["ok"] and rpt["order"] == 168 and rpt["tuple_count"] == 168


def test_adjoint_g2_order(group_of):
    assert group_of("adjoint", "G", 2, 2).order == 12096
