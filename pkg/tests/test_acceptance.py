"""Acceptance gate: ten end-to-end checks, one summary line each.

Each test prints a single pass/fail line before asserting, so the verdict
survives in the log even when an assertion trips.  The tenth check is
informational only: it reports the open characteristic-2 symplectic case
without gating on it.
"""

import numpy as np
import pytest

from conftest import get_group, get_rep

from chevalley import adelic
from chevalley.chevgroup import adjoint_rep, classical_rep, verify_bruhat
from chevalley.cli import _commutator_sweep
from chevalley.definability import (
    RingInGroup, ThetaMap, check_ring_axioms, map_c, map_m, verify_dc_formula,
)
from chevalley.rings import GF, ProductRing, Zmod, decompose_square_diff, hypothesis_profile
from chevalley.rootsys import build_root_system
from chevalley.witnesses import (
    classical_witness_set, expected_descriptor, matrix_witness_check,
    torus_witness, verify_containment, verify_dc, verify_dc_exceptional_sp4,
)


def _verdict(num, label, ok):
    status = "PASS" if ok else ("EXPLORATORY" if ok is None else "FAIL")
    print(f"\n[acceptance {num:2d}] {status}: {label}")
    if ok is not None:
        assert ok, label


def test_01_commutator_oracle():
    reps = [classical_rep("A", 2), classical_rep("C", 2), classical_rep("C", 3),
            classical_rep("B", 3), adjoint_rep("G", 2)]
    total = mismatches = 0
    for rep in reps:
        for q in (2, 3, 4, 5, 7):
            checked, mism = _commutator_sweep(rep, GF(q))
            total += checked
            mismatches += mism
    _verdict(1, f"commutator word vs matrix commutator, {total} checks, "
                f"{mismatches} mismatches", mismatches == 0)


def test_02_double_centralizer_main_branch():
    ok = True
    for q, uz in ((2, 2), (3, 3), (4, 12), (5, 5)):
        rpt = verify_dc(get_group("classical", "A", 2, q), 0)
        ok &= rpt.verdict and not rpt.exceptional and rpt.sizes["UZ"] == uz
    Eg2 = get_group("adjoint", "G", 2, 2)
    ok &= Eg2.order == 12096 and verify_dc(Eg2, 0).verdict
    for q in (3, 4):
        E = get_group("classical", "C", 2, q)
        sys = E.rep.sys
        long_root = next(a for a in range(len(sys.roots)) if sys.is_long(a))
        short = next(a for a in range(len(sys.roots)) if not sys.is_long(a))
        ok &= verify_dc(E, long_root).verdict
        if q == 4:
            rpt = verify_dc(E, short)
            ok &= rpt.verdict and not rpt.exceptional
    _verdict(2, "C(C(u)) = Z(C(u)) = UZ on SL3(F2..F5), G2adj(F2), "
                "Sp4(F4) both roots, Sp4(F3) long root", ok)


def test_03_exceptional_symplectic_branch():
    E3 = get_group("classical", "C", 2, 3)
    res3 = verify_dc_exceptional_sp4(GF(3), group=E3)
    sys = E3.rep.sys
    short = next(a for a in range(len(sys.roots)) if not sys.is_long(a))
    dc2 = verify_dc(E3, short)
    res5 = verify_dc_exceptional_sp4(GF(5))
    ok = (res3["ok"] and res3["ZC_size"] == 18
          and dc2.exceptional and dc2.dc2_holds
          and res5["ok"] and res5["ZC_size"] == 10)
    _verdict(3, f"Sp4(F3) Z(C(v)) has {res3['ZC_size']} elements with the dc2 "
                f"inclusion; Sp4(F5) has {res5['ZC_size']}", ok)


def test_04_torus_witness_sweep():
    absent = []
    total = 0
    for t, r in (("F", 4), ("E", 6), ("E", 7), ("E", 8)):
        sys = build_root_system(t, r)
        n = len(sys.roots)
        for q in (3, 5, 7):
            ring = GF(q)
            for a in range(n):
                for b in range(n):
                    if b == a or b == sys.neg(a):
                        continue
                    total += 1
                    if torus_witness(sys, a, b, ring) is None:
                        absent.append((t, r, q, a, b))
    sys_f4 = build_root_system("F", 4)
    exceptional = all(
        (t, r, q) == ("F", 4, 3) and sys_f4.is_long(a) and sys_f4.is_long(b)
        and sys_f4.cartan_integer(a, b) == 0
        for t, r, q, a, b in absent)
    # cross-oracle on the 52-dim matrices
    rep = get_rep("adjoint", "F", 4)
    ring = GF(5)
    rng = np.random.default_rng(0)
    n = len(sys_f4.roots)
    agree = True
    for _ in range(40):
        a, b = int(rng.integers(n)), int(rng.integers(n))
        if b == a or b == sys_f4.neg(a):
            continue
        word = torus_witness(sys_f4, a, b, ring)
        if word is not None:
            agree &= matrix_witness_check(rep, ring, word, a, b)
    ok = exceptional and len(absent) > 0 and agree
    _verdict(4, f"torus witnesses on F4/E6/E7/E8 x F3/F5/F7: {total} pairs, "
                f"{len(absent)} absent, all in the known F4/F3 configuration; "
                f"matrix oracle agrees", ok)


def test_05_classical_witness_sets():
    jobs = [("A", 2, "sl", 3), ("A", 2, "sl", 5), ("A", 3, "sl", 3), ("A", 3, "sl", 5),
            ("C", 2, "X1", 3), ("C", 3, "X1", 3), ("C", 2, "X2", 3), ("C", 3, "X2", 3),
            ("D", 4, "X3", 3), ("B", 3, "X4", 3), ("B", 3, "X5", 3)]
    ok = True
    dims = {}
    for t, r, which, q in jobs:
        ring = GF(q)
        ws = classical_witness_set(t, r, which, ring)
        res = verify_containment(classical_rep(t, r), ring, ws,
                                 expected=expected_descriptor(ws))
        ok &= res["ok"]
        dims[which] = max(dims.get(which, 0), res["commutant_dim"])
        # the X2 bound is the three-subgroup product, a 5-dimensional
        # commutant; every other witness set pins the commutant to <= 4
        ok &= res["commutant_dim"] <= (5 if which == "X2" else 4)
    _verdict(5, f"witness-set containments hold; commutant dims {dims}", ok)


def test_06_bruhat_uniqueness():
    ok = True
    for form, t, r, q, order in (("classical", "A", 2, 2, 168),
                                 ("classical", "A", 2, 3, 5616),
                                 ("classical", "C", 2, 2, 720)):
        rpt = verify_bruhat(get_group(form, t, r, q))
        ok &= rpt["ok"] and rpt["order"] == order
    _verdict(6, "Bruhat tuples biject with SL3(F2), SL3(F3), Sp4(F2)", ok)


def test_07_definability():
    ok = True
    for form, t, r, q in (("classical", "A", 2, 2), ("classical", "A", 2, 4),
                          ("classical", "C", 2, 3)):
        E = get_group(form, t, r, q)
        sys = E.rep.sys
        roots = {0}
        if t == "C":
            roots.add(next(a for a in range(len(sys.roots))
                           if sys.is_long(a) != sys.is_long(0)))
        for alpha in roots:
            ok &= verify_dc_formula(E, alpha)["ok"]
    for t, r, q in (("A", 2, 5), ("C", 2, 3)):
        rep = classical_rep(t, r)
        ring = GF(q)
        n = len(rep.sys.roots)
        for a in range(n):
            for b in range(n):
                for code in range(ring.size):
                    g = rep.x(ring, a, ring.dtype(code))
                    ok &= bool((map_c(rep, ring, a, b, g)
                                == rep.x(ring, b, ring.dtype(code))).all())
        rig = RingInGroup(rep, ring)
        ok &= check_ring_axioms(rig)
        a0 = rig.a0
        for r1 in range(ring.size):
            for r2 in range(ring.size):
                got = map_m(rep, ring, a0, a0, a0,
                            rep.x(ring, a0, ring.dtype(r1)),
                            rep.x(ring, a0, ring.dtype(r2)))
                ok &= bool((got == rep.x(ring, a0,
                                         ring.mul(ring.dtype(r1), ring.dtype(r2)))).all())
    E2 = get_group("classical", "A", 2, 2)
    tm = ThetaMap(E2)
    ok &= all(tm.round_trip(i) for i in range(E2.order))
    E3 = get_group("classical", "A", 2, 3)
    tm3 = ThetaMap(E3)
    sample = np.random.default_rng(0).choice(E3.order, size=1000, replace=False)
    ok &= all(tm3.round_trip(int(i)) for i in sample)
    _verdict(7, "definable UZ double oracle, transport maps, ring axioms "
                "in the group, entrywise theta round trips", ok)


def test_08_adelic():
    ok = True
    for ring in (GF(7), ProductRing([GF(7), GF(11)])):
        rpt = adelic.adelic_report(ring, seed=0)
        ok &= rpt["ok"]
    G = adelic.SL2Group(GF(7))
    ok &= adelic.k_alpha_product(G)["covered"]
    _verdict(8, "SL2 over F7 and F7xF11: H, U, A_T, W, Gamma1, P, theta in "
                "all three modes, 8-factor covering", ok)


def test_09_negative_controls():
    ok = not hypothesis_profile(Zmod(4)).is_domain
    ok &= hypothesis_profile(GF(3)).units_eq_pm1
    E3 = get_group("classical", "C", 2, 3)
    sys = E3.rep.sys
    short = next(a for a in range(len(sys.roots)) if not sys.is_long(a))
    ok &= not verify_dc(E3, short).dc1_holds
    f5 = GF(5)
    failing = []
    for a in range(5):
        try:
            decompose_square_diff(f5, f5.dtype(a), [f5.zero])
        except ValueError:
            failing.append(a)
    ok &= failing == [1, 4]
    _verdict(9, "Z/4 flagged, F3 units are {1,-1}, Sp4(F3) short root is not "
                "dc1, F5 square-difference gap is exactly {1,4}", ok)


def test_10_open_characteristic_two_case():
    res = verify_dc_exceptional_sp4(GF(2))
    _verdict(10, f"Sp4(F2) short-root Z(C(v)) reported: size {res['ZC_size']}, "
                 f"expected {res['expected']}", res["ok"])
    assert res["ZC_size"] >= 1
