"""SL2 over finite products of finite fields.

The groups SL2(A), SL2(A)/<-1> and PSL2(A) with A a product of odd finite
fields, the generators u, v, h, w, the definable subsets H, U, V, W, A_T,
Gamma_1, the group-word multiplication on U, the VHU factorization with
W-correction, the entrywise theta map, and the 8-factor K_alpha / elementary
width decompositions.

Quotient modes are realized by canonical coset representatives (the
lexicographically least matrix in the coset), so set comparisons are exact.
First-order definitions are double-checked against the direct constructions
with the formula evaluator on the plain SL2 mode, where matrix products of
representatives are the honest group operation.
"""

from __future__ import annotations

import numpy as np

from . import gfmat
from .rings import FiniteRing, ProductRing, decompose_square_diff
from .definability import And, Eq, Exists, Inv, Mul, One, Or, Param, Var, define_set

ADELIC_CAP = 2_000_000


def _field_factors(ring: FiniteRing):
    factors = ring.factors if isinstance(ring, ProductRing) else [ring]
    for f in factors:
        if not getattr(f, "is_field", False):
            raise ValueError(f"adelic ring needs field components, got {f.name}")
        if f.char in (2, 3, 5):
            raise ValueError(f"component {f.name} has characteristic in {{2,3,5}}")
    return factors


def make_tau(ring: FiniteRing):
    """tau with component 2 at odd components, 3 at even ones; always a unit
    with tau^2 != 1 so that C(h(tau)) is exactly the diagonal."""
    factors = _field_factors(ring)
    comps = []
    for f in factors:
        for m in (2, 3) if f.char != 2 else (3,):
            c = f.from_int(m)
            if c in f.units() and f.mul(c, c) != f.one:
                comps.append(c)
                break
        else:
            raise ValueError(f"no usable tau component in {f.name}")
    if isinstance(ring, ProductRing):
        return ring.encode(comps)
    return comps[0]


def _sl2_field(f: FiniteRing) -> np.ndarray:
    """All 2x2 determinant-1 matrices over the field f, by grid scan."""
    n = f.size
    a, b, c, d = np.indices((n, n, n, n), dtype=np.int64)
    det = f.add_t[f.mul_t[a, d], f.neg_t[f.mul_t[b, c]]]
    a, b, c, d = (x[det == f.one] for x in (a, b, c, d))
    return np.stack([a, b, c, d], axis=-1).reshape(-1, 2, 2)


class SL2Group:
    """SL2(A) or one of its central quotients, fully enumerated.

    Duck-types the slice of EnumeratedGroup that the formula evaluator
    needs: ring, rep.dim, elements, order, idx(), inv_idx.
    """

    MODES = ("SL2", "SL2modZ", "PSL2")

    def __init__(self, ring: FiniteRing, mode: str = "SL2", cap: int = ADELIC_CAP):
        if mode not in self.MODES:
            raise ValueError(f"mode must be one of {self.MODES}, got {mode!r}")
        self.ring = ring
        self.mode = mode
        factors = _field_factors(ring)
        comps = [_sl2_field(f) for f in factors]
        full = 1
        for c in comps:
            full *= len(c)
        if full > cap:
            raise ValueError(f"|SL2({ring.name})| = {full} exceeds cap {cap}")

        strides = ring.strides if isinstance(ring, ProductRing) else [1]
        mats = comps[0] * strides[0]
        for comp, st in zip(comps[1:], strides[1:]):
            mats = (mats[:, None] + st * comp[None, :]).reshape(-1, 2, 2)
        mats = mats.astype(ring.dtype)

        self._zs = self._central_scalars()
        mats = self.canon(mats)
        keys = self._pack(mats)
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        keep = np.ones(len(keys), dtype=bool)
        keep[1:] = keys[1:] != keys[:-1]
        self.elements = np.ascontiguousarray(mats[order][keep])
        self.order = len(self.elements)
        self._lookup = {int(k): i for i, k in enumerate(keys[keep])}
        inv = self._adjugate(self.elements)
        self.inv_idx = np.fromiter(
            (self._lookup[int(k)] for k in self._pack(self.canon(inv))),
            dtype=np.int64, count=self.order)

        class _Rep:
            dim = 2
        self.rep = _Rep()

    # -- coset representatives ------------------------------------------

    def _central_scalars(self):
        ring = self.ring
        if self.mode == "SL2":
            return [ring.one]
        if self.mode == "SL2modZ":
            return [ring.one, ring.neg(ring.one)]
        return [z for z in ring.units() if ring.mul(z, z) == ring.one]

    def _pack(self, mats: np.ndarray) -> np.ndarray:
        flat = mats.reshape(-1, 4).astype(np.int64)
        s = np.int64(self.ring.size)
        return ((flat[:, 0] * s + flat[:, 1]) * s + flat[:, 2]) * s + flat[:, 3]

    def canon(self, mats: np.ndarray) -> np.ndarray:
        """Lex-least matrix in the coset mats * Z."""
        mats = np.asarray(mats, dtype=self.ring.dtype)
        if len(self._zs) == 1:
            return mats
        variants = np.stack([self.ring.mul_t[mats, z] for z in self._zs])
        keys = self._pack(variants).reshape(len(self._zs), -1)
        pick = keys.argmin(axis=0)
        flat = variants.reshape(len(self._zs), -1, 2, 2)
        return flat[pick, np.arange(flat.shape[1])].reshape(mats.shape)

    def _adjugate(self, mats: np.ndarray) -> np.ndarray:
        # inverse for det 1: [[d, -b], [-c, a]]
        neg = self.ring.neg_t
        out = np.empty_like(mats)
        out[..., 0, 0] = mats[..., 1, 1]
        out[..., 0, 1] = neg[mats[..., 0, 1]]
        out[..., 1, 0] = neg[mats[..., 1, 0]]
        out[..., 1, 1] = mats[..., 0, 0]
        return out

    def idx(self, mat: np.ndarray) -> int:
        key = int(self._pack(self.canon(mat))[0])
        try:
            return self._lookup[key]
        except KeyError:
            raise ValueError("matrix not in group") from None

    def mul(self, a, b) -> np.ndarray:
        return self.canon(gfmat.mat_mul(self.ring, a, b))

    def inv(self, m) -> np.ndarray:
        return self.elements[self.inv_idx[self.idx(m)]]

    def conj(self, g, x) -> np.ndarray:
        # g^x = x^-1 g x
        return self.mul(self.mul(self.inv(x), g), x)

    # -- generators -----------------------------------------------------

    def u(self, lam) -> np.ndarray:
        ring = self.ring
        m = np.array([[ring.one, lam], [ring.zero, ring.one]], dtype=ring.dtype)
        return self.canon(m)

    def v(self, lam) -> np.ndarray:
        ring = self.ring
        m = np.array([[ring.one, ring.zero], [ring.neg(lam), ring.one]],
                     dtype=ring.dtype)
        return self.canon(m)

    def h(self, lam) -> np.ndarray:
        ring = self.ring
        m = np.array([[ring.inv(lam), ring.zero], [ring.zero, lam]],
                     dtype=ring.dtype)
        return self.canon(m)

    @property
    def w(self) -> np.ndarray:
        one = self.ring.one
        return self.mul(self.mul(self.u(one), self.v(one)), self.u(one))

    def u_decode(self, m: np.ndarray):
        """lam with m = u(lam); representatives of u-cosets keep 1 top left."""
        if not (m[0, 0] == self.ring.one and m[1, 0] == self.ring.zero
                and m[1, 1] == self.ring.one):
            raise ValueError("not a canonical unipotent representative")
        return m[0, 1]


# ---------------------------------------------------------------------------
# component plumbing


def _components(ring: FiniteRing):
    """(factors, decode, encode) treating a plain field as a 1-factor product."""
    if isinstance(ring, ProductRing):
        return ring.factors, ring.decode, ring.encode
    return [ring], (lambda c: (c,)), (lambda comps: comps[0])


def _unit_table(ring: FiniteRing) -> np.ndarray:
    tab = np.zeros(ring.size, dtype=bool)
    tab[np.array(list(ring.units()), dtype=np.int64)] = True
    return tab


def _keyset(G: SL2Group, mats: np.ndarray) -> set:
    if len(mats) == 0:
        return set()
    return set(int(k) for k in G._pack(G.canon(mats)))


def _uniq(G: SL2Group, mats: np.ndarray) -> np.ndarray:
    mats = G.canon(mats.reshape(-1, 2, 2))
    keys = G._pack(mats)
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    keep = np.ones(len(keys), dtype=bool)
    keep[1:] = keys[1:] != keys[:-1]
    return np.ascontiguousarray(mats[order][keep])


# ---------------------------------------------------------------------------
# the subsets of section interest, built directly


def u_set(G: SL2Group) -> np.ndarray:
    ring = G.ring
    mats = np.zeros((ring.size, 2, 2), dtype=ring.dtype)
    mats[:, 0, 0] = mats[:, 1, 1] = ring.one
    mats[:, 0, 1] = np.arange(ring.size)
    return _uniq(G, mats)


def v_set(G: SL2Group) -> np.ndarray:
    ring = G.ring
    mats = np.zeros((ring.size, 2, 2), dtype=ring.dtype)
    mats[:, 0, 0] = mats[:, 1, 1] = ring.one
    mats[:, 1, 0] = ring.neg_t[np.arange(ring.size)]
    return _uniq(G, mats)


def h_set(G: SL2Group) -> np.ndarray:
    ring = G.ring
    units = np.array(list(ring.units()), dtype=ring.dtype)
    mats = np.zeros((len(units), 2, 2), dtype=ring.dtype)
    mats[:, 0, 0] = ring.inv_t[units]
    mats[:, 1, 1] = units
    return _uniq(G, mats)


def centralizer_H(G: SL2Group, tau=None) -> np.ndarray:
    """C(h(tau)), scanned; must equal h(A*) exactly."""
    if tau is None:
        tau = make_tau(G.ring)
    ht = G.h(tau)
    left = G.canon(gfmat.mat_mul(G.ring, G.elements, ht))
    right = G.canon(gfmat.mat_mul(G.ring, ht, G.elements))
    cent = G.elements[(left == right).all(axis=(-1, -2))]
    if _keyset(G, cent) != _keyset(G, h_set(G)):
        raise RuntimeError(f"C(h(tau)) != h(A*) over {G.ring.name} [{G.mode}]")
    return cent


def define_U(G: SL2Group, S=(0,)) -> dict:
    """u^x u^{-y} u(s) over x, y in H and s in S; reports coverage of u(A)."""
    ring = G.ring
    S = [ring.from_int(s) if isinstance(s, int) else s for s in S]
    H = h_set(G)
    got = set()
    u1 = G.u(ring.one)
    Hinv = G._adjugate(H)
    ux = gfmat.mat_mul_many(ring, [Hinv, u1[None], H])          # u^x per x
    uy = gfmat.mat_mul_many(ring, [Hinv, G.inv(u1)[None], H])   # u^-y per y
    for s in S:
        prods = gfmat.mat_mul(ring, ux[:, None], uy[None, :])
        prods = gfmat.mat_mul(ring, prods, G.u(s))
        got |= _keyset(G, prods)
    ukeys = {}
    for lam in range(ring.size):
        ukeys[int(G._pack(G.u(ring.dtype(lam)))[0])] = lam
    missing = sorted(ukeys[k] for k in set(ukeys) - got)
    stray = got - set(ukeys)
    if stray:
        raise RuntimeError("define_U produced elements outside u(A)")
    mats = np.array([G.u(ring.dtype(ukeys[k])) for k in sorted(got)],
                    dtype=ring.dtype) if got else np.zeros((0, 2, 2), ring.dtype)
    return {"elements": mats, "size": len(got), "expected": ring.size,
            "complete": not missing, "missing": missing}


_SQD_CACHE: dict = {}


def _decompose(ring: FiniteRing, a, S) -> tuple:
    key = (ring.name, tuple(int(s) for s in S))
    table = _SQD_CACHE.setdefault(key, {})
    got = table.get(int(a))
    if got is None:
        got = decompose_square_diff(ring, a, S)
        table[int(a)] = got
    return got


def mult_formula_P(G: SL2Group, y1: np.ndarray, y2: np.ndarray, S=None) -> np.ndarray:
    """y1 * y2 in the ring structure on U, computed by the defining group
    word: y3 = y1^x y1^{-y} u(s)^z u(s)^{-r} u(st)."""
    ring = G.ring
    if S is None:
        S = [ring.zero]
    beta = G.u_decode(G.canon(y1))
    alpha = G.u_decode(G.canon(y2))
    xi, eta, s = _decompose(ring, alpha, S)
    zeta, rho, t = _decompose(ring, beta, S)
    x, y = G.h(xi), G.h(eta)
    z, r = G.h(zeta), G.h(rho)
    us = G.u(s)
    out = G.mul(G.conj(y1, x), G.conj(G.inv(y1), y))
    out = G.mul(out, G.conj(us, z))
    out = G.mul(out, G.conj(G.inv(us), r))
    return G.mul(out, G.u(ring.mul(s, t)))


def at_codes(ring: FiniteRing, T) -> np.ndarray:
    """Ring codes whose every component is the image of some t in T."""
    factors, decode, _ = _components(ring)
    allowed = [set(f.from_int(t) for t in T) for f in factors]
    codes = []
    for c in range(ring.size):
        if all(comp in alw for comp, alw in zip(decode(c), allowed)):
            codes.append(c)
    return np.array(codes, dtype=ring.dtype)


def define_AT(G: SL2Group, T) -> dict:
    """A_T three ways: componentwise, as zeros of f(X) = prod (X - t) in the
    ring, and as zeros of f computed inside U by the group-word product."""
    ring = G.ring
    direct = set(int(c) for c in at_codes(ring, T))
    tcodes = [ring.from_int(t) for t in T]
    poly = set()
    for c in range(ring.size):
        acc = ring.one
        for t in tcodes:
            acc = ring.mul(acc, ring.sub(c, t))
        if acc == ring.zero:
            poly.add(c)
    grp = set()
    one_u = G.u(ring.zero)
    for c in range(ring.size):
        cc = ring.dtype(c)
        acc = G.u(ring.sub(cc, tcodes[0]))
        for t in tcodes[1:]:
            acc = mult_formula_P(G, acc, G.u(ring.sub(cc, t)))
        if (acc == one_u).all():
            grp.add(c)
    ok = direct == poly == grp
    mats = np.array([G.u(ring.dtype(c)) for c in sorted(direct)], dtype=ring.dtype)
    return {"codes": sorted(direct), "elements": mats, "ok": ok,
            "poly_agrees": direct == poly, "group_agrees": direct == grp}


def define_W(G: SL2Group) -> dict:
    """W = componentwise {1, w}; cross-checked against the y z^w y scan."""
    ring = G.ring
    factors, _, _ = _components(ring)
    strides = ring.strides if isinstance(ring, ProductRing) else [1]
    comps = []
    for f in factors:
        eye = np.array([[f.one, f.zero], [f.zero, f.one]], dtype=np.int64)
        wf = np.array([[f.zero, f.one], [f.neg(f.one), f.zero]], dtype=np.int64)
        comps.append(np.stack([eye, wf]))
    mats = comps[0] * strides[0]
    for comp, st in zip(comps[1:], strides[1:]):
        mats = (mats[:, None] + st * comp[None, :]).reshape(-1, 2, 2)
    direct = _uniq(G, mats.astype(ring.dtype))
    # scan route: x = y z^w y with y, z in u(A_{0,1}) and x^4 = 1
    D = [G.u(c) for c in at_codes(ring, (0, 1))]
    w = G.w
    eye = G.canon(gfmat.identity(ring, 2))
    found = []
    for y in D:
        for z in D:
            x = G.mul(G.mul(y, G.conj(z, w)), y)
            x2 = G.mul(x, x)
            if (G.mul(x2, x2) == eye).all():
                found.append(x)
    scanned = _uniq(G, np.array(found, dtype=ring.dtype))
    ok = _keyset(G, direct) == _keyset(G, scanned)
    return {"elements": direct, "size": len(direct),
            "expected": 2 ** len(factors), "ok": ok and len(direct) == 2 ** len(factors)}


# ---------------------------------------------------------------------------
# the VHU factorization and the W-correction


def gamma1_factor(G: SL2Group, g: np.ndarray):
    """(v~, h~, u~) with g = v(-a^-1 c) h(a^-1) u(a^-1 b); needs g11 a unit."""
    ring = G.ring
    g = G.canon(np.asarray(g, dtype=ring.dtype))
    det = ring.sub(ring.mul(g[0, 0], g[1, 1]), ring.mul(g[0, 1], g[1, 0]))
    if det != ring.one:
        raise ValueError("matrix has determinant != 1")
    a = g[0, 0]
    if not _unit_table(ring)[a]:
        raise ValueError(f"g11 = {ring.elem_str(a)} is not a unit: g outside Gamma_1")
    ainv = ring.dtype(ring.inv(a))
    vt = G.v(ring.neg(ring.mul(ainv, g[1, 0])))
    ht = G.h(ainv)
    ut = G.u(ring.mul(ainv, g[0, 1]))
    back = G.mul(G.mul(vt, ht), ut)
    assert (back == g).all(), "VHU factorization failed to reconstruct g"
    return vt, ht, ut


def w_correction(G: SL2Group, g: np.ndarray) -> np.ndarray:
    """x in W with (gx)11 a unit, chosen componentwise."""
    ring = G.ring
    g = G.canon(np.asarray(g, dtype=ring.dtype))
    factors, decode, encode = _components(ring)
    acomps, bcomps = decode(g[0, 0]), decode(g[0, 1])
    out = np.zeros((2, 2), dtype=np.int64)
    strides = ring.strides if isinstance(ring, ProductRing) else [1]
    for f, st, ac, bc in zip(factors, strides, acomps, bcomps):
        if ac != f.zero:
            xf = np.array([[f.one, f.zero], [f.zero, f.one]], dtype=np.int64)
        elif bc != f.zero:
            xf = np.array([[f.zero, f.one], [f.neg(f.one), f.zero]], dtype=np.int64)
        else:
            raise ValueError("first row vanishes in a component: g not invertible")
        out += st * xf
    x = G.canon(out.astype(ring.dtype))
    gx = G.mul(g, x)
    assert _unit_table(ring)[gx[0, 0]], "correction failed"
    return x


def gamma1_report(G: SL2Group) -> dict:
    """Gamma_1 = VHU by double inclusion, vectorized over the whole group."""
    ring = G.ring
    units = _unit_table(ring)
    mask = units[G.elements[:, 0, 0]]
    g1 = G.elements[mask]
    a = g1[:, 0, 0]
    ainv = ring.inv_t[a]
    vt = np.zeros_like(g1)
    vt[:, 0, 0] = vt[:, 1, 1] = ring.one
    vt[:, 1, 0] = ring.mul_t[ainv, g1[:, 1, 0]]
    ht = np.zeros_like(g1)
    ht[:, 0, 0] = a
    ht[:, 1, 1] = ainv
    ut = np.zeros_like(g1)
    ut[:, 0, 0] = ut[:, 1, 1] = ring.one
    ut[:, 0, 1] = ring.mul_t[ainv, g1[:, 0, 1]]
    back = G.canon(gfmat.mat_mul_many(ring, [vt, ht, ut]))
    recon = bool((back == g1).all())
    # VHU subset of Gamma_1: every product has unit top-left entry
    prods = gfmat.mat_mul(ring, gfmat.mat_mul(ring, v_set(G)[:, None], h_set(G)[None]),
                          G.canon(u_set(G))[:, None, None])
    vhu_units = bool(units[prods.reshape(-1, 2, 2)[:, 0, 0]].all())
    ok = recon and vhu_units
    return {"size": int(mask.sum()), "reconstructs": recon,
            "vhu_in_gamma1": vhu_units, "ok": ok}


# ---------------------------------------------------------------------------
# theta: g = (a,b;c,d) -> (u(a),u(b);u(c),u(d)), entries living in U


def _u_mat(G: SL2Group, entries) -> np.ndarray:
    out = np.empty((2, 2), dtype=object)
    for i in range(2):
        for j in range(2):
            out[i, j] = entries[i][j]
    return out


def _u_mat_mul(G: SL2Group, A, B):
    out = np.empty((2, 2), dtype=object)
    for i in range(2):
        for j in range(2):
            s = None
            for k in range(2):
                p = mult_formula_P(G, A[i, k], B[k, j])
                s = p if s is None else G.mul(s, p)
            out[i, j] = s
    return out


def _u_mat_inv(G: SL2Group, A):
    # adjugate; valid on theta images (entrywise determinant 1)
    return _u_mat(G, [[A[1, 1], G.inv(A[0, 1])], [G.inv(A[1, 0]), A[0, 0]]])


def _theta_u(G: SL2Group, g):
    u1, u0 = G.u(G.ring.one), G.u(G.ring.zero)
    return _u_mat(G, [[u1, G.canon(g)], [u0, u1]])


def _theta_v(G: SL2Group, g):
    u1, u0 = G.u(G.ring.one), G.u(G.ring.zero)
    gminusw = G.conj(G.inv(g), G.w)
    return _u_mat(G, [[u1, u0], [gminusw, u1]])


def _theta_h(G: SL2Group, g):
    ring = G.ring
    xi = g[1, 1]
    u0 = G.u(ring.zero)
    y4, y1 = G.u(xi), G.u(ring.dtype(ring.inv(xi)))
    # soundness of the defining clauses: y4 * y1 = u and w^-1 y4 w y1 w^-1 y4 = g
    assert (mult_formula_P(G, y4, y1) == G.u(ring.one)).all()
    w, winv = G.w, G.inv(G.w)
    back = G.mul(G.mul(G.mul(G.mul(winv, y4), w), y1), G.mul(winv, y4))
    assert (back == G.canon(g)).all()
    return _u_mat(G, [[y1, u0], [u0, y4]])


def _theta_w_elt(G: SL2Group, x):
    u1 = G.u(G.ring.one)
    ut = gamma1_factor(G, G.conj(u1, x))[2]
    return _u_mat(G, [[ut, G.mul(G.inv(ut), u1)], [G.mul(G.inv(u1), ut), ut]])


def theta_sl2(G: SL2Group, g: np.ndarray):
    """theta via a W-correction into Gamma_1 and the VHU factorization."""
    g = G.canon(np.asarray(g, dtype=G.ring.dtype))
    x = w_correction(G, g)
    vt, ht, ut = gamma1_factor(G, G.mul(g, x))
    M = _u_mat_mul(G, _u_mat_mul(G, _theta_v(G, vt), _theta_h(G, ht)), _theta_u(G, ut))
    return _u_mat_mul(G, M, _u_mat_inv(G, _theta_w_elt(G, x)))


def theta_decode(G: SL2Group, th) -> np.ndarray:
    out = np.empty((2, 2), dtype=G.ring.dtype)
    for i in range(2):
        for j in range(2):
            out[i, j] = G.u_decode(th[i, j])
    return G.canon(out)


def theta_report(G: SL2Group, sample: int = 500, pairs: int = 200, seed: int = 0) -> dict:
    """Round trips (exhaustive when small) and multiplicativity modulo the
    quotient's central equivalence."""
    rng = np.random.default_rng(seed)
    if G.order <= 2000:
        idxs = np.arange(G.order)
    else:
        idxs = rng.choice(G.order, size=sample, replace=False)
    rt = all((theta_decode(G, theta_sl2(G, G.elements[i])) == G.elements[i]).all()
             for i in idxs)
    mult = True
    for _ in range(pairs):
        i, j = int(rng.integers(G.order)), int(rng.integers(G.order))
        gi, gj = G.elements[i], G.elements[j]
        lhs = theta_decode(G, _u_mat_mul(G, theta_sl2(G, gi), theta_sl2(G, gj)))
        rhs = theta_decode(G, theta_sl2(G, G.mul(gi, gj)))
        if not (lhs == rhs).all():
            mult = False
            break
    return {"mode": G.mode, "round_trip": bool(rt), "checked": len(idxs),
            "multiplicative": mult, "pairs": pairs, "ok": bool(rt) and mult}


# ---------------------------------------------------------------------------
# bounded generation: K_alpha in 8 factors, elementary width for higher rank


def k_alpha_product(G: SL2Group, chunk: int = 1 << 18) -> dict:
    """The alternating 8-factor product V U V U V U V U, grown stagewise;
    covers the whole group."""
    keys = G._pack(G.elements)
    order = np.argsort(keys, kind="stable")
    skeys = keys[order]
    factors = [v_set(G), u_set(G)] * 4
    reached = None
    sizes = []
    for fac in factors:
        if reached is None:
            mask = np.zeros(G.order, dtype=bool)
            pos = order[np.searchsorted(skeys, G._pack(fac))]
            mask[pos] = True
        else:
            cur = G.elements[reached]
            mask = np.zeros(G.order, dtype=bool)
            for lo in range(0, len(cur), chunk):
                prods = G.canon(gfmat.mat_mul(G.ring, cur[lo:lo + chunk, None], fac[None]))
                pos = order[np.searchsorted(skeys, G._pack(prods))]
                mask[pos] = True
        reached = np.nonzero(mask)[0]
        sizes.append(len(reached))
    covered = sizes[-1] == G.order
    w_in = bool(mask[G.idx(G.w)])
    h_in = bool(mask[G.idx(G.h(make_tau(G.ring)))])
    return {"stage_sizes": sizes, "order": G.order, "covered": covered,
            "w_reached": w_in, "h_reached": h_in}


def _unique_rows(mats: np.ndarray) -> np.ndarray:
    flat = np.ascontiguousarray(mats.reshape(len(mats), -1))
    view = flat.view([("", flat.dtype)] * flat.shape[1]).reshape(-1)
    _, keep = np.unique(view, return_index=True)
    return mats[np.sort(keep)]


def higher_rank_width(rep, ring: FiniteRing, cap: int = 10_000_000) -> dict:
    """A concrete sequence of root subgroups whose product set is all of
    G(ring), with the measured number of factors."""
    codes = np.arange(ring.size, dtype=ring.dtype)
    subgroups = []
    for a in range(len(rep.sys.roots)):
        subgroups.append((a, rep.x_batch(ring, a, codes)))
    cur = gfmat.identity(ring, rep.dim)[None]
    sequence = []
    sizes = []
    stable_run = 0
    while stable_run < len(subgroups):
        for a, sub in subgroups:
            grown = gfmat.mat_mul(ring, cur[:, None], sub[None]).reshape(-1, rep.dim, rep.dim)
            if len(grown) > cap:
                raise ValueError(f"width product exceeded cap {cap}")
            new = _unique_rows(grown)
            sequence.append(a)
            sizes.append(len(new))
            stable_run = stable_run + 1 if len(new) == len(cur) else 0
            cur = new
            if stable_run >= len(subgroups):
                break
    n = next(i for i, s in enumerate(sizes) if s == sizes[-1]) + 1
    return {"order": sizes[-1], "N": n, "factors": sequence[:n], "sizes": sizes[:n]}


# ---------------------------------------------------------------------------
# first-order definitions, double-checked against the direct constructions.
# Evaluated on the plain SL2 mode, where matrix products of representatives
# are the honest group operation.


class _ParamBag:
    def __init__(self):
        self.mats = []
        self._seen = {}

    def add(self, m: np.ndarray) -> Param:
        key = np.ascontiguousarray(m).tobytes()
        k = self._seen.get(key)
        if k is None:
            self.mats.append(np.asarray(m))
            k = len(self.mats)
            self._seen[key] = k
        return Param(k)


class _Fresh:
    def __init__(self):
        self.n = 0

    def __call__(self) -> str:
        self.n += 1
        return f"q{self.n}"


def _commutes(t, p):
    return Eq(Mul(t, p), Mul(p, t))


def _conj(t, v):
    return Mul(Mul(Inv(v), t), v)


def h_formula(G: SL2Group, bag: _ParamBag):
    hp = bag.add(G.h(make_tau(G.ring)))
    return _commutes(Var("x1"), hp)


def _u_member(target, G: SL2Group, bag: _ParamBag, S, fresh: _Fresh):
    """target = u^x u^{-y} u(s) for some x, y in H and s in S."""
    up = bag.add(G.u(G.ring.one))
    hp = bag.add(G.h(make_tau(G.ring)))
    xv, yv = Var(fresh()), Var(fresh())
    disj = None
    for s in S:
        tail = Mul(_conj(up, xv), _conj(Inv(up), yv))
        if s != G.ring.zero:
            tail = Mul(tail, bag.add(G.u(s)))
        eq = Eq(target, tail)
        disj = eq if disj is None else Or(disj, eq)
    inner = Exists(yv.name, And(_commutes(yv, hp), disj))
    return Exists(xv.name, And(_commutes(xv, hp), inner))


def u_formula(G: SL2Group, bag: _ParamBag, S, fresh: _Fresh):
    return _u_member(Var("x1"), G, bag, S, fresh)


def p_formula(y1, y2, y3, G: SL2Group, bag: _ParamBag, S, fresh: _Fresh):
    """The multiplication formula: y3 = y1 * y2 on U."""
    ring = G.ring
    up = bag.add(G.u(ring.one))
    hp = bag.add(G.h(make_tau(ring)))
    zv, rv, xv, yv = (Var(fresh()) for _ in range(4))

    def u_of(c):
        return One() if c == ring.zero else bag.add(G.u(c))

    disj = None
    for s in S:
        for t in S:
            eq1 = Eq(y1, Mul(Mul(_conj(up, zv), _conj(Inv(up), rv)), u_of(t)))
            eq2 = Eq(y2, Mul(Mul(_conj(up, xv), _conj(Inv(up), yv)), u_of(s)))
            rhs = Mul(_conj(y1, xv), _conj(Inv(y1), yv))
            rhs = Mul(Mul(rhs, _conj(u_of(s), zv)), _conj(Inv(u_of(s)), rv))
            rhs = Mul(rhs, u_of(ring.mul(s, t)))
            clause = And(eq1, And(eq2, Eq(y3, rhs)))
            disj = clause if disj is None else Or(disj, clause)
    body = disj
    for v in (yv, xv, rv, zv):
        body = Exists(v.name, And(_commutes(v, hp), body))
    return body


def at_formula(G: SL2Group, T, bag: _ParamBag, S, fresh: _Fresh):
    """x1 in u(A_T): x1 in U and f applied inside U vanishes."""
    ring = G.ring
    x1 = Var("x1")

    def factor_term(t):
        c = ring.neg(ring.from_int(t))
        return x1 if c == ring.zero else Mul(x1, bag.add(G.u(c)))

    T = list(T)
    member = _u_member(x1, G, bag, S, fresh)
    if len(T) == 1:
        return And(member, Eq(factor_term(T[0]), One()))

    def chain(acc, rest):
        if len(rest) == 1:
            return p_formula(acc, factor_term(rest[0]), One(), G, bag, S, fresh)
        m = Var(fresh())
        inner = chain(m, rest[1:])
        return Exists(m.name, And(p_formula(acc, factor_term(rest[0]), m, G, bag, S, fresh), inner))

    return And(member, chain(factor_term(T[0]), T[1:]))


def w_formula(G: SL2Group, bag: _ParamBag, fresh: _Fresh):
    """x1 = y z^w y with y, z in u(A_{0,1}) and x1^4 = 1."""
    wp = bag.add(G.w)
    x1 = Var("x1")
    yv, zv = Var(fresh()), Var(fresh())

    def d_guard(v):
        out = None
        for c in at_codes(G.ring, (0, 1)):
            eq = Eq(v, bag.add(G.u(G.ring.dtype(c))))
            out = eq if out is None else Or(out, eq)
        return out

    x2 = Mul(x1, x1)
    body = And(Eq(x1, Mul(Mul(yv, _conj(zv, wp)), yv)), Eq(Mul(x2, x2), One()))
    return Exists(yv.name, And(d_guard(yv),
                               Exists(zv.name, And(d_guard(zv), body))))


def gamma1_formula(G: SL2Group, bag: _ParamBag, S, fresh: _Fresh):
    """x1 in VHU; V-membership via conjugation by w into U."""
    wp = bag.add(G.w)
    hp = bag.add(G.h(make_tau(G.ring)))
    x1 = Var("x1")
    av, bv, cv = Var(fresh()), Var(fresh()), Var(fresh())
    v_guard = _u_member(Mul(Mul(wp, av), Inv(wp)), G, bag, S, fresh)
    u_guard = _u_member(cv, G, bag, S, fresh)
    body = Eq(x1, Mul(Mul(av, bv), cv))
    return Exists(av.name, And(v_guard,
                  Exists(bv.name, And(_commutes(bv, hp),
                  Exists(cv.name, And(u_guard, body))))))


def sl2_formula_report(ring: FiniteRing, sets=("H", "U", "AT", "W", "G1"),
                       S=None, T=(0, 1)) -> dict:
    """Evaluate the first-order definitions with the formula evaluator and
    compare with the direct constructions, set by set."""
    G = SL2Group(ring, "SL2")
    if S is None:
        S = [ring.zero]
    out = {}
    units = _unit_table(ring)
    expected = {
        "H": lambda: _keyset(G, h_set(G)),
        "U": lambda: _keyset(G, u_set(G)),
        "AT": lambda: _keyset(G, np.array([G.u(c) for c in at_codes(ring, T)])),
        "W": lambda: _keyset(G, define_W(G)["elements"]),
        "G1": lambda: _keyset(G, G.elements[units[G.elements[:, 0, 0]]]),
    }
    for name in sets:
        bag, fresh = _ParamBag(), _Fresh()
        if name == "H":
            F = h_formula(G, bag)
        elif name == "U":
            F = u_formula(G, bag, S, fresh)
        elif name == "AT":
            F = at_formula(G, T, bag, S, fresh)
        elif name == "W":
            F = w_formula(G, bag, fresh)
        elif name == "G1":
            F = gamma1_formula(G, bag, S, fresh)
        else:
            raise ValueError(f"unknown set {name!r}")
        got = define_set(F, G, bag.mats)
        keys = _keyset(G, G.elements[got])
        out[name] = {"size": len(got), "match": keys == expected[name]()}
    return out


# ---------------------------------------------------------------------------
# aggregate report


def adelic_report(ring: FiniteRing, modes=SL2Group.MODES, seed: int = 0,
                  formula_sets=None) -> dict:
    """Everything the check-adelic suite verifies for one ring."""
    single = not isinstance(ring, ProductRing)
    if formula_sets is None:
        # nested quantifiers priced for a single field; big product groups
        # get the cheap formulas plus direct-construction checks
        formula_sets = ("H", "U", "AT", "W", "G1") if single else ("H", "W")
    tau = make_tau(ring)
    report = {"ring": ring.name, "tau": ring.elem_str(tau), "modes": {}}
    for mode in modes:
        G = SL2Group(ring, mode)
        cent = centralizer_H(G, tau)
        u_bij = len(u_set(G)) == ring.size
        th = theta_report(G, seed=seed)
        report["modes"][mode] = {
            "order": G.order,
            "H_size": len(cent),
            "u_bijective": u_bij,
            "theta": th,
            "ok": u_bij and th["ok"],
        }
    G = SL2Group(ring, "SL2")
    du = define_U(G)
    # P realizes ring multiplication: all pairs
    p_ok = True
    for b in range(ring.size):
        ub = G.u(ring.dtype(b))
        for a in range(ring.size):
            ua = G.u(ring.dtype(a))
            if not (mult_formula_P(G, ub, ua) == G.u(ring.mul(b, a))).all():
                p_ok = False
    report["define_U"] = {"complete": du["complete"], "missing": du["missing"]}
    report["P_all_pairs"] = p_ok
    report["A_T"] = define_AT(G, (0, 1))["ok"]
    report["W"] = define_W(G)["ok"]
    report["gamma1"] = gamma1_report(G)["ok"]
    report["k_alpha"] = k_alpha_product(G)["covered"]
    report["formulas"] = sl2_formula_report(ring, formula_sets)
    report["ok"] = all([
        report["define_U"]["complete"], p_ok, report["A_T"], report["W"],
        report["gamma1"], report["k_alpha"],
        all(m["ok"] for m in report["modes"].values()),
        all(v["match"] for v in report["formulas"].values()),
    ])
    return report
