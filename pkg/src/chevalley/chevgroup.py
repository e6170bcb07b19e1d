"""Matrix realizations of Chevalley groups over commutative rings.

Two families of representations:

* the adjoint representation for any root system, with root matrices
  built from the structure constants (dimension |Phi| + rank);
* the explicit classical representations for types A/B/C/D (special
  linear, odd orthogonal, symplectic, even orthogonal) with the signed
  index layout 1..m, -1..-m (0 first for odd orthogonal).

Divided powers M_i(alpha) = X_alpha^i / i! are computed over Z and reduced
into each target ring, so x_alpha(r) = sum r^i M_i(alpha) is exact in any
characteristic.  Both constructions are calibrated against the same
structure-constant table and abort if any bracket disagrees.

Also here: group enumeration by BFS (with word data used for width
measurements), centralizers, torus/unipotent subgroup materialization and
the Bruhat factorization check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from . import gfmat
from .rings import FiniteRing, IntRing, Ring
from .rootsys import RootSystem, StructureConstants, build_root_system, commutator_template, structure_constants

ENUM_CAP = 2_000_000


# ---------------------------------------------------------------------------
# representations


class MatrixRep:
    """A faithful-at-desk-scale integral matrix realization.

    root_X maps every root index to a nilpotent integer matrix X_alpha;
    divided powers are integer matrices M_i = X^i/i!.  membership_form is
    None (adjoint: membership is by generation), "det" (special linear) or
    an integer Gram matrix J (g^T J g = J)."""

    def __init__(self, sys: RootSystem, form: str, dim: int, root_X: dict, membership_form):
        self.sys = sys
        self.form = form
        self.dim = dim
        self.sc = structure_constants(sys.type_label, sys.rank)
        self.root_X = root_X
        self.membership_form = membership_form
        self.divpow = {}
        self.q = 1
        for a, X in root_X.items():
            powers = [np.eye(dim, dtype=np.int64)]
            P = X
            i = 1
            while P.any():
                f = factorial(i)
                M, rem = np.divmod(P, f)
                if rem.any():
                    raise ArithmeticError(f"divided power not integral at root {a}, i={i}")
                powers.append(M)
                P = P @ X
                i += 1
            self.divpow[a] = powers
            self.q = max(self.q, len(powers) - 1)
        self._check_brackets()
        self._ring_cache = {}

    # -- construction-time consistency -------------------------------------

    def coroot_matrix(self, a: int) -> np.ndarray:
        """Integer matrix of h_{a}^vee = [X_a, X_-a] in this representation."""
        sys = self.sys
        return self.root_X[a] @ self.root_X[sys.neg(a)] - self.root_X[sys.neg(a)] @ self.root_X[a]

    def _check_brackets(self):
        sys, sc = self.sys, self.sc
        nroots = len(sys.roots)
        for a in range(nroots):
            Xa = self.root_X[a]
            Ha = self.coroot_matrix(a)
            # sl2 relation [h_a, X_a] = 2 X_a
            assert (Ha @ Xa - Xa @ Ha == 2 * Xa).all(), f"sl2 failure at root {a}"
            for b in range(nroots):
                if b == a or b == sys.neg(a):
                    continue
                Xb = self.root_X[b]
                br = Xa @ Xb - Xb @ Xa
                g = sys.sum_root(a, b)
                want = sc.N(a, b) * self.root_X[g] if g is not None else 0
                assert (br == want).all(), f"bracket failure at roots {a},{b}"
        if self.membership_form is not None and self.form != "special_linear":
            J = self.membership_form
            for a in range(nroots):
                X = self.root_X[a]
                assert (X.T @ J + J @ X == 0).all(), f"form not preserved by root {a}"

    # -- elementary elements ------------------------------------------------

    def _reduced(self, ring: FiniteRing):
        cache = self._ring_cache.setdefault(ring.name, {})
        if "divpow" not in cache:
            cache["divpow"] = {
                a: [gfmat.from_int_matrix(ring, M) for M in powers]
                for a, powers in self.divpow.items()
            }
            cache["h"] = {}
        return cache

    def identity(self, ring) -> np.ndarray:
        if isinstance(ring, IntRing):
            return np.eye(self.dim, dtype=np.int64)
        return gfmat.identity(ring, self.dim)

    def x(self, ring: Ring, a: int, r) -> np.ndarray:
        """x_alpha(r) = 1 + r M_1 + ... + r^q M_q."""
        if isinstance(ring, IntRing):
            out = np.eye(self.dim, dtype=np.int64)
            for i, M in enumerate(self.divpow[a][1:], start=1):
                out = out + r**i * M
            return out
        return self.x_batch(ring, a, np.array([r], dtype=ring.dtype))[0]

    def x_batch(self, ring: FiniteRing, a: int, rcodes: np.ndarray) -> np.ndarray:
        """Stack of x_alpha(r) for a vector of ring codes, shape (N, d, d)."""
        powers = self._reduced(ring)["divpow"][a]
        rcodes = np.asarray(rcodes, dtype=ring.dtype)
        out = np.broadcast_to(powers[0], (len(rcodes), self.dim, self.dim)).copy()
        rp = rcodes
        for i in range(1, len(powers)):
            term = ring.mul_t[rp[:, None, None], powers[i][None]]
            out = ring.add_t[out, term]
            if i + 1 < len(powers):
                rp = ring.mul_t[rp, rcodes]
        return out

    def h(self, ring: Ring, g: int, t) -> np.ndarray:
        """h_gamma(t) = n_gamma(t) n_gamma(1)^-1 with
        n_gamma(t) = x_g(t) x_-g(-1/t) x_g(t)."""
        if isinstance(ring, IntRing):
            if t not in (1, -1):
                raise ZeroDivisionError("torus elements over Z need t a unit")
            ti = t
            mats = [
                self.x(ring, g, t),
                self.x(ring, self.sys.neg(g), -ti),
                self.x(ring, g, t),
                self.x(ring, g, -1),
                self.x(ring, self.sys.neg(g), 1),
                self.x(ring, g, -1),
            ]
            out = mats[0]
            for m in mats[1:]:
                out = out @ m
            return out
        cache = self._reduced(ring)["h"]
        key = (g, int(t))
        if key not in cache:
            if not ring.is_unit(t):
                raise ZeroDivisionError(f"h requires a unit, got {ring.elem_str(t)}")
            ng = self.sys.neg(g)
            one = ring.one
            mats = [
                self.x(ring, g, t),
                self.x(ring, ng, ring.neg(ring.inv(t))),
                self.x(ring, g, t),
                self.x(ring, g, ring.neg(one)),
                self.x(ring, ng, one),
                self.x(ring, g, ring.neg(one)),
            ]
            cache[key] = gfmat.mat_mul_many(ring, mats)
        return cache[key]

    def n_root(self, ring: Ring, g: int) -> np.ndarray:
        """Weyl representative n_gamma = x_g(1) x_-g(-1) x_g(1)."""
        one = 1 if isinstance(ring, IntRing) else ring.one
        neg_one = -1 if isinstance(ring, IntRing) else ring.neg(ring.one)
        mats = [self.x(ring, g, one), self.x(ring, self.sys.neg(g), neg_one), self.x(ring, g, one)]
        if isinstance(ring, IntRing):
            return mats[0] @ mats[1] @ mats[2]
        return gfmat.mat_mul_many(ring, mats)

    def weyl_rep(self, ring: Ring, word) -> np.ndarray:
        """n_w for w given as a word in reflections (list of root indices)."""
        out = self.identity(ring)
        for g in word:
            n = self.n_root(ring, g)
            out = out @ n if isinstance(ring, IntRing) else gfmat.mat_mul(ring, out, n)
        return out

    def weyl_eta(self, ring: FiniteRing, word, a: int):
        """Image data of conjugation by n_w on U_a: returns (b, eta) with
        x_a(r)^{n_w} = x_b(eta * r).  With n_w = n_{w_0} n_{w_1} ... the
        conjugation action n^-1 x n realizes the inverse permutation, so b
        accumulates the reflections in word order."""
        b = a
        for g in word:
            b = self.sys.reflect(g, b)
        n = self.weyl_rep(ring, word)
        ninv = gfmat.mat_inv(ring, n) if ring.is_field else _inverse_by_order(ring, n)
        conj = gfmat.mat_mul_many(ring, [ninv, self.x(ring, a, ring.one), n])
        for eta in (ring.one, ring.neg(ring.one)):
            if (conj == self.x(ring, b, eta)).all():
                return b, eta
        raise AssertionError("Weyl conjugation did not land on x_b(+-1)")

    # -- membership ---------------------------------------------------------

    def membership_mask(self, ring: FiniteRing, mats: np.ndarray) -> np.ndarray:
        """Batched membership test, shape (N,). Only for classical forms."""
        if self.membership_form is None:
            raise ValueError("adjoint representation: membership is by generation only")
        if self.form == "special_linear":
            return gfmat.mat_det(ring, mats) == ring.one
        J = gfmat.from_int_matrix(ring, self.membership_form)
        gt = np.swapaxes(mats, -1, -2)
        prod = gfmat.mat_mul(ring, gt, gfmat.mat_mul(ring, J[None], mats))
        return (prod == J).reshape(mats.shape[0], -1).all(axis=1)


def _inverse_by_order(ring: FiniteRing, m: np.ndarray) -> np.ndarray:
    """Inverse of a finite-order matrix by cycling (non-field rings)."""
    prev = m
    for _ in range(10**7):
        cur = gfmat.mat_mul(ring, prev, m)
        if (cur == gfmat.identity(ring, m.shape[0])).all():
            return prev
        prev = cur
    raise RuntimeError("order search exceeded budget")


def commutator_word(sc: StructureConstants, ring: Ring, a: int, b: int, r, s):
    """[x_a(r), x_b(s)] (convention g^-1 h^-1 g h) as a list of
    (root index, ring element), empty when a+b is not a root."""
    out = []
    for g, ea, eb, c in commutator_template(sc, a, b):
        if isinstance(ring, IntRing):
            val = c * r**ea * s**eb
        else:
            val = ring.mul(ring.from_int(c), ring.mul(ring.pow(r, ea), ring.pow(s, eb)))
        out.append((g, val))
    return out


@lru_cache(maxsize=None)
def adjoint_rep(type_label: str, rank: int) -> MatrixRep:
    """Adjoint representation: basis {e_gamma} for all roots (in the fixed
    order) followed by the fundamental coroots {h_i}; d = |Phi| + rank."""
    sys = build_root_system(type_label, rank)
    sc = structure_constants(type_label, rank)
    nroots = len(sys.roots)
    d = nroots + sys.rank
    root_X = {}
    for a in range(nroots):
        X = np.zeros((d, d), dtype=np.int64)
        for g in range(nroots):
            if g == sys.neg(a):
                # ad(e_a) e_{-a} = h_{a^vee}, expanded over fundamental coroots
                for i, c in enumerate(_coroot_coords(sys, a)):
                    X[nroots + i, g] = c
            else:
                s = sys.sum_root(a, g)
                if s is not None:
                    X[s, g] = sc.N(a, g)
        for i in range(sys.rank):
            # ad(e_a) h_i = -<a, a_i^vee> e_a
            X[a, nroots + i] = -sys.cartan_integer(sys.fundamental[i], a)
        root_X[a] = X
    return MatrixRep(sys, "adjoint", d, root_X, None)


def _coroot_coords(sys: RootSystem, a: int):
    """a^vee = sum c_i a_i^vee over fundamental coroots; the c_i are integers."""
    da = sys.bilinear(a, a) / 2
    out = []
    for i, m in enumerate(sys.roots[a]):
        c = Fraction(m) * sys.d[i] / da
        assert c.denominator == 1
        out.append(int(c))
    return out


# classical representations: signed index layout


def _eps_coords(sys: RootSystem, fund_eps: list, a: int) -> tuple:
    m = len(fund_eps[0])
    v = [0] * m
    for k, c in enumerate(sys.roots[a]):
        for t in range(m):
            v[t] += c * fund_eps[k][t]
    return tuple(v)


def _signed_pair(eps: tuple):
    """Write a two-coordinate root s_i e_i + s_j e_j (i<j) as e_a - e_b with
    |a| < |b| in the signed index convention."""
    nz = [t for t, c in enumerate(eps) if c]
    (i, si), (j, sj) = (nz[0] + 1, eps[nz[0]]), (nz[1] + 1, eps[nz[1]])
    return si * i, -sj * j


@lru_cache(maxsize=None)
def classical_rep(type_label: str, rank: int) -> MatrixRep:
    """The explicit special linear / symplectic / orthogonal representations,
    with rows and columns labelled 1..m, -1..-m (and a leading 0 for odd
    orthogonal).  Signs are calibrated to the structure-constant table."""
    type_label = type_label.upper()
    sys = build_root_system(type_label, rank)
    m = rank
    if type_label == "A":
        d = m + 1
        fund_eps = [[int(t == k) - int(t == k + 1) for t in range(d)] for k in range(m)]

        def raw(a):
            eps = _eps_coords(sys, fund_eps, a)
            i = eps.index(1)
            j = eps.index(-1)
            X = np.zeros((d, d), dtype=np.int64)
            X[i, j] = 1
            return X

        form, J = "special_linear", "det"
    elif type_label in ("B", "C", "D"):
        two_m = 2 * m
        d = two_m + 1 if type_label == "B" else two_m

        def pos(i):
            # signed index -> matrix position
            if type_label == "B":
                return 0 if i == 0 else (i if i > 0 else m - i)
            return i - 1 if i > 0 else m - i - 1

        if type_label == "C":
            fund_eps = [[int(t == k) - int(t == k + 1) for t in range(m)] for k in range(m - 1)]
            fund_eps.append([2 * int(t == m - 1) for t in range(m)])
        elif type_label == "B":
            fund_eps = [[int(t == k) - int(t == k + 1) for t in range(m)] for k in range(m - 1)]
            fund_eps.append([int(t == m - 1) for t in range(m)])
        else:
            fund_eps = [[int(t == k) - int(t == k + 1) for t in range(m)] for k in range(m - 1)]
            fund_eps.append([int(t == m - 2) + int(t == m - 1) for t in range(m)])

        def raw(a):
            eps = _eps_coords(sys, fund_eps, a)
            X = np.zeros((d, d), dtype=np.int64)
            nz = [c for c in eps if c]
            if type_label == "C" and sorted(map(abs, nz)) == [2]:
                # long root +-2 e_i -> e_{i,-i} / e_{-i,i}
                t = [k for k, c in enumerate(eps) if c][0] + 1
                i = t if eps[t - 1] > 0 else -t
                X[pos(i), pos(-i)] = 1
                return X
            if type_label == "B" and len(nz) == 1:
                # short root +- e_t: u_a(r) = 1 + r(2 e_{a,0} - e_{0,-a}) - r^2 e_{a,-a}
                t = [k for k, c in enumerate(eps) if c][0] + 1
                a_ = t if eps[t - 1] > 0 else -t
                X[pos(a_), 0] = 2
                X[0, pos(-a_)] = -1
                return X
            a_, b_ = _signed_pair(eps)
            eps_sign = -1 if (type_label in ("B", "D") or a_ * b_ > 0) else 1
            X[pos(a_), pos(b_)] = 1
            X[pos(-b_), pos(-a_)] = eps_sign
            return X

        form = {"B": "orthogonal_odd", "C": "symplectic", "D": "orthogonal_even"}[type_label]
        J = np.zeros((d, d), dtype=np.int64)
        if type_label == "B":
            J[0, 0] = 2
        for i in range(1, m + 1):
            J[pos(i), pos(-i)] = 1
            J[pos(-i), pos(i)] = -1 if type_label == "C" else 1
    else:
        raise ValueError(f"no classical representation for type {type_label}")

    root_X = _calibrate(sys, {a: raw(a) for a in range(len(sys.roots))})
    return MatrixRep(sys, form, d, root_X, J)


def _calibrate(sys: RootSystem, raw_X: dict) -> dict:
    """Flip signs of the raw root matrices so brackets match the
    structure-constant table: positives by extraspecial recursion, negatives
    by the [e, f] = h condition."""
    sc = structure_constants(sys.type_label, sys.rank)
    eta = {}
    for i in sys.fundamental:
        eta[i] = 1
    for g in range(sys.n_pos):
        if g in eta:
            continue
        a, b = sc._es[g]
        br = raw_X[a] * eta[a] @ raw_X[b] - raw_X[b] @ (raw_X[a] * eta[a])
        br = eta[b] * br  # [eta_a X_a, eta_b X_b]
        target = sc.N(a, b) * raw_X[g]
        if (br == target).all():
            eta[g] = 1
        elif (br == -target).all():
            eta[g] = -1
        else:
            raise AssertionError(f"calibration failed at positive root {g}")
    # negatives: pick the sign making [e_g, e_-g] act as +2 on e_g
    out = {g: eta[g] * raw_X[g] for g in range(sys.n_pos)}
    for g in range(sys.n_pos):
        ng = sys.neg(g)
        for s in (1, -1):
            F = s * raw_X[ng]
            H = out[g] @ F - F @ out[g]
            if (H @ out[g] - out[g] @ H == 2 * out[g]).all():
                out[ng] = F
                break
        else:
            raise AssertionError(f"calibration failed at negative root {ng}")
    return out


# ---------------------------------------------------------------------------
# enumeration


class EnumeratedGroup:
    """BFS closure of a generator set inside a matrix representation over a
    finite ring.  Element order is the deterministic BFS order (word length,
    then parent index, then generator index); every element carries its
    distance, its BFS word, and the index of its inverse."""

    def __init__(self, rep: MatrixRep, ring: FiniteRing, elements, index, dist, parent, genidx, inv_idx, gens_meta):
        self.rep = rep
        self.ring = ring
        self.elements = elements  # (order, d, d)
        self.index = index  # bytes -> idx
        self.dist = dist
        self.parent = parent
        self.genidx = genidx
        self.inv_idx = inv_idx
        self.gens_meta = gens_meta  # list of generator labels (root, ring elt)
        self.order = len(elements)

    def idx(self, mat: np.ndarray) -> int:
        key = np.ascontiguousarray(mat.astype(self.ring.dtype)).tobytes()
        if key not in self.index:
            raise KeyError("matrix is not an element of the enumerated group")
        return self.index[key]

    def __contains__(self, mat) -> bool:
        return np.ascontiguousarray(np.asarray(mat).astype(self.ring.dtype)).tobytes() in self.index

    def inv_mat(self, mat: np.ndarray) -> np.ndarray:
        return self.elements[self.inv_idx[self.idx(mat)]]

    def word(self, i: int):
        """Generator-index word with elements[i] = prod of gens (left to right)."""
        out = []
        while i != 0:
            out.append(int(self.genidx[i]))
            i = int(self.parent[i])
        return out[::-1]

    def width(self) -> int:
        return int(self.dist.max())


def root_element_generators(rep: MatrixRep, ring: FiniteRing, roots=None):
    """The full elementary generator set {x_alpha(r) : r != 0} as
    (labels, matrices, inverse matrices)."""
    if roots is None:
        roots = range(len(rep.sys.roots))
    labels, mats, invs = [], [], []
    for a in roots:
        for r in ring.elements():
            if r == ring.zero:
                continue
            labels.append((a, r))
            mats.append(rep.x(ring, a, r))
            invs.append(rep.x(ring, a, ring.neg(r)))
    return labels, np.stack(mats), np.stack(invs)


def enumerate_group(rep: MatrixRep, ring: FiniteRing, generators=None, cap: int = ENUM_CAP) -> EnumeratedGroup:
    """Deterministic BFS closure. `generators` is None (all root elements)
    or a list of fundamental-root indices restriction, or an explicit
    (labels, mats, invs) triple."""
    if generators is None:
        labels, gmats, ginvs = root_element_generators(rep, ring)
    elif isinstance(generators, tuple):
        labels, gmats, ginvs = generators
    else:
        labels, gmats, ginvs = root_element_generators(rep, ring, roots=generators)
    d = rep.dim
    G = len(gmats)
    ident = rep.identity(ring)
    index = {ident.tobytes(): 0}
    elems = [ident]
    dist = [0]
    parent = [-1]
    genidx = [-1]
    frontier = [0]
    level = 0
    chunk = max(1, (1 << 22) // (G * d * d))
    while frontier:
        level += 1
        new = []
        farr = np.array(frontier)
        for c0 in range(0, len(farr), chunk):
            batch = np.stack([elems[i] for i in farr[c0 : c0 + chunk]])
            cand = gfmat.mat_mul(ring, batch[:, None], gmats[None, :, :, :])
            flat = np.ascontiguousarray(cand.reshape(-1, d * d))
            vv = flat.view(f"V{flat.shape[1] * flat.itemsize}").ravel()
            _, first = np.unique(vv, return_index=True)
            for fi in np.sort(first):
                key = flat[fi].tobytes()
                if key not in index:
                    idx = len(elems)
                    if idx >= cap:
                        raise RuntimeError(f"enumeration cap {cap} exceeded at {idx} elements")
                    index[key] = idx
                    elems.append(flat[fi].reshape(d, d))
                    dist.append(level)
                    parent.append(int(farr[c0 + fi // G]))
                    genidx.append(int(fi % G))
                    new.append(idx)
        frontier = new
    elements = np.stack(elems)
    dist = np.array(dist)
    parent = np.array(parent)
    genarr = np.array(genidx)
    # inverses, level by level: inv(e g) = g^-1 inv(e)
    inv_mats = np.empty_like(elements)
    inv_mats[0] = ident
    order = np.argsort(dist, kind="stable")
    for lv in range(1, int(dist.max()) + 1 if len(dist) else 1):
        sel = np.nonzero(dist == lv)[0]
        if not len(sel):
            break
        inv_mats[sel] = gfmat.mat_mul(ring, ginvs[genarr[sel]], inv_mats[parent[sel]])
    flatinv = np.ascontiguousarray(inv_mats.reshape(len(elems), d * d))
    inv_idx = np.array([index[flatinv[i].tobytes()] for i in range(len(elems))])
    del order
    return EnumeratedGroup(rep, ring, elements, index, dist, parent, genarr, inv_idx, labels)


def centralizer_indices(E: EnumeratedGroup, mats) -> np.ndarray:
    """Indices of {g in E : gs = sg for all s in mats}, filtering iteratively
    so later conditions only scan survivors."""
    ring = E.ring
    idxs = np.arange(E.order)
    for s in mats:
        sub = E.elements[idxs]
        left = gfmat.mat_mul(ring, sub, s)
        right = gfmat.mat_mul(ring, s[None], sub)
        keep = (left == right).reshape(len(idxs), -1).all(axis=1)
        idxs = idxs[keep]
    return idxs


def center_indices(E: EnumeratedGroup) -> np.ndarray:
    return centralizer_indices(E, [m for _, m in zip(E.gens_meta, _gen_mats(E))])


def _gen_mats(E: EnumeratedGroup):
    ring, rep = E.ring, E.rep
    return [rep.x(ring, a, r) for (a, r) in E.gens_meta]


def linear_commutant(rep: MatrixRep, ring: FiniteRing, Y) -> np.ndarray:
    """Basis of the matrix subspace {m : my = ym for all y in Y} over a
    field, by exact kernel computation; rows are flattened d x d matrices."""
    d = rep.dim
    if not len(Y):
        return np.array([e.flatten() for e in np.eye(d * d, dtype=np.int64)], dtype=ring.dtype)
    rows = []
    for y in Y:
        y = np.asarray(y, dtype=np.int64)
        # (my - ym)_{ij} as linear forms in m_{kl}
        A = np.zeros((d, d, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                for l in range(d):
                    A[i, j, i, l] += y[l, j]
                    A[i, j, l, j] -= y[i, l]
        rows.append(A.reshape(d * d, d * d))
    M = gfmat.from_int_matrix(ring, np.concatenate(rows, axis=0))
    return gfmat.nullspace(ring, M)


def commutant_group_points(rep: MatrixRep, ring: FiniteRing, basis, budget: int = ENUM_CAP) -> np.ndarray:
    """Enumerate the span of a commutant basis and keep the matrices that
    satisfy the representation's membership conditions."""
    vecs = gfmat.span_elements(ring, basis, budget=budget)
    mats = vecs.reshape(-1, rep.dim, rep.dim)
    return mats[rep.membership_mask(ring, mats)]


# ---------------------------------------------------------------------------
# subgroup materialization


@dataclass(frozen=True)
class SubgroupDescriptor:
    kind: str  # root | torus | center | product
    roots: tuple = ()
    with_center: bool = False


def materialize(desc: SubgroupDescriptor, rep: MatrixRep, ring: FiniteRing,
                group: EnumeratedGroup | None = None) -> np.ndarray:
    """Explicit element set of a standard subgroup, shape (N, d, d)."""
    if desc.kind == "root":
        (a,) = desc.roots
        out = rep.x_batch(ring, a, np.arange(ring.size, dtype=ring.dtype))
    elif desc.kind == "torus":
        out = torus_set(rep, ring)
    elif desc.kind == "center":
        out = center_set(rep, ring, group)
    elif desc.kind == "product":
        sets = [rep.x_batch(ring, a, np.arange(ring.size, dtype=ring.dtype)) for a in desc.roots]
        out = product_set(ring, sets)
    else:
        raise ValueError(f"unknown subgroup kind {desc.kind}")
    if desc.with_center:
        out = product_set(ring, [out, center_set(rep, ring, group)])
    return out


def product_set(ring: FiniteRing, sets) -> np.ndarray:
    """Unique pairwise products of a list of matrix sets, in order."""
    out = sets[0]
    for s in sets[1:]:
        prods = gfmat.mat_mul(ring, out[:, None], s[None, :, :, :])
        out = _unique_mats(prods.reshape(-1, *out.shape[1:]))
    return out


def _unique_mats(mats: np.ndarray) -> np.ndarray:
    flat = np.ascontiguousarray(mats.reshape(len(mats), -1))
    vv = flat.view(f"V{flat.shape[1] * flat.itemsize}").ravel()
    _, first = np.unique(vv, return_index=True)
    return mats[np.sort(first)]


def torus_set(rep: MatrixRep, ring: FiniteRing) -> np.ndarray:
    """T(R): closure of the elementary torus elements h_{a_i}(t)."""
    gens = [rep.h(ring, a, t) for a in rep.sys.fundamental for t in ring.units()]
    out = rep.identity(ring)[None]
    while True:
        prods = gfmat.mat_mul(ring, out[:, None], np.stack(gens)[None])
        nxt = _unique_mats(np.concatenate([out, prods.reshape(-1, rep.dim, rep.dim)]))
        if len(nxt) == len(out):
            return out
        out = nxt


def center_set(rep: MatrixRep, ring: FiniteRing, group: EnumeratedGroup | None = None) -> np.ndarray:
    """Z(G(R)).  For classical forms these are the scalar matrices passing
    the membership test; for adjoint forms the center is trivial (checked
    against the enumerated group when one is supplied)."""
    if rep.membership_form is None:
        out = rep.identity(ring)[None]
    else:
        scalars = np.stack([gfmat.scalar_mat(ring, rep.dim, c) for c in ring.units()])
        out = scalars[rep.membership_mask(ring, scalars)]
    if group is not None:
        zc = group.elements[center_indices(group)]
        assert len(zc) == len(out) and {m.tobytes() for m in zc} == {
            np.ascontiguousarray(m).tobytes() for m in out
        }, "scalar center disagrees with enumerated center"
    return out


# ---------------------------------------------------------------------------
# Weyl group and Bruhat


def weyl_elements(sys: RootSystem):
    """The Weyl group as root permutations, each with a reduced word in
    fundamental reflections (BFS, so words are geodesic)."""
    n = len(sys.roots)
    fund_perms = {
        k: tuple(sys.reflect(k, j) for j in range(n)) for k in sys.fundamental
    }
    ident = tuple(range(n))
    out = {ident: []}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for k in sys.fundamental:
                q = tuple(fund_perms[k][p[j]] for j in range(n))
                if q not in out:
                    out[q] = [k] + out[p]
                    new.append(q)
        frontier = new
    return out


def verify_bruhat(E: EnumeratedGroup) -> dict:
    """Check the factorization g = u . t n_w . v, with u over all positive
    roots in the fixed order and v only over {i : w(root_i) < 0}: every
    element must arise exactly once and the tuple count must equal |E|."""
    rep, ring = E.rep, E.ring
    sys = rep.sys
    rcodes = np.arange(ring.size, dtype=ring.dtype)
    U_full = product_set(ring, [rep.x_batch(ring, a, rcodes) for a in range(sys.n_pos)])
    assert len(U_full) == ring.size**sys.n_pos, "unipotent product set collapsed"
    T = torus_set(rep, ring)
    seen = set()
    total = 0
    dup = None
    for perm, word in weyl_elements(sys).items():
        nw = rep.weyl_rep(ring, word)
        sw = [i for i in range(sys.n_pos) if perm[i] >= sys.n_pos]
        V = product_set(ring, [rep.x_batch(ring, a, rcodes) for a in sw]) if sw else rep.identity(ring)[None]
        assert len(V) == ring.size ** len(sw)
        for t in T:
            mid = gfmat.mat_mul(ring, gfmat.mat_mul(ring, U_full, t[None]), nw[None])
            prods = gfmat.mat_mul(ring, mid[:, None], V[None])
            flat = np.ascontiguousarray(prods.reshape(-1, rep.dim * rep.dim))
            total += len(flat)
            for i in range(len(flat)):
                key = flat[i].tobytes()
                if key in seen:
                    dup = key
                else:
                    seen.add(key)
    ok = dup is None and total == E.order == len(seen)
    return {
        "order": E.order,
        "tuple_count": total,
        "distinct_products": len(seen),
        "unique": dup is None,
        "ok": ok,
    }


# ---------------------------------------------------------------------------
# convenience wrapper


class GroupElem:
    """Thin operator wrapper around a matrix of ring codes."""

    __slots__ = ("rep", "ring", "mat")

    def __init__(self, rep: MatrixRep, ring: FiniteRing, mat: np.ndarray):
        self.rep = rep
        self.ring = ring
        self.mat = np.asarray(mat, dtype=ring.dtype)

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        return GroupElem(self.rep, self.ring, gfmat.mat_mul(self.ring, self.mat, other.mat))

    def inv(self) -> "GroupElem":
        if self.ring.is_field:
            return GroupElem(self.rep, self.ring, gfmat.mat_inv(self.ring, self.mat))
        return GroupElem(self.rep, self.ring, _inverse_by_order(self.ring, self.mat))

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElem) and (self.mat == other.mat).all()

    def __hash__(self):
        return hash(np.ascontiguousarray(self.mat).tobytes())

    def __repr__(self):
        return f"GroupElem({self.mat.tolist()})"
