"""Brute-force dense evaluator used to cross-check the sparse checkers.

Structure constants are copied into dense object arrays of Fractions and
every identity is expanded with explicit index contractions. Nothing here
touches the quotient spaces, the axiom registry or the exact linear algebra
module; the inverse antipode is computed by a local Gauss-Jordan.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd

import numpy as np

ZERO = Fraction(0)


def zeros(*shape):
    return np.full(shape, ZERO, dtype=object)


class Q:
    """Rational tensor stored as ``int64 array / den`` so contractions run in C."""

    def __init__(self, arr, den=1):
        arr = np.asarray(arr)
        if arr.dtype == object:
            den = 1
            for x in arr.flat:
                q = Fraction(x).denominator
                den = den * q // gcd(den, q)
            arr = np.array([int(Fraction(x) * den) for x in arr.flat], dtype=np.int64).reshape(arr.shape)
        if arr.size and int(np.abs(arr).max()) > LIMIT:
            raise OverflowError("oracle entries exceed the int64 safety bound")
        self.arr, self.den = arr.astype(np.int64), den

    def __getitem__(self, idx):
        return Q(self.arr[idx], self.den)

    @property
    def shape(self):
        return self.arr.shape

    def fractions(self):
        out = np.empty(self.arr.shape, dtype=object)
        for idx, x in np.ndenumerate(self.arr):
            out[idx] = Fraction(int(x), self.den)
        return out


LIMIT = 2 ** 40


def ein(spec, *ops):
    qs = [op if isinstance(op, Q) else Q(op) for op in ops]
    den = 1
    for q in qs:
        den *= q.den
    return Q(np.einsum(spec, *(q.arr for q in qs)), den)


def outer(a, b):
    return ein("i,j->ij", a, b)


def _columns_to_dense(lm, rows, cols):
    """A LinearMap's columns as an array ``[col, row]``."""
    out = zeros(cols, rows)
    for j, col in enumerate(lm.matrix.columns()):
        for i, c in col.items():
            out[j, i] = Fraction(c)
    return out


class Dense:
    """Dense structure constants of a Hopf algebra."""

    def __init__(self, h):
        n = self.n = h.dim
        self.M = zeros(n, n, n)
        for (i, j), v in h.mult.items():
            for k, c in v.items():
                self.M[i, j, k] = c
        self.u = zeros(n)
        for k, c in h.unit.items():
            self.u[k] = c
        self.D = zeros(n, n, n)
        for i, v in (h.comult or {}).items():
            for (j, k), c in v.items():
                self.D[i, j, k] = c
        self.c = zeros(n)
        for k, c in (h.counit or {}).items():
            self.c[k] = c
        self.S = _columns_to_dense(h.antipode, n, n) if h.antipode is not None else None
        self.I = zeros(n, n)
        for i in range(n):
            self.I[i, i] = Fraction(1)
        self.S_exact = self.S
        self.M, self.D, self.u, self.c, self.I = (Q(x) for x in (self.M, self.D, self.u, self.c, self.I))
        if self.S is not None:
            self.S = Q(self.S)

    @property
    def D2(self):  # e_i ↦ Σ e_p⊗e_q⊗e_r
        return ein("ipx,xqr->ipqr", self.D, self.D)

    def S_inv(self):
        return Q(gauss_inverse(self.S_exact))


def gauss_inverse(S):
    """Inverse of the map ``e_i ↦ Σ_k S[i,k] e_k``, same layout."""
    n = S.shape[0]
    A = [[S[i, k] for i in range(n)] + [Fraction(int(r == k)) for r in range(n)] for k in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    out = zeros(n, n)
    for k in range(n):
        for i in range(n):
            out[i, k] = A[k][n + i]
    return out


def scalar(x):
    return np.array([x], dtype=object)


def hopf_tables(h):
    """Axiom id → (lhs array, rhs array) indexed by the axiom's basis tuple."""
    d = Dense(h)
    M, D, u, c, I = d.M, d.D, d.u, d.c, d.I
    t = {
        "algebra.associativity": (ein("ijm,mkn->ijkn", M, M), ein("jkm,imn->ijkn", M, M)),
        "algebra.left-unit": (ein("m,min->in", u, M), I),
        "algebra.right-unit": (ein("m,imn->in", u, M), I),
    }
    if h.has_coalgebra:
        t.update({
            "coalgebra.coassociativity": (ein("iab,acd->icdb", D, D), ein("iab,bcd->iacd", D, D)),
            "coalgebra.left-counit": (ein("iab,a->ib", D, c), I),
            "coalgebra.right-counit": (ein("iab,b->ia", D, c), I),
            "bialgebra.coproduct-multiplicative": (ein("ijm,mab->ijab", M, D), _copmul(D, M)),
            "bialgebra.coproduct-unit": (ein("m,mab->ab", u, D)[None], outer(u, u)[None]),
            "bialgebra.counit-multiplicative": (ein("ijm,m->ij", M, c)[..., None], outer(c, c)[..., None]),
            "bialgebra.counit-unit": (ein("i,i->", u, c)[None][None], Q(np.ones((1, 1), dtype=np.int64))),
        })
        if d.S is not None:
            eu = outer(c, u)
            t["hopf.antipode-left"] = (_antipode(D, d.S, M, left=True), eu)
            t["hopf.antipode-right"] = (_antipode(D, d.S, M, left=False), eu)
    return t


def _copmul(D, M):
    # Δ(e_i)Δ(e_j) = Σ D[i,a,b] D[j,c,d] M[a,c,p] M[b,d,q] e_p⊗e_q
    rows = []
    for i in range(D.shape[0]):  # one row at a time keeps the intermediates small
        left = _dot(D.arr[i], M.arr, ([0], [0]))          # b c p
        both = _dot(left, D.arr, ([1], [1]))              # b p j d
        rows.append(_dot(both, M.arr, ([0, 3], [0, 1])).transpose(1, 0, 2))  # j p q
    return Q(np.stack(rows), D.den * D.den * M.den * M.den)


def _dot(a, b, axes):
    """Integer tensordot through float64 BLAS, exact while every partial sum stays below 2**52."""
    bound = np.tensordot(np.abs(a).astype(float), np.abs(b).astype(float), axes)
    if bound.size and bound.max() >= 2.0 ** 52:
        return np.tensordot(a, b, axes)
    return np.rint(np.tensordot(a.astype(float), b.astype(float), axes)).astype(np.int64)


def _antipode(D, S, M, left):
    if left:  # S(x₁) x₂
        SD = ein("iab,ap->ipb", D, S)
        return ein("ipb,pbq->iq", SD, M)
    SD = ein("iab,bp->iap", D, S)  # x₁ S(x₂)
    return ein("iap,apq->iq", SD, M)


def action_dense(action):
    """``R[b, a, k]``: coefficient of e_k in e_b ◁ e_a."""
    nC, nH = action.carrier.dim, action.acting.dim
    R = zeros(nC, nH, nC)
    for j, col in enumerate(action.map.matrix.columns()):
        b, a = divmod(j, nH)
        for k, c in col.items():
            R[b, a, k] = c
    return R


def coaction_dense(coaction):
    """``C[a, h, a0]``: coefficient of e_h⊗e_a0 in δ(e_a)."""
    nH, nC = coaction.coacting.dim, coaction.carrier.dim
    C = zeros(nC, nH, nC)
    for a, col in enumerate(coaction.map.matrix.columns()):
        for k, c in col.items():
            h, a0 = divmod(k, nC)
            C[a, h, a0] = c
    return C


def bicross_tables(d):
    A, B = Dense(d.A), Dense(d.B)
    R, C = action_dense(d.action), coaction_dense(d.coaction)
    # iii, tuples (a, b): Δ(b◁a) = (b₁◁a₁) a₂[-1] ⊗ b₂◁a₂[0]
    lhs3 = ein("bak,kpq->abpq", R, B.D)
    X = ein("ixy,yhz->ixhz", A.D, C)                  # a₁, a₂[-1], a₂[0]
    Y = ein("bvw,vxm->bwxm", B.D, R)                  # b₁◁a₁ = m
    XY = ein("ixhz,bwxm->ibwhzm", X, Y)
    XY = ein("ibwhzm,mhp->ibwzp", XY, B.M)            # (b₁◁a₁) a₂[-1] = p
    rhs3 = ein("ibwzp,wzq->ibpq", XY, R)
    # iv, tuples (a, b): a₁[-1] (b◁a₂) ⊗ a₁[0] = (b◁a₁) a₂[-1] ⊗ a₂[0]
    L = ein("ixy,xhz->iyhz", A.D, C)
    L = ein("iyhz,byk->ibhkz", L, R)
    lhs4 = ein("ibhkz,hkp->ibpz", L, B.M)
    Rr = ein("ixy,bxk->ibky", A.D, R)
    Rr = ein("ibky,yhz->ibkhz", Rr, C)
    rhs4 = ein("ibkhz,khp->ibpz", Rr, B.M)
    return {"bicross.compat-iii": (lhs3, rhs3), "bicross.compat-iv": (lhs4, rhs4)}


def peiffer_tables(m):
    d = m.base
    A, B = Dense(d.A), Dense(d.B)
    R, C = action_dense(d.action), coaction_dense(d.coaction)
    P = _columns_to_dense(m.phi, A.n, B.n)  # P[b, k]
    Ainv = A.S_inv()
    # cond1 (b): δ(φ(b)) = b₁ S(b₃) ⊗ φ(b₂)
    lhs1 = ein("bk,khz->bhz", P, C)
    T = ein("bpqr,rs->bpqs", B.D2, B.S)
    T = ein("bpqs,psm->bqm", T, B.M)
    rhs1 = ein("bqm,qk->bmk", T, P)
    # cond2 (a): φ(a[-1]) ⊗ a[0] = S⁻¹(a₃) a₁ ⊗ a₂
    lhs2 = ein("ahz,hk->akz", C, P)
    T = ein("apqr,rs->apqs", A.D2, Ainv)
    rhs2 = ein("apqs,spm->amq", T, A.M)
    # cond3 (b, a): φ(b◁a) = S⁻¹(a₂) φ(b) a₁
    lhs3 = ein("bak,km->bam", R, P)
    T = ein("axy,ys->axs", A.D, Ainv)
    T = ein("axs,bk->baxsk", T, P)
    T = ein("baxsk,skn->baxn", T, A.M)
    rhs3 = ein("baxn,nxm->bam", T, A.M)
    # cond4 (b, b'): b' ◁ φ(b) = b₁ b' S(b₂)
    lhs4 = ein("bk,ckm->bcm", P, R)
    T = ein("bxy,yz->bxz", B.D, B.S)
    T = ein("bxz,xcn->bczn", T, B.M)
    rhs4 = ein("bczn,nzm->bcm", T, B.M)
    return {"peiffer.cond1": (lhs1, rhs1), "peiffer.cond2": (lhs2, rhs2),
            "peiffer.cond3": (lhs3, rhs3), "peiffer.cond4": (lhs4, rhs4)}


def densify(v, shape, den):
    """Checker output as an int array scaled by ``den``; None if not representable."""
    out = np.zeros(shape, dtype=np.int64)
    for k, c in v.items():
        x = Fraction(c) * den
        if x.denominator != 1:
            return None
        out[k if isinstance(k, tuple) else (k,)] = int(x)
    return out


def compare(axioms, tables):
    """Check every tuple of every tabulated axiom against the oracle.

    Returns ``(mismatches, oracle_failures)``: tuples where checker sides
    differ from the dense values, and tuples where the oracle finds the
    identity violated.
    """
    mismatches, failures, seen = [], [], set()
    for ax in axioms:
        if ax.id not in tables:
            continue
        seen.add(ax.id)
        L, R = tables[ax.id]
        L, R = (x if isinstance(x, Q) else Q(x) for x in (L, R))
        for tup in product(*(range(n) for n in ax.dims)):
            idx = tup if tup else (0,)
            ol, orr = L.arr[idx], R.arr[idx]
            cl, cr = ax.sides(tup)
            cl, cr = densify(cl, ol.shape, L.den), densify(cr, orr.shape, R.den)
            if cl is None or cr is None or not (np.array_equal(cl, ol) and np.array_equal(cr, orr)):
                mismatches.append((ax.id, tup))
            if not np.array_equal(ol * R.den, orr * L.den):
                failures.append((ax.id, tup))
    missing = set(tables) - seen
    if missing:
        raise AssertionError(f"checker lacks axioms {sorted(missing)}")
    return mismatches, failures
