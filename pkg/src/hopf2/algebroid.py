"""Right bialgebroids over a noncommutative base and their Hopf conditions.

Conventions: the B-bimodule structure on H is ``b ▷ X ◁ b' = X s(b') t(b)``.
Three quotients of H⊗H are used:

* ``tensor_B``    (⊗_B):      X s(b) ⊗ Y = X ⊗ Y t(b)
* ``tensor_Bop``  (⊗_{B^op}): X t(b) ⊗ Y = X ⊗ t(b) Y
* ``tensor_sBop`` (⊗^{B^op}): s(b) X ⊗ Y = X ⊗ Y s(b)

The coproduct is stored as one ambient representative per basis element and
every equality in a quotient is decided on projected coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping

from .exactlin import DimensionError, SingularMatrixError, axpy, invert_matrix
from .hopfcore import HopfData
from .report import Axiom, AxiomResult, CheckReport, ConstructionError, Witness, run_axioms
from .tensorspace import LinearMap, QuotientSpace, extend, flatten, otimes

Tensor2 = dict  # (i, j) -> Fraction


class RightBialgebroid:
    """A right bialgebroid ``(H, B, s, t, ▲, ε)``.

    ``coproduct[i]`` is an ambient representative of ▲(e_i) in H⊗H.
    ``translation[i]`` and ``anti_translation[i]`` optionally hold candidate
    values of λ⁻¹(1 ⊗_B e_i) and μ⁻¹(e_i ⊗_B 1).
    """

    def __init__(
        self,
        total: HopfData,
        base: HopfData,
        source: LinearMap,
        target: LinearMap,
        coproduct: Mapping[int, Mapping[tuple[int, int], object]],
        counit: LinearMap,
        full_antipode: LinearMap | None = None,
        translation: Mapping[int, Mapping] | None = None,
        anti_translation: Mapping[int, Mapping] | None = None,
        name: str = "",
    ):
        n, nb = total.dim, base.dim
        for label, m, shape in (
            ("source", source, (nb, n)),
            ("target", target, (nb, n)),
            ("algebroid_counit", counit, (n, nb)),
        ):
            if (m.domain.dim, m.codomain.dim) != shape:
                raise DimensionError(label, f"expected a map of dimension {shape[0]} -> {shape[1]}")
        if full_antipode is not None and (full_antipode.domain.dim, full_antipode.codomain.dim) != (n, n):
            raise DimensionError("full_antipode", f"expected an {n}x{n} map")
        self.total = total
        self.base = base
        self.source = source
        self.target = target
        self.counit = counit
        self.full_antipode = full_antipode
        self.name = name
        self.coproduct = {i: self._tensor2(coproduct.get(i, {}), "algebroid_coproduct") for i in range(n)}
        self.translation = (
            {i: self._tensor2(translation.get(i, {}), "translation") for i in range(n)} if translation else None
        )
        self.anti_translation = (
            {i: self._tensor2(anti_translation.get(i, {}), "anti_translation") for i in range(n)}
            if anti_translation else None
        )
        self._xs = [[total.mul(total.basis(x), source.image(b)) for b in range(nb)] for x in range(n)]
        self._xt = [[total.mul(total.basis(x), target.image(b)) for b in range(nb)] for x in range(n)]
        self._sx = [[total.mul(source.image(b), total.basis(x)) for b in range(nb)] for x in range(n)]
        self._tx = [[total.mul(target.image(b), total.basis(x)) for b in range(nb)] for x in range(n)]

    def _tensor2(self, v: Mapping, what: str) -> dict:
        n = self.total.dim
        out = {}
        for k, c in v.items():
            if not (isinstance(k, tuple) and len(k) == 2 and all(0 <= x < n for x in k)):
                raise DimensionError(what, f"bad index pair {k!r}")
            q = Fraction(c)
            if q:
                out[k] = q
        return out

    # -- quotient spaces -------------------------------------------------------
    @property
    def n(self) -> int:
        return self.total.dim

    def _relations(self, left: Callable[[int, int], dict], right: Callable[[int, int], dict]):
        """Generators ``left(X, b) ⊗ Y − X ⊗ right(Y, b)`` over all basis X, b, Y."""
        n, nb = self.n, self.base.dim
        e = self.total.basis
        for x in range(n):
            for b in range(nb):
                for y in range(n):
                    t = otimes(left(x, b), e(y))
                    axpy(t, -1, otimes(e(x), right(y, b)))
                    yield flatten(t, (n, n))

    @cached_property
    def tensor_B(self) -> QuotientSpace:
        sp = self.total.space @ self.total.space
        return QuotientSpace(sp, self._relations(lambda x, b: self._xs[x][b], lambda y, b: self._xt[y][b]))

    @cached_property
    def tensor_Bop(self) -> QuotientSpace:
        sp = self.total.space @ self.total.space
        return QuotientSpace(sp, self._relations(lambda x, b: self._xt[x][b], lambda y, b: self._tx[y][b]))

    @cached_property
    def tensor_sBop(self) -> QuotientSpace:
        sp = self.total.space @ self.total.space
        return QuotientSpace(sp, self._relations(lambda x, b: self._sx[x][b], lambda y, b: self._xs[y][b]))

    @cached_property
    def tensor_B3(self) -> QuotientSpace:
        """H ⊗_B H ⊗_B H realised as (H ⊗_B H) ⊗ H modulo q s(b) ⊗ Z = q ⊗ Z t(b)."""
        Q = self.tensor_B
        n, nb = self.n, self.base.dim
        amb = Q.space @ self.total.space

        def q_times_s(q: int, b: int) -> dict:
            i, j = divmod(Q.basis_indices[q], n)
            return Q.project(flatten(otimes({i: 1}, self._xs[j][b]), (n, n)))

        def gens():
            for q in range(Q.dim):
                for b in range(nb):
                    left = q_times_s(q, b)
                    for z in range(n):
                        t = otimes(left, {z: 1})
                        axpy(t, -1, otimes({q: 1}, self._xt[z][b]))
                        yield flatten(t, (Q.dim, n))

        return QuotientSpace(amb, gens())

    def project(self, t: Mapping[tuple[int, int], Fraction]) -> dict:
        return self.tensor_B.project(flatten(t, (self.n, self.n)))

    def project3(self, t: Mapping[tuple[int, int, int], Fraction]) -> dict:
        Q, n = self.tensor_B, self.n
        out: dict = {}
        for (i, j, k), c in t.items():
            for q, x in Q.project_basis(i * n + j).items():
                axpy(out, c * x, {q * n + k: 1})
        return self.tensor_B3.project(out)

    # -- structure maps --------------------------------------------------------
    def s(self, b: Mapping) -> dict:
        return self.source(b)

    def t(self, b: Mapping) -> dict:
        return self.target(b)

    def eps(self, x: Mapping) -> dict:
        return self.counit(x)

    def cop(self, x: Mapping) -> dict:
        return extend(x, lambda i: self.coproduct[i])

    def tmul(self, u: Mapping, v: Mapping) -> dict:
        """Factorwise product of two elements of H⊗H."""
        H = self.total
        out: dict = {}
        for (a, b), c in u.items():
            for (a2, b2), c2 in v.items():
                axpy(out, c * c2, otimes(H.mul_basis(a, a2), H.mul_basis(b, b2)))
        return out

    def __repr__(self) -> str:
        return f"RightBialgebroid({self.name or '?'}, dim={self.n} over {self.base.dim})"


def build_right_bialgebroid(total, base, source, target, coproduct, counit, **kw) -> RightBialgebroid:
    """Construct and certify that ▲ is a B-bimodule map into H ⊗_B H."""
    r = RightBialgebroid(total, base, source, target, coproduct, counit, **kw)
    res = run_axioms([coproduct_bilinear_axiom(r)])
    if not res.passed:
        raise ConstructionError("coproduct is not B-bilinear over ⊗_B", res)
    return r


# -- axioms ---------------------------------------------------------------------

def _unit_of(h: HopfData) -> dict:
    return dict(h.unit)


def coproduct_bilinear_axiom(r: RightBialgebroid) -> Axiom:
    H, n, nb = r.total, r.n, r.base.dim
    one = _unit_of(H)

    def lhs(x, b):
        return {
            ("s",) + (q,): c for q, c in r.project(r.cop(r._xs[x][b])).items()
        } | {("t",) + (q,): c for q, c in r.project(r.cop(r._xt[x][b])).items()}

    def rhs(x, b):
        right_s = r.tmul(r.coproduct[x], otimes(one, r.source.image(b)))
        right_t = r.tmul(r.coproduct[x], otimes(r.target.image(b), one))
        return {("s", q): c for q, c in r.project(right_s).items()} | {
            ("t", q): c for q, c in r.project(right_t).items()
        }

    return Axiom("bialgebroid.coproduct-bilinear", (n, nb), lhs, rhs)


def bialgebroid_axioms(r: RightBialgebroid) -> list[Axiom]:
    H, B = r.total, r.base
    n, nb = H.dim, B.dim
    e, eb = H.basis, B.basis
    one = _unit_of(H)

    def counit_bilinear_lhs(x, b):
        return {("s", k): c for k, c in r.eps(r._xs[x][b]).items()} | {
            ("t", k): c for k, c in r.eps(r._xt[x][b]).items()
        }

    def counit_bilinear_rhs(x, b):
        ex = r.counit.image(x)
        return {("s", k): c for k, c in B.mul(ex, eb(b)).items()} | {
            ("t", k): c for k, c in B.mul(eb(b), ex).items()
        }

    def coassoc_lhs(x):  # (▲ ⊗_B id) ▲
        return r.project3(extend(r.coproduct[x], lambda k: otimes(r.coproduct[k[0]], e(k[1]))))

    def coassoc_rhs(x):  # (id ⊗_B ▲) ▲
        return r.project3(extend(r.coproduct[x], lambda k: otimes(e(k[0]), r.coproduct[k[1]])))

    def counit_left(x):  # (ε ⊗_B id)▲(X) = X⁽²⁾ t(ε(X⁽¹⁾))
        return extend(r.coproduct[x], lambda k: H.mul(e(k[1]), r.t(r.counit.image(k[0]))))

    def counit_right(x):  # (id ⊗_B ε)▲(X) = X⁽¹⁾ s(ε(X⁽²⁾))
        return extend(r.coproduct[x], lambda k: H.mul(e(k[0]), r.s(r.counit.image(k[1]))))

    def takeuchi_lhs(x, b):
        return r.project(r.tmul(otimes(r.source.image(b), one), r.coproduct[x]))

    def takeuchi_rhs(x, b):
        return r.project(r.tmul(otimes(one, r.target.image(b)), r.coproduct[x]))

    return [
        Axiom("bialgebroid.source-multiplicative", (nb, nb),
              lambda b, c: r.s(B.mul_basis(b, c)), lambda b, c: H.mul(r.source.image(b), r.source.image(c))),
        Axiom("bialgebroid.source-unit", (), lambda: r.s(B.unit), lambda: one),
        Axiom("bialgebroid.target-antimultiplicative", (nb, nb),
              lambda b, c: r.t(B.mul_basis(b, c)), lambda b, c: H.mul(r.target.image(c), r.target.image(b))),
        Axiom("bialgebroid.target-unit", (), lambda: r.t(B.unit), lambda: one),
        Axiom("bialgebroid.commuting-ranges", (nb, nb),
              lambda b, c: H.mul(r.source.image(b), r.target.image(c)),
              lambda b, c: H.mul(r.target.image(c), r.source.image(b))),
        coproduct_bilinear_axiom(r),
        Axiom("bialgebroid.counit-bilinear", (n, nb), counit_bilinear_lhs, counit_bilinear_rhs),
        Axiom("bialgebroid.coassociativity", (n,), coassoc_lhs, coassoc_rhs),
        Axiom("bialgebroid.counit-left", (n,), counit_left, e),
        Axiom("bialgebroid.counit-right", (n,), counit_right, e),
        Axiom("bialgebroid.takeuchi-membership", (n, nb), takeuchi_lhs, takeuchi_rhs),
        Axiom("bialgebroid.coproduct-multiplicative", (n, n),
              lambda x, y: r.project(r.cop(H.mul_basis(x, y))),
              lambda x, y: r.project(r.tmul(r.coproduct[x], r.coproduct[y]))),
        Axiom("bialgebroid.coproduct-unit", (), lambda: r.project(r.cop(one)), lambda: r.project(otimes(one, one))),
        Axiom("bialgebroid.counit-unit", (), lambda: r.eps(one), lambda: dict(B.unit)),
        Axiom("bialgebroid.counit-character-source", (n, n),
              lambda x, y: r.eps(H.mul(r.s(r.counit.image(x)), e(y))),
              lambda x, y: r.eps(H.mul_basis(x, y))),
        Axiom("bialgebroid.counit-character-target", (n, n),
              lambda x, y: r.eps(H.mul(r.t(r.counit.image(x)), e(y))),
              lambda x, y: r.eps(H.mul_basis(x, y))),
    ]


def check_bialgebroid_axioms(r: RightBialgebroid) -> CheckReport:
    """Coring laws, Takeuchi membership, multiplicativity and the right-character counit.

    Takeuchi membership of ▲(X) is tested as membership of
    ``(s(b)⊗1 − 1⊗t(b))·▲(X)`` in the ⊗_B relation span, for every basis b.
    """
    return run_axioms(bialgebroid_axioms(r))


# -- canonical maps ---------------------------------------------------------------

@dataclass
class CanonicalMaps:
    lambda_: LinearMap | None = None
    lambda_inv: LinearMap | None = None
    mu: LinearMap | None = None
    mu_inv: LinearMap | None = None


def _descend(name: str, dom: QuotientSpace, cod: QuotientSpace, fn: Callable[[int, int], dict], n: int):
    """Induce the ambient map ``fn`` (on basis pairs) between quotients.

    Returns ``(map or None, AxiomResult)`` for the well-definedness check.
    """
    cache: dict[int, dict] = {}

    def image(j: int) -> dict:
        v = cache.get(j)
        if v is None:
            v = cache[j] = cod.project(flatten(fn(*divmod(j, n)), (n, n)))
        return v

    for idx, rel in enumerate(dom.relations):
        out: dict = {}
        for j, c in rel.items():
            axpy(out, c, image(j))
        if out:
            return None, AxiomResult(name, False, Witness((idx,), rel, out, note="relation not annihilated"))
    m = LinearMap.from_function(dom.space, cod.space, lambda q: image(dom.basis_indices[q]))
    return m, AxiomResult(name, True)


def _identity_check(name: str, m: LinearMap | None) -> AxiomResult:
    if m is None:
        return AxiomResult(name, False, detail="map unavailable")
    if m.matrix.rows != m.matrix.cols:
        return AxiomResult(name, False, detail=f"shape {m.matrix.shape} is not square")
    for j, col in enumerate(m.matrix.columns()):
        if col != {j: 1}:
            return AxiomResult(name, False, Witness((j,), dict(col), {j: Fraction(1)}))
    return AxiomResult(name, True)


def _invert(name: str, m: LinearMap | None):
    if m is None:
        return None, AxiomResult(name, False, detail="map unavailable")
    if m.matrix.rows != m.matrix.cols:
        return None, AxiomResult(name, False, detail=f"dimensions {m.domain.dim} -> {m.codomain.dim} differ")
    try:
        inv = invert_matrix(m.matrix)
    except SingularMatrixError as err:
        return None, AxiomResult(name, False, Witness((), err.kernel_vector, {}, note="kernel vector"))
    return LinearMap(m.codomain, m.domain, inv), AxiomResult(name, True)


def _canonical(r: RightBialgebroid, which: str, candidate) -> tuple[LinearMap | None, LinearMap | None, CheckReport]:
    H, n = r.total, r.n
    e = H.basis
    report = CheckReport()
    if which == "lambda":
        prefix, dom, sym = "right-hopf.lambda", r.tensor_Bop, "λ"

        def forward(x, y):  # X Y⁽¹⁾ ⊗_B Y⁽²⁾
            return extend(r.coproduct[y], lambda k: otimes(H.mul_basis(x, k[0]), e(k[1])))

        def backward(y, x):  # Y X₋ ⊗ X₊
            return extend(candidate[x], lambda k: otimes(H.mul_basis(y, k[0]), e(k[1])))
    else:
        prefix, dom, sym = "anti-right-hopf.mu", r.tensor_sBop, "μ"

        def forward(x, y):  # X⁽¹⁾ ⊗_B Y X⁽²⁾
            return extend(r.coproduct[x], lambda k: otimes(e(k[0]), H.mul_basis(y, k[1])))

        def backward(x, z):  # X₍₊₎ ⊗ Z X₍₋₎
            return extend(candidate[x], lambda k: otimes(e(k[0]), H.mul_basis(z, k[1])))

    fwd, res = _descend(f"{prefix}-well-defined", dom, r.tensor_B, forward, n)
    report.add(res)
    inv, res = _invert(f"{prefix}-invertible", fwd)
    report.add(res)
    if candidate is not None:
        cand, res = _descend(f"{prefix}-inverse-well-defined", r.tensor_B, dom, backward, n)
        report.add(res)
        ok = fwd is not None and cand is not None
        report.add(_identity_check(f"{prefix}-inverse-right", fwd @ cand if ok else None))
        report.add(_identity_check(f"{prefix}-inverse-left", cand @ fwd if ok else None))
        if ok and report.passed:
            inv = cand
    return fwd, inv, report


def check_lambda_bijective(r: RightBialgebroid, candidate: Mapping[int, Mapping] | None = None):
    """Build λ: H ⊗_{B^op} H → H ⊗_B H and decide invertibility exactly.

    ``candidate[i]`` is a proposed λ⁻¹(1 ⊗_B e_i); by left H-linearity this
    determines λ⁻¹(Y ⊗_B X) = Y X₋ ⊗ X₊.  Returns ``(CanonicalMaps, report)``.
    """
    if candidate is None:
        candidate = r.translation
    lam, inv, report = _canonical(r, "lambda", candidate)
    return CanonicalMaps(lambda_=lam, lambda_inv=inv if report.passed else None), report


def check_mu_bijective(r: RightBialgebroid, candidate: Mapping[int, Mapping] | None = None):
    """Same as :func:`check_lambda_bijective` for μ: H ⊗^{B^op} H → H ⊗_B H.

    ``candidate[i]`` is a proposed μ⁻¹(e_i ⊗_B 1) = X₍₊₎ ⊗ X₍₋₎, extended by
    μ⁻¹(X ⊗_B Z) = X₍₊₎ ⊗ Z X₍₋₎.
    """
    if candidate is None:
        candidate = r.anti_translation
    mu, inv, report = _canonical(r, "mu", candidate)
    return CanonicalMaps(mu=mu, mu_inv=inv if report.passed else None), report


def check_full_hopf_antipode(r: RightBialgebroid, S: LinearMap | None = None) -> CheckReport:
    S = S if S is not None else r.full_antipode
    report = CheckReport()
    if S is None:
        report.add(AxiomResult("full-antipode.invertible", False, detail="no full antipode supplied"))
        return report
    H, B = r.total, r.base
    n, nb = H.dim, B.dim
    e = H.basis
    one = _unit_of(H)
    Sinv, res = _invert("full-antipode.invertible", S)
    report.add(res)
    report.extend(run_axioms([
        Axiom("full-antipode.anti-multiplicative", (n, n),
              lambda x, y: S(H.mul_basis(x, y)), lambda x, y: H.mul(S.image(y), S.image(x))),
        Axiom("full-antipode.unit", (), lambda: S(one), lambda: one),
        Axiom("full-antipode.source-target", (nb,), lambda b: S(r.target.image(b)), lambda b: dict(r.source.image(b))),
    ]))
    if Sinv is None:
        for name in ("full-antipode.mixed-coproduct-inverse", "full-antipode.mixed-coproduct"):
            report.add(AxiomResult(name, False, detail="antipode not invertible"))
        return report

    # Y ⊗ Z ↦ Z S⁻¹(Y)⁽¹⁾ ⊗_B S⁻¹(Y)⁽²⁾
    def mixed_inv(y, z):
        return r.tmul(otimes(e(z), one), r.cop(Sinv.image(y)))

    # Y ⊗ Z ↦ S(Z)⁽¹⁾ ⊗_B Y S(Z)⁽²⁾
    def mixed(y, z):
        return r.tmul(otimes(one, e(y)), r.cop(S.image(z)))

    Q = r.tensor_B
    f1, res1 = _descend("full-antipode.mixed-coproduct-inverse", Q, Q, mixed_inv, n)
    f2, res2 = _descend("full-antipode.mixed-coproduct", Q, Q, mixed, n)
    for f, res, fn, rhs in (
        (f1, res1, mixed_inv, lambda x: r.project(otimes(one, Sinv.image(x)))),
        (f2, res2, mixed, lambda x: r.project(otimes(S.image(x), one))),
    ):
        if not res.passed:
            report.add(res)
            continue
        report.add(Axiom(res.id, (n,),
                         lambda x, fn=fn: r.project(extend(r.coproduct[x], lambda k: fn(*k))), rhs).check())
    return report
