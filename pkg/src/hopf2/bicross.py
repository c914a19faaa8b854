"""Bicrossproducts, bicrossed modules and the resulting Hopf 2-algebras.

The bicrossproduct ``A⋈B`` lives on the basis ``a_i⊗b_j`` in row-major order
(index ``i * dim B + j``).  ``B`` is a right A-module algebra via ``b ◁ a`` and
``A`` is a left B-comodule coalgebra via ``δ(a) = a[-1] ⊗ a[0]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebroid import (
    CanonicalMaps,
    RightBialgebroid,
    build_right_bialgebroid,
    check_bialgebroid_axioms,
    check_full_hopf_antipode,
    check_lambda_bijective,
    check_mu_bijective,
)
from .exactlin import DimensionError, SingularMatrixError, axpy, matrix_power
from .hopfcore import (
    ActionData,
    CoactionData,
    HopfData,
    action_axioms,
    coaction_axioms,
    inverse_antipode,
    trivial_action,
    trivial_coaction,
    variant,
)
from .report import Axiom, AxiomResult, CheckReport, ConstructionError, Witness, run_axioms
from .tensorspace import LinearMap, extend, otimes


def _keyed(**parts: Mapping) -> dict:
    """Merge several sparse elements into one, tagging keys by part name."""
    out = {}
    for name, v in parts.items():
        for k, c in v.items():
            out[(name,) + (k if isinstance(k, tuple) else (k,))] = c
    return out


def _scalar(c) -> dict:
    return {0: Fraction(c)} if c else {}


@dataclass(frozen=True, eq=False)
class BicrossData:
    A: HopfData
    B: HopfData
    action: ActionData  # B ⊗ A → B
    coaction: CoactionData  # A → B ⊗ A

    def __post_init__(self):
        if self.action.acting is not self.A and self.action.acting.dim != self.A.dim:
            raise DimensionError("action", "acting algebra must be A")
        if self.action.carrier.dim != self.B.dim:
            raise DimensionError("action", "carrier must be B")
        if self.coaction.coacting.dim != self.B.dim or self.coaction.carrier.dim != self.A.dim:
            raise DimensionError("coaction", "must be a B-coaction on A")

    def act(self, b: Mapping, a: Mapping) -> dict:
        return self.action.act(b, a)

    def coact(self, a: Mapping) -> dict:
        return self.coaction.coact(a)


def trivial_bicross(A: HopfData, B: HopfData) -> BicrossData:
    """Trivial action and coaction; the bicrossproduct is the tensor product Hopf algebra."""
    return BicrossData(A, B, trivial_action(A, B), trivial_coaction(B, A))


def bicross_axioms(d: BicrossData) -> list[Axiom]:
    A, B = d.A, d.B
    nA, nB = A.dim, B.dim
    act, coact = d.action.act_basis, d.coaction.coact_basis

    def compat_iii_rhs(a, b):  # (b₁◁a₁) a₂[-1] ⊗ b₂◁a₂[0]
        out: dict = {}
        for (a1, a2), x in A.delta_basis(a).items():
            for (h, a0), y in coact(a2).items():
                for (b1, b2), z in B.delta_basis(b).items():
                    axpy(out, x * y * z, otimes(B.mul(act(b1, a1), B.basis(h)), act(b2, a0)))
        return out

    def compat_iv_lhs(a, b):  # a₁[-1] (b◁a₂) ⊗ a₁[0]
        out: dict = {}
        for (a1, a2), x in A.delta_basis(a).items():
            for (h, a0), y in coact(a1).items():
                axpy(out, x * y, otimes(B.mul(B.basis(h), act(b, a2)), A.basis(a0)))
        return out

    def compat_iv_rhs(a, b):  # (b◁a₁) a₂[-1] ⊗ a₂[0]
        out: dict = {}
        for (a1, a2), x in A.delta_basis(a).items():
            for (h, a0), y in coact(a2).items():
                axpy(out, x * y, otimes(B.mul(act(b, a1), B.basis(h)), A.basis(a0)))
        return out

    return action_axioms(d.action) + coaction_axioms(d.coaction) + [
        Axiom("bicross.counit-action", (nA, nB),
              lambda a, b: _scalar(B.eps(act(b, a))),
              lambda a, b: _scalar(B.counit.get(b, 0) * A.counit.get(a, 0))),
        Axiom("bicross.coaction-unit", (), lambda: d.coact(A.unit), lambda: otimes(B.unit, A.unit)),
        Axiom("bicross.compat-iii", (nA, nB), lambda a, b: B.delta(act(b, a)), compat_iii_rhs),
        Axiom("bicross.compat-iv", (nA, nB), compat_iv_lhs, compat_iv_rhs),
    ]


def check_bicross_conditions(d: BicrossData) -> CheckReport:
    """Module/comodule laws, then the counit/unit and the two compatibility conditions.

    Compatibility conditions iterate over basis pairs ``(a, b)``.
    """
    return run_axioms(bicross_axioms(d))


def build_bicrossproduct(d: BicrossData, check: bool = True) -> HopfData:
    if check:
        report = check_bicross_conditions(d)
        if not report.passed:
            raise ConstructionError("bicrossproduct preconditions fail", report)
    A, B = d.A, d.B
    nA, nB = A.dim, B.dim
    act, coact = d.action.act_basis, d.coaction.coact_basis

    def pair(a: Mapping, b: Mapping) -> dict:
        return {i * nB + j: x * y for i, x in a.items() for j, y in b.items()}

    mult = {}
    for i in range(nA * nB):
        a, b = divmod(i, nB)
        for j in range(nA * nB):
            a2, b2 = divmod(j, nB)
            out: dict = {}
            for (p, q), c in A.delta_basis(a2).items():  # a a'₁ ⊗ (b◁a'₂) b'
                axpy(out, c, pair(A.mul_basis(a, p), B.mul(act(b, q), B.basis(b2))))
            if out:
                mult[(i, j)] = out

    comult = {}
    for i in range(nA * nB):
        a, b = divmod(i, nB)
        out = {}
        for (a1, a2), x in A.delta_basis(a).items():  # (a₁ ⊗ a₂[-1] b₁) ⊗ (a₂[0] ⊗ b₂)
            for (h, a0), y in coact(a2).items():
                for (b1, b2), z in B.delta_basis(b).items():
                    for k, w in B.mul_basis(h, b1).items():
                        axpy(out, x * y * z * w, {(a1 * nB + k, a0 * nB + b2): 1})
        comult[i] = out

    counit = {i: A.counit.get(i // nB, 0) * B.counit.get(i % nB, 0) for i in range(nA * nB)}
    space = A.space @ B.space
    antipode = None
    if A.antipode is not None and B.antipode is not None:
        def S(i: int) -> dict:  # S_A(a[0]₂) ⊗ S_B(a[-1] b) ◁ S_A(a[0]₁)
            a, b = divmod(i, nB)
            out: dict = {}
            for (h, a0), x in coact(a).items():
                sb = B.S(B.mul_basis(h, b))
                for (p, q), y in A.delta_basis(a0).items():
                    axpy(out, x * y, pair(A.S(A.basis(q)), d.act(sb, A.S(A.basis(p)))))
            return out
        antipode = LinearMap.from_function(space, space, S)
    name = f"{A.name}⋈{B.name}" if A.name and B.name else ""
    relations = "; ".join(dict.fromkeys(x for x in (A.relations, B.relations) if x))
    return HopfData(space=space, mult=mult, unit=pair(A.unit, B.unit), comult=comult,
                    counit=counit, antipode=antipode, name=name, relations=relations)


# -- bicrossed modules ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BicrossedModule:
    base: BicrossData
    phi: LinearMap  # B → A

    def __post_init__(self):
        if self.phi.domain.dim != self.base.B.dim or self.phi.codomain.dim != self.base.A.dim:
            raise DimensionError("phi", "must map B to A")


def peiffer_axioms(m: BicrossedModule, A_inv: LinearMap) -> list[Axiom]:
    d, phi = m.base, m.phi
    A, B = d.A, d.B
    nA, nB = A.dim, B.dim
    act, coact = d.action.act_basis, d.coaction.coact_basis

    def phi_coalg_lhs(b):
        return _keyed(delta=A.delta(phi.image(b)), counit=_scalar(A.eps(phi.image(b))))

    def phi_coalg_rhs(b):
        return _keyed(delta=extend(B.delta_basis(b), lambda k: otimes(phi.image(k[0]), phi.image(k[1]))),
                      counit=_scalar(B.counit.get(b, 0)))

    def cond1_rhs(b):  # b₁ S(b₃) ⊗ φ(b₂)
        return extend(B.delta2(B.basis(b)), lambda k: otimes(B.mul(B.basis(k[0]), B.S(B.basis(k[2]))), phi.image(k[1])))

    def cond2_lhs(a):  # φ(a[-1]) ⊗ a[0]
        return extend(coact(a), lambda k: otimes(phi.image(k[0]), A.basis(k[1])))

    def cond2_rhs(a):  # S⁻¹(a₃) a₁ ⊗ a₂
        return extend(A.delta2(A.basis(a)), lambda k: otimes(A.mul(A_inv.image(k[2]), A.basis(k[0])), A.basis(k[1])))

    def cond3_rhs(b, a):  # S⁻¹(a₂) φ(b) a₁
        return extend(A.delta_basis(a), lambda k: A.prod(A_inv.image(k[1]), phi.image(b), A.basis(k[0])))

    def cond4_rhs(b, b2):  # b₁ b′ S(b₂)
        return extend(B.delta_basis(b), lambda k: B.prod(B.basis(k[0]), B.basis(b2), B.S(B.basis(k[1]))))

    return [
        Axiom("peiffer.phi-antimultiplicative", (nB, nB),
              lambda b, c: phi(B.mul_basis(b, c)), lambda b, c: A.mul(phi.image(c), phi.image(b))),
        Axiom("peiffer.phi-unit", (), lambda: phi(B.unit), lambda: dict(A.unit)),
        Axiom("peiffer.phi-coalgebra", (nB,), phi_coalg_lhs, phi_coalg_rhs),
        Axiom("peiffer.cond1", (nB,), lambda b: d.coact(phi.image(b)), cond1_rhs),
        Axiom("peiffer.cond2", (nA,), cond2_lhs, cond2_rhs),
        Axiom("peiffer.cond3", (nB, nA), lambda b, a: phi(act(b, a)), cond3_rhs),
        Axiom("peiffer.cond4", (nB, nB), lambda b, b2: d.act(B.basis(b2), phi.image(b)), cond4_rhs),
    ]


def check_peiffer(m: BicrossedModule) -> CheckReport:
    """φ as a bialgebra map B^op → A, and the four Peiffer-type conditions.

    Multiplicativity is checked against the reversed product of B; the
    coalgebra of B is left unchanged.
    """
    report = CheckReport()
    try:
        A_inv = inverse_antipode(m.base.A)
    except SingularMatrixError as err:
        report.add(AxiomResult("peiffer.antipode-invertible", False,
                               Witness((), err.kernel_vector, {}, note="kernel vector")))
        return report
    report.add(AxiomResult("peiffer.antipode-invertible", True))
    return report.extend(run_axioms(peiffer_axioms(m, A_inv)))


# -- Hopf 2-algebras ----------------------------------------------------------------

@dataclass(eq=False)
class Hopf2Algebra:
    hopf: HopfData
    algebroid: RightBialgebroid
    canonical: CanonicalMaps = field(default_factory=CanonicalMaps)
    full_antipode: LinearMap | None = None
    name: str = ""
    module: BicrossedModule | None = None

    def __repr__(self) -> str:
        return f"Hopf2Algebra({self.name or '?'}, dim={self.hopf.dim} over {self.algebroid.base.dim})"


def build_hopf2(m: BicrossedModule, verify: bool = True) -> Hopf2Algebra:
    """Assemble the Hopf 2-algebra of a bicrossed module.

    Over B: ``s(b) = 1⊗b``, ``t(b) = φ(b₁)⊗b₂``, ``▲(a⊗b) = (a₁⊗1) ⊗_B (a₂⊗b)``,
    ``ε(a⊗b) = ε(a) b``.  The λ⁻¹ and μ⁻¹ candidates are installed; the full
    antipode ``φ(b₁)S(a₂) ⊗ b₂◁S(a₁)`` only when ``S_A² = id``.  With
    ``verify`` every stage is checked and the first failing report aborts.
    """
    d, phi = m.base, m.phi
    A, B = d.A, d.B
    nA, nB = A.dim, B.dim
    if verify:
        report = check_peiffer(m)
        if not report.passed:
            raise ConstructionError("bicrossed module conditions fail", report)
    H = build_bicrossproduct(d, check=verify)
    A_inv = inverse_antipode(A)
    act = d.action.act_basis

    def pair(a: Mapping, b: Mapping) -> dict:
        return {i * nB + j: x * y for i, x in a.items() for j, y in b.items()}

    source = LinearMap.from_function(B.space, H.space, lambda b: pair(A.unit, B.basis(b)))
    target = LinearMap.from_function(
        B.space, H.space, lambda b: extend(B.delta_basis(b), lambda k: pair(phi.image(k[0]), B.basis(k[1]))))
    counit = LinearMap.from_function(H.space, B.space, lambda i: {i % nB: A.counit[i // nB]} if A.counit.get(i // nB) else {})

    coproduct, translation, anti_translation = {}, {}, {}
    for i in range(nA * nB):
        a, b = divmod(i, nB)
        cop, tr, at = {}, {}, {}
        for (a1, a2), x in A.delta_basis(a).items():
            axpy(cop, x, otimes(pair(A.basis(a1), B.unit), {a2 * nB + b: 1}))
            axpy(tr, x, otimes(pair(A.S(A.basis(a1)), B.unit), {a2 * nB + b: 1}))
        # (a₁⊗1) ⊗ (φ(b₁) S⁻¹(a₃) ⊗ b₂ ◁ S⁻¹(a₂))
        for (a1, a2, a3), x in A.delta2(A.basis(a)).items():
            for (b1, b2), y in B.delta_basis(b).items():
                right = pair(A.mul(phi.image(b1), A_inv.image(a3)), d.act(B.basis(b2), A_inv.image(a2)))
                axpy(at, x * y, otimes(pair(A.basis(a1), B.unit), right))
        coproduct[i], translation[i], anti_translation[i] = cop, tr, at

    full = None
    if A.antipode is not None and matrix_power(A.antipode.matrix, 2).is_identity():
        full = candidate_full_antipode(m, H)

    name = f"{A.name}⋈{B.name}" if A.name and B.name else ""
    r = RightBialgebroid(H, B, source, target, coproduct, counit, full_antipode=full,
                         translation=translation, anti_translation=anti_translation, name=name)
    if not verify:
        return Hopf2Algebra(H, r, CanonicalMaps(), full, name, m)
    r = build_right_bialgebroid(H, B, source, target, coproduct, counit, full_antipode=full,
                                translation=translation, anti_translation=anti_translation, name=name)
    report = check_bialgebroid_axioms(r)
    lam, rep_l = check_lambda_bijective(r)
    mu, rep_m = check_mu_bijective(r)
    report.extend(rep_l).extend(rep_m)
    if full is not None:
        report.extend(check_full_hopf_antipode(r, full))
    if not report.passed:
        raise ConstructionError("Hopf algebroid structure fails", report)
    canonical = CanonicalMaps(lam.lambda_, lam.lambda_inv, mu.mu, mu.mu_inv)
    return Hopf2Algebra(H, r, canonical, full, name, m)


def candidate_full_antipode(m: BicrossedModule, H: HopfData | None = None) -> LinearMap:
    """``S(a⊗b) = φ(b₁)S(a₂) ⊗ b₂◁S(a₁)`` evaluated without checking ``S_A² = id``.

    :func:`build_hopf2` installs this map only under that hypothesis; calling
    it directly is useful for diagnosing instances where it fails.
    """
    d, phi = m.base, m.phi
    A, B = d.A, d.B
    nB = B.dim
    if H is None:
        H = build_bicrossproduct(d, check=False)

    def S(i: int) -> dict:
        a, b = divmod(i, nB)
        out: dict = {}
        for (a1, a2), x in A.delta_basis(a).items():
            for (b1, b2), y in B.delta_basis(b).items():
                left = A.mul(phi.image(b1), A.S(A.basis(a2)))
                right = d.act(B.basis(b2), A.S(A.basis(a1)))
                axpy(out, x * y, {p * nB + q: u * v for p, u in left.items() for q, v in right.items()})
        return out

    return LinearMap.from_function(H.space, H.space, S)


def _flip_certificate(h: Hopf2Algebra) -> AxiomResult:
    """Certify (Δ ⊗_B Δ) followed by the middle flip descends to (H⊗_B H)⊗(H⊗_B H).

    Relations of ⊗_{B⊗B} are legwise ⊗_B relations, so the flip descends once
    each legwise pair is identified in H⊗_B H; the composite with Δ⊗Δ must
    then annihilate every ⊗_B relation generator.
    """
    r, H = h.algebroid, h.hopf
    n = H.dim
    Q = r.tensor_B
    name = "hopf2.flip-well-defined"
    for idx, rel in enumerate(Q.relations):
        if Q.project(rel):
            return AxiomResult(name, False, Witness((idx,), rel, Q.project(rel), note="legwise relation survives"))
    cache: dict[int, dict] = {}

    def image(j: int) -> dict:  # Y⊗Z ↦ P(Y₁⊗Z₁) ⊗ P(Y₂⊗Z₂)
        v = cache.get(j)
        if v is None:
            y, z = divmod(j, n)
            v = {}
            for (y1, y2), c in H.delta_basis(y).items():
                for (z1, z2), c2 in H.delta_basis(z).items():
                    axpy(v, c * c2, otimes(Q.project_basis(y1 * n + z1), Q.project_basis(y2 * n + z2)))
            cache[j] = v
        return v

    for idx, rel in enumerate(Q.relations):
        out: dict = {}
        for j, c in rel.items():
            axpy(out, c, image(j))
        if out:
            return AxiomResult(name, False, Witness((idx,), rel, out, note="relation not annihilated"))
    return AxiomResult(name, True)


def hopf2_axioms(h: Hopf2Algebra) -> list[Axiom]:
    H, r = h.hopf, h.algebroid
    B = r.base
    n, nB = H.dim, B.dim
    Q = r.tensor_B
    eH = r.counit.image
    s, t = r.source.image, r.target.image

    def counit_lhs(x):
        return _keyed(delta=extend(H.delta_basis(x), lambda k: otimes(eH(k[0]), eH(k[1]))),
                      counit=_scalar(B.eps(eH(x))))

    def counit_rhs(x):
        return _keyed(delta=B.delta(eH(x)), counit=_scalar(H.counit.get(x, 0)))

    def morphism(fn, reverse: bool):
        def lhs(b, c):
            return _keyed(mult=H.mul(fn(b), fn(c)), unit=fn_el(fn, B.unit),
                          delta=H.delta(fn(b)), counit=_scalar(H.eps(fn(b))))

        def rhs(b, c):
            prod = B.mul_basis(c, b) if reverse else B.mul_basis(b, c)
            return _keyed(mult=fn_el(fn, prod), unit=H.one(),
                          delta=extend(B.delta_basis(b), lambda k: otimes(fn(k[0]), fn(k[1]))),
                          counit=_scalar(B.counit.get(b, 0)))
        return lhs, rhs

    p_cop: dict[int, dict] = {}

    def pcop(x: int) -> dict:
        if x not in p_cop:
            p_cop[x] = r.project(r.coproduct[x])
        return p_cop[x]

    def cocomm_lhs(x):  # (▲⊗▲)Δ
        return extend(H.delta_basis(x), lambda k: otimes(pcop(k[0]), pcop(k[1])))

    def cocomm_rhs(x):  # flip ∘ (Δ⊗_B Δ) ▲
        out: dict = {}
        for (y, z), c in r.coproduct[x].items():
            for (y1, y2), c1 in H.delta_basis(y).items():
                for (z1, z2), c2 in H.delta_basis(z).items():
                    axpy(out, c * c1 * c2, otimes(Q.project_basis(y1 * n + z1), Q.project_basis(y2 * n + z2)))
        return out

    s_lhs, s_rhs = morphism(s, reverse=False)
    t_lhs, t_rhs = morphism(t, reverse=True)
    return [
        Axiom("hopf2.counit-coalgebra-map", (n,), counit_lhs, counit_rhs),
        Axiom("hopf2.source-bialgebra-map", (nB, nB), s_lhs, s_rhs),
        Axiom("hopf2.target-bialgebra-map", (nB, nB), t_lhs, t_rhs),
        Axiom("hopf2.cocommutation", (n,), cocomm_lhs, cocomm_rhs),
    ]


def fn_el(fn, v: Mapping) -> dict:
    """Linear extension of a basis map given as ``fn(index) -> element``."""
    return extend(v, fn)


def _shared_algebra(h: Hopf2Algebra) -> AxiomResult:
    H, T = h.hopf, h.algebroid.total
    name = "hopf2.shared-algebra"
    if H.dim != T.dim:
        return AxiomResult(name, False, detail=f"dimensions {H.dim} and {T.dim} differ")
    for i in range(H.dim):
        for j in range(H.dim):
            if dict(H.mul_basis(i, j)) != dict(T.mul_basis(i, j)):
                return AxiomResult(name, False, Witness((i, j), dict(H.mul_basis(i, j)), dict(T.mul_basis(i, j))))
    if dict(H.unit) != dict(T.unit):
        return AxiomResult(name, False, Witness((), dict(H.unit), dict(T.unit), note="units differ"))
    return AxiomResult(name, True)


def check_hopf2(h: Hopf2Algebra) -> CheckReport:
    """The four defining conditions of a Hopf 2-algebra.

    Cocommutation is compared in (H⊗_B H)⊗(H⊗_B H) keyed by pairs of
    quotient coordinates; the flip is certified to descend first.
    """
    report = CheckReport()
    report.add(_shared_algebra(h))
    axioms = hopf2_axioms(h)
    for ax in axioms[:3]:
        report.add(ax.check())
    flip = report.add(_flip_certificate(h))
    if flip.passed:
        report.add(axioms[3].check())
    else:
        report.add(AxiomResult("hopf2.cocommutation", False, detail="flip map not well defined"))
    return report


# -- mirror construction ------------------------------------------------------------

def mirror_data(h: HopfData) -> tuple[BicrossData, LinearMap]:
    try:
        S_inv = inverse_antipode(h)
    except SingularMatrixError as err:
        report = CheckReport([AxiomResult("mirror.antipode-invertible", False,
                                          Witness((), err.kernel_vector, {}, note="kernel vector"))])
        raise ConstructionError("antipode is not invertible", report) from None
    B = variant(h, "cop").with_antipode(S_inv)

    def action(g: int, x: int) -> dict:  # g ◁ h = S(h₁) g h₂
        return extend(h.delta_basis(x), lambda k: h.prod(h.S(h.basis(k[0])), h.basis(g), h.basis(k[1])))

    def coaction(x: int) -> dict:  # δ(h) = S(h₁)h₃ ⊗ h₂
        return extend(h.delta2(h.basis(x)), lambda k: otimes(h.mul(h.S(h.basis(k[0])), h.basis(k[2])), h.basis(k[1])))

    d = BicrossData(h, B, ActionData.from_function(h, B, action), CoactionData.from_function(B, h, coaction))
    return d, LinearMap(B.space, h.space, S_inv.matrix)


def build_mirror(h: HopfData) -> BicrossedModule:
    """The mirror bicrossed module ``H ⋈ H_cop`` with φ = S⁻¹.

    ``H_cop`` carries the antipode S⁻¹, the action is ``g◁h = S(h₁) g h₂`` and
    the coaction ``δ(h) = S(h₁)h₃ ⊗ h₂``.
    """
    d, phi = mirror_data(h)
    return BicrossedModule(d, phi)
