"""Finite-dimensional Hopf algebras given by structure constants.

Multiplication is stored as ``mult[(i, j)] = e_i e_j`` and comultiplication as
``comult[i] = Δ(e_i)`` (a tuple-keyed element of H⊗H).  Every axiom is
checked on basis elements, which suffices by multilinearity.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Literal, Mapping

from .exactlin import DimensionError, Matrix, SingularMatrixError, axpy, invert_matrix, kernel, rref_solve
from .report import Axiom, AxiomResult, CheckReport, run_axioms
from .tensorspace import BasedSpace, LinearMap, extend, otimes, unflatten

Level = Literal["algebra", "coalgebra", "bialgebra", "hopf"]
LEVELS = ("algebra", "coalgebra", "bialgebra", "hopf")


def _scalar_element(c) -> dict:
    return {0: Fraction(c)} if c else {}


def _normalise(v: Mapping, check: callable, what: str) -> dict:
    out = {}
    for k, c in v.items():
        check(k, what)
        q = Fraction(c)
        if q:
            out[k] = q
    return out


@dataclass(frozen=True, eq=False)
class HopfData:
    space: BasedSpace
    mult: Mapping[tuple[int, int], Mapping[int, Fraction]]
    unit: Mapping[int, Fraction]
    comult: Mapping[int, Mapping[tuple[int, int], Fraction]] | None = None
    counit: Mapping[int, Fraction] | None = None
    antipode: LinearMap | None = None
    name: str = ""
    relations: str = ""  # presentation used to reduce products, shown in tables

    def __post_init__(self):
        n = self.space.dim

        def idx(k, what):
            if not 0 <= k < n:
                raise DimensionError(what, f"index {k} outside dimension {n}")

        def pair(k, what):
            if not (isinstance(k, tuple) and len(k) == 2):
                raise DimensionError(what, f"key {k!r} is not an index pair")
            idx(k[0], what)
            idx(k[1], what)

        mult = {}
        for key, v in self.mult.items():
            pair(key, "mult")
            v = _normalise(v, idx, "mult")
            if v:
                mult[key] = v
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "unit", _normalise(self.unit, idx, "unit"))
        if self.comult is not None:
            comult = {}
            for i, v in self.comult.items():
                idx(i, "comult")
                v = _normalise(v, pair, "comult")
                if v:
                    comult[i] = v
            object.__setattr__(self, "comult", comult)
        if self.counit is not None:
            object.__setattr__(self, "counit", _normalise(self.counit, idx, "counit"))
        if self.antipode is not None and (self.antipode.domain.dim, self.antipode.codomain.dim) != (n, n):
            raise DimensionError("antipode", f"expected a {n}x{n} map")

    # -- structure maps on elements ------------------------------------------
    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels

    @property
    def has_coalgebra(self) -> bool:
        return self.comult is not None and self.counit is not None

    def basis(self, i: int) -> dict:
        return {i: Fraction(1)}

    def one(self) -> dict:
        return dict(self.unit)

    def mul_basis(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def mul(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                axpy(out, a * b, self.mult.get((i, j), {}))
        return out

    def prod(self, *elements: Mapping) -> dict:
        out = self.one()
        for el in elements:
            out = self.mul(out, el)
        return out

    def delta_basis(self, i: int) -> dict:
        return self.comult.get(i, {})

    def delta(self, u: Mapping) -> dict:
        return extend(u, self.delta_basis)

    def delta2(self, u: Mapping) -> dict:
        """``(Δ⊗id)Δ(u)`` as an element of H⊗H⊗H."""
        return extend(self.delta(u), lambda k: otimes(self.delta_basis(k[0]), {k[1]: 1}))

    def delta3(self, u: Mapping) -> dict:
        return extend(self.delta2(u), lambda k: otimes(self.delta_basis(k[0]), {k[1]: 1}, {k[2]: 1}))

    def eps(self, u: Mapping) -> Fraction:
        return sum((c * self.counit.get(i, 0) for i, c in u.items()), Fraction(0))

    def S(self, u: Mapping) -> dict:
        if self.antipode is None:
            raise ValueError(f"{self.name or 'Hopf data'} has no antipode")
        return self.antipode(u)

    def same_algebra(self, other: "HopfData") -> bool:
        return self.dim == other.dim and self.mult == other.mult and self.unit == other.unit

    def mult_map(self) -> LinearMap:
        n = self.dim
        return LinearMap.from_function(self.space @ self.space, self.space, lambda k: self.mul_basis(*divmod(k, n)))

    def comult_map(self) -> LinearMap:
        n = self.dim
        return LinearMap.from_function(
            self.space, self.space @ self.space, lambda i: {a * n + b: c for (a, b), c in self.delta_basis(i).items()}
        )

    def identity_map(self) -> LinearMap:
        return LinearMap.identity(self.space)

    def with_antipode(self, antipode: LinearMap | None) -> "HopfData":
        return replace(self, antipode=antipode)

    def __repr__(self) -> str:
        return f"HopfData({self.name or '?'}, dim={self.dim})"


def algebra_axioms(h: HopfData, prefix: str = "algebra") -> list[Axiom]:
    n = h.dim
    e = h.basis
    return [
        Axiom(f"{prefix}.associativity", (n, n, n),
              lambda i, j, k: h.mul(h.mul_basis(i, j), e(k)),
              lambda i, j, k: h.mul(e(i), h.mul_basis(j, k))),
        Axiom(f"{prefix}.left-unit", (n,), lambda i: h.mul(h.unit, e(i)), e),
        Axiom(f"{prefix}.right-unit", (n,), lambda i: h.mul(e(i), h.unit), e),
    ]


def coalgebra_axioms(h: HopfData, prefix: str = "coalgebra") -> list[Axiom]:
    n = h.dim
    e = h.basis
    return [
        Axiom(f"{prefix}.coassociativity", (n,),
              lambda i: extend(h.delta_basis(i), lambda k: otimes(h.delta_basis(k[0]), e(k[1]))),
              lambda i: extend(h.delta_basis(i), lambda k: otimes(e(k[0]), h.delta_basis(k[1])))),
        Axiom(f"{prefix}.left-counit", (n,),
              lambda i: extend(h.delta_basis(i), lambda k: {k[1]: h.counit.get(k[0], 0)}), e),
        Axiom(f"{prefix}.right-counit", (n,),
              lambda i: extend(h.delta_basis(i), lambda k: {k[0]: h.counit.get(k[1], 0)}), e),
    ]


def bialgebra_axioms(h: HopfData, prefix: str = "bialgebra") -> list[Axiom]:
    n = h.dim

    def tensor_mul(x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for (a, b), c in x.items():
            for (a2, b2), c2 in y.items():
                axpy(out, c * c2, otimes(h.mul_basis(a, a2), h.mul_basis(b, b2)))
        return out

    return [
        Axiom(f"{prefix}.coproduct-multiplicative", (n, n),
              lambda i, j: h.delta(h.mul_basis(i, j)),
              lambda i, j: tensor_mul(h.delta_basis(i), h.delta_basis(j))),
        Axiom(f"{prefix}.coproduct-unit", (), lambda: h.delta(h.unit), lambda: otimes(h.unit, h.unit)),
        Axiom(f"{prefix}.counit-multiplicative", (n, n),
              lambda i, j: _scalar_element(h.eps(h.mul_basis(i, j))),
              lambda i, j: _scalar_element(h.counit.get(i, 0) * h.counit.get(j, 0))),
        Axiom(f"{prefix}.counit-unit", (), lambda: _scalar_element(h.eps(h.unit)), lambda: _scalar_element(1)),
    ]


def antipode_axioms(h: HopfData, prefix: str = "hopf") -> list[Axiom]:
    n = h.dim
    return [
        Axiom(f"{prefix}.antipode-left", (n,),
              lambda i: extend(h.delta_basis(i), lambda k: h.mul(h.S({k[0]: 1}), h.basis(k[1]))),
              lambda i: {k: h.counit.get(i, 0) * c for k, c in h.unit.items() if h.counit.get(i, 0)}),
        Axiom(f"{prefix}.antipode-right", (n,),
              lambda i: extend(h.delta_basis(i), lambda k: h.mul(h.basis(k[0]), h.S({k[1]: 1}))),
              lambda i: {k: h.counit.get(i, 0) * c for k, c in h.unit.items() if h.counit.get(i, 0)}),
    ]


def hopf_axioms(h: HopfData, level: Level = "hopf") -> list[Axiom]:
    """All axioms at or below ``level``, in registry order."""
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; expected one of {LEVELS}")
    rank = LEVELS.index(level)
    axioms = algebra_axioms(h)
    if rank >= 1:
        axioms += coalgebra_axioms(h)
    if rank >= 2:
        axioms += bialgebra_axioms(h)
    if rank >= 3 and h.antipode is not None:
        axioms += antipode_axioms(h)
    return axioms


def check_hopf_axioms(h: HopfData, level: Level = "hopf") -> CheckReport:
    if LEVELS.index(level) >= 1 and not h.has_coalgebra:
        raise DimensionError("comult", f"{h.name or 'structure'} has no coalgebra data")
    report = run_axioms(hopf_axioms(h, level))
    if level == "hopf" and h.antipode is None:
        for suffix in ("antipode-left", "antipode-right"):
            report.add(AxiomResult(f"hopf.{suffix}", False, detail="no antipode supplied"))
    return report


def variant(h: HopfData, which: Literal["op", "cop", "op-cop"]) -> HopfData:
    """Opposite and/or coopposite structure; the antipode is carried over as is."""
    if which not in ("op", "cop", "op-cop"):
        raise ValueError(f"unknown variant {which!r}")
    mult, comult = h.mult, h.comult
    if which in ("op", "op-cop"):
        mult = {(j, i): v for (i, j), v in h.mult.items()}
    if which in ("cop", "op-cop") and comult is not None:
        comult = {i: {(b, a): c for (a, b), c in v.items()} for i, v in comult.items()}
    suffix = {"op": "^op", "cop": "_cop", "op-cop": "^op_cop"}[which]
    return replace(h, mult=mult, comult=comult, name=f"{h.name}{suffix}")


class NotConvolutionInvertible(ArithmeticError):
    def __init__(self, kernel_map: dict):
        self.kernel_map = kernel_map  # nonzero g with f ⋆ g = 0, as {(k, j): c} for e_k in g(e_j)
        super().__init__("map has no convolution inverse")


def convolution_inverse(f: LinearMap, coalgebra: HopfData, algebra: HopfData) -> LinearMap:
    """The map ``g`` with ``f ⋆ g = g ⋆ f = 1∘ε``, solved exactly.

    Unknowns are the matrix entries of ``g``; the stacked equations for the
    left and right convolution products are solved together.
    """
    if f.domain.dim != coalgebra.dim or f.codomain.dim != algebra.dim:
        raise DimensionError("f", "must map the coalgebra into the algebra")
    n, m = coalgebra.dim, algebra.dim
    nvars = m * n  # variable (k, b) -> k * n + b, coefficient of e_k in g(e_b)

    # conv_left[i][var] = coefficient vector in A of (f ⋆ E_var)(e_i)
    rows_left: dict[tuple[int, int], dict] = {}
    rows_right: dict[tuple[int, int], dict] = {}
    for i in range(n):
        for (a, b), d in coalgebra.delta_basis(i).items():
            fa = f.image(a)
            fb = f.image(b)
            for k in range(m):
                ek = {k: 1}
                # f(e_a) * g(e_b), g(e_b) = sum_k g_kb e_k
                for l, c in algebra.mul(fa, ek).items():
                    rows_left.setdefault((i, l), {})
                    axpy(rows_left[(i, l)], d * c, {k * n + b: 1})
                # g(e_a) * f(e_b)
                for l, c in algebra.mul(ek, fb).items():
                    rows_right.setdefault((i, l), {})
                    axpy(rows_right[(i, l)], d * c, {k * n + a: 1})
    keys = [(i, l) for i in range(n) for l in range(m)]
    rows = [rows_left.get(key, {}) for key in keys] + [rows_right.get(key, {}) for key in keys]
    target = {}
    for r, (i, l) in enumerate(keys):
        c = coalgebra.counit.get(i, 0) * algebra.unit.get(l, 0)
        if c:
            target[r] = c
            target[r + len(keys)] = c
    A = Matrix.from_rows(rows, nvars)
    sol = rref_solve(A, [target])[0]
    if not sol.member:
        left = Matrix.from_rows(rows[: len(keys)], nvars)
        ker = kernel(left)
        vec = ker[0] if ker else {}
        raise NotConvolutionInvertible({divmod(v, n): c for v, c in vec.items()})
    cols = [dict() for _ in range(n)]
    for v, c in sol.coefficients.items():
        k, b = divmod(v, n)
        cols[b][k] = c
    return LinearMap.from_columns(coalgebra.space, algebra.space, cols)


def inverse_antipode(h: HopfData) -> LinearMap:
    """``S⁻¹`` as a linear map; raises :class:`SingularMatrixError`."""
    if h.antipode is None:
        raise ValueError(f"{h.name or 'Hopf data'} has no antipode")
    return LinearMap(h.space, h.space, invert_matrix(h.antipode.matrix))


# -- actions and coactions ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class ActionData:
    """Right action ``carrier ⊗ acting → carrier``, ``a ◁ h``."""

    acting: HopfData
    carrier: HopfData
    map: LinearMap

    def __post_init__(self):
        if self.map.domain.dim != self.carrier.dim * self.acting.dim or self.map.codomain.dim != self.carrier.dim:
            raise DimensionError("action", "map must go carrier⊗acting → carrier")

    @classmethod
    def from_function(cls, acting: HopfData, carrier: HopfData, fn) -> "ActionData":
        n = acting.dim
        return cls(acting, carrier, LinearMap.from_function(
            carrier.space @ acting.space, carrier.space, lambda k: fn(*divmod(k, n))))

    def act_basis(self, a: int, h: int) -> dict:
        return self.map.image(a * self.acting.dim + h)

    def act(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for a, x in u.items():
            for h, y in v.items():
                axpy(out, x * y, self.act_basis(a, h))
        return out


@dataclass(frozen=True, eq=False)
class CoactionData:
    """Left coaction ``carrier → coacting ⊗ carrier``, ``c ↦ c[-1] ⊗ c[0]``."""

    coacting: HopfData
    carrier: HopfData
    map: LinearMap

    def __post_init__(self):
        if self.map.domain.dim != self.carrier.dim or self.map.codomain.dim != self.coacting.dim * self.carrier.dim:
            raise DimensionError("coaction", "map must go carrier → coacting⊗carrier")

    @classmethod
    def from_function(cls, coacting: HopfData, carrier: HopfData, fn) -> "CoactionData":
        n = carrier.dim
        return cls(coacting, carrier, LinearMap.from_function(
            carrier.space, coacting.space @ carrier.space,
            lambda i: {h * n + c: x for (h, c), x in fn(i).items()}))

    def coact_basis(self, c: int) -> dict:
        dims = (self.coacting.dim, self.carrier.dim)
        return {unflatten(k, dims): x for k, x in self.map.image(c).items()}

    def coact(self, u: Mapping) -> dict:
        return extend(u, self.coact_basis)


def action_axioms(a: ActionData, prefix: str = "action") -> list[Axiom]:
    H, A = a.acting, a.carrier
    nA, nH = A.dim, H.dim
    e = A.basis
    return [
        Axiom(f"{prefix}.right-module", (nA, nH, nH),
              lambda i, h, k: a.act(a.act_basis(i, h), H.basis(k)),
              lambda i, h, k: a.act(e(i), H.mul_basis(h, k))),
        Axiom(f"{prefix}.unit-acts-trivially", (nA,), lambda i: a.act(e(i), H.unit), e),
        Axiom(f"{prefix}.module-algebra", (nA, nA, nH),
              lambda i, j, h: a.act(A.mul_basis(i, j), H.basis(h)),
              lambda i, j, h: extend(H.delta_basis(h), lambda k: A.mul(a.act_basis(i, k[0]), a.act_basis(j, k[1])))),
        Axiom(f"{prefix}.module-algebra-unit", (nH,),
              lambda h: a.act(A.unit, H.basis(h)),
              lambda h: {k: H.counit.get(h, 0) * c for k, c in A.unit.items() if H.counit.get(h, 0)}),
    ]


def check_action_module_algebra(a: ActionData) -> CheckReport:
    return run_axioms(action_axioms(a))


def coaction_axioms(c: CoactionData, prefix: str = "coaction") -> list[Axiom]:
    H, C = c.coacting, c.carrier
    n = C.dim
    e = C.basis

    def coassoc_lhs(i):  # (Δ⊗id)δ
        return extend(c.coact_basis(i), lambda k: otimes(H.delta_basis(k[0]), e(k[1])))

    def coassoc_rhs(i):  # (id⊗δ)δ
        return extend(c.coact_basis(i), lambda k: otimes(H.basis(k[0]), c.coact_basis(k[1])))

    def coalg_lhs(i):  # c[-1] ⊗ c[0]_1 ⊗ c[0]_2
        return extend(c.coact_basis(i), lambda k: otimes(H.basis(k[0]), C.delta_basis(k[1])))

    def coalg_rhs(i):  # c_1[-1] c_2[-1] ⊗ c_1[0] ⊗ c_2[0]
        def term(k):
            out: dict = {}
            for (h1, c1), x in c.coact_basis(k[0]).items():
                for (h2, c2), y in c.coact_basis(k[1]).items():
                    axpy(out, x * y, otimes(H.mul_basis(h1, h2), e(c1), e(c2)))
            return out
        return extend(C.delta_basis(i), term)

    return [
        Axiom(f"{prefix}.coassociativity", (n,), coassoc_lhs, coassoc_rhs),
        Axiom(f"{prefix}.counit", (n,),
              lambda i: extend(c.coact_basis(i), lambda k: {k[1]: H.counit.get(k[0], 0)}), e),
        Axiom(f"{prefix}.comodule-coalgebra", (n,), coalg_lhs, coalg_rhs),
        Axiom(f"{prefix}.comodule-coalgebra-counit", (n,),
              lambda i: extend(c.coact_basis(i), lambda k: {k[0]: C.counit.get(k[1], 0)}),
              lambda i: {k: C.counit.get(i, 0) * x for k, x in H.unit.items() if C.counit.get(i, 0)}),
    ]


def check_coaction_comodule_coalgebra(c: CoactionData) -> CheckReport:
    return run_axioms(coaction_axioms(c))


def trivial_action(acting: HopfData, carrier: HopfData) -> ActionData:
    return ActionData.from_function(acting, carrier, lambda a, h: {a: acting.counit.get(h, 0)})


def trivial_coaction(coacting: HopfData, carrier: HopfData) -> CoactionData:
    return CoactionData.from_function(coacting, carrier, lambda c: {(k, c): x for k, x in coacting.unit.items()})


__all__ = [
    "ActionData", "CoactionData", "HopfData", "NotConvolutionInvertible", "SingularMatrixError",
    "check_action_module_algebra", "check_coaction_comodule_coalgebra", "check_hopf_axioms",
    "convolution_inverse", "hopf_axioms", "inverse_antipode", "trivial_action", "trivial_coaction", "variant",
]
