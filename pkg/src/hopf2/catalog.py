"""Built-in finite groups, Hopf algebras, 2-groups and Hopf 2-algebra bundles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Sequence

from .hopfcore import HopfData
from .report import Axiom, AxiomResult, CheckReport, Witness, run_axioms
from .tensorspace import BasedSpace, LinearMap


class InvalidStructure(ValueError):
    """Input tables violate the axioms they claim; ``witness`` names the culprit."""

    def __init__(self, message: str, witness: tuple = ()):
        self.witness = witness
        super().__init__(f"{message} (witness {witness})" if witness else message)


@dataclass(frozen=True, eq=False)
class FiniteGroupData:
    mult_table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    identity: int = field(init=False)
    inverse: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.mult_table)
        n = len(table)
        object.__setattr__(self, "mult_table", table)
        if n == 0 or any(len(row) != n for row in table):
            raise InvalidStructure("multiplication table must be square and nonempty")
        if any(not 0 <= x < n for row in table for x in row):
            raise InvalidStructure("table entry out of range")
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n or len(set(labels)) != n:
            raise InvalidStructure("labels must be distinct and one per element")
        object.__setattr__(self, "labels", labels)
        ids = [e for e in range(n) if all(table[e][g] == g == table[g][e] for g in range(n))]
        if not ids:
            raise InvalidStructure("no identity element")
        e = ids[0]
        object.__setattr__(self, "identity", e)
        for a, b, c in product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InvalidStructure("multiplication is not associative", (a, b, c))
        inv = []
        for g in range(n):
            cands = [h for h in range(n) if table[g][h] == e and table[h][g] == e]
            if not cands:
                raise InvalidStructure("element has no inverse", (g,))
            inv.append(cands[0])
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.mult_table)

    def mul(self, a: int, b: int) -> int:
        return self.mult_table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroupData(order={self.order})"


def cyclic_group(n: int) -> FiniteGroupData:
    labels = ("1",) + tuple("σ" if n == 2 else f"c{k}" for k in range(1, n))
    return FiniteGroupData(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), labels)


def trivial_group() -> FiniteGroupData:
    return FiniteGroupData(((0,),), ("1",))


def symmetric_group(n: int) -> FiniteGroupData:
    """Permutations of ``range(n)`` in lexicographic order; ``(p*q)(i) = p(q(i))``."""
    elems = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(n))] for q in elems) for p in elems)
    labels = tuple("".join(str(x + 1) for x in p) for p in elems)
    return FiniteGroupData(table, labels)


def direct_product(G: FiniteGroupData, H: FiniteGroupData) -> FiniteGroupData:
    n, m = G.order, H.order
    table = tuple(
        tuple(G.mul(a, c) * m + H.mul(b, d) for c in range(n) for d in range(m))
        for a in range(n) for b in range(m)
    )
    labels = tuple(f"({g},{h})" for g in G.labels for h in H.labels)
    return FiniteGroupData(table, labels)


# -- Hopf algebras -------------------------------------------------------------

def group_algebra(G: FiniteGroupData, name: str = "") -> HopfData:
    n = G.order
    space = BasedSpace(G.labels)
    return HopfData(
        space=space,
        mult={(a, b): {G.mul(a, b): 1} for a in range(n) for b in range(n)},
        unit={G.identity: 1},
        comult={g: {(g, g): 1} for g in range(n)},
        counit={g: 1 for g in range(n)},
        antipode=LinearMap.from_function(space, space, lambda g: {G.inv(g): 1}),
        name=name or f"kG(order {n})",
    )


def function_hopf_algebra(G: FiniteGroupData, name: str = "") -> HopfData:
    n = G.order
    space = BasedSpace(tuple(f"f_{lab}" for lab in G.labels))
    comult: dict[int, dict] = {g: {} for g in range(n)}
    for a in range(n):
        for b in range(n):
            comult[G.mul(a, b)][(a, b)] = 1
    return HopfData(
        space=space,
        mult={(a, a): {a: 1} for a in range(n)},
        unit={g: 1 for g in range(n)},
        comult=comult,
        counit={G.identity: 1},
        antipode=LinearMap.from_function(space, space, lambda g: {G.inv(g): 1}),
        name=name or f"A(G)(order {n})",
    )


SWEEDLER_LABELS = ("1", "g", "x", "gx")


def sweedler_h4() -> HopfData:
    """Sweedler's four-dimensional Hopf algebra on the basis g^a x^b.

    Products are reduced with x² = 0, g² = 1, xg = −gx, so
    ``g^a x^b · g^c x^d = (−1)^{bc} g^{a+c} x^{b+d}``.
    """
    def idx(a: int, b: int) -> int:
        return 2 * b + a  # 1, g, x, gx

    def mul(i: int, j: int) -> dict:
        a, b = i % 2, i // 2
        c, d = j % 2, j // 2
        if b + d >= 2:
            return {}
        return {idx((a + c) % 2, b + d): (-1) ** (b * c)}

    space = BasedSpace(SWEEDLER_LABELS)
    g, x = {1: Fraction(1)}, {2: Fraction(1)}
    mult = {(i, j): mul(i, j) for i in range(4) for j in range(4)}

    def mul_el(u: dict, v: dict) -> dict:
        out: dict = {}
        for i, p in u.items():
            for j, q in v.items():
                for k, r in mul(i, j).items():
                    out[k] = out.get(k, 0) + p * q * r
        return {k: c for k, c in out.items() if c}

    def mul_tensor(s: dict, t: dict) -> dict:
        out: dict = {}
        for (a, b), p in s.items():
            for (c, d), q in t.items():
                for k, r in mul(a, c).items():
                    for l, w in mul(b, d).items():
                        out[(k, l)] = out.get((k, l), 0) + p * q * r * w
        return {k: c for k, c in out.items() if c}

    # generators, then extend multiplicatively over the normal-form basis
    delta_g = {(1, 1): Fraction(1)}
    delta_x = {(0, 2): Fraction(1), (2, 1): Fraction(1)}
    s_g = {1: Fraction(1)}
    s_x = mul_el({2: Fraction(-1)}, g)  # S(x) = −x g⁻¹ = −x g
    one_t = {(0, 0): Fraction(1)}
    comult, antipode = {}, {}
    for i in range(4):
        a, b = i % 2, i // 2
        d, s = one_t, {0: Fraction(1)}
        if a:
            d = mul_tensor(d, delta_g)
        if b:
            d = mul_tensor(d, delta_x)
        # S is an anti-algebra map: S(g^a x^b) = S(x)^b S(g)^a
        if b:
            s = mul_el(s, s_x)
        if a:
            s = mul_el(s, s_g)
        comult[i], antipode[i] = d, s
    return HopfData(
        space=space,
        mult=mult,
        unit={0: 1},
        comult=comult,
        counit={0: 1, 1: 1},
        antipode=LinearMap.from_function(space, space, lambda i: antipode[i]),
        name="H4",
        relations="x²=0, g²=1, xg+gx=0",
    )


def monoid_bialgebra() -> HopfData:
    """k{1, e} with e² = e and grouplike coproduct; a bialgebra with no antipode."""
    space = BasedSpace(("1", "e"))
    return HopfData(
        space=space,
        mult={(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {1: 1}},
        unit={0: 1},
        comult={0: {(0, 0): 1}, 1: {(1, 1): 1}},
        counit={0: 1, 1: 1},
        name="k{1,e}",
    )


def ground_field() -> HopfData:
    return group_algebra(trivial_group(), name="k")


# -- crossed modules and 2-groups ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class CrossedModuleData:
    """``∂: H → G`` with a left action ``g ▷ h`` of G on H by automorphisms."""

    G: FiniteGroupData
    H: FiniteGroupData
    boundary: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]  # action[g][h] = g ▷ h

    def __post_init__(self):
        G, H = self.G, self.H
        object.__setattr__(self, "boundary", tuple(int(x) for x in self.boundary))
        object.__setattr__(self, "action", tuple(tuple(int(x) for x in row) for row in self.action))
        if len(self.boundary) != H.order or any(not 0 <= x < G.order for x in self.boundary):
            raise InvalidStructure("boundary must map H into G")
        if len(self.action) != G.order or any(len(r) != H.order for r in self.action):
            raise InvalidStructure("action table must be |G| x |H|")
        if any(not 0 <= x < H.order for r in self.action for x in r):
            raise InvalidStructure("action value out of range")
        d, act = self.boundary, self.action
        for h, k in product(range(H.order), repeat=2):
            if d[H.mul(h, k)] != G.mul(d[h], d[k]):
                raise InvalidStructure("boundary is not a homomorphism", (h, k))
        for h in range(H.order):
            if act[G.identity][h] != h:
                raise InvalidStructure("identity does not act trivially", (h,))
        for g, g2, h in product(range(G.order), range(G.order), range(H.order)):
            if act[G.mul(g, g2)][h] != act[g][act[g2][h]]:
                raise InvalidStructure("action is not associative", (g, g2, h))
        for g, h, k in product(range(G.order), range(H.order), range(H.order)):
            if act[g][H.mul(h, k)] != H.mul(act[g][h], act[g][k]):
                raise InvalidStructure("action is not by automorphisms", (g, h, k))
        for g, h in product(range(G.order), range(H.order)):
            if d[act[g][h]] != G.mul(G.mul(g, d[h]), G.inv(g)):
                raise InvalidStructure("boundary is not equivariant", (g, h))
        for h, k in product(range(H.order), repeat=2):
            if act[d[h]][k] != H.mul(H.mul(h, k), H.inv(h)):
                raise InvalidStructure("Peiffer identity fails", (h, k))

    def act(self, g: int, h: int) -> int:
        return self.action[g][h]


def trivial_crossed_module(G: FiniteGroupData, H: FiniteGroupData) -> CrossedModuleData:
    """Trivial boundary and trivial action; valid exactly when H is abelian."""
    return CrossedModuleData(G, H, (G.identity,) * H.order, tuple(tuple(range(H.order)) for _ in range(G.order)))


def identity_crossed_module(G: FiniteGroupData) -> CrossedModuleData:
    """``∂ = id`` with conjugation action."""
    act = tuple(tuple(G.mul(G.mul(g, h), G.inv(g)) for h in range(G.order)) for g in range(G.order))
    return CrossedModuleData(G, G, tuple(range(G.order)), act)


@dataclass(frozen=True, eq=False)
class TwoGroupData:
    """A strict 2-group: horizontal group G1, vertical groupoid over G0.

    ``vert[(x, y)]`` is ``x • y`` ("x after y"), defined when ``src[x] == tgt[y]``.
    """

    G0: FiniteGroupData
    G1: FiniteGroupData
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    vert: dict
    ident: tuple[int, ...]

    def __post_init__(self):
        G0, G1 = self.G0, self.G1
        s, t, ident = self.src, self.tgt, self.ident
        vert = {(int(a), int(b)): int(c) for (a, b), c in dict(self.vert).items()}
        object.__setattr__(self, "vert", vert)
        n = G1.order
        if len(s) != n or len(t) != n or len(ident) != G0.order:
            raise InvalidStructure("src/tgt/ident have wrong lengths")
        for x, y in product(range(n), repeat=2):
            for name, m in (("src", s), ("tgt", t)):
                if m[G1.mul(x, y)] != G0.mul(m[x], m[y]):
                    raise InvalidStructure(f"{name} is not a homomorphism", (x, y))
            composable = s[x] == t[y]
            if composable != ((x, y) in vert):
                raise InvalidStructure("vertical table must cover exactly the composable pairs", (x, y))
            if composable:
                z = vert[(x, y)]
                if s[z] != s[y] or t[z] != t[x]:
                    raise InvalidStructure("vertical composite has wrong boundary", (x, y))
        for g in range(G0.order):
            e = ident[g]
            if s[e] != g or t[e] != g:
                raise InvalidStructure("identity 2-cell has wrong boundary", (g,))
        for x in range(n):
            if vert[(x, ident[s[x]])] != x or vert[(ident[t[x]], x)] != x:
                raise InvalidStructure("identity 2-cells are not vertical units", (x,))
            if not any((x, y) in vert and vert[(x, y)] == ident[t[x]] for y in range(n)):
                raise InvalidStructure("2-cell has no vertical inverse", (x,))
        for (x, y), xy in vert.items():
            for z in range(n):
                if (y, z) in vert and vert[(xy, z)] != vert[(x, vert[(y, z)])]:
                    raise InvalidStructure("vertical composition is not associative", (x, y, z))
        bad = interchange_violation(self)
        if bad:
            raise InvalidStructure("interchange law fails", bad)

    def vinv(self, x: int) -> int:
        """Vertical inverse of ``x``."""
        e = self.ident[self.tgt[x]]
        return next(y for y in range(self.G1.order) if (x, y) in self.vert and self.vert[(x, y)] == e)

    def composable_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.vert)


def interchange_violation(t: TwoGroupData) -> tuple | None:
    """First composable quadruple with ``(a•b)∘(c•d) ≠ (a∘c)•(b∘d)``."""
    mul = t.G1.mul
    for (a, b), ab in sorted(t.vert.items()):
        for (c, d), cd in sorted(t.vert.items()):
            if mul(ab, cd) != t.vert[(mul(a, c), mul(b, d))]:
                return (a, b, c, d)
    return None


def two_group_from_crossed_module(c: CrossedModuleData) -> TwoGroupData:
    """``G1 = G ⋉ H`` with ``s(g,h) = g``, ``t(g,h) = ∂(h)g``.

    Elements ``(g, h)`` are indexed ``g * |H| + h``; the horizontal product is
    ``(g,h)(g',h') = (gg', h (g▷h'))`` and ``(∂(h)g, h') • (g, h) = (g, h'h)``.
    """
    G, H = c.G, c.H
    m = H.order

    def idx(g: int, h: int) -> int:
        return g * m + h

    elems = [(g, h) for g in range(G.order) for h in range(m)]
    table = tuple(
        tuple(idx(G.mul(g, g2), H.mul(h, c.act(g, h2))) for (g2, h2) in elems) for (g, h) in elems
    )
    labels = tuple(f"({G.labels[g]},{H.labels[h]})" for g, h in elems)
    G1 = FiniteGroupData(table, labels)
    src = tuple(g for g, h in elems)
    tgt = tuple(G.mul(c.boundary[h], g) for g, h in elems)
    vert = {}
    for x, (g2, h2) in enumerate(elems):
        for y, (g, h) in enumerate(elems):
            if src[x] == tgt[y]:
                vert[(x, y)] = idx(g, H.mul(h2, h))
    ident = tuple(idx(g, H.identity) for g in range(G.order))
    return TwoGroupData(G, G1, src, tgt, vert, ident)


def two_group_function_algebroid(t: TwoGroupData, name: str = ""):
    """Functions on a finite 2-group as a Hopf 2-algebra over functions on G0.

    ``▲(f_e) = Σ f_{e₁} ⊗_B f_{e₂}`` over composable pairs with ``e₁ • e₂ = e``
    (``s(e₁) = t(e₂)``); the full antipode is the vertical inverse.
    """
    from .algebroid import RightBialgebroid
    from .bicross import Hopf2Algebra

    n = t.G1.order
    name = name or f"A(2-group {t.G0.order},{n})"
    B = function_hopf_algebra(t.G0)
    H = function_hopf_algebra(t.G1, name)
    coproduct: dict[int, dict] = {e: {} for e in range(n)}
    for (x, y), z in t.vert.items():
        coproduct[z][(x, y)] = Fraction(1)
    source = LinearMap.from_function(B.space, H.space, lambda g: {e: 1 for e in range(n) if t.src[e] == g})
    target = LinearMap.from_function(B.space, H.space, lambda g: {e: 1 for e in range(n) if t.tgt[e] == g})
    id_of = {e: g for g, e in enumerate(t.ident)}
    counit = LinearMap.from_function(H.space, B.space, lambda e: {id_of[e]: 1} if e in id_of else {})
    full = LinearMap.from_function(H.space, H.space, lambda e: {t.vinv(e): 1})
    r = RightBialgebroid(H, B, source, target, coproduct, counit, full_antipode=full, name=name)
    return Hopf2Algebra(H, r, full_antipode=full, name=name)


def remark_counterexample(t: TwoGroupData, name: str = ""):
    """The groupoid algebra of the vertical structure, over functions on G0.

    The shared algebra has ``e · e' = e' • e`` when ``t(e) = s(e')`` and 0
    otherwise, so that ``s(f_g) = t(f_g) = id_g`` are algebra maps and
    ``ε_H(e) = f_{t(e)}`` is a right character.  The Hopf-algebra coproduct is
    the grouplike ``Δ(e) = e⊗e``.  ``ε_H`` is not a coalgebra map once
    ``|G0| ≥ 2``.
    """
    from .algebroid import RightBialgebroid
    from .bicross import Hopf2Algebra

    G1 = t.G1
    n = G1.order
    B = function_hopf_algebra(t.G0)
    space = BasedSpace(G1.labels)
    mult = {(x, y): {t.vert[(y, x)]: 1} for x in range(n) for y in range(n) if (y, x) in t.vert}
    H = HopfData(
        space=space,
        mult=mult,
        unit={e: 1 for e in t.ident},
        comult={e: {(e, e): 1} for e in range(n)},
        counit={e: 1 for e in range(n)},
        antipode=LinearMap.from_function(space, space, lambda e: {G1.inv(e): 1}),
        name=name or "kG1",
    )
    source = LinearMap.from_function(B.space, H.space, lambda g: {t.ident[g]: 1})
    counit = LinearMap.from_function(H.space, B.space, lambda e: {t.tgt[e]: 1})
    full = LinearMap.from_function(space, space, lambda e: {t.vinv(e): 1})
    coproduct = {e: {(e, e): Fraction(1)} for e in range(n)}
    r = RightBialgebroid(H, B, source, source, coproduct, counit, full_antipode=full, name=H.name)
    return Hopf2Algebra(H, r, full_antipode=full, name=H.name)


# -- builtin registry ------------------------------------------------------------

def _z2z2_crossed() -> CrossedModuleData:
    return trivial_crossed_module(cyclic_group(2), cyclic_group(2))


def _mirror(h: HopfData, name: str):
    from .bicross import build_hopf2, build_mirror

    out = build_hopf2(build_mirror(h), verify=False)
    out.name = name
    return out


def _bicrossed(h: HopfData, trivial_phi: bool = False):
    from .bicross import BicrossedModule, build_mirror

    m = build_mirror(h)
    if not trivial_phi:
        return m
    B, A = m.base.B, m.base.A
    phi = LinearMap.from_function(B.space, A.space, lambda b: {k: B.counit.get(b, 0) * c for k, c in A.unit.items()})
    return BicrossedModule(m.base, phi)


def _mirror_bicross(coaction: str = "mirror"):
    """Mirror bicross data on H⁴, optionally with a corrupted coaction."""
    from .bicross import BicrossData, build_mirror
    from .hopfcore import CoactionData, trivial_coaction
    from .tensorspace import extend, otimes

    h = sweedler_h4()
    d = build_mirror(h).base
    if coaction == "trivial":
        co = trivial_coaction(d.B, h)
    elif coaction == "misordered":  # h₃ S(h₁) ⊗ h₂
        co = CoactionData.from_function(d.B, h, lambda x: extend(
            h.delta2(h.basis(x)), lambda k: otimes(h.mul(h.basis(k[2]), h.S(h.basis(k[0]))), h.basis(k[1]))))
    else:
        return d
    return BicrossData(d.A, d.B, d.action, co)


BUILTINS: dict[str, Callable[[], object]] = {
    "sweedler": sweedler_h4,
    "group-trivial": lambda: group_algebra(trivial_group(), "k"),
    "group-z2": lambda: group_algebra(cyclic_group(2), "kZ2"),
    "group-z3": lambda: group_algebra(cyclic_group(3), "kZ3"),
    "group-s3": lambda: group_algebra(symmetric_group(3), "kS3"),
    "functions-z2": lambda: function_hopf_algebra(cyclic_group(2), "A(Z2)"),
    "functions-s3": lambda: function_hopf_algebra(symmetric_group(3), "A(S3)"),
    "monoid-idempotent": monoid_bialgebra,
    "mirror-h4": lambda: _mirror(sweedler_h4(), "H4⋈H4_cop"),
    "mirror-z2": lambda: _mirror(group_algebra(cyclic_group(2), "kZ2"), "kZ2⋈kZ2_cop"),
    "mirror-s3": lambda: _mirror(group_algebra(symmetric_group(3), "kS3"), "kS3⋈kS3_cop"),
    "bicross-h4": _mirror_bicross,
    "bicross-h4-trivial-coaction": lambda: _mirror_bicross("trivial"),
    "bicross-h4-misordered-coaction": lambda: _mirror_bicross("misordered"),
    "bicrossed-h4": lambda: _bicrossed(sweedler_h4()),
    "bicrossed-h4-trivial-phi": lambda: _bicrossed(sweedler_h4(), trivial_phi=True),
    "crossed-z2z2": _z2z2_crossed,
    "crossed-z2-identity": lambda: identity_crossed_module(cyclic_group(2)),
    "two-group-z2z2": lambda: two_group_function_algebroid(
        two_group_from_crossed_module(_z2z2_crossed()), "A(Z2⋉Z2)"),
    "two-group-z2-identity": lambda: two_group_function_algebroid(
        two_group_from_crossed_module(identity_crossed_module(cyclic_group(2))), "A(Z2⋉Z2, ∂=id)"),
    "remark-scenario1": lambda: remark_counterexample(
        two_group_from_crossed_module(_z2z2_crossed()), "kG1"),
}


def builtin(name: str):
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}") from None
    return factory()
