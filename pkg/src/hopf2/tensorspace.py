"""Based vector spaces, tensor elements, quotients by relation spans.

Elements of a single space are ``dict[int, Fraction]``.  Elements of a tensor
power are ``dict[tuple[int, ...], Fraction]`` keyed by basis-index tuples;
:func:`flatten` turns them into row-major indices of the tensor space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .exactlin import DimensionError, Matrix, RowEchelon, axpy, clean, rref_solve

TENSOR = "⊗"


def _wrap(label: str) -> str:
    return f"({label})" if TENSOR in label else label


@dataclass(frozen=True)
class BasedSpace:
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            dup = sorted({x for x in self.labels if self.labels.count(x) > 1})
            raise ValueError(f"duplicate basis labels {dup}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def tensor(self, other: "BasedSpace") -> "BasedSpace":
        return BasedSpace(tuple(f"{_wrap(a)}{TENSOR}{_wrap(b)}" for a in self.labels for b in other.labels))

    def __matmul__(self, other: "BasedSpace") -> "BasedSpace":
        return self.tensor(other)

    def basis_vector(self, i: int) -> dict:
        if not 0 <= i < self.dim:
            raise DimensionError("basis index", f"{i} outside dimension {self.dim}")
        return {i: Fraction(1)}

    def format(self, v: Mapping[int, Fraction]) -> str:
        return format_element(v, self.labels)


def format_element(v: Mapping[int, Fraction], labels: Sequence[str]) -> str:
    """Render ``v`` in basis order, e.g. ``2·(1⊗gx) + x⊗g`` or ``−x⊗1``."""
    terms = []
    for i in sorted(v):
        c = v[i]
        if not c:
            continue
        lab = labels[i]
        mag = abs(c)
        if mag == 1:
            body = lab
        else:
            num = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            body = f"{num}·({lab})"
        terms.append(("−" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("−" if terms[0][0] == "−" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# -- sparse tensor elements -------------------------------------------------

def _key(k) -> tuple:
    return k if isinstance(k, tuple) else (k,)


def otimes(*elements: Mapping) -> dict:
    """Tensor product of elements; tuple keys are concatenated."""
    out: dict = {(): Fraction(1)}
    for el in elements:
        nxt: dict = {}
        for k1, c1 in out.items():
            for k2, c2 in el.items():
                k = k1 + _key(k2)
                x = nxt.get(k, 0) + c1 * c2
                if x:
                    nxt[k] = x
                else:
                    nxt.pop(k, None)
        out = nxt
    return out


def extend(element: Mapping, fn: Callable[[object], Mapping]) -> dict:
    """Linear extension: ``sum c * fn(key)`` over the terms of ``element``."""
    out: dict = {}
    for k, c in element.items():
        axpy(out, c, fn(k))
    return out


def add(*elements: Mapping) -> dict:
    out: dict = {}
    for el in elements:
        axpy(out, 1, el)
    return out


def sub(a: Mapping, b: Mapping) -> dict:
    return axpy(dict(a), -1, b)


def scale(c, a: Mapping) -> dict:
    c = Fraction(c)
    return {k: c * x for k, x in a.items()} if c else {}


def flatten(element: Mapping[tuple, Fraction], dims: Sequence[int]) -> dict:
    """Row-major flattening of a tuple-keyed tensor into ``dims``."""
    out: dict = {}
    for key, c in element.items():
        if len(key) != len(dims):
            raise DimensionError("tensor", f"key {key} does not match {len(dims)} legs")
        idx = 0
        for k, d in zip(key, dims):
            if not 0 <= k < d:
                raise DimensionError("tensor", f"leg index {k} outside dimension {d}")
            idx = idx * d + k
        x = out.get(idx, 0) + c
        if x:
            out[idx] = x
        else:
            out.pop(idx, None)
    return out


def unflatten(index: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))


# -- linear maps ---------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    domain: BasedSpace
    codomain: BasedSpace
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.codomain.dim, self.domain.dim):
            raise DimensionError(
                "linear map",
                f"matrix {self.matrix.shape} does not match {self.codomain.dim}x{self.domain.dim}",
            )

    @classmethod
    def from_columns(cls, domain: BasedSpace, codomain: BasedSpace, columns: Iterable[Mapping]) -> "LinearMap":
        return cls(domain, codomain, Matrix.from_columns(codomain.dim, columns))

    @classmethod
    def from_function(cls, domain: BasedSpace, codomain: BasedSpace, fn: Callable[[int], Mapping]) -> "LinearMap":
        return cls.from_columns(domain, codomain, (fn(i) for i in range(domain.dim)))

    @classmethod
    def identity(cls, space: BasedSpace) -> "LinearMap":
        return cls(space, space, Matrix.identity(space.dim))

    def __call__(self, v: Mapping[int, object]) -> dict:
        return self.matrix.apply(v)

    def image(self, i: int) -> dict:
        return self.matrix.columns()[i]

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """``self ∘ inner``."""
        if inner.codomain.dim != self.domain.dim:
            raise DimensionError("inner map", f"codomain dim {inner.codomain.dim} != domain dim {self.domain.dim}")
        return LinearMap(inner.domain, self.codomain, self.matrix @ inner.matrix)

    def __matmul__(self, inner: "LinearMap") -> "LinearMap":
        return self.compose(inner)


# -- quotients -------------------------------------------------------------------

class QuotientSpace:
    """``ambient / span(relations)`` with a canonical basis.

    The quotient basis is the set of non-pivot ambient coordinates of the
    reduced row echelon form of the relation span.
    """

    def __init__(self, ambient: BasedSpace, relations: Iterable[Mapping[int, object]] = ()):
        self.ambient = ambient
        self.echelon = RowEchelon(ambient.dim)
        self.relations: list[dict] = []
        for r in relations:
            r = clean({k: Fraction(c) for k, c in r.items()})
            if r:
                self.relations.append(r)
                self.echelon.add(r)
        self.echelon.reduced()
        pivots = set(self.echelon.rows)
        self.basis_indices: tuple[int, ...] = tuple(i for i in range(ambient.dim) if i not in pivots)
        self._coord = {j: q for q, j in enumerate(self.basis_indices)}
        self.space = BasedSpace(tuple(ambient.labels[j] for j in self.basis_indices))
        self._proj_cols: dict[int, dict] = {}

    @property
    def dim(self) -> int:
        return len(self.basis_indices)

    @property
    def relation_rank(self) -> int:
        return self.echelon.rank

    def project_basis(self, j: int) -> dict:
        col = self._proj_cols.get(j)
        if col is None:
            if j in self._coord:
                col = {self._coord[j]: Fraction(1)}
            else:
                row = self.echelon.rows[j]
                col = {self._coord[k]: -c for k, c in row.items() if k != j}
            self._proj_cols[j] = col
        return col

    def project(self, v: Mapping[int, object]) -> dict:
        out: dict = {}
        for j, c in v.items():
            if not 0 <= j < self.ambient.dim:
                raise DimensionError("vector", f"index {j} outside ambient dimension {self.ambient.dim}")
            axpy(out, c, self.project_basis(j))
        return out

    def lift(self, q: Mapping[int, object]) -> dict:
        return {self.basis_indices[i]: Fraction(c) for i, c in q.items() if c}

    def is_zero(self, v: Mapping[int, object]) -> bool:
        return not self.project(v)

    @cached_property
    def projection(self) -> LinearMap:
        return LinearMap.from_function(self.ambient, self.space, self.project_basis)

    @cached_property
    def section(self) -> LinearMap:
        return LinearMap.from_function(self.space, self.ambient, lambda i: {self.basis_indices[i]: 1})


def quotient_by_relations(ambient: BasedSpace, relations: Iterable[Mapping[int, object]]) -> QuotientSpace:
    return QuotientSpace(ambient, relations)


class NotWellDefined(Exception):
    """A map fails to descend: ``relation`` has a nonzero ``image``."""

    def __init__(self, relation: dict, image: dict):
        self.relation = relation
        self.image = image
        super().__init__(f"relation {sorted(relation.items())} maps to nonzero {sorted(image.items())}")


def first_bad_relation(relations: Iterable[Mapping], image: Callable[[Mapping], Mapping]):
    """First relation whose image is nonzero, as ``(relation, image)``; else None."""
    for r in relations:
        v = image(r)
        if v:
            return dict(r), dict(v)
    return None


def induce_map(f: LinearMap, dom: QuotientSpace, cod: QuotientSpace) -> LinearMap:
    """``cod.projection ∘ f ∘ dom.section`` after certifying it descends."""
    if f.domain.dim != dom.ambient.dim or f.codomain.dim != cod.ambient.dim:
        raise DimensionError("f", "domain/codomain must be the ambient spaces of the quotients")
    bad = first_bad_relation(dom.relations, lambda r: cod.project(f(r)))
    if bad:
        raise NotWellDefined(*bad)
    return LinearMap.from_function(dom.space, cod.space, lambda i: cod.project(f.image(dom.basis_indices[i])))


@dataclass(frozen=True)
class Membership:
    member: bool
    coefficients: dict | None = None  # v = sum coefficients[i] * generators[i]
    functional: dict | None = field(default=None)  # vanishes on generators, nonzero on v


def subspace_membership(space: BasedSpace, generators: Sequence[Mapping], v: Mapping) -> Membership:
    """Decide ``v ∈ span(generators)`` with a certificate either way."""
    for g in list(generators) + [v]:
        for k in g:
            if not 0 <= k < space.dim:
                raise DimensionError("vector", f"index {k} outside dimension {space.dim}")
    A = Matrix.from_columns(space.dim, generators)
    sol = rref_solve(A, [v])[0]
    if sol.member:
        return Membership(True, coefficients=sol.coefficients)
    ech = RowEchelon(space.dim)
    ech.extend(generators)
    rows = ech.reduced()
    r = ech.reduce(v)
    q = min(r)
    functional = {q: Fraction(1)}
    for p, row in rows.items():
        c = row.get(q)
        if c:
            functional[p] = -c
    return Membership(False, functional=functional)


def tensor_labels(*spaces: BasedSpace) -> BasedSpace:
    out = spaces[0]
    for s in spaces[1:]:
        out = out.tensor(s)
    return out


def basis_tuples(*dims: int):
    return product(*(range(d) for d in dims))
