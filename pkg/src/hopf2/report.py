"""Axiom definitions and check reports.

An :class:`Axiom` is a named identity ``lhs(t) == rhs(t)`` over a finite set
of basis tuples ``t``.  Both sides are sparse elements (int- or tuple-keyed
dicts), compared exactly.  Keeping axioms as data lets tests evaluate any
single tuple independently of the report machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Mapping

from .exactlin import format_scalar


@dataclass(frozen=True)
class Witness:
    basis: tuple
    lhs: dict
    rhs: dict
    note: str = ""

    def to_json(self) -> dict:
        def coords(v: Mapping) -> list:
            return [[list(k) if isinstance(k, tuple) else k, format_scalar(c)] for k, c in sorted(v.items())]

        out = {"basis": list(self.basis), "lhs": coords(self.lhs), "rhs": coords(self.rhs)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class AxiomResult:
    id: str
    passed: bool
    witness: Witness | None = None
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class CheckReport:
    entries: list[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self) -> bool:
        return self.passed

    def add(self, entry: AxiomResult) -> AxiomResult:
        self.entries.append(entry)
        return entry

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.entries.extend(other.entries)
        return self

    def passes(self, axiom_id: str) -> bool:
        return self[axiom_id].passed

    def __getitem__(self, axiom_id: str) -> AxiomResult:
        for e in self.entries:
            if e.id == axiom_id:
                return e
        raise KeyError(axiom_id)

    def __contains__(self, axiom_id: str) -> bool:
        return any(e.id == axiom_id for e in self.entries)

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    @property
    def failures(self) -> list[AxiomResult]:
        return [e for e in self.entries if not e.passed]

    def first_failure(self) -> AxiomResult | None:
        return next((e for e in self.entries if not e.passed), None)

    def summary(self) -> str:
        lines = []
        for e in self.entries:
            line = f"{e.status.upper():4}  {e.id}"
            if e.witness is not None:
                line += f"  witness={e.witness.basis}"
            if e.detail:
                line += f"  ({e.detail})"
            lines.append(line)
        return "\n".join(lines)


@dataclass(frozen=True)
class Axiom:
    id: str
    dims: tuple[int, ...]
    lhs: Callable[..., Mapping]
    rhs: Callable[..., Mapping]

    def tuples(self) -> Iterable[tuple]:
        return product(*(range(d) for d in self.dims))

    def sides(self, t: tuple) -> tuple[dict, dict]:
        return dict(self.lhs(*t)), dict(self.rhs(*t))

    def check(self) -> AxiomResult:
        for t in self.tuples():
            left, right = self.sides(t)
            if left != right:
                return AxiomResult(self.id, False, Witness(t, left, right))
        return AxiomResult(self.id, True)


def run_axioms(axioms: Iterable[Axiom]) -> CheckReport:
    report = CheckReport()
    for ax in axioms:
        report.add(ax.check())
    return report


def combine(*axioms: Axiom, id: str) -> Axiom:
    """Several identities over the same tuples reported under one id."""
    dims = axioms[0].dims
    if any(a.dims != dims for a in axioms):
        raise ValueError("combined axioms must range over the same tuples")

    def lhs(*t):
        return {(n,) + (k if isinstance(k, tuple) else (k,)): c for n, a in enumerate(axioms) for k, c in a.lhs(*t).items()}

    def rhs(*t):
        return {(n,) + (k if isinstance(k, tuple) else (k,)): c for n, a in enumerate(axioms) for k, c in a.rhs(*t).items()}

    return Axiom(id, dims, lhs, rhs)


class ConstructionError(Exception):
    """A builder rejected its input; ``report`` holds the failing checks."""

    def __init__(self, message: str, report: CheckReport):
        self.report = report
        first = report.first_failure()
        super().__init__(f"{message}: {first.id} failed" if first else message)
