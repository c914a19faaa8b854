"""JSON interchange for structures and reports.

Scalars are strings ``"p/q"`` (or ``"p"``).  Sparse sections are lists of
``[index..., scalar]`` entries sorted by index.  Every loader validates index
ranges and raises :class:`InputError` naming the offending section.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Mapping

from .algebroid import RightBialgebroid
from .bicross import BicrossData, BicrossedModule, Hopf2Algebra
from .catalog import CrossedModuleData, FiniteGroupData
from .exactlin import format_scalar, parse_scalar
from .hopfcore import ActionData, CoactionData, HopfData
from .report import CheckReport
from .tensorspace import BasedSpace, LinearMap

KINDS = ("hopf", "bialgebroid", "bicross", "bicrossed_module", "hopf2", "group", "crossed_module")


class InputError(ValueError):
    def __init__(self, section: str, message: str):
        self.section = section
        super().__init__(f"{section}: {message}")


# -- sparse sections --------------------------------------------------------------

def _entries(rows: Mapping[tuple, Fraction]) -> list:
    return [list(k) + [format_scalar(Fraction(c))] for k, c in sorted(rows.items()) if c]


def _parse_entries(data: Any, section: str, bounds: tuple[int, ...]) -> dict[tuple, Fraction]:
    if not isinstance(data, list):
        raise InputError(section, "expected a list of sparse entries")
    out: dict[tuple, Fraction] = {}
    for row in data:
        if not isinstance(row, list) or len(row) != len(bounds) + 1:
            raise InputError(section, f"entry {row!r} should have {len(bounds)} indices and a scalar")
        *idx, c = row
        for i, b in zip(idx, bounds):
            if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < b:
                raise InputError(section, f"index {i!r} out of range 0..{b - 1}")
        try:
            q = parse_scalar(c)
        except (ValueError, TypeError, ZeroDivisionError) as err:
            raise InputError(section, f"bad scalar {c!r}: {err}") from None
        key = tuple(idx)
        if key in out:
            raise InputError(section, f"duplicate entry for {key}")
        if q:
            out[key] = q
    return out


def _map_entries(m: LinearMap) -> list:
    return _entries({(j, i): c for j, col in enumerate(m.matrix.columns()) for i, c in col.items()})


def _parse_map(data: Any, section: str, dom: BasedSpace, cod: BasedSpace) -> LinearMap:
    cols: list[dict] = [{} for _ in range(dom.dim)]
    for (j, i), c in _parse_entries(data, section, (dom.dim, cod.dim)).items():
        cols[j][i] = c
    return LinearMap.from_columns(dom, cod, cols)


def _tensor_entries(rep: Mapping[int, Mapping[tuple[int, int], Fraction]]) -> list:
    return _entries({(i, j, k): c for i, v in rep.items() for (j, k), c in v.items()})


def _parse_tensor_map(data: Any, section: str, n: int, m: int) -> dict[int, dict]:
    out: dict[int, dict] = {i: {} for i in range(n)}
    for (i, j, k), c in _parse_entries(data, section, (n, m, m)).items():
        out[i][(j, k)] = c
    return out


def _require(data: Mapping, key: str, where: str = "") -> Any:
    if key not in data:
        raise InputError(f"{where}{key}", "required section missing")
    return data[key]


# -- Hopf data ------------------------------------------------------------------------

def hopf_to_json(h: HopfData, kind: str = "hopf") -> dict:
    out: dict[str, Any] = {"kind": kind, "name": h.name, "field": "Q", "basis": list(h.labels)}
    out["mult"] = _entries({(i, j, k): c for (i, j), v in h.mult.items() for k, c in v.items()})
    out["unit"] = _entries({(i,): c for i, c in h.unit.items()})
    if h.comult is not None:
        out["comult"] = _tensor_entries(h.comult)
    if h.counit is not None:
        out["counit"] = _entries({(i,): c for i, c in h.counit.items()})
    if h.antipode is not None:
        out["antipode"] = _map_entries(h.antipode)
    if h.relations:
        out["relations"] = h.relations
    return out


def hopf_from_json(data: Mapping, where: str = "", need_coalgebra: bool = True) -> HopfData:
    if not isinstance(data, Mapping):
        raise InputError(where or "document", "expected an object")
    if data.get("field", "Q") != "Q":
        raise InputError(f"{where}field", "only the rationals 'Q' are supported")
    basis = _require(data, "basis", where)
    if not isinstance(basis, list) or not basis or not all(isinstance(b, str) for b in basis):
        raise InputError(f"{where}basis", "expected a nonempty list of labels")
    try:
        space = BasedSpace(tuple(basis))
    except ValueError as err:
        raise InputError(f"{where}basis", str(err)) from None
    n = space.dim
    mult: dict = {}
    for (i, j, k), c in _parse_entries(_require(data, "mult", where), f"{where}mult", (n, n, n)).items():
        mult.setdefault((i, j), {})[k] = c
    unit = {i: c for (i,), c in _parse_entries(_require(data, "unit", where), f"{where}unit", (n,)).items()}
    comult = counit = antipode = None
    if need_coalgebra or "comult" in data:
        comult = _parse_tensor_map(_require(data, "comult", where), f"{where}comult", n, n)
        counit = {i: c for (i,), c in _parse_entries(_require(data, "counit", where), f"{where}counit", (n,)).items()}
    if "antipode" in data:
        antipode = _parse_map(data["antipode"], f"{where}antipode", space, space)
    return HopfData(space=space, mult=mult, unit=unit, comult=comult, counit=counit, antipode=antipode,
                    name=str(data.get("name", "")), relations=str(data.get("relations", "")))


# -- bicross data ----------------------------------------------------------------------

def bicross_to_json(d: BicrossData, phi: LinearMap | None = None, name: str = "") -> dict:
    nA = d.A.dim
    out: dict[str, Any] = {"kind": "bicrossed_module" if phi is not None else "bicross", "name": name,
                           "field": "Q", "A": hopf_to_json(d.A), "B": hopf_to_json(d.B)}
    # action entries [b, a, k, c]: b ◁ a has coefficient c on e_k
    out["action"] = _entries({(b, a, k): c for j, col in enumerate(d.action.map.matrix.columns())
                              for k, c in col.items() for b, a in [divmod(j, nA)]})
    out["coaction"] = _entries({(a, h, a0): c for a in range(nA) for (h, a0), c in d.coaction.coact_basis(a).items()})
    if phi is not None:
        out["phi"] = _map_entries(phi)
    return out


def bicross_from_json(data: Mapping) -> BicrossData | BicrossedModule:
    A = hopf_from_json(_require(data, "A"), "A.")
    B = hopf_from_json(_require(data, "B"), "B.")
    nA, nB = A.dim, B.dim
    act = _parse_entries(_require(data, "action"), "action", (nB, nA, nB))
    cols: list[dict] = [{} for _ in range(nB * nA)]
    for (b, a, k), c in act.items():
        cols[b * nA + a][k] = c
    action = ActionData(A, B, LinearMap.from_columns(B.space @ A.space, B.space, cols))
    co = _parse_entries(_require(data, "coaction"), "coaction", (nA, nB, nA))
    rows: dict[int, dict] = {a: {} for a in range(nA)}
    for (a, h, a0), c in co.items():
        rows[a][(h, a0)] = c
    coaction = CoactionData.from_function(B, A, lambda a: rows[a])
    d = BicrossData(A, B, action, coaction)
    if data.get("kind") == "bicrossed_module":
        return BicrossedModule(d, _parse_map(_require(data, "phi"), "phi", B.space, A.space))
    return d


# -- bialgebroids and Hopf 2-algebras --------------------------------------------------

def algebroid_to_json(obj: RightBialgebroid | Hopf2Algebra) -> dict:
    if isinstance(obj, Hopf2Algebra):
        r, out = obj.algebroid, hopf_to_json(obj.hopf, "hopf2")
        out["name"] = obj.name or out["name"]
    else:
        r, out = obj, hopf_to_json(obj.total, "bialgebroid")
        out["name"] = r.name or out["name"]
    out["base"] = hopf_to_json(r.base)
    out["source"] = _map_entries(r.source)
    out["target"] = _map_entries(r.target)
    out["algebroid_coproduct"] = _tensor_entries(r.coproduct)
    out["algebroid_counit"] = _map_entries(r.counit)
    if r.full_antipode is not None:
        out["full_antipode"] = _map_entries(r.full_antipode)
    if r.translation is not None:
        out["translation"] = _tensor_entries(r.translation)
    if r.anti_translation is not None:
        out["anti_translation"] = _tensor_entries(r.anti_translation)
    return out


def algebroid_from_json(data: Mapping) -> RightBialgebroid | Hopf2Algebra:
    kind = data.get("kind")
    H = hopf_from_json(data, need_coalgebra=(kind == "hopf2"))
    B = hopf_from_json(_require(data, "base"), "base.")
    n = H.dim
    source = _parse_map(_require(data, "source"), "source", B.space, H.space)
    target = _parse_map(_require(data, "target"), "target", B.space, H.space)
    counit = _parse_map(_require(data, "algebroid_counit"), "algebroid_counit", H.space, B.space)
    cop = _parse_tensor_map(_require(data, "algebroid_coproduct"), "algebroid_coproduct", n, n)
    full = _parse_map(data["full_antipode"], "full_antipode", H.space, H.space) if "full_antipode" in data else None
    tr = _parse_tensor_map(data["translation"], "translation", n, n) if "translation" in data else None
    at = _parse_tensor_map(data["anti_translation"], "anti_translation", n, n) if "anti_translation" in data else None
    r = RightBialgebroid(H, B, source, target, cop, counit, full_antipode=full, translation=tr,
                         anti_translation=at, name=H.name)
    if kind == "hopf2":
        return Hopf2Algebra(H, r, full_antipode=full, name=H.name)
    return r


# -- groups ------------------------------------------------------------------------------

def group_to_json(G: FiniteGroupData) -> dict:
    return {"kind": "group", "labels": list(G.labels), "mult_table": [list(r) for r in G.mult_table]}


def group_from_json(data: Mapping, where: str = "") -> FiniteGroupData:
    table = _require(data, "mult_table", where)
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise InputError(f"{where}mult_table", "expected a list of rows")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in table for x in r):
        raise InputError(f"{where}mult_table", "entries must be integers")
    return FiniteGroupData(tuple(tuple(r) for r in table), tuple(data.get("labels", ())))


def crossed_to_json(c: CrossedModuleData) -> dict:
    return {"kind": "crossed_module", "G": group_to_json(c.G), "H": group_to_json(c.H),
            "boundary": list(c.boundary), "action": [list(r) for r in c.action]}


def crossed_from_json(data: Mapping) -> CrossedModuleData:
    G = group_from_json(_require(data, "G"), "G.")
    H = group_from_json(_require(data, "H"), "H.")
    return CrossedModuleData(G, H, tuple(_require(data, "boundary")), tuple(tuple(r) for r in _require(data, "action")))


# -- dispatch --------------------------------------------------------------------------

def to_json(obj) -> dict:
    if isinstance(obj, HopfData):
        return hopf_to_json(obj)
    if isinstance(obj, (RightBialgebroid, Hopf2Algebra)):
        return algebroid_to_json(obj)
    if isinstance(obj, BicrossedModule):
        return bicross_to_json(obj.base, obj.phi)
    if isinstance(obj, BicrossData):
        return bicross_to_json(obj)
    if isinstance(obj, CrossedModuleData):
        return crossed_to_json(obj)
    if isinstance(obj, FiniteGroupData):
        return group_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json(data: Any):
    if not isinstance(data, Mapping):
        raise InputError("document", "expected a JSON object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise InputError("kind", f"expected one of {', '.join(KINDS)}, got {kind!r}")
    if kind == "hopf":
        return hopf_from_json(data)
    if kind in ("bicross", "bicrossed_module"):
        return bicross_from_json(data)
    if kind in ("bialgebroid", "hopf2"):
        return algebroid_from_json(data)
    if kind == "group":
        return group_from_json(data)
    return crossed_from_json(data)


def dumps(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def digest(data: Any) -> str:
    canon = json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def report_to_json(report: CheckReport, *, tool: str, version: str, source: str, input_digest: str,
                   level: str, witness: bool) -> dict:
    entries = []
    for e in report.entries:
        row: dict[str, Any] = {"id": e.id, "status": e.status}
        if e.detail:
            row["detail"] = e.detail
        if witness and e.witness is not None:
            row["witness"] = e.witness.to_json()
        entries.append(row)
    return {"tool": tool, "version": version, "input": {"source": source, "sha256": input_digest},
            "level": level, "entries": entries, "verdict": "pass" if report.passed else "fail"}
