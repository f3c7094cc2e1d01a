"""JSON container for every structure, with blocks cross-referenced by label.

A document is ``{"field": "Q", "root": label, "blocks": [{"kind": ..., "label": ...}, ...]}``.
Scalars are integers or strings such as ``"-3/4"``.  A bare algebra
``{"field", "dim", "unit", "mult"}`` (with ``mult[i][j][k] = c_ij^k``) is also accepted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

from .algebra import Algebra
from .exactfield import Field, FieldError, Matrix, field_from_tag
from .hopf import Bialgebra, BicomoduleAlgebra, BimoduleAlgebra, HopfAlgebra, YDLAlgebra
from .invariance import Cocycle, TwistData
from .iterate import TripleData
from .twisted import LRPair, QMap, TwistingMap

KINDS = ("algebra", "map", "bialgebra", "hopf", "twisting", "qmap", "lrpair", "bimodule",
         "bicomodule", "ydl", "cocycle", "twistdata", "triple")


class SerializationError(ValueError):
    pass


def _scalar_out(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def _scalar_in(fld: Field, x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SerializationError(f"{where}: scalar must be an integer or a string, got {x!r}")
    try:
        return fld(Fraction(x) if isinstance(x, str) else x)
    except (ValueError, ZeroDivisionError, FieldError) as exc:
        raise SerializationError(f"{where}: bad scalar {x!r} ({exc})") from None


# -- export ---------------------------------------------------------------------------


class _Writer:
    def __init__(self, fld: Field):
        self.field = fld
        self.blocks: list[dict] = []
        self.seen: dict[int, str] = {}
        self.labels: set[str] = set()
        self.keep: list[Any] = []
        self.algebras: dict[str, Algebra] = {}
        self.root: tuple[int, str] | None = None

    def _label(self, wanted: str) -> str:
        base = wanted or "block"
        label, n = base, 2
        while label in self.labels:
            label, n = f"{base}#{n}", n + 1
        self.labels.add(label)
        return label

    def reserve(self, obj, label: str):
        """Keep ``label`` for ``obj`` even if a component asks for it first."""
        self.labels.add(label)
        self.root = (id(obj), label)

    def _emit(self, obj, kind: str, wanted: str, body: dict) -> str:
        if self.root is not None and self.root[0] == id(obj):
            label = self.root[1]
        else:
            label = self._label(wanted)
        self.seen[id(obj)] = label
        self.keep.append(obj)
        self.blocks.append({"kind": kind, "label": label, **body})
        return label

    def matrix(self, m: Matrix, wanted: str) -> str:
        if id(m) in self.seen:
            return self.seen[id(m)]
        body = {"shape": [m.rows, m.cols], "matrix": [[_scalar_out(x) for x in row] for row in m.to_lists()]}
        return self._emit(m, "map", wanted, body)

    def add(self, obj, wanted: str = "") -> str:
        if id(obj) in self.seen:
            return self.seen[id(obj)]
        if obj.__class__ is Algebra:
            for label, known in self.algebras.items():
                if known == obj and known.label == obj.label:
                    self.seen[id(obj)] = label
                    return label
            body = {"dim": obj.dim, "unit": [_scalar_out(u) for u in obj.unit],
                    "mult": [[[_scalar_out(v) for v in cell] for cell in row] for row in obj.tensor()]}
            label = self._emit(obj, "algebra", wanted or obj.label or "A", body)
            self.algebras[label] = obj
            return label
        if isinstance(obj, Bialgebra):
            alg = self.add(obj.alg)
            body = {"algebra": alg, "comult": self.matrix(obj.comult, f"Δ {obj.label}"),
                    "counit": [_scalar_out(x) for x in obj.counit]}
            return self._emit(obj, "bialgebra", wanted or f"bialgebra {obj.label}", body)
        if isinstance(obj, HopfAlgebra):
            body = {"bialgebra": self.add(obj.bialg), "antipode": self.matrix(obj.antipode, f"S {obj.label}"),
                    "antipode_inv": (self.matrix(obj.antipode_inv, f"S^-1 {obj.label}")
                                     if obj.antipode_inv is not None else None)}
            return self._emit(obj, "hopf", wanted or f"hopf {obj.label}", body)
        if isinstance(obj, TwistingMap):
            body = {"A": self.add(obj.a), "B": self.add(obj.b), "R": self.matrix(obj.map, "R")}
            return self._emit(obj, "twisting", wanted or "twisting map", body)
        if isinstance(obj, QMap):
            body = {"A": self.add(obj.a), "B": self.add(obj.b), "Q": self.matrix(obj.map, "Q")}
            return self._emit(obj, "qmap", wanted or "Q-map", body)
        if isinstance(obj, LRPair):
            body = {"A": self.add(obj.a), "B": self.add(obj.b), "R": self.matrix(obj.r.map, f"{wanted} R".strip()),
                    "Q": self.matrix(obj.q.map, f"{wanted} Q".strip())}
            return self._emit(obj, "lrpair", wanted or "pair", body)
        if isinstance(obj, BimoduleAlgebra):
            body = {"H": self.add(obj.h), "algebra": self.add(obj.alg),
                    "left": self.matrix(obj.left_action, f"left action on {obj.alg.label}"),
                    "right": self.matrix(obj.right_action, f"right action on {obj.alg.label}")}
            return self._emit(obj, "bimodule", wanted or f"bimodule {obj.alg.label}", body)
        if isinstance(obj, BicomoduleAlgebra):
            body = {"H": self.add(obj.h), "algebra": self.add(obj.alg),
                    "left": self.matrix(obj.left_coaction, f"left coaction on {obj.alg.label}"),
                    "right": self.matrix(obj.right_coaction, f"right coaction on {obj.alg.label}")}
            return self._emit(obj, "bicomodule", wanted or f"bicomodule {obj.alg.label}", body)
        if isinstance(obj, YDLAlgebra):
            body = {"H": self.add(obj.h), "bimodule": self.add(obj.bimod), "bicomodule": self.add(obj.bicomod)}
            return self._emit(obj, "ydl", wanted or f"ydl {obj.alg.label}", body)
        if isinstance(obj, Cocycle):
            body = {"H": self.add(obj.h), "F": [_scalar_out(x) for x in obj.f],
                    "F_inv": [_scalar_out(x) for x in obj.f_inv]}
            return self._emit(obj, "cocycle", wanted or "cocycle", body)
        if isinstance(obj, TwistData):
            body = {"pair": self.add(obj.pair, "pair")}
            for name in ("mu_l", "mu_r", "rho_r", "rho_l", "lambda_r", "lambda_l"):
                body[name] = self.matrix(getattr(obj, name), name)
            return self._emit(obj, "twistdata", wanted or "twist data", body)
        if isinstance(obj, TripleData):
            body = {name: self.add(getattr(obj, name), name) for name in ("p1", "p2", "p3")}
            return self._emit(obj, "triple", wanted or "triple", body)
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_document(obj, label: str = "") -> dict:
    """One document for ``obj``; a list or tuple puts several structures in one
    file, the first being the root."""
    objs = list(obj) if isinstance(obj, (list, tuple)) else [obj]
    if not objs:
        raise ValueError("nothing to serialize")
    fields = {(o.field if hasattr(o, "field") else _field_of(o)) for o in objs}
    if len(fields) != 1:
        raise ValueError("all structures in one document must share a field")
    fld = fields.pop()
    w = _Writer(fld)
    if label:
        w.reserve(objs[0], label)
    root = w.add(objs[0], label)
    for o in objs[1:]:
        w.add(o)
    return {"format": "lrtwist", "field": fld.tag, "root": root, "blocks": w.blocks}


def _field_of(obj) -> Field:
    for attr in ("a", "alg", "h", "pair", "p1"):
        if hasattr(obj, attr):
            inner = getattr(obj, attr)
            return inner.field if hasattr(inner, "field") else _field_of(inner)
    raise TypeError(f"cannot determine the field of {type(obj).__name__}")


def dumps(obj, label: str = "") -> str:
    return json.dumps(to_document(obj, label), indent=1, ensure_ascii=False) + "\n"


def algebra_json(alg: Algebra) -> dict:
    """The standalone algebra format."""
    return {"field": alg.field.tag, "label": alg.label, "dim": alg.dim,
            "unit": [_scalar_out(u) for u in alg.unit],
            "mult": [[[_scalar_out(v) for v in cell] for cell in row] for row in alg.tensor()]}


# -- import ---------------------------------------------------------------------------


@dataclass
class Document:
    field: Field
    objects: dict[str, Any] = dc_field(default_factory=dict)
    kinds: dict[str, str] = dc_field(default_factory=dict)
    root: str | None = None

    def get(self, label: str | None = None):
        label = label or self.root
        if label not in self.objects:
            raise SerializationError(f"no block labelled {label!r}")
        return self.objects[label]

    def first(self, kind: str):
        for label, k in self.kinds.items():
            if k == kind:
                return self.objects[label]
        raise SerializationError(f"document has no {kind} block")


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_data(data)


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return loads(text)
    except SerializationError as exc:
        raise SerializationError(f"{path}: {exc}") from None


def from_data(data) -> Document:
    if not isinstance(data, dict):
        raise SerializationError("top level must be a JSON object")
    try:
        fld = field_from_tag(str(data.get("field", "Q")))
    except FieldError as exc:
        raise SerializationError(str(exc)) from None
    doc = Document(fld)
    if "blocks" not in data:
        if "mult" in data:
            alg = _algebra(fld, {"label": data.get("label", "A"), **data}, "algebra")
            doc.objects[alg.label or "A"] = alg
            doc.kinds[alg.label or "A"] = "algebra"
            doc.root = alg.label or "A"
            return doc
        raise SerializationError("expected a 'blocks' list or a bare algebra with 'mult'")
    blocks = data["blocks"]
    if not isinstance(blocks, list):
        raise SerializationError("'blocks' must be a list")
    for n, blk in enumerate(blocks):
        where = f"block {n}"
        if not isinstance(blk, dict) or "kind" not in blk or "label" not in blk:
            raise SerializationError(f"{where}: needs 'kind' and 'label'")
        where = f"block {n} ({blk['label']!r})"
        if blk["kind"] not in KINDS:
            raise SerializationError(f"{where}: unknown kind {blk['kind']!r}")
        if blk["label"] in doc.objects:
            raise SerializationError(f"{where}: duplicate label")
        try:
            obj = _BUILD[blk["kind"]](fld, blk, doc, where)
        except SerializationError:
            raise
        except (KeyError, TypeError, IndexError) as exc:
            raise SerializationError(f"{where}: missing or malformed field {exc}") from None
        except ValueError as exc:
            raise SerializationError(f"{where}: {exc}") from None
        doc.objects[blk["label"]] = obj
        doc.kinds[blk["label"]] = blk["kind"]
    doc.root = data.get("root") or (blocks[-1]["label"] if blocks else None)
    return doc


def _ref(doc: Document, blk: dict, key: str, kinds: tuple[str, ...], where: str):
    label = blk[key]
    if label not in doc.objects:
        raise SerializationError(f"{where}: '{key}' refers to unknown block {label!r}")
    if doc.kinds[label] not in kinds:
        raise SerializationError(f"{where}: '{key}' must reference a {'/'.join(kinds)} block, "
                                 f"got {doc.kinds[label]}")
    return doc.objects[label]


def _algebra(fld: Field, blk: dict, where: str) -> Algebra:
    c = blk["mult"]
    n = len(c)
    if "dim" in blk and blk["dim"] != n:
        raise SerializationError(f"{where}: dim {blk['dim']} but mult has {n} rows")
    for i, row in enumerate(c):
        if len(row) != n or any(len(cell) != n for cell in row):
            raise SerializationError(f"{where}: mult[{i}] must be {n}x{n}")
    vals = [[[_scalar_in(fld, v, f"{where} mult[{i}][{j}][{k}]") for k, v in enumerate(cell)]
             for j, cell in enumerate(row)] for i, row in enumerate(c)]
    unit = [_scalar_in(fld, u, f"{where} unit[{i}]") for i, u in enumerate(blk["unit"])]
    return Algebra.from_tensor(fld, vals, unit, blk.get("label", ""))


def _map(fld: Field, blk: dict, doc, where: str) -> Matrix:
    rows = blk["matrix"]
    shape = blk.get("shape")
    if not rows or not isinstance(rows, list):
        raise SerializationError(f"{where}: 'matrix' must be a non-empty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise SerializationError(f"{where}: ragged matrix")
    if shape is not None and list(shape) != [len(rows), width]:
        raise SerializationError(f"{where}: shape {shape} does not match {len(rows)}x{width}")
    return Matrix(fld, [[_scalar_in(fld, v, f"{where} matrix[{i}][{j}]") for j, v in enumerate(r)]
                        for i, r in enumerate(rows)])


def _maps(doc, blk, where, *keys):
    return [_ref(doc, blk, k, ("map",), where) for k in keys]


def _bi(doc, blk, where, key="H"):
    h = _ref(doc, blk, key, ("bialgebra", "hopf"), where)
    return h


_BUILD = {
    "algebra": lambda f, b, d, w: _algebra(f, b, w),
    "map": _map,
    "bialgebra": lambda f, b, d, w: Bialgebra(
        _ref(d, b, "algebra", ("algebra",), w), *_maps(d, b, w, "comult"),
        [_scalar_in(f, x, f"{w} counit") for x in b["counit"]]),
    "hopf": lambda f, b, d, w: HopfAlgebra(
        _ref(d, b, "bialgebra", ("bialgebra",), w), *_maps(d, b, w, "antipode"),
        _ref(d, b, "antipode_inv", ("map",), w) if b.get("antipode_inv") else None),
    "twisting": lambda f, b, d, w: TwistingMap(
        _ref(d, b, "A", ("algebra",), w), _ref(d, b, "B", ("algebra",), w), *_maps(d, b, w, "R")),
    "qmap": lambda f, b, d, w: QMap(
        _ref(d, b, "A", ("algebra",), w), _ref(d, b, "B", ("algebra",), w), *_maps(d, b, w, "Q")),
    "lrpair": lambda f, b, d, w: LRPair.from_matrices(
        _ref(d, b, "A", ("algebra",), w), _ref(d, b, "B", ("algebra",), w), *_maps(d, b, w, "R", "Q")),
    "bimodule": lambda f, b, d, w: BimoduleAlgebra(
        _bi(d, b, w), _ref(d, b, "algebra", ("algebra",), w), *_maps(d, b, w, "left", "right")),
    "bicomodule": lambda f, b, d, w: BicomoduleAlgebra(
        _bi(d, b, w), _ref(d, b, "algebra", ("algebra",), w), *_maps(d, b, w, "left", "right")),
    "ydl": lambda f, b, d, w: YDLAlgebra(
        _bi(d, b, w), _ref(d, b, "bimodule", ("bimodule",), w), _ref(d, b, "bicomodule", ("bicomodule",), w)),
    "cocycle": lambda f, b, d, w: Cocycle(
        _bi(d, b, w), [_scalar_in(f, x, f"{w} F") for x in b["F"]],
        [_scalar_in(f, x, f"{w} F_inv") for x in b["F_inv"]]),
    "twistdata": lambda f, b, d, w: TwistData(
        _ref(d, b, "pair", ("lrpair",), w),
        *_maps(d, b, w, "mu_l", "mu_r", "rho_r", "rho_l", "lambda_r", "lambda_l")),
    "triple": lambda f, b, d, w: TripleData(
        *(_ref(d, b, k, ("lrpair",), w) for k in ("p1", "p2", "p3"))),
}
