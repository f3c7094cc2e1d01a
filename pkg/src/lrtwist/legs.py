"""Leg calculus: multilinear identities as wiring programs over named tensor legs.

Every identity in this package has the shape "two composites of linear maps
agree on all basis tuples".  A side is written as a tiny program::

    "R(b,a)->a1,b1; R(b1,a')->a2,b2; mA(a1,a2)->x => x,b2"

Each step consumes the named legs in parentheses, applies the map bound to the
step name, and produces new named legs.  ``=>`` lists the result legs in
output order.  Maps without inputs (units) are written ``uB()->y``; maps into
the ground field (counits) are written ``eps(h)->``.

Tensors are sparse dicts ``{index tuple: raw coefficient}`` so that the
mostly-permutation maps of the catalog stay cheap.
"""
from __future__ import annotations

import itertools
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from .exactfield import Field, Matrix, ShapeError, TensorShape, format_scalar
from .report import CheckResult, Report


class LinMap:
    """A matrix read as a map between tensor products ``dom -> cod``."""

    __slots__ = ("name", "dom", "cod", "matrix", "_cols", "_dom_strides")

    def __init__(self, matrix: Matrix, dom: Sequence[int], cod: Sequence[int], name: str = ""):
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        if math.prod(self.dom) != matrix.cols or math.prod(self.cod) != matrix.rows:
            raise ShapeError(f"map {name or '?'}: matrix {matrix.shape} does not fit "
                             f"{self.dom} -> {self.cod}")
        self.matrix = matrix
        self.name = name
        cod_shape = TensorShape(self.cod) if self.cod else None
        cols: list[list[tuple[tuple[int, ...], object]]] = [[] for _ in range(matrix.cols)]
        for i, j, v in matrix.nonzero():
            out = cod_shape.unflat(i) if cod_shape else ()
            cols[j].append((out, v))
        self._cols = cols
        strides = []
        s = 1
        for d in reversed(self.dom):
            strides.append(s)
            s *= d
        self._dom_strides = tuple(reversed(strides))

    @property
    def field(self) -> Field:
        return self.matrix.field

    def column(self, index: Sequence[int]):
        return self._cols[sum(i * s for i, s in zip(index, self._dom_strides))]

    def reshape(self, dom: Sequence[int], cod: Sequence[int], name: str | None = None) -> "LinMap":
        return LinMap(self.matrix, dom, cod, self.name if name is None else name)

    def __repr__(self) -> str:
        return f"LinMap({self.name}: {self.dom} -> {self.cod})"

    @classmethod
    def identity(cls, field: Field, dims: Sequence[int], name: str = "id") -> "LinMap":
        return cls(Matrix.identity(field, math.prod(dims)), dims, dims, name)

    @classmethod
    def element(cls, field: Field, vec: Sequence, dims: Sequence[int], name: str = "") -> "LinMap":
        """The map k -> V picking out ``vec``."""
        return cls(Matrix(field, [[field(v)] for v in vec]), (), dims, name)

    @classmethod
    def functional(cls, field: Field, row: Sequence, dims: Sequence[int], name: str = "") -> "LinMap":
        """The map V -> k given by a row vector."""
        return cls(Matrix(field, [[field(v) for v in row]]), dims, (), name)


# -- program parsing -----------------------------------------------------------

_STEP = re.compile(r"^\s*([A-Za-z_][\w]*)\s*\(([^)]*)\)\s*->\s*(.*?)\s*$")


def _names(text: str) -> tuple[str, ...]:
    return tuple(t for t in re.split(r"[\s,]+", text.strip()) if t)


def parse_program(text: str) -> tuple[list[tuple[str, tuple[str, ...], tuple[str, ...]]], tuple[str, ...]]:
    if "=>" not in text:
        raise ValueError(f"program lacks '=>' result clause: {text!r}")
    body, result = text.rsplit("=>", 1)
    steps = []
    for chunk in body.split(";"):
        if not chunk.strip():
            continue
        m = _STEP.match(chunk)
        if not m:
            raise ValueError(f"cannot parse step {chunk.strip()!r}")
        steps.append((m.group(1), _names(m.group(2)), _names(m.group(3))))
    return steps, _names(result)


@dataclass(frozen=True)
class Identity:
    """``lhs == rhs`` for all basis values of the declared inputs."""

    label: str
    inputs: str          # e.g. "b:B a:A a':A"
    lhs: str
    rhs: str
    formula: str = ""

    def input_list(self) -> list[tuple[str, str]]:
        out = []
        for tok in self.inputs.split():
            var, space = tok.split(":")
            out.append((var, space))
        return out


class Env:
    """Named spaces ``{name: (dim, basis symbol)}`` and typed map bindings.

    A binding carries a signature such as ``"B A -> A B"``; compiling an
    identity checks every leg against it, so two spaces of equal dimension
    can never be confused.
    """

    def __init__(self, field: Field, spaces: Mapping[str, tuple[int, str]] | None = None):
        self.field = field
        self.spaces: dict[str, tuple[int, str]] = dict(spaces or {})
        self.maps: dict[str, tuple[LinMap, tuple[str, ...], tuple[str, ...]]] = {}

    def space(self, name: str, dim: int, symbol: str) -> "Env":
        self.spaces[name] = (dim, symbol)
        return self

    def bind(self, name: str, lm: LinMap | Matrix, signature: str) -> "Env":
        dom_s, cod_s = signature.split("->")
        dom, cod = _names(dom_s), _names(cod_s)
        for sp in dom + cod:
            if sp not in self.spaces:
                raise KeyError(f"binding {name}: unknown space {sp!r}")
        want = (tuple(self.spaces[sp][0] for sp in dom), tuple(self.spaces[sp][0] for sp in cod))
        if isinstance(lm, Matrix):
            if lm.field != self.field:
                raise ValueError(f"binding {name}: matrix over {lm.field.tag}, env over {self.field.tag}")
            lm = LinMap(lm, *want, name=name)
        elif (lm.dom, lm.cod) != want:
            lm = lm.reshape(*want)
        self.maps[name] = (lm, dom, cod)
        return self

    def copy(self) -> "Env":
        e = Env(self.field, self.spaces)
        e.maps = dict(self.maps)
        return e


@dataclass
class Compiled:
    label: str
    formula: str
    field: Field
    inputs: tuple[tuple[str, int, str], ...]        # (var, dim, basis symbol)
    lhs: tuple[tuple[LinMap, tuple[str, ...], tuple[str, ...]], ...]
    rhs: tuple[tuple[LinMap, tuple[str, ...], tuple[str, ...]], ...]
    lhs_out: tuple[str, ...]
    rhs_out: tuple[str, ...]
    out_spaces: tuple[str, ...]
    out_symbols: tuple[str, ...]

    @property
    def total(self) -> int:
        return math.prod(d for _, d, _ in self.inputs)


def _compile_side(text: str, env: Env, legs: dict[str, str], label: str):
    steps, result = parse_program(text)
    legs = dict(legs)
    compiled = []
    for name, ins, outs in steps:
        if name not in env.maps:
            raise KeyError(f"({label}): unknown map {name!r}")
        lm, dom, cod = env.maps[name]
        for leg in ins:
            if leg not in legs:
                raise KeyError(f"({label}): leg {leg!r} not available before {name}")
        got = tuple(legs[leg] for leg in ins)
        if got != dom:
            raise ShapeError(f"({label}): {name} expects {dom}, legs {ins} live in {got}")
        if len(outs) != len(cod):
            raise ShapeError(f"({label}): {name} yields {len(cod)} legs, {len(outs)} named")
        for leg in ins:
            del legs[leg]
        for leg, sp in zip(outs, cod):
            if leg in legs:
                raise ValueError(f"({label}): leg {leg!r} produced twice")
            legs[leg] = sp
        compiled.append((lm, ins, outs))
    for leg in result:
        if leg not in legs:
            raise KeyError(f"({label}): result leg {leg!r} is not live")
    if len(result) != len(legs) or set(result) != set(legs):
        raise ValueError(f"({label}): result {result} must list exactly the live legs {sorted(legs)}")
    return tuple(compiled), result, tuple(legs[leg] for leg in result)


def compile_identity(ident: Identity, env: Env) -> Compiled:
    legs = {}
    inputs = []
    for var, space in ident.input_list():
        dim, sym = env.spaces[space]
        legs[var] = space
        inputs.append((var, dim, sym))
    lhs, lout, lsp = _compile_side(ident.lhs, env, legs, ident.label)
    rhs, rout, rsp = _compile_side(ident.rhs, env, legs, ident.label)
    if lsp != rsp:
        raise ShapeError(f"({ident.label}): sides land in different spaces {lsp} vs {rsp}")
    return Compiled(ident.label, ident.formula, env.field, tuple(inputs), lhs, rhs, lout, rout,
                    lsp, tuple(env.spaces[sp][1] for sp in lsp))


# -- evaluation -------------------------------------------------------------------


def run_steps(field: Field, names: tuple[str, ...], terms: dict, steps) -> tuple[tuple[str, ...], dict]:
    p = field.p
    for lm, ins, outs in steps:
        pos = [names.index(leg) for leg in ins]
        keep = [i for i in range(len(names)) if i not in pos]
        acc: dict = {}
        for key, c in terms.items():
            col = lm.column([key[i] for i in pos])
            if not col:
                continue
            base = tuple(key[i] for i in keep)
            for out, v in col:
                nk = base + out
                acc[nk] = acc.get(nk, 0) + c * v
        if p is None:
            terms = {k: v for k, v in acc.items() if v != 0}
        else:
            terms = {k: v % p for k, v in acc.items() if v % p}
        names = tuple(names[i] for i in keep) + tuple(outs)
    return names, terms


def _reorder(names: tuple[str, ...], terms: dict, order: tuple[str, ...]) -> dict:
    if names == order:
        return terms
    perm = [names.index(leg) for leg in order]
    return {tuple(k[i] for i in perm): v for k, v in terms.items()}


def evaluate_side(c: Compiled, side: str, index: tuple[int, ...]) -> dict:
    names = tuple(v for v, _, _ in c.inputs)
    steps, out = (c.lhs, c.lhs_out) if side == "lhs" else (c.rhs, c.rhs_out)
    names, terms = run_steps(c.field, names, {tuple(index): c.field.one}, steps)
    return _reorder(names, terms, out)


def format_tensor(terms: dict, symbols: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms):
        v = terms[key]
        basis = "⊗".join(f"{s}{i}" for s, i in zip(symbols, key)) or "1"
        coeff = format_scalar(v)
        parts.append(basis if coeff == "1" else f"{coeff}*{basis}")
    return " + ".join(parts)


def _check_range(c: Compiled, start: int, stop: int):
    shape = TensorShape([d for _, d, _ in c.inputs]) if c.inputs else None
    count = 0
    first = None
    for n in range(start, stop):
        idx = shape.unflat(n) if shape else ()
        lhs = evaluate_side(c, "lhs", idx)
        rhs = evaluate_side(c, "rhs", idx)
        if lhs != rhs:
            count += 1
            if first is None:
                first = (idx, lhs, rhs)
    return count, first


def _check_task(args):
    c, start, stop = args
    return _check_range(c, start, stop)


def _witness(c: Compiled, idx, lhs, rhs) -> tuple[str, dict]:
    where = ", ".join(f"{v}={s}{i}" for (v, _, s), i in zip(c.inputs, idx))
    detail = {"inputs": {v: i for (v, _, _), i in zip(c.inputs, idx)},
              "lhs": format_tensor(lhs, c.out_symbols),
              "rhs": format_tensor(rhs, c.out_symbols)}
    text = f"({c.label}) fails at {where}" if where else f"({c.label}) fails"
    return text + f": lhs = {detail['lhs']}, rhs = {detail['rhs']}", detail


def check_compiled(c: Compiled, jobs: int = 1, pool: ProcessPoolExecutor | None = None) -> CheckResult:
    total = c.total
    if jobs <= 1 or total < 2 * jobs:
        count, first = _check_range(c, 0, total)
    else:
        bounds = [total * k // jobs for k in range(jobs + 1)]
        tasks = [(c, bounds[k], bounds[k + 1]) for k in range(jobs)]
        own = pool is None
        ex = pool or ProcessPoolExecutor(max_workers=jobs)
        try:
            parts = list(ex.map(_check_task, tasks))
        finally:
            if own:
                ex.shutdown()
        count = sum(p[0] for p in parts)
        # chunks are contiguous in lexicographic order, so the first non-empty one wins
        first = next((p[1] for p in parts if p[1] is not None), None)
    if count == 0:
        return CheckResult(c.label, True, total, 0)
    text, detail = _witness(c, *first)
    return CheckResult(c.label, False, total, count, text, detail)


def _merge(a: CheckResult, b: CheckResult) -> CheckResult:
    first = a if not a.passed else b
    return CheckResult(a.label, a.passed and b.passed, a.checked + b.checked,
                       a.violations + b.violations, first.witness, first.detail)


def verify(identities: Sequence[Identity], env: Env, subject: str, jobs: int = 1) -> Report:
    """Evaluate every identity (no short-circuit) and collect a report in list order.

    Consecutive identities sharing a label (the two halves of a unit axiom, say)
    are reported as one check whose witness is the first failing half.
    """
    compiled = [compile_identity(i, env) for i in identities]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [check_compiled(c, jobs, pool) for c in compiled]
    else:
        results = [check_compiled(c) for c in compiled]
    report = Report(subject)
    for r in results:
        if report.results and report.results[-1].label == r.label:
            report.results[-1] = _merge(report.results[-1], r)
        else:
            report.add(r)
    return report


def program_map(env: Env, inputs: str, program: str, name: str = "map") -> LinMap:
    """The composite described by ``program`` as a map from the declared inputs."""
    c = compile_identity(Identity(name, inputs, program, program), env)
    dom = tuple(d for _, d, _ in c.inputs)
    cod = tuple(env.spaces[sp][0] for sp in c.out_spaces)
    out_shape = TensorShape(cod) if cod else None
    entries = {}
    for col, idx in enumerate(itertools.product(*[range(d) for d in dom])):
        for key, v in evaluate_side(c, "lhs", idx).items():
            entries[(out_shape.flat(key) if out_shape else 0, col)] = v
    m = Matrix.from_sparse(env.field, math.prod(cod), math.prod(dom), entries)
    return LinMap(m, dom, cod, name)


def program_matrix(env: Env, inputs: str, program: str, name: str = "map") -> Matrix:
    return program_map(env, inputs, program, name).matrix
