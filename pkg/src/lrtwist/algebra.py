"""Finite-dimensional unital associative algebras given by structure constants."""
from __future__ import annotations

from typing import Sequence

from .exactfield import Field, Matrix, ShapeError, basis_vector
from .legs import Env, Identity, LinMap, program_map, verify
from .report import Report


class Algebra:
    """``e_i e_j = sum_k c_ij^k e_k`` with a unit vector.

    The multiplication is stored as a ``dim x dim^2`` matrix ``M`` with
    ``M[k, i*dim + j] = c_ij^k``, i.e. as the linear map ``A (x) A -> A``.
    """

    __slots__ = ("field", "dim", "mult", "unit", "label", "_lin")

    def __init__(self, field: Field, mult: Matrix, unit: Sequence, label: str = ""):
        n = mult.rows
        if mult.cols != n * n:
            raise ShapeError(f"multiplication matrix must be {n}x{n * n}, got {mult.shape}")
        if len(unit) != n:
            raise ShapeError(f"unit vector has length {len(unit)}, expected {n}")
        if mult.field != field:
            raise ValueError("multiplication matrix lives over a different field")
        self.field = field
        self.dim = n
        self.mult = mult
        self.unit = tuple(field(u) for u in unit)
        self.label = label
        self._lin = None

    @classmethod
    def from_tensor(cls, field: Field, c, unit: Sequence, label: str = "") -> "Algebra":
        n = len(c)
        if any(len(row) != n or any(len(cell) != n for cell in row) for row in c):
            raise ShapeError(f"structure constants must have shape {n}x{n}x{n}")
        entries = {}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    v = field(c[i][j][k])
                    if v:
                        entries[(k, i * n + j)] = v
        return cls(field, Matrix.from_sparse(field, n, n * n, entries), unit, label)

    def tensor(self) -> list[list[list]]:
        n = self.dim
        return [[[self.mult[k, i * n + j] for k in range(n)] for j in range(n)] for i in range(n)]

    @property
    def mult_map(self) -> LinMap:
        if self._lin is None:
            self._lin = LinMap(self.mult, (self.dim, self.dim), (self.dim,), self.label or "m")
        return self._lin

    @property
    def unit_map(self) -> LinMap:
        return LinMap(Matrix(self.field, [[u] for u in self.unit]), (), (self.dim,), "1")

    def relabel(self, label: str) -> "Algebra":
        return Algebra(self.field, self.mult, self.unit, label)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Algebra) and self.field == other.field
                and self.mult == other.mult and self.unit == other.unit)

    def __hash__(self) -> int:
        return hash((self.field, self.mult, self.unit))

    def __repr__(self) -> str:
        return f"Algebra({self.label or '?'}, dim={self.dim}, {self.field.tag})"


def bind_algebra(env: Env, space: str, alg: Algebra, symbol: str,
                 mult: str | None = None, unit: str | None = None) -> Env:
    """Declare ``space`` with basis symbol ``symbol`` and bind ``m<space>``/``u<space>``."""
    env.space(space, alg.dim, symbol)
    env.bind(mult or f"m{space}", alg.mult_map, f"{space} {space} -> {space}")
    env.bind(unit or f"u{space}", alg.unit_map, f"-> {space}")
    return env


def algebra_env(field: Field, **algebras: tuple[Algebra, str]) -> Env:
    env = Env(field)
    for space, (alg, symbol) in algebras.items():
        if alg.field != field:
            raise ValueError(f"algebra {space} lives over {alg.field.tag}, expected {field.tag}")
        bind_algebra(env, space, alg, symbol)
    return env


def algebra_from_program(env: Env, inputs: str, program: str, unit: Sequence, label: str) -> Algebra:
    """An algebra whose multiplication is the composite ``program`` of two inputs.

    Both inputs must range over the same (possibly composite) basis; the caller
    flattens tensor legs by listing them in order, e.g. ``"a:A b:B a':A b':B"``.
    """
    lm = program_map(env, inputs, program, label)
    return Algebra(env.field, lm.matrix, unit, label)


ALGEBRA_AXIOMS = (
    Identity("unit", "j:A", "uA()->o; mA(o,j)->x => x", "=> j", "1 e_j = e_j"),
    Identity("unit", "j:A", "uA()->o; mA(j,o)->x => x", "=> j", "e_j 1 = e_j"),
    Identity("assoc", "i:A j:A k:A", "mA(i,j)->x; mA(x,k)->y => y",
             "mA(j,k)->x; mA(i,x)->y => y", "(e_i e_j) e_k = e_i (e_j e_k)"),
)


def check_algebra(a: Algebra, jobs: int = 1) -> Report:
    env = algebra_env(a.field, A=(a, "e"))
    return verify(ALGEBRA_AXIOMS, env, f"algebra {a.label}".strip(), jobs)


def multiply(a: Algebra, x: Sequence, y: Sequence) -> tuple:
    if len(x) != a.dim or len(y) != a.dim:
        raise ShapeError(f"vectors must have length {a.dim}")
    f = a.field
    xy = [f.mul(f(u), f(v)) for u in x for v in y]
    return a.mult.apply(xy)


def opposite(a: Algebra) -> Algebra:
    n = a.dim
    return Algebra(a.field, a.mult @ Matrix.flip(a.field, n, n), a.unit,
                   f"{a.label}^op" if a.label else "")


def tensor_algebra(a: Algebra, b: Algebra) -> Algebra:
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field.tag} vs {b.field.tag}")
    f = a.field
    na, nb = a.dim, b.dim
    # (a (x) b) (a' (x) b') = aa' (x) bb'
    swap = Matrix.permutation(f, (na, nb, na, nb), (0, 2, 1, 3))
    mult = a.mult.kron(b.mult) @ swap
    unit = [f.mul(u, v) for u in a.unit for v in b.unit]
    label = f"{a.label}⊗{b.label}" if a.label or b.label else ""
    return Algebra(f, mult, unit, label)


def base_algebra(field: Field) -> Algebra:
    """The ground field as a one-dimensional algebra."""
    return Algebra(field, Matrix(field, [[1]]), [1], "k")


class AlgebraMorphism:
    __slots__ = ("source", "target", "matrix", "label")

    def __init__(self, source: Algebra, target: Algebra, matrix: Matrix, label: str = ""):
        if matrix.shape != (target.dim, source.dim):
            raise ShapeError(f"morphism matrix must be {target.dim}x{source.dim}, got {matrix.shape}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.label = label

    @classmethod
    def identity(cls, a: Algebra) -> "AlgebraMorphism":
        return cls(a, a, Matrix.identity(a.field, a.dim), "id")

    def __call__(self, vec: Sequence) -> tuple:
        return self.matrix.apply(vec)

    def __repr__(self) -> str:
        return f"AlgebraMorphism({self.source.label} -> {self.target.label})"


MORPHISM_AXIOMS = (
    Identity("unital", "", "uS()->o; f(o)->x => x", "uT()->x => x", "f(1) = 1"),
    Identity("multiplicative", "x:S y:S", "mS(x,y)->z; f(z)->w => w",
             "f(x)->u; f(y)->v; mT(u,v)->w => w", "f(xy) = f(x)f(y)"),
)


def check_morphism(m: AlgebraMorphism, jobs: int = 1) -> Report:
    env = algebra_env(m.source.field, S=(m.source, "e"), T=(m.target, "e"))
    env.bind("f", m.matrix, "S -> T")
    return verify(MORPHISM_AXIOMS, env, f"morphism {m.label}".strip(), jobs)


def is_isomorphism(m: AlgebraMorphism, report: Report | None = None) -> bool:
    rep = check_morphism(m) if report is None else report
    return (rep.ok and m.source.dim == m.target.dim
            and m.matrix.rank() == m.source.dim)


def isomorphism_report(m: AlgebraMorphism, subject: str = "") -> Report:
    """:func:`check_morphism` plus a ``bijective`` line."""
    rep = check_morphism(m)
    rep.subject = subject or rep.subject
    square = m.source.dim == m.target.dim
    rank = m.matrix.rank()
    rep.record("bijective", square and rank == m.source.dim,
               f"(bijective) fails: rank {rank}, source dim {m.source.dim}, target dim {m.target.dim}")
    return rep


def unit_vector(a: Algebra, i: int) -> tuple:
    return basis_vector(a.field, a.dim, i)


def multiplication_table(a: Algebra, symbol: str = "e") -> str:
    """Aligned text table of all products ``e_i e_j``."""
    from .legs import format_tensor
    n = a.dim
    cells = [[format_tensor({(k,): v for k, v in enumerate(a.mult.column(i * n + j)) if v}, (symbol,))
              for j in range(n)] for i in range(n)]
    heads = [f"{symbol}{j}" for j in range(n)]
    width = max(len(x) for x in heads + [c for row in cells for c in row])
    left = max(len(f"{symbol}{n - 1}"), 1)
    lines = [" " * left + " | " + " ".join(h.rjust(width) for h in heads),
             "-" * left + "-+-" + "-" * ((width + 1) * n - 1)]
    for i, row in enumerate(cells):
        lines.append(f"{symbol}{i}".rjust(left) + " | " + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines)
