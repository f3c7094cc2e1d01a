"""Exact scalars and dense matrices over Q and GF(p).

Raw field values are kept unwrapped for speed: ``fractions.Fraction`` over Q
and plain ``int`` residues in ``[0, p)`` over GF(p).  :class:`Scalar` wraps a
raw value together with its field for user-facing arithmetic.

Tensor products use one global ordering everywhere: the flat index of a basis
tuple ``(i1, ..., ik)`` is its mixed-radix value with the last factor varying
fastest, so ``e_i (x) f_j`` sits at ``i * dim(B) + j``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    pass


class ShapeError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular: rank {rank} < {size}")
        self.rank = rank
        self.size = size


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


class Field:
    """The rationals (``p is None``) or the prime field GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    @property
    def tag(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return f"Field({self.tag})"

    def __reduce__(self):
        return (field_from_tag, (self.tag,))

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, str, Scalar) into a raw value of this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatchError(f"{x.field.tag} value used in {self.tag}")
            return x.value
        if isinstance(x, str):
            return parse_scalar(x, self)
        if self.p is None:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FieldError(f"cannot coerce {x!r} into Q")
        if not isinstance(x, (int, Fraction)):
            raise FieldError(f"cannot coerce {x!r} into {self.tag}")
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x if self.p is None else x % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self.tag}")
        return 1 / Fraction(a) if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        if self.p is None:
            raise FieldError("Q is infinite")
        return range(self.p)

    def format(self, x) -> str:
        return format_scalar(x)


QQ = Field()


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field(p)


_TAG = re.compile(r"^(?:Q|F(\d+))$")


def field_from_tag(tag: str) -> Field:
    m = _TAG.match(tag.strip())
    if not m:
        raise FieldError(f"unknown field tag {tag!r}; expected 'Q' or 'F<p>'")
    return QQ if m.group(1) is None else GF(int(m.group(1)))


def parse_scalar(text: str, field: Field):
    text = text.strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FieldError(f"bad scalar {text!r}: {exc}") from None
    return field(value)


def format_scalar(x) -> str:
    """Serialize a raw value: ``"-3"``, ``"5/6"`` or a decimal residue."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


@dataclass(frozen=True)
class Scalar:
    value: object
    field: Field

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other) -> object:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field.tag} vs {other.field.tag}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other):
        return Scalar(self.field.sub(self._other(other), self.value), self.field)

    def __mul__(self, other):
        return Scalar(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field.div(self.value, self._other(other)), self.field)

    def __rtruediv__(self, other):
        return Scalar(self.field.div(self._other(other), self.value), self.field)

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def inverse(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field.tag} vs {other.field.tag}")
            return self.value == other.value
        try:
            return self.value == self.field(other)
        except FieldError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return format_scalar(self.value)


# -- tensor index bookkeeping ------------------------------------------------


@dataclass(frozen=True)
class TensorShape:
    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        if any(f < 1 for f in self.factors):
            raise ShapeError(f"tensor factors must be positive: {self.factors}")

    @property
    def size(self) -> int:
        return math.prod(self.factors)

    def flat(self, index: Sequence[int]) -> int:
        n = 0
        for i, f in zip(index, self.factors, strict=True):
            if not 0 <= i < f:
                raise IndexError(f"index {tuple(index)} outside {self.factors}")
            n = n * f + i
        return n

    def unflat(self, n: int) -> tuple[int, ...]:
        out = []
        for f in reversed(self.factors):
            n, r = divmod(n, f)
            out.append(r)
        return tuple(reversed(out))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for n in range(self.size):
            yield self.unflat(n)


# -- matrices -----------------------------------------------------------------


class Matrix:
    """Immutable dense matrix of raw field values, row-major."""

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: Field, data: Iterable[Iterable], rows: int | None = None,
                 cols: int | None = None, *, _trusted: bool = False):
        self.field = field
        if _trusted:
            self._data = data
        else:
            self._data = tuple(tuple(field(x) for x in row) for row in data)
        self.rows = len(self._data) if rows is None else rows
        if cols is None:
            if not self._data:
                raise ShapeError("cannot infer column count of an empty matrix")
            cols = len(self._data[0])
        self.cols = cols
        if len(self._data) != self.rows or any(len(r) != cols for r in self._data):
            raise ShapeError(f"ragged or mis-sized matrix data for {self.rows}x{cols}")
        if self.rows < 1 or self.cols < 1:
            raise ShapeError("matrices must have positive dimensions")
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, field: Field, data: tuple[tuple, ...], cols: int) -> "Matrix":
        return cls(field, data, len(data), cols, _trusted=True)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, tuple((z,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence]) -> "Matrix":
        return cls(field, list(zip(*columns)))

    @classmethod
    def from_sparse(cls, field: Field, rows: int, cols: int, entries) -> "Matrix":
        """Build from ``{(i, j): value}`` or an iterable of ``(i, j, value)``."""
        grid = [[field.zero] * cols for _ in range(rows)]
        if isinstance(entries, dict):
            items = ((i, j, v) for (i, j), v in entries.items())
        else:
            items = entries
        for i, j, v in items:
            grid[i][j] = field.add(grid[i][j], field(v))
        return cls._raw(field, tuple(tuple(r) for r in grid), cols)

    @classmethod
    def permutation(cls, field: Field, dims: Sequence[int], perm: Sequence[int]) -> "Matrix":
        """Matrix sending e_{i_0} (x) ... (x) e_{i_{k-1}} to the tensor with legs reordered.

        Output leg ``t`` is input leg ``perm[t]``.
        """
        src = TensorShape(dims)
        dst = TensorShape([dims[p] for p in perm])
        entries = {}
        for idx in src:
            out = tuple(idx[p] for p in perm)
            entries[(dst.flat(out), src.flat(idx))] = 1
        return cls.from_sparse(field, src.size, src.size, entries)

    @classmethod
    def flip(cls, field: Field, m: int, n: int) -> "Matrix":
        """The flip V (x) W -> W (x) V for dim V = m, dim W = n."""
        return cls.permutation(field, (m, n), (1, 0))

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def nonzero(self) -> Iterator[tuple[int, int, object]]:
        for i, r in enumerate(self._data):
            for j, v in enumerate(r):
                if v != 0:
                    yield i, j, v

    # comparisons
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field.tag} vs {other.field.tag}")
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self._data))
        return self._hash

    def _same_field(self, other: "Matrix"):
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field.tag} vs {other.field.tag}")

    # arithmetic
    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        f = self.field
        return Matrix._raw(f, tuple(tuple(f.add(a, b) for a, b in zip(r, s))
                                    for r, s in zip(self._data, other._data)), self.cols)

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix._raw(f, tuple(tuple(f.neg(a) for a in r) for r in self._data), self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f(c)
        return Matrix._raw(f, tuple(tuple(f.mul(c, a) for a in r) for r in self._data), self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        zero = f.zero
        ocols = other.cols
        orows = other._data
        out = []
        for r in self._data:
            acc = [zero] * ocols
            for k, a in enumerate(r):
                if a == 0:
                    continue
                for j, b in enumerate(orows[k]):
                    if b != 0:
                        acc[j] += a * b
            if f.p is not None:
                acc = [x % f.p for x in acc]
            out.append(tuple(acc))
        return Matrix._raw(f, tuple(out), ocols)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ShapeError(f"vector of length {len(vec)} for {self.shape} matrix")
        f = self.field
        out = []
        for r in self._data:
            acc = f.zero
            for a, b in zip(r, vec):
                if a != 0 and b != 0:
                    acc += a * b
            out.append(f.reduce(acc))
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(zip(*self._data)), self.rows)

    def kron(self, other: "Matrix") -> "Matrix":
        """(M (x) N)[i*r + k, j*s + l] = M[i, j] * N[k, l] with N of shape r x s."""
        self._same_field(other)
        f = self.field
        out = []
        for mr in self._data:
            for nr in other._data:
                out.append(tuple(f.mul(a, b) for a in mr for b in nr))
        return Matrix._raw(f, tuple(out), self.cols * other.cols)

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self._data for v in r)

    # elimination
    def _echelon(self, augment: "Matrix | None" = None):
        f = self.field
        width = self.cols + (augment.cols if augment is not None else 0)
        grid = [list(r) + (list(augment._data[i]) if augment is not None else [])
                for i, r in enumerate(self._data)]
        pivots = []
        row = 0
        for col in range(self.cols):
            piv = next((i for i in range(row, self.rows) if grid[i][col] != 0), None)
            if piv is None:
                continue
            grid[row], grid[piv] = grid[piv], grid[row]
            inv = f.inv(grid[row][col])
            grid[row] = [f.mul(inv, x) for x in grid[row]]
            for i in range(self.rows):
                if i != row and grid[i][col] != 0:
                    c = grid[i][col]
                    pr = grid[row]
                    grid[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(grid[i], pr)]
            pivots.append(col)
            row += 1
            if row == self.rows:
                break
        return grid, pivots, width

    def rank(self) -> int:
        return len(self._echelon()[1])

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ShapeError(f"inverse of non-square {self.shape} matrix")
        n = self.rows
        grid, pivots, _ = self._echelon(Matrix.identity(self.field, n))
        if len(pivots) < n:
            raise SingularMatrixError(len(pivots), n)
        return Matrix._raw(self.field, tuple(tuple(r[n:]) for r in grid), n)

    def solve(self, rhs: "Matrix") -> "Matrix":
        """Return one X with self @ X == rhs; raises ArithmeticError if none exists."""
        self._same_field(rhs)
        if rhs.rows != self.rows:
            raise ShapeError(f"rhs with {rhs.rows} rows for {self.shape} system")
        grid, pivots, _ = self._echelon(rhs)
        f = self.field
        n = self.cols
        for r in grid[len(pivots):]:
            if any(v != 0 for v in r[n:]):
                raise ArithmeticError("linear system is inconsistent")
        sol = [[f.zero] * rhs.cols for _ in range(n)]
        for r, col in enumerate(pivots):
            sol[col] = list(grid[r][n:])
        return Matrix(f, sol)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(v) for v in r) for r in self._data)
        return f"Matrix<{self.field.tag} {self.rows}x{self.cols}>[{body}]"

    def __reduce__(self):
        return (Matrix._raw, (self.field, self._data, self.cols))


def kron_all(mats: Sequence[Matrix]) -> Matrix:
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


def vector(field: Field, values: Iterable) -> tuple:
    return tuple(field(v) for v in values)


def basis_vector(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one if k == i else field.zero for k in range(n))
