"""Twisting maps, Q-maps, L-R pairs and the products and twistors they afford.

Conventions: ``R: B (x) A -> A (x) B`` is stored as a matrix with rows indexed
by ``A (x) B`` and columns by ``B (x) A``; ``Q`` is an endomorphism of
``A (x) B``.  Basis symbols are ``e`` for A and ``f`` for B in witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (Algebra, AlgebraMorphism, algebra_env, algebra_from_program,
                      bind_algebra, check_morphism, isomorphism_report, opposite, tensor_algebra)
from .exactfield import Matrix, ShapeError
from .legs import Env, Identity, format_tensor, program_map, verify
from .report import CheckResult, PreconditionError, Report


def _same_field(*algs: Algebra):
    f = algs[0].field
    for a in algs[1:]:
        if a.field != f:
            raise ValueError(f"field mismatch: {a.field.tag} vs {f.tag}")


@dataclass(frozen=True, eq=False)
class TwistingMap:
    a: Algebra
    b: Algebra
    map: Matrix

    def __post_init__(self):
        _same_field(self.a, self.b)
        n = self.a.dim * self.b.dim
        if self.map.shape != (n, n):
            raise ShapeError(f"R must be {n}x{n} (A⊗B x B⊗A), got {self.map.shape}")

    @classmethod
    def flip(cls, a: Algebra, b: Algebra) -> "TwistingMap":
        return cls(a, b, Matrix.flip(a.field, b.dim, a.dim))


@dataclass(frozen=True, eq=False)
class QMap:
    a: Algebra
    b: Algebra
    map: Matrix

    def __post_init__(self):
        _same_field(self.a, self.b)
        n = self.a.dim * self.b.dim
        if self.map.shape != (n, n):
            raise ShapeError(f"Q must be {n}x{n} on A⊗B, got {self.map.shape}")

    @classmethod
    def identity(cls, a: Algebra, b: Algebra) -> "QMap":
        return cls(a, b, Matrix.identity(a.field, a.dim * b.dim))

    @property
    def is_identity(self) -> bool:
        return self.map.is_identity()


@dataclass(frozen=True, eq=False)
class LRPair:
    r: TwistingMap
    q: QMap

    def __post_init__(self):
        if self.r.a != self.q.a or self.r.b != self.q.b:
            raise ValueError("R and Q must act on the same pair of algebras")

    @property
    def a(self) -> Algebra:
        return self.r.a

    @property
    def b(self) -> Algebra:
        return self.r.b

    @classmethod
    def from_matrices(cls, a: Algebra, b: Algebra, r: Matrix, q: Matrix) -> "LRPair":
        return cls(TwistingMap(a, b, r), QMap(a, b, q))

    @classmethod
    def twisted_only(cls, r: TwistingMap) -> "LRPair":
        return cls(r, QMap.identity(r.a, r.b))


@dataclass(frozen=True, eq=False)
class Twistor:
    d: Algebra
    map: Matrix

    def __post_init__(self):
        n = self.d.dim
        if self.map.shape != (n * n, n * n):
            raise ShapeError(f"twistor must be {n * n}x{n * n}, got {self.map.shape}")


# -- environments ---------------------------------------------------------------


def pair_env(a: Algebra, b: Algebra, r: Matrix | None = None, q: Matrix | None = None) -> Env:
    _same_field(a, b)
    env = algebra_env(a.field, A=(a, "e"), B=(b, "f"))
    if r is not None:
        env.bind("R", r, "B A -> A B")
    if q is not None:
        env.bind("Q", q, "A B -> A B")
    return env


def lr_env(p: LRPair) -> Env:
    return pair_env(p.a, p.b, p.r.map, p.q.map)


# -- axioms ---------------------------------------------------------------------

TWISTING_AXIOMS = (
    Identity("tw0", "a:A", "uB()->o; R(o,a)->x,y => x,y", "uB()->o => a,o", "a_R⊗1_R = a⊗1"),
    Identity("tw0", "b:B", "uA()->o; R(b,o)->x,y => x,y", "uA()->o => o,b", "1_R⊗b_R = 1⊗b"),
    Identity("tw4", "b:B a:A a':A",
             "mA(a,a')->x; R(b,x)->u,v => u,v",
             "R(b,a)->a1,b1; R(b1,a')->a2,b2; mA(a1,a2)->x => x,b2",
             "(aa')_R⊗b_R = a_R a'_r⊗b_{R_r}"),
    Identity("tw5", "b:B b':B a:A",
             "mB(b,b')->y; R(y,a)->x,z => x,z",
             "R(b',a)->a1,b1; R(b,a1)->a2,b2; mB(b2,b1)->z => a2,z",
             "a_R⊗(bb')_R = a_{R_r}⊗b_r b'_R"),
)

QMAP_AXIOMS = (
    Identity("tw0'", "a:A", "uB()->o; Q(a,o)->x,y => x,y", "uB()->o => a,o", "a_Q⊗1_Q = a⊗1"),
    Identity("tw0'", "b:B", "uA()->o; Q(o,b)->x,y => x,y", "uA()->o => o,b", "1_Q⊗b_Q = 1⊗b"),
    Identity("tw4'", "a:A a':A b:B",
             "mA(a,a')->x; Q(x,b)->y,z => y,z",
             "Q(a',b)->a1,b1; Q(a,b1)->a2,b2; mA(a2,a1)->y => y,b2",
             "(aa')_Q⊗b_Q = a_q a'_Q⊗b_{Q_q}"),
    Identity("tw5'", "a:A b:B b':B",
             "mB(b,b')->y; Q(a,y)->x,z => x,z",
             "Q(a,b)->a1,b1; Q(a1,b')->a2,b2; mB(b1,b2)->z => a2,z",
             "a_Q⊗(bb')_Q = a_{Q_q}⊗b_Q b'_q"),
)

COMB_AXIOMS = (
    Identity("comb1", "b:B a:A b':B",
             "R(b,a)->a1,b1; Q(a1,b')->a2,b2 => b1,a2,b2",
             "Q(a,b')->a1,b2; R(b,a1)->a2,b1 => b1,a2,b2",
             "b_R⊗a_{R_Q}⊗b'_Q = b_R⊗a_{Q_R}⊗b'_Q"),
    Identity("comb2", "a':A b:B a:A",
             "R(b,a)->a1,b1; Q(a',b1)->a2,b2 => a1,b2,a2",
             "Q(a',b)->a2,b1; R(b1,a)->a1,b2 => a1,b2,a2",
             "a_R⊗b_{R_Q}⊗a'_Q = a_R⊗b_{Q_R}⊗a'_Q"),
)

LR_AXIOMS = TWISTING_AXIOMS + QMAP_AXIOMS + COMB_AXIOMS
LR_LABELS = ("tw0", "tw4", "tw5", "tw0'", "tw4'", "tw5'", "comb1", "comb2")


def check_twisting_map(r: TwistingMap, jobs: int = 1) -> Report:
    return verify(TWISTING_AXIOMS, pair_env(r.a, r.b, r=r.map), "twisting map R", jobs)


def check_qmap(q: QMap, jobs: int = 1) -> Report:
    return verify(QMAP_AXIOMS, pair_env(q.a, q.b, q=q.map), "Q-map", jobs)


def check_lr_pair(p: LRPair, jobs: int = 1) -> Report:
    """The two compatibilities (comb1), (comb2) between R and Q."""
    return verify(COMB_AXIOMS, lr_env(p), "L-R compatibility", jobs)


def check_lr_suite(p: LRPair, jobs: int = 1, subject: str = "L-R pair") -> Report:
    """All eight axioms (tw0)..(comb2) in one report."""
    return verify(LR_AXIOMS, lr_env(p), subject, jobs)


# -- products -------------------------------------------------------------------

_LR_PRODUCT = "R(b,a')->a1,b1; Q(a,b')->a2,b2; mA(a2,a1)->x; mB(b1,b2)->y => x,y"
_PRODUCT_INPUTS = "a:A b:B a':A b':B"


def _unit(a: Algebra, b: Algebra) -> list:
    f = a.field
    return [f.mul(u, v) for u in a.unit for v in b.unit]


def _require(report: Report, what: str, force: bool):
    if not report.ok and not force:
        raise PreconditionError(report, what)


def _label(a: Algebra, b: Algebra, mid: str, force: bool, ok: bool) -> str:
    text = f"{a.label or 'A'}{mid}{b.label or 'B'}"
    return text + " [FORCED: preconditions fail]" if force and not ok else text


def lr_product_table(a: Algebra, b: Algebra, r: Matrix, q: Matrix, label: str) -> Algebra:
    """The multiplication ``a_Q a'_R ⊗ b_R b'_Q`` with no precondition checks."""
    env = pair_env(a, b, r, q)
    return algebra_from_program(env, _PRODUCT_INPUTS, _LR_PRODUCT, _unit(a, b), label)


def build_twisted_product(r: TwistingMap, force: bool = False) -> Algebra:
    rep = check_twisting_map(r)
    _require(rep, "twisted tensor product", force)
    q = Matrix.identity(r.a.field, r.a.dim * r.b.dim)
    return lr_product_table(r.a, r.b, r.map, q, _label(r.a, r.b, "⊗_R", force, rep.ok))


def build_q_product(q: QMap, force: bool = False) -> Algebra:
    rep = check_qmap(q)
    _require(rep, "Q-product", force)
    flip = Matrix.flip(q.a.field, q.b.dim, q.a.dim)
    return lr_product_table(q.a, q.b, flip, q.map, _label(q.a, q.b, "_Q⊗", force, rep.ok))


def build_lr_product(p: LRPair, force: bool = False) -> Algebra:
    rep = check_lr_suite(p)
    _require(rep, "L-R-twisted tensor product", force)
    return lr_product_table(p.a, p.b, p.r.map, p.q.map, _label(p.a, p.b, "_Q⊗_R", force, rep.ok))


def qop_map(q: QMap) -> TwistingMap:
    """``Q^op(b⊗a) = a_Q⊗b_Q`` between the opposite algebras."""
    flip = Matrix.flip(q.a.field, q.b.dim, q.a.dim)
    return TwistingMap(opposite(q.a), opposite(q.b), q.map @ flip)


def qop_correspondence(q: QMap) -> tuple[TwistingMap, Report]:
    """``Q^op`` and a report asserting the equivalence and the table identity.

    The per-axiom reports of both sides ride along in the ``equivalence`` detail.
    """
    qop = qop_map(q)
    q_rep = check_qmap(q)
    r_rep = check_twisting_map(qop)
    left = lr_product_table(q.a, q.b, Matrix.flip(q.a.field, q.b.dim, q.a.dim), q.map, "A_Q⊗B")
    ident = Matrix.identity(q.a.field, q.a.dim * q.b.dim)
    right = opposite(lr_product_table(qop.a, qop.b, qop.map, ident, "A^op⊗_{Q^op}B^op"))
    rep = Report("Q^op correspondence")
    rep.record("equivalence", q_rep.ok == r_rep.ok,
               f"(equivalence) fails: Q-map check {'passes' if q_rep.ok else 'fails'} "
               f"but Q^op twisting check {'passes' if r_rep.ok else 'fails'}",
               detail={"Q": q_rep.to_dict(), "Q^op": r_rep.to_dict()})
    rep.add(table_equality("table", left, right))
    return qop, rep


def _vec(col, symbol: str = "e") -> str:
    terms = {(i,): v for i, v in enumerate(col) if v}
    return format_tensor(terms, (symbol,))


def table_equality(label: str, x: Algebra, y: Algebra) -> CheckResult:
    """Compare two multiplication tables entry by entry (and the units)."""
    n = x.dim
    if x.dim != y.dim:
        return CheckResult(label, False, 0, 1, f"({label}) fails: dimensions {x.dim} vs {y.dim}")
    bad = [(i, j) for i in range(n) for j in range(n)
           if x.mult.column(i * n + j) != y.mult.column(i * n + j)]
    same_unit = x.unit == y.unit
    if not bad and same_unit:
        return CheckResult(label, True, n * n, 0)
    if bad:
        i, j = bad[0]
        witness = (f"({label}) fails at e{i}·e{j}: {_vec(x.mult.column(i * n + j))} vs "
                   f"{_vec(y.mult.column(i * n + j))}")
    else:
        witness = f"({label}) fails: units {_vec(x.unit)} vs {_vec(y.unit)}"
    return CheckResult(label, False, n * n, len(bad) + (not same_unit), witness)


# -- twistors -------------------------------------------------------------------

TWISTOR_AXIOMS = (
    Identity("unit", "d:D", "uD()->o; T(o,d)->x,y => x,y", "uD()->o => o,d", "T(1⊗d) = 1⊗d"),
    Identity("unit", "d:D", "uD()->o; T(d,o)->x,y => x,y", "uD()->o => d,o", "T(d⊗1) = d⊗1"),
    Identity("dec1", "x:D y:D z:D",
             "T(x,y)->x1,y1; T(x1,z)->x2,z1; mD(y1,z1)->w => x2,w",
             "mD(y,z)->w; T(x,w)->x1,w1 => x1,w1",
             "μ23∘T13∘T12 = T∘μ23"),
    Identity("dec2", "x:D y:D z:D",
             "T(y,z)->y1,z1; T(x,z1)->x1,z2; mD(x1,y1)->w => w,z2",
             "mD(x,y)->w; T(w,z)->w1,z1 => w1,z1",
             "μ12∘T13∘T23 = T∘μ12"),
    Identity("dec3", "x:D y:D z:D",
             "T(y,z)->y1,z1; T(x,y1)->x1,y2 => x1,y2,z1",
             "T(x,y)->x1,y1; T(y1,z)->y2,z1 => x1,y2,z1",
             "T12∘T23 = T23∘T12"),
)


def twistor_env(t: Twistor) -> Env:
    env = algebra_env(t.d.field, D=(t.d, "d"))
    env.bind("T", t.map, "D D -> D D")
    return env


def check_twistor(t: Twistor, jobs: int = 1) -> Report:
    return verify(TWISTOR_AXIOMS, twistor_env(t), "twistor T", jobs)


def twisted_by_twistor_table(t: Twistor, label: str = "") -> Algebra:
    return Algebra(t.d.field, t.d.mult @ t.map, t.d.unit, label or f"{t.d.label}^T")


def build_twisted_by_twistor(t: Twistor, force: bool = False) -> Algebra:
    rep = check_twistor(t)
    _require(rep, "D^T", force)
    label = f"{t.d.label}^T" + ("" if rep.ok else " [FORCED: preconditions fail]")
    return twisted_by_twistor_table(t, label)


_T_PROGRAMS = {
    "T1": "R(b,a')->a1,b1; Q(a,b')->a2,b2 => a2,b1,a1,b2",
    "T2": "Q(a,b')->a2,b2 => a2,b,a',b2",
    "T3": "R(b,a')->a1,b1 => a,b1,a1,b'",
}


def twistor_matrix(p: LRPair, which: str) -> Matrix:
    return program_map(lr_env(p), _PRODUCT_INPUTS, _T_PROGRAMS[which], which).matrix


def canonical_twistors(p: LRPair) -> tuple[Twistor, Twistor, Twistor, Report]:
    rep_pair = check_lr_suite(p)
    _require(rep_pair, "canonical twistors", False)
    a, b = p.a, p.b
    plain = tensor_algebra(a, b)
    a_r = build_twisted_product(p.r)
    a_q = build_q_product(p.q)
    t1 = Twistor(plain, twistor_matrix(p, "T1"))
    t2 = Twistor(a_r, twistor_matrix(p, "T2"))
    t3 = Twistor(a_q, twistor_matrix(p, "T3"))
    rep = Report("twistors T1, T2, T3")
    for name, t in (("T1", t1), ("T2", t2), ("T3", t3)):
        rep.extend(check_twistor(t), name)
    lr = build_lr_product(p)
    rep.add(table_equality("LR=(A⊗B)^T1", lr, twisted_by_twistor_table(t1)))
    rep.add(table_equality("LR=(A⊗_R B)^T2", lr, twisted_by_twistor_table(t2)))
    rep.add(table_equality("LR=(A_Q⊗B)^T3", lr, twisted_by_twistor_table(t3)))
    return t1, t2, t3, rep


# -- detwisting -----------------------------------------------------------------


def detwist(p: LRPair) -> tuple[TwistingMap, AlgebraMorphism, Report]:
    """``P = Q^{-1}∘R`` and the isomorphism ``Q: A⊗_P B -> A _Q⊗_R B``.

    Raises :class:`SingularMatrixError` when Q is not bijective.
    """
    q_inv = p.q.map.inverse()
    pm = TwistingMap(p.a, p.b, q_inv @ p.r.map)
    rep = Report("detwisting P = Q^-1∘R")
    rep.extend(check_twisting_map(pm), "P")
    source = lr_product_table(p.a, p.b, pm.map, Matrix.identity(p.a.field, p.a.dim * p.b.dim),
                              f"{p.a.label}⊗_P{p.b.label}")
    target = lr_product_table(p.a, p.b, p.r.map, p.q.map, f"{p.a.label}_Q⊗_R{p.b.label}")
    iso = AlgebraMorphism(source, target, p.q.map, "Q")
    rep.extend(isomorphism_report(iso), "iso")
    return pm, iso, rep


# -- morphisms ------------------------------------------------------------------

INTERTWINING = (
    Identity("R-intertwining", "b:B a:A",
             "R(b,a)->x,y; f(x)->u; g(y)->v => u,v",
             "g(b)->v0; f(a)->u0; R2(v0,u0)->u,v => u,v",
             "(f⊗g)∘R = R'∘(g⊗f)"),
    Identity("Q-intertwining", "a:A b:B",
             "Q(a,b)->x,y; f(x)->u; g(y)->v => u,v",
             "f(a)->u0; g(b)->v0; Q2(u0,v0)->u,v => u,v",
             "(f⊗g)∘Q = Q'∘(f⊗g)"),
)


def check_lr_morphism(f: AlgebraMorphism, g: AlgebraMorphism, p: LRPair, p2: LRPair) -> Report:
    if f.source != p.a or g.source != p.b or f.target != p2.a or g.target != p2.b:
        raise ValueError("f: A -> A' and g: B -> B' must match the two pairs")
    rep = Report("L-R morphism f⊗g")
    rep.extend(check_morphism(f), "f")
    rep.extend(check_morphism(g), "g")
    env = pair_env(p.a, p.b, p.r.map, p.q.map)
    bind_algebra(env, "A2", p2.a, "e'")
    bind_algebra(env, "B2", p2.b, "f'")
    env.bind("R2", p2.r.map, "B2 A2 -> A2 B2")
    env.bind("Q2", p2.q.map, "A2 B2 -> A2 B2")
    env.bind("f", f.matrix, "A -> A2")
    env.bind("g", g.matrix, "B -> B2")
    hyp = verify(INTERTWINING, env, "intertwining")
    for r in hyp.results:
        rep.add(r)
    src = lr_product_table(p.a, p.b, p.r.map, p.q.map, "A_Q⊗_R B")
    dst = lr_product_table(p2.a, p2.b, p2.r.map, p2.q.map, "A'_Q'⊗_R' B'")
    fg = AlgebraMorphism(src, dst, f.matrix.kron(g.matrix), "f⊗g")
    rep.extend(check_morphism(fg), "f⊗g")
    return rep
