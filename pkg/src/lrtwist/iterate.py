"""Iterated L-R-twisted tensor products of three algebras.

Both iterated algebras live on the flat index space of A⊗B⊗C; the
identification (A⊗B)⊗C = A⊗(B⊗C) is the identity on flat indices, so
"the algebras coincide" is literal equality of multiplication tables.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, algebra_env
from .exactfield import Matrix
from .legs import Env, Identity, program_map, verify
from .report import PreconditionError, Report
from .twisted import (LRPair, QMap, TwistingMap, check_lr_suite, lr_product_table, table_equality)


@dataclass(frozen=True, eq=False)
class TripleData:
    p1: LRPair      # (A, B)
    p2: LRPair      # (B, C)
    p3: LRPair      # (A, C)

    def __post_init__(self):
        if self.p1.a != self.p3.a or self.p1.b != self.p2.a or self.p2.b != self.p3.b:
            raise ValueError("pairs must live on (A,B), (B,C), (A,C) for one triple A, B, C")

    @property
    def algebras(self) -> tuple[Algebra, Algebra, Algebra]:
        return self.p1.a, self.p1.b, self.p2.b


def triple_env(t: TripleData) -> Env:
    a, b, c = t.algebras
    env = algebra_env(a.field, A=(a, "e"), B=(b, "f"), C=(c, "g"))
    env.bind("R1", t.p1.r.map, "B A -> A B")
    env.bind("Q1", t.p1.q.map, "A B -> A B")
    env.bind("R2", t.p2.r.map, "C B -> B C")
    env.bind("Q2", t.p2.q.map, "B C -> B C")
    env.bind("R3", t.p3.r.map, "C A -> A C")
    env.bind("Q3", t.p3.q.map, "A C -> A C")
    return env


HEXAGON_AXIOMS = (
    Identity("YB", "c:C b:B a:A",
             "R1(b,a)->a1,b1; R3(c,a1)->a2,c1; R2(c1,b1)->b2,c2 => a2,b2,c2",
             "R2(c,b)->b1,c1; R3(c1,a)->a1,c2; R1(b1,a1)->a2,b2 => a2,b2,c2",
             "(a_R1)_R3⊗(b_R1)_R2⊗(c_R3)_R2 = (a_R3)_R1⊗(b_R2)_R1⊗(c_R2)_R3"),
    Identity("YBQuri", "a:A b:B c:C",
             "Q1(a,b)->a1,b1; Q3(a1,c)->a2,c1; Q2(b1,c1)->b2,c2 => a2,b2,c2",
             "Q2(b,c)->b1,c1; Q3(a,c1)->a1,c2; Q1(a1,b1)->a2,b2 => a2,b2,c2",
             "(a_Q1)_Q3⊗(b_Q1)_Q2⊗(c_Q3)_Q2 = (a_Q3)_Q1⊗(b_Q2)_Q1⊗(c_Q2)_Q3"),
    Identity("comb3", "b:B a:A c:C",
             "R1(b,a)->a1,b1; Q2(b1,c)->b2,c1 => a1,b2,c1",
             "Q2(b,c)->b1,c1; R1(b1,a)->a1,b2 => a1,b2,c1",
             "a_R1⊗(b_R1)_Q2⊗c_Q2 = a_R1⊗(b_Q2)_R1⊗c_Q2"),
    Identity("comb4", "a:A c:C b:B",
             "R2(c,b)->b1,c1; Q1(a,b1)->a1,b2 => a1,b2,c1",
             "Q1(a,b)->a1,b1; R2(c,b1)->b2,c1 => a1,b2,c1",
             "a_Q1⊗(b_R2)_Q1⊗c_R2 = a_Q1⊗(b_Q1)_R2⊗c_R2"),
    Identity("comb5", "a:A b:B c:C",
             "Q1(a,b)->a1,b1; R3(c,a1)->a2,c1 => a2,b1,c1",
             "R3(c,a)->a1,c1; Q1(a1,b)->a2,b1 => a2,b1,c1",
             "(a_Q1)_R3⊗b_Q1⊗c_R3 = (a_R3)_Q1⊗b_Q1⊗c_R3"),
    Identity("comb6", "b:B a:A c:C",
             "R1(b,a)->a1,b1; Q3(a1,c)->a2,c1 => a2,b1,c1",
             "Q3(a,c)->a1,c1; R1(b,a1)->a2,b1 => a2,b1,c1",
             "(a_R1)_Q3⊗b_R1⊗c_Q3 = (a_Q3)_R1⊗b_R1⊗c_Q3"),
    Identity("comb7", "a:A b:B c:C",
             "Q2(b,c)->b1,c1; R3(c1,a)->a1,c2 => a1,b1,c2",
             "R3(c,a)->a1,c1; Q2(b,c1)->b1,c2 => a1,b1,c2",
             "a_R3⊗b_Q2⊗(c_Q2)_R3 = a_R3⊗b_Q2⊗(c_R3)_Q2"),
    Identity("comb8", "a:A b:B c:C",
             "Q3(a,c)->a1,c1; R2(c1,b)->b1,c2 => a1,b1,c2",
             "R2(c,b)->b1,c1; Q3(a,c1)->a1,c2 => a1,b1,c2",
             "a_Q3⊗b_R2⊗(c_Q3)_R2 = a_Q3⊗b_R2⊗(c_R2)_Q3"),
)
HEXAGON_LABELS = tuple(i.label for i in HEXAGON_AXIOMS)


def check_hexagons(t: TripleData, jobs: int = 1) -> Report:
    """All eight conditions, evaluated even after a failure."""
    return verify(HEXAGON_AXIOMS, triple_env(t), "hexagon conditions", jobs)


_MAPS = {
    "T1": ("c:C a:A b:B", "R3(c,a)->a1,c1; R2(c1,b)->b1,c2 => a1,b1,c2"),
    "V1": ("a:A b:B c:C", "Q3(a,c)->a1,c1; Q2(b,c1)->b1,c2 => a1,b1,c2"),
    "T2": ("b:B c:C a:A", "R3(c,a)->a1,c1; R1(b,a1)->a2,b1 => a2,b1,c1"),
    "V2": ("a:A b:B c:C", "Q3(a,c)->a1,c1; Q1(a1,b)->a2,b1 => a2,b1,c1"),
}


def iteration_maps(t: TripleData) -> dict[str, Matrix]:
    """T1: C⊗(A⊗B) -> (A⊗B)⊗C, V1 on (A⊗B)⊗C, T2: (B⊗C)⊗A -> A⊗(B⊗C), V2 on A⊗(B⊗C)."""
    env = triple_env(t)
    return {name: program_map(env, inputs, prog, name).matrix for name, (inputs, prog) in _MAPS.items()}


def iterated_pairs(t: TripleData) -> tuple[LRPair, LRPair]:
    a, b, c = t.algebras
    maps = iteration_maps(t)
    d = lr_product_table(a, b, t.p1.r.map, t.p1.q.map, f"{a.label}_Q1⊗_R1{b.label}")
    e = lr_product_table(b, c, t.p2.r.map, t.p2.q.map, f"{b.label}_Q2⊗_R2{c.label}")
    left = LRPair(TwistingMap(d, c, maps["T1"]), QMap(d, c, maps["V1"]))
    right = LRPair(TwistingMap(a, e, maps["T2"]), QMap(a, e, maps["V2"]))
    return left, right


def build_iterated(t: TripleData, force: bool = False) -> tuple[Algebra, Algebra, Report]:
    rep = Report("iterated L-R-twisted tensor products")
    pre = Report("component pairs")
    for name, p in (("p1", t.p1), ("p2", t.p2), ("p3", t.p3)):
        pre.extend(check_lr_suite(p), name)
    hexa = check_hexagons(t)
    if not (pre.ok and hexa.ok) and not force:
        raise PreconditionError(Report("iteration hypotheses").extend(pre).extend(hexa),
                                "iterated product")
    rep.extend(hexa)
    left_pair, right_pair = iterated_pairs(t)
    rep.extend(check_lr_suite(left_pair), "(V1,T1)")
    rep.extend(check_lr_suite(right_pair), "(V2,T2)")
    left = lr_product_table(left_pair.a, left_pair.b, left_pair.r.map, left_pair.q.map,
                            "(A_Q1⊗_R1 B)_V1⊗_T1 C")
    right = lr_product_table(right_pair.a, right_pair.b, right_pair.r.map, right_pair.q.map,
                             "A_V2⊗_T2(B_Q2⊗_R2 C)")
    rep.add(table_equality("coincide", left, right))
    return left, right, rep


# -- the classical case, written with Kronecker products only ---------------------


def classical_maps(r1: Matrix, r2: Matrix, r3: Matrix, dims: tuple[int, int, int]) -> dict[str, Matrix]:
    """Matrix forms of the classical iteration data for twisting maps alone.

    ``T1 = (id_A⊗R2)∘(R3⊗id_B)``, ``T2 = (R1⊗id_C)∘(id_B⊗R3)`` and both sides
    of the hexagon equation on C⊗B⊗A.
    """
    na, nb, nc = dims
    f = r1.field
    i_a, i_b, i_c = (Matrix.identity(f, n) for n in dims)
    t1 = i_a.kron(r2) @ r3.kron(i_b)
    t2 = r1.kron(i_c) @ i_b.kron(r3)
    lhs = t1 @ i_c.kron(r1)
    rhs = t2 @ r2.kron(i_a)
    return {"T1": t1, "T2": t2, "hexagon_lhs": lhs, "hexagon_rhs": rhs}
