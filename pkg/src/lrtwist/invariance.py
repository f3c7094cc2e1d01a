"""Invariance under twisting: 2-cocycles, Drinfeld twists and the general
L-R invariance theorem driven by :class:`TwistData`.

Every hypothesis is a leg-composition recipe tagged with a label; a report
always evaluates the whole list.  Labels for hypotheses that carry no name of
their own are descriptive: ``ml-R``, ``lr-mult``, ``lr-rr`` and ``rr-lr``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (Algebra, AlgebraMorphism, algebra_from_program, bind_algebra, check_algebra,
                      isomorphism_report)
from .exactfield import Matrix, ShapeError
from .hopf import (Bialgebra, BimoduleAlgebra, HopfAlgebra, as_bialgebra, bind_bimodule, hopf_env,
                   lr_smash_table, regular_bicomodule)
from .legs import Env, Identity, program_map, verify
from .report import PreconditionError, Report
from .twisted import (COMB_AXIOMS, LRPair, QMap, TwistingMap, check_lr_suite, lr_product_table,
                      pair_env, table_equality)


# -- 2-cocycles and the Drinfeld twist ------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cocycle:
    """``F = F^1⊗F^2`` and ``F^-1 = G^1⊗G^2`` as vectors in H⊗H."""
    h: Bialgebra
    f: tuple
    f_inv: tuple

    def __post_init__(self):
        object.__setattr__(self, "h", as_bialgebra(self.h))
        n2 = self.h.dim ** 2
        if len(self.f) != n2 or len(self.f_inv) != n2:
            raise ShapeError(f"cocycle vectors must have length {n2}")
        fld = self.h.field
        object.__setattr__(self, "f", tuple(fld(x) for x in self.f))
        object.__setattr__(self, "f_inv", tuple(fld(x) for x in self.f_inv))

    @classmethod
    def trivial(cls, h: Bialgebra | HopfAlgebra) -> "Cocycle":
        bi = as_bialgebra(h)
        one = [bi.field.mul(x, y) for x in bi.alg.unit for y in bi.alg.unit]
        return cls(bi, tuple(one), tuple(one))

    def swapped(self) -> "Cocycle":
        """F and F^-1 exchanged."""
        return Cocycle(self.h, self.f_inv, self.f)


def _column(field, vec: Sequence) -> Matrix:
    return Matrix(field, [[v] for v in vec])


def cocycle_env(c: Cocycle, env: Env | None = None) -> Env:
    env = hopf_env(c.h, env)
    env.bind("Fe", _column(c.h.field, c.f), "-> H H")
    env.bind("Gi", _column(c.h.field, c.f_inv), "-> H H")
    return env


COCYCLE_AXIOMS = (
    Identity("inverse", "", "Fe()->f1,f2; Gi()->g1,g2; mH(f1,g1)->x; mH(f2,g2)->y => x,y",
             "uH()->o; uH()->p => o,p", "F F^-1 = 1⊗1"),
    Identity("inverse", "", "Gi()->g1,g2; Fe()->f1,f2; mH(g1,f1)->x; mH(g2,f2)->y => x,y",
             "uH()->o; uH()->p => o,p", "F^-1 F = 1⊗1"),
    Identity("counit", "", "Fe()->f1,f2; eps(f1)-> => f2", "uH()->o => o", "(ε⊗id)F = 1"),
    Identity("counit", "", "Fe()->f1,f2; eps(f2)-> => f1", "uH()->o => o", "(id⊗ε)F = 1"),
    Identity("cocycle", "",
             "Fe()->f1,f2; cm(f2)->x,y; Fe()->g1,g2; mH(g1,x)->u; mH(g2,y)->v => f1,u,v",
             "Fe()->f1,f2; cm(f1)->x,y; Fe()->g1,g2; mH(g1,x)->u; mH(g2,y)->v => u,v,f2",
             "(1⊗F)(id⊗Δ)(F) = (F⊗1)(Δ⊗id)(F)"),
)


def check_cocycle(c: Cocycle, jobs: int = 1) -> Report:
    return verify(COCYCLE_AXIOMS, cocycle_env(c), f"2-cocycle on {c.h.label}", jobs)


def _require(rep: Report, what: str):
    if not rep.ok:
        raise PreconditionError(rep, what)


def drinfeld_twist(h: Bialgebra | HopfAlgebra, c: Cocycle) -> Bialgebra:
    """``Δ_F(h) = F Δ(h) F^-1`` on the same algebra."""
    bi = as_bialgebra(h)
    if bi.alg != c.h.alg or bi.comult != c.h.comult:
        raise ValueError("cocycle lives on a different bialgebra")
    _require(check_cocycle(c), "Drinfeld twist")
    env = cocycle_env(c)
    dm = program_map(env, "h:H", "cm(h)->x,y; Fe()->f1,f2; Gi()->g1,g2; mH(f1,x)->p; "
                     "mH(p,g1)->u; mH(f2,y)->q; mH(q,g2)->v => u,v", "Δ_F").matrix
    return Bialgebra(bi.alg.relabel(f"{bi.label}_F"), dm, bi.counit)


_BULLET = ("Gi()->g1,g2; Fe()->f1,f2; la(g1,x)->x1; ra(x1,f1)->x2; la(g2,y)->y1; "
           "ra(y1,f2)->y2; mA(x2,y2)->z => z")


def _module_cocycle_env(m: BimoduleAlgebra, c: Cocycle) -> Env:
    if m.h.alg != c.h.alg or m.h.comult != c.h.comult:
        raise ValueError("bimodule algebra and cocycle live on different bialgebras")
    env = cocycle_env(c)
    bind_algebra(env, "A", m.alg, "e")
    bind_bimodule(env, "A", m)
    return env


def twist_bimodule_algebra(m: BimoduleAlgebra, c: Cocycle) -> BimoduleAlgebra:
    """``_F𝒜_{F^-1}``: ``φ∙φ' = (G^1·φ·F^1)(G^2·φ'·F^2)`` with the same actions, over H_F."""
    hf = drinfeld_twist(m.h, c)
    env = _module_cocycle_env(m, c)
    alg = algebra_from_program(env, "x:A y:A", _BULLET, m.alg.unit, f"_F{m.alg.label}_F^-1")
    return BimoduleAlgebra(hf, alg, m.left_action, m.right_action)


def smash_invariance_iso(m: BimoduleAlgebra, c: Cocycle, inverse: Sequence | None = None
                         ) -> tuple[AlgebraMorphism, Report]:
    """``φ⋉h ↦ G^1·φ·F^2⋉G^2hF^1`` from ``(_F𝒜_{F^-1})⋉H_F`` to ``𝒜⋉H``.

    ``inverse`` replaces the ``G`` legs of the map only (the two algebras are
    still built from ``c``); it exists to inject faults.
    """
    tm = twist_bimodule_algebra(m, c)
    source = lr_smash_table(tm, regular_bicomodule(tm.h), f"({tm.alg.label})⋉{tm.h.label}")
    target = lr_smash_table(m, regular_bicomodule(m.h), f"{m.alg.label}⋉{m.h.label}")
    legs = c if inverse is None else Cocycle(c.h, c.f, tuple(inverse))
    env = _module_cocycle_env(m, legs)
    mat = program_map(env, "x:A h:H", "Gi()->g1,g2; Fe()->f1,f2; la(g1,x)->x1; ra(x1,f2)->x2; "
                      "mH(g2,h)->p; mH(p,f1)->q => x2,q", "iso").matrix
    iso = AlgebraMorphism(source, target, mat, "smash invariance")
    return iso, isomorphism_report(iso, "invariance of the L-R-smash product under twisting")


# -- general twisting data --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwistData:
    """Actions ``μ_l: B⊗A->A``, ``μ_r: A⊗B->A`` and the four coaction-like maps
    ``ρ_r, λ_r: A->A⊗B`` and ``ρ_l, λ_l: A->B⊗A`` next to an L-R pair on (A, B)."""
    pair: LRPair
    mu_l: Matrix
    mu_r: Matrix
    rho_r: Matrix
    rho_l: Matrix
    lambda_r: Matrix
    lambda_l: Matrix

    def __post_init__(self):
        na, nb = self.a.dim, self.b.dim
        shapes = {"mu_l": (na, nb * na), "mu_r": (na, na * nb), "rho_r": (na * nb, na),
                  "rho_l": (nb * na, na), "lambda_r": (na * nb, na), "lambda_l": (nb * na, na)}
        for name, shape in shapes.items():
            if getattr(self, name).shape != shape:
                raise ShapeError(f"{name} must be {shape[0]}x{shape[1]}, got {getattr(self, name).shape}")

    @property
    def a(self) -> Algebra:
        return self.pair.a

    @property
    def b(self) -> Algebra:
        return self.pair.b

    def replace(self, **kw) -> "TwistData":
        fields = {k: getattr(self, k) for k in
                  ("pair", "mu_l", "mu_r", "rho_r", "rho_l", "lambda_r", "lambda_l")}
        fields.update(kw)
        return TwistData(**fields)

    @classmethod
    def trivial(cls, pair: LRPair, character: Sequence | None = None) -> "TwistData":
        """``ρ_r(a) = λ_r(a) = a⊗1``, ``ρ_l(a) = λ_l(a) = 1⊗a`` and actions
        ``b·a = a·b = β(b)a``.

        ``β`` is ``character`` if given, else the coordinate along the unit of B;
        the actions are module actions only when ``β`` is an algebra map (for
        instance the augmentation of a truncated polynomial algebra).
        """
        f = pair.a.field
        a, b = pair.a, pair.b
        one_b = Matrix(f, [[u] for u in b.unit])
        ident = Matrix.identity(f, a.dim)
        beta = _unit_coordinate(b) if character is None else Matrix(f, [list(character)])
        return cls(pair, beta.kron(ident), ident.kron(beta), ident.kron(one_b), one_b.kron(ident),
                   ident.kron(one_b), one_b.kron(ident))


def _unit_coordinate(b: Algebra) -> Matrix:
    """A linear functional with value 1 on the unit of B; the unique algebra map
    when B is one-dimensional, otherwise the first coordinate it can use."""
    f = b.field
    k = next(i for i, u in enumerate(b.unit) if u)
    row = [f.zero] * b.dim
    row[k] = f.div(f.one, b.unit[k])
    return Matrix(f, [row])


def twist_env(d: TwistData) -> Env:
    env = pair_env(d.a, d.b, d.pair.r.map, d.pair.q.map)
    env.bind("ml", d.mu_l, "B A -> A")
    env.bind("mr", d.mu_r, "A B -> A")
    env.bind("rr", d.rho_r, "A -> A B")
    env.bind("rl", d.rho_l, "A -> B A")
    env.bind("lr", d.lambda_r, "A -> A B")
    env.bind("ll", d.lambda_l, "A -> B A")
    env.bind("bul", program_map(env, "a:A a':A", _BULLET_GENERAL, "∙"), "A A -> A")
    return env


_BULLET_GENERAL = "rr(a)->p,q; rl(a')->m,n; mr(p,m)->s; ml(q,n)->t; mA(s,t)->x => x"

_ONE_ONE_AB = "uA()->p; uB()->q => p,q"
_ONE_ONE_BA = "uB()->m; uA()->n => m,n"

PREGAT_AXIOMS = (
    Identity("units", "", "uA()->o; rr(o)->p,q => p,q", _ONE_ONE_AB, "ρ_r(1) = 1⊗1"),
    Identity("units", "", "uA()->o; rl(o)->m,n => m,n", _ONE_ONE_BA, "ρ_l(1) = 1⊗1"),
    Identity("units", "a:A", "uB()->o; ml(o,a)->x => x", "=> a", "1·a = a"),
    Identity("units", "a:A", "uB()->o; mr(a,o)->x => x", "=> a", "a·1 = a"),
    Identity("units", "a:A", "rr(a)->p,q; uA()->o; ml(q,o)->s; mA(p,s)->x => x", "=> a",
             "a_(0)(a_(1)·1) = a"),
    Identity("units", "a:A", "rl(a)->p,q; uA()->o; mr(o,p)->s; mA(s,q)->x => x", "=> a",
             "(1·a_<-1>)a_<0> = a"),
    Identity("ml-R", "b:B a:A a':A",
             "rr(a)->p,q; ml(q,a')->s; mA(p,s)->t; ml(b,t)->x => x",
             "rr(a)->p,q; R(b,p)->pR,bR; mB(bR,q)->c; ml(c,a')->s; mA(pR,s)->x => x",
             "b·(a_(0)(a_(1)·a')) = a_(0)_R((b_R a_(1))·a')"),
    Identity("sup1", "a:A a':A b:B",
             "rl(a')->m,n; mr(a,m)->s; mA(s,n)->t; mr(t,b)->x => x",
             "rl(a')->m,n; Q(n,b)->nQ,bQ; mB(m,bQ)->c; mr(a,c)->s; mA(s,nQ)->x => x",
             "((a·a'_<-1>)a'_<0>)·b = (a·(a'_<-1>b_Q))a'_<0>_Q"),
    Identity("sup2", "a:A a':A", "bul(a,a')->x; rr(x)->y,z => y,z",
             "rr(a)->p,q; rr(a')->p2,q2; R(q,p2)->p2R,qR; rl(p2R)->m,n; mr(p,m)->s; "
             "mA(s,n)->y; mB(qR,q2)->z => y,z",
             "ρ_r(a∙a') = a_(0)∙a'_(0)_R⊗a_(1)_R a'_(1)"),
    Identity("sup3", "a:A a':A", "bul(a,a')->x; rl(x)->y,z => y,z",
             "rl(a)->m,n; rl(a')->m2,n2; Q(n,m2)->nQ,m2Q; mB(m,m2Q)->y; rr(nQ)->p,q; "
             "ml(q,n2)->s; mA(p,s)->z => y,z",
             "ρ_l(a∙a') = a_<-1>a'_<-1>_Q⊗a_<0>_Q∙a'_<0>"),
    Identity("sup4", "a:A", "rr(a)->p,q; rl(p)->m,n => m,n,q",
             "rl(a)->m,n; rr(n)->p,q => m,p,q", "(ρ_l⊗id)ρ_r = (id⊗ρ_r)ρ_l"),
    Identity("sup5", "a:A b:B", "Q(a,b)->x,y; rr(x)->p,q => p,q,y",
             "rr(a)->p,q; Q(p,b)->x,y => x,q,y", "(ρ_r⊗id)Q = (Q⊗id)(id⊗flip)(ρ_r⊗id)"),
    Identity("sup6", "b:B a:A", "R(b,a)->x,y; rl(x)->m,n => m,n,y",
             "rl(a)->m,n; R(b,n)->x,y => m,x,y", "(ρ_l⊗id)R = (id⊗R)(flip⊗id)(id⊗ρ_l)"),
) + tuple(i for i in COMB_AXIOMS if i.label == "comb1")
PREGAT_LABELS = ("units", "ml-R", "sup1", "sup2", "sup3", "sup4", "sup5", "sup6", "comb1")

_A_ONE = "uB()->o => a,o"
_ONE_A = "uB()->o => o,a"

INVUNDTW_AXIOMS = (
    Identity("units-λ", "", "uA()->o; lr(o)->p,q => p,q", _ONE_ONE_AB, "λ_r(1) = 1⊗1"),
    Identity("units-λ", "", "uA()->o; ll(o)->m,n => m,n", _ONE_ONE_BA, "λ_l(1) = 1⊗1"),
    Identity("lr-rr", "a:A", "rr(a)->p,q; lr(p)->x,y; mB(y,q)->z => x,z", _A_ONE,
             "a_(0)_[0]⊗a_(0)_[1]a_(1) = a⊗1"),
    Identity("rr-lr", "a:A", "lr(a)->p,q; rr(p)->x,y; mB(y,q)->z => x,z", _A_ONE,
             "a_[0]_(0)⊗a_[0]_(1)a_[1] = a⊗1"),
    Identity("extra1", "a:A", "rl(a)->m,n; ll(n)->u,v; mB(m,u)->z => z,v", _ONE_A,
             "a_<-1>a_<0>_{-1}⊗a_<0>_{0} = 1⊗a"),
    Identity("extra2", "a:A", "ll(a)->m,n; rl(n)->u,v; mB(m,u)->z => z,v", _ONE_A,
             "a_{-1}a_{0}_<-1>⊗a_{0}_<0> = 1⊗a"),
    Identity("extra6", "a:A", "lr(a)->p,q; ll(p)->m,n => m,n,q",
             "ll(a)->m,n; lr(n)->p,q => m,p,q", "(λ_l⊗id)λ_r = (id⊗λ_r)λ_l"),
    Identity("extra11", "a:A", "lr(a)->p,q; rl(p)->m,n => m,n,q",
             "rl(a)->m,n; lr(n)->p,q => m,p,q", "(ρ_l⊗id)λ_r = (id⊗λ_r)ρ_l"),
    Identity("extra13", "a:A", "rr(a)->p,q; ll(p)->m,n => m,n,q",
             "ll(a)->m,n; rr(n)->p,q => m,p,q", "(λ_l⊗id)ρ_r = (id⊗ρ_r)λ_l"),
    Identity("lr-mult", "a:A a':A", "mA(a,a')->x; lr(x)->y,z => y,z",
             "lr(a)->p,q; R(q,a')->aR,qR; lr(aR)->s,t; rr(p)->p0,p1; ml(p1,s)->w; "
             "mA(p0,w)->y; mB(t,qR)->z => y,z",
             "λ_r(aa') = a_[0]_(0)(a_[0]_(1)·a'_R_[0])⊗a'_R_[1]a_[1]_R"),
    Identity("extra3", "a:A a':A", "mA(a,a')->x; ll(x)->y,z => y,z",
             "ll(a')->m,n; Q(a,m)->aQ,mQ; ll(aQ)->u,v; mB(mQ,u)->y; rl(n)->m2,n2; "
             "mr(v,m2)->s; mA(s,n2)->z => y,z",
             "λ_l(aa') = a'_{-1}_Q a_Q_{-1}⊗(a_Q_{0}·a'_{0}_<-1>)a'_{0}_<0>"),
    Identity("extra4", "a:A a':A", "rl(a')->m,n; mr(a,m)->s; mA(s,n)->x; rl(x)->y,z => y,z",
             "rl(a)->m,n; rl(a')->m2,n2; Q(n,m2)->nQ,m2Q; mB(m,m2Q)->y; mA(nQ,n2)->z => y,z",
             "ρ_l((a·a'_<-1>)a'_<0>) = a_<-1>a'_<-1>_Q⊗a_<0>_Q a'_<0>"),
    Identity("extra5", "a:A a':A",
             "rr(a)->p,q; rl(p)->m,n; rr(a')->p2,q2; rl(p2)->m2,n2; R(m,n2)->n2R,mR; "
             "Q(n,q2)->nQ,q2Q; mB(mR,q2Q)->y => y,nQ,n2R,m2,q",
             "rr(a)->p,q; rl(p)->m,n; rr(a')->p2,q2; rl(p2)->m2,n2; mB(q2,m)->y => y,n,n2,m2,q",
             "legs of ρ_l ρ_r on a and a' exchanged through R and Q"),
    Identity("extra7", "a:A a':A b:B",
             "rl(a')->m,n; Q(n,b)->nQ,bQ; ll(nQ)->u,v; rr(a)->p,q; R(u,p)->pR,uR; "
             "mB(uR,q)->y => y,v,m,pR,bQ",
             "rl(a')->m,n; Q(n,b)->nQ,bQ; rr(a)->p,q; Q(nQ,q)->x,qq; ll(x)->u,v; "
             "mB(qq,u)->y => y,v,m,p,bQ",
             "λ_l legs moved across ρ_r through R versus Q"),
    Identity("extra8", "a:A a':A b:B",
             "rr(a)->p,q; R(b,p)->pR,bR; lr(pR)->x,y; rl(a')->m,n; Q(n,y)->nQ,yQ; "
             "mB(m,yQ)->z => x,z,nQ,q,bR",
             "rr(a)->p,q; R(b,p)->pr,br; rl(a')->m,n; R(m,pr)->x0,mR; lr(x0)->x,y; "
             "mB(y,mR)->z => x,z,n,q,br",
             "λ_r legs moved across ρ_l through Q versus R"),
    Identity("extra9", "a:A b:B b':B",
             "rl(a)->c,d; Q(d,b')->dQ,bQ; ll(dQ)->x,y; rr(y)->y0,y1; R(b,y0)->y0R,bR "
             "=> y0R,y1,c,x,bR,bQ",
             "rr(a)->a0,a1; R(b,a0)->a0R,bR; rl(a0R)->c,d; Q(d,b')->dQ,bQ; ll(dQ)->x,y "
             "=> y,a1,c,x,bR,bQ",
             "ρ_r after λ_l∘Q versus λ_l∘Q after ρ_r∘R"),
    Identity("extra10", "a:A b:B b':B",
             "rr(a)->p,q; R(b,p)->pR,bR; lr(pR)->x,y; rl(x)->m,n; Q(n,b')->nQ,bQ "
             "=> y,nQ,m,q,bR,bQ",
             "rr(a)->p,q; rl(p)->m,n; R(b,n)->nR,bR; Q(nR,b')->nQ,bQ; lr(nQ)->x,y "
             "=> y,x,m,q,bR,bQ",
             "λ_r and ρ_l legs exchanged through R and Q"),
    Identity("extra12", "a:A b:B b':B",
             "rr(a)->p,q; mr(p,b')->s; R(b,s)->sR,bR; lr(sR)->x,y; rr(x)->x0,x1 => x0,x1,y,bR,q",
             "rr(a)->p,q; R(b,p)->pR,bR; lr(pR)->x,y; rr(x)->x0,x1; mr(x0,b')->s => s,x1,y,bR,q",
             "right action commutes past R, λ_r and ρ_r"),
    Identity("extra14", "a':A b:B b':B",
             "rl(a')->m,n; ml(b,n)->s; Q(s,b')->sQ,bQ; ll(sQ)->u,v; rl(v)->u2,v2 => m,u,u2,v2,bQ",
             "rl(a')->m,n; Q(n,b')->nQ,bQ; ll(nQ)->u,v; rl(v)->u2,v2; ml(b,v2)->s => m,u,u2,s,bQ",
             "left action commutes past Q, λ_l and ρ_l"),
)
INVUNDTW_LABELS = ("units-λ", "lr-rr", "rr-lr", "extra1", "extra2", "extra6", "extra11", "extra13",
                   "lr-mult", "extra3", "extra4", "extra5", "extra7", "extra8", "extra9", "extra10",
                   "extra12", "extra14")


def check_pregat(d: TwistData, jobs: int = 1) -> Report:
    return verify(PREGAT_AXIOMS, twist_env(d), "associativity of the ∙ product", jobs)


def bullet_table(d: TwistData, label: str = "Ã") -> Algebra:
    env = twist_env(d)
    return algebra_from_program(env, "a:A a':A", _BULLET_GENERAL, d.a.unit, label)


def build_bullet_algebra(d: TwistData, force: bool = False) -> Algebra:
    """``Ã``: A with ``a∙a' = (a_(0)·a'_<-1>)(a_(1)·a'_<0>)`` and the unit of A."""
    rep = check_pregat(d)
    if not rep.ok and not force:
        raise PreconditionError(rep, "∙ product")
    return bullet_table(d, "Ã" if rep.ok else "Ã [FORCED: preconditions fail]")


def check_invundtw(d: TwistData, jobs: int = 1) -> Report:
    return verify(INVUNDTW_AXIOMS, twist_env(d), "invariance hypotheses", jobs)


_R_TILDE = "rr(a)->p,q; R(b,p)->pR,bR; lr(pR)->x,y; mB(y,bR)->t; mB(t,q)->z => x,z"
_Q_TILDE = "rl(a)->m,n; Q(n,b)->nQ,bQ; ll(nQ)->u,v; mB(m,bQ)->t; mB(t,u)->z => v,z"
_PHI = "rr(a)->p,q; rl(p)->m,n; mB(q,b)->t; mB(t,m)->z => n,z"
_PHI_INV = "lr(a)->p,q; ll(p)->m,n; mB(q,b)->t; mB(t,m)->z => n,z"


def twisted_pair_unchecked(d: TwistData) -> LRPair:
    env = twist_env(d)
    a_t = bullet_table(d)
    r = program_map(env, "b:B a:A", _R_TILDE, "R̃").matrix
    q = program_map(env, "a:A b:B", _Q_TILDE, "Q̃").matrix
    return LRPair(TwistingMap(a_t, d.b, r), QMap(a_t, d.b, q))


def build_twisted_pair(d: TwistData, force: bool = False) -> tuple[LRPair, Report]:
    """``(R̃, Q̃)`` on ``(Ã, B)`` together with its eight-axiom report."""
    pre = Report("invariance preconditions")
    pre.extend(check_pregat(d))
    pre.extend(check_lr_suite(d.pair), "(R,Q)")
    pre.extend(check_invundtw(d))
    if not pre.ok and not force:
        raise PreconditionError(pre, "twisted pair")
    pair = twisted_pair_unchecked(d)
    return pair, check_lr_suite(pair, subject="(R̃,Q̃) on (Ã,B)")


def invariance_iso(d: TwistData, force: bool = False, pair: LRPair | None = None
                   ) -> tuple[AlgebraMorphism, Report]:
    """``a⊗b ↦ a_(0)_<0>⊗a_(1) b a_(0)_<-1>`` from ``Ã _Q̃⊗_R̃ B`` to ``A _Q⊗_R B``.

    ``pair`` reuses the output of :func:`build_twisted_pair` and skips its checks.
    """
    if pair is None:
        pair, _ = build_twisted_pair(d, force)
    source = lr_product_table(pair.a, pair.b, pair.r.map, pair.q.map, "Ã_Q̃⊗_R̃B")
    target = lr_product_table(d.a, d.b, d.pair.r.map, d.pair.q.map, "A_Q⊗_RB")
    env = twist_env(d)
    phi = program_map(env, "a:A b:B", _PHI, "φ").matrix
    phi_inv = program_map(env, "a:A b:B", _PHI_INV, "φ^-1").matrix
    iso = AlgebraMorphism(source, target, phi, "invariance")
    rep = isomorphism_report(iso, "invariance isomorphism")
    ident = Matrix.identity(d.a.field, d.a.dim * d.b.dim)
    both = (phi @ phi_inv) == ident and (phi_inv @ phi) == ident
    rep.record("inverse", both, "(inverse) fails: the stated inverse does not compose to the identity")
    return iso, rep


def specialize_from_hopf(m: BimoduleAlgebra, c: Cocycle) -> TwistData:
    """TwistData on (𝒜, H) from an H-bimodule algebra and a 2-cocycle, with
    ``R(h⊗φ) = h_1·φ⊗h_2``, ``Q(φ⊗h) = φ·h_2⊗h_1``, ``ρ_r(φ) = G^1·φ⊗G^2``,
    ``ρ_l(φ) = F^1⊗φ·F^2``, ``λ_r(φ) = F^1·φ⊗F^2`` and ``λ_l(φ) = G^1⊗φ·G^2``."""
    from .hopf import check_bimodule_algebra
    pre = Report("Hopf specialization preconditions")
    pre.extend(check_bimodule_algebra(m))
    pre.extend(check_cocycle(c))
    _require(pre, "Hopf specialization")
    env = _module_cocycle_env(m, c)
    h_alg = m.h.alg

    def lin(inputs: str, program: str) -> Matrix:
        return program_map(env, inputs, program).matrix

    r = lin("h:H x:A", "cm(h)->h1,h2; la(h1,x)->y => y,h2")
    q = lin("x:A h:H", "cm(h)->h1,h2; ra(x,h2)->y => y,h1")
    pair = LRPair(TwistingMap(m.alg, h_alg, r), QMap(m.alg, h_alg, q))
    return TwistData(
        pair, m.left_action, m.right_action,
        rho_r=lin("x:A", "Gi()->g1,g2; la(g1,x)->y => y,g2"),
        rho_l=lin("x:A", "Fe()->f1,f2; ra(x,f2)->y => f1,y"),
        lambda_r=lin("x:A", "Fe()->f1,f2; la(f1,x)->y => y,f2"),
        lambda_l=lin("x:A", "Gi()->g1,g2; ra(x,g2)->y => g1,y"),
    )


def invariance_suite(m: BimoduleAlgebra, c: Cocycle) -> Report:
    """Every stage of the twisting pipeline on Hopf data, in order."""
    rep = Report(f"invariance pipeline {m.alg.label} over {m.h.label}")
    rep.extend(check_cocycle(c), "cocycle")
    if not rep.ok:
        return rep
    from .hopf import check_bialgebra, check_bimodule_algebra
    hf = drinfeld_twist(m.h, c)
    rep.extend(check_bialgebra(hf), "H_F")
    tm = twist_bimodule_algebra(m, c)
    rep.extend(check_bimodule_algebra(tm), "_F𝒜_F^-1")
    d = specialize_from_hopf(m, c)
    rep.extend(check_pregat(d), "pregat")
    rep.extend(check_algebra(bullet_table(d)), "Ã")
    rep.extend(check_lr_suite(d.pair), "(R,Q)")
    rep.extend(check_invundtw(d), "invundtw")
    pair = twisted_pair_unchecked(d)
    rep.extend(check_lr_suite(pair), "(R̃,Q̃)")
    if not rep.ok:
        return rep
    iso, iso_rep = invariance_iso(d, pair=pair)
    rep.extend(iso_rep, "iso")
    rep.add(table_equality("Ã=_F𝒜_F^-1", bullet_table(d), tm.alg))
    smash_iso, smash_rep = smash_invariance_iso(m, c)
    rep.extend(smash_rep, "smash-iso")
    rep.record("iso=smash-iso", iso.matrix == smash_iso.matrix,
               "(iso=smash-iso) fails: the two isomorphisms differ as matrices")
    return rep
