"""Concrete instances for every construction, generated by code and validated on load."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .algebra import Algebra, check_algebra, multiply, tensor_algebra
from .exactfield import GF, QQ, Field, Matrix
from .hopf import (Bialgebra, BicomoduleAlgebra, BimoduleAlgebra, HopfAlgebra, YDLAlgebra,
                   check_bialgebra, check_bicomodule_algebra, check_bimodule_algebra, check_hopf,
                   check_ydl, regular_bicomodule, smash_maps)
from .invariance import (Cocycle, check_cocycle, check_invundtw, check_pregat,
                         smash_invariance_iso, specialize_from_hopf)
from .iterate import TripleData, build_iterated, check_hexagons
from .report import Report
from .twisted import LRPair, QMap, TwistingMap, check_lr_suite, check_qmap, check_twisting_map


# -- algebras ---------------------------------------------------------------------


def truncated_poly(m: int, field: Field = QQ, label: str = "") -> Algebra:
    """``k[x]/(x^m)`` on the basis ``1, x, ..., x^(m-1)``."""
    if m < 1:
        raise ValueError("m must be positive")
    entries = {(i + j, i * m + j): field.one for i in range(m) for j in range(m) if i + j < m}
    unit = [1] + [0] * (m - 1)
    return Algebra(field, Matrix.from_sparse(field, m, m * m, entries), unit, label or f"k[x]/(x^{m})")


def sign_algebra(field: Field = QQ, label: str = "k[x]/(x²-1)") -> Algebra:
    """``k[x]/(x^2-1)`` on the basis ``1, x``."""
    entries = {(0, 0): 1, (1, 1): 1, (1, 2): 1, (0, 3): 1}
    return Algebra(field, Matrix.from_sparse(field, 2, 4, entries), [1, 0], label)


def _mixed_radix(index: int, orders: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for n in reversed(orders):
        out.append(index % n)
        index //= n
    return tuple(reversed(out))


def _flat(digits: tuple[int, ...], orders: tuple[int, ...]) -> int:
    idx = 0
    for d, n in zip(digits, orders):
        idx = idx * n + d
    return idx


def abelian_group_algebra(orders: tuple[int, ...], field: Field = QQ, label: str = "") -> HopfAlgebra:
    """``k[C_{n_1} x ... x C_{n_r}]`` with grouplike basis in mixed-radix order."""
    if not orders or any(n < 1 for n in orders):
        raise ValueError("group orders must be positive")
    size = 1
    for n in orders:
        size *= n
    elems = [_mixed_radix(i, orders) for i in range(size)]

    def product(i, j):
        return _flat(tuple((x + y) % n for x, y, n in zip(elems[i], elems[j], orders)), orders)

    def inv(i):
        return _flat(tuple((-x) % n for x, n in zip(elems[i], orders)), orders)

    mult = Matrix.from_sparse(field, size, size * size,
                              {(product(i, j), i * size + j): 1 for i in range(size) for j in range(size)})
    name = label or "k" + "×".join(f"C{n}" for n in orders)
    alg = Algebra(field, mult, [1] + [0] * (size - 1), name)
    comult = Matrix.from_sparse(field, size * size, size, {(i * size + i, i): 1 for i in range(size)})
    bi = Bialgebra(alg, comult, [1] * size)
    s = Matrix.from_sparse(field, size, size, {(inv(i), i): 1 for i in range(size)})
    return HopfAlgebra(bi, s, s)


def group_algebra(n: int, field: Field = QQ) -> HopfAlgebra:
    """``kC_n`` with ``Δg = g⊗g`` and ``S(g) = g^-1``; ``n = 1`` is the ground field."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return abelian_group_algebra((n,), field, f"kC{n}")


def solve_antipode(bi: Bialgebra) -> Matrix:
    """The convolution inverse of the identity, found as the solution of the
    linear system ``S(h_1)h_2 = ε(h)1 = h_1 S(h_2)`` in the ``n^2`` entries of S."""
    f, n = bi.field, bi.dim
    mult, comult = bi.alg.mult, bi.comult
    rows, rhs = [], []
    for h in range(n):
        terms = [(a, b, comult[a * n + b, h]) for a in range(n) for b in range(n) if comult[a * n + b, h]]
        for side in (0, 1):
            for k in range(n):
                row = [f.zero] * (n * n)
                for a, b, c in terms:
                    for s in range(n):
                        # unknown S[s, a] (side 0) or S[s, b] (side 1), stored at s*n + col
                        coeff = mult[k, s * n + b] if side == 0 else mult[k, a * n + s]
                        if coeff:
                            col = s * n + (a if side == 0 else b)
                            row[col] = f.add(row[col], f.mul(c, coeff))
                rows.append(row)
                rhs.append([f.mul(bi.counit[h], bi.alg.unit[k])])
    sol = Matrix(f, rows).solve(Matrix(f, rhs))
    return Matrix(f, [[sol[s * n + a, 0] for a in range(n)] for s in range(n)])


def sweedler_h4() -> HopfAlgebra:
    """Sweedler's algebra on ``1, g, x, gx`` (index ``a + 2b`` for ``g^a x^b``)."""
    f = QQ
    mult = {}
    for i in range(4):
        a, b = i % 2, i // 2
        for j in range(4):
            c, d = j % 2, j // 2
            if b + d < 2:
                # g^a x^b g^c x^d = (-1)^(bc) g^(a+c) x^(b+d)
                mult[((a + c) % 2 + 2 * (b + d), i * 4 + j)] = -1 if b * c else 1
    alg = Algebra(f, Matrix.from_sparse(f, 4, 16, mult), [1, 0, 0, 0], "H4")
    one, g, x, gx = range(4)
    comult = Matrix.from_sparse(f, 16, 4, {
        (one * 4 + one, one): 1, (g * 4 + g, g): 1,
        (x * 4 + one, x): 1, (g * 4 + x, x): 1,
        (gx * 4 + g, gx): 1, (one * 4 + gx, gx): 1,
    })
    bi = Bialgebra(alg, comult, [1, 1, 0, 0])
    s = solve_antipode(bi)
    return HopfAlgebra(bi, s, s.inverse())


def dual_hopf(h: HopfAlgebra, label: str = "") -> HopfAlgebra:
    """``H^*`` on the dual basis: multiplication ``Δ^T``, comultiplication ``m^T``."""
    f = h.field
    alg = Algebra(f, h.bialg.comult.transpose(), h.bialg.counit, label or f"{h.label}^*")
    bi = Bialgebra(alg, h.alg.mult.transpose(), h.alg.unit)
    inv = h.antipode_inv.transpose() if h.antipode_inv is not None else None
    return HopfAlgebra(bi, h.antipode.transpose(), inv)


def dual_group_algebra(orders: tuple[int, ...] = (2, 2), field: Field = QQ) -> HopfAlgebra:
    """``k^G`` for abelian G on its idempotent basis ``p_x``."""
    name = "k^(" + "×".join(f"C{n}" for n in orders) + ")"
    return dual_hopf(abelian_group_algebra(orders, field), name)


# -- module and comodule algebras ---------------------------------------------------


def hit_bimodule(h: HopfAlgebra, label: str = "") -> BimoduleAlgebra:
    """``H^*`` with ``(h⇀φ)(k) = φ(kh)`` and ``(φ↼h)(k) = φ(hk)``."""
    n = h.dim
    dual = dual_hopf(h, label)
    mult = h.alg.mult
    # e_a⇀δ_i = Σ_k c_{ka}^i δ_k and δ_i↼e_a = Σ_k c_{ak}^i δ_k
    left = Matrix.from_sparse(h.field, n, n * n, {(k, a * n + i): mult[i, k * n + a]
                                                  for k in range(n) for a in range(n) for i in range(n)})
    right = Matrix.from_sparse(h.field, n, n * n, {(k, i * n + a): mult[i, a * n + k]
                                                   for k in range(n) for a in range(n) for i in range(n)})
    return BimoduleAlgebra(h, dual.alg, left, right)


def one_sided(m: BimoduleAlgebra) -> BimoduleAlgebra:
    """The same left action with the trivial right action ``φ·h = ε(h)φ``."""
    triv = BimoduleAlgebra.trivial(m.h, m.alg)
    return BimoduleAlgebra(m.h, m.alg, m.left_action, triv.right_action)


def _sign_action(h: HopfAlgebra, field: Field, side: str) -> Matrix:
    """kC2 acting on ``k[x]/(x^2-1)`` by ``g·x = -x``; ``side`` orders the legs."""
    entries = {}
    for gi in range(2):
        for xi in range(2):
            val = -1 if gi and xi else 1
            col = gi * 2 + xi if side == "left" else xi * 2 + gi
            entries[(xi, col)] = val
    return Matrix.from_sparse(field, 2, 4, entries)


def sign_bimodule(field: Field = QQ, right: bool = True) -> BimoduleAlgebra:
    """kC2 acting on ``k[y]/(y^2-1)`` by ``g·y = -y`` on the left and, if ``right``,
    also ``y·g = -y``."""
    h = group_algebra(2, field)
    alg = sign_algebra(field, "k[y]/(y²-1)")
    left = _sign_action(h, field, "left")
    m = BimoduleAlgebra(h, alg, left, _sign_action(h, field, "right"))
    return m if right else one_sided(m)


def ydl_instance(field: Field = QQ) -> tuple[YDLAlgebra, BimoduleAlgebra]:
    """``A = k[x]/(x^2-1)`` over kC2: sign action, trivial right action, left
    coaction ``x ↦ g⊗x``, trivial right coaction; 𝒜 is the two-sided sign module."""
    h = group_algebra(2, field)
    alg = sign_algebra(field)
    bimod = one_sided(BimoduleAlgebra(h, alg, _sign_action(h, field, "left"),
                                      _sign_action(h, field, "right")))
    triv = BicomoduleAlgebra.trivial(h, alg)
    # λ(1) = 1⊗1, λ(x) = g⊗x; rows index H⊗A
    lam = Matrix.from_sparse(field, 4, 2, {(0 * 2 + 0, 0): 1, (1 * 2 + 1, 1): 1})
    bicomod = BicomoduleAlgebra(h, alg, lam, triv.right_coaction)
    return YDLAlgebra(h, bimod, bicomod), sign_bimodule(field)


def ydl_trivial(field: Field = QQ) -> YDLAlgebra:
    h = group_algebra(2, field)
    alg = sign_algebra(field)
    return YDLAlgebra(h, BimoduleAlgebra.trivial(h, alg), BicomoduleAlgebra.trivial(h, alg))


def swap_ydl_candidate(field: Field = QQ, graded: bool = True) -> YDLAlgebra:
    """``k[x,y]/(x^2-1, y^2-1)`` over kC2 with g swapping x and y on the left.

    With ``graded`` the left coaction is ``x ↦ g⊗x, y ↦ g⊗y``, a valid
    Yetter-Drinfeld-Long structure; otherwise ``y ↦ 1⊗y``, which breaks ydl1.
    """
    h = group_algebra(2, field)
    # basis 1, x, y, xy as index a + 2b for x^a y^b
    mult = {}
    for i in range(4):
        for j in range(4):
            a = (i % 2 + j % 2) % 2
            b = (i // 2 + j // 2) % 2
            mult[(a + 2 * b, i * 4 + j)] = 1
    alg = Algebra(field, Matrix.from_sparse(field, 4, 16, mult), [1, 0, 0, 0], "k[x,y]/(x²-1,y²-1)")
    swap = {0: 0, 1: 2, 2: 1, 3: 3}
    left = Matrix.from_sparse(field, 4, 8, {((swap[u] if g else u), g * 4 + u): 1
                                            for g in range(2) for u in range(4)})
    deg_y = 1 if graded else 0
    # λ(x^a y^b) = g^(a + deg_y*b)⊗x^a y^b
    lam = Matrix.from_sparse(field, 8, 4, {(((u % 2 + deg_y * (u // 2)) % 2) * 4 + u, u): 1
                                           for u in range(4)})
    triv_mod = BimoduleAlgebra.trivial(h, alg)
    triv_co = BicomoduleAlgebra.trivial(h, alg)
    return YDLAlgebra(h, BimoduleAlgebra(h, alg, left, triv_mod.right_action),
                      BicomoduleAlgebra(h, alg, lam, triv_co.right_coaction))


# -- twisting pairs and triples -------------------------------------------------------


def diagonal_pair(m: int, q, field: Field = QQ) -> LRPair:
    """``R(y^j⊗x^i) = q^(ij) x^i⊗y^j`` and ``Q(x^i⊗y^j) = q^(ij) x^i⊗y^j``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    qv = field(q)
    if not qv:
        raise ValueError("q must be nonzero")
    a = truncated_poly(m, field, f"k[x]/(x^{m})")
    b = truncated_poly(m, field, f"k[y]/(y^{m})")
    powers = {}
    r, qm = {}, {}
    for i in range(m):
        for j in range(m):
            w = powers.setdefault(i * j, _power(field, qv, i * j))
            r[(i * m + j, j * m + i)] = w
            qm[(i * m + j, i * m + j)] = w
    return LRPair.from_matrices(a, b, Matrix.from_sparse(field, m * m, m * m, r),
                                Matrix.from_sparse(field, m * m, m * m, qm))


def _power(field: Field, x, k: int):
    out = field.one
    for _ in range(k):
        out = field.mul(out, x)
    return out


def flip_pair(a: Algebra, b: Algebra) -> LRPair:
    return LRPair(TwistingMap.flip(a, b), QMap.identity(a, b))


def _diag_matrix(field: Field, m: int, n: int, q, transpose: bool) -> Matrix:
    qv = field(q)
    entries = {}
    for i in range(m):
        for j in range(n):
            col = j * m + i if transpose else i * n + j
            entries[(i * n + j, col)] = _power(field, qv, i * j)
    return Matrix.from_sparse(field, m * n, m * n, entries)


def _diag_pair(a: Algebra, b: Algebra, qr, qq) -> LRPair:
    f = a.field
    return LRPair.from_matrices(a, b, _diag_matrix(f, a.dim, b.dim, qr, True),
                                _diag_matrix(f, a.dim, b.dim, qq, False))


def trivial_triple(field: Field = QQ) -> TripleData:
    a = truncated_poly(2, field, "k[x]/(x²)")
    b = sign_algebra(field, "k[y]/(y²-1)")
    c = truncated_poly(2, field, "k[z]/(z²)")
    return TripleData(flip_pair(a, b), flip_pair(b, c), flip_pair(a, c))


def diagonal_triple(field: Field = QQ, qs=(2, -1, 3)) -> TripleData:
    """Three truncated polynomial algebras ``k[x]/(x^2)`` with diagonal pairs
    ``(q_1, q_1^-1)``, ``(q_2, q_2)`` and ``(q_3, 1)`` in the R and Q slots."""
    a = truncated_poly(2, field, "k[x]/(x²)")
    b = truncated_poly(2, field, "k[y]/(y²)")
    c = truncated_poly(2, field, "k[z]/(z²)")
    q1, q2, q3 = (field(q) for q in qs)
    return TripleData(_diag_pair(a, b, q1, field.inv(q1)), _diag_pair(b, c, q2, q2),
                      _diag_pair(a, c, q3, 1))



def perturbed_triple() -> TripleData:
    """A GF(3) triple on three copies of ``k[x]/(x^2)`` where every pair passes
    its eight axioms but (comb3) fails.

    Found by exhaustive search over GF(3): ``R1(y⊗x) = 0`` on the generators with
    ``Q1 = id``, ``R2`` the flip with ``Q2(y⊗z) = 1⊗1 + 2y⊗z``, and the flip pair
    on (A, C).  The lexicographically first witness is ``b=f1, a=e1, c=g1``.
    """
    f = GF(3)
    a = truncated_poly(2, f, "k[x]/(x²)")
    b = truncated_poly(2, f, "k[y]/(y²)")
    c = truncated_poly(2, f, "k[z]/(z²)")
    r1 = Matrix(f, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 0]])
    q2 = Matrix(f, [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]])
    p1 = LRPair.from_matrices(a, b, r1, Matrix.identity(f, 4))
    p2 = LRPair.from_matrices(b, c, Matrix.flip(f, 2, 2), q2)
    return TripleData(p1, p2, flip_pair(a, c))

# -- cocycles -------------------------------------------------------------------------


def bicharacter_cocycle(chi: Callable[[tuple, tuple], int] | None = None
                        ) -> tuple[HopfAlgebra, Cocycle]:
    """``F = Σ χ(x,y) p_x⊗p_y`` on ``k^(C2×C2)`` with ``χ((i,j),(k,l)) = (-1)^(il)``."""
    h = dual_group_algebra((2, 2))
    chi = chi or (lambda x, y: (-1) ** (x[0] * y[1]))
    elems = [_mixed_radix(i, (2, 2)) for i in range(4)]
    f = tuple(QQ(chi(x, y)) for x in elems for y in elems)
    f_inv = tuple(QQ.inv(v) for v in f)
    return h, Cocycle(h.bialg, f, f_inv)


def h4_cocycle(t=1) -> tuple[HopfAlgebra, Cocycle]:
    """``F = 1⊗1 + t·gx⊗x`` on Sweedler's algebra, with ``F^-1 = 1⊗1 - t·gx⊗x``."""
    h = sweedler_h4()
    tv = QQ(t)
    f = [QQ.zero] * 16
    f[0] = QQ.one
    f_inv = list(f)
    f[3 * 4 + 2] = tv
    f_inv[3 * 4 + 2] = -tv
    return h, Cocycle(h.bialg, tuple(f), tuple(f_inv))


def gauge_cocycle(h: HopfAlgebra, u: Sequence, u_inv: Sequence) -> Cocycle:
    """The coboundary ``F = (u⊗u)Δ(u^-1)`` with ``F^-1 = Δ(u)(u^-1⊗u^-1)`` of an
    invertible ``u``; ``Δ_F`` differs from ``Δ`` whenever ``u`` is not central."""
    f = h.field
    hh = tensor_algebra(h.alg, h.alg)
    if multiply(h.alg, u, u_inv) != tuple(h.alg.unit):
        raise ValueError("u_inv is not the inverse of u")

    def delta(v):
        return tuple(sum((f.mul(h.bialg.comult[r, k], v[k]) for k in range(h.dim)), f.zero)
                     for r in range(h.dim ** 2))

    uu = tuple(f.mul(x, y) for x in u for y in u)
    vv = tuple(f.mul(x, y) for x in u_inv for y in u_inv)
    return Cocycle(h.bialg, multiply(hh, uu, delta(u_inv)), multiply(hh, delta(u), vv))


def h4_gauge_cocycle() -> tuple[HopfAlgebra, Cocycle]:
    """The coboundary of ``u = 1 + x`` on Sweedler's algebra."""
    h = sweedler_h4()
    return h, gauge_cocycle(h, (1, 0, 1, 0), (1, 0, -1, 0))


def twist_instance(which: str = "bichar") -> tuple[BimoduleAlgebra, Cocycle]:
    """Hopf data for the invariance pipeline: ``bichar`` (hit bimodule on
    ``(k^(C2×C2))^*``), ``bichar-onesided`` (trivial right action), ``H4`` or
    ``H4-gauge`` (hit bimodule on ``H4^*``)."""
    if which in ("bichar", "bichar-onesided"):
        h, c = bicharacter_cocycle()
        m = hit_bimodule(h, "kC2×C2")
        return (m if which == "bichar" else one_sided(m)), c
    if which in ("H4", "H4-gauge"):
        h, c = h4_cocycle() if which == "H4" else h4_gauge_cocycle()
        return hit_bimodule(h, "H4^*"), c
    raise KeyError(which)


# -- the catalog ------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    payload: Any
    provenance_note: str


class CatalogError(RuntimeError):
    pass


def smash_pair(m: BimoduleAlgebra, h: HopfAlgebra) -> LRPair:
    return smash_maps(m, regular_bicomodule(h))


_BUILDERS: dict[str, tuple[str, Callable[[], Any], str]] = {
    "kC1": ("hopf", lambda: group_algebra(1), "group algebra of the trivial group (the ground field)"),
    "kC2": ("hopf", lambda: group_algebra(2), "group algebra of C2, S = id"),
    "kC3": ("hopf", lambda: group_algebra(3), "group algebra of C3"),
    "kC4-F5": ("hopf", lambda: group_algebra(4, GF(5)), "group algebra of C4 over GF(5)"),
    "H4": ("hopf", sweedler_h4, "Sweedler's 4-dimensional Hopf algebra, antipode solved linearly"),
    "kC2xC2-dual": ("hopf", lambda: dual_group_algebra((2, 2)), "dual group algebra of C2×C2"),
    "trunc-2": ("algebra", lambda: truncated_poly(2), "dual numbers k[x]/(x^2)"),
    "trunc-3": ("algebra", lambda: truncated_poly(3), "truncated polynomials k[x]/(x^3)"),
    "sign-alg": ("algebra", sign_algebra, "k[x]/(x^2-1)"),
    "diag-2-2": ("lrpair", lambda: diagonal_pair(2, 2), "quantum-plane style diagonal pair, m=2, q=2"),
    "diag-3-neg1": ("lrpair", lambda: diagonal_pair(3, -1), "diagonal pair, m=3, q=-1"),
    "diag-2-1": ("lrpair", lambda: diagonal_pair(2, 1), "diagonal pair with q=1: flip and identity"),
    "diag-3-2-F3": ("lrpair", lambda: diagonal_pair(3, 2, GF(3)), "diagonal pair over GF(3), m=3, q=2"),
    "smash-kC2": ("lrpair", lambda: smash_pair(sign_bimodule(), group_algebra(2)),
                  "L-R-smash pair of the sign bimodule and the regular kC2 bicomodule"),
    "smash-H4": ("lrpair", lambda: smash_pair(hit_bimodule(sweedler_h4(), "H4^*"), sweedler_h4()),
                 "L-R-smash pair of the hit bimodule H4^* and the regular H4 bicomodule"),
    "sign-kC2": ("bimodule", sign_bimodule, "kC2 acting by signs on both sides of k[y]/(y^2-1)"),
    "sign-kC2-left": ("bimodule", lambda: sign_bimodule(right=False), "left sign action only"),
    "hit-H4": ("bimodule", lambda: hit_bimodule(sweedler_h4(), "H4^*"), "hit actions of H4 on H4^*"),
    "hit-kC2xC2": ("bimodule", lambda: twist_instance("bichar")[0],
                   "hit actions of k^(C2×C2) on its dual kC2×C2"),
    "regular-kC2": ("bicomodule", lambda: regular_bicomodule(group_algebra(2)), "kC2 coacting by Δ"),
    "regular-H4": ("bicomodule", lambda: regular_bicomodule(sweedler_h4()), "H4 coacting by Δ"),
    "ydl-kC2": ("ydl", lambda: ydl_instance()[0], "k[x]/(x^2-1) graded by x ↦ g⊗x with sign action"),
    "ydl-kC2-trivial": ("ydl", ydl_trivial, "trivial structures on k[x]/(x^2-1)"),
    "ydl-swap": ("ydl", swap_ydl_candidate, "k[x,y]/(x^2-1,y^2-1) with g swapping x and y"),
    "bichar-C2xC2": ("cocycle", lambda: bicharacter_cocycle()[1], "bicharacter (-1)^(il) on C2×C2"),
    "twist-H4": ("cocycle", lambda: h4_cocycle()[1], "F = 1⊗1 + gx⊗x on Sweedler's algebra"),
    "gauge-H4": ("cocycle", lambda: h4_gauge_cocycle()[1],
                 "coboundary of u = 1 + x on Sweedler's algebra; changes the comultiplication"),
    "twistdata-bichar": ("twistdata", lambda: specialize_from_hopf(*twist_instance("bichar")),
                         "Hopf specialization of the bicharacter twist, hit bimodule"),
    "twistdata-bichar-onesided": ("twistdata",
                                  lambda: specialize_from_hopf(*twist_instance("bichar-onesided")),
                                  "Hopf specialization, left hit action only"),
    "twistdata-H4": ("twistdata", lambda: specialize_from_hopf(*twist_instance("H4")),
                     "Hopf specialization of the H4 twist"),
    "twistdata-H4-gauge": ("twistdata", lambda: specialize_from_hopf(*twist_instance("H4-gauge")),
                           "Hopf specialization of the gauge twist of H4"),
    "triple-trivial": ("triple", trivial_triple, "flip maps and identities on three algebras"),
    "triple-diagonal": ("triple", diagonal_triple, "diagonal pairs on three copies of k[x]/(x^2)"),
}


def entry_ids() -> list[str]:
    return list(_BUILDERS)


def build_entry(entry_id: str) -> CatalogEntry:
    try:
        kind, builder, note = _BUILDERS[entry_id]
    except KeyError:
        raise KeyError(f"unknown catalog entry {entry_id!r}") from None
    return CatalogEntry(entry_id, kind, builder(), note)


def check_payload(kind: str, payload: Any, jobs: int = 1) -> Report:
    """The full check suite of a structure of the given kind."""
    if kind == "algebra":
        return check_algebra(payload, jobs)
    if kind == "bialgebra":
        return check_bialgebra(payload, jobs)
    if kind == "hopf":
        return check_hopf(payload, jobs)
    if kind == "bimodule":
        return check_bimodule_algebra(payload, jobs)
    if kind == "bicomodule":
        return check_bicomodule_algebra(payload, jobs)
    if kind == "ydl":
        rep = Report(f"Yetter-Drinfeld-Long structure on {payload.alg.label}")
        rep.extend(check_bimodule_algebra(payload.bimod, jobs), "bimodule")
        rep.extend(check_bicomodule_algebra(payload.bicomod, jobs), "bicomodule")
        return rep.extend(check_ydl(payload, jobs))
    if kind == "twisting":
        return check_twisting_map(payload, jobs)
    if kind == "qmap":
        return check_qmap(payload, jobs)
    if kind == "lrpair":
        return check_lr_suite(payload, jobs)
    if kind == "cocycle":
        return check_cocycle(payload, jobs)
    if kind == "twistdata":
        rep = Report("twist data")
        rep.extend(check_pregat(payload, jobs))
        rep.extend(check_lr_suite(payload.pair, jobs), "(R,Q)")
        return rep.extend(check_invundtw(payload, jobs))
    if kind == "triple":
        return build_iterated(payload, force=True)[2]
    raise ValueError(f"unknown kind {kind!r}")


def _validate(entry_id: str) -> tuple[str, str | None]:
    entry = build_entry(entry_id)
    rep = check_payload(entry.kind, entry.payload)
    if rep.ok:
        return entry_id, None
    fail = rep.first_failure()
    return entry_id, f"({fail.label}) {fail.witness or ''}".strip()


def load_catalog(ids: list[str] | None = None, jobs: int = 1) -> dict[str, CatalogEntry]:
    """Build and validate entries; a failing entry aborts with its witness."""
    ids = list(ids or _BUILDERS)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_validate, ids))
    else:
        results = [_validate(i) for i in ids]
    for entry_id, problem in results:
        if problem is not None:
            raise CatalogError(f"catalog entry {entry_id} fails its checks: {problem}")
    return {i: build_entry(i) for i in ids}


def entries_of_kind(kind: str) -> list[str]:
    return [i for i, (k, _, _) in _BUILDERS.items() if k == kind]


# -- negative controls ------------------------------------------------------------------


def broken_unit_algebra(field: Field = QQ) -> Algebra:
    """``e1·e1 = e1``, ``e0·e1 = 0`` with unit ``e0``: associative, not unital."""
    return Algebra.from_tensor(field, [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [1, 0], "broken unit")


def _uninverted_smash_iso(jobs: int = 1) -> Report:
    m, c = twist_instance("H4")
    return smash_invariance_iso(m, c, inverse=c.f)[1]


@dataclass(frozen=True)
class NegativeControl:
    id: str
    advertised: str
    run: Callable[..., Report]
    note: str


NEGATIVE_CONTROLS: dict[str, NegativeControl] = {n.id: n for n in (
    NegativeControl("broken-unit", "unit", lambda jobs=1: check_algebra(broken_unit_algebra(), jobs),
                    "unit row of e1 broken: e0·e1 = 0"),
    NegativeControl("transposed-coaction", "ydl1",
                    lambda jobs=1: check_payload("ydl", swap_ydl_candidate(graded=False), jobs),
                    "left coaction of y taken from the trivial grading instead of g⊗y"),
    NegativeControl("F-for-F^-1", "multiplicative", _uninverted_smash_iso,
                    "smash invariance map on H4 built with F in place of F^-1"),
    NegativeControl("perturbed-hexagon", "comb3",
                    lambda jobs=1: check_hexagons(perturbed_triple(), jobs),
                    "one Q-map of a triple changed so that exactly one hexagon condition breaks"),
)}
