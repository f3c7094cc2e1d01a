"""numpy kernels for the GF(p) candidate search.

Arrays are int64 with entries in ``[0, p)``: structure constants ``c[i, j, k]``,
unit vectors, and maps in the matrix layout used everywhere else
(``R[i*nB + j, l*nA + k]`` is the coefficient of ``e_i⊗f_j`` in ``R(f_l⊗e_k)``,
``Q[i*nB + j, k*nB + l]`` that of ``e_i⊗f_j`` in ``Q(e_k⊗f_l)``).
"""
from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _zero(x: np.ndarray, p: int) -> bool:
    return not np.any(x % p)


def _eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def check_twisting(ca, cb, ua, ub, r, p: int) -> bool:
    """tw0, tw4 and tw5 for ``R``."""
    na, nb = ca.shape[0], cb.shape[0]
    r4 = np.asarray(r, dtype=np.int64).reshape(na, nb, nb, na)
    if not _zero(np.einsum("l,ijlk->ijk", ub, r4) - np.einsum("ik,j->ijk", _eye(na), ub), p):
        return False
    if not _zero(np.einsum("k,ijlk->ijl", ua, r4) - np.einsum("i,jl->ijl", ua, _eye(nb)), p):
        return False
    lhs = np.einsum("kKm,sJlm->sJlkK", ca, r4)
    rhs = np.einsum("ijlk,IJjK,iIs->sJlkK", r4, r4, ca)
    if not _zero(lhs - rhs, p):
        return False
    lhs = np.einsum("lLm,ijmk->ijlLk", cb, r4)
    rhs = np.einsum("ijLk,IJli,Jjt->ItlLk", r4, r4, cb)
    return _zero(lhs - rhs, p)


def check_qmap(ca, cb, ua, ub, q, p: int) -> bool:
    """tw0', tw4' and tw5' for ``Q``."""
    na, nb = ca.shape[0], cb.shape[0]
    q4 = np.asarray(q, dtype=np.int64).reshape(na, nb, na, nb)
    if not _zero(np.einsum("l,ijkl->ijk", ub, q4) - np.einsum("ik,j->ijk", _eye(na), ub), p):
        return False
    if not _zero(np.einsum("k,ijkl->ijl", ua, q4) - np.einsum("i,jl->ijl", ua, _eye(nb)), p):
        return False
    lhs = np.einsum("kKm,sjml->sjkKl", ca, q4)
    rhs = np.einsum("iaKl,IJka,Iis->sJkKl", q4, q4, ca)
    if not _zero(lhs - rhs, p):
        return False
    lhs = np.einsum("lLm,ijkm->ijklL", cb, q4)
    rhs = np.einsum("iakl,IJiL,aJt->ItklL", q4, q4, cb)
    return _zero(lhs - rhs, p)


def check_comb(na: int, nb: int, r, q, p: int) -> bool:
    """comb1 and comb2 for the pair ``(R, Q)``."""
    r4 = np.asarray(r, dtype=np.int64).reshape(na, nb, nb, na)
    q4 = np.asarray(q, dtype=np.int64).reshape(na, nb, na, nb)
    lhs = np.einsum("ijlk,IJiL->jIJlkL", r4, q4)
    rhs = np.einsum("iJkL,Ijli->jIJlkL", q4, r4)
    if not _zero(lhs - rhs, p):
        return False
    lhs = np.einsum("ijlk,IJKj->iJIKlk", r4, q4)
    rhs = np.einsum("IjKl,iJjk->iJIKlk", q4, r4)
    return _zero(lhs - rhs, p)


def scan(ca, cb, ua, ub, base, free_rows, free_cols, p: int, start: int, stop: int, kind: int) -> list[int]:
    """Indices in ``[start, stop)`` of valid candidates (kind 0: R, kind 1: Q).

    Candidate ``idx`` fills the free positions with its base-p digits, most
    significant first, so index order is lexicographic order of the matrix.
    """
    m = np.array(base, dtype=np.int64, copy=True)
    rows = np.asarray(free_rows, dtype=np.intp)
    cols = np.asarray(free_cols, dtype=np.intp)
    nf = len(rows)
    weights = p ** np.arange(nf - 1, -1, -1, dtype=np.int64)
    check = check_twisting if kind == 0 else check_qmap
    out = []
    for idx in range(start, stop):
        m[rows, cols] = (idx // weights) % p
        if check(ca, cb, ua, ub, m, p):
            out.append(idx)
    return out
