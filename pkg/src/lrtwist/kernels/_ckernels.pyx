# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the GF(p) candidate search.

Same contract as ``_pykernels``; every check exits at the first nonzero
residue.  Dimensions are limited to ``MAXD`` per factor.
"""
import numpy as np

ctypedef long long i64

cdef enum:
    MAXD = 8
    MAXT = 64

BACKEND = "cython"


cdef inline i64 _mod(i64 x, i64 p) noexcept nogil:
    x %= p
    return x + p if x < 0 else x


cdef bint _units(const i64[:, ::1] m, const i64[::1] ua, const i64[::1] ub,
                 int na, int nb, i64 p, bint is_q) noexcept nogil:
    # R(1⊗a_k) = a_k⊗1, R(b_l⊗1) = 1⊗b_l, or the same for Q(a⊗1), Q(1⊗b)
    cdef int i, j, k, l, col
    cdef i64 s
    for i in range(na):
        for j in range(nb):
            for k in range(na):
                s = 0
                for l in range(nb):
                    col = k * nb + l if is_q else l * na + k
                    s += ub[l] * m[i * nb + j, col]
                if i == k:
                    s -= ub[j]
                if _mod(s, p) != 0:
                    return False
            for l in range(nb):
                s = 0
                for k in range(na):
                    col = k * nb + l if is_q else l * na + k
                    s += ua[k] * m[i * nb + j, col]
                if j == l:
                    s -= ua[i]
                if _mod(s, p) != 0:
                    return False
    return True


cdef bint _tw4(const i64[:, :, ::1] ca, const i64[:, ::1] r, int na, int nb, i64 p) noexcept nogil:
    # R(b_l⊗a_k a_K) = a_{k,R} a_{K,r}⊗b_{l,R,r}
    cdef int l, k, K, i, j, I, J, s, m
    cdef i64 acc[MAXT]
    cdef i64 w, v
    for l in range(nb):
        for k in range(na):
            for K in range(na):
                for s in range(na):
                    for J in range(nb):
                        w = 0
                        for m in range(na):
                            w += ca[k, K, m] * r[s * nb + J, l * na + m]
                        acc[s * nb + J] = w
                for i in range(na):
                    for j in range(nb):
                        w = r[i * nb + j, l * na + k]
                        if w == 0:
                            continue
                        for I in range(na):
                            for J in range(nb):
                                v = r[I * nb + J, j * na + K]
                                if v == 0:
                                    continue
                                v = _mod(w * v, p)
                                for s in range(na):
                                    acc[s * nb + J] -= v * ca[i, I, s]
                for s in range(na * nb):
                    if _mod(acc[s], p) != 0:
                        return False
    return True


cdef bint _tw5(const i64[:, :, ::1] cb, const i64[:, ::1] r, int na, int nb, i64 p) noexcept nogil:
    # R(b_l b_L⊗a_k) = a_{k,R,r}⊗b_{l,r} b_{L,R}
    cdef int l, L, k, i, j, I, J, t, m
    cdef i64 acc[MAXT]
    cdef i64 w, v
    for l in range(nb):
        for L in range(nb):
            for k in range(na):
                for I in range(na):
                    for t in range(nb):
                        w = 0
                        for m in range(nb):
                            w += cb[l, L, m] * r[I * nb + t, m * na + k]
                        acc[I * nb + t] = w
                for i in range(na):
                    for j in range(nb):
                        w = r[i * nb + j, L * na + k]
                        if w == 0:
                            continue
                        for I in range(na):
                            for J in range(nb):
                                v = r[I * nb + J, l * na + i]
                                if v == 0:
                                    continue
                                v = _mod(w * v, p)
                                for t in range(nb):
                                    acc[I * nb + t] -= v * cb[J, j, t]
                for t in range(na * nb):
                    if _mod(acc[t], p) != 0:
                        return False
    return True


cdef bint _tw4q(const i64[:, :, ::1] ca, const i64[:, ::1] q, int na, int nb, i64 p) noexcept nogil:
    # Q(a_k a_K⊗b_l) = a_{k,q} a_{K,Q}⊗b_{l,Q,q}
    cdef int l, k, K, i, a, I, J, s, m
    cdef i64 acc[MAXT]
    cdef i64 w, v
    for k in range(na):
        for K in range(na):
            for l in range(nb):
                for s in range(na):
                    for J in range(nb):
                        w = 0
                        for m in range(na):
                            w += ca[k, K, m] * q[s * nb + J, m * nb + l]
                        acc[s * nb + J] = w
                for i in range(na):
                    for a in range(nb):
                        w = q[i * nb + a, K * nb + l]
                        if w == 0:
                            continue
                        for I in range(na):
                            for J in range(nb):
                                v = q[I * nb + J, k * nb + a]
                                if v == 0:
                                    continue
                                v = _mod(w * v, p)
                                for s in range(na):
                                    acc[s * nb + J] -= v * ca[I, i, s]
                for s in range(na * nb):
                    if _mod(acc[s], p) != 0:
                        return False
    return True


cdef bint _tw5q(const i64[:, :, ::1] cb, const i64[:, ::1] q, int na, int nb, i64 p) noexcept nogil:
    # Q(a_k⊗b_l b_L) = a_{k,Q,q}⊗b_{l,Q} b_{L,q}
    cdef int l, L, k, i, a, I, J, t, m
    cdef i64 acc[MAXT]
    cdef i64 w, v
    for k in range(na):
        for l in range(nb):
            for L in range(nb):
                for I in range(na):
                    for t in range(nb):
                        w = 0
                        for m in range(nb):
                            w += cb[l, L, m] * q[I * nb + t, k * nb + m]
                        acc[I * nb + t] = w
                for i in range(na):
                    for a in range(nb):
                        w = q[i * nb + a, k * nb + l]
                        if w == 0:
                            continue
                        for I in range(na):
                            for J in range(nb):
                                v = q[I * nb + J, i * nb + L]
                                if v == 0:
                                    continue
                                v = _mod(w * v, p)
                                for t in range(nb):
                                    acc[I * nb + t] -= v * cb[a, J, t]
                for t in range(na * nb):
                    if _mod(acc[t], p) != 0:
                        return False
    return True


cdef bint _comb(const i64[:, ::1] r, const i64[:, ::1] q, int na, int nb, i64 p) noexcept nogil:
    cdef int l, k, L, K, i, j, I, J, x
    cdef i64 acc[MAXD * MAXD * MAXD]
    cdef i64 w, v
    cdef int size = nb * na * nb
    # comb1 on b_l⊗a_k⊗b_L, output legs (b, a, b')
    for l in range(nb):
        for k in range(na):
            for L in range(nb):
                for x in range(size):
                    acc[x] = 0
                for i in range(na):
                    for j in range(nb):
                        w = r[i * nb + j, l * na + k]
                        if w == 0:
                            continue
                        for I in range(na):
                            for J in range(nb):
                                v = q[I * nb + J, i * nb + L]
                                if v != 0:
                                    acc[(j * na + I) * nb + J] += w * v
                for i in range(na):
                    for J in range(nb):
                        w = q[i * nb + J, k * nb + L]
                        if w == 0:
                            continue
                        for I in range(na):
                            for j in range(nb):
                                v = r[I * nb + j, l * na + i]
                                if v != 0:
                                    acc[(j * na + I) * nb + J] -= w * v
                for x in range(size):
                    if _mod(acc[x], p) != 0:
                        return False
    size = na * nb * na
    # comb2 on a_K⊗b_l⊗a_k, output legs (a, b, a')
    for K in range(na):
        for l in range(nb):
            for k in range(na):
                for x in range(size):
                    acc[x] = 0
                for i in range(na):
                    for j in range(nb):
                        w = r[i * nb + j, l * na + k]
                        if w == 0:
                            continue
                        for I in range(na):
                            for J in range(nb):
                                v = q[I * nb + J, K * nb + j]
                                if v != 0:
                                    acc[(i * nb + J) * na + I] += w * v
                for I in range(na):
                    for j in range(nb):
                        w = q[I * nb + j, K * nb + l]
                        if w == 0:
                            continue
                        for i in range(na):
                            for J in range(nb):
                                v = r[i * nb + J, j * na + k]
                                if v != 0:
                                    acc[(i * nb + J) * na + I] -= w * v
                for x in range(size):
                    if _mod(acc[x], p) != 0:
                        return False
    return True


def _dims(ca, cb):
    na, nb = ca.shape[0], cb.shape[0]
    if na > MAXD or nb > MAXD:
        raise ValueError(f"compiled kernels support dimensions up to {MAXD}")
    return na, nb


def _i64(x):
    return np.ascontiguousarray(x, dtype=np.int64)


def check_twisting(ca, cb, ua, ub, r, i64 p) -> bool:
    """tw0, tw4 and tw5 for ``R``."""
    na, nb = _dims(ca, cb)
    cdef const i64[:, :, ::1] a3 = _i64(ca)
    cdef const i64[:, :, ::1] b3 = _i64(cb)
    cdef const i64[:, ::1] m = _i64(r)
    return bool(_units(m, _i64(ua), _i64(ub), na, nb, p, False)
                and _tw4(a3, m, na, nb, p) and _tw5(b3, m, na, nb, p))


def check_qmap(ca, cb, ua, ub, q, i64 p) -> bool:
    """tw0', tw4' and tw5' for ``Q``."""
    na, nb = _dims(ca, cb)
    cdef const i64[:, :, ::1] a3 = _i64(ca)
    cdef const i64[:, :, ::1] b3 = _i64(cb)
    cdef const i64[:, ::1] m = _i64(q)
    return bool(_units(m, _i64(ua), _i64(ub), na, nb, p, True)
                and _tw4q(a3, m, na, nb, p) and _tw5q(b3, m, na, nb, p))


def check_comb(int na, int nb, r, q, i64 p) -> bool:
    """comb1 and comb2 for the pair ``(R, Q)``."""
    if na > MAXD or nb > MAXD:
        raise ValueError(f"compiled kernels support dimensions up to {MAXD}")
    return bool(_comb(_i64(r), _i64(q), na, nb, p))


def scan(ca, cb, ua, ub, base, free_rows, free_cols, i64 p, i64 start, i64 stop, int kind):
    """Indices in ``[start, stop)`` of valid candidates (kind 0: R, kind 1: Q)."""
    na, nb = _dims(ca, cb)
    cdef const i64[:, :, ::1] a3 = _i64(ca)
    cdef const i64[:, :, ::1] b3 = _i64(cb)
    cdef const i64[::1] uav = _i64(ua)
    cdef const i64[::1] ubv = _i64(ub)
    arr = np.array(base, dtype=np.int64, copy=True, order="C")
    cdef i64[:, ::1] m = arr
    cdef const i64[::1] fr = _i64(free_rows)
    cdef const i64[::1] fc = _i64(free_cols)
    cdef int nf = fr.shape[0]
    cdef int t
    cdef i64 idx, x
    cdef bint ok
    out = []
    for idx in range(start, stop):
        x = idx
        for t in range(nf - 1, -1, -1):
            m[fr[t], fc[t]] = x % p
            x //= p
        if kind == 0:
            ok = _units(m, uav, ubv, na, nb, p, False) and _tw4(a3, m, na, nb, p) and _tw5(b3, m, na, nb, p)
        else:
            ok = _units(m, uav, ubv, na, nb, p, True) and _tw4q(a3, m, na, nb, p) and _tw5q(b3, m, na, nb, p)
        if ok:
            out.append(idx)
    return out
