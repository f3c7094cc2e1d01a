"""Census of twisting maps R, or L-R pairs (R, Q), over a small prime field.

Candidates respect the unit conditions by construction: the columns of R
at ``1⊗a`` and ``b⊗1`` (and those of Q at ``a⊗1`` and ``1⊗b``) are fixed, the
remaining entries range over GF(p).  Candidate ``idx`` writes its base-p
digits into the free entries in row-major order, most significant first, so
index order is lexicographic order of the matrices and representatives are
lexicographic minima.  The census is independent of ``jobs``.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import Algebra
from .exactfield import Field, Matrix

SEARCH_LIMIT = 1 << 22
MAX_DIM = 4
MAX_PRIME = 97
MODES = ("exhaustive", "random")
KINDS = ("R", "RQ")


class SearchLimitError(ValueError):
    pass


@dataclass(frozen=True)
class Space:
    """Fixed part and free positions of one family of unit-respecting matrices."""
    base: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    p: int

    @property
    def free(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return self.p ** self.free

    def matrix(self, idx: int) -> np.ndarray:
        m = self.base.copy()
        for t in range(self.free - 1, -1, -1):
            m[self.rows[t], self.cols[t]] = idx % self.p
            idx //= self.p
        return m


def _unit_index(alg: Algebra) -> int:
    nz = [i for i, u in enumerate(alg.unit) if u]
    if len(nz) != 1 or alg.unit[nz[0]] != alg.field.one:
        raise ValueError(f"unit of {alg.label} must be a basis vector for unit pruning")
    return nz[0]


def candidate_space(a: Algebra, b: Algebra, kind: str) -> Space:
    """``kind`` is ``"R"`` (columns ``b_l⊗a_k``) or ``"Q"`` (columns ``a_k⊗b_l``)."""
    na, nb = a.dim, b.dim
    ua, ub = _unit_index(a), _unit_index(b)
    n = na * nb
    base = np.zeros((n, n), dtype=np.int64)
    fixed = set()
    for k in range(na):
        for l in range(nb):
            col = l * na + k if kind == "R" else k * nb + l
            if k == ua or l == ub:
                # R(1⊗a) = a⊗1, R(b⊗1) = 1⊗b and likewise for Q
                base[k * nb + l, col] = 1
                fixed.add(col)
    free = [(r, c) for r in range(n) for c in range(n) if c not in fixed]
    rows = np.array([r for r, _ in free], dtype=np.int64)
    cols = np.array([c for _, c in free], dtype=np.int64)
    return Space(base, rows, cols, a.field.p)


def _arrays(alg: Algebra):
    return np.array(alg.tensor(), dtype=np.int64), np.array(alg.unit, dtype=np.int64)


def _shards(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total or 1))
    step = -(-total // jobs)
    return [(s, min(s + step, total)) for s in range(0, total, step)] or [(0, 0)]


def _scan_task(args):
    ca, cb, ua, ub, space, start, stop, kind = args
    return kernels.scan(ca, cb, ua, ub, space.base, space.rows, space.cols, space.p, start, stop, kind)


def _scan(a: Algebra, b: Algebra, space: Space, kind: int, stop: int, jobs: int) -> list[int]:
    ca, ua = _arrays(a)
    cb, ub = _arrays(b)
    tasks = [(ca, cb, ua, ub, space, s, e, kind) for s, e in _shards(stop, jobs)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_scan_task, tasks))
    else:
        parts = [_scan_task(t) for t in tasks]
    return sorted(i for part in parts for i in part)


def _to_lists(m: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def _check_bounds(a: Algebra, b: Algebra, kind: str, mode: str):
    f: Field = a.field
    if f != b.field:
        raise ValueError("both algebras must live over the same field")
    if f.p is None or f.p > MAX_PRIME:
        raise SearchLimitError(f"search needs GF(p) with p <= {MAX_PRIME}, got {f.tag}")
    if a.dim > MAX_DIM or b.dim > MAX_DIM:
        raise SearchLimitError(f"dimensions ({a.dim},{b.dim}) exceed the bound {MAX_DIM} per factor")
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")


def search_space_size(a: Algebra, b: Algebra, kind: str) -> int:
    size = candidate_space(a, b, "R").size
    if kind == "RQ":
        size *= candidate_space(a, b, "Q").size
    return size


def run_search(a: Algebra, b: Algebra, kind: str = "R", mode: str = "exhaustive", seed: int = 0,
               budget: int | None = None, keep: int = 32, jobs: int = 1) -> dict:
    """The census as a JSON-ready dict (no timings, sorted keys on output)."""
    _check_bounds(a, b, kind, mode)
    rs = candidate_space(a, b, "R")
    qs = candidate_space(a, b, "Q")
    size = search_space_size(a, b, kind)
    if size > SEARCH_LIMIT:
        raise SearchLimitError(f"candidate space has {size} elements, above the limit {SEARCH_LIMIT} "
                               f"(free entries: R {rs.free}" + (f", Q {qs.free}" if kind == "RQ" else "")
                               + f", p = {rs.p})")
    census = {
        "field": a.field.tag, "dims": [a.dim, b.dim], "algebras": [a.label, b.label],
        "kind": kind, "mode": mode, "seed": seed, "budget": budget, "space_size": size,
        "free_entries": {"R": rs.free} | ({"Q": qs.free} if kind == "RQ" else {}),
    }
    if mode == "exhaustive":
        census.update(_exhaustive(a, b, rs, qs, kind, budget, keep, jobs))
    else:
        census.update(_random(a, b, rs, qs, kind, seed, budget, keep))
    return census


def _exhaustive(a, b, rs: Space, qs: Space, kind: str, budget, keep: int, jobs: int) -> dict:
    limit = rs.size if budget is None else min(budget, rs.size)
    valid_r = _scan(a, b, rs, 0, limit, jobs)
    out = {"examined": {"R": limit}, "complete": limit == rs.size}
    out["budget_exhausted"] = not out["complete"]
    if kind == "R":
        out["counts"] = {"R_valid": len(valid_r)}
        out["representatives"] = [{"index": i, "R": _to_lists(rs.matrix(i))} for i in valid_r[:keep]]
        return out
    qlimit = qs.size if budget is None else min(budget, qs.size)
    valid_q = _scan(a, b, qs, 1, qlimit, jobs)
    out["examined"]["Q"] = qlimit
    out["complete"] = out["complete"] and qlimit == qs.size
    out["budget_exhausted"] = not out["complete"]
    pairs = []
    na, nb, p = a.dim, b.dim, rs.p
    for i in valid_r:
        r = rs.matrix(i)
        for j in valid_q:
            if kernels.check_comb(na, nb, r, qs.matrix(j), p):
                pairs.append((i, j))
    out["counts"] = {"R_valid": len(valid_r), "Q_valid": len(valid_q), "pairs_valid": len(pairs)}
    out["representatives"] = [{"index": [i, j], "R": _to_lists(rs.matrix(i)), "Q": _to_lists(qs.matrix(j))}
                              for i, j in pairs[:keep]]
    return out


def _random(a, b, rs: Space, qs: Space, kind: str, seed: int, budget, keep: int) -> dict:
    samples = 1000 if budget is None else budget
    rng = np.random.Generator(np.random.PCG64(seed))
    ca, ua = _arrays(a)
    cb, ub = _arrays(b)
    na, nb, p = a.dim, b.dim, rs.p
    hits = set()
    for _ in range(samples):
        i = int(rng.integers(0, rs.size))
        j = int(rng.integers(0, qs.size)) if kind == "RQ" else None
        r = rs.matrix(i)
        if not kernels.check_twisting(ca, cb, ua, ub, r, p):
            continue
        if j is not None:
            q = qs.matrix(j)
            if not (kernels.check_qmap(ca, cb, ua, ub, q, p) and kernels.check_comb(na, nb, r, q, p)):
                continue
        hits.add(i if j is None else (i, j))
    reps = sorted(hits)[:keep]
    out = {"examined": {"samples": samples}, "complete": False,
           "counts": {"distinct_valid": len(hits)}}
    if kind == "R":
        out["representatives"] = [{"index": i, "R": _to_lists(rs.matrix(i))} for i in reps]
    else:
        out["representatives"] = [{"index": [i, j], "R": _to_lists(rs.matrix(i)),
                                   "Q": _to_lists(qs.matrix(j))} for i, j in reps]
    return out


def census_json(census: dict) -> str:
    return json.dumps(census, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def census_table(census: dict) -> str:
    lines = [f"census over {census['field']}: {census['algebras'][0]} ⊗ {census['algebras'][1]} "
             f"({census['kind']}, {census['mode']})",
             f"  {'space size':<18}{census['space_size']}",
             f"  {'complete':<18}{census['complete']}"]
    for key, val in census["counts"].items():
        lines.append(f"  {key:<18}{val}")
    for rep in census["representatives"]:
        lines.append(f"  representative {rep['index']}")
        for name in ("R", "Q"):
            if name in rep:
                for t, row in enumerate(rep[name]):
                    head = f"    {name} " if t == 0 else "      "
                    lines.append(head + " ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def flip_matrix(a: Algebra, b: Algebra) -> list[list[int]]:
    m = Matrix.flip(a.field, b.dim, a.dim)
    return [[int(x) for x in row] for row in m.to_lists()]
