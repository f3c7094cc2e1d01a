import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from lrtwist import kernels
from lrtwist.catalog import group_algebra, truncated_poly
from lrtwist.exactfield import GF, QQ, Matrix
from lrtwist.search import (SEARCH_LIMIT, SearchLimitError, candidate_space, census_json, census_table,
                            flip_matrix, run_search, search_space_size)
from lrtwist.twisted import LRPair, check_lr_suite


def kc2(p=2):
    return group_algebra(2, GF(p)).alg


def brute_force_valid_r(a, b):
    """Indices of unit-respecting candidates that satisfy every twisting axiom, by the oracle."""
    space = candidate_space(a, b, "R")
    ca, ua, p = oracle.lists(a)
    cb, ub, _ = oracle.lists(b)
    return [i for i in range(space.size)
            if not oracle.twisting_failures(ca, cb, ua, ub, space.matrix(i).tolist(), p)]


def test_gf2_census_contains_flip():
    a, b = kc2(), kc2()
    census = run_search(a, b, "R")
    assert census["complete"] and census["space_size"] == 16
    mats = [rep["R"] for rep in census["representatives"]]
    assert flip_matrix(a, b) in mats


@pytest.mark.parametrize("make", [lambda: (kc2(), kc2()),
                                  lambda: (kc2(3), truncated_poly(2, GF(3))),
                                  lambda: (truncated_poly(2, GF(2)), truncated_poly(2, GF(2)))],
                         ids=["kC2-kC2-F2", "kC2-trunc-F3", "trunc-trunc-F2"])
def test_census_matches_oracle(make):
    a, b = make()
    census = run_search(a, b, "R", keep=10 ** 6)
    want = brute_force_valid_r(a, b)
    assert census["counts"]["R_valid"] == len(want)
    assert [rep["index"] for rep in census["representatives"]] == want


def test_pair_census_matches_engine():
    a, b = kc2(), kc2()
    census = run_search(a, b, "RQ", keep=10 ** 6)
    rs, qs = candidate_space(a, b, "R"), candidate_space(a, b, "Q")
    f = a.field
    valid = []
    for i, j in itertools.product(range(rs.size), range(qs.size)):
        pair = LRPair.from_matrices(a, b, Matrix(f, rs.matrix(i).tolist()), Matrix(f, qs.matrix(j).tolist()))
        if check_lr_suite(pair).ok:
            valid.append([i, j])
    assert census["counts"]["pairs_valid"] == len(valid)
    assert [rep["index"] for rep in census["representatives"]] == valid


def test_candidate_order_is_lexicographic():
    space = candidate_space(kc2(3), truncated_poly(2, GF(3)), "Q")
    flat = [tuple(space.matrix(i)[space.rows, space.cols]) for i in range(space.size)]
    assert flat == sorted(flat)
    assert len(set(flat)) == space.size


def test_fixed_columns_respect_units():
    a, b = kc2(), kc2()
    space = candidate_space(a, b, "R")
    m = space.matrix(0)
    # R(b⊗1) = 1⊗b and R(1⊗a) = a⊗1 on the basis
    for l in range(2):
        assert m[:, l * 2 + 0].tolist() == [1 if r == 0 * 2 + l else 0 for r in range(4)]
    assert space.free == 4


def test_same_seed_same_bytes(tmp_path):
    a, b = kc2(3), truncated_poly(2, GF(3))
    texts = [census_json(run_search(a, b, "RQ", "random", seed=7, budget=300)) for _ in range(2)]
    assert texts[0] == texts[1]
    paths = [tmp_path / f"c{k}.json" for k in range(2)]
    for path, text in zip(paths, texts):
        path.write_text(text, encoding="utf-8")
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_random_hits_are_genuine():
    a, b = kc2(3), truncated_poly(2, GF(3))
    census = run_search(a, b, "R", "random", seed=3, budget=2000)
    exhaustive = {rep["index"] for rep in run_search(a, b, "R", keep=10 ** 6)["representatives"]}
    found = {rep["index"] for rep in census["representatives"]}
    assert found and found <= exhaustive


@pytest.mark.parametrize("kind", ["R", "RQ"])
def test_jobs_do_not_change_the_census(kind):
    a, b = kc2(3), truncated_poly(2, GF(3))
    one = census_json(run_search(a, b, kind, jobs=1))
    two = census_json(run_search(a, b, kind, jobs=2))
    assert one == two


def test_budget_truncates_exhaustive_scan():
    a, b = kc2(3), truncated_poly(2, GF(3))
    census = run_search(a, b, "R", budget=10)
    assert census["examined"]["R"] == 10 and census["budget_exhausted"]
    assert not census["complete"]


def test_limits_are_refused():
    big = group_algebra(4, GF(5)).alg
    assert search_space_size(big, big, "R") > SEARCH_LIMIT
    with pytest.raises(SearchLimitError, match="above the limit"):
        run_search(big, big, "R")
    with pytest.raises(SearchLimitError, match="GF"):
        run_search(group_algebra(2, QQ).alg, group_algebra(2, QQ).alg)
    five = truncated_poly(5, GF(2))
    with pytest.raises(SearchLimitError, match="bound"):
        run_search(five, kc2())


def test_census_table_lists_representatives():
    lines = census_table(run_search(kc2(), kc2(), "R")).splitlines()
    assert lines[0] == "census over F2: kC2 ⊗ kC2 (R, exhaustive)"
    assert [ln.split() for ln in lines if "R_valid" in ln] == [["R_valid", "3"]]
    # the flip is candidate 1: the free entries 0 0 0 1 in row-major order
    assert lines[4:9] == ["  representative 1", "    R 1 0 0 0", "      0 0 1 0", "      0 1 0 0",
                          "      0 0 0 1"]


@settings(max_examples=25)
@given(st.integers(0, 3 ** 8 - 1))
def test_backends_agree_on_single_candidates(idx):
    a, b = kc2(3), truncated_poly(2, GF(3))
    space = candidate_space(a, b, "R")
    r = space.matrix(idx % space.size)
    ca, ua = np.array(a.tensor(), dtype=np.int64), np.array(a.unit, dtype=np.int64)
    cb, ub = np.array(b.tensor(), dtype=np.int64), np.array(b.unit, dtype=np.int64)
    got = {mod.check_twisting(ca, cb, ua, ub, r, 3) for mod in (kernels.pure, kernels.compiled)
           if mod is not None}
    want = not oracle.twisting_failures(oracle.lists(a)[0], oracle.lists(b)[0], list(a.unit),
                                        list(b.unit), r.tolist(), 3)
    assert got == {want}
