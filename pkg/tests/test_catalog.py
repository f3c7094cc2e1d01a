import pytest

from lrtwist.catalog import (NEGATIVE_CONTROLS, CatalogError, build_entry, entries_of_kind, entry_ids,
                             load_catalog)


def test_every_entry_passes(catalog):
    assert list(catalog) == entry_ids()
    assert len(entries_of_kind("lrpair")) >= 4


def test_parallel_load_matches():
    ids = ["kC2", "H4", "diag-2-2", "smash-kC2", "twistdata-bichar"]
    assert list(load_catalog(ids, jobs=2)) == ids


def test_unknown_entry():
    with pytest.raises(KeyError, match="nope"):
        build_entry("nope")


def test_catalog_error_carries_witness(monkeypatch):
    from lrtwist import catalog as cat
    monkeypatch.setitem(cat._BUILDERS, "broken", ("algebra", cat.broken_unit_algebra, "broken"))
    with pytest.raises(CatalogError, match=r"broken fails its checks: \(unit\)"):
        load_catalog(["kC2", "broken"])


@pytest.mark.parametrize("control", list(NEGATIVE_CONTROLS))
def test_negative_control_hits_only_its_check(control):
    n = NEGATIVE_CONTROLS[control]
    rep = n.run(1)
    assert rep.failed == [n.advertised]
    assert rep.first_failure().witness.startswith(f"({n.advertised}) fails")
    assert rep.get(n.advertised).witness == n.run(2).get(n.advertised).witness
