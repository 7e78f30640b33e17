from __future__ import annotations

import shutil
import subprocess
import sys

import pytest

from conftest import ROOT
from linklab import catalog
from linklab.diagram import crossing_change, format_diagram
from linklab.invariants import knot_determinant, linking_numbers


@pytest.fixture
def copied_catalog(tmp_path, monkeypatch):
    shutil.copytree(catalog.catalog_dir(), tmp_path / "data")
    monkeypatch.setenv("LINKLAB_CATALOG_DIR", str(tmp_path / "data"))
    return tmp_path / "data"


def test_every_entry_loads_certified():
    for name in catalog.names():
        e = catalog.load(name)
        assert e.certified_properties
        assert all(c.passed for c in e.certified_properties)


def test_entry_examples():
    t = catalog.load("trefoil").diagram
    assert t.crossing_count == 3 and knot_determinant(t) == 3
    u = catalog.load("unknot0").diagram
    assert u.crossing_count == 0 and knot_determinant(u) == 1
    L = catalog.load("paper_L").diagram
    assert len(L.components) == 3
    assert set(linking_numbers(L).values()) == {0}


def test_unknown_name():
    with pytest.raises(KeyError):
        catalog.load("granny")


def test_designated_crossings():
    e = catalog.load("paper_L")
    assert set(e.designated) == {"clasp_L1", "clasp_L2", "clasp_L3"}
    assert catalog.resolve_crossing(e, "clasp_L1") == e.designated["clasp_L1"]
    assert catalog.resolve_crossing(e, "5") == 5
    with pytest.raises(KeyError):
        catalog.resolve_crossing(e, "clasp_L9")


def test_witnesses_tied_to_sources():
    ws = catalog.paper_witnesses()
    assert [w.subset for w in ws] == [("L1", "L2"), ("L1", "L3")]
    assert all(w.source is not None for w in ws)


def test_corrupted_file_fails_loudly(copied_catalog):
    d = catalog.load("paper_L").diagram
    cid = catalog.load("paper_L").designated["clasp_L2"]
    (copied_catalog / "paper_L.pd").write_text(format_diagram(crossing_change(d, cid)))
    with pytest.raises(catalog.CatalogError, match="component determinants"):
        catalog.load("paper_L")


def test_unparsable_file_fails_loudly(copied_catalog):
    (copied_catalog / "trefoil.pd").write_text("X 1 nonsense\n")
    with pytest.raises(catalog.CatalogError, match="does not parse"):
        catalog.load("trefoil")


def test_missing_manifest(tmp_path, monkeypatch):
    monkeypatch.setenv("LINKLAB_CATALOG_DIR", str(tmp_path))
    with pytest.raises(catalog.CatalogError):
        catalog.load("trefoil")


def test_data_matches_build_script():
    r = subprocess.run([sys.executable, str(ROOT / "scripts" / "build_catalog.py"), "--check"],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
