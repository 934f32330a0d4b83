import json

import pytest

from nijrank.acs import deform, nijenhuis_rank, standard_acs
from nijrank.catalog import DATA, CatalogError, catalog_selftest, coframe_from_json, coframe_to_json, load_catalog
from nijrank.exterior import KForm, from_complex_frame
from nijrank.gaussian import gq
from nijrank.salamon import format_salamon
from nijrank.survey import rank_cap

RANK3 = [f"n6-{k:02d}" for k in range(1, 22)]
QUARTER = ["n6-25", "n6-26", "torus6", "iwasawa", "n6-27"]
SPORADIC = ["n6-22", "n6-23", "n6-24"]


def test_contents(catalog):
    assert len(catalog) == 32
    assert catalog.get("n6-01").algebra == catalog.get("n6-01").algebra
    assert format_salamon(catalog.get("n6-01").algebra) == "(0,0,12,13,14+23,-25+34)"
    assert format_salamon(catalog.get("n6-21").algebra) == "(0,0,0,12,13,23)"
    assert [format_salamon(catalog.get(n).algebra) for n in SPORADIC] == ["(0,0,0,12,13,14)", "(0,0,0,12,14,15)", "(0,0,12,13,14,15)"]
    assert format_salamon(catalog.get("kt-real").algebra) == "(0,0,0,-23)"
    with pytest.raises(KeyError):
        catalog.get("missing")


def test_expected_statuses(catalog):
    for name in RANK3:
        assert catalog.get(name).expected[3] == "exists"
    for name in SPORADIC + QUARTER:
        assert catalog.get(name).expected[3] == "not-exists"
    assert catalog.get("n6-21").expected[2] == "not-exists"
    assert catalog.get("n6-01").expected[1] == catalog.get("n6-01").expected[0] == "not-exists"
    for name in ("n6-21", "n6-25", "n6-26", "torus6"):
        assert catalog.get(name).expected[2] == "not-exists"


def test_no_claim_above_bound(catalog):
    for e in catalog:
        for k, status in e.expected.items():
            if status == "exists":
                assert k <= rank_cap(e.algebra), e.name


def test_selftest_clean(catalog):
    r = catalog_selftest(catalog)
    assert r["ok"], r["failures"]
    assert r["fixtures"] >= 100


def test_presentations(catalog):
    kt = catalog.get("kt")
    g, _ = from_complex_frame(2, [KForm(4, 2, {}), KForm(4, 2, {(1, 3): gq("-1/2i")})])
    assert kt.algebra == g.renamed("kt")
    nak = catalog.get("nakamura")
    g, _ = from_complex_frame(3, [KForm(6, 2, {}), KForm(6, 2, {(1, 2): -1}), KForm(6, 2, {(1, 3): 1})])
    assert nak.algebra == g.renamed("nakamura")


def test_nakamura_printed_structures(catalog):
    g = catalog.get("nakamura").algebra
    # omega^2 = phi^2 + conj(phi^3), omega^3 = phi^3 + 2 conj(phi^2)
    assert nijenhuis_rank(g, deform(standard_acs(3), [[0, 0, 0], [0, 0, 1], [0, 2, 0]])) == 2
    # omega^2 = phi^2 + conj(phi^3), omega^3 = phi^3
    assert nijenhuis_rank(g, deform(standard_acs(3), [[0, 0, 0], [0, 0, 1], [0, 0, 0]])) == 1


def test_n6_14_coframes(catalog):
    e = catalog.get("n6-14")
    assert e.structure("complex").rank == 0
    assert e.structure("printed").rank == 2


def test_coframe_json_round_trip(catalog):
    for e in catalog:
        for J in e.witnesses.values():
            assert coframe_from_json(json.loads(json.dumps(coframe_to_json(J)))) == J


def _sidecar():
    return json.loads((DATA / "catalog.json").read_text(encoding="utf-8"))


def _write(tmp_path, data):
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_tampered_structure_is_caught(tmp_path):
    data = _sidecar()
    data["entries"]["iwasawa"]["structures"][1]["rank"] = 1
    r = catalog_selftest(load_catalog(_write(tmp_path, data)))
    assert not r["ok"] and any("iwasawa/rank2" in f for f in r["failures"])


def test_tampered_witness_is_caught(tmp_path):
    data = _sidecar()
    w = data["entries"]["n6-02"]["witnesses"]
    w["1"], w["2"] = w["2"], w["1"]
    r = catalog_selftest(load_catalog(_write(tmp_path, data)))
    assert any("n6-02/witness-1" in f for f in r["failures"])


def test_claim_above_bound_is_caught(tmp_path):
    data = _sidecar()
    data["entries"]["torus6"]["expected"]["2"] = "exists"
    r = catalog_selftest(load_catalog(_write(tmp_path, data)))
    assert any("torus6: rank 2 claimed" in f for f in r["failures"])


def test_bad_metadata(tmp_path):
    data = _sidecar()
    data["entries"]["torus6"]["expected"]["1"] = "maybe"
    with pytest.raises(CatalogError):
        load_catalog(_write(tmp_path, data))
    data = _sidecar()
    data["entries"]["ghost"] = {"expected": {}}
    with pytest.raises(CatalogError):
        load_catalog(_write(tmp_path, data))


def test_custom_algebra_file(tmp_path):
    alg = tmp_path / "algebras.txt"
    alg.write_text("# two entries\nab4 (0,0,0,0)\nh3 (0,0,0,12)  # Heisenberg times R\n", encoding="utf-8")
    side = _write(tmp_path, {"entries": {"ab4": {"expected": {"0": "exists", "1": "not-exists"}}}})
    cat = load_catalog(side, str(alg))
    assert cat.names == ["ab4", "h3"]
    assert catalog_selftest(cat)["ok"]
    alg.write_text("broken\n", encoding="utf-8")
    with pytest.raises(CatalogError):
        load_catalog(side, str(alg))
