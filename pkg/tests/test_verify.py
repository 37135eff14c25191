import hashlib
import json
import pathlib

import jsonschema
import pytest

from fqhopf import coalgebra as cmod
from fqhopf import verify
from fqhopf.verify import (
    SUITES,
    Check,
    FixtureChecksumError,
    MissingFixture,
    Report,
    golden_tables,
    load_fixture,
    run_suite,
    sweep_associativity_words,
    sweep_coassociativity,
    sweep_compatibility,
    sweep_hoffman,
    sweep_partial_fractions,
    sweep_shi,
)

SCHEMA = json.loads((pathlib.Path(__file__).resolve().parent.parent / "schemas" / "report.schema.json").read_text())


def _items(rep):
    return [c.item for c in rep.checks]


def test_report_json_matches_schema():
    rep = sweep_associativity_words(3, 5)
    doc = rep.to_dict()
    jsonschema.validate(doc, SCHEMA)
    assert doc["n_failures"] == 0 and doc["passed"]
    jsonschema.validate(json.loads(rep.to_json(timing=False)), SCHEMA)


def test_report_with_failures():
    rep = Report("demo", {"q": 3}, [Check("a", True), Check("b", False, "x1", "x2")])
    assert not rep.passed and rep.exit_code == 1
    doc = rep.to_dict()
    jsonschema.validate(doc, SCHEMA)
    assert doc["failures"] == [{"item": "b", "passed": False, "lhs": "x1", "rhs": "x2"}]
    text = rep.to_text()
    assert text.startswith("FAIL demo q=3: 1/2 checks passed")
    assert "lhs: x1" in text


def test_exit_code_iff_zero_failures():
    good = Report("g", {}, [Check("a", True)])
    assert good.exit_code == 0 == len(good.to_dict()["failures"])


@pytest.mark.parametrize("sweep", [
    lambda jobs: sweep_compatibility(3, 7, jobs=jobs),
    lambda jobs: sweep_associativity_words(2, 6, jobs=jobs),
    lambda jobs: sweep_shi(5, 6, jobs=jobs),
])
def test_report_independent_of_worker_count(sweep):
    one = sweep(1).to_dict(timing=False)
    three = sweep(3).to_dict(timing=False)
    assert one == three


def test_restricting_the_bound_restricts_the_items():
    small = set(_items(sweep_compatibility(3, 6)))
    large = set(_items(sweep_compatibility(3, 8)))
    assert small < large
    small = set(_items(sweep_coassociativity(3, 6, 6)))
    large = set(_items(sweep_coassociativity(3, 9, 9)))
    assert small < large


def test_sweeps_detect_a_corrupted_coproduct():
    # poison one cached entry and make sure the sweeps notice
    q = 7
    cmod._COALGEBRAS.pop(q, None)
    co = cmod.coalgebra(q)
    co.populate(10)
    bad = dict(co._cop[(9,)])
    bad[((4,), (5,))] = 1
    co._cop[(9,)] = bad
    try:
        rep = sweep_shi(q, 9)
        assert not rep.passed
        assert any("x9" in c.item for c in rep.failures)
        comp = sweep_compatibility(q, 9)
        assert not comp.passed
    finally:
        cmod._COALGEBRAS.pop(q, None)
    assert sweep_shi(q, 9).passed


def test_partial_fraction_sweep_is_seeded():
    a = sweep_partial_fractions(3, count=10, seed=4).to_dict(timing=False)
    b = sweep_partial_fractions(3, count=10, seed=4).to_dict(timing=False)
    assert a == b and a["n_checks"] == 10


def test_hoffman_sweep():
    rep = sweep_hoffman(3, 6)
    assert rep.passed and rep.checks


# --- golden fixtures ------------------------------------------------------------------

def test_fixture_shapes():
    t3, t5 = load_fixture(3), load_fixture(5)
    assert sorted(t3) == list(range(10, 37))
    assert 132 not in t5 and set(range(26, 152)) - {132} == set(t5)


def test_fixture_missing_for_other_q():
    with pytest.raises(MissingFixture):
        load_fixture(7)


def test_golden_missing_entry_is_named():
    with pytest.raises(MissingFixture, match="132"):
        golden_tables(5, range(130, 134))
    rep = golden_tables(5, range(130, 134), skip_missing=True)
    assert rep.missing == ["x132"] and rep.passed and len(rep.checks) == 3


def test_golden_q3_small_slice():
    rep = golden_tables(3, range(10, 20))
    assert rep.passed and len(rep.checks) == 10


def test_checksum_mismatch_detected(tmp_path, monkeypatch):
    data = tmp_path / "data"
    data.mkdir()
    src = pathlib.Path(verify._data_file("golden_q3.txt")).read_bytes()
    (data / "golden_q3.txt").write_bytes(src.replace(b"2x_{4}", b"x_{4}", 1))
    digest = hashlib.sha256(src).hexdigest()
    (data / "SHA256SUMS").write_text(f"{digest}  golden_q3.txt\n")
    monkeypatch.setattr(verify, "_data_file", lambda name: str(data / name))
    with pytest.raises(FixtureChecksumError):
        load_fixture(3)


def test_run_suite_names():
    assert "golden" in SUITES and "hopf-stuffle" in SUITES
    with pytest.raises(KeyError):
        run_suite("no-such-suite", 3)
    rep = run_suite("hoffman", 3)
    assert rep.passed
