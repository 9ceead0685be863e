import json
import time

import jsonschema
import pytest

from veronucleus import cli, veronese
from veronucleus.verify import SUITES, Caps, run_verification


def test_default_caps_pass_in_time():
    start = time.perf_counter()
    rep = run_verification()
    elapsed = time.perf_counter() - start
    assert rep["ok"], rep["failures"][:3]
    assert rep["suites"] == list(SUITES)
    assert elapsed < 300
    jsonschema.validate(rep, cli.load_schema("verify"))
    checks = {(c["suite"], c["check"]) for c in rep["checks"]}
    assert ("lattice", "geometric_invariance") in checks
    assert ("veronese", "top_nucleus_vs_knot_dim") in checks


def test_report_is_deterministic():
    caps = Caps(n_max=5, pascal_rows=64, lattice_n_max=8, chain_n_max=12, invariance_n_max=5)
    a = json.dumps(run_verification(["nrc", "lattice"], caps))
    b = json.dumps(run_verification(["nrc", "lattice"], caps))
    assert a == b


def test_veronese_fault_names_instance(monkeypatch):
    real = veronese.hyperplane_nucleus_dim
    monkeypatch.setattr(veronese, "hyperplane_nucleus_dim",
                        lambda s: real(s) + (s.t == 3 and s.field.p == 3))
    rep = run_verification(["veronese"])
    assert not rep["ok"]
    assert [f["instance"] for f in rep["failures"]] == [{"m": 2, "t": 3, "p": 3, "e": 1}]


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_verification(["geometry"])
