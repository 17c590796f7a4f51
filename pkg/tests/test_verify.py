import json

import pytest

from hemicover import verify
from hemicover.verify import CLAIMS, Claim, UnknownSelector, groups, run_claims, run_suite, select


def test_claim_ids_unique_and_grouped():
    ids = [c.id for c in CLAIMS]
    assert len(ids) == len(set(ids)) == 49
    assert ids == sorted(ids)
    assert {"bouc", "dag-homology", "gale", "hypercube-persistence"} <= set(groups())


def test_selectors():
    assert len(select("all")) == len(CLAIMS)
    assert all(c.id.startswith("galois/") for c in select("galois"))
    assert [c.id for c in select("dag-homology/n=4")] == ["dag-homology/n=4"]
    assert {c.id for c in select("dag-*")} >= {"dag-homology/n=3", "dag-pseudomanifold/n=3"}
    assert "dag-homology/n=5" not in {c.id for c in select("all", quick=True)}
    with pytest.raises(UnknownSelector):
        select("nothing-here")


def test_unknown_selector_code():
    assert run_suite("nothing-here") == (2, [])


def test_crash_is_failure():
    def boom(seed):
        raise RuntimeError("bad")

    (r,) = run_claims([Claim("x/boom", 1, boom)])
    assert not r.passed and r.error == "RuntimeError: bad"
    assert r.to_json()["pass"] is False


def test_failure_code(monkeypatch):
    monkeypatch.setattr(verify, "CLAIMS", [Claim("x/ok", 1, lambda s: 1), Claim("x/bad", 1, lambda s: 0)])
    code, reports = run_suite("x")
    assert code == 1
    assert [r.passed for r in reports] == [True, False]


def test_quick_suite_passes_and_is_deterministic(tmp_path):
    out = tmp_path / "report.json"
    code, reports = run_suite("all", seed=3, output=str(out), quick=True)
    assert code == 0, [r.claim for r in reports if not r.passed]
    strip = lambda rows: [{k: v for k, v in r.items() if k != "wall_time"} for r in rows]
    again = run_suite("all", seed=3, quick=True)[1]
    assert strip(json.loads(out.read_text())) == strip([r.to_json() for r in again])


def test_random_claims_pass_for_other_seeds():
    a = run_claims(select("lattice-wedge/random-0"), seed=0)[0]
    b = run_claims(select("lattice-wedge/random-0"), seed=1)[0]
    assert a.passed and b.passed
