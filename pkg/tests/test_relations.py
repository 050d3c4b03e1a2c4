import json
import math

import numpy as np
import pytest

from fdradius.engine import EngineConfig
from fdradius.errors import GaugeUnvalidated, HypothesisUnmet, InvalidSpec
from fdradius.gauge import custom, identity, power
from fdradius.generators import EnsembleSpec, SectorParams, generate
from fdradius.relations import CATALOG, EXAMPLE_IDS, RELATION_IDS, applicable_ids, r2_closed_form, shifted_levels
from fdradius.suite import COVERAGE, STATUSES, SuiteReport, check, dumps, run_suite
from fdradius.tuples import OperatorTuple, pauli_tuple

SMALL = EngineConfig(starts=16, oracle_samples=20_000)

# every relation named in the result list must exist in the catalog
REQUIRED = ["eq1", "eq2", "t1_scale", "t1_subadd", "c1", "c2", "t1_normal", "t1_hypo", "t2", "lem1", "lem2",
            "lem3", "lem4", "t3", "c3", "c4", "t4", "c5", "c6", "t5", "c7", "c8", "t6", "t7", "c9", "c10", "t8",
            "t9a", "t9b", "t10a", "t10b", "c11a", "c11b", "c12", "c13", "prodinterp", "chain", "sumbound",
            "commprod", "incl4", "incl6", "incl8", "incl9", "incl11", "incl15", "incl17", "incl19", "incl21",
            "incl23", "incl_t5", "example_r2", "example_pauli"]


def test_catalog_coverage():
    listed = [r for ids in COVERAGE.values() for r in ids]
    assert len(listed) == len(set(listed))
    assert set(listed) == set(CATALOG)
    assert set(REQUIRED) <= set(CATALOG)
    assert set(RELATION_IDS) | set(EXAMPLE_IDS) == set(CATALOG)


def test_applicable_ids_respect_kinds():
    for kind in ("ginibre", "normal", "positive", "sectorial_normal"):
        ids = applicable_ids(kind)
        assert all(kind in CATALOG[r].kinds for r in ids)
        assert not set(ids) & set(EXAMPLE_IDS)
    assert "t9a" not in applicable_ids("ginibre")
    assert "c4" in applicable_ids("positive") and "c4" not in applicable_ids("ginibre")


def test_eq1_on_nilpotent():
    A = OperatorTuple([[[0, 1], [0, 0]]])
    o = check("eq1", A, cfg=SMALL)
    assert o.status == "pass"
    assert o.lhs == pytest.approx(0.5, abs=1e-9)


def test_t1_normal_on_normal_tuple():
    (A,) = generate(EnsembleSpec("normal", n=3, dim=3, rng_seed=4))
    o = check("t1_normal", A, f=power(2), delta=0.3, cfg=SMALL)
    assert o.status == "pass"


def test_t9a_on_sectorial():
    sec = SectorParams(0.2, 0.9)
    (A,) = generate(EnsembleSpec("sectorial_normal", n=2, dim=3, rng_seed=2, sector=sec))
    assert check("t9a", A, sector=sec, cfg=SMALL).status == "pass"


def test_t9b_fails_on_identity():
    # Im of the identity vanishes while its radius is 1
    sec = SectorParams(0.0, 0.9)
    A = OperatorTuple([np.eye(2), np.eye(2)])
    o = check("t9b", A, sector=sec, cfg=SMALL)
    assert o.status == "violation_candidate"
    assert o.lhs > o.rhs


def test_hypothesis_unmet():
    A = OperatorTuple([[[0, 1], [0, 0]], [[1, 0], [0, 2]]])
    with pytest.raises(HypothesisUnmet):
        check("t1_normal", A)
    with pytest.raises(HypothesisUnmet):
        check("c4", pauli_tuple(3))
    with pytest.raises(HypothesisUnmet):
        check("t9a", pauli_tuple(2), sector=None)


def test_gauge_unvalidated():
    g = custom("sq", lambda t: t * t, np.sqrt)
    with pytest.raises(GaugeUnvalidated):
        check("t1_subadd", pauli_tuple(2), f=g)
    with pytest.raises(GaugeUnvalidated):
        check("c9", pauli_tuple(2), f=g)


def test_unknown_relation():
    with pytest.raises(InvalidSpec):
        check("nope", pauli_tuple(2))
    with pytest.raises(InvalidSpec):
        run_suite(EnsembleSpec("pauli", n=2, dim=2), relations=["nope"])
    with pytest.raises(InvalidSpec):
        run_suite(EnsembleSpec("pauli", n=2, dim=2), delta_grid=(1.5,))


def test_skipped_above_norm():
    o = check("lem3", pauli_tuple(3), f=power(2), delta=5.0, cfg=SMALL)
    assert o.status == "skipped"
    assert math.isnan(o.lhs) and "reason" in o.notes


def test_flag_only_when_truncated():
    sec = SectorParams(0.0, 0.9)
    A = OperatorTuple([np.eye(2), np.eye(2)])
    o = check("t9b", A, sector=sec, cfg=SMALL, max_rounds=1)
    assert o.status == "flag" and o.rounds == 1


def test_shifted_levels_clamp():
    A = OperatorTuple([np.diag([1.0, 0.0]), np.diag([0.0, 3.0])])
    dm, dagg = shifted_levels(A, identity(), 2.0)
    assert min(dm) >= 0.0 and dagg <= 2.0 + 1e-12


def test_r2_closed_form():
    assert r2_closed_form(0.5) == 1.0
    assert r2_closed_form(1.2) == pytest.approx(0.44)


def test_example_r2_outcomes():
    rep = run_suite(EnsembleSpec("pauli", n=2, dim=2), relations=["example_r2"], cfg=SMALL)
    by_delta = {o.delta: o for o in rep.outcomes}
    assert set(by_delta) == {0.0, 0.5, 0.9, 1.2}
    for d in (0.0, 0.5, 0.9):
        assert by_delta[d].status == "pass"
    bad = by_delta[1.2]
    assert bad.status == "violation_candidate"
    assert bad.lhs == pytest.approx(1.0, abs=1e-3)
    assert bad.notes["oracle_value"] == 1.0 and bad.notes["oracle_status"] == "pass"


def test_small_pauli_suite():
    rep = run_suite(EnsembleSpec("pauli", n=3, dim=2), gauges=[identity(), power(2)], cfg=SMALL)
    s = rep.summary
    assert s["violation_candidate"] == 0 and s["flag"] == 0
    assert s["total"] == len(rep.outcomes) == sum(s[k] for k in STATUSES)
    assert rep.clean
    ids = {o.id for o in rep.outcomes}
    assert "example_pauli" not in ids and "t1_normal" in ids


def test_report_json_roundtrip():
    rep = run_suite(EnsembleSpec("pauli", n=2, dim=2), relations=["eq1", "lem3"], cfg=SMALL)
    obj = json.loads(rep.to_json())
    assert set(obj) >= {"config", "ensemble", "outcomes", "summary"}
    assert obj["config"]["delta_grid"] == [0.0, 0.25, 0.5]
    assert len(obj["outcomes"]) == len(rep.outcomes)
    assert isinstance(rep, SuiteReport)


def test_dumps_floats_and_nan():
    text = dumps({"a": 0.1, "b": float("nan"), "c": [1.0 / 3.0, float("inf")], "d": np.float64(2.0)})
    obj = json.loads(text)
    assert obj["a"] == 0.1 and obj["b"] is None and obj["c"][1] is None
    assert "0.33333333333333331" in text
