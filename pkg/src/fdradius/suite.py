"""Run relations from the catalog over ensembles and collect a report."""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .engine import Engine, EngineConfig, sphere_samples
from .errors import GaugeUnvalidated, HypothesisUnmet, InvalidSpec
from .gauge import identity
from .generators import EnsembleSpec, commutes, generate, is_normal, sector_check
from .linalg import is_hermitian, hermitian_eig
from .relations import CATALOG, NORMAL_KINDS, SECTORIAL_KINDS, Ctx, Side, Skip, applicable_ids

__all__ = ["CheckOutcome", "SuiteReport", "check", "run_suite", "DEFAULT_TOL", "MAX_ROUNDS",
           "STATUSES", "COVERAGE"]

DEFAULT_TOL = (5e-3, 1e-3)
MAX_ROUNDS = 3
STATUSES = ("pass", "flag", "violation_candidate", "skipped")
_INCL_SAMPLES = 20_000

# Catalog items grouped by the result they exercise; every id appears once.
COVERAGE = {
    "classical single-operator bounds": ("eq1", "eq2", "c8", "c10", "lem4", "commprod", "c2"),
    "joint radius structure": ("t1_scale", "t1_subadd", "c1", "t1_normal", "t1_hypo", "chain", "sumbound",
                               "dm_lower"),
    "norm identities": ("lem1", "lem2", "lem3"),
    "gram and modulus bounds": ("t2", "t3", "c3", "c4", "t6", "t7", "c9"),
    "coordinate bounds": ("t4", "c5", "c6", "t5", "c7"),
    "real and imaginary parts": ("t8", "t9a", "t9b", "t10a", "t10b", "c11a", "c11b", "c12", "c13",
                                 "prodinterp"),
    "feasible sets": ("incl4", "incl6", "incl8", "incl9", "incl11", "incl15", "incl17", "incl19", "incl21",
                      "incl23", "incl_t5"),
    "worked examples": ("example_r2", "example_pauli"),
}


@dataclass
class CheckOutcome:
    id: str
    lhs: float
    rhs: float
    slack: float
    status: str
    rounds: int
    seed: int
    tuple_index: Optional[int] = None
    gauge: Optional[str] = None
    delta: Optional[float] = None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        return {"id": self.id, "tuple": self.tuple_index, "gauge": self.gauge, "delta": self.delta,
                "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack, "status": self.status,
                "rounds": self.rounds, "seed": self.seed, "notes": self.notes}


@dataclass
class SuiteReport:
    config: dict
    ensemble: dict
    outcomes: list

    @property
    def summary(self):
        counts = {s: 0 for s in STATUSES}
        for o in self.outcomes:
            counts[o.status] += 1
        counts["total"] = len(self.outcomes)
        return counts

    @property
    def clean(self):
        s = self.summary
        return s["flag"] == 0 and s["violation_candidate"] == 0

    def by_id(self, rel_id):
        return [o for o in self.outcomes if o.id == rel_id]

    def to_dict(self):
        return {"config": self.config, "ensemble": self.ensemble,
                "outcomes": [o.to_dict() for o in self.outcomes], "summary": self.summary}

    def to_json(self):
        return dumps(self.to_dict())


def _fmt(x):
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return "null" if not math.isfinite(x) else format(x, ".17g")
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj):
    """JSON with every float written to 17 significant digits and NaN/inf as null."""
    return _fmt(obj)


# -- hypothesis and gauge checks --------------------------------------------------

def _gauge_ok(f, prop):
    if prop == "power":
        return f.is_power
    return f.has(prop)


def _require_gauge(rel, f):
    if rel.gauge_free:
        return
    missing = [p for p in rel.needs if not _gauge_ok(f, p)]
    if missing:
        raise GaugeUnvalidated(f"{rel.id} needs gauge properties {missing} that {f} does not carry")


def _is_psd(M):
    return is_hermitian(M) and hermitian_eig(M)[0][0] >= -1e-10


def _require_hypotheses(rel, A, B, sector):
    kinds = set(rel.kinds)
    if rel.fixed_tuple is not None:
        return
    mats = list(A) + (list(B) if B is not None and rel.needs_partner else [])
    if kinds <= set(NORMAL_KINDS) and not all(is_normal(M) for M in mats):
        raise HypothesisUnmet(f"{rel.id} needs normal components")
    if kinds == {"positive"} and not all(_is_psd(M) for M in A):
        raise HypothesisUnmet(f"{rel.id} needs positive components")
    if kinds == {"commuting"} and not all(commutes(M, N) for M in A for N in A):
        raise HypothesisUnmet(f"{rel.id} needs commuting components")
    if kinds <= set(SECTORIAL_KINDS):
        if sector is None:
            raise HypothesisUnmet(f"{rel.id} needs sector parameters")
        if not all(sector_check(M, sector) for M in mats):
            raise HypothesisUnmet(f"{rel.id}: components leave the sector")


# -- single check with escalation ------------------------------------------------

def _evaluate(rel, ctx, engine, cfg, max_rounds):
    tol = rel.tol or DEFAULT_TOL
    rounds_allowed = max_rounds if rel.escalate else 0
    for r in range(rounds_allowed + 1):
        hi = Side(engine, cfg.escalated(r))
        lo = Side(engine, cfg)
        parts = rel.fn(ctx, lo, hi)
        worst = max(parts, key=lambda p: p.excess(tol))
        if worst.excess(tol) <= 0.0:
            return parts, worst, "pass", r
    status = "violation_candidate" if (not rel.escalate or max_rounds >= MAX_ROUNDS) else "flag"
    return parts, worst, status, rounds_allowed


def _outcome(rel, ctx, engine, cfg, max_rounds, seed, tuple_index, gauge_name, delta):
    try:
        parts, worst, status, rounds = _evaluate(rel, ctx, engine, cfg, max_rounds)
    except Skip as exc:
        return CheckOutcome(rel.id, math.nan, math.nan, math.nan, "skipped", 0, seed, tuple_index, gauge_name,
                            delta, {"reason": str(exc)})
    notes = {"worst_part": worst.name}
    if len(parts) > 1:
        notes["parts"] = {p.name: [p.lhs, p.rhs] for p in parts}
    if rel.id == "t2" and ctx.delta is None:
        from .relations import t2_statement_reading
        try:
            notes.update(t2_statement_reading(Side(engine, cfg), ctx.A, ctx.f, ctx.level(Side(engine, cfg), ctx.A)))
        except Skip:
            pass
    slack = worst.rhs - worst.lhs if worst.sense == "leq" else -abs(worst.lhs - worst.rhs)
    return CheckOutcome(rel.id, float(worst.lhs), float(worst.rhs), float(slack), status, rounds, seed,
                        tuple_index, gauge_name, delta, notes)


def check(rel_id, A=None, f=None, delta=0.0, cfg=None, B=None, sector=None, max_rounds=MAX_ROUNDS,
          engine=None):
    """Evaluate one relation on one tuple at absolute level ``delta``.

    Raises ``HypothesisUnmet`` if the tuple is outside the relation's class
    and ``GaugeUnvalidated`` if ``f`` lacks a property the relation uses.
    """
    if rel_id not in CATALOG:
        raise InvalidSpec(f"unknown relation {rel_id!r}")
    rel = CATALOG[rel_id]
    f = f or identity()
    cfg = cfg or EngineConfig()
    engine = engine or Engine(cfg)
    if rel.fixed_tuple is not None:
        A = rel.fixed_tuple()
    if A is None:
        raise InvalidSpec("a tuple is required")
    if rel.needs_partner and B is None:
        B = A
    _require_gauge(rel, f)
    _require_hypotheses(rel, A, B, sector)
    ctx = Ctx(A=A, f=f, B=B, delta=float(delta), sector=sector, seed=cfg.rng_seed,
              samples=sphere_samples(A.dim, _INCL_SAMPLES, cfg.rng_seed))
    return _outcome(rel, ctx, engine, cfg, max_rounds, cfg.rng_seed, None, str(f), float(delta))


# -- suite -----------------------------------------------------------------------

def _tuple_task(i, A, B, rels, gauges, grid, sector, cfg, max_rounds):
    engine = Engine(cfg)
    samples = sphere_samples(A.dim, _INCL_SAMPLES, cfg.rng_seed)
    out = []
    for gi, f in enumerate(gauges):
        for rel in rels:
            if rel.fixed_tuple is not None or (rel.gauge_free and gi > 0):
                continue
            fr = identity() if rel.gauge_free else f
            gname = "fixed" if rel.gauge_free else str(f)
            fracs = grid if rel.uses_delta else (None,)
            for frac in fracs:
                ctx = Ctx(A=A, f=fr, B=B, frac=frac, grid=tuple(grid), sector=sector, seed=cfg.rng_seed,
                          samples=samples)
                out.append(_outcome(rel, ctx, engine, cfg, max_rounds, cfg.rng_seed, i, gname, frac))
    return out


def _example_outcomes(rel, cfg, max_rounds):
    engine = Engine(cfg)
    A = rel.fixed_tuple()
    samples = sphere_samples(A.dim, _INCL_SAMPLES, cfg.rng_seed)
    out = []
    deltas = rel.own_deltas or (None,)
    for d in deltas:
        ctx = Ctx(A=A, f=identity(), delta=d, samples=samples)
        o = _outcome(rel, ctx, engine, cfg, max_rounds, cfg.rng_seed, None, "fixed", d)
        if rel.id == "example_r2":
            o.notes["oracle_value"] = 1.0
            o.notes["oracle_status"] = "pass" if abs(o.lhs - 1.0) <= 1e-3 else "violation_candidate"
        out.append(o)
    return out


def run_suite(ensemble, relations=None, gauges=None, delta_grid=(0.0, 0.25, 0.5), cfg=None,
              max_rounds=MAX_ROUNDS, threads=None):
    """Evaluate relations over every tuple of ``ensemble``, every gauge and every level.

    ``delta_grid`` holds fractions: each relation instance uses
    ``delta = frac * ||X||_f`` where ``X`` is the tuple whose feasible set it
    constrains. Relations with a fixed gauge or without a level run once per
    tuple. Worked examples run once per suite on their own tuple.
    """
    if isinstance(ensemble, EnsembleSpec):
        spec = ensemble
    else:
        raise InvalidSpec("ensemble must be an EnsembleSpec")
    spec.validate()
    cfg = cfg or EngineConfig()
    gauges = list(gauges) if gauges else [identity()]
    grid = [float(g) for g in delta_grid]
    if not grid or any(not (0.0 <= g <= 1.0) for g in grid):
        raise InvalidSpec("delta_grid fractions must lie in [0, 1]")
    ids = list(relations) if relations else list(applicable_ids(spec.kind))
    unknown = [r for r in ids if r not in CATALOG]
    if unknown:
        raise InvalidSpec(f"unknown relations {unknown}")
    rels = [CATALOG[r] for r in ids]
    for rel in rels:
        for f in gauges:
            _require_gauge(rel, f)
    tuples = generate(spec)
    partners = [tuples[(i + 1) % len(tuples)] for i in range(len(tuples))]
    for rel in rels:
        if rel.fixed_tuple is None and spec.kind not in rel.kinds:
            _require_hypotheses(rel, tuples[0], partners[0], spec.sector)
    threads = threads or int(os.environ.get("FDR_THREADS", "1"))
    jobs = [(i, A, partners[i], rels, gauges, grid, spec.sector, cfg, max_rounds) for i, A in enumerate(tuples)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            chunks = list(ex.map(lambda j: _tuple_task(*j), jobs))
    else:
        chunks = [_tuple_task(*j) for j in jobs]
    outcomes = [o for c in chunks for o in c]
    for rel in rels:
        if rel.fixed_tuple is not None:
            outcomes += _example_outcomes(rel, cfg, max_rounds)
    config = {"engine": {k: getattr(cfg, k) for k in cfg.__dataclass_fields__},
              "gauges": [str(f) for f in gauges], "delta_grid": grid, "relations": ids,
              "max_rounds": max_rounds, "tolerance": list(DEFAULT_TOL)}
    return SuiteReport(config, spec.to_dict(), outcomes)
