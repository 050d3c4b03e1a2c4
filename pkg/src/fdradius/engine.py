"""Lower-bound estimation of sphere suprema for operator tuples.

Every supremum here is of the form ``sup { q(x) : ||x|| = 1, ||A x||_f >= delta }``
with ``q`` either the form gauge ``|<A x, x>|_f`` or the vector gauge
``||A x||_f``. Estimates combine a uniform sampling oracle with multi-start
projected ascent; the reported value is always attained at a returned,
feasible witness, so it is a certified lower bound.
"""

import hashlib
from collections import OrderedDict
from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .errors import EmptyFeasibleSet
from .gauge import GaugeFunction, identity
from .tuples import OperatorTuple, f_form_gauge, f_vector_gauge

__all__ = [
    "FORM_GAUGE", "VECTOR_GAUGE", "EngineConfig", "FeasibleRegion", "RadiusEstimate", "Engine",
    "estimate_sup", "f_norm", "f_delta_radius", "f_delta_norm", "radius_profile",
    "single_omega_exact", "delta_radius_single", "oracle_sup", "sphere_samples",
]

FORM_GAUGE = "form_gauge"
VECTOR_GAUGE = "vector_gauge"
_OBJ_CODE = {FORM_GAUGE: kernels.FORM, VECTOR_GAUGE: kernels.VECTOR}

MEMBERSHIP_SLACK = 1e-12
_POOL_CAP = 256
_CHUNK = 250_000


@dataclass(frozen=True)
class EngineConfig:
    starts: int = 64
    oracle_samples: int = 200_000
    max_iters: int = 500
    step0: float = 0.1
    smoothing: float = 1e-12
    tol: float = 1e-9
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("starts", "oracle_samples", "max_iters"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be positive")
        for name in ("step0", "smoothing", "tol"):
            if not float(getattr(self, name)) > 0:
                raise ValueError(f"{name} must be positive")
        if int(self.rng_seed) < 0:
            raise ValueError("rng_seed must be non-negative")

    def escalated(self, round_):
        """Budget for escalation round ``round_`` (0 is the base budget)."""
        if round_ == 0:
            return self
        seed = int(np.random.SeedSequence([int(self.rng_seed), int(round_)]).generate_state(1, np.uint64)[0])
        return replace(self, starts=self.starts * 2 ** round_,
                       oracle_samples=self.oracle_samples * 2 ** round_, rng_seed=seed)


@dataclass(frozen=True)
class FeasibleRegion:
    """``{x unit : ||A x||_f >= level}``; negative levels collapse to 0."""

    tuple: OperatorTuple
    gauge: GaugeFunction
    level: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "level", max(float(self.level), 0.0))

    def contains(self, x):
        return f_vector_gauge(self.tuple, x, self.gauge) >= self.level - MEMBERSHIP_SLACK

    @property
    def sum_threshold(self):
        """Threshold on ``sum_m f(||A_m x||)`` equivalent to membership."""
        if self.level <= 0.0:
            return -np.inf
        return self.gauge(max(self.level - MEMBERSHIP_SLACK, 0.0))


@dataclass
class RadiusEstimate:
    value: float
    witness: np.ndarray
    feasible: bool
    method: str
    starts_used: int
    samples_used: int
    converged: bool

    def __float__(self):
        return float(self.value)


def sphere_samples(dim, count, seed):
    """``count`` uniform unit vectors in C^dim (normalized complex Gaussians)."""
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), int(dim), int(count), 0x5EED]))
    X = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    X /= np.linalg.norm(X, axis=1)[:, None]
    return X


def _key_seed(seed, *parts):
    h = hashlib.sha1(repr(parts).encode()).digest()
    return np.random.SeedSequence([int(seed), int.from_bytes(h[:8], "little")])


def _objective_sums(mats, X, gauge, objective):
    forms, vecs = kernels.moduli(mats, X)
    q = forms if objective == FORM_GAUGE else vecs
    return np.sum(gauge(q), axis=1), np.sum(gauge(vecs), axis=1)


class Engine:
    """Stateful estimator with sample, moduli, estimate and witness caches.

    One engine per independent task keeps results deterministic: witnesses
    found for a tuple are reused by later estimates on the same tuple, which
    makes radius profiles on a descending level grid exactly monotone.
    """

    def __init__(self, cfg=None, cache_size=32):
        self.cfg = cfg or EngineConfig()
        self._cache_size = cache_size
        self._samples = OrderedDict()
        self._mod = OrderedDict()
        self._sums = OrderedDict()
        self._memo = {}
        self._pool = {}

    # -- caches ---------------------------------------------------------
    def _lru(self, store, key, make, size):
        if key in store:
            store.move_to_end(key)
            return store[key]
        val = make()
        store[key] = val
        while len(store) > size:
            store.popitem(last=False)
        return val

    def samples(self, dim, count, seed):
        return self._lru(self._samples, (dim, count, seed), lambda: sphere_samples(dim, count, seed), 4)

    def _moduli(self, A, count, seed):
        key = (A.fingerprint, count, seed)

        def make():
            X = self.samples(A.dim, count, seed)
            parts = [kernels.moduli(A.mats, X[i:i + _CHUNK]) for i in range(0, count, _CHUNK)]
            return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])

        return self._lru(self._mod, key, make, self._cache_size)

    def _oracle_sums(self, A, gauge, objective, count, seed):
        """Per-sample ``sum f(q_m)`` for the objective and for the constraint."""
        key = (A.fingerprint, gauge.key, count, seed)

        def make():
            forms, vecs = self._moduli(A, count, seed)
            return np.sum(gauge(forms), axis=1), np.sum(gauge(vecs), axis=1)

        sf, sv = self._lru(self._sums, key, make, 2 * self._cache_size)
        return (sf if objective == FORM_GAUGE else sv), sv

    def _pool_for(self, A, gauge, objective):
        return self._pool.setdefault((A.fingerprint, gauge.key, objective), [])

    def _remember(self, A, gauge, objective, w):
        pool = self._pool_for(A, gauge, objective)
        pool.append(np.array(w, dtype=np.complex128))
        if len(pool) > _POOL_CAP:
            del pool[0]

    # -- estimators -----------------------------------------------------
    def _best_of(self, region, objective, X):
        """Index and objective sum of the best feasible row of ``X`` (or (None, -inf))."""
        if X.shape[0] == 0:
            return None, -np.inf
        obj, con = _objective_sums(region.tuple.mats, X, region.gauge, objective)
        ok = con >= region.sum_threshold
        if not ok.any():
            return None, -np.inf
        obj = np.where(ok, obj, -np.inf)
        i = int(np.argmax(obj))
        return i, float(obj[i])

    def _finish(self, region, objective, w, method, starts, samples, converged):
        A, f = region.tuple, region.gauge
        w = w / np.linalg.norm(w)
        if objective == FORM_GAUGE:
            value = f_form_gauge(A, w, f)
        else:
            value = f_vector_gauge(A, w, f)
        return RadiusEstimate(float(value), w, bool(region.contains(w)), method, starts, samples, converged)

    def oracle(self, objective, region, samples=None, seed=None):
        """Pure sampling estimate; ``None`` when no sample is feasible."""
        cfg = self.cfg
        samples = int(samples or cfg.oracle_samples)
        seed = cfg.rng_seed if seed is None else seed
        A = region.tuple
        obj, con = self._oracle_sums(A, region.gauge, objective, samples, seed)
        ok = con >= region.sum_threshold
        if not ok.any():
            return None
        i = int(np.argmax(np.where(ok, obj, -np.inf)))
        X = self.samples(A.dim, samples, seed)
        return self._finish(region, objective, X[i], "oracle", 0, samples, True)

    def f_norm(self, A, f, cfg=None):
        return self.estimate_sup(VECTOR_GAUGE, FeasibleRegion(A, f, 0.0), cfg)

    def estimate_sup(self, objective, region, cfg=None):
        if objective not in _OBJ_CODE:
            raise ValueError(f"unknown objective {objective!r}")
        cfg = cfg or self.cfg
        A, f, level = region.tuple, region.gauge, region.level
        if not np.any(A.mats):
            if level > cfg.tol:
                raise EmptyFeasibleSet(level, 0.0)
            e1 = np.zeros(A.dim, dtype=np.complex128)
            e1[0] = 1.0
            return RadiusEstimate(0.0, e1, True, "multistart", 0, 0, True)
        if level > 0.0:
            fn = self.f_norm(A, f, cfg)
            if level > fn.value + cfg.tol:
                raise EmptyFeasibleSet(level, fn.value)

        key = (A.fingerprint, f.key, objective, level, cfg)
        est = self._memo.get(key)
        if est is None:
            est = self._run(objective, region, cfg)
            self._memo[key] = est
            self._remember(A, f, objective, est.witness)

        # witnesses found since (e.g. at higher levels) can only raise the bound
        pool = self._pool_for(A, f, objective)
        if pool:
            P = np.array(pool)
            i, s = self._best_of(region, objective, P)
            if i is not None:
                cand = self._finish(region, objective, P[i], est.method, est.starts_used,
                                    est.samples_used, est.converged)
                if cand.feasible and cand.value > est.value:
                    est = cand
        return est

    def _run(self, objective, region, cfg):
        A, f, level = region.tuple, region.gauge, region.level
        rng = np.random.default_rng(_key_seed(cfg.rng_seed, A.fingerprint, str(f), objective, level))
        obj, con = self._oracle_sums(A, f, objective, cfg.oracle_samples, cfg.rng_seed)
        X = self.samples(A.dim, cfg.oracle_samples, cfg.rng_seed)
        ok = con >= region.sum_threshold
        n_top = cfg.starts // 2
        starts = []
        oracle_best = None
        if ok.any():
            masked = np.where(ok, obj, -np.inf)
            k = min(n_top, int(ok.sum()))
            top = np.argpartition(-masked, k - 1)[:k]
            top = top[np.argsort(-masked[top], kind="stable")]
            oracle_best = X[top[0]]
            starts.append(X[top])
        n_rand = cfg.starts - sum(len(s) for s in starts)
        R = rng.standard_normal((n_rand, A.dim)) + 1j * rng.standard_normal((n_rand, A.dim))
        starts.append(R)
        starts.append(self._structured_starts(A, objective))
        pool = self._pool_for(A, f, objective)
        if pool:
            starts.append(np.array(pool[-16:]))
        X0 = np.concatenate(starts)
        X0 = X0 / np.linalg.norm(X0, axis=1)[:, None]

        level_c = 0.0
        if level > 0.0:
            level_c = f(max(level - 0.5 * MEMBERSHIP_SLACK, 0.0))
        Xs, _, _, conv, feas = kernels.ascend(A.mats, X0, _OBJ_CODE[objective], level_c, f,
                                              cfg.max_iters, cfg.step0, cfg.tol, cfg.smoothing)
        cand = Xs[feas]
        if oracle_best is not None:
            cand = np.concatenate([cand, oracle_best[None]])
        i, _ = self._best_of(region, objective, cand)
        if i is None:
            raise EmptyFeasibleSet(level, float("nan"))
        converged = bool(np.all(conv[feas])) if feas.any() else False
        return self._finish(region, objective, cand[i], "multistart", X0.shape[0],
                            cfg.oracle_samples, converged)

    @staticmethod
    def _structured_starts(A, objective):
        """Top eigenvectors of sum A*A and of each A_m*A_m."""
        G = np.conj(np.swapaxes(A.mats, 1, 2)) @ A.mats
        G = 0.5 * (G + np.conj(np.swapaxes(G, 1, 2)))
        mats = np.concatenate([G.sum(axis=0)[None], G]) if A.n > 1 else G
        _, V = np.linalg.eigh(mats)
        return V[:, :, -1]

    def f_delta_radius(self, A, f, delta, cfg=None):
        return self.estimate_sup(FORM_GAUGE, FeasibleRegion(A, f, delta), cfg)

    def f_delta_norm(self, A, f, delta, cfg=None):
        return self.estimate_sup(VECTOR_GAUGE, FeasibleRegion(A, f, delta), cfg)

    def radius_profile(self, A, f, deltas, cfg=None):
        """``f_delta_radius`` over ``deltas``, evaluated in descending order.

        Returns estimates in the order of ``deltas``; values are nonincreasing
        in the level because every witness of a higher level is reused.
        """
        order = sorted(range(len(deltas)), key=lambda k: -max(float(deltas[k]), 0.0))
        out = [None] * len(deltas)
        for k in order:
            out[k] = self.f_delta_radius(A, f, deltas[k], cfg)
        return out

    def delta_radius_single(self, M, delta, cfg=None):
        return self.f_delta_radius(OperatorTuple(np.asarray(M)[None]), identity(), delta, cfg)


def estimate_sup(objective, region, cfg=None):
    return Engine(cfg).estimate_sup(objective, region)


def f_norm(A, f, cfg=None):
    return Engine(cfg).f_norm(A, f)


def f_delta_radius(A, f, delta, cfg=None):
    return Engine(cfg).f_delta_radius(A, f, delta)


def f_delta_norm(A, f, delta, cfg=None):
    return Engine(cfg).f_delta_norm(A, f, delta)


def radius_profile(A, f, deltas, cfg=None):
    return Engine(cfg).radius_profile(A, f, deltas)


def delta_radius_single(M, delta, cfg=None):
    return Engine(cfg).delta_radius_single(M, delta)


def oracle_sup(objective, region, samples, rng_seed=0):
    """Brute-force estimate from ``samples`` uniform unit vectors, no local search."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    eng = Engine(EngineConfig(oracle_samples=samples, rng_seed=rng_seed))
    est = eng.oracle(objective, region, samples, rng_seed)
    if est is None:
        raise EmptyFeasibleSet(region.level, float("nan"))
    return est


def single_omega_exact(A, grid=3600):
    """Numerical radius of one matrix by a support-function sweep.

    ``omega(A) = max_theta lambda_max(cos(theta) Re A - sin(theta) Im A)``; the
    grid maximum is refined by golden-section search on the neighbouring cell.
    """
    if grid < 360:
        raise ValueError("grid must be >= 360")
    A = np.asarray(A, dtype=np.complex128)
    AH = A.conj().T
    R = 0.5 * (A + AH)
    I = (A - AH) / 2j
    I = 0.5 * (I + I.conj().T)

    def lam(theta):
        th = np.atleast_1d(theta)
        H = np.cos(th)[:, None, None] * R - np.sin(th)[:, None, None] * I
        return np.linalg.eigvalsh(H)[:, -1]

    thetas = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    vals = lam(thetas)
    k = int(np.argmax(vals))
    best = float(vals[k])
    h = 2.0 * np.pi / grid
    a, b = thetas[k] - h, thetas[k] + h
    g = (np.sqrt(5.0) - 1.0) / 2.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = lam(c)[0], lam(d)[0]
    for _ in range(80):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = lam(c)[0]
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = lam(d)[0]
    return max(best, float(fc), float(fd))
