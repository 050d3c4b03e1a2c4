"""Catalog of checkable relations between radii, norms and feasible sets.

Each relation evaluates to a list of :class:`Part` objects, one per
inequality it asserts. Quantities are requested through two :class:`Side`
objects: ``lo`` for the side whose underestimation can only help the check,
``hi`` for the side that receives escalating optimizer effort.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from . import tuples as T
from .engine import MEMBERSHIP_SLACK, single_omega_exact
from .errors import EmptyFeasibleSet
from .gauge import power
from .linalg import op_norm, psd_sqrt

__all__ = ["Part", "Relation", "Side", "Skip", "CATALOG", "RELATION_IDS", "GENERAL_KINDS",
           "NORMAL_KINDS", "SECTORIAL_KINDS", "applicable_ids"]

T2 = power(2.0)

ALL_KINDS = ("ginibre", "hermitian", "positive", "normal", "unitary", "commuting", "pauli",
             "sectorial_normal", "accretive_dissipative")
GENERAL_KINDS = ALL_KINDS
NORMAL_KINDS = ("hermitian", "positive", "normal", "unitary", "commuting", "pauli",
                "sectorial_normal", "accretive_dissipative")
SECTORIAL_KINDS = ("sectorial_normal", "accretive_dissipative")

TOL_EXACT = (1e-6, 1e-9)
TOL_INCL = (1e-9, 0.0)


class Skip(Exception):
    """The relation instance has an infeasible inner level; it is counted, not dropped."""


@dataclass
class Part:
    name: str
    lhs: float
    rhs: float
    sense: str = "leq"                      # "leq" or "eq"
    tol: Optional[Tuple[float, float]] = None

    def excess(self, default_tol):
        ta, tr = self.tol if self.tol is not None else default_tol
        bound = ta + tr * abs(self.rhs)
        if self.sense == "eq":
            return abs(self.lhs - self.rhs) - bound
        return self.lhs - self.rhs - bound


class Side:
    """Quantity provider bound to an engine and an escalation round."""

    def __init__(self, engine, cfg):
        self.engine = engine
        self.cfg = cfg

    def fnorm(self, A, f):
        return self.engine.f_norm(A, f, self.cfg).value

    def _check_level(self, A, f, level):
        level = max(float(level), 0.0)
        if level > 0.0 and level > self.fnorm(A, f) + self.cfg.tol:
            raise Skip(f"level {level:.6g} above f-norm")
        return level

    def omega(self, A, f, level=0.0):
        level = self._check_level(A, f, level)
        try:
            return self.engine.f_delta_radius(A, f, level, self.cfg).value
        except EmptyFeasibleSet as exc:
            raise Skip(str(exc)) from exc

    def dnorm(self, A, f, level=0.0):
        level = self._check_level(A, f, level)
        try:
            return self.engine.f_delta_norm(A, f, level, self.cfg).value
        except EmptyFeasibleSet as exc:
            raise Skip(str(exc)) from exc

    def omega1(self, M, level=0.0):
        """delta-numerical radius of one matrix; the exact sweep when the level is 0."""
        if level <= 0.0:
            return single_omega_exact(M)
        return self.omega(T.OperatorTuple(np.asarray(M)[None]), power(1.0), level)

    def profile(self, A, f, levels):
        for lv in levels:
            self._check_level(A, f, lv)
        return [e.value for e in self.engine.radius_profile(A, f, levels, self.cfg)]


@dataclass
class Ctx:
    """Inputs of one relation instance."""

    A: T.OperatorTuple
    f: object
    B: Optional[T.OperatorTuple] = None
    frac: Optional[float] = None            # relative level: delta = frac * ||X||_f
    delta: Optional[float] = None           # absolute level
    grid: Tuple[float, ...] = (0.0,)
    sector: Optional[object] = None
    seed: int = 0
    samples: np.ndarray = field(default=None, repr=False)

    def level(self, side, X, f=None):
        f = f or self.f
        if self.delta is not None:
            return max(float(self.delta), 0.0)
        return float(self.frac or 0.0) * side.fnorm(X, f)


@dataclass(frozen=True)
class Relation:
    id: str
    statement: str
    fn: Callable
    kinds: Tuple[str, ...] = GENERAL_KINDS
    needs: Tuple[str, ...] = ()             # gauge properties: multiplicative, geometrically_convex, convex, power
    gauge_free: bool = False                # uses a fixed gauge, evaluated once per tuple
    uses_delta: bool = True
    escalate: bool = True
    tol: Optional[Tuple[float, float]] = None
    fixed_tuple: Optional[Callable] = None  # evaluated once on this tuple instead of the ensemble
    own_deltas: Tuple[float, ...] = ()
    needs_partner: bool = False


# -- helpers ------------------------------------------------------------------

def _clamp(x):
    return max(float(x), 0.0)


def tau_levels(A, f):
    """``tau_m = f^{-1}(sum_{k != m} f(||A_k||))``."""
    norms = np.array([op_norm(M) for M in A])
    fs = f(norms)
    return [f.inverse(max(float(np.sum(fs) - fs[m]), 0.0)) for m in range(A.n)]


def shifted_levels(A, f, delta):
    """``delta_m = max(delta - tau_m, 0)`` and ``delta_agg = f^{-1}(sum f(delta_m))``."""
    dm = [_clamp(delta - t) for t in tau_levels(A, f)]
    return dm, f.inverse(float(np.sum(f(np.array(dm)))))


def star_level(f, n, delta):
    """``f^{-1}(f(delta)^2 / (n f(1)))``."""
    return f.inverse(f(delta) ** 2 / (n * f(1.0)))


def _vec_gauges(A, X, f):
    _, vecs = _moduli(A, X)
    return f.inverse(np.sum(f(vecs), axis=1))


def _moduli(A, X):
    AX = np.einsum("mij,sj->smi", A.mats, X)
    forms = np.abs(np.einsum("si,smi->sm", X.conj(), AX))
    return forms, np.linalg.norm(AX, axis=2)


def _incl_part(name, ctx, left, right):
    """Pointwise inclusion ``left ⊂ right`` over sampled unit vectors.

    ``left`` and ``right`` are lists of ``(tuple, level)`` whose sets are
    intersected. Reports ``lhs = max_x (level_right - ||R x||_f)`` over
    sampled ``x`` in the left set, to be compared with ``rhs = 0``.
    """
    X = ctx.samples
    mask = np.ones(X.shape[0], dtype=bool)
    for A, lv in left:
        mask &= _vec_gauges(A, X, ctx.f) >= lv
    Xl = X[mask][:1000]
    if Xl.shape[0] == 0:
        raise Skip("no sampled point in the left set")
    worst = -np.inf
    for A, lv in right:
        worst = max(worst, float(np.max(lv - _vec_gauges(A, Xl, ctx.f))))
    return Part(name, worst, 0.0, tol=TOL_INCL)


def _sector_angles(ctx):
    s = ctx.sector
    return s.gamma, s.alpha


# -- classical single-operator bounds ----------------------------------------

def _eq1(ctx, lo, hi):
    parts = []
    for m, M in enumerate(ctx.A):
        w, nrm = single_omega_exact(M), op_norm(M)
        parts += [Part(f"half_norm[{m}]", nrm / 2, w), Part(f"upper[{m}]", w, nrm)]
    return parts


def _eq2(ctx, lo, hi):
    parts = []
    for m, M in enumerate(ctx.A):
        w2 = single_omega_exact(M) ** 2
        s = op_norm(M.conj().T @ M + M @ M.conj().T)
        parts += [Part(f"lower[{m}]", s / 4, w2), Part(f"upper[{m}]", w2, s / 2)]
    return parts


def _c8(ctx, lo, hi):
    return [Part(f"upper[{m}]", single_omega_exact(M), op_norm(M)) for m, M in enumerate(ctx.A)]


def _c10(ctx, lo, hi):
    return [Part(f"upper[{m}]", single_omega_exact(M) ** 2, op_norm(M.conj().T @ M + M @ M.conj().T) / 2)
            for m, M in enumerate(ctx.A)]


def _lem4(ctx, lo, hi):
    X = ctx.samples[:1000]
    parts = []
    for m, M in enumerate(ctx.A):
        P = psd_sqrt(M.conj().T @ M)
        PX = X @ P.T
        lhs = np.sum(np.abs(PX) ** 2, axis=1)
        rhs = op_norm(P) * np.real(np.sum(X.conj() * PX, axis=1))
        k = int(np.argmax(lhs - rhs))
        parts.append(Part(f"modulus[{m}]", float(lhs[k]), float(rhs[k]), tol=TOL_INCL))
    return parts


def _dm_lower(ctx, lo, hi):
    A = ctx.A
    return [Part("lower", T.joint_norm(A) / (2 * np.sqrt(A.n)), hi.omega(A, T2, 0.0))]


def _commprod(ctx, lo, hi):
    Tm = ctx.A[0]
    S = ctx.A[1] if ctx.A.n > 1 else Tm @ Tm
    return [Part("product", single_omega_exact(Tm @ S), 2 * single_omega_exact(Tm) * single_omega_exact(S))]


def _sumbound(ctx, lo, hi):
    return [Part("sum", lo.omega(ctx.A, ctx.f, 0.0), float(sum(single_omega_exact(M) for M in ctx.A)))]


def _chain(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    fn = hi.fnorm(A, f)
    levels = sorted({0.0} | {float(g) * fn for g in ctx.grid}, reverse=True)
    vals = hi.profile(A, f, levels)
    parts = [Part(f"monotone[{levels[k]:.6g}>{levels[k + 1]:.6g}]", vals[k], vals[k + 1], tol=(0.0, 0.0))
             for k in range(len(levels) - 1)]
    parts.append(Part("below_norm", vals[-1], fn, tol=(2e-3, 0.0)))
    return parts


# -- joint radius identities and bounds --------------------------------------

def _t1_scale(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    parts = []
    for lam in (2.0, 0.5, 1 + 1j):
        LA = T.scale(lam, A)
        d = ctx.level(hi, LA)
        parts.append(Part(f"lambda={lam}", hi.omega(LA, f, d), abs(lam) * hi.omega(A, f, d / abs(lam)), sense="eq"))
    return parts


def _t1_subadd(ctx, lo, hi):
    A, B, f = ctx.A, ctx.B, ctx.f
    AB = T.add(A, B)
    d = ctx.level(lo, AB)
    nA, nB = hi.fnorm(A, f), hi.fnorm(B, f)
    lhs = lo.omega(AB, f, d)
    a = max(nA, nB)
    return [Part("shifted", lhs, hi.omega(A, f, d - nB) + hi.omega(B, f, d - nA)),
            Part("common_shift", lhs, hi.omega(A, f, d - a) + hi.omega(B, f, d - a))]


def _c1(ctx, lo, hi):
    A, B = ctx.A, ctx.B
    return [Part("t2", lo.omega(T.add(A, B), T2, 0.0), hi.omega(A, T2, 0.0) + hi.omega(B, T2, 0.0))]


def _c2(ctx, lo, hi):
    M, N = ctx.A[0], ctx.B[0]
    return [Part("single", single_omega_exact(M + N), single_omega_exact(M) + single_omega_exact(N))]


def _t1_normal(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(hi, A)
    return [Part("adjoint", hi.omega(A, f, d), hi.omega(T.adjoint_tuple(A), f, d), sense="eq")]


def _t1_hypo(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    As = T.adjoint_tuple(A)
    d = ctx.level(lo, As)
    return [Part("adjoint", lo.omega(As, f, d), hi.omega(A, f, d))]


def _t2(ctx, lo, hi):
    A, f, n = ctx.A, ctx.f, ctx.A.n
    d = ctx.level(lo, A)
    G = T.gram_tuple(A)
    dstar = star_level(f, n, d)
    w = lo.omega(A, f, d)
    wg = hi.omega(G, f, dstar)
    lhs = f(w) ** 2
    return [Part("proof_constant", lhs, n * f(1.0) * f(wg))]


def t2_statement_reading(side, A, f, delta):
    """Printed constant and unshifted level, reported next to the checked form."""
    n = A.n
    G = T.gram_tuple(A)
    out = {"printed_constant_rhs": None, "printed_level_rhs": None}
    wg = side.omega(G, f, star_level(f, n, delta))
    out["printed_constant_rhs"] = np.sqrt(n) * f(1.0) * f(wg)
    raw = f(delta) ** 2 / (n * f(1.0))
    try:
        out["printed_level_rhs"] = n * f(1.0) * f(side.omega(G, f, raw))
    except Skip:
        pass
    return out


def _lem1(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    return [Part("modulus", hi.fnorm(A, f), hi.fnorm(T.modulus_tuple(A), f), sense="eq")]


def _lem2(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    return [Part("adjoint", hi.fnorm(T.adjoint_tuple(A), f), hi.fnorm(A, f), sense="eq")]


def _lem3(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(hi, A)
    return [Part("delta_norm", hi.dnorm(A, f, d), hi.fnorm(A, f), sense="eq")]


def _t3(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(lo, A)
    return [Part("modulus", f(lo.fnorm(A, f)), A.n * f(hi.omega(T.modulus_tuple(A), f, d)))]


def _c3(ctx, lo, hi):
    A = ctx.A
    d = ctx.level(lo, A, T2)
    return [Part("modulus", T.joint_norm(A), np.sqrt(A.n) * hi.omega(T.modulus_tuple(A), T2, d))]


def _c4(ctx, lo, hi):
    A = ctx.A
    d = ctx.level(lo, A, T2)
    return [Part("positive", T.joint_norm(A) / np.sqrt(A.n), hi.omega(A, T2, d))]


def _t4(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(lo, A)
    dm, dagg = shifted_levels(A, f, d)
    lhs = np.mean([lo.omega1(M, dm[m]) for m, M in enumerate(A)])
    return [Part("coordinates", float(lhs), hi.omega(A, f, dagg))]


def _c5(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(lo, A)
    dm, dagg = shifted_levels(A, f, d)
    lhs = float(np.sum([f(lo.omega1(M, dm[m])) for m, M in enumerate(A)]))
    return [Part("coordinates", lhs, f(A.n * hi.omega(A, f, dagg)))]


def _c6(ctx, lo, hi):
    A = ctx.A
    n = A.n
    w = hi.omega(A, T2, 0.0)
    s_om = np.sqrt(sum(single_omega_exact(M) ** 2 for M in A))
    s_nm = np.sqrt(sum(op_norm(M) ** 2 for M in A))
    return [Part("radii", s_om / np.sqrt(n), w),
            Part("norms", s_nm / (2 * np.sqrt(n)), w),
            Part("joint_norm", T.joint_norm(A) / (2 * np.sqrt(n)), w)]


def _t5(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(lo, A)
    dm, _ = shifted_levels(A, f, d)
    rhs = float(np.sum([f(hi.omega1(M, dm[m])) for m, M in enumerate(A)]))
    return [Part("coordinates", f(lo.omega(A, f, d)), rhs)]


def _c7(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    p = f.p
    d = ctx.level(lo, A)
    dm, _ = shifted_levels(A, f, d)
    w = lo.omega(A, f, d)
    rhs = float(np.sum([hi.omega1(M, dm[m]) ** p for m, M in enumerate(A)]))
    bound = float(np.sum([op_norm(M) ** p for M in A]) ** (1.0 / p))
    return [Part("coordinates", w ** p, rhs), Part("norms", w, bound)]


def _t6(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(lo, A)
    M = T.modulus_tuple(A)
    lhs = f(lo.omega(A, f, d))
    wm = hi.omega(M, f, d)
    rhs = np.sqrt(A.n) * np.sqrt(f(hi.fnorm(M, f))) * np.sqrt(f(wm))
    plain = np.sqrt(A.n) * np.sqrt(f(T.joint_norm(M))) * np.sqrt(f(wm))
    return [Part("f_norm_factor", lhs, float(rhs)), Part("plain_norm_factor", lhs, float(plain))]


def _t7(ctx, lo, hi):
    A, f, n = ctx.A, ctx.f, ctx.A.n
    d = ctx.level(lo, A)
    w = lo.omega(A, f, d)
    wb = hi.omega(T.anticomm_tuple(A), f, star_level(f, n, d))
    return [Part("proof_constant", f(w) ** 2, n * f(1.0) / 2 * f(wb))]


def _c9(ctx, lo, hi):
    A, f, n = ctx.A, ctx.f, ctx.A.n
    p = f.p
    d = ctx.level(lo, A)
    w = lo.omega(A, f, d)
    wb = hi.omega(T.anticomm_tuple(A), f, d ** 2 / n ** (1.0 / p))
    return [Part("power", w ** (2 * p), n / 2 * wb ** p)]


def _t8(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    w0 = hi.omega(A, f, 0.0)
    parts = []
    for name, X in (("real", T.re_tuple(A)), ("imag", T.im_tuple(A))):
        parts.append(Part(name, lo.omega(X, f, ctx.level(lo, X)), w0))
    return parts


# -- sectorial relations -------------------------------------------------------

def _t9a(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    _, alpha = _sector_angles(ctx)
    d = ctx.level(lo, A)
    dr = _clamp(d - hi.fnorm(T.im_tuple(A), f))
    R = T.scale(1.0 / np.cos(alpha), T.re_tuple(A))
    return [Part("sec_real", lo.omega(A, f, d), hi.omega(R, f, dr))]


def _t9b(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    _, alpha = _sector_angles(ctx)
    d = ctx.level(lo, A)
    di = _clamp(d - hi.fnorm(T.re_tuple(A), f))
    I = T.scale(1.0 / np.sin(alpha), T.im_tuple(A))
    return [Part("csc_imag", lo.omega(A, f, d), hi.omega(I, f, di))]


def _t10a(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    gamma, _ = _sector_angles(ctx)
    R = T.scale(1.0 / np.cos(gamma), T.re_tuple(A))
    return [Part("sec_real", lo.omega(R, f, ctx.level(lo, R)), hi.omega(A, f, 0.0))]


def _t10b(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    _, alpha = _sector_angles(ctx)
    I = T.scale(1.0 / np.sin(alpha), T.im_tuple(A))
    return [Part("csc_imag", lo.omega(I, f, ctx.level(lo, I)), hi.omega(A, f, 0.0))]


def _c11a(ctx, lo, hi):
    A = ctx.A
    _, alpha = _sector_angles(ctx)
    return [Part("sec_real", lo.omega(A, T2, 0.0), hi.omega(T.re_tuple(A), T2, 0.0) / np.cos(alpha))]


def _c11b(ctx, lo, hi):
    A = ctx.A
    _, alpha = _sector_angles(ctx)
    return [Part("csc_imag", lo.omega(A, T2, 0.0), hi.omega(T.im_tuple(A), T2, 0.0) / np.sin(alpha))]


def _band(ctx):
    gamma, alpha = _sector_angles(ctx)
    return np.sin(alpha) ** 2 + np.cos(gamma) ** 2


def _c12(ctx, lo, hi):
    gamma, alpha = _sector_angles(ctx)
    k = _band(ctx)
    parts = []
    for m, M in enumerate(ctx.A):
        w = single_omega_exact(M)
        R = 0.5 * (M + M.conj().T)
        I = (M - M.conj().T) / 2j
        s = op_norm(M.conj().T @ M + M @ M.conj().T)
        parts += [Part(f"anticommutator[{m}]", s / (2 * k), w ** 2),
                  Part(f"real[{m}]", single_omega_exact(R), np.cos(gamma) * w),
                  Part(f"imag[{m}]", single_omega_exact(I), np.sin(alpha) * w)]
    return parts


def _c13(ctx, lo, hi):
    gamma, alpha = _sector_angles(ctx)
    k = _band(ctx)
    parts = []
    for m, M in enumerate(ctx.A):
        w = single_omega_exact(M)
        R = 0.5 * (M + M.conj().T)
        I = (M - M.conj().T) / 2j
        parts += [Part(f"norm[{m}]", op_norm(M), np.sqrt(k) * w),
                  Part(f"real[{m}]", op_norm(R), np.cos(gamma) * w),
                  Part(f"imag[{m}]", op_norm(I), np.sin(alpha) * w)]
    return parts


def _prodinterp(ctx, lo, hi):
    M, N = ctx.A[0], ctx.B[0]
    return [Part("product", single_omega_exact(M @ N), _band(ctx) * single_omega_exact(M) * single_omega_exact(N))]


# -- feasible-set inclusions -----------------------------------------------------

def _incl4(ctx, lo, hi):
    A = ctx.A
    lam = 1 + 1j
    LA = T.scale(lam, A)
    d = ctx.level(lo, LA)
    return [_incl_part("forward", ctx, [(LA, d)], [(A, d / abs(lam) - MEMBERSHIP_SLACK)]),
            _incl_part("backward", ctx, [(A, d / abs(lam))], [(LA, d - MEMBERSHIP_SLACK)])]


def _incl6(ctx, lo, hi):
    A, B, f = ctx.A, ctx.B, ctx.f
    AB = T.add(A, B)
    d = ctx.level(lo, AB)
    return [_incl_part("sum", ctx, [(AB, d)], [(A, d - hi.fnorm(B, f)), (B, d - hi.fnorm(A, f))])]


def _same_set(ctx, A, B, d):
    return [_incl_part("forward", ctx, [(A, d)], [(B, d)]), _incl_part("backward", ctx, [(B, d)], [(A, d)])]


def _incl8(ctx, lo, hi):
    A = ctx.A
    return _same_set(ctx, A, T.adjoint_tuple(A), ctx.level(lo, A))


def _incl9(ctx, lo, hi):
    A = ctx.A
    As = T.adjoint_tuple(A)
    return [_incl_part("adjoint", ctx, [(As, ctx.level(lo, As))], [(A, ctx.level(lo, As))])]


def _incl11(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(lo, A)
    return [_incl_part("gram", ctx, [(A, d)], [(T.gram_tuple(A), star_level(f, A.n, d))])]


def _incl15(ctx, lo, hi):
    A = ctx.A
    return _same_set(ctx, A, T.modulus_tuple(A), ctx.level(lo, A))


def _incl19(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(lo, A)
    return [_incl_part("anticommutator", ctx, [(A, d)], [(T.anticomm_tuple(A), star_level(f, A.n, d))])]


def _incl21(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    _, alpha = _sector_angles(ctx)
    d = ctx.level(lo, A)
    R = T.scale(1.0 / np.cos(alpha), T.re_tuple(A))
    return [_incl_part("sec_real", ctx, [(A, d)], [(R, d - hi.fnorm(T.im_tuple(A), f))])]


def _incl23(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    _, alpha = _sector_angles(ctx)
    d = ctx.level(lo, A)
    I = T.scale(1.0 / np.sin(alpha), T.im_tuple(A))
    return [_incl_part("csc_imag", ctx, [(A, d)], [(I, d - hi.fnorm(T.re_tuple(A), f))])]


def _incl_t5(ctx, lo, hi):
    A, f = ctx.A, ctx.f
    d = ctx.level(lo, A)
    dm, _ = shifted_levels(A, f, d)
    return [_incl_part(f"coordinate[{m}]", ctx, [(A, d)], [(A.component(m), dm[m])]) for m in range(A.n)]


# -- worked examples -------------------------------------------------------------

def r2_closed_form(delta):
    """Piecewise value printed for the R^2 example (suspected erratum above 1)."""
    if delta <= 1.0:
        return 1.0
    return delta ** 2 - 1.0


def _example_r2(ctx, lo, hi):
    A = ctx.A
    f = power(1.0)
    w = hi.omega(A, f, ctx.delta)
    return [Part("closed_form", w, r2_closed_form(ctx.delta), sense="eq", tol=(1e-3, 0.0))]


def _example_pauli(ctx, lo, hi):
    parts = []
    for n in (3, 2):
        P = T.pauli_tuple(n)
        parts.append(Part(f"joint_norm[{n}]", T.joint_norm(P), np.sqrt(n), sense="eq", tol=(1e-9, 0.0)))
        parts.append(Part(f"radius[{n}]", hi.omega(P, T2, 0.0), 1.0, sense="eq", tol=(1e-3, 0.0)))
    return parts


GC = ("geometrically_convex", "convex")

CATALOG = {r.id: r for r in [
    Relation("eq1", "||A||/2 <= w(A) <= ||A||", _eq1, gauge_free=True, uses_delta=False, escalate=False, tol=TOL_EXACT),
    Relation("eq2", "||A*A+AA*||/4 <= w(A)^2 <= ||A*A+AA*||/2", _eq2, gauge_free=True, uses_delta=False,
             escalate=False, tol=TOL_EXACT),
    Relation("dm_lower", "||A||/(2 sqrt n) <= w(A)", _dm_lower, gauge_free=True, uses_delta=False),
    Relation("commprod", "w(TS) <= 2 w(T) w(S) for commuting T, S", _commprod, kinds=("commuting",),
             gauge_free=True, uses_delta=False, escalate=False, tol=TOL_EXACT),
    Relation("chain", "w_(f,d) <= w_(f,t) <= w_(f,0) <= ||A||_f for d >= t", _chain, uses_delta=False),
    Relation("sumbound", "w_(f,0)(A) <= sum_m w(A_m)", _sumbound, needs=("convex",), uses_delta=False,
             escalate=False),
    Relation("t1_scale", "w_(f,d)(lA) = |l| w_(f,d/|l|)(A)", _t1_scale, needs=("multiplicative",)),
    Relation("t1_subadd", "w_(f,d)(A+B) <= w_(f,d-||B||_f)(A) + w_(f,d-||A||_f)(B)", _t1_subadd, needs=GC,
             needs_partner=True),
    Relation("c1", "w_(t2,0)(A+B) <= w_(t2,0)(A) + w_(t2,0)(B)", _c1, gauge_free=True, uses_delta=False,
             needs_partner=True),
    Relation("c2", "w(A_1+B_1) <= w(A_1) + w(B_1)", _c2, gauge_free=True, uses_delta=False, escalate=False,
             tol=TOL_EXACT, needs_partner=True),
    Relation("t1_normal", "w_(f,d)(A) = w_(f,d)(A*) for normal tuples", _t1_normal, kinds=NORMAL_KINDS),
    Relation("t1_hypo", "w_(f,d)(A*) <= w_(f,d)(A) for hyponormal tuples", _t1_hypo, kinds=NORMAL_KINDS),
    Relation("t2", "f(w_(f,d)(A))^2 <= n f(1) f(w_(f,d*)(A*A)), d* = f^-1(f(d)^2/(n f(1)))", _t2,
             needs=("geometrically_convex",)),
    Relation("lem1", "||A||_f = || |A| ||_f", _lem1, uses_delta=False),
    Relation("lem2", "||A*||_f = ||A||_f for normal tuples", _lem2, kinds=NORMAL_KINDS, uses_delta=False),
    Relation("lem3", "||A||_(f,d) = ||A||_f", _lem3),
    Relation("lem4", "||Mx||^2 <= ||M|| <Mx,x> for M >= 0", _lem4, gauge_free=True, uses_delta=False,
             escalate=False),
    Relation("t3", "f(||A||_f) <= n f(w_(f,d)(|A|))", _t3, needs=("geometrically_convex",)),
    Relation("c3", "||A||_t2 <= sqrt(n) w_(t2,d)(|A|)", _c3, gauge_free=True),
    Relation("c4", "w_(t2,d)(A) >= ||A||_t2 / sqrt(n) for positive tuples", _c4, kinds=("positive",),
             gauge_free=True),
    Relation("t4", "(1/n) sum w_(d_m)(A_m) <= w_(f,d_agg)(A)", _t4, needs=("convex",)),
    Relation("c5", "sum f(w_(d_m)(A_m)) <= f(n w_(f,d_agg)(A))", _c5, needs=("convex",)),
    Relation("c6", "(1/sqrt n)(sum w(A_m)^2)^(1/2) <= w(A) and ||A||/(2 sqrt n) <= w(A)", _c6,
             gauge_free=True, uses_delta=False),
    Relation("t5", "f(w_(f,d)(A)) <= sum f(w_(d_m)(A_m)), d_m = d - tau_m", _t5, needs=("convex",)),
    Relation("c7", "w_(t^p,d)^p <= sum w_(d_m)(A_m)^p and w_(t^p,d) <= (sum ||A_m||^p)^(1/p)", _c7,
             needs=("power",)),
    Relation("c8", "w(A) <= ||A||", _c8, gauge_free=True, uses_delta=False, escalate=False, tol=TOL_EXACT),
    Relation("t6", "f(w_(f,d)(A)) <= sqrt(n) f(|| |A| ||_f)^(1/2) f(w_(f,d)(|A|))^(1/2)", _t6,
             needs=("geometrically_convex",)),
    Relation("t7", "f(w_(f,d)(A))^2 <= (n f(1)/2) f(w_(f,d*)(A*A+AA*))", _t7, needs=("geometrically_convex",)),
    Relation("c9", "w_(t^p,d)^(2p) <= (n/2) w_(t^p,d*)(A*A+AA*)^p, d* = d^2/n^(1/p)", _c9, needs=("power",)),
    Relation("c10", "w(A)^2 <= ||A*A+AA*||/2", _c10, gauge_free=True, uses_delta=False, escalate=False,
             tol=TOL_EXACT),
    Relation("t8", "w_(f,d)(Re A) <= w_(f,0)(A) and w_(f,d)(Im A) <= w_(f,0)(A)", _t8),
    Relation("t9a", "w_(f,d)(A) <= w_(f,d_r)(sec(a) Re A), d_r = d - ||Im A||_f", _t9a, kinds=SECTORIAL_KINDS,
             needs=GC),
    Relation("t9b", "w_(f,d)(A) <= w_(f,d_i)(csc(a) Im A), d_i = d - ||Re A||_f", _t9b, kinds=SECTORIAL_KINDS,
             needs=GC),
    Relation("t10a", "w_(f,d)(sec(g) Re A) <= w_(f,0)(A)", _t10a, kinds=SECTORIAL_KINDS),
    Relation("t10b", "w_(f,d)(csc(a) Im A) <= w_(f,0)(A)", _t10b, kinds=SECTORIAL_KINDS),
    Relation("c11a", "w(A) <= sec(a) w(Re A)", _c11a, kinds=SECTORIAL_KINDS, gauge_free=True, uses_delta=False),
    Relation("c11b", "w(A) <= csc(a) w(Im A)", _c11b, kinds=SECTORIAL_KINDS, gauge_free=True, uses_delta=False),
    Relation("c12", "||A*A+AA*|| / (2(sin^2 a + cos^2 g)) <= w(A)^2", _c12, kinds=SECTORIAL_KINDS,
             gauge_free=True, uses_delta=False, escalate=False, tol=TOL_EXACT),
    Relation("c13", "||A|| <= sqrt(sin^2 a + cos^2 g) w(A)", _c13, kinds=SECTORIAL_KINDS, gauge_free=True,
             uses_delta=False, escalate=False, tol=TOL_EXACT),
    Relation("prodinterp", "w(AB) <= (sin^2 a + cos^2 g) w(A) w(B)", _prodinterp, kinds=SECTORIAL_KINDS,
             gauge_free=True, uses_delta=False, escalate=False, tol=TOL_EXACT, needs_partner=True),
    Relation("incl4", "D_(f,d)(lA) = D_(f,d/|l|)(A)", _incl4, needs=("multiplicative",), escalate=False,
             tol=TOL_INCL),
    Relation("incl6", "D_(f,d)(A+B) in D_(f,d-||B||_f)(A) and D_(f,d-||A||_f)(B)", _incl6, needs=GC,
             escalate=False, tol=TOL_INCL, needs_partner=True),
    Relation("incl8", "D_(f,d)(A) = D_(f,d)(A*) for normal tuples", _incl8, kinds=NORMAL_KINDS, escalate=False,
             tol=TOL_INCL),
    Relation("incl9", "D_(f,d)(A*) in D_(f,d)(A) for hyponormal tuples", _incl9, kinds=NORMAL_KINDS,
             escalate=False, tol=TOL_INCL),
    Relation("incl11", "D_(f,d)(A) in D_(f,d*)(A*A)", _incl11, needs=("geometrically_convex",), escalate=False,
             tol=TOL_INCL),
    Relation("incl15", "D_(f,d)(A) = D_(f,d)(|A|)", _incl15, escalate=False, tol=TOL_INCL),
    Relation("incl17", "D_(f,d)(A) = D_(f,d)(|A|)", _incl15, escalate=False, tol=TOL_INCL),
    Relation("incl19", "D_(f,d)(A) in D_(f,d*)(A*A+AA*)", _incl19, needs=("geometrically_convex",),
             escalate=False, tol=TOL_INCL),
    Relation("incl21", "D_(f,d)(A) in D_(f,d_r)(sec(a) Re A)", _incl21, kinds=SECTORIAL_KINDS, needs=GC,
             escalate=False, tol=TOL_INCL),
    Relation("incl23", "D_(f,d)(A) in D_(f,d_i)(csc(a) Im A)", _incl23, kinds=SECTORIAL_KINDS, needs=GC,
             escalate=False, tol=TOL_INCL),
    Relation("incl_t5", "D_(f,d)(A) in D_(d_m)(A_m)", _incl_t5, needs=("convex",), escalate=False, tol=TOL_INCL),
    Relation("example_r2", "w_(t,d)(E12, E21) against the printed piecewise value", _example_r2,
             gauge_free=True, fixed_tuple=T.r2_example_tuple, own_deltas=(0.0, 0.5, 0.9, 1.2), escalate=False),
    Relation("example_pauli", "Pauli tuples: ||A|| = sqrt(n), w(A) = 1", _example_pauli, gauge_free=True,
             uses_delta=False, fixed_tuple=lambda: T.pauli_tuple(3)),
]}

RELATION_IDS = tuple(CATALOG)

EXAMPLE_IDS = ("example_r2", "example_pauli")


def applicable_ids(kind):
    """Default relation list for an ensemble kind (examples excluded)."""
    return tuple(r.id for r in CATALOG.values() if kind in r.kinds and r.id not in EXAMPLE_IDS)
