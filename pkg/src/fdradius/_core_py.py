"""Pure numpy implementation of the hot kernels.

Mirrors ``_core.pyx`` step for step so the two backends agree up to
floating-point reassociation. The numpy version additionally accepts an
arbitrary gauge through ``f``/``fprime`` callables.
"""

import numpy as np

FORM = 0
VECTOR = 1

_RESTORE_ITERS = 50
_ACTIVE_RTOL = 1e-6


def moduli(mats, X):
    """Return ``(|<A_m x, x>|, ||A_m x||)`` for every row ``x`` of ``X``, each of shape (N, n)."""
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    X = np.ascontiguousarray(X, dtype=np.complex128)
    AX = np.einsum("mij,sj->smi", mats, X)
    forms = np.abs(np.einsum("si,smi->sm", X.conj(), AX))
    vecs = np.linalg.norm(AX, axis=2)
    return forms, vecs


def _power_maps(p):
    if p == 1.0:
        return (lambda s: s), (lambda s: np.ones_like(s))
    if p == 2.0:
        return (lambda s: s * s), (lambda s: 2.0 * s)
    return (lambda s: s ** p), (lambda s: p * s ** (p - 1.0))


class _Problem:
    def __init__(self, mats, objective, f, fprime, eps):
        self.A = mats
        self.AH = np.conj(np.swapaxes(mats, 1, 2))
        self.objective = objective
        self.f = f
        self.fprime = fprime
        self.eps = eps

    def _ax(self, X):
        return np.einsum("mij,sj->smi", self.A, X)

    def vec_value(self, X):
        return np.sum(self.f(np.linalg.norm(self._ax(X), axis=2)), axis=1)

    def vec_grad(self, X):
        AX = self._ax(X)
        nt = np.sqrt(np.sum(AX.real ** 2 + AX.imag ** 2, axis=2) + self.eps ** 2)
        w = self.fprime(nt) / nt
        AHAX = np.einsum("mij,smj->smi", self.AH, AX)
        return np.einsum("sm,smi->si", w, AHAX)

    def form_value(self, X):
        AX = self._ax(X)
        z = np.einsum("si,smi->sm", X.conj(), AX)
        return np.sum(self.f(np.abs(z)), axis=1)

    def form_grad(self, X):
        AX = self._ax(X)
        AHX = np.einsum("mij,sj->smi", self.AH, X)
        z = np.einsum("si,smi->sm", X.conj(), AX)
        st = np.sqrt(z.real ** 2 + z.imag ** 2 + self.eps ** 2)
        w = self.fprime(st) / st
        return np.einsum("sm,smi->si", w * z.conj(), AX) + np.einsum("sm,smi->si", w * z, AHX)

    def value(self, X):
        return self.form_value(X) if self.objective == FORM else self.vec_value(X)

    def grad(self, X):
        return self.form_grad(X) if self.objective == FORM else self.vec_grad(X)


def _tangent(X, G):
    return G - np.real(np.sum(X.conj() * G, axis=1))[:, None] * X


def _normalize(X):
    return X / np.linalg.norm(X, axis=1)[:, None]


def _restore(prob, Y, level_c):
    """Push rows of ``Y`` back into ``{sum f(||A_m y||) >= level_c}``; returns (Y, ok)."""
    Y = Y.copy()
    ok = np.zeros(Y.shape[0], dtype=bool)
    todo = np.arange(Y.shape[0])
    for _ in range(_RESTORE_ITERS + 1):
        if todo.size == 0:
            break
        G = prob.vec_value(Y[todo])
        done = G >= level_c
        ok[todo[done]] = True
        todo = todo[~done]
        G = G[~done]
        if todo.size == 0:
            break
        H = _tangent(Y[todo], prob.vec_grad(Y[todo]))
        hn2 = np.sum(np.abs(H) ** 2, axis=1)
        alive = hn2 > 1e-28
        todo, G, H, hn2 = todo[alive], G[alive], H[alive], hn2[alive]
        eta = 1.01 * (level_c - G) / hn2
        eta = np.minimum(eta, 0.5 / np.sqrt(hn2))
        Y[todo] = _normalize(Y[todo] + eta[:, None] * H)
    return Y, ok


def ascend(mats, X0, objective, level_c, max_iters, step0, tol, eps, p=1.0, f=None, fprime=None):
    """Multi-start projected ascent on the unit sphere.

    Maximizes ``sum_m f(q_m(x))`` where ``q_m`` is ``|<A_m x, x>|`` (FORM) or
    ``||A_m x||`` (VECTOR), subject to ``sum_m f(||A_m x||) >= level_c`` when
    ``level_c > 0``. Returns ``(X, values, iters, converged, feasible)``; rows
    that could not be made feasible carry ``values = -inf``.
    """
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    if f is None:
        f, fprime = _power_maps(float(p))
    prob = _Problem(mats, objective, f, fprime, eps)
    X = _normalize(np.array(X0, dtype=np.complex128))
    S = X.shape[0]
    constrained = level_c > 0.0
    feasible = np.ones(S, dtype=bool)
    if constrained:
        X, feasible = _restore(prob, X, level_c)
    phi = np.full(S, -np.inf)
    if feasible.any():
        phi[feasible] = prob.value(X[feasible])
    t = np.full(S, float(step0))
    iters = np.zeros(S, dtype=np.int64)
    conv = np.zeros(S, dtype=bool)
    active = feasible.copy()

    for _ in range(max_iters):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        iters[idx] += 1
        Xa = X[idx]
        g = _tangent(Xa, prob.grad(Xa))
        gn = np.linalg.norm(g, axis=1)
        flat = gn < 1e-14
        conv[idx[flat]] = True
        active[idx[flat]] = False
        keep = ~flat
        idx, Xa, g, gn = idx[keep], Xa[keep], g[keep], gn[keep]
        if idx.size == 0:
            continue
        D = g / gn[:, None]
        if constrained:
            G = prob.vec_value(Xa)
            on_edge = G <= level_c * (1.0 + _ACTIVE_RTOL)
            if on_edge.any():
                e = np.flatnonzero(on_edge)
                H = _tangent(Xa[e], prob.vec_grad(Xa[e]))
                hd = np.real(np.sum(H.conj() * D[e], axis=1))
                hn2 = np.sum(np.abs(H) ** 2, axis=1)
                out = (hd < 0.0) & (hn2 > 1e-28)
                if out.any():
                    e2 = e[out]
                    De = D[e2] - (hd[out] / hn2[out])[:, None] * H[out]
                    dn = np.linalg.norm(De, axis=1)
                    stuck = dn < 1e-14
                    conv[idx[e2[stuck]]] = True
                    active[idx[e2[stuck]]] = False
                    dn[stuck] = 1.0
                    D[e2] = De / dn[:, None]
            live = active[idx]
            idx, Xa, D = idx[live], Xa[live], D[live]
            if idx.size == 0:
                continue
        ta = t[idx]
        Y = _normalize(Xa + ta[:, None] * D)
        ok = np.ones(idx.size, dtype=bool)
        if constrained:
            Gy = prob.vec_value(Y)
            bad = np.flatnonzero(Gy < level_c)
            if bad.size:
                Yr, okr = _restore(prob, Y[bad], level_c)
                Y[bad] = Yr
                ok[bad] = okr
        phiy = np.full(idx.size, -np.inf)
        if ok.any():
            phiy[ok] = prob.value(Y[ok])
        better = ok & (phiy > phi[idx])
        acc = idx[better]
        X[acc] = Y[better]
        phi[acc] = phiy[better]
        t[acc] = np.minimum(2.0 * t[acc], 1.0)
        rej = idx[~better]
        t[rej] *= 0.5
        small = rej[t[rej] < tol]
        conv[small] = True
        active[small] = False
    return X, phi, iters, conv, feasible
