# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: batched moduli and power-gauge sphere ascent.

Same algorithm as ``_core_py``; matrices and vectors are split into real
and imaginary planes so the inner loops are plain double arithmetic.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, pow

cnp.import_array()

cdef enum:
    RESTORE_ITERS = 50

cdef double ACTIVE_RTOL = 1e-6


cdef struct Work:
    int n
    int d
    double p
    double eps
    const double* Ar
    const double* Ai
    double* axr     # (n, d)  A_m x
    double* axi
    double* ahr     # (n, d)  A_m^H x or A_m^H A_m x
    double* ahi
    double* zr      # (n,)
    double* zi


cdef inline double fpow(double s, double p) noexcept nogil:
    if p == 1.0:
        return s
    if p == 2.0:
        return s * s
    return pow(s, p)


cdef inline double wfac(double s, double p) noexcept nogil:
    # f'(s) / s for f = t^p
    if p == 1.0:
        return 1.0 / s
    if p == 2.0:
        return 2.0
    return p * pow(s, p - 2.0)


cdef inline void apply_a(Work* w, const double* xr, const double* xi) noexcept nogil:
    cdef int n = w.n, d = w.d, m, i, j, off
    cdef double sr, si, ar, ai
    for m in range(n):
        for i in range(d):
            sr = 0.0
            si = 0.0
            off = (m * d + i) * d
            for j in range(d):
                ar = w.Ar[off + j]
                ai = w.Ai[off + j]
                sr += ar * xr[j] - ai * xi[j]
                si += ar * xi[j] + ai * xr[j]
            w.axr[m * d + i] = sr
            w.axi[m * d + i] = si


cdef inline void apply_ah(Work* w, const double* vr, const double* vi, int per_m) noexcept nogil:
    # ah[m] = A_m^H v_m  (per_m) or A_m^H v  (shared v)
    cdef int n = w.n, d = w.d, m, i, j, off, vo
    cdef double sr, si, ar, ai
    for m in range(n):
        vo = m * d if per_m else 0
        for i in range(d):
            sr = 0.0
            si = 0.0
            for j in range(d):
                off = (m * d + j) * d + i
                ar = w.Ar[off]
                ai = -w.Ai[off]
                sr += ar * vr[vo + j] - ai * vi[vo + j]
                si += ar * vi[vo + j] + ai * vr[vo + j]
            w.ahr[m * d + i] = sr
            w.ahi[m * d + i] = si


cdef double vec_value(Work* w, const double* xr, const double* xi) noexcept nogil:
    cdef int m, i, d = w.d
    cdef double tot = 0.0, s
    apply_a(w, xr, xi)
    for m in range(w.n):
        s = 0.0
        for i in range(d):
            s += w.axr[m * d + i] * w.axr[m * d + i] + w.axi[m * d + i] * w.axi[m * d + i]
        tot += fpow(sqrt(s), w.p)
    return tot


cdef void vec_grad(Work* w, const double* xr, const double* xi, double* gr, double* gi) noexcept nogil:
    cdef int m, i, d = w.d
    cdef double s, c
    apply_a(w, xr, xi)
    apply_ah(w, w.axr, w.axi, 1)
    for i in range(d):
        gr[i] = 0.0
        gi[i] = 0.0
    for m in range(w.n):
        s = 0.0
        for i in range(d):
            s += w.axr[m * d + i] * w.axr[m * d + i] + w.axi[m * d + i] * w.axi[m * d + i]
        c = wfac(sqrt(s + w.eps * w.eps), w.p)
        for i in range(d):
            gr[i] += c * w.ahr[m * d + i]
            gi[i] += c * w.ahi[m * d + i]


cdef inline void form_z(Work* w, const double* xr, const double* xi) noexcept nogil:
    cdef int m, i, d = w.d
    cdef double sr, si
    apply_a(w, xr, xi)
    for m in range(w.n):
        sr = 0.0
        si = 0.0
        for i in range(d):
            # conj(x_i) * (Ax)_i
            sr += xr[i] * w.axr[m * d + i] + xi[i] * w.axi[m * d + i]
            si += xr[i] * w.axi[m * d + i] - xi[i] * w.axr[m * d + i]
        w.zr[m] = sr
        w.zi[m] = si


cdef double form_value(Work* w, const double* xr, const double* xi) noexcept nogil:
    cdef int m
    cdef double tot = 0.0
    form_z(w, xr, xi)
    for m in range(w.n):
        tot += fpow(sqrt(w.zr[m] * w.zr[m] + w.zi[m] * w.zi[m]), w.p)
    return tot


cdef void form_grad(Work* w, const double* xr, const double* xi, double* gr, double* gi) noexcept nogil:
    cdef int m, i, d = w.d
    cdef double c, zr, zi, ar, ai, hr, hi
    form_z(w, xr, xi)
    apply_ah(w, xr, xi, 0)
    for i in range(d):
        gr[i] = 0.0
        gi[i] = 0.0
    for m in range(w.n):
        zr = w.zr[m]
        zi = w.zi[m]
        c = wfac(sqrt(zr * zr + zi * zi + w.eps * w.eps), w.p)
        for i in range(d):
            ar = w.axr[m * d + i]
            ai = w.axi[m * d + i]
            hr = w.ahr[m * d + i]
            hi = w.ahi[m * d + i]
            # conj(z) * Ax + z * A^H x
            gr[i] += c * ((zr * ar + zi * ai) + (zr * hr - zi * hi))
            gi[i] += c * ((zr * ai - zi * ar) + (zr * hi + zi * hr))


cdef inline double re_dot(const double* ar, const double* ai, const double* br, const double* bi, int d) noexcept nogil:
    cdef int i
    cdef double s = 0.0
    for i in range(d):
        s += ar[i] * br[i] + ai[i] * bi[i]
    return s


cdef inline void tangent(const double* xr, const double* xi, double* gr, double* gi, int d) noexcept nogil:
    cdef double c = re_dot(xr, xi, gr, gi, d)
    cdef int i
    for i in range(d):
        gr[i] -= c * xr[i]
        gi[i] -= c * xi[i]


cdef inline void normalize(double* xr, double* xi, int d) noexcept nogil:
    cdef double s = sqrt(re_dot(xr, xi, xr, xi, d))
    cdef int i
    for i in range(d):
        xr[i] /= s
        xi[i] /= s


cdef int restore(Work* w, double* yr, double* yi, double level_c, double* hr, double* hi) noexcept nogil:
    cdef int k, i, d = w.d
    cdef double G, hn2, eta, cap
    for k in range(RESTORE_ITERS + 1):
        G = vec_value(w, yr, yi)
        if G >= level_c:
            return 1
        if k == RESTORE_ITERS:
            break
        vec_grad(w, yr, yi, hr, hi)
        tangent(yr, yi, hr, hi, d)
        hn2 = re_dot(hr, hi, hr, hi, d)
        if not hn2 > 1e-28:
            return 0
        eta = 1.01 * (level_c - G) / hn2
        cap = 0.5 / sqrt(hn2)
        if eta > cap:
            eta = cap
        for i in range(d):
            yr[i] += eta * hr[i]
            yi[i] += eta * hi[i]
        normalize(yr, yi, d)
    return 0


cdef inline double obj_value(Work* w, int objective, const double* xr, const double* xi) noexcept nogil:
    if objective == 0:
        return form_value(w, xr, xi)
    return vec_value(w, xr, xi)


cdef inline void obj_grad(Work* w, int objective, const double* xr, const double* xi, double* gr, double* gi) noexcept nogil:
    if objective == 0:
        form_grad(w, xr, xi, gr, gi)
    else:
        vec_grad(w, xr, xi, gr, gi)


def moduli(mats, X):
    """Return ``(|<A_m x, x>|, ||A_m x||)`` for every row of ``X``; shapes (N, n)."""
    A = np.ascontiguousarray(mats, dtype=np.complex128)
    Xc = np.ascontiguousarray(X, dtype=np.complex128)
    cdef int n = A.shape[0], d = A.shape[1]
    cdef Py_ssize_t N = Xc.shape[0], s
    cdef double[:, :, ::1] Ar = np.array(A.real, order="C")
    cdef double[:, :, ::1] Ai = np.array(A.imag, order="C")
    cdef double[:, ::1] Xr = np.array(Xc.real, order="C")
    cdef double[:, ::1] Xi = np.array(Xc.imag, order="C")
    forms = np.empty((N, n))
    vecs = np.empty((N, n))
    cdef double[:, ::1] F = forms
    cdef double[:, ::1] V = vecs
    cdef double[::1] axr = np.empty(n * d)
    cdef double[::1] axi = np.empty(n * d)
    cdef double[::1] zr = np.empty(n)
    cdef double[::1] zi = np.empty(n)
    cdef Work w
    cdef int m, i
    cdef double sv
    w.n = n
    w.d = d
    w.p = 1.0
    w.eps = 0.0
    w.Ar = &Ar[0, 0, 0]
    w.Ai = &Ai[0, 0, 0]
    w.axr = &axr[0]
    w.axi = &axi[0]
    w.ahr = NULL
    w.ahi = NULL
    w.zr = &zr[0]
    w.zi = &zi[0]
    with nogil:
        for s in range(N):
            form_z(&w, &Xr[s, 0], &Xi[s, 0])
            for m in range(n):
                F[s, m] = sqrt(w.zr[m] * w.zr[m] + w.zi[m] * w.zi[m])
                sv = 0.0
                for i in range(d):
                    sv += w.axr[m * d + i] * w.axr[m * d + i] + w.axi[m * d + i] * w.axi[m * d + i]
                V[s, m] = sqrt(sv)
    return forms, vecs


def ascend(mats, X0, int objective, double level_c, int max_iters, double step0, double tol,
           double eps, double p=1.0):
    """Power-gauge multi-start projected ascent; see ``_core_py.ascend``."""
    A = np.ascontiguousarray(mats, dtype=np.complex128)
    X = np.array(X0, dtype=np.complex128)
    cdef int n = A.shape[0], d = A.shape[1]
    cdef Py_ssize_t S = X.shape[0], s
    cdef double[:, :, ::1] Ar = np.array(A.real, order="C")
    cdef double[:, :, ::1] Ai = np.array(A.imag, order="C")
    cdef double[:, ::1] Xr = np.array(X.real, order="C")
    cdef double[:, ::1] Xi = np.array(X.imag, order="C")
    phi_arr = np.full(S, -np.inf)
    iters_arr = np.zeros(S, dtype=np.int64)
    conv_arr = np.zeros(S, dtype=np.uint8)
    feas_arr = np.zeros(S, dtype=np.uint8)
    cdef double[::1] phi_v = phi_arr
    cdef long long[::1] it_v = iters_arr
    cdef unsigned char[::1] conv_v = conv_arr
    cdef unsigned char[::1] feas_v = feas_arr
    cdef double[::1] buf = np.empty(4 * n * d + 2 * n + 10 * d)
    cdef Work w
    cdef double* base = &buf[0]
    w.n = n
    w.d = d
    w.p = p
    w.eps = eps
    w.Ar = &Ar[0, 0, 0]
    w.Ai = &Ai[0, 0, 0]
    w.axr = base
    w.axi = base + n * d
    w.ahr = base + 2 * n * d
    w.ahi = base + 3 * n * d
    w.zr = base + 4 * n * d
    w.zi = base + 4 * n * d + n
    cdef double* gr = base + 4 * n * d + 2 * n
    cdef double* gi = gr + d
    cdef double* hr = gi + d
    cdef double* hi = hr + d
    cdef double* yr = hi + d
    cdef double* yi = yr + d
    cdef double* dr = yi + d
    cdef double* di = dr + d
    cdef double* xr
    cdef double* xi
    cdef int constrained = level_c > 0.0
    cdef int it, i, ok
    cdef double t, phi, phiy, gn, G, hd, hn2, dn
    with nogil:
        for s in range(S):
            xr = &Xr[s, 0]
            xi = &Xi[s, 0]
            normalize(xr, xi, d)
            if constrained:
                if not restore(&w, xr, xi, level_c, hr, hi):
                    continue
            feas_v[s] = 1
            phi = obj_value(&w, objective, xr, xi)
            t = step0
            it = 0
            while it < max_iters:
                it += 1
                obj_grad(&w, objective, xr, xi, gr, gi)
                tangent(xr, xi, gr, gi, d)
                gn = sqrt(re_dot(gr, gi, gr, gi, d))
                if gn < 1e-14:
                    conv_v[s] = 1
                    break
                for i in range(d):
                    dr[i] = gr[i] / gn
                    di[i] = gi[i] / gn
                if constrained:
                    G = vec_value(&w, xr, xi)
                    if G <= level_c * (1.0 + ACTIVE_RTOL):
                        vec_grad(&w, xr, xi, hr, hi)
                        tangent(xr, xi, hr, hi, d)
                        hd = re_dot(hr, hi, dr, di, d)
                        hn2 = re_dot(hr, hi, hr, hi, d)
                        if hd < 0.0 and hn2 > 1e-28:
                            for i in range(d):
                                dr[i] -= hd / hn2 * hr[i]
                                di[i] -= hd / hn2 * hi[i]
                            dn = sqrt(re_dot(dr, di, dr, di, d))
                            if dn < 1e-14:
                                conv_v[s] = 1
                                break
                            for i in range(d):
                                dr[i] /= dn
                                di[i] /= dn
                for i in range(d):
                    yr[i] = xr[i] + t * dr[i]
                    yi[i] = xi[i] + t * di[i]
                normalize(yr, yi, d)
                ok = 1
                if constrained:
                    if vec_value(&w, yr, yi) < level_c:
                        ok = restore(&w, yr, yi, level_c, hr, hi)
                if ok:
                    phiy = obj_value(&w, objective, yr, yi)
                if ok and phiy > phi:
                    for i in range(d):
                        xr[i] = yr[i]
                        xi[i] = yi[i]
                    phi = phiy
                    t = 2.0 * t
                    if t > 1.0:
                        t = 1.0
                else:
                    t *= 0.5
                    if t < tol:
                        conv_v[s] = 1
                        break
            phi_v[s] = phi
            it_v[s] = it
    Xout = np.asarray(Xr) + 1j * np.asarray(Xi)
    return Xout, phi_arr, iters_arr, conv_arr.astype(bool), feas_arr.astype(bool)
