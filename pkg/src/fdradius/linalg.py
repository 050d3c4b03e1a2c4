"""Dense complex matrix primitives.

Everything here works on small square ``complex128`` arrays. Hermitian
eigenproblems go through LAPACK (``numpy.linalg.eigh``) after explicit
symmetrization.
"""

import numpy as np

from .errors import NonFinite, NotPSD

__all__ = ["adjoint", "hermitian_part", "hermitian_eig", "psd_sqrt", "op_norm", "is_hermitian"]


def _as_square(M):
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M


def adjoint(M):
    """Conjugate transpose of ``M``."""
    return _as_square(M).conj().T.copy()


def hermitian_part(M):
    """Return ``(M + M*)/2``."""
    M = _as_square(M)
    return 0.5 * (M + M.conj().T)


def is_hermitian(M, rtol=1e-10):
    M = _as_square(M)
    scale = 1.0 + np.max(np.abs(M), initial=0.0)
    return bool(np.max(np.abs(M - M.conj().T), initial=0.0) <= rtol * scale)


def hermitian_eig(M):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, V)`` with ``w`` ascending and the columns of ``V``
    orthonormal, so that ``M @ V[:, k] == w[k] * V[:, k]``.
    """
    M = _as_square(M)
    if not np.all(np.isfinite(M)):
        raise NonFinite("matrix has non-finite entries")
    w, V = np.linalg.eigh(hermitian_part(M))
    return w, V


def psd_sqrt(M):
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues down to ``-1e-10 * (1 + ||M||)`` are treated as roundoff and
    clamped to zero; anything more negative raises :class:`NotPSD`.
    """
    w, V = hermitian_eig(M)
    scale = 1.0 + np.max(np.abs(w), initial=0.0)
    if w.size and w[0] < -1e-10 * scale:
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} is negative")
    w = np.clip(w, 0.0, None)
    R = (V * np.sqrt(w)) @ V.conj().T
    return hermitian_part(R)


def op_norm(M):
    """Spectral norm (largest singular value)."""
    M = _as_square(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))
