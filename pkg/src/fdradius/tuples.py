"""Operator tuples, their componentwise algebra and pointwise gauges."""

import hashlib
import json

import numpy as np

from . import linalg
from .errors import NonFinite, ShapeMismatch

__all__ = [
    "OperatorTuple", "unit_vector", "scale", "add", "adjoint_tuple", "re_tuple", "im_tuple",
    "modulus_tuple", "gram_tuple", "anticomm_tuple", "joint_norm", "f_vector_gauge",
    "f_form_gauge", "load_tuple", "dump_tuple", "tuple_from_json", "tuple_to_json",
    "SIGMA_X", "SIGMA_Y", "SIGMA_Z", "pauli_tuple", "r2_example_tuple",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


class OperatorTuple:
    """An immutable n-tuple of d x d complex matrices, stored as an (n, d, d) array."""

    __slots__ = ("_mats", "_fp")

    def __init__(self, matrices):
        mats = np.array(matrices, dtype=np.complex128, copy=True)
        if mats.ndim == 2:
            mats = mats[None]
        if mats.ndim != 3 or mats.shape[0] < 1 or mats.shape[1] != mats.shape[2]:
            raise ShapeMismatch(f"expected (n, d, d) matrices, got shape {mats.shape}")
        if not np.all(np.isfinite(mats)):
            raise NonFinite("tuple has non-finite entries")
        mats = np.ascontiguousarray(mats) + 0.0     # -0.0 -> +0.0 so equal tuples hash equally
        mats.setflags(write=False)
        self._mats = mats
        self._fp = None

    @property
    def mats(self):
        return self._mats

    @property
    def n(self):
        return self._mats.shape[0]

    @property
    def dim(self):
        return self._mats.shape[1]

    def __len__(self):
        return self.n

    def __getitem__(self, m):
        return self._mats[m]

    def __iter__(self):
        return iter(self._mats)

    @property
    def fingerprint(self):
        if self._fp is None:
            h = hashlib.sha1(str(self._mats.shape).encode())
            h.update(self._mats.tobytes())
            self._fp = h.hexdigest()
        return self._fp

    def __eq__(self, other):
        return isinstance(other, OperatorTuple) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        return f"OperatorTuple(n={self.n}, dim={self.dim})"

    def component(self, m):
        return OperatorTuple(self._mats[m][None])


def unit_vector(x, atol=1e-12):
    """Validate that ``x`` is a unit vector and return it as complex128."""
    x = np.asarray(x, dtype=np.complex128).ravel()
    if abs(np.linalg.norm(x) - 1.0) > atol:
        raise ValueError("vector is not of unit length")
    return x


def _check_pair(A, B):
    if A.n != B.n or A.dim != B.dim:
        raise ShapeMismatch(f"tuple shapes differ: ({A.n}, {A.dim}) vs ({B.n}, {B.dim})")


def _check_vec(A, x):
    x = np.asarray(x, dtype=np.complex128).ravel()
    if x.shape[0] != A.dim:
        raise ShapeMismatch(f"vector of length {x.shape[0]} for tuple of dim {A.dim}")
    return x


def scale(lam, A):
    return OperatorTuple(complex(lam) * A.mats)


def add(A, B):
    _check_pair(A, B)
    return OperatorTuple(A.mats + B.mats)


def _herm(M):
    return 0.5 * (M + np.conj(np.swapaxes(M, -1, -2)))


def adjoint_tuple(A):
    return OperatorTuple(np.conj(np.swapaxes(A.mats, -1, -2)))


def re_tuple(A):
    return OperatorTuple(_herm(A.mats))


def im_tuple(A):
    star = np.conj(np.swapaxes(A.mats, -1, -2))
    return OperatorTuple(_herm((A.mats - star) / 2j))


def modulus_tuple(A):
    star = np.conj(np.swapaxes(A.mats, -1, -2))
    return OperatorTuple([linalg.psd_sqrt(S) for S in star @ A.mats])


def gram_tuple(A):
    """``(A_1* A_1, ..., A_n* A_n)``."""
    star = np.conj(np.swapaxes(A.mats, -1, -2))
    return OperatorTuple(_herm(star @ A.mats))


def anticomm_tuple(A):
    """``(A_1* A_1 + A_1 A_1*, ...)``."""
    star = np.conj(np.swapaxes(A.mats, -1, -2))
    return OperatorTuple(_herm(star @ A.mats + A.mats @ star))


def joint_norm(A):
    """``||sum_m A_m* A_m||^{1/2}``, the Euclidean operator norm of the tuple."""
    star = np.conj(np.swapaxes(A.mats, -1, -2))
    S = _herm(np.sum(star @ A.mats, axis=0))
    lam = np.linalg.eigvalsh(S)[-1]
    return float(np.sqrt(max(lam, 0.0)))


def f_vector_gauge(A, x, f):
    """``||A x||_f = f^{-1}(sum_m f(||A_m x||))``."""
    x = _check_vec(A, x)
    return f.aggregate(np.linalg.norm(A.mats @ x, axis=1))


def f_form_gauge(A, x, f):
    """``|<A x, x>|_f = f^{-1}(sum_m f(|<A_m x, x>|))``."""
    x = _check_vec(A, x)
    return f.aggregate(np.abs((A.mats @ x) @ x.conj()))


def pauli_tuple(n=3):
    if n not in (2, 3):
        raise ValueError("Pauli tuples have length 2 or 3")
    return OperatorTuple([SIGMA_X, SIGMA_Y, SIGMA_Z][:n])


def r2_example_tuple():
    """The pair of 2 x 2 nilpotent shifts ``(E_12, E_21)``."""
    return OperatorTuple([[[0, 1], [0, 0]], [[0, 0], [1, 0]]])


def tuple_to_json(A):
    mats = [[[[float(z.real), float(z.imag)] for z in row] for row in M] for M in A.mats]
    return {"dim": A.dim, "matrices": mats}


def tuple_from_json(obj):
    try:
        dim = int(obj["dim"])
        raw = obj["matrices"]
    except (KeyError, TypeError) as exc:
        raise ValueError("tuple object needs 'dim' and 'matrices'") from exc
    if not raw:
        raise ShapeMismatch("tuple has no matrices")
    mats = []
    for M in raw:
        if len(M) != dim or any(len(row) != dim for row in M):
            raise ShapeMismatch(f"matrix is not {dim} x {dim}")
        mats.append([[complex(float(e[0]), float(e[1])) for e in row] for row in M])
    return OperatorTuple(mats)


def load_tuple(path):
    with open(path) as fh:
        return tuple_from_json(json.load(fh))


def dump_tuple(A, path):
    with open(path, "w") as fh:
        json.dump(tuple_to_json(A), fh)
        fh.write("\n")
