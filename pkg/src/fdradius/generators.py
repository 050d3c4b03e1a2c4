"""Seeded ensembles of operator tuples, one per hypothesis class."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidSpec
from .tuples import OperatorTuple, pauli_tuple

__all__ = ["KINDS", "SectorParams", "EnsembleSpec", "generate", "sector_check", "is_normal", "commutes"]

KINDS = ("ginibre", "hermitian", "positive", "normal", "unitary", "commuting", "pauli",
         "sectorial_normal", "accretive_dissipative")

RADIUS_BAND = (0.2, 2.0)


@dataclass(frozen=True)
class SectorParams:
    """Arguments of ``W(A)`` lie in ``[gamma, alpha]``, ``0 <= gamma <= alpha < pi/2``."""

    gamma: float = 0.0
    alpha: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.gamma <= self.alpha < np.pi / 2):
            raise InvalidSpec(f"need 0 <= gamma <= alpha < pi/2, got ({self.gamma}, {self.alpha})")


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    n: int = 2
    dim: int = 3
    count: int = 1
    rng_seed: int = 0
    sector: Optional[SectorParams] = field(default=None)

    def validate(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown ensemble kind {self.kind!r}")
        if self.count < 1 or self.n < 1 or self.dim < 1:
            raise InvalidSpec("count, n and dim must be positive")
        if self.kind == "pauli" and (self.dim != 2 or self.n not in (2, 3)):
            raise InvalidSpec("pauli ensembles need dim=2 and n in {2, 3}")
        if self.kind in ("sectorial_normal", "accretive_dissipative"):
            if self.sector is None:
                raise InvalidSpec(f"{self.kind} needs sector parameters")
            if self.kind == "accretive_dissipative" and not self.sector.gamma > 0:
                raise InvalidSpec("accretive_dissipative needs gamma > 0")

    def to_dict(self):
        out = {"kind": self.kind, "n": self.n, "dim": self.dim, "count": self.count, "rng_seed": self.rng_seed}
        if self.sector is not None:
            out["gamma"] = self.sector.gamma
            out["alpha"] = self.sector.alpha
        return out


def _ginibre(rng, d):
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)


def _haar(rng, d):
    Q, R = np.linalg.qr(_ginibre(rng, d))
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph


def _normal_from(U, eig):
    return (U * eig) @ U.conj().T


def _sector_eigs(rng, d, sector):
    r = rng.uniform(*RADIUS_BAND, d)
    phi = rng.uniform(sector.gamma, sector.alpha, d)
    return r * np.exp(1j * phi)


def _one(kind, rng, n, d, sector):
    if kind == "ginibre":
        return [_ginibre(rng, d) for _ in range(n)]
    if kind == "hermitian":
        out = []
        for _ in range(n):
            G = _ginibre(rng, d)
            out.append(0.5 * (G + G.conj().T))
        return out
    if kind == "positive":
        out = []
        for _ in range(n):
            G = _ginibre(rng, d)
            out.append(G.conj().T @ G + 1e-6 * np.eye(d))
        return out
    if kind == "normal":
        out = []
        for _ in range(n):
            eig = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            out.append(_normal_from(_haar(rng, d), eig))
        return out
    if kind == "unitary":
        return [_haar(rng, d) for _ in range(n)]
    if kind == "commuting":
        # polynomials in one normal matrix N: all share N's eigenbasis
        U = _haar(rng, d)
        lam = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        out = []
        for _ in range(n):
            c = (rng.standard_normal(3) + 1j * rng.standard_normal(3)) / 2.0
            out.append(_normal_from(U, c[0] + c[1] * lam + c[2] * lam ** 2))
        return out
    if kind in ("sectorial_normal", "accretive_dissipative"):
        return [_normal_from(_haar(rng, d), _sector_eigs(rng, d, sector)) for _ in range(n)]
    raise InvalidSpec(f"unknown ensemble kind {kind!r}")


def generate(spec):
    """Return ``spec.count`` tuples; identical specs give bitwise-identical output."""
    spec.validate()
    if spec.kind == "pauli":
        return [pauli_tuple(spec.n) for _ in range(spec.count)]
    children = np.random.SeedSequence(int(spec.rng_seed)).spawn(spec.count)
    out = []
    for ss in children:
        rng = np.random.default_rng(ss)
        out.append(OperatorTuple(_one(spec.kind, rng, spec.n, spec.dim, spec.sector)))
    return out


def is_normal(M, atol=1e-9):
    M = np.asarray(M)
    return bool(np.linalg.norm(M @ M.conj().T - M.conj().T @ M) <= atol * (1.0 + np.linalg.norm(M) ** 2))


def commutes(M, N, atol=1e-9):
    M, N = np.asarray(M), np.asarray(N)
    return bool(np.linalg.norm(M @ N - N @ M) <= atol * (1.0 + np.linalg.norm(M) * np.linalg.norm(N)))


def sector_check(A, sector, grid=720):
    """Check ``W(A)`` against the sector by sweeping its boundary.

    For each direction ``theta`` the eigenvectors of the extreme eigenvalues
    of ``Re(e^{i theta} A)`` give boundary points ``<A x, x>`` of ``W(A)``.
    """
    if grid < 360:
        raise ValueError("grid must be >= 360")
    A = np.asarray(A, dtype=np.complex128)
    thetas = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    ph = np.exp(1j * thetas)[:, None, None]
    H = 0.5 * (ph * A + np.conj(ph) * A.conj().T)
    _, V = np.linalg.eigh(H)
    X = np.concatenate([V[:, :, 0], V[:, :, -1]])
    pts = np.einsum("si,ij,sj->s", X.conj(), A, X)
    keep = np.abs(pts) >= 1e-10
    args = np.angle(pts[keep])
    return bool(np.all((args >= sector.gamma - 1e-8) & (args <= sector.alpha + 1e-8)))
