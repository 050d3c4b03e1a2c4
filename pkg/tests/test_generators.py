import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fdradius.errors import InvalidSpec
from fdradius.generators import KINDS, EnsembleSpec, SectorParams, commutes, generate, is_normal, sector_check
from fdradius.tuples import SIGMA_X, SIGMA_Y, SIGMA_Z

SECTORS = {"sectorial_normal": SectorParams(0.2, 0.9), "accretive_dissipative": SectorParams(0.1, 1.0)}


def spec_for(kind, **kw):
    if kind == "pauli":
        kw.update(n=kw.get("n", 3) if kw.get("n", 3) in (2, 3) else 3, dim=2)
    return EnsembleSpec(kind, sector=SECTORS.get(kind), **kw)


def test_pauli_exact():
    (A,) = generate(EnsembleSpec("pauli", n=3, dim=2))
    assert np.array_equal(A.mats, [SIGMA_X, SIGMA_Y, SIGMA_Z])


def test_positive_eigenvalues_seed1():
    (A,) = generate(EnsembleSpec("positive", n=1, dim=3, rng_seed=1))
    assert np.min(np.linalg.eigvalsh(A[0])) >= 1e-6 - 1e-12


def test_sectorial_d4_in_sector():
    for A in generate(EnsembleSpec("sectorial_normal", n=2, dim=4, count=5, sector=SectorParams(0.2, 0.9))):
        assert all(sector_check(M, SectorParams(0.2, 0.9)) for M in A)


def test_sector_check_examples():
    D = np.diag([np.exp(0.3j), 2 * np.exp(0.5j)])
    assert sector_check(D, SectorParams(0.2, 0.9))
    assert not sector_check(SIGMA_Z, SectorParams(0.0, 0.1))
    with pytest.raises(ValueError):
        sector_check(D, SectorParams(0.2, 0.9), grid=100)


def test_accretive_batch_50():
    sec = SectorParams(0.1, 1.0)
    mats = [M for A in generate(EnsembleSpec("accretive_dissipative", n=2, dim=3, count=25, sector=sec)) for M in A]
    assert len(mats) == 50 and all(sector_check(M, sec) for M in mats)


def test_invalid_specs():
    bad = [EnsembleSpec("nope"), EnsembleSpec("ginibre", count=0), EnsembleSpec("pauli", n=4, dim=2),
           EnsembleSpec("sectorial_normal"), EnsembleSpec("accretive_dissipative", sector=SectorParams(0.0, 1.0))]
    for spec in bad:
        with pytest.raises(InvalidSpec):
            generate(spec)
    with pytest.raises(InvalidSpec):
        SectorParams(0.5, 0.2)
    with pytest.raises(InvalidSpec):
        SectorParams(0.1, 1.6)


seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=20)
@given(st.sampled_from(KINDS), seeds, st.integers(1, 3), st.integers(2, 4))
def test_deterministic(kind, seed, n, d):
    spec = spec_for(kind, n=n, dim=d, count=3, rng_seed=seed)
    a, b = generate(spec), generate(spec)
    assert all(x.mats.tobytes() == y.mats.tobytes() for x, y in zip(a, b))


@settings(max_examples=20)
@given(st.sampled_from(["hermitian", "positive", "normal", "unitary", "commuting", "sectorial_normal",
                        "accretive_dissipative"]), seeds, st.integers(1, 3), st.integers(2, 5))
def test_class_contracts(kind, seed, n, d):
    for A in generate(spec_for(kind, n=n, dim=d, count=2, rng_seed=seed)):
        for M in A:
            assert np.linalg.norm(M @ M.conj().T - M.conj().T @ M) <= 1e-9 * (1 + np.linalg.norm(M) ** 2)
            assert is_normal(M)
        if kind == "commuting":
            assert all(commutes(M, N) for M in A for N in A)
        if kind == "unitary":
            assert all(np.allclose(M.conj().T @ M, np.eye(d)) for M in A)
        if kind in SECTORS:
            for M in A:
                assert np.min(np.linalg.eigvalsh(0.5 * (M + M.conj().T))) >= -1e-9
                assert sector_check(M, SECTORS[kind])
