import numpy as np
import pytest
from hypothesis import given, strategies as st

from fdradius import tuples as T
from fdradius.errors import NonFinite, ShapeMismatch
from fdradius.gauge import identity, power
from fdradius.generators import EnsembleSpec, generate

from conftest import random_matrix, random_unit

SX, SY, SZ = T.SIGMA_X, T.SIGMA_Y, T.SIGMA_Z
GAUGES = [identity(), power(2), power(3)]


def test_construction_errors():
    with pytest.raises(ShapeMismatch):
        T.OperatorTuple(np.zeros((2, 2, 3)))
    with pytest.raises(NonFinite):
        T.OperatorTuple([[[np.inf, 0], [0, 1]]])
    A = T.pauli_tuple(3)
    assert A.n == 3 and A.dim == 2
    with pytest.raises(ValueError):
        A.mats[0, 0, 0] = 5


def test_scale_examples():
    A = T.pauli_tuple(3)
    assert not np.any(T.scale(0, A).mats)
    assert np.allclose(T.scale(2, T.OperatorTuple([SX])).mats[0], [[0, 2], [2, 0]])
    assert np.allclose(T.scale(1j, T.OperatorTuple([SZ])).mats[0], np.diag([1j, -1j]))


def test_add_examples():
    A = T.OperatorTuple([SX, SY])
    assert T.add(A, T.scale(0, A)) == A
    assert np.allclose(T.add(T.OperatorTuple([SX]), T.OperatorTuple([SX])).mats[0], 2 * SX)
    S = T.add(A, T.OperatorTuple([SY, SX]))
    assert np.allclose(S.mats, [SX + SY, SY + SX])
    with pytest.raises(ShapeMismatch):
        T.add(A, T.pauli_tuple(3))


def test_parts_examples():
    assert T.re_tuple(T.OperatorTuple([SX])) == T.OperatorTuple([SX])
    N = T.OperatorTuple([[[0, 2], [0, 0]]])
    assert np.allclose(T.im_tuple(N).mats[0], [[0, -1j], [1j, 0]])
    assert np.allclose(T.modulus_tuple(N).mats[0], np.diag([0, 2]))


def test_joint_norm_examples():
    assert T.joint_norm(T.pauli_tuple(3)) == pytest.approx(np.sqrt(3), abs=1e-12)
    assert T.joint_norm(T.pauli_tuple(2)) == pytest.approx(np.sqrt(2), abs=1e-12)
    for n in (1, 2, 5):
        assert T.joint_norm(T.OperatorTuple([np.eye(3)] * n)) == pytest.approx(np.sqrt(n))


def test_vector_gauge_examples():
    A = T.r2_example_tuple()
    rng = np.random.default_rng(1)
    for _ in range(20):
        x = random_unit(rng, 2)
        assert T.f_vector_gauge(A, x, identity()) == pytest.approx(abs(x[0]) + abs(x[1]))
        assert T.f_form_gauge(A, x, identity()) == pytest.approx(2 * abs(x[0] * x[1]))
        assert T.f_vector_gauge(T.pauli_tuple(3), x, power(2)) == pytest.approx(np.sqrt(3))
    D = T.OperatorTuple([np.diag([2.0, 0.0])])
    for f in GAUGES:
        assert T.f_vector_gauge(D, [1, 0], f) == pytest.approx(2.0)
    assert T.f_form_gauge(T.pauli_tuple(3), [1, 0], power(2)) == pytest.approx(1.0)
    Z = T.scale(0, T.pauli_tuple(3))
    assert T.f_form_gauge(Z, [0.6, 0.8], identity()) == 0.0


def test_gauge_dim_mismatch():
    with pytest.raises(ShapeMismatch):
        T.f_vector_gauge(T.pauli_tuple(3), [1, 0, 0], identity())


def test_json_round_trip(tmp_path):
    A = generate(EnsembleSpec("ginibre", n=3, dim=4, rng_seed=3))[0]
    p = tmp_path / "a.json"
    T.dump_tuple(A, p)
    assert T.load_tuple(p) == A
    with pytest.raises(ValueError):
        T.tuple_from_json({"dim": 2})
    with pytest.raises(ShapeMismatch):
        T.tuple_from_json({"dim": 2, "matrices": [[[[1, 0]]]]})


seeds = st.integers(0, 2 ** 32 - 1)


@given(seeds, st.integers(1, 5))
def test_single_component_gauges_agree(seed, d):
    rng = np.random.default_rng(seed)
    A = T.OperatorTuple([random_matrix(rng, d)])
    x = random_unit(rng, d)
    vals = [T.f_form_gauge(A, x, f) for f in GAUGES]
    vecs = [T.f_vector_gauge(A, x, f) for f in GAUGES]
    assert np.ptp(vals) <= 1e-10 * (1 + vals[0])
    assert np.ptp(vecs) <= 1e-10 * (1 + vecs[0])


@given(seeds, st.integers(1, 4), st.integers(1, 4), st.sampled_from(GAUGES))
def test_form_gauge_homogeneous(seed, n, d, f):
    rng = np.random.default_rng(seed)
    A = T.OperatorTuple([random_matrix(rng, d) for _ in range(n)])
    x = random_unit(rng, d)
    lam = complex(*rng.standard_normal(2))
    lhs = T.f_form_gauge(T.scale(lam, A), x, f)
    assert lhs == pytest.approx(abs(lam) * T.f_form_gauge(A, x, f), rel=1e-9, abs=1e-12)


@given(seeds)
def test_pauli_bloch_identity(seed):
    rng = np.random.default_rng(seed)
    P = T.pauli_tuple(3)
    for _ in range(50):
        v = random_unit(rng, 2)
        assert sum(abs(np.vdot(v, S @ v)) ** 2 for S in P) == pytest.approx(1.0, abs=1e-10)


@given(seeds, st.integers(1, 4), st.integers(1, 4), st.sampled_from(GAUGES))
def test_modulus_preserves_vector_gauge(seed, n, d, f):
    rng = np.random.default_rng(seed)
    A = T.OperatorTuple([random_matrix(rng, d) for _ in range(n)])
    x = random_unit(rng, d)
    assert T.f_vector_gauge(T.modulus_tuple(A), x, f) == pytest.approx(T.f_vector_gauge(A, x, f), abs=1e-8)


@given(seeds, st.sampled_from(GAUGES))
def test_normal_adjoint_vector_gauge(seed, f):
    A = generate(EnsembleSpec("normal", n=3, dim=3, rng_seed=seed))[0]
    x = random_unit(np.random.default_rng(seed), 3)
    assert T.f_vector_gauge(T.adjoint_tuple(A), x, f) == pytest.approx(T.f_vector_gauge(A, x, f), abs=1e-8)


@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_joint_norm_below_norm_sum(seed, n, d):
    rng = np.random.default_rng(seed)
    A = T.OperatorTuple([random_matrix(rng, d) for _ in range(n)])
    assert T.joint_norm(A) <= np.sqrt(sum(np.linalg.norm(M, 2) ** 2 for M in A)) + 1e-9


@given(seeds, st.integers(1, 3), st.integers(1, 4))
def test_derived_tuples_are_hermitian_or_psd(seed, n, d):
    rng = np.random.default_rng(seed)
    A = T.OperatorTuple([random_matrix(rng, d) for _ in range(n)])
    for X in (T.re_tuple(A), T.im_tuple(A), T.gram_tuple(A), T.anticomm_tuple(A), T.modulus_tuple(A)):
        assert np.allclose(X.mats, np.conj(np.swapaxes(X.mats, 1, 2)))
    for M in T.modulus_tuple(A):
        assert np.min(np.linalg.eigvalsh(M)) >= -1e-10
    assert np.allclose(T.re_tuple(A).mats + 1j * T.im_tuple(A).mats, A.mats)
