import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncspec.errors import BudgetError, PreconditionError
from ncspec.opspace import ConcreteQ, MaxRowCol, NormedSpaceSpec, Row, isometric_l2_generators
from ncspec.specrad import (
    RadiusEstimate,
    hermitian_basis,
    is_quasinilpotent,
    joint_spectrum,
    mueller_sequence,
    mueller_trace_form,
    rho_commuting,
    rho_min_lower,
    rho_orbit_upper,
    rho_rota_strang,
    rho_rowcol,
)
from ncspec.tuple_core import MatrixTuple, conjugate_by, random_similarity, random_tuple

A = MatrixTuple.of([[1, 1], [0, 1]], [[0, 1], [1, 0]])
D = MatrixTuple.of(np.diag([0.5, 0.8]), np.diag([0.9, 0.3]))
seeds = st.integers(0, 2**32 - 1)


def test_estimate_invariant():
    with pytest.raises(ValueError):
        RadiusEstimate(1.0, 2.0, 3.0, "x")


def test_rho_rowcol_examples():
    zero = rho_rowcol(MatrixTuple.zeros(2, 3), "row")
    assert zero.value == 0.0
    for side in ("row", "col"):
        est = rho_rowcol(A, side)
        assert est.value == pytest.approx(math.sqrt(3), abs=1e-12)
        assert est.lower == est.upper == est.value
        assert all(v >= est.value - 1e-12 for _, v in est.trace)
    assert rho_rowcol(D, "row").value == pytest.approx(math.sqrt(1.06), abs=1e-12)


def test_rota_strang_examples():
    X = MatrixTuple.of([[0.3, 2.0], [0.0, -0.7]])
    est = rho_rota_strang(X, delta=0.01)
    assert est.contains(0.7) and est.width <= 0.01
    est = rho_rota_strang(MatrixTuple.of([[0, 1], [0, 0]], [[0, 0], [1, 0]]))
    assert est.contains(1.0) and est.width <= 0.01
    est = rho_rota_strang(D)
    assert est.contains(0.9) and est.width <= 0.01


def test_rota_strang_truncation_flag():
    X = random_tuple(np.random.default_rng(4), 3, 3)
    est = rho_rota_strang(X, delta=1e-6, budget=200)
    assert "truncated" in est.flags
    assert est.lower <= est.upper
    fine = rho_rota_strang(X, delta=0.01)
    assert est.lower <= fine.upper and fine.lower <= est.upper


def test_rota_strang_rejects_bad_delta():
    with pytest.raises(ValueError):
        rho_rota_strang(A, delta=0)


def test_joint_spectrum_examples():
    pts = joint_spectrum(D).points
    assert sorted(map(tuple, np.round(pts.real, 12))) == [(0.5, 0.9), (0.8, 0.3)]
    J = np.array([[2.0, 1, 0], [0, 2, 1], [0, 0, 2]])
    pts = joint_spectrum(MatrixTuple.of(J, J @ J)).points
    assert np.allclose(pts, [[2, 4]] * 3, atol=1e-5)
    S = random_similarity(np.random.default_rng(0), 2, 0.5)
    pts = joint_spectrum(conjugate_by(D, S)).points
    assert sorted(map(tuple, np.round(pts.real, 9))) == [(0.5, 0.9), (0.8, 0.3)]


def test_joint_spectrum_needs_commuting():
    with pytest.raises(PreconditionError):
        joint_spectrum(A)


def test_rho_commuting_examples():
    assert rho_commuting(D, NormedSpaceSpec.lp(2, math.inf)).value == pytest.approx(0.9)
    assert rho_commuting(D, NormedSpaceSpec.lp(2, 1.0)).value == pytest.approx(1.4)
    assert rho_commuting(D, NormedSpaceSpec.lp(2, 2.0)).value == pytest.approx(math.sqrt(1.06))
    N = MatrixTuple.of([[0, 1], [0, 0]], [[0, 2], [0, 0]])
    assert rho_commuting(N, NormedSpaceSpec.lp(2, 2.0)).value == 0.0


def test_orbit_row_recovers_perron_value():
    est, P = rho_orbit_upper(Row(), A)
    assert est.value == pytest.approx(math.sqrt(3), rel=1e-6)
    assert "stagnation" not in est.flags
    # the optimal similarity is unique up to scale: P^2 is proportional to H
    P2 = P @ P
    assert np.allclose(P2 / np.trace(P2).real, np.array([[2, 1], [1, 1]]) / 3, atol=1e-3)


def test_orbit_maxrowcol_separates():
    est, _ = rho_orbit_upper(MaxRowCol(), A)
    assert est.value > math.sqrt(3) + 0.01
    assert est.lower == pytest.approx(math.sqrt(3), rel=1e-9)


def test_orbit_jordan_block_upper_only():
    est, _ = rho_orbit_upper(Row(), MatrixTuple.of([[0.5, 1.0], [0.0, 0.5]]))
    assert est.value == pytest.approx(0.5, abs=1e-6)
    assert "upper_only" in est.flags


def test_hermitian_basis_is_orthonormal_and_traceless():
    B = hermitian_basis(3)
    assert B.shape == (8, 3, 3)
    gram = np.einsum("kab,lab->kl", B.conj(), B)
    assert np.allclose(gram, np.eye(8))
    assert np.allclose(np.trace(B, axis1=1, axis2=2), 0)


def test_mueller_examples():
    X = MatrixTuple.of([[0.5, 1.0], [0.0, 0.3]])
    assert mueller_sequence(X, 2.0, 3) == pytest.approx(np.linalg.norm(np.linalg.matrix_power(X[0], 3), 2) ** (1 / 3))
    assert mueller_sequence(MatrixTuple.zeros(2, 2), 1.0, 4) == 0.0
    for k in (1, 5, 10):
        s = mueller_sequence(D, 2.0, k)
        assert math.sqrt(1.06) <= s <= math.sqrt(1.06) * 2 ** (1 / (2 * k)) + 1e-12


def test_mueller_trace_form_brackets_p2():
    for k in (1, 4, 8):
        s = mueller_sequence(A, 2.0, k)
        f = mueller_trace_form(A, k)
        assert s <= f * (1 + 1e-12) <= s * 2 ** (1 / (2 * k)) * (1 + 1e-12)


def test_mueller_budget():
    with pytest.raises(BudgetError):
        mueller_sequence(A, 1.0, 30, max_words=1000)


def test_quasinilpotence_examples():
    assert is_quasinilpotent(MatrixTuple.of([[0, 1, 2], [0, 0, 3], [0, 0, 0]], [[0, 4, 0], [0, 0, 1], [0, 0, 0]]))
    assert not is_quasinilpotent(A)
    assert not is_quasinilpotent(MatrixTuple.of([[2.0, 1.0], [0.0, 3.0]]))


def test_inequality_chain_min_below_concrete():
    X = random_tuple(np.random.default_rng(3), 2, 3)
    V = NormedSpaceSpec.lp(2, 2.0)
    lo = rho_min_lower(X, V)
    up, _ = rho_orbit_upper(ConcreteQ(isometric_l2_generators(2)), X)
    assert lo <= up.value + 1e-6


@settings(max_examples=15, deadline=None)
@given(seed=seeds, d=st.integers(1, 3), n=st.integers(1, 4))
def test_similarity_invariance(seed, d, n):
    rng = np.random.default_rng(seed)
    X = random_tuple(rng, d, n)
    Y = conjugate_by(X, random_similarity(rng, n, 0.5))
    for side in ("row", "col"):
        assert rho_rowcol(Y, side).value == pytest.approx(rho_rowcol(X, side).value, rel=1e-8)


@settings(max_examples=15, deadline=None)
@given(seed=seeds, d=st.integers(1, 3), n=st.integers(1, 4), t=st.floats(-3, 3).filter(lambda t: abs(t) > 1e-3))
def test_homogeneity(seed, d, n, t):
    X = random_tuple(np.random.default_rng(seed), d, n)
    r = rho_rowcol(X, "row").value
    assert rho_rowcol(X.scaled(t), "row").value == pytest.approx(abs(t) * r, rel=1e-9)


@settings(max_examples=15, deadline=None)
@given(seed=seeds, d=st.integers(1, 2), n=st.integers(1, 3), m=st.integers(1, 3))
def test_direct_sums(seed, d, n, m):
    rng = np.random.default_rng(seed)
    X, Y = random_tuple(rng, d, n).scaled(0.5), random_tuple(rng, d, m).scaled(0.5)
    S = X.direct_sum(Y)
    assert rho_rowcol(S, "row").value == pytest.approx(
        max(rho_rowcol(X, "row").value, rho_rowcol(Y, "row").value), rel=1e-8)
    bs, bx, by = (rho_rota_strang(Z, delta=0.05, budget=20_000) for Z in (S, X, Y))
    assert bs.upper >= max(bx.lower, by.lower) - 1e-12
    assert bs.lower <= max(bx.upper, by.upper) + 1e-12


@settings(max_examples=15, deadline=None)
@given(seed=seeds, d=st.integers(1, 2), n=st.integers(1, 3))
def test_transpose_brackets_overlap(seed, d, n):
    X = random_tuple(np.random.default_rng(seed), d, n)
    a = rho_rota_strang(X, delta=0.05, budget=20_000)
    b = rho_rota_strang(X.transpose(), delta=0.05, budget=20_000)
    assert a.lower <= b.upper + 1e-12 and b.lower <= a.upper + 1e-12
    assert rho_rowcol(X, "row").value == pytest.approx(rho_rowcol(X.transpose(), "col").value, rel=1e-12)


@settings(max_examples=15, deadline=None)
@given(seed=seeds, d=st.integers(1, 3), n=st.integers(1, 4))
def test_berger_wang_on_commuting(seed, d, n):
    rng = np.random.default_rng(seed)
    lam = rng.uniform(0.1, 1, (n, d)) * np.exp(2j * np.pi * rng.uniform(size=(n, d)))
    S = random_similarity(rng, n, 0.3)
    X = conjugate_by(MatrixTuple(np.stack([np.diag(lam[:, j]) for j in range(d)])), S)
    est = rho_rota_strang(X, delta=0.01)
    assert est.contains(rho_commuting(X, NormedSpaceSpec.lp(d, math.inf)).value, 1e-9)
