"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the "acceptance criteria" section of the terminal summary.
"""
import math

import numpy as np

from ncspec.cli import _grid_norms, example_A, pd_grid, similarity_sweep
from ncspec.cpmaps import apply, cp_map, ehk_minimizer, rho_cp
from ncspec.fock import FockSpec, alpha_certificate, fock_creation, qn_closed_forms, qn_norms, vacuum_pencil_growth
from ncspec.opspace import Col, MaxRowCol, MinV, NormedSpaceSpec, Row, hc_power_norm, tuple_norm
from ncspec.pencil import Pencil, domain_radius, pencil_margin
from ncspec.specrad import (
    OrbitOptions,
    is_quasinilpotent,
    mueller_sequence,
    rho_commuting,
    rho_orbit_upper,
    rho_rota_strang,
    rho_rowcol,
)
from ncspec.tuple_core import MatrixTuple, conjugate_by, is_commuting, random_similarity, random_tuple, selfadjoint_double

SQRT3 = math.sqrt(3.0)


def _random_corpus(count=200, seed=2024):
    rng = np.random.default_rng(seed)
    return [random_tuple(rng, int(rng.integers(1, 5)), int(rng.integers(1, 7))) for _ in range(count)]


def _commuting_corpus(count=100, seed=7):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        d, n = int(rng.integers(1, 4)), int(rng.integers(1, 5))
        lam = rng.uniform(0.1, 1.0, (n, d)) * np.exp(2j * np.pi * rng.uniform(size=(n, d)))
        S = random_similarity(rng, n, 0.5)
        Sinv = np.linalg.inv(S)
        out.append((MatrixTuple(np.stack([S @ np.diag(lam[:, j]) @ Sinv for j in range(d)])), lam))
    return out


def test_criterion_01_row_col_example(criterion):
    A = example_A()
    H = np.array([[2, 1], [1, 1]], dtype=complex)
    L = np.array([[1, 1], [1, 2]], dtype=complex)
    eig_ok = (np.abs(apply(cp_map(A, "row"), H) - 3 * H).max() <= 1e-12
              and np.abs(apply(cp_map(A, "col"), L) - 3 * L).max() <= 1e-12)
    r_row, r_col = rho_cp(A, "row"), rho_cp(A, "col")
    radii_ok = abs(r_row - SQRT3) <= 1e-9 and abs(r_col - SQRT3) <= 1e-9
    s_row = tuple_norm(Row(), conjugate_by(A, ehk_minimizer(A, "row").similarity))
    t_col = tuple_norm(Col(), conjugate_by(A, ehk_minimizer(A, "col").similarity))
    S, Sinv = pd_grid(0.02, 3.0)
    row, col, _ = _grid_norms(A, S, Sinv)
    grid_ok = s_row <= row.min() + 1e-6 and t_col <= col.min() + 1e-6
    est, _ = rho_orbit_upper(MaxRowCol(), A, OrbitOptions(seed=0))
    sep_ok = est.value >= SQRT3 + 0.01 and np.maximum(row, col).min() >= SQRT3 + 0.01
    criterion(1, "row/col example end-to-end", eig_ok and radii_ok and grid_ok and sep_ok,
              f"rho_row={r_row:.12f}, rho_col={r_col:.12f}, grid min row={row.min():.6f}, "
              f"MaxRowCol orbit={est.value:.6f}")


def test_criterion_02_row_equals_col(criterion):
    worst = 0.0
    for X in _random_corpus():
        r, c = rho_rowcol(X, "row").value, rho_rowcol(X, "col").value
        worst = max(worst, abs(r - c) / max(1.0, r))
    criterion(2, "rho_row = rho_col on 200 random tuples", worst <= 1e-8, f"worst relative gap {worst:.2e}")


def test_criterion_03_transpose_law(criterion):
    worst = 0.0
    for X in _random_corpus():
        c, rt = rho_rowcol(X, "col").value, rho_rowcol(X.transpose(), "row").value
        worst = max(worst, abs(c - rt) / max(1.0, c))
    criterion(3, "rho_col(X) = rho_row(X^T)", worst <= 1e-10, f"worst gap {worst:.2e}")


def test_criterion_04_commuting_tuples(criterion):
    worst_v = worst_row = 0.0
    bracket_ok = True
    for X, lam in _commuting_corpus():
        assert is_commuting(X, 1e-8)
        for p in (1.0, 2.0, math.inf):
            exact = float(np.max(np.linalg.norm(lam, p, axis=1)))
            got = rho_commuting(X, NormedSpaceSpec.lp(X.d, p)).value
            worst_v = max(worst_v, abs(got - exact) / max(1.0, exact))
        linf = float(np.max(np.abs(lam)))
        rs = rho_rota_strang(X, delta=0.01)
        bracket_ok &= rs.contains(linf, 1e-12) and rs.width <= 0.01 + 1e-12
        l2 = float(np.max(np.linalg.norm(lam, 2, axis=1)))
        worst_row = max(worst_row, abs(rho_rowcol(X, "row").value - l2) / max(1.0, l2))
    ok = worst_v <= 1e-8 and bracket_ok and worst_row <= 1e-8
    criterion(4, "commuting radius = max ||lambda||_V", ok,
              f"worst V gap {worst_v:.2e}, Rota-Strang brackets ok={bracket_ok}, worst row gap {worst_row:.2e}")


def test_criterion_05_gripenberg(criterion):
    rng = np.random.default_rng(5)
    ordered = True
    for _ in range(30):
        est = rho_rota_strang(random_tuple(rng, 2, 3), delta=0.05, budget=20_000)
        ordered &= est.lower <= est.upper
    pair = MatrixTuple.of([[0, 1], [0, 0]], [[0, 0], [1, 0]])
    est = rho_rota_strang(pair, delta=0.01)
    pair_ok = est.contains(1.0, 1e-12) and est.width <= 0.01
    single_ok = True
    for _ in range(20):
        X = random_tuple(rng, 1, 4)
        rho = float(np.max(np.abs(np.linalg.eigvals(X[0]))))
        e = rho_rota_strang(X, delta=0.01)
        single_ok &= e.lower - 1e-12 <= rho <= e.upper + 1e-12 and e.width <= 0.01 + 1e-12
    criterion(5, "Gripenberg brackets", ordered and pair_ok and single_ok,
              f"pair bracket [{est.lower:.6f}, {est.upper:.6f}]")


def test_criterion_06_fock_power_sequences(criterion):
    L = fock_creation(FockSpec(2, 8))
    rows = [hc_power_norm(Row(), L, k) for k in range(1, 9)]
    cols = [hc_power_norm(Col(), L, k) for k in range(1, 9)]
    ok = all(abs(r - 1.0) <= 1e-12 for r in rows) and all(
        abs(c - 2 ** (k / 2)) <= 1e-12 * 2 ** (k / 2) for k, c in enumerate(cols, 1))
    criterion(6, "Fock row norms 1, column norms 2^(k/2)", ok,
              f"rows {min(rows):.15f}..{max(rows):.15f}, col k=8 {cols[-1]:.12f}")


def test_criterion_07_vacuum_growth(criterion):
    cases = [(2, n) for n in range(1, 7)] + [(3, n) for n in range(1, 5)]
    gaps = [abs(vacuum_pencil_growth(d, n) - (n + 1)) for d, n in cases]
    criterion(7, "vacuum pencil growth = n + 1", max(gaps) <= 1e-9, f"worst gap {max(gaps):.1e}")


def test_criterion_08_alpha_certificate(criterion):
    mn, mx = alpha_certificate(3)
    # selfadjoint doubling turns the separating element into a selfadjoint one
    # whose radius equals its norm, so the norm gap is a radius gap
    from ncspec.fock import ExteriorSpec, exterior_creation

    c = exterior_creation(ExteriorSpec(3)).adjoint()
    D = selfadjoint_double(c)
    sa = all(np.array_equal(m, m.conj().T) for m in D.coords)
    min_d = tuple_norm(MinV(NormedSpaceSpec.lp(3, 2.0)), D)
    ok = abs(mn - 1) <= 1e-6 and mx >= 2 - 1e-9 and sa and abs(min_d - 1) <= 1e-6
    criterion(8, "alpha certificate d=3", ok, f"min norm {mn:.9f}, max lower {mx:.9f}, doubled min {min_d:.9f}")


def test_criterion_09_qn_norms(criterion):
    qn_exact, qnt_exact = qn_closed_forms(5, 0.9)
    res = [qn_norms(5, 0.9, N) for N in (20, 40, 60)]
    ok = (abs(res[-1].qn - qn_exact) <= 1e-10 and abs(res[-1].qnt - qnt_exact) <= 0.01 * qnt_exact
          and res[0].qnt <= res[1].qnt <= res[2].qnt)
    criterion(9, "q_n norms", ok,
              f"qn {res[-1].qn:.12f} vs {qn_exact:.12f}; qnt {[round(r.qnt, 6) for r in res]} vs {qnt_exact:.6f}")


def test_criterion_10_mueller_bracket(criterion):
    pairs = [
        (np.array([0.5, 0.8]), np.array([0.9, 0.3])),
        (np.array([0.2, 0.7, 0.6]), np.array([0.4, 0.1, 0.6])),
    ]
    ok = True
    for a, b in pairs:
        X = MatrixTuple.of(np.diag(a), np.diag(b))
        lam = np.stack([a, b], axis=1)
        n = len(a)
        for p in (1.0, 2.0):
            ell = float(np.max(np.linalg.norm(lam, p, axis=1)))
            for k in range(1, 21):
                s = mueller_sequence(X, p, k)
                ok &= ell * (1 - 1e-12) <= s <= ell * n ** (1 / (k * p)) * (1 + 1e-12)
    criterion(10, "Mueller sequence bracket on diagonal pairs", ok)


def test_criterion_11_quasinilpotence(criterion):
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(50):
        d, n = int(rng.integers(1, 4)), int(rng.integers(2, 6))
        T = np.triu(rng.standard_normal((d, n, n)) + 1j * rng.standard_normal((d, n, n)), 1)
        X = conjugate_by(MatrixTuple(T), random_similarity(rng, n, 0.7))
        assert is_quasinilpotent(X)
        values = [
            rho_rowcol(X, "row").upper,
            rho_rowcol(X, "col").upper,
            rho_rota_strang(X).upper,
            rho_orbit_upper(Row(), X)[0].upper,
            rho_orbit_upper(MaxRowCol(), X)[0].upper,
            rho_orbit_upper(MinV(NormedSpaceSpec.lp(d, 2.0)), X)[0].upper,
        ]
        if is_commuting(X, 1e-10):
            values.append(rho_commuting(X, NormedSpaceSpec.lp(d, 2.0)).upper)
        worst = max(worst, max(values))
    criterion(11, "quasinilpotent tuples report radius 0", worst <= 1e-7, f"largest reported {worst:.1e}")


def test_criterion_12_pencil_containment(criterion):
    rng = np.random.default_rng(12)
    smallest = math.inf
    for _ in range(100):
        d, m, n = int(rng.integers(1, 4)), int(rng.integers(1, 5)), int(rng.integers(1, 5))
        A, X = random_tuple(rng, d, m), random_tuple(rng, d, n)
        X = X.scaled(0.9 / (tuple_norm(Col(), A) * tuple_norm(Row(), X)))
        smallest = min(smallest, pencil_margin(Pencil(A), X))
    dom_ok = True
    for d, N in ((2, 8), (3, 5)):
        L = fock_creation(FockSpec(d, N))
        dom = domain_radius(Pencil(L), "row", "sequence", k=N)
        dom_ok &= abs(dom.value - 1 / math.sqrt(d)) <= 1e-9
    criterion(12, "pencil containment and Fock domain radius", smallest > 0 and dom_ok,
              f"smallest margin {smallest:.3e}")


def test_criterion_13_similarity_sweep(criterion):
    best = similarity_sweep(0.9, 1.0, 0.02, 3.0)
    criterion(13, "no simultaneous strict contraction", best >= 1.0, f"min over sweep of max norm {best:.6f}")
