"""Completely positive maps T -> sum X_j T X_j* and T -> sum X_j* T X_j.

The left map's Perron value is rho_row(X)^2, the right map's is rho_col(X)^2.
The Perron eigenmatrices give the positive similarities that minimise the
row and column norms over the similarity orbit of an irreducible tuple.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ShapeError
from .tuple_core import MatrixTuple, is_irreducible

LEFT = "left"
RIGHT = "right"
_SIDES = {"row": LEFT, "col": RIGHT, LEFT: LEFT, RIGHT: RIGHT}


@dataclass(frozen=True, eq=False)
class CpMap:
    kraus: MatrixTuple
    side: str = LEFT

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")

    @property
    def n(self):
        return self.kraus.n

    def __call__(self, T):
        return apply(self, T)

    def matrix(self) -> np.ndarray:
        """n^2 x n^2 matrix acting on row-major vec(T)."""
        C = self.kraus.coords
        if self.side == LEFT:
            return sum(np.kron(x, x.conj()) for x in C)
        return sum(np.kron(x.conj().T, x.T) for x in C)

    def adjoint_map(self) -> "CpMap":
        """Adjoint for the trace pairing: the map with the other side."""
        return CpMap(self.kraus, RIGHT if self.side == LEFT else LEFT)


@dataclass(frozen=True, eq=False)
class PerronPair:
    value: float
    eigenmatrix: np.ndarray
    iterations: int = 0
    method: str = "power"


def cp_map(X: MatrixTuple, side: str) -> CpMap:
    return CpMap(X, _SIDES[side])


def apply(cp: CpMap, T) -> np.ndarray:
    T = np.asarray(T, dtype=complex)
    if T.shape != (cp.n, cp.n):
        raise ShapeError(f"argument of shape {T.shape} does not match n={cp.n}")
    C = cp.kraus.coords
    if cp.side == LEFT:
        return sum(x @ T @ x.conj().T for x in C)
    return sum(x.conj().T @ T @ x for x in C)


def _hermitian(T):
    return 0.5 * (T + T.conj().T)


def _normalize(T):
    T = _hermitian(T)
    return T / np.trace(T).real


def _residual(cp, H, r):
    return np.linalg.norm(apply(cp, H) - r * H) / max(np.linalg.norm(H), 1e-300)


def _power(cp: CpMap, start, shift: float, tol: float, max_iter: int):
    """Power iteration for T -> Phi(T) + shift*T on the PSD cone."""
    H = _normalize(start)
    scale = max(sum(np.linalg.norm(x, 2) ** 2 for x in cp.kraus.coords), 1e-300)
    r = 0.0
    for it in range(1, max_iter + 1):
        image = _hermitian(apply(cp, H))
        tr = np.trace(image).real
        if tr <= 1e-300 or tr <= 1e-15 * scale * np.trace(H).real and shift == 0.0:
            # image of a positive-definite start vanished: Phi is nilpotent on the cone
            return 0.0, H, it, True
        r = tr / np.trace(H).real
        if _residual(cp, H, r) <= tol * max(r, 1e-300):
            return r, H, it, True
        H = _normalize(image + shift * H)
    return r, H, max_iter, False


def _dense_perron(cp: CpMap):
    """Eigendecomposition fallback; returns (r, H) with H None if no PSD eigenmatrix is found.

    A defective Perron eigenvalue splits under rounding into a small cluster;
    its centroid is accurate, and the eigenmatrix is the smallest right
    singular vector of M - r I.
    """
    M = cp.matrix()
    vals = np.linalg.eigvals(M)
    r_max = float(np.max(np.abs(vals)))
    if r_max == 0.0:
        return 0.0, None
    cluster = np.abs(vals - r_max) <= 1e-5 * r_max
    r = float(np.mean(vals[cluster].real)) if cluster.any() else r_max
    _, sv, vh = np.linalg.svd(M - r * np.eye(M.shape[0]))
    H = _hermitian(vh[-1].conj().reshape(cp.n, cp.n))
    ev = np.linalg.eigvalsh(H)
    if ev[-1] < -ev[0]:
        H, ev = -H, -ev[::-1]
    if ev[-1] <= 0 or ev[0] < -1e-8 * ev[-1]:
        return r, None
    return r, _normalize(H)


def perron_pair(cp: CpMap, tol: float = 1e-12, max_iter: int = 10_000) -> PerronPair:
    """Dominant eigenvalue of a CP map with a PSD trace-one eigenmatrix.

    Power iteration from I/n; when it stalls (peripheral spectrum or a small
    spectral gap) the dense n^2 x n^2 eigenproblem supplies the value and,
    when the Perron eigenspace is one-dimensional, the eigenmatrix. Otherwise
    the shifted map Phi + r*id, whose peripheral spectrum is just {2r}, is
    iterated.
    """
    n = cp.n
    start = np.eye(n, dtype=complex) / n
    r, H, it, ok = _power(cp, start, 0.0, tol, max_iter)
    if ok:
        return PerronPair(float(r), H, it, "power")
    r_dense, H_dense = _dense_perron(cp)
    if H_dense is not None and _residual(cp, H_dense, r_dense) <= 1e-8 * max(r_dense, 1e-300):
        return PerronPair(r_dense, H_dense, it, "dense")
    r2, H2, it2, ok2 = _power(cp, H, r_dense, tol, max_iter)
    if ok2 or _residual(cp, H2, r_dense) <= 1e-8 * max(r_dense, 1e-300):
        return PerronPair(r_dense, H2, it + it2, "shifted")
    raise ConvergenceError(
        f"Perron iteration did not converge in {max_iter} steps", best=PerronPair(r_dense, H2, it + it2, "shifted")
    )


def rho_cp(X: MatrixTuple, side: str = "row", tol: float = 1e-12, max_iter: int = 10_000) -> float:
    """sqrt of the Perron value of the left (row) or right (col) CP map."""
    pair = perron_pair(cp_map(X, side), tol, max_iter)
    return math.sqrt(max(pair.value, 0.0))


def psd_power(H, power: float, floor: float = 1e-14) -> np.ndarray:
    """H^power for Hermitian PSD H; eigenvalues clamped at floor * lambda_max."""
    w, U = np.linalg.eigh(_hermitian(np.asarray(H, dtype=complex)))
    w = np.maximum(w, floor * max(w[-1], 1e-300))
    return (U * w ** power) @ U.conj().T


@dataclass(frozen=True, eq=False)
class Minimizer:
    similarity: np.ndarray
    unique: bool
    perron: PerronPair


def ehk_minimizer(X: MatrixTuple, side: str = "row", tol: float = 1e-12) -> Minimizer:
    """Positive similarity minimising the row (resp. column) norm on the orbit.

    Row: S = H^{1/2} for the left Perron eigenmatrix H. Col: T = L^{-1/2} for
    the right one. Conjugating X by the result gives norm rho_cp(X, side).
    """
    pair = perron_pair(cp_map(X, side), tol)
    unique = is_irreducible(X)
    if not unique:
        warnings.warn("reducible tuple: the orbit minimiser need not be unique", RuntimeWarning, stacklevel=2)
    S = psd_power(pair.eigenmatrix, 0.5 if _SIDES[side] == LEFT else -0.5)
    S = S / abs(np.linalg.det(S)) ** (1.0 / X.n)
    return Minimizer(S, unique, pair)
