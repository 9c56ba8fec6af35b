"""Linear pencils L_A(X) = I - sum_j X_j (x) A_j and realizations b*(L_A(X))^{-1} c."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import DomainError, ShapeError, UnsupportedStructureError, check_dense_dim
from .opspace import Col, OppositeOf, Row, hc_power_lower, hc_power_norm
from .specrad import RadiusEstimate, rho_rowcol
from .tuple_core import MatrixTuple

DENSE_LIMIT = 2048


@dataclass(frozen=True, eq=False)
class Pencil:
    A: MatrixTuple

    @property
    def d(self):
        return self.A.d

    @property
    def m(self):
        return self.A.n


@dataclass(frozen=True, eq=False)
class Realization:
    A: MatrixTuple
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.b, dtype=complex).reshape(-1)
        c = np.asarray(self.c, dtype=complex).reshape(-1)
        if b.size != self.A.n or c.size != self.A.n:
            raise ShapeError(f"vectors must have length {self.A.n}")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def pencil(self) -> Pencil:
        return Pencil(self.A)


def _check(P: Pencil, X: MatrixTuple):
    if X.d != P.d:
        raise ShapeError(f"point has d={X.d} but pencil has d={P.d}")


def pencil_eval(P: Pencil, X: MatrixTuple) -> np.ndarray:
    """Dense I_{n m} - sum_j X_j (x) A_j."""
    _check(P, X)
    dim = X.n * P.m
    check_dense_dim(dim, "pencil")
    return np.eye(dim, dtype=complex) - sum(np.kron(x, a) for x, a in zip(X.coords, P.A.coords))


def pencil_sparse(P: Pencil, X: MatrixTuple) -> sp.csc_matrix:
    _check(P, X)
    dim = X.n * P.m
    M = sp.identity(dim, dtype=complex, format="csc")
    for x, a in zip(X.coords, P.A.coords):
        M = M - sp.kron(sp.csr_matrix(x), sp.csr_matrix(a), format="csc")
    return M.tocsc()


def pencil_margin(P: Pencil, X: MatrixTuple) -> float:
    """Smallest singular value of L_A(X); zero means not invertible."""
    return float(sla.svdvals(pencil_eval(P, X))[-1])


def pencil_solve(P: Pencil, X: MatrixTuple, rhs) -> np.ndarray:
    """Solve L_A(X) y = rhs by LU (sparse LU above DENSE_LIMIT)."""
    rhs = np.asarray(rhs, dtype=complex)
    dim = X.n * P.m
    if rhs.shape[0] != dim:
        raise ShapeError(f"right-hand side has {rhs.shape[0]} rows, expected {dim}")
    if dim <= DENSE_LIMIT:
        L = pencil_eval(P, X)
        lu, piv = sla.lu_factor(L, check_finite=False)
        if np.min(np.abs(np.diag(lu))) <= 1e-14 * max(np.max(np.abs(np.diag(lu))), 1.0):
            raise DomainError("pencil is singular at this point")
        return sla.lu_solve((lu, piv), rhs)
    try:
        lu = spla.splu(pencil_sparse(P, X))
    except RuntimeError as exc:
        raise DomainError(f"pencil is singular at this point: {exc}") from exc
    return lu.solve(rhs)


def realization_eval(R: Realization, X: MatrixTuple) -> np.ndarray:
    """(I_n (x) b)* L_A(X)^{-1} (I_n (x) c), an n x n matrix."""
    P = R.pencil
    _check(P, X)
    n = X.n
    eye = np.eye(n, dtype=complex)
    Ic = np.kron(eye, R.c[:, None])
    Ib = np.kron(eye, R.b[:, None])
    if X.n * P.m <= DENSE_LIMIT and pencil_margin(P, X) <= 1e-12:
        raise DomainError("point lies outside the domain of the realization")
    Y = pencil_solve(P, X, Ic)
    return Ib.conj().T @ Y


def neumann_partial_inverse(P: Pencil, X: MatrixTuple, K: int) -> np.ndarray:
    """sum_{k<=K} (sum_j X_j (x) A_j)^k, the truncated Neumann series."""
    _check(P, X)
    M = sum(np.kron(x, a) for x, a in zip(X.coords, P.A.coords))
    term = np.eye(M.shape[0], dtype=complex)
    total = term.copy()
    for _ in range(K):
        term = term @ M
        total = total + term
    return total


def _dual_side(structure) -> str:
    """The dual of the row space is the column space and vice versa."""
    if isinstance(structure, OppositeOf):
        return "row" if _dual_side(structure.inner) == "col" else "col"
    if isinstance(structure, Row) or structure == "row":
        return "col"
    if isinstance(structure, Col) or structure == "col":
        return "row"
    raise UnsupportedStructureError(f"no computable dual for structure {structure!r}")


def domain_radius(P: Pencil, structure="row", method: str = "exact", k: int = 8) -> RadiusEstimate:
    """sup{R : R * ball(structure) inside Dom} = 1 / rho_{dual}(A).

    ``method='exact'`` uses the matrix-level dual radius of A. With
    ``method='sequence'`` the dual radius is read off the k-th power norm,
    which is exact for operator tuples whose power sequence is constant (the
    Fock shifts at truncation level k or more).
    """
    side = _dual_side(structure)
    if method == "exact":
        rho = rho_rowcol(P.A, side)
        lo, hi = rho.lower, rho.upper
    elif method == "sequence":
        E = Row() if side == "row" else Col()
        hi = hc_power_norm(E, P.A, k) ** (1.0 / k)
        lo = hc_power_lower(E, P.A, k) ** (1.0 / k)
    else:
        raise ValueError(f"unknown method {method!r}")
    mid = hi if method == "sequence" else lo
    if hi == 0.0:
        return RadiusEstimate(math.inf, math.inf, math.inf, f"domain-{method}", flags={"unbounded"})
    upper = math.inf if lo == 0.0 else 1.0 / lo
    return RadiusEstimate(1.0 / mid, 1.0 / hi, upper, f"domain-{method}")
