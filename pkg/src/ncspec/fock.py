"""Finite models: truncated full Fock space shifts and exterior-algebra creators.

Fock basis: words of length <= N over d letters in length-lex order, so the
vacuum (empty word) is index 0. Exterior basis: subsets of {0..d-1} ordered
by size, then lexicographically.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, PreconditionError
from .opspace import NormedSpaceSpec, min_norm, spectral_norm
from .pencil import Pencil, pencil_solve
from .tuple_core import MatrixTuple

MAX_FOCK_DIM = 4096
MAX_EXTERIOR_D = 12


@dataclass(frozen=True)
class FockSpec:
    d: int
    N: int

    def __post_init__(self):
        if self.d < 1 or self.N < 0:
            raise ValueError("need d >= 1 and N >= 0")

    @property
    def dim(self) -> int:
        if self.d == 1:
            return self.N + 1
        return (self.d ** (self.N + 1) - 1) // (self.d - 1)

    def offset(self, length: int) -> int:
        """Index of the first word of the given length."""
        if self.d == 1:
            return length
        return (self.d ** length - 1) // (self.d - 1)

    def index(self, word) -> int:
        pos = 0
        for letter in word:
            pos = pos * self.d + letter
        return self.offset(len(word)) + pos

    def basis(self):
        for length in range(self.N + 1):
            yield from itertools.product(range(self.d), repeat=length)


@dataclass(frozen=True)
class ExteriorSpec:
    d: int

    @property
    def dim(self) -> int:
        return 2 ** self.d

    def basis(self):
        for size in range(self.d + 1):
            yield from itertools.combinations(range(self.d), size)


def fock_creation(spec: FockSpec) -> MatrixTuple:
    """Truncated creation tuple P_N L P_N: L_j e_w = e_{jw} if |w| < N, else 0."""
    dim = spec.dim
    if dim > MAX_FOCK_DIM:
        raise BudgetError(f"Fock dimension {dim} exceeds cap {MAX_FOCK_DIM}")
    L = np.zeros((spec.d, dim, dim), dtype=complex)
    for word in spec.basis():
        if len(word) == spec.N:
            continue
        col = spec.index(word)
        for j in range(spec.d):
            L[j, spec.index((j,) + word), col] = 1.0
    return MatrixTuple(L)


def compressed_shift(spec: FockSpec) -> MatrixTuple:
    """B = d^{-1/2} P_N L restricted to words of length <= N; jointly nilpotent of order N+1."""
    return fock_creation(spec).scaled(1.0 / math.sqrt(spec.d))


def vacuum_pencil_growth(d: int, n: int) -> float:
    """||L_A(B)^{-1} (vac (x) vac)||^2 for B the compressed shift and A the truncated shift.

    Equals n + 1: the inverse is unbounded on row balls of radius >= d^{-1/2}.
    """
    spec = FockSpec(d, n)
    B = compressed_shift(spec)
    A = fock_creation(spec)
    rhs = np.zeros(spec.dim * spec.dim, dtype=complex)
    rhs[0] = 1.0  # vac (x) vac
    y = pencil_solve(Pencil(A), B, rhs)
    return float(np.vdot(y, y).real)


def exterior_creation(spec: ExteriorSpec) -> MatrixTuple:
    """L_i S = (-1)^{#{j in S: j < i}} (S u {i}) for i not in S, else 0."""
    if spec.d > MAX_EXTERIOR_D:
        raise BudgetError(f"exterior algebra on {spec.d} generators exceeds the cap d <= {MAX_EXTERIOR_D}")
    basis = list(spec.basis())
    index = {s: k for k, s in enumerate(basis)}
    L = np.zeros((spec.d, spec.dim, spec.dim), dtype=complex)
    for S in basis:
        for i in range(spec.d):
            if i in S:
                continue
            sign = (-1) ** sum(1 for j in S if j < i)
            L[i, index[tuple(sorted(S + (i,)))], index[S]] = sign
    return MatrixTuple(L)


def alpha_certificate(d: int, budget: int = 256, seed: int = 0) -> tuple[float, float]:
    """Norms of c = sum_i L_i* (x) e_i in min(l^2_d) and a lower bound in max(l^2_d).

    The first value is the sampled min norm sup_z ||sum_i z_i L_i*|| (equal
    to 1 since e_i -> L_i is isometric); the second is ||sum_i L_i* (x) L_i||.
    """
    if d < 2:
        raise PreconditionError("alpha certificate needs d >= 2")
    L = exterior_creation(ExteriorSpec(d))
    c = L.adjoint()
    min_value, _ = min_norm(c, NormedSpaceSpec.lp(d, 2, budget=budget), seed)
    max_lower = spectral_norm(sum(np.kron(a, b) for a, b in zip(c.coords, L.coords)))
    return min_value, max_lower


@dataclass(frozen=True)
class QnNorms:
    qn: float
    qnt: float
    N: int


def _poly_p(M: np.ndarray, n: int) -> np.ndarray:
    """p_n(M) = sum_{k=1}^n M^k."""
    total = np.zeros_like(M)
    power = np.eye(M.shape[0], dtype=complex)
    for _ in range(n):
        power = power @ M
        total = total + power
    return total


def _vacuum_family(n: int, r: float, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of p_n(rL1)(rL2) and (rL2)p_n(rL1) on inputs e_{1^m}, m <= N.

    Both operators split into orthogonal blocks indexed by the tail u of the
    input word 1^m u (u empty or starting with letter 2), and every block is a
    compression of the u = empty block. Outputs are words 1^a 2 1^b, so the
    matrices have O(N^2) rows instead of the 2^(N+1) - 1 of the full space.
    """
    index = {}
    for a in range(N):
        for b in range(N - a):
            index[(a, b)] = len(index)
    qn = np.zeros((len(index), N + 1))
    qnt = np.zeros((len(index), N + 1))
    for m in range(N + 1):
        for k in range(1, n + 1):
            if m + k + 1 > N:
                break
            qn[index[(k, m)], m] += r ** (k + 1)  # 1^k 2 1^m
            qnt[index[(0, m + k)], m] += r ** (k + 1)  # 2 1^(m+k)
    return qn, qnt


def qn_norms(n: int, r: float, N: int) -> QnNorms:
    """||q_n(rL)|| and ||q_n^t(rL)|| for the truncated 2-letter Fock shifts.

    q_n(z) = n^{-1/2} p_n(z_1) z_2 and q_n^t(z) = n^{-1/2} z_2 p_n(z_1),
    p_n(z) = z + ... + z^n. The first is exact once N >= n + 1; the second
    increases with N toward its operator value. Small N can be cross-checked
    against the dense :func:`fock_creation` matrices with :func:`qn_norms_dense`.
    """
    if N < n + 1:
        raise PreconditionError(f"truncation N={N} must be at least n+1={n + 1}")
    if not 0 < r <= 1:
        raise ValueError("r must lie in (0, 1]")
    qn, qnt = _vacuum_family(n, r, N)
    return QnNorms(spectral_norm(qn) / math.sqrt(n), spectral_norm(qnt) / math.sqrt(n), N)


def qn_norms_dense(n: int, r: float, N: int) -> QnNorms:
    """Same as :func:`qn_norms` but on the full truncated Fock space (small N only)."""
    if N < n + 1:
        raise PreconditionError(f"truncation N={N} must be at least n+1={n + 1}")
    L = fock_creation(FockSpec(2, N)).scaled(r)
    p = _poly_p(L.coords[0], n)
    qn = spectral_norm(p @ L.coords[1]) / math.sqrt(n)
    qnt = spectral_norm(L.coords[1] @ p) / math.sqrt(n)
    return QnNorms(qn, qnt, N)


def qn_closed_forms(n: int, r: float) -> tuple[float, float]:
    """Operator-level values of ||q_n(rL)|| and ||q_n^t(rL)||."""
    if r == 1.0:
        return 1.0, math.sqrt(n)
    qn = r * r / math.sqrt(n) * math.sqrt((1 - r ** (2 * n)) / (1 - r * r))
    qnt = r * r / math.sqrt(n) * (1 - r ** n) / (1 - r)
    return qn, qnt
