"""Matrix tuples and word arithmetic.

A :class:`MatrixTuple` is a d-tuple of n x n complex matrices stored as one
read-only ``(d, n, n)`` array. Words are sequences of 0-based letter indices;
``word_product(X, (0, 1))`` is ``X[0] @ X[1]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np
import scipy.linalg as sla

from .errors import InvalidWordError, ShapeError, SingularSimilarityError

COND_CAP = 1e12
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class MatrixTuple:
    """Immutable d-tuple of square complex matrices of common size n."""

    coords: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coords, dtype=complex)
        if arr.ndim != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"expected a (d, n, n) array, got shape {arr.shape}")
        if arr.shape[1] != arr.shape[2]:
            raise ShapeError(f"coordinates must be square, got {arr.shape[1:]}")
        if not np.all(np.isfinite(arr)):
            raise ShapeError("matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @classmethod
    def of(cls, *matrices) -> "MatrixTuple":
        return cls(np.stack([np.asarray(m, dtype=complex) for m in matrices]))

    @classmethod
    def zeros(cls, d: int, n: int) -> "MatrixTuple":
        return cls(np.zeros((d, n, n), dtype=complex))

    @property
    def d(self) -> int:
        return self.coords.shape[0]

    @property
    def n(self) -> int:
        return self.coords.shape[1]

    def __len__(self):
        return self.d

    def __getitem__(self, j) -> np.ndarray:
        return self.coords[j]

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"MatrixTuple(d={self.d}, n={self.n})"

    def transpose(self) -> "MatrixTuple":
        return MatrixTuple(np.transpose(self.coords, (0, 2, 1)))

    def adjoint(self) -> "MatrixTuple":
        """Coordinatewise conjugate transpose (X_1*, ..., X_d*)."""
        return MatrixTuple(np.conj(np.transpose(self.coords, (0, 2, 1))))

    def scaled(self, t) -> "MatrixTuple":
        return MatrixTuple(t * self.coords)

    def direct_sum(self, other: "MatrixTuple") -> "MatrixTuple":
        if other.d != self.d:
            raise ShapeError(f"cannot sum tuples with d={self.d} and d={other.d}")
        return MatrixTuple(
            np.stack([sla.block_diag(a, b) for a, b in zip(self.coords, other.coords)])
        )

    def max_coord_norm(self) -> float:
        return max(float(np.linalg.norm(x, 2)) for x in self.coords)

    def allclose(self, other: "MatrixTuple", rtol=1e-9, atol=1e-12) -> bool:
        return self.coords.shape == other.coords.shape and np.allclose(
            self.coords, other.coords, rtol=rtol, atol=atol
        )


def as_tuple(X) -> MatrixTuple:
    if isinstance(X, MatrixTuple):
        return X
    return MatrixTuple(np.asarray(X, dtype=complex))


def words(d: int, k: int) -> Iterator[tuple[int, ...]]:
    """All words of length ``k`` over ``d`` letters in lexicographic order."""
    return itertools.product(range(d), repeat=k)


def words_upto(d: int, k: int) -> Iterator[tuple[int, ...]]:
    """Words of length 0..k, length-then-lexicographic."""
    for length in range(k + 1):
        yield from words(d, length)


def word_product(X: MatrixTuple, w: Sequence[int]) -> np.ndarray:
    out = np.eye(X.n, dtype=complex)
    for letter in w:
        if not 0 <= letter < X.d:
            raise InvalidWordError(f"letter {letter} out of range for d={X.d}")
        out = out @ X.coords[letter]
    return out


def level_products(X: MatrixTuple, k: int) -> np.ndarray:
    """Stack of X^w over all words of length k, shape (d**k, n, n), lex order."""
    prods = np.eye(X.n, dtype=complex)[None]
    for _ in range(k):
        prods = np.einsum("wab,jbc->wjac", prods, X.coords).reshape(-1, X.n, X.n)
    return prods


def invert_checked(S, cond_cap: float = COND_CAP):
    """LU factorization of ``S`` with a condition-number guard."""
    S = np.asarray(S, dtype=complex)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ShapeError(f"similarity must be square, got {S.shape}")
    cond = np.linalg.cond(S)
    if not np.isfinite(cond) or cond > cond_cap:
        raise SingularSimilarityError(f"similarity condition number {cond:.3g} exceeds {cond_cap:.0e}")
    return sla.lu_factor(S)


def conjugate_by(X: MatrixTuple, S, cond_cap: float = COND_CAP) -> MatrixTuple:
    """Return (S^{-1} X_1 S, ..., S^{-1} X_d S)."""
    S = np.asarray(S, dtype=complex)
    if S.shape != (X.n, X.n):
        raise ShapeError(f"similarity of shape {S.shape} does not match n={X.n}")
    lu = invert_checked(S, cond_cap)
    return MatrixTuple(np.stack([sla.lu_solve(lu, x @ S) for x in X.coords]))


def selfadjoint_double(X: MatrixTuple) -> MatrixTuple:
    """Coordinates [[0, X_j], [X_j*, 0]] of size 2n; each is Hermitian."""
    n = X.n
    out = np.zeros((X.d, 2 * n, 2 * n), dtype=complex)
    out[:, :n, n:] = X.coords
    out[:, n:, :n] = X.adjoint().coords
    return MatrixTuple(out)


def commutator_defect(X: MatrixTuple) -> float:
    worst = 0.0
    for i, j in itertools.combinations(range(X.d), 2):
        a, b = X.coords[i], X.coords[j]
        scale = 1.0 + np.linalg.norm(a, 2) * np.linalg.norm(b, 2)
        worst = max(worst, np.linalg.norm(a @ b - b @ a, 2) / scale)
    return float(worst)


def is_commuting(X: MatrixTuple, tol: float = 1e-10) -> bool:
    return commutator_defect(X) <= tol


def _numerical_rank(vectors: np.ndarray, tol: float) -> int:
    s = np.linalg.svd(vectors, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def generated_algebra_basis(X: MatrixTuple, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (rows, vectorized) of the unital algebra generated by X.

    Grows the span of words level by level; stops once a level adds nothing,
    which happens no later than word length 2n^2 - 2.
    """
    n = X.n
    scale = max(1.0, X.max_coord_norm())
    gens = X.coords / scale
    basis = np.eye(n, dtype=complex).reshape(1, -1) / np.sqrt(n)
    frontier = [np.eye(n, dtype=complex)]
    while frontier and basis.shape[0] < n * n:
        new = []
        for m in frontier:
            for g in gens:
                cand = (m @ g).reshape(-1)
                resid = cand - basis.T @ (basis.conj() @ cand)
                resid = resid - basis.T @ (basis.conj() @ resid)
                norm_c = np.linalg.norm(cand)
                if norm_c > 0 and np.linalg.norm(resid) > tol * max(norm_c, 1.0):
                    resid = resid / np.linalg.norm(resid)
                    basis = np.vstack([basis, resid])
                    new.append((m @ g) / max(norm_c, 1e-300))
        frontier = new
    return basis


def is_irreducible(X: MatrixTuple, tol: float = RANK_TOL) -> bool:
    """Burnside test: the words of X span all of M_n."""
    if X.n == 1:
        return True
    basis = generated_algebra_basis(X, tol)
    return _numerical_rank(basis, tol) == X.n * X.n


def spectral_radius(M) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def random_tuple(rng: np.random.Generator, d: int, n: int, complex_entries: bool = True) -> MatrixTuple:
    coords = rng.standard_normal((d, n, n))
    if complex_entries:
        coords = coords + 1j * rng.standard_normal((d, n, n))
    return MatrixTuple(coords)


def random_similarity(rng: np.random.Generator, n: int, spread: float = 1.0) -> np.ndarray:
    """Well-conditioned random invertible matrix: U diag(e^{spread*g}) V."""
    q1, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    q2, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return q1 @ np.diag(np.exp(spread * rng.uniform(-1, 1, n))) @ q2


def stack(mats: Iterable) -> MatrixTuple:
    return MatrixTuple(np.stack(list(mats)))
