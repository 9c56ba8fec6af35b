"""Operator-space norms of matrix tuples and their power-norm sequences."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.stats import qmc

from .errors import BudgetError, ShapeError, UnsupportedStructureError, check_dense_dim
from .tuple_core import MatrixTuple, level_products

MAX_WORDS = 1 << 22


def spectral_norm(M) -> float:
    """Largest singular value."""
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def psd_norm(P) -> float:
    """Largest eigenvalue of a Hermitian PSD matrix (its operator norm)."""
    P = np.asarray(P)
    P = 0.5 * (P + P.conj().T)
    return max(float(np.linalg.eigvalsh(P)[-1]), 0.0)


def _dual_exponent(p: float) -> float:
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class NormedSpaceSpec:
    """A norm on C^d: an l^p norm, or a norm given by sampled dual functionals.

    With ``dual_points`` set, the norm of v is max_k |<z_k, v>| over the rows
    z_k (each of unit dual norm) and ``p`` is ignored.
    """

    d: int
    p: float = 2.0
    dual_points: Optional[np.ndarray] = field(default=None, compare=False)
    budget: int = 256

    def __post_init__(self):
        if self.d < 1:
            raise ShapeError("dimension must be positive")
        if self.dual_points is None and not self.p >= 1:
            raise ShapeError(f"p must be >= 1, got {self.p}")
        if self.dual_points is not None:
            pts = np.atleast_2d(np.asarray(self.dual_points, dtype=complex))
            if pts.shape[1] != self.d:
                raise ShapeError("dual points must have d coordinates")
            object.__setattr__(self, "dual_points", pts)

    @classmethod
    def lp(cls, d: int, p: float, budget: int = 256) -> "NormedSpaceSpec":
        return cls(d=d, p=float(p), budget=budget)

    @property
    def dual_p(self) -> float:
        return _dual_exponent(self.p)

    def norm(self, v) -> float:
        v = np.asarray(v, dtype=complex)
        if self.dual_points is not None:
            return float(np.max(np.abs(self.dual_points @ v)))
        return float(np.linalg.norm(v, self.p))

    def dual_norm(self, z) -> float:
        return float(np.linalg.norm(np.asarray(z, dtype=complex), self.dual_p))

    def is_exact_extreme(self) -> bool:
        """True when the dual ball has the finite extreme set {w e_j} (V = l^inf)."""
        return self.dual_points is None and math.isinf(self.p)

    def sample_dual_sphere(self, count: int, seed: int = 0) -> np.ndarray:
        """Points of the unit dual sphere: coordinate vectors plus a Sobol grid."""
        if self.dual_points is not None:
            return self.dual_points
        d = self.d
        pts = [np.eye(d, dtype=complex)]
        if count > d:
            m = max(int(math.ceil(math.log2(count - d))), 0)
            sob = qmc.Sobol(2 * d, scramble=True, seed=seed).random_base2(m)[: count - d]
            # for an l^inf dual the maximum sits on the torus |z_j| = 1
            mags = np.ones((len(sob), d)) if math.isinf(self.dual_p) else sob[:, :d] + 1e-3
            phases = 2 * np.pi * sob[:, d:]
            phases[:, 0] = 0.0
            z = mags * np.exp(1j * phases)
            pts.append(z)
        z = np.vstack(pts)
        norms = np.linalg.norm(z, self.dual_p, axis=1)
        return z / norms[:, None]

    def project(self, z: np.ndarray) -> np.ndarray:
        if math.isinf(self.dual_p):
            mod = np.abs(z)
            return np.where(mod > 0, z / np.where(mod > 0, mod, 1.0), 1.0)
        nz = np.linalg.norm(z, self.dual_p)
        return z / nz if nz > 0 else z


# --- structures -------------------------------------------------------------


@dataclass(frozen=True)
class Row:
    name = "row"


@dataclass(frozen=True)
class Col:
    name = "col"


@dataclass(frozen=True)
class MaxRowCol:
    name = "maxrowcol"


@dataclass(frozen=True)
class MinV:
    space: NormedSpaceSpec
    seed: int = 0

    @property
    def name(self):
        if self.space.dual_points is not None:
            return "min-sampled"
        p = self.space.p
        return "min-linf" if math.isinf(p) else f"min-l{p:g}"


@dataclass(frozen=True, eq=False)
class ConcreteQ:
    """Structure induced by generators Q: ||X|| = ||sum_j X_j (x) Q_j||."""

    generators: MatrixTuple
    name = "concrete"

    def __post_init__(self):
        Q = self.generators
        vecs = Q.coords.reshape(Q.d, -1)
        s = np.linalg.svd(vecs, compute_uv=False)
        if s[-1] <= 1e-10 * s[0]:
            raise ShapeError("ConcreteQ generators must be linearly independent")


@dataclass(frozen=True)
class OppositeOf:
    inner: "OpStructure"

    @property
    def name(self):
        return f"op({self.inner.name})"


OpStructure = Union[Row, Col, MaxRowCol, MinV, ConcreteQ, OppositeOf]


def structure_dim(E) -> Optional[int]:
    if isinstance(E, MinV):
        return E.space.d
    if isinstance(E, ConcreteQ):
        return E.generators.d
    if isinstance(E, OppositeOf):
        return structure_dim(E.inner)
    return None


def _check_dim(E, X: MatrixTuple):
    d = structure_dim(E)
    if d is not None and d != X.d:
        raise ShapeError(f"structure has d={d} but tuple has d={X.d}")


# --- norms ------------------------------------------------------------------


def row_gram(X: MatrixTuple) -> np.ndarray:
    R = np.concatenate(list(X.coords), axis=1)
    return R @ R.conj().T


def col_gram(X: MatrixTuple) -> np.ndarray:
    C = np.concatenate(list(X.coords), axis=0)
    return C.conj().T @ C


def kron_sum(X: MatrixTuple, Q: MatrixTuple) -> np.ndarray:
    """Dense sum_j X_j (x) Q_j."""
    if X.d != Q.d:
        raise ShapeError(f"tuple d={X.d} does not match generators d={Q.d}")
    check_dense_dim(X.n * Q.n, "sum X_j (x) Q_j")
    return sum(np.kron(x, q) for x, q in zip(X.coords, Q.coords))


def linear_combination(X: MatrixTuple, z) -> np.ndarray:
    return np.tensordot(np.asarray(z, dtype=complex), X.coords, axes=1)


def _refine_min_norm(X: MatrixTuple, V: NormedSpaceSpec, z0: np.ndarray, steps: int = 200) -> float:
    """Projected gradient ascent of ||sum z_j X_j|| over the unit dual sphere."""
    z = V.project(z0)
    best = spectral_norm(linear_combination(X, z))
    step = 0.5
    for _ in range(steps):
        M = linear_combination(X, z)
        u, s, vh = np.linalg.svd(M)
        grad = np.conj(np.einsum("a,jab,b->j", u[:, 0].conj(), X.coords, vh[0].conj()))
        improved = False
        while step > 1e-10:
            cand = V.project(z + step * grad / max(np.linalg.norm(grad), 1e-300))
            val = spectral_norm(linear_combination(X, cand))
            if val > best * (1 + 1e-14):
                z, best, improved = cand, val, True
                step = min(step * 2, 1.0)
                break
            step *= 0.5
        if not improved:
            break
    return best


def min_norm(X: MatrixTuple, V: NormedSpaceSpec, seed: int = 0) -> tuple[float, bool]:
    """sup over the unit dual sphere of ||sum_j z_j X_j||, with an exactness flag."""
    if V.d != X.d:
        raise ShapeError(f"space has d={V.d} but tuple has d={X.d}")
    if V.is_exact_extreme():
        return max(spectral_norm(x) for x in X.coords), True
    if X.n == 1 and V.dual_points is None:
        return V.norm(X.coords[:, 0, 0]), True
    if X.d == 1 and V.dual_points is None:
        return spectral_norm(X.coords[0]), True
    pts = V.sample_dual_sphere(V.budget, seed)
    vals = np.array([spectral_norm(linear_combination(X, z)) for z in pts])
    best = float(vals.max())
    if V.dual_points is not None:
        return best, False
    for idx in np.argsort(-vals, kind="stable")[:4]:
        best = max(best, _refine_min_norm(X, V, pts[idx]))
    return best, False


def tuple_norm(E, X: MatrixTuple) -> float:
    """Operator-space norm ||X||_E for a supported structure."""
    _check_dim(E, X)
    if isinstance(E, Row):
        return math.sqrt(psd_norm(row_gram(X)))
    if isinstance(E, Col):
        return math.sqrt(psd_norm(col_gram(X)))
    if isinstance(E, MaxRowCol):
        return max(tuple_norm(Row(), X), tuple_norm(Col(), X))
    if isinstance(E, MinV):
        return min_norm(X, E.space, E.seed)[0]
    if isinstance(E, ConcreteQ):
        return spectral_norm(kron_sum(X, E.generators))
    if isinstance(E, OppositeOf):
        return tuple_norm(E.inner, X.transpose())
    raise UnsupportedStructureError(f"unknown structure {E!r}")


def cp_power(X: MatrixTuple, side: str, k: int) -> np.ndarray:
    """sum_{|w|=k} X^w X^w* (side='row') or X^w* X^w (side='col'), by recursion."""
    T = np.eye(X.n, dtype=complex)
    C = X.coords
    for _ in range(k):
        if side == "row":
            T = sum(x @ T @ x.conj().T for x in C)
        elif side == "col":
            T = sum(x.conj().T @ T @ x for x in C)
        else:
            raise UnsupportedStructureError(f"side must be 'row' or 'col', got {side!r}")
        T = 0.5 * (T + T.conj().T)
    return T


def _side_of(E) -> str:
    if isinstance(E, Row) or E == "row":
        return "row"
    if isinstance(E, Col) or E == "col":
        return "col"
    raise UnsupportedStructureError(f"power norms need Row or Col, got {E!r}")


def hc_power_norm(E, X: MatrixTuple, k: int) -> float:
    """||sum_{|w|=k} X^w X^w*||^{1/2} for Row, ||sum X^w* X^w||^{1/2} for Col."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.sqrt(psd_norm(cp_power(X, _side_of(E), k)))


def hc_power_lower(E, X: MatrixTuple, k: int) -> float:
    """lambda_min(sum_{|w|=k} ...)^{1/2}; its k-th root is a lower bound for the radius."""
    T = cp_power(X, _side_of(E), k)
    return math.sqrt(max(float(np.linalg.eigvalsh(T)[0]), 0.0))


def _check_word_budget(d: int, k: int, cap: int = MAX_WORDS):
    if d ** k > cap:
        raise BudgetError(f"{d}**{k} words exceed the enumeration cap {cap}")


def max_word_norm(X: MatrixTuple, k: int) -> float:
    _check_word_budget(X.d, k)
    return float(np.max(np.linalg.norm(level_products(X, k), 2, axis=(1, 2))))


def _product_norm_and_grad(X: MatrixTuple, Z: np.ndarray):
    factors = [linear_combination(X, z) for z in Z]
    prefix = [np.eye(X.n, dtype=complex)]
    for f in factors:
        prefix.append(prefix[-1] @ f)
    suffix = [np.eye(X.n, dtype=complex)]
    for f in reversed(factors):
        suffix.append(f @ suffix[-1])
    suffix = suffix[::-1]
    u, s, vh = np.linalg.svd(prefix[-1])
    left = u[:, 0].conj()
    right = vh[0].conj()
    grads = []
    for i in range(len(factors)):
        a = left @ prefix[i]
        b = suffix[i + 1] @ right
        grads.append(np.conj(np.einsum("a,jab,b->j", a, X.coords, b)))
    return float(s[0]), np.array(grads)


def min_power_norm(V: NormedSpaceSpec, X: MatrixTuple, k: int, budget: Optional[int] = None, seed: int = 0):
    """sup over (B_{V*})^k of ||prod_i (sum_j z^(i)_j X_j)||.

    Returns ``(value, certified)``. For V = l^inf this is max_{|w|=k} ||X^w||,
    exact. Otherwise it is the best lower estimate found by sampling and
    projected gradient ascent.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if V.d != X.d:
        raise ShapeError(f"space has d={V.d} but tuple has d={X.d}")
    if V.is_exact_extreme():
        return max_word_norm(X, k), True
    if X.d == 1 and V.dual_points is None:
        return spectral_norm(np.linalg.matrix_power(X.coords[0], k)), True
    budget = V.budget if budget is None else budget
    rng = np.random.default_rng(seed)
    pts = V.sample_dual_sphere(max(budget, X.d + 1), seed)
    best = 0.0
    # unit coordinate vectors lie on the dual sphere of every l^p space
    if V.dual_points is None and X.d ** k <= 4096:
        best = max_word_norm(X, k)
    best_val, best_z = -1.0, None
    for _ in range(budget):
        Z = pts[rng.integers(0, len(pts), size=k)]
        val, _ = _product_norm_and_grad(X, Z)
        if val > best_val:
            best_val, best_z = val, Z
    best = max(best, best_val)
    if V.dual_points is None:
        Z, val = best_z, best_val
        step = 0.5
        for _ in range(200):
            _, grads = _product_norm_and_grad(X, Z)
            gnorm = np.linalg.norm(grads)
            if gnorm == 0:
                break
            moved = False
            while step > 1e-10:
                cand = np.array([V.project(z + step * g / gnorm) for z, g in zip(Z, grads)])
                cval, _ = _product_norm_and_grad(X, cand)
                if cval > val * (1 + 1e-14):
                    Z, val, moved = cand, cval, True
                    step = min(2 * step, 1.0)
                    break
                step *= 0.5
            if not moved:
                break
        best = max(best, val)
    return best, False


def min_tensor_power_norm(Q: MatrixTuple, X: MatrixTuple, k: int) -> float:
    """||sum_{|w|=k} X^w (x) Q_{w_1} (x) ... (x) Q_{w_k}||, assembled densely."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if Q.d != X.d:
        raise ShapeError(f"tuple d={X.d} does not match generators d={Q.d}")
    check_dense_dim(X.n * Q.n ** k, "minimal tensor power")
    # M_{k+1} = sum_j [M_k (X_j (x) I)] (x) Q_j
    M = kron_sum(X, Q)
    for level in range(1, k):
        eye = np.eye(Q.n ** level, dtype=complex)
        M = sum(np.kron(M @ np.kron(x, eye), q) for x, q in zip(X.coords, Q.coords))
    return spectral_norm(M)


def isometric_l2_generators(d: int) -> MatrixTuple:
    """Row-space generators E_{1j}: an isometric copy of l^2_d."""
    Q = np.zeros((d, d, d), dtype=complex)
    for j in range(d):
        Q[j, 0, j] = 1.0
    return MatrixTuple(Q)


def diagonal_generators(d: int) -> MatrixTuple:
    """Generators E_jj of min(l^inf_d)."""
    Q = np.zeros((d, d, d), dtype=complex)
    for j in range(d):
        Q[j, j, j] = 1.0
    return MatrixTuple(Q)
