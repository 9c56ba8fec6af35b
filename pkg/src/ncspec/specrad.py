"""Joint spectral radii of matrix tuples.

Every function returns a :class:`RadiusEstimate` bracket. Exact methods
(row/column via CP maps, commuting tuples via joint eigenvalues) report
``lower == upper``; the Rota-Strang branch-and-bound and the similarity-orbit
search report genuine brackets.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg as sla
from scipy.optimize import minimize, minimize_scalar

from . import opspace
from .cpmaps import ehk_minimizer, rho_cp
from .errors import BudgetError, DegenerateClusteringError, PreconditionError, SingularSimilarityError
from .opspace import (
    Col,
    ConcreteQ,
    MaxRowCol,
    MinV,
    NormedSpaceSpec,
    OppositeOf,
    Row,
    hc_power_norm,
    kron_sum,
    linear_combination,
    tuple_norm,
)
from .tuple_core import (
    MatrixTuple,
    commutator_defect,
    conjugate_by,
    is_commuting,
    is_irreducible,
    level_products,
    spectral_radius,
)

logger = logging.getLogger(__name__)

NILPOTENT_TOL = 1e-10


@dataclass
class RadiusEstimate:
    value: float
    lower: float
    upper: float
    method: str
    trace: list = field(default_factory=list)
    flags: set = field(default_factory=set)

    def __post_init__(self):
        if not (self.lower <= self.value <= self.upper):
            raise ValueError(f"inconsistent bracket {self.lower} <= {self.value} <= {self.upper}")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= x <= self.upper + slack

    @property
    def unbounded(self) -> bool:
        return "unbounded" in self.flags


def _zero(method: str, flag: str = "quasinilpotent") -> RadiusEstimate:
    return RadiusEstimate(0.0, 0.0, 0.0, method, flags={flag})


# --- quasinilpotence ----------------------------------------------------------


def is_quasinilpotent(X: MatrixTuple, tol: float = NILPOTENT_TOL) -> bool:
    """True iff every word of length n has ||X^w|| <= tol * (max_j ||X_j||)^n.

    For matrices joint quasinilpotence is joint nilpotence, and a tuple is
    jointly nilpotent exactly when all words of length n vanish.
    """
    scale = X.max_coord_norm()
    if scale == 0.0:
        return True
    Y = X.scaled(1.0 / scale)
    if X.d ** X.n <= 1 << 16:
        norms = np.linalg.norm(level_products(Y, X.n), 2, axis=(1, 2))
        return bool(norms.max() <= tol)
    # ||sum_{|w|=n} Y^w Y^w*||^{1/2} dominates every single word norm
    return opspace.hc_power_norm(Row(), Y, X.n) <= tol


def _nilpotent_guard(X: MatrixTuple, method: str) -> Optional[RadiusEstimate]:
    if is_quasinilpotent(X):
        return _zero(method)
    return None


# --- row / column -----------------------------------------------------------


def rho_rowcol(X: MatrixTuple, side: str = "row", trace_k: int = 10) -> RadiusEstimate:
    """Exact row or column radius as the square root of a Perron value."""
    method = f"cp-{side}"
    guard = _nilpotent_guard(X, method)
    if guard is not None:
        return guard
    value = rho_cp(X, side)
    E = Row() if side == "row" else Col()
    trace = []
    for k in range(1, trace_k + 1):
        trace.append((k, hc_power_norm(E, X, k) ** (1.0 / k)))
    return RadiusEstimate(value, value, value, method, trace)


# --- Rota-Strang (Gripenberg branch and bound) --------------------------------


def rho_rota_strang(X: MatrixTuple, delta: float = 0.01, budget: int = 200_000, max_depth: int = 2000) -> RadiusEstimate:
    """Branch-and-bound bracket for max-word-norm radius lim max_{|w|=k} ||X^w||^{1/k}.

    Lower bound: max over explored words of rho(X^w)^{1/|w|}. A word is
    discarded once every infinite continuation is controlled, i.e. when its
    best block factorization has all blocks with norm^{1/len} <= lower + delta.
    Exhausting the tree certifies upper <= lower + delta; running out of
    budget leaves upper at the worst bound on the live frontier.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    method = "gripenberg"
    guard = _nilpotent_guard(X, method)
    if guard is not None:
        guard.upper = 0.0
        return guard
    d = X.d
    lower = 0.0
    discarded_max = 0.0
    trace = []
    # frontier items: (word, suffix products, prefix bounds)
    frontier = [((), [], [0.0])]
    explored = 0
    depth = 0
    truncated = False
    while frontier:
        depth += 1
        if depth > max_depth:
            truncated = True
            break
        next_frontier = []
        level_items = []
        for word, suffix_products, prefix_bounds in frontier:
            for letter in range(d):
                k = len(word) + 1
                new_suffix = [p @ X.coords[letter] for p in suffix_products] + [X.coords[letter]]
                norms = [float(np.linalg.norm(p, 2)) for p in new_suffix]
                bound = min(
                    max(prefix_bounds[j], norms[j] ** (1.0 / (k - j))) for j in range(k)
                )
                rho_w = spectral_radius(new_suffix[0]) ** (1.0 / k)
                lower = max(lower, rho_w)
                level_items.append((word + (letter,), new_suffix, prefix_bounds + [bound], bound))
                explored += 1
        for word, suffix, pbounds, bound in level_items:
            if bound <= lower + delta:
                discarded_max = max(discarded_max, bound)
            else:
                next_frontier.append((word, suffix, pbounds))
        trace.append((depth, lower))
        frontier = next_frontier
        if frontier and explored + len(frontier) * d > budget:
            truncated = True
            break
    upper = max(lower, discarded_max)
    flags = set()
    if truncated and frontier:
        # every infinite word factors into discarded or live-frontier blocks
        upper = max(upper, max(pb[-1] for _, _, pb in frontier))
        flags.add("truncated")
    logger.debug("gripenberg explored %d nodes, depth %d", explored, depth)
    return RadiusEstimate(lower, lower, upper, method, trace, flags)


# --- commuting tuples -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class JointSpectrum:
    points: np.ndarray  # shape (n, d)

    def __len__(self):
        return self.points.shape[0]


def joint_spectrum(X: MatrixTuple, tol: float = 1e-8, seed: int = 0, retries: int = 5) -> JointSpectrum:
    """Joint eigenvalues of a commuting tuple via one simultaneous Schur form.

    The Schur basis of a random real combination sum c_j X_j triangularizes
    every X_j when the combination has simple eigenvalues; the residual
    strictly-lower mass is checked and the coefficients re-drawn on failure.
    """
    if not is_commuting(X, tol):
        raise PreconditionError(f"tuple is not commuting (defect {commutator_defect(X):.3g})")
    rng = np.random.default_rng(seed)
    scale = max(X.max_coord_norm(), 1e-300)
    worst = math.inf
    for attempt in range(retries):
        c = rng.uniform(0.5, 1.5, X.d) * rng.choice([-1.0, 1.0], X.d)
        if attempt == 0 and X.d == 1:
            c = np.ones(1)
        C = linear_combination(X, c)
        _, Z = sla.schur(C, output="complex")
        T = np.einsum("ba,jbc,cd->jad", Z.conj(), X.coords, Z)
        lower_mass = max(np.linalg.norm(np.tril(t, -1)) for t in T)
        worst = min(worst, lower_mass)
        if lower_mass <= tol * scale:
            return JointSpectrum(np.stack([np.diag(t) for t in T], axis=1))
    raise DegenerateClusteringError(
        f"no simultaneous triangularization after {retries} attempts (residual {worst:.3g})"
    )


def rho_commuting(X: MatrixTuple, V: NormedSpaceSpec, tol: float = 1e-8, seed: int = 0) -> RadiusEstimate:
    """max over joint eigenvalues lambda of ||lambda||_V."""
    method = "commuting"
    if not is_commuting(X, tol):
        raise PreconditionError("rho_commuting needs a commuting tuple")
    guard = _nilpotent_guard(X, method)
    if guard is not None:
        return guard
    spec = joint_spectrum(X, tol, seed)
    value = max(V.norm(lam) for lam in spec.points)
    return RadiusEstimate(value, value, value, method)


# --- similarity orbit -------------------------------------------------------


def hermitian_basis(n: int) -> np.ndarray:
    """Basis of traceless Hermitian n x n matrices, orthonormal in Frobenius norm."""
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            b = np.zeros((n, n), dtype=complex)
            b[i, j] = b[j, i] = 1 / math.sqrt(2)
            basis.append(b)
            b = np.zeros((n, n), dtype=complex)
            b[i, j], b[j, i] = -1j / math.sqrt(2), 1j / math.sqrt(2)
            basis.append(b)
    for k in range(1, n):
        diag = np.zeros(n)
        diag[:k] = 1.0
        diag[k] = -k
        basis.append(np.diag(diag / np.linalg.norm(diag)).astype(complex))
    return np.array(basis).reshape(-1, n, n)


def _log_pd(P) -> np.ndarray:
    w, U = np.linalg.eigh(0.5 * (P + P.conj().T))
    G = (U * np.log(np.maximum(w, 1e-300))) @ U.conj().T
    return G - np.trace(G) / P.shape[0] * np.eye(P.shape[0])


def _coords_of(G, basis) -> np.ndarray:
    return np.real(np.einsum("kab,ab->k", basis.conj(), G))


def _lower_bound(E, X: MatrixTuple, sweep_k: int = 6) -> float:
    if isinstance(E, (Row, Col, MaxRowCol)):
        return rho_cp(X, "col" if isinstance(E, Col) else "row")
    if isinstance(E, OppositeOf):
        return _lower_bound(E.inner, X.transpose(), sweep_k)
    best = 0.0
    if isinstance(E, ConcreteQ):
        best = spectral_radius(kron_sum(X, E.generators))
        return best
    if isinstance(E, MinV):
        V = E.space
        if V.dual_points is None:
            # unit coordinate functionals lie in every l^p dual ball
            for k in range(1, sweep_k + 1):
                if X.d ** k > 4096:
                    break
                prods = level_products(X, k)
                rho = max(spectral_radius(p) for p in prods)
                best = max(best, rho ** (1.0 / k))
        for z in V.sample_dual_sphere(min(V.budget, 128), E.seed):
            best = max(best, spectral_radius(linear_combination(X, z)))
    return best


@dataclass(frozen=True)
class OrbitOptions:
    starts: int = 4
    seed: int = 0
    sweeps: int = 6
    rel_tol: float = 1e-9
    patience: int = 20
    max_evals: int = 20_000
    log_bound: float = 13.0  # |log eigenvalue| cap keeps cond(P) <= e^26 < 1e12


def rho_orbit_upper(E, X: MatrixTuple, opts: Optional[OrbitOptions] = None):
    """Minimise ||P^{-1} X P||_E over positive P = exp(G), G traceless Hermitian.

    Returns ``(estimate, P)``. ``upper`` is the best norm found and ``lower``
    the best available lower bound; for irreducible tuples and Row/Col the
    Perron similarity is among the starts, so the bracket closes.
    """
    opts = opts or OrbitOptions()
    method = f"orbit-{getattr(E, 'name', 'E')}"
    n = X.n
    guard = _nilpotent_guard(X, method)
    if guard is not None:
        return guard, np.eye(n, dtype=complex)
    lower = _lower_bound(E, X)
    if n == 1:
        val = tuple_norm(E, X)
        return RadiusEstimate(val, min(lower, val), val, method, [(0, val)]), np.eye(1, dtype=complex)

    basis = hermitian_basis(n)
    evals = 0

    def f(g):
        nonlocal evals
        evals += 1
        G = np.tensordot(g, basis, axes=1)
        if np.max(np.abs(np.linalg.eigvalsh(G))) > opts.log_bound:
            return math.inf
        P = sla.expm(G)
        try:
            return tuple_norm(E, conjugate_by(X, P))
        except SingularSimilarityError:
            return math.inf

    starts = [np.zeros(len(basis))]
    if isinstance(E, (Row, Col, MaxRowCol)):
        for side in ("row", "col"):
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", RuntimeWarning)
                    S = ehk_minimizer(X, side).similarity
                starts.append(_coords_of(_log_pd(S), basis))
            except Exception as exc:  # pragma: no cover - defensive
                logger.debug("EHK start unavailable: %s", exc)
    rng = np.random.default_rng(opts.seed)
    for _ in range(opts.starts):
        starts.append(rng.normal(scale=0.5, size=len(basis)))

    best_val, best_g = math.inf, starts[0]
    trace = []
    flags = set()
    for g0 in starts:
        g = np.array(g0, dtype=float)
        val = f(g)
        stall = 0
        for sweep in range(opts.sweeps):
            prev = val
            for k in range(len(basis)):
                e = np.zeros(len(basis))
                e[k] = 1.0
                res = minimize_scalar(
                    lambda t: f(g + t * e), bounds=(-2.0, 2.0), method="bounded",
                    options={"xatol": 1e-10, "maxiter": 200},
                )
                if res.fun < val:
                    g, val = g + res.x * e, float(res.fun)
            if prev - val <= opts.rel_tol * max(val, 1e-300):
                stall += 1
                break
            if evals > opts.max_evals:
                break
        polish = minimize(f, g, method="Nelder-Mead",
                          options={"xatol": 1e-10, "fatol": 1e-13 * max(val, 1e-300),
                                   "maxiter": 400 * len(basis)})
        if polish.fun < val:
            g, val = polish.x, float(polish.fun)
        trace.append((len(trace), val))
        if val < best_val:
            best_val, best_g = val, g
        if evals > opts.max_evals:
            flags.add("stagnation")
            break
    P = sla.expm(np.tensordot(best_g, basis, axes=1))
    upper = best_val
    lower = min(lower, upper)
    if not is_irreducible(X):
        flags.add("upper_only")
    if upper - lower > 1e-6 * max(upper, 1e-300) and isinstance(E, (Row, Col)) and "upper_only" not in flags:
        flags.add("stagnation")
    return RadiusEstimate(upper, lower, upper, method, trace, flags), P


# --- Muller sequence ---------------------------------------------------------


def mueller_sequence(X: MatrixTuple, p: float, k: int, max_words: int = opspace.MAX_WORDS, chunk: int = 4096) -> float:
    """(sum_{|w|=k} ||X^w||^p)^{1/(kp)}, operator norms, exact enumeration.

    Words are generated as (prefix batch) x (suffix) so memory stays at one
    prefix batch; the reduction order is fixed, hence reproducible.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    if X.d ** k > max_words:
        raise BudgetError(f"{X.d}**{k} words exceed the enumeration cap {max_words}")
    scale = X.max_coord_norm()
    if scale == 0.0:
        return 0.0
    Y = X.scaled(1.0 / scale)
    head = 0
    while head < k and X.d ** (head + 1) <= chunk:
        head += 1
    prefix = level_products(Y, head)
    total = 0.0
    for tail_prod in level_products(Y, k - head):
        norms = np.linalg.norm(prefix @ tail_prod, 2, axis=(1, 2))
        total += float(np.sum(norms ** p))
    return scale * total ** (1.0 / (k * p))


def mueller_trace_form(X: MatrixTuple, k: int) -> float:
    """(sum_{|w|=k} ||X^w||_F^2)^{1/(2k)} via tr Phi^k(I); same limit as p = 2."""
    T = opspace.cp_power(X, "row", k)
    return max(float(np.trace(T).real), 0.0) ** (1.0 / (2 * k))


def rho_min_lower(X: MatrixTuple, V: NormedSpaceSpec, seed: int = 0) -> float:
    """Lower estimate of the min(V) radius: sampled sup of rho(sum z_j X_j)."""
    return _lower_bound(MinV(V, seed), X)
