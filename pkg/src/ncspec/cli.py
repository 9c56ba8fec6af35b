"""Command-line front end.

Subcommands::

    ncspec radius   TUPLE.json --structure row --method auto
    ncspec sequence TUPLE.json --structure col --kmax 12
    ncspec demo     rowcol-sep | fock-pencil | alpha | qn | mueller | similarity-2x2

Tuples are JSON documents ``{"schema": 1, "d": d, "n": n, "matrices": ...}``
with complex entries written as ``[re, im]`` pairs. Exit codes: 0 ok, 1 input
error, 2 budget truncation, 3 demo assertion failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import fock, opspace, specrad
from .cpmaps import apply, cp_map, ehk_minimizer, rho_cp
from .errors import BudgetError, NcSpecError
from .opspace import (
    Col,
    ConcreteQ,
    MaxRowCol,
    MinV,
    NormedSpaceSpec,
    Row,
    hc_power_lower,
    hc_power_norm,
    min_power_norm,
    min_tensor_power_norm,
    tuple_norm,
)
from .pencil import Pencil, domain_radius
from .specrad import OrbitOptions, RadiusEstimate
from .tuple_core import MatrixTuple, conjugate_by, is_commuting, level_products, spectral_radius

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_TRUNCATED, EXIT_DEMO = 0, 1, 2, 3

STRUCTURES = "row|col|maxrowcol|min-linf|min-l2|min-lp=<p>|q=<path>"
METHODS = ("auto", "cp", "gripenberg", "orbit", "sequence", "commuting", "min-tensor")


class InputError(NcSpecError):
    """Malformed input file or unsupported flag combination."""


# --- tuple documents --------------------------------------------------------


def tuple_to_document(X: MatrixTuple, name: Optional[str] = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "d": X.d,
        "n": X.n,
        "matrices": [
            [[[float(z.real), float(z.imag)] for z in row] for row in mat] for mat in X.coords
        ],
    }
    if name is not None:
        doc["name"] = name
    return doc


def document_to_tuple(doc: dict) -> MatrixTuple:
    if not isinstance(doc, dict):
        raise InputError("tuple document must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise InputError(f"unsupported schema {doc.get('schema')!r}, expected {SCHEMA}")
    try:
        d, n = int(doc["d"]), int(doc["n"])
        arr = np.asarray(doc["matrices"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed tuple document: {exc}") from exc
    if arr.shape != (d, n, n, 2):
        raise InputError(f"matrices have shape {arr.shape[:-1] if arr.ndim else ()}, expected ({d}, {n}, {n}) of [re, im]")
    return MatrixTuple(arr[..., 0] + 1j * arr[..., 1])


def dumps_document(doc: dict) -> str:
    """Canonical text: sorted keys, one matrix row per line."""
    lines = []
    for key in sorted(doc):
        if key == "matrices":
            mats = []
            for mat in doc[key]:
                rows = ",\n".join("      " + json.dumps(row, separators=(",", ":")) for row in mat)
                mats.append("    [\n" + rows + "\n    ]")
            lines.append('  "matrices": [\n' + ",\n".join(mats) + "\n  ]")
        else:
            lines.append("  " + json.dumps(key) + ": " + json.dumps(doc[key]))
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _dumps_report(obj: dict) -> str:
    """Indented JSON with innermost numeric lists kept on one line."""
    text = json.dumps(obj, indent=2)
    return re.sub(r"\[\s+([^\[\]{}\"]*?)\s+\]",
                  lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text) + "\n"


def loads_document(text: str, source: str = "<input>") -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def read_tuple(path: str) -> MatrixTuple:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return document_to_tuple(loads_document(text, path))


def write_tuple(X: MatrixTuple, path: str, name: Optional[str] = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_document(tuple_to_document(X, name)))


# --- reports ----------------------------------------------------------------


def _num(x):
    """JSON has no infinity; unbounded values are written as null."""
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return None
    return float(x)


@dataclass
class RunReport:
    method: str
    structure: str
    value: float
    lower: float
    upper: float
    trace: list = field(default_factory=list)
    wall_time: float = 0.0
    seed: int = 0
    flags: list = field(default_factory=list)

    @classmethod
    def from_estimate(cls, est: RadiusEstimate, structure: str, wall: float, seed: int) -> "RunReport":
        return cls(est.method, structure, est.value, est.lower, est.upper,
                   [[int(k), float(v)] for k, v in est.trace], wall, seed, sorted(est.flags))

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "method": self.method,
            "structure": self.structure,
            "value": _num(self.value),
            "lower": _num(self.lower),
            "upper": _num(self.upper),
            "trace": self.trace,
            "wall_time": self.wall_time,
            "seed": self.seed,
            "flags": self.flags,
        }


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- structures and methods -------------------------------------------------


def parse_structure(flag: str, d: int, seed: int = 0, budget: int = 256):
    flag = flag.strip().lower()
    if flag == "row":
        return Row()
    if flag == "col":
        return Col()
    if flag == "maxrowcol":
        return MaxRowCol()
    if flag == "min-linf":
        return MinV(NormedSpaceSpec.lp(d, math.inf, budget), seed)
    if flag == "min-l2":
        return MinV(NormedSpaceSpec.lp(d, 2.0, budget), seed)
    if flag.startswith("min-lp="):
        try:
            p = float(flag.split("=", 1)[1])
        except ValueError as exc:
            raise InputError(f"bad exponent in {flag!r}") from exc
        return MinV(NormedSpaceSpec.lp(d, p, budget), seed)
    if flag.startswith("q="):
        Q = read_tuple(flag.split("=", 1)[1])
        return ConcreteQ(Q)
    raise InputError(f"unknown structure {flag!r}; expected one of {STRUCTURES}")


def _auto_method(E, X: MatrixTuple) -> str:
    if isinstance(E, (Row, Col)):
        return "cp"
    if isinstance(E, MinV):
        if E.space.is_exact_extreme():
            return "gripenberg"
        return "commuting" if is_commuting(X) else "orbit"
    return "orbit"


def sequence_rows(E, X: MatrixTuple, kmax: int, budget: int = 256, seed: int = 0,
                  max_words: int = opspace.MAX_WORDS) -> list:
    """Rows (k, value, lower, upper) of the power-norm sequence; value = norm^{1/k}.

    ``lower``/``upper`` are the radius bounds certified at step k (None if
    unavailable). A row with value None marks a budget overrun: more than
    ``max_words`` words to enumerate, or a library cap.
    """
    rows = []
    for k in range(1, kmax + 1):
        try:
            if isinstance(E, (Row, Col)):
                v = hc_power_norm(E, X, k) ** (1.0 / k)
                rows.append((k, v, hc_power_lower(E, X, k) ** (1.0 / k), v))
            elif isinstance(E, MinV) and E.space.is_exact_extreme():
                if X.d ** k > max_words:
                    raise BudgetError(f"{X.d}**{k} words exceed the budget {max_words}")
                P = level_products(X, k)
                v = float(np.linalg.norm(P, 2, axis=(1, 2)).max()) ** (1.0 / k)
                lo = float(np.abs(np.linalg.eigvals(P)).max()) ** (1.0 / k)
                rows.append((k, v, lo, v))
            elif isinstance(E, MinV):
                v, certified = min_power_norm(E.space, X, k, budget, seed)
                v = v ** (1.0 / k)
                rows.append((k, v, None, v if certified else None))
            elif isinstance(E, ConcreteQ):
                v = min_tensor_power_norm(E.generators, X, k) ** (1.0 / k)
                rows.append((k, v, None, v))
            else:
                raise InputError(f"no power-norm sequence for structure {getattr(E, 'name', E)!r}")
        except BudgetError:
            rows.append((k, None, None, None))
            break
    return rows


def _from_sequence(E, X, kmax, budget, seed, method) -> RadiusEstimate:
    rows = sequence_rows(E, X, kmax, min(budget, 4096), seed, max_words=budget)
    good = [r for r in rows if r[1] is not None]
    if not good:
        raise BudgetError("sequence exceeded the budget at k = 1")
    lower = max([r[2] for r in good if r[2] is not None], default=0.0)
    uppers = [r[3] for r in good if r[3] is not None]
    upper = min(uppers) if uppers else math.inf
    value = min(max(good[-1][1], lower), upper)
    flags = {"truncated"} if len(good) < len(rows) else set()
    return RadiusEstimate(value, lower, upper, method, [(r[0], r[1]) for r in good], flags)


def compute_radius(E, X: MatrixTuple, method: str = "auto", tol: float = 0.01, kmax: int = 12,
                   budget: int = 200_000, seed: int = 0) -> RadiusEstimate:
    if method == "auto":
        method = _auto_method(E, X)
    if method == "cp":
        if not isinstance(E, (Row, Col)):
            raise InputError("method cp needs structure row or col")
        return specrad.rho_rowcol(X, "row" if isinstance(E, Row) else "col", kmax)
    if method == "gripenberg":
        if not (isinstance(E, MinV) and E.space.is_exact_extreme()):
            raise InputError("method gripenberg needs structure min-linf")
        return specrad.rho_rota_strang(X, delta=tol, budget=budget)
    if method == "commuting":
        if isinstance(E, MinV):
            V = E.space
        elif isinstance(E, (Row, Col)):
            V = NormedSpaceSpec.lp(X.d, 2.0)
        else:
            raise InputError("method commuting needs a row, col or min-* structure")
        return specrad.rho_commuting(X, V, seed=seed)
    if method == "orbit":
        est, _ = specrad.rho_orbit_upper(E, X, OrbitOptions(seed=seed))
        return est
    if method == "sequence":
        return _from_sequence(E, X, kmax, budget, seed, "sequence")
    if method == "min-tensor":
        if not isinstance(E, ConcreteQ):
            raise InputError("method min-tensor needs structure q=<path>")
        est = _from_sequence(E, X, kmax, budget, seed, "min-tensor")
        lower = spectral_radius(opspace.kron_sum(X, E.generators))
        est.lower = min(lower, est.value)
        return est
    raise InputError(f"unknown method {method!r}")


# --- commands ---------------------------------------------------------------


def cmd_radius(args) -> int:
    X = read_tuple(args.input)
    E = parse_structure(args.structure, X.d, args.seed)
    t0 = time.perf_counter()
    est = compute_radius(E, X, args.method, args.tol, args.kmax, args.budget, args.seed)
    report = RunReport.from_estimate(est, args.structure, time.perf_counter() - t0, args.seed)
    _emit(_dumps_report(report.to_dict()), args.output)
    return EXIT_TRUNCATED if "truncated" in est.flags else EXIT_OK


def cmd_sequence(args) -> int:
    X = read_tuple(args.input)
    E = parse_structure(args.structure, X.d, args.seed)
    rows = sequence_rows(E, X, args.kmax, min(args.budget, 4096), args.seed, max_words=args.budget)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["k", "value", "lower", "upper"])
    truncated = False
    for k, v, lo, hi in rows:
        if v is None:
            writer.writerow([k, "budget_exceeded", "", ""])
            truncated = True
        else:
            writer.writerow([k] + ["" if x is None else repr(float(x)) for x in (v, lo, hi)])
    _emit(out.getvalue(), args.output)
    return EXIT_TRUNCATED if truncated else EXIT_OK


# --- demos ------------------------------------------------------------------


def example_A() -> MatrixTuple:
    return MatrixTuple.of([[1, 1], [0, 1]], [[0, 1], [1, 0]])


def similarity_pair(lam: float = 0.9, t: float = 1.0) -> MatrixTuple:
    return MatrixTuple.of([[lam, t], [0, lam]], [[lam, 0], [t, lam]])


def pd_grid(step: float = 0.02, radius: float = 3.0):
    """Real PD similarities S = expm([[a, b], [b, c]]) on a cubic grid, up to scale.

    Conjugation ignores scalar factors, so S depends only on (a - c, b): the
    27 million points of the (a, b, c) grid collapse to a 2-parameter set,
    returned as stacks S and S^{-1} with det S = 1.
    """
    m = int(round(radius / step))
    diff = step * np.arange(-2 * m, 2 * m + 1)  # a - c
    off = step * np.arange(-m, m + 1)
    u, b = np.meshgrid(diff / 2, off, indexing="ij")
    u, b = u.ravel(), b.ravel()
    w = np.hypot(u, b)
    ch = np.cosh(w)
    sh = np.where(w > 0, np.sinh(w) / np.where(w > 0, w, 1.0), 1.0)
    N = np.stack([np.stack([u, b], -1), np.stack([b, -u], -1)], -2)
    eye = np.eye(2)
    S = ch[:, None, None] * eye + sh[:, None, None] * N
    Sinv = ch[:, None, None] * eye - sh[:, None, None] * N
    return S, Sinv


def _grid_norms(X: MatrixTuple, S, Sinv):
    """Row and column norms of S^{-1} X S across a stack of similarities."""
    conj = [Sinv @ x.real @ S if np.allclose(x.imag, 0) else Sinv @ x @ S for x in X.coords]
    R = sum(M @ np.swapaxes(M.conj(), -1, -2) for M in conj)
    C = sum(np.swapaxes(M.conj(), -1, -2) @ M for M in conj)
    row = np.sqrt(np.linalg.eigvalsh(R)[:, -1])
    col = np.sqrt(np.linalg.eigvalsh(C)[:, -1])
    return row, col, conj


class Demo:
    def __init__(self, name: str):
        self.name = name
        self.checks = []
        self.values = {}

    def check(self, label: str, ok: bool, detail: str):
        self.checks.append({"check": label, "passed": bool(ok), "detail": detail})
        print(f"{'PASS' if ok else 'FAIL'} {self.name}: {label} ({detail})")

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        return {"demo": self.name, "passed": self.passed, "checks": self.checks,
                "values": {k: _num(v) if isinstance(v, float) else v for k, v in self.values.items()}}


def demo_rowcol_sep(seed: int = 0) -> Demo:
    demo = Demo("rowcol-sep")
    A = example_A()
    H = np.array([[2, 1], [1, 1]], dtype=complex)
    L = np.array([[1, 1], [1, 2]], dtype=complex)
    demo.check("Phi_A(H) = 3H", np.allclose(apply(cp_map(A, "row"), H), 3 * H, atol=1e-12, rtol=0),
               f"residual {np.abs(apply(cp_map(A, 'row'), H) - 3 * H).max():.1e}")
    demo.check("Psi_A(L) = 3L", np.allclose(apply(cp_map(A, "col"), L), 3 * L, atol=1e-12, rtol=0),
               f"residual {np.abs(apply(cp_map(A, 'col'), L) - 3 * L).max():.1e}")
    r_row, r_col = rho_cp(A, "row"), rho_cp(A, "col")
    demo.values.update(rho_row=r_row, rho_col=r_col)
    demo.check("rho_row = rho_col = sqrt(3)",
               abs(r_row - math.sqrt(3)) <= 1e-9 and abs(r_col - math.sqrt(3)) <= 1e-9,
               f"row {r_row:.12f}, col {r_col:.12f}")
    S = ehk_minimizer(A, "row").similarity
    T = ehk_minimizer(A, "col").similarity
    s_row = tuple_norm(Row(), conjugate_by(A, S))
    t_col = tuple_norm(Col(), conjugate_by(A, T))
    grid_S, grid_Sinv = pd_grid()
    row, col, _ = _grid_norms(A, grid_S, grid_Sinv)
    demo.values.update(grid_min_row=float(row.min()), grid_min_col=float(col.min()))
    demo.check("row minimizer beats the PD grid", s_row <= row.min() + 1e-6,
               f"{s_row:.9f} vs grid {row.min():.9f}")
    demo.check("col minimizer beats the PD grid", t_col <= col.min() + 1e-6,
               f"{t_col:.9f} vs grid {col.min():.9f}")
    cos = abs(np.vdot(S, T)) / (np.linalg.norm(S) * np.linalg.norm(T))
    demo.check("row and col minimizers are not colinear", cos < 1 - 1e-6, f"cosine {cos:.6f}")
    grid_max = float(np.maximum(row, col).min())
    est, _ = specrad.rho_orbit_upper(MaxRowCol(), A, OrbitOptions(seed=seed))
    demo.values.update(maxrowcol_orbit=est.value, maxrowcol_grid=grid_max)
    demo.check("MaxRowCol orbit value exceeds sqrt(3) + 0.01",
               min(est.value, grid_max) > math.sqrt(3) + 0.01,
               f"orbit {est.value:.6f}, grid {grid_max:.6f}, sqrt(3) = {math.sqrt(3):.6f}")
    return demo


def demo_fock_pencil(d: int = 2, n: int = 5) -> Demo:
    demo = Demo("fock-pencil")
    growth = fock.vacuum_pencil_growth(d, n)
    demo.values["growth"] = growth
    print(f"{growth:.12g}")
    demo.check(f"vacuum growth = n + 1 = {n + 1}", abs(growth - (n + 1)) <= 1e-9, f"{growth:.12f}")
    L = fock.fock_creation(fock.FockSpec(d, n))
    dom = domain_radius(Pencil(L), "row", "sequence", k=n)
    demo.values["row_domain_radius"] = dom.value
    demo.check("row-ball domain radius = 1/sqrt(d)", abs(dom.value - 1 / math.sqrt(d)) <= 1e-9,
               f"{dom.value:.12f}")
    return demo


def demo_alpha(d: int = 3, seed: int = 0) -> Demo:
    demo = Demo("alpha")
    mn, mx = fock.alpha_certificate(d, seed=seed)
    demo.values.update(min_norm=mn, max_lower=mx)
    print(f"({mn:.9f}, {mx:.9f})")
    demo.check("min norm = 1", abs(mn - 1) <= 1e-6, f"{mn:.12f}")
    bound = math.sqrt(2 * (d - 1))
    demo.check("max lower bound >= sqrt(2(d-1))", mx >= bound - 1e-9, f"{mx:.12f} vs {bound:.12f}")
    if d >= 3:
        demo.check("max lower bound > sqrt(d)", mx > math.sqrt(d), f"{mx:.6f} vs {math.sqrt(d):.6f}")
    return demo


def demo_qn(n: int = 5, r: float = 0.9, truncations=(20, 40, 60)) -> Demo:
    demo = Demo("qn")
    qn_exact, qnt_exact = fock.qn_closed_forms(n, r)
    results = [fock.qn_norms(n, r, N) for N in truncations]
    last = results[-1]
    demo.values.update(qn=last.qn, qnt=last.qnt, qn_closed=qn_exact, qnt_closed=qnt_exact,
                       qnt_by_N=[q.qnt for q in results])
    demo.check("qn matches its closed form", abs(last.qn - qn_exact) <= 1e-10,
               f"{last.qn:.12f} vs {qn_exact:.12f}")
    demo.check("qnt within 1% of its limit", abs(last.qnt - qnt_exact) <= 0.01 * qnt_exact,
               f"{last.qnt:.9f} vs {qnt_exact:.9f} at N={last.N}")
    mono = all(a.qnt <= b.qnt + 1e-12 for a, b in zip(results, results[1:]))
    demo.check("qnt nondecreasing in N", mono, ", ".join(f"N={q.N}: {q.qnt:.6f}" for q in results))
    return demo


def demo_mueller(kmax: int = 20) -> Demo:
    demo = Demo("mueller")
    X = MatrixTuple.of(np.diag([0.5, 0.8]), np.diag([0.9, 0.3]))
    lam = np.array([[0.5, 0.9], [0.8, 0.3]])
    for p in (1.0, 2.0):
        ell = float(np.max(np.linalg.norm(lam, p, axis=1)))
        seq = [specrad.mueller_sequence(X, p, k) for k in range(1, kmax + 1)]
        ok = all(ell - 1e-12 <= s <= ell * 2 ** (1 / (k * p)) + 1e-12 for k, s in enumerate(seq, 1))
        demo.values[f"p={p:g}"] = seq
        demo.check(f"l <= sequence(k) <= l*2^(1/(kp)) for p={p:g}, k<={kmax}", ok,
                   f"l = {ell:.6f}, sequence(k={kmax}) = {seq[-1]:.6f}")
    return demo


def similarity_sweep(lam: float = 0.9, t: float = 1.0, step: float = 0.02, radius: float = 3.0) -> float:
    """Minimum over the PD grid of max(||S^{-1}AS||, ||S^{-1}BS||)."""
    X = similarity_pair(lam, t)
    S, Sinv = pd_grid(step, radius)
    best = math.inf
    for lo in range(0, S.shape[0], 65536):
        sl = slice(lo, lo + 65536)
        norms = [np.linalg.norm(Sinv[sl] @ x.real @ S[sl], 2, axis=(-2, -1)) for x in X.coords]
        best = min(best, float(np.maximum(*norms).min()))
    return best


def demo_similarity_2x2(lam: float = 0.9, t: float = 1.0) -> Demo:
    demo = Demo("similarity-2x2")
    best = similarity_sweep(lam, t)
    demo.values["min_max_norm"] = best
    demo.check("no PD similarity makes both strict contractions", best >= 1.0,
               f"min over sweep of max norm = {best:.6f}")
    return demo


def cmd_demo(args) -> int:
    name = args.name
    if name == "rowcol-sep":
        demo = demo_rowcol_sep(args.seed)
    elif name == "fock-pencil":
        demo = demo_fock_pencil(args.d or 2, args.n)
    elif name == "alpha":
        demo = demo_alpha(args.d or 3, args.seed)
    elif name == "qn":
        demo = demo_qn()
    elif name == "mueller":
        demo = demo_mueller()
    elif name == "similarity-2x2":
        demo = demo_similarity_2x2()
    else:  # argparse restricts choices
        raise InputError(f"unknown demo {name!r}")
    if args.output:
        _emit(_dumps_report(demo.to_dict()), args.output)
    return EXIT_OK if demo.passed else EXIT_DEMO


DEMOS = ("rowcol-sep", "fock-pencil", "alpha", "qn", "mueller", "similarity-2x2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncspec", description="Joint spectral radii of matrix tuples.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="tuple document (JSON)")
        p.add_argument("--structure", default="row", help=STRUCTURES)
        p.add_argument("--kmax", type=int, default=12)
        p.add_argument("--budget", type=int, default=200_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", default=None)

    p = sub.add_parser("radius", help="compute a radius bracket and print a JSON report")
    common(p)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--tol", type=float, default=0.01)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("sequence", help="print the power-norm sequence as CSV")
    common(p)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("demo", help="reproduce a worked example")
    p.add_argument("name", choices=DEMOS)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATED
    except (NcSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
