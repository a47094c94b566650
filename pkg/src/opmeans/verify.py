"""Residuals, verdicts, and the gap-minimization experiment.

The central question this module quantifies: for positive definite A, B,
equality of the Heron-type and Wasserstein means forces AB = BA. The
analysis runs through a chain of identities in the intermediates
X = (A^{1/2} B A^{1/2})^{1/2} and Y = B^{1/2} A^{1/2}:

  r1  4(heron - wasserstein) = A^{1/2}B^{1/2} + B^{1/2}A^{1/2}
                               - A^{1/2}XA^{-1/2} - A^{-1/2}XA^{1/2}
  r2  AY + Y*A - AX - XA = 4 A^{1/2}(heron - wasserstein)A^{1/2}
  r3  (A+Y)*(A+Y) - (A+X)^2 = AY + Y*A - AX - XA   (uses Y*Y = X^2)
  r4  |A+Y| = A + X                (holds when the means are equal)
  r5  polar factor of Y = identity (holds when the means are equal)
  r6  Y = Y*                       (equivalent to AB = BA)

r1-r3 are unconditional algebra and must vanish for every valid pair; r4-r6
vanish exactly when the means coincide. Each residual is normalized by the
scale of the terms entering its own left-hand side (never by a difference
that can itself vanish, so commuting pairs do not divide zero by zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import (
    DEFAULT_CONFIG,
    NumericalError,
    Singular,
    ToleranceConfig,
    abs_op,
    as_matrix,
    frobenius_norm,
    hermitian_eigen,
    logm,
    polar,
    require_hermitian,
    sqrt_and_inv_sqrt,
    _assemble,
)
from .means import HpdPair, ProofIntermediates, proof_intermediates

__all__ = [
    "Verdict",
    "GapReport",
    "WitnessReport",
    "DescentTrace",
    "TriangleEqualityFails",
    "commutator_gap",
    "pair_gaps",
    "proof_chain_report",
    "theorem_check",
    "trace_criterion",
    "ando_hayashi_witness",
    "GapObjective",
    "minimize_gap",
]

# gaps above this are treated as firmly nonzero when classifying verdicts
VIOLATION_BAND = 1e-6
# descent stops once the squared normalized mean gap falls this low
OBJECTIVE_FLOOR = 1e-16
# forward-difference step is FD_STEP_SCALE * (1 + ||S||_F)
FD_STEP_SCALE = 1e-6
ARMIJO_SLOPE = 1e-4
MAX_BACKTRACKS = 40


class TriangleEqualityFails(NumericalError):
    """|X+Y| differs from |X| + |Y| beyond tolerance; the witness construction
    does not apply."""

    def __init__(self, residual: float):
        super().__init__(f"triangle equality residual {residual:.3e} above tolerance")
        self.residual = residual


class Verdict(Enum):
    """Outcome of comparing the mean gap against the commutator gap."""

    MEANS_EQUAL_AND_COMMUTE = "MeansEqualAndCommute"
    BOTH_GAPS_POSITIVE = "BothGapsPositive"
    INDETERMINATE = "Indeterminate"
    COUNTEREXAMPLE_TO_THEOREM = "CounterexampleToTheorem"


@dataclass(frozen=True)
class GapReport:
    """Normalized gaps and identity residuals for one pair.

    mean_gap        ||heron - wasserstein||_F / (||A||_F + ||B||_F)
    commutator_gap  ||AB - BA||_F / (||A||_F ||B||_F)
    residuals       r1..r6 as described in the module docstring
    trace_gap       tr X - tr(A^{1/2} B^{1/2}), nonnegative up to roundoff
    polar_singular  True when the polar factor of Y was unavailable and r6's
                    companion residual r5 is reported as inf
    """

    mean_gap: float
    commutator_gap: float
    residuals: dict[str, float]
    trace_gap: float
    polar_singular: bool = False


@dataclass(frozen=True)
class WitnessReport:
    """Common polar factor recovered from an operator triangle equality."""

    triangle_residual: float
    witness: np.ndarray
    factor_residuals: tuple[float, float]


@dataclass(frozen=True)
class DescentTrace:
    """Accepted-iterate record of one gap-minimization run.

    iterates     (step, mean_gap, commutator_gap, objective) per accepted
                 step, starting with the initial point at step 0
    final_b      the matrix exp(S) at the last accepted iterate
    no_descent   the line search failed MAX_BACKTRACKS times in a row
    stop_reason  "converged", "budget", or "no_descent"
    states       the Hermitian chart points S per iterate when recording
                 was requested, else None
    """

    iterates: list[tuple[int, float, float, float]]
    final_b: np.ndarray
    no_descent: bool
    stop_reason: str
    states: list[np.ndarray] | None = None


def commutator_gap(a, b) -> float:
    """||AB - BA||_F / (||A||_F ||B||_F)."""
    a = as_matrix(a)
    b = as_matrix(b)
    denom = frobenius_norm(a) * frobenius_norm(b)
    if denom == 0.0:
        return 0.0
    return frobenius_norm(a @ b - b @ a) / denom


def _gaps_from_parts(a, b, sqrt_a, sqrt_b, x, inv_sqrt_a) -> tuple[float, float, np.ndarray, np.ndarray]:
    """Mean gap and commutator gap plus the two symmetrized means."""
    avg = (sqrt_a + sqrt_b) / 2.0
    heron = avg @ avg
    heron = (heron + heron.conj().T) / 2.0
    wass = (a + b + sqrt_a @ x @ inv_sqrt_a + inv_sqrt_a @ x @ sqrt_a) / 4.0
    wass = (wass + wass.conj().T) / 2.0
    mg = frobenius_norm(heron - wass) / (frobenius_norm(a) + frobenius_norm(b))
    return mg, commutator_gap(a, b), heron, wass


def pair_gaps(p: HpdPair, cfg: ToleranceConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """(mean_gap, commutator_gap) without the full residual report."""
    ints = proof_intermediates(p, cfg)
    mg, cg, _, _ = _gaps_from_parts(p.a, p.b, ints.sqrt_a, ints.sqrt_b, ints.x, ints.inv_sqrt_a)
    return mg, cg


def proof_chain_report(
    p: HpdPair,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    intermediates: "ProofIntermediates | None" = None,
) -> GapReport:
    """Evaluate every identity residual for one pair.

    `intermediates` lets batch callers reuse a proof_intermediates result
    they already computed for the same pair.
    """
    a, b = p.a, p.b
    n = p.dim
    ints = intermediates if intermediates is not None else proof_intermediates(p, cfg)
    sqrt_a, sqrt_b, x, y, inv_sqrt_a = ints.sqrt_a, ints.sqrt_b, ints.x, ints.y, ints.inv_sqrt_a

    mg, cg, heron, wass = _gaps_from_parts(a, b, sqrt_a, sqrt_b, x, inv_sqrt_a)

    # r1: cross-term identity for 4(heron - wasserstein)
    sab = sqrt_a @ sqrt_b
    sba = sqrt_b @ sqrt_a
    sxs_r = sqrt_a @ x @ inv_sqrt_a
    sxs_l = inv_sqrt_a @ x @ sqrt_a
    lhs1 = 4.0 * (heron - wass)
    rhs1 = sab + sba - sxs_r - sxs_l
    scale1 = (
        frobenius_norm(sab) + frobenius_norm(sba)
        + frobenius_norm(sxs_r) + frobenius_norm(sxs_l)
    )
    r1 = frobenius_norm(lhs1 - rhs1) / scale1

    # r2: the same identity conjugated by A^{1/2}
    ay = a @ y
    ya = y.conj().T @ a
    ax = a @ x
    xa = x @ a
    lhs2 = ay + ya - ax - xa
    rhs2 = 4.0 * (sqrt_a @ (heron - wass) @ sqrt_a)
    scale2 = (
        frobenius_norm(ay) + frobenius_norm(ya)
        + frobenius_norm(ax) + frobenius_norm(xa)
    )
    r2 = frobenius_norm(lhs2 - rhs2) / scale2

    # r3: expansion of (A+Y)*(A+Y) - (A+X)^2 using Y*Y = X^2
    apy = a + y
    apx = a + x
    gram = apy.conj().T @ apy
    r3 = frobenius_norm(gram - apx @ apx - lhs2) / frobenius_norm(gram)

    # r4: triangle equality |A+Y| = A + X (conditional on mean equality)
    r4 = frobenius_norm(abs_op(apy, cfg) - apx) / frobenius_norm(apx)

    # r5: polar factor of Y collapses to the identity (conditional)
    polar_singular = False
    try:
        u = polar(y, cfg).isometry
        r5 = frobenius_norm(u - np.eye(n)) / math.sqrt(n)
    except Singular:
        polar_singular = True
        r5 = math.inf

    # r6: self-adjointness of Y, the commutativity conclusion
    r6 = frobenius_norm(y - y.conj().T) / frobenius_norm(y)

    trace_gap = float(np.trace(x).real - np.einsum("ij,ji->", sqrt_a, sqrt_b).real)

    return GapReport(
        mean_gap=mg,
        commutator_gap=cg,
        residuals={"r1": r1, "r2": r2, "r3": r3, "r4": r4, "r5": r5, "r6": r6},
        trace_gap=trace_gap,
        polar_singular=polar_singular,
    )


def classify_gaps(mean_gap: float, comm_gap: float, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Verdict:
    """Verdict from the two gaps.

    Equality band is identity_tol; a commutator gap above VIOLATION_BAND
    together with an equality-band mean gap would contradict the theorem
    and is flagged as such (it is a build-failing event, never observed).
    Anything straddling the band in between is Indeterminate.
    """
    tol = cfg.identity_tol
    means_equal = mean_gap <= tol
    if means_equal and comm_gap > VIOLATION_BAND:
        return Verdict.COUNTEREXAMPLE_TO_THEOREM
    if means_equal and comm_gap <= tol:
        return Verdict.MEANS_EQUAL_AND_COMMUTE
    if mean_gap > 10.0 * tol and comm_gap > 10.0 * tol:
        return Verdict.BOTH_GAPS_POSITIVE
    return Verdict.INDETERMINATE


def theorem_check(p: HpdPair, cfg: ToleranceConfig = DEFAULT_CONFIG) -> Verdict:
    """Classify one pair by its mean gap and commutator gap."""
    mg, cg = pair_gaps(p, cfg)
    return classify_gaps(mg, cg, cfg)


def trace_criterion(p: HpdPair, cfg: ToleranceConfig = DEFAULT_CONFIG) -> tuple[float, bool]:
    """Trace witness for commutativity: tr X - tr(A^{1/2} B^{1/2}).

    By cyclicity of the trace, tr(heron) = (tr A + tr B)/4 + tr(A^{1/2}B^{1/2})/2
    and tr(wasserstein) = (tr A + tr B)/4 + tr(X)/2, so this gap equals
    2 (tr wasserstein - tr heron). It is also tr|Y| - tr Y >= 0, with
    equality exactly when Y is positive, i.e. when A and B commute.

    Returns (trace_gap, commute_flag) with the flag true when the gap is
    within identity_tol * tr X of zero.
    """
    sqrt_a, _ = sqrt_and_inv_sqrt(p.a, cfg)
    eig_b = hermitian_eigen(p.b, cfg)
    sqrt_b = _assemble(eig_b, np.sqrt(np.maximum(eig_b.eigenvalues, 0.0)))
    core = sqrt_a @ p.b @ sqrt_a
    eig_core = hermitian_eigen((core + core.conj().T) / 2.0, cfg)
    trace_x = float(np.sum(np.sqrt(np.maximum(eig_core.eigenvalues, 0.0))))
    cross = float(np.einsum("ij,ji->", sqrt_a, sqrt_b).real)
    gap = trace_x - cross
    return gap, gap <= cfg.identity_tol * trace_x


def ando_hayashi_witness(x, y, cfg: ToleranceConfig = DEFAULT_CONFIG) -> WitnessReport:
    """Recover the common polar factor guaranteed by |X+Y| = |X| + |Y|.

    Raises TriangleEqualityFails when the triangle residual exceeds
    identity_tol (the construction then does not apply) and Singular when
    X + Y is not invertible within the floor.
    """
    x = as_matrix(x)
    y = as_matrix(y)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    abs_x = abs_op(x, cfg)
    abs_y = abs_op(y, cfg)
    total = x + y
    abs_total = abs_op(total, cfg)
    denom = frobenius_norm(abs_total)
    residual = frobenius_norm(abs_total - abs_x - abs_y) / denom if denom > 0.0 else 0.0
    if residual > cfg.identity_tol:
        raise TriangleEqualityFails(residual)
    u = polar(total, cfg).isometry
    nx = frobenius_norm(x)
    ny = frobenius_norm(y)
    rx = frobenius_norm(x - u @ abs_x) / nx if nx > 0.0 else 0.0
    ry = frobenius_norm(y - u @ abs_y) / ny if ny > 0.0 else 0.0
    return WitnessReport(triangle_residual=residual, witness=u, factor_residuals=(rx, ry))


def _hermitian_basis(n: int) -> list[np.ndarray]:
    """Coordinate directions spanning the n^2-dimensional real space of
    Hermitian matrices: diagonal units, then (E_ij + E_ji) and
    i (E_ij - E_ji) for i < j."""
    basis = []
    for i in range(n):
        e = np.zeros((n, n), dtype=np.complex128)
        e[i, i] = 1.0
        basis.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), dtype=np.complex128)
            e[i, j] = 1.0
            e[j, i] = 1.0
            basis.append(e)
            e = np.zeros((n, n), dtype=np.complex128)
            e[i, j] = 1.0j
            e[j, i] = -1.0j
            basis.append(e)
    return basis


class GapObjective:
    """Squared normalized mean gap as a function of the log chart of B.

    The free variable is a Hermitian matrix S and the objective is
    mean_gap(A, exp(S))^2, so positivity of B is structural. Gradients are
    finite differences in the n^2 real coordinates of S: forward
    differences are what the optimizer uses, central differences are kept
    for independent spot checks.
    """

    def __init__(self, a, cfg: ToleranceConfig = DEFAULT_CONFIG):
        self.cfg = cfg
        self.a = require_hermitian(a, cfg)
        self.sqrt_a, self.inv_sqrt_a = sqrt_and_inv_sqrt(self.a, cfg)
        self.norm_a = frobenius_norm(self.a)
        self.n = self.a.shape[0]
        self.basis = _hermitian_basis(self.n)

    def exp_point(self, s) -> np.ndarray:
        """B = exp(S)."""
        eig = hermitian_eigen(s, self.cfg)
        return _assemble(eig, np.exp(eig.eigenvalues))

    def evaluate(self, s) -> tuple[float, float, np.ndarray]:
        """(objective, mean_gap, exp(S)); exp(S/2) shares the one
        eigendecomposition of S."""
        cfg = self.cfg
        eig = hermitian_eigen(s, cfg)
        b = _assemble(eig, np.exp(eig.eigenvalues))
        sqrt_b = _assemble(eig, np.exp(eig.eigenvalues / 2.0))
        core = self.sqrt_a @ b @ self.sqrt_a
        eig_core = hermitian_eigen((core + core.conj().T) / 2.0, cfg)
        x = _assemble(eig_core, np.sqrt(np.maximum(eig_core.eigenvalues, 0.0)))
        avg = (self.sqrt_a + sqrt_b) / 2.0
        heron = avg @ avg
        wass = (self.a + b + self.sqrt_a @ x @ self.inv_sqrt_a
                + self.inv_sqrt_a @ x @ self.sqrt_a) / 4.0
        gap = frobenius_norm(heron - wass) / (self.norm_a + frobenius_norm(b))
        return gap * gap, gap, b

    def value(self, s) -> float:
        return self.evaluate(s)[0]

    def step_size(self, s) -> float:
        return FD_STEP_SCALE * (1.0 + frobenius_norm(s))

    def gradient_forward(self, s, f0: float | None = None) -> np.ndarray:
        """Forward-difference gradient, the optimizer's own."""
        if f0 is None:
            f0 = self.value(s)
        h = self.step_size(s)
        g = np.empty(len(self.basis))
        for k, e in enumerate(self.basis):
            g[k] = (self.value(s + h * e) - f0) / h
        return g

    def gradient_central(self, s) -> np.ndarray:
        """Central-difference gradient, kept independent for spot checks."""
        h = self.step_size(s)
        g = np.empty(len(self.basis))
        for k, e in enumerate(self.basis):
            g[k] = (self.value(s + h * e) - self.value(s - h * e)) / (2.0 * h)
        return g

    def direction(self, coords: np.ndarray) -> np.ndarray:
        """Hermitian matrix with the given coordinates in the basis."""
        d = np.zeros((self.n, self.n), dtype=np.complex128)
        for c, e in zip(coords, self.basis):
            d += c * e
        return d


def minimize_gap(
    a,
    b0,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
    budget: int = 1000,
    record_states: bool = False,
) -> DescentTrace:
    """Drive the squared mean gap toward zero over B with A held fixed.

    Steepest descent in the Hermitian log chart S (B = exp(S)) with a
    forward-difference gradient and a halving backtracking line search
    (Armijo slope ARMIJO_SLOPE, at most MAX_BACKTRACKS halvings). The
    initial trial step of each line search is the Barzilai-Borwein
    estimate from the last accepted move (falling back to twice the last
    accepted step), which is what lets the descent cross the
    ill-conditioned valley floor within realistic budgets. Stops when the
    objective reaches OBJECTIVE_FLOOR, the accepted-step budget is
    exhausted, or no descent step can be found; the last case sets the
    no_descent flag instead of raising.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    obj = GapObjective(a, cfg)
    pair = HpdPair.validated(obj.a, b0, cfg)
    s = logm(pair.b, cfg)
    f, gap, b = obj.evaluate(s)
    iterates = [(0, gap, commutator_gap(obj.a, b), f)]
    states = [s] if record_states else None
    no_descent = False
    stop_reason = "budget"
    trial_scale = 1.0
    prev_g: np.ndarray | None = None
    prev_move: np.ndarray | None = None
    if f <= OBJECTIVE_FLOOR:
        stop_reason = "converged"
        budget = 0
    for step in range(1, budget + 1):
        g = obj.gradient_forward(s, f)
        gnorm2 = float(g @ g)
        if gnorm2 == 0.0:
            no_descent = True
            stop_reason = "no_descent"
            break
        t = trial_scale
        if prev_g is not None:
            dg = g - prev_g
            dgg = float(dg @ dg)
            if dgg > 0.0:
                bb = float(prev_move @ dg) / dgg
                if bb > 0.0:
                    t = min(max(bb, 1e-12), 1e6)
        delta = -obj.direction(g)
        accepted = False
        for _ in range(MAX_BACKTRACKS):
            s_try = s + t * delta
            f_try, gap_try, b_try = obj.evaluate(s_try)
            if f_try <= f - ARMIJO_SLOPE * t * gnorm2:
                accepted = True
                break
            t /= 2.0
        if not accepted:
            no_descent = True
            stop_reason = "no_descent"
            break
        prev_g = g
        prev_move = -t * g
        s, f, gap, b = s_try, f_try, gap_try, b_try
        iterates.append((step, gap, commutator_gap(obj.a, b), f))
        if states is not None:
            states.append(s)
        trial_scale = min(t * 2.0, 1e6)
        if f <= OBJECTIVE_FLOOR:
            stop_reason = "converged"
            break
    return DescentTrace(
        iterates=iterates,
        final_b=b,
        no_descent=no_descent,
        stop_reason=stop_reason,
        states=states,
    )
