"""Operator means on the positive-definite cone.

Three two-variable means of Hermitian positive-definite matrices:

  heron_mean          ((A^{1/2} + B^{1/2}) / 2)^2
  geometric_mean      A # B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}
  wasserstein_mean    (A + B + A (A^{-1} # B) + (A^{-1} # B) A) / 4

plus the intermediates X = (A^{1/2} B A^{1/2})^{1/2} and Y = B^{1/2} A^{1/2}
that the equality analysis in `verify` is phrased in. The Wasserstein mean
uses the identity A^{-1} # B = A^{-1/2} X A^{-1/2}, so its primary
evaluation route is (A + B + A^{1/2} X A^{-1/2} + A^{-1/2} X A^{1/2}) / 4;
the literal route through geometric_mean(A^{-1}, B) is kept as an
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_CONFIG,
    NotPositiveDefinite,
    ToleranceConfig,
    invm,
    is_positive_definite,
    require_hermitian,
    sqrt_and_inv_sqrt,
    sqrtm,
)

__all__ = [
    "HpdPair",
    "ProofIntermediates",
    "proof_intermediates",
    "geometric_mean",
    "heron_mean",
    "wasserstein_mean",
    "wasserstein_mean_via_gmean",
    "bw_distance_sq",
]


@dataclass(frozen=True)
class HpdPair:
    """A pair of Hermitian positive-definite matrices of equal size.

    Construct through `HpdPair.validated` unless positivity is already
    guaranteed structurally (the random generators build pairs directly).
    """

    a: np.ndarray
    b: np.ndarray

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    @classmethod
    def validated(cls, a, b, cfg: ToleranceConfig = DEFAULT_CONFIG) -> "HpdPair":
        a = require_hermitian(a, cfg)
        b = require_hermitian(b, cfg)
        if a.shape != b.shape:
            raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
        for name, m in (("a", a), ("b", b)):
            if not is_positive_definite(m, cfg):
                raise NotPositiveDefinite(f"matrix {name} is not positive definite")
        return cls(a=a, b=b)


@dataclass(frozen=True)
class ProofIntermediates:
    """X, Y and the square-root factors entering the equality analysis.

    x = (A^{1/2} B A^{1/2})^{1/2}, positive definite;
    y = B^{1/2} A^{1/2}, generally non-Hermitian with Y*Y = X^2.
    """

    x: np.ndarray
    y: np.ndarray
    sqrt_a: np.ndarray
    sqrt_b: np.ndarray
    inv_sqrt_a: np.ndarray


def _core_sqrt(sqrt_a: np.ndarray, b: np.ndarray, cfg: ToleranceConfig) -> np.ndarray:
    """(A^{1/2} B A^{1/2})^{1/2} from a precomputed square root of A."""
    core = sqrt_a @ b @ sqrt_a
    return sqrtm((core + core.conj().T) / 2.0, cfg)


def proof_intermediates(p: HpdPair, cfg: ToleranceConfig = DEFAULT_CONFIG) -> ProofIntermediates:
    """Compute X, Y, A^{1/2}, B^{1/2}, A^{-1/2} for a validated pair."""
    sqrt_a, inv_sqrt_a = sqrt_and_inv_sqrt(p.a, cfg)
    sqrt_b = sqrtm(p.b, cfg)
    x = _core_sqrt(sqrt_a, p.b, cfg)
    y = sqrt_b @ sqrt_a
    return ProofIntermediates(x=x, y=y, sqrt_a=sqrt_a, sqrt_b=sqrt_b, inv_sqrt_a=inv_sqrt_a)


def geometric_mean(p: HpdPair, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Geometric mean A # B, the unique positive solution G of G A^{-1} G = B."""
    sqrt_a, inv_sqrt_a = sqrt_and_inv_sqrt(p.a, cfg)
    inner = inv_sqrt_a @ p.b @ inv_sqrt_a
    g = sqrt_a @ sqrtm((inner + inner.conj().T) / 2.0, cfg) @ sqrt_a
    return require_hermitian(g, cfg)


def heron_mean(p: HpdPair, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Square of the arithmetic mean of the square roots.

    Equals (A + B + A^{1/2} B^{1/2} + B^{1/2} A^{1/2}) / 4 when expanded.
    """
    avg = (sqrtm(p.a, cfg) + sqrtm(p.b, cfg)) / 2.0
    return require_hermitian(avg @ avg, cfg)


def wasserstein_mean(p: HpdPair, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Wasserstein mean via the X-form.

    Evaluates (A + B + A^{1/2} X A^{-1/2} + A^{-1/2} X A^{1/2}) / 4 with
    X = (A^{1/2} B A^{1/2})^{1/2}. Hermitian in exact arithmetic; the
    result is symmetrized, but unlike the other two means it is not
    certified positive definite here, only Hermitian.
    """
    sqrt_a, inv_sqrt_a = sqrt_and_inv_sqrt(p.a, cfg)
    x = _core_sqrt(sqrt_a, p.b, cfg)
    w = (p.a + p.b + sqrt_a @ x @ inv_sqrt_a + inv_sqrt_a @ x @ sqrt_a) / 4.0
    return require_hermitian(w, cfg)


def wasserstein_mean_via_gmean(p: HpdPair, cfg: ToleranceConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Cross-check route: literal (A + B + A G + G A) / 4 with G = A^{-1} # B.

    Independent of the X-form path except for the shared eigensolver, so
    agreement between the two routes is a meaningful internal oracle.
    """
    inv_a = invm(p.a, cfg)
    g = geometric_mean(HpdPair(a=inv_a, b=p.b), cfg)
    w = (p.a + p.b + p.a @ g + g @ p.a) / 4.0
    return require_hermitian(w, cfg)


def bw_distance_sq(p: HpdPair, cfg: ToleranceConfig = DEFAULT_CONFIG) -> float:
    """Squared Bures-Wasserstein distance, tr A + tr B - 2 tr X.

    Nonnegative up to roundoff, zero exactly when A = B.
    """
    sqrt_a = sqrtm(p.a, cfg)
    x = _core_sqrt(sqrt_a, p.b, cfg)
    return float(np.trace(p.a).real + np.trace(p.b).real - 2.0 * np.trace(x).real)
