"""Deterministic random-instance generation.

The whole pipeline is pinned down so that a fixed seed reproduces matrices
bit for bit, across machines and reruns:

  * stream: splitmix64 (64-bit additive state walk plus finalizer);
  * uniforms: top 53 bits of each 64-bit word, so u = (word >> 11) * 2^-53
    lies in [0, 1);
  * gaussians: Box-Muller pairs, cosine value first, sine value second;
    the radius uses ((word >> 11) + 1) * 2^-53 in (0, 1] so the log is
    finite. A request for an odd count discards the trailing sine value;
    nothing is buffered across calls;
  * complex gaussians: one Box-Muller pair per entry, real part first,
    entries in row-major order;
  * unitary frames: modified Gram-Schmidt (two passes) applied to a
    complex gaussian matrix. The triangular factor's diagonal comes out
    real and positive, which pins the phase of every column;
  * HPD matrices: frame @ diag(eigenvalues) @ frame*. Eigenvalues sit in
    [1/sqrt(c), sqrt(c)] for condition target c: the endpoints are placed
    deterministically (so the realized condition number is c) and the
    remaining n - 2 values are drawn log-uniformly in between.

Per-trial seeds for batch runs come from `mix_seed`, the splitmix64
finalizer applied to master XOR ((index + 1) * golden ratio increment).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_CONFIG, NumericalError, ToleranceConfig, expm, logm
from .means import HpdPair

__all__ = [
    "InvalidSpec",
    "SplitMix64",
    "mix_seed",
    "GenSpec",
    "FAMILIES",
    "random_hpd",
    "random_commuting_pair",
    "near_commuting_pair",
]

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class InvalidSpec(ValueError):
    """Generation spec violates its invariants."""


class SplitMix64:
    """splitmix64 stream: state += golden; output = finalizer(state)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_double(self) -> float:
        """Uniform in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_double()

    def gauss_pair(self) -> tuple[float, float]:
        """One Box-Muller pair of standard normals."""
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
        u2 = self.next_double()
        rad = math.sqrt(-2.0 * math.log(u1))
        ang = 2.0 * math.pi * u2
        return rad * math.cos(ang), rad * math.sin(ang)

    def gaussians(self, count: int) -> list[float]:
        out = []
        while len(out) < count:
            z0, z1 = self.gauss_pair()
            out.append(z0)
            out.append(z1)
        return out[:count]

    def complex_gaussian_matrix(self, n: int) -> np.ndarray:
        """n x n matrix of z0 + i z1 entries, one pair per entry, row-major."""
        m = np.empty((n, n), dtype=np.complex128)
        for i in range(n):
            for j in range(n):
                z0, z1 = self.gauss_pair()
                m[i, j] = complex(z0, z1)
        return m


def mix_seed(master: int, index: int) -> int:
    """Per-trial seed from a master seed and a trial index."""
    return SplitMix64((master ^ ((index + 1) * GOLDEN)) & MASK64).next_u64()


FAMILIES = ("generic", "commuting", "near_commuting")


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one random draw.

    dim          matrix size, >= 1
    seed         64-bit unsigned seed
    cond_target  ratio of largest to smallest eigenvalue, >= 1
    family       "generic" (one matrix), "commuting" (shared-frame pair),
                 or "near_commuting" (commuting pair perturbed by epsilon
                 in the log chart of B)
    epsilon      perturbation size, >= 0, only meaningful (and only
                 allowed nonzero) for the near_commuting family
    """

    dim: int
    seed: int
    cond_target: float = 10.0
    family: str = "generic"
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InvalidSpec(f"dim must be a positive integer, got {self.dim!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= MASK64:
            raise InvalidSpec(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not self.cond_target >= 1.0:
            raise InvalidSpec(f"cond_target must be >= 1, got {self.cond_target!r}")
        if self.family not in FAMILIES:
            raise InvalidSpec(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not self.epsilon >= 0.0:
            raise InvalidSpec(f"epsilon must be >= 0, got {self.epsilon!r}")
        if self.family != "near_commuting" and self.epsilon != 0.0:
            raise InvalidSpec("epsilon is only meaningful for the near_commuting family")


def _orthonormal_frame(g: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass per column."""
    n = g.shape[0]
    q = g.astype(np.complex128, copy=True)
    for j in range(n):
        v = q[:, j]
        for _pass in range(2):
            for i in range(j):
                v = v - (np.vdot(q[:, i], v)) * q[:, i]
        norm = math.sqrt(np.vdot(v, v).real)
        if norm == 0.0:
            raise NumericalError("gaussian frame column collapsed to zero")
        q[:, j] = v / norm
    return q


def _eigenvalue_draw(rng: SplitMix64, n: int, cond: float) -> np.ndarray:
    """Eigenvalues in [1/sqrt(cond), sqrt(cond)], endpoints pinned for n >= 2."""
    half = 0.5 * math.log(cond)
    if n == 1:
        return np.array([math.exp(rng.uniform(-half, half))])
    vals = [math.exp(-half), math.exp(half)]
    for _ in range(n - 2):
        vals.append(math.exp(rng.uniform(-half, half)))
    return np.array(vals)


def _hpd_from(rng: SplitMix64, n: int, cond: float) -> np.ndarray:
    lam = _eigenvalue_draw(rng, n, cond)
    q = _orthonormal_frame(rng.complex_gaussian_matrix(n))
    m = (q * lam) @ q.conj().T
    return (m + m.conj().T) / 2.0


def _hermitian_unit(rng: SplitMix64, n: int) -> np.ndarray:
    """Random Hermitian direction with unit Frobenius norm."""
    g = rng.complex_gaussian_matrix(n)
    k = (g + g.conj().T) / 2.0
    norm = math.sqrt(np.vdot(k, k).real)
    if norm == 0.0:
        raise NumericalError("hermitian direction collapsed to zero")
    return k / norm


def random_hpd(spec: GenSpec) -> np.ndarray:
    """One Hermitian positive-definite matrix from the given spec."""
    rng = SplitMix64(spec.seed)
    return _hpd_from(rng, spec.dim, spec.cond_target)


def _commuting_parts(rng: SplitMix64, n: int, cond: float) -> tuple[np.ndarray, np.ndarray]:
    """Shared-frame pair: eigenvalues of A, then of B, then one frame."""
    lam_a = _eigenvalue_draw(rng, n, cond)
    lam_b = _eigenvalue_draw(rng, n, cond)
    q = _orthonormal_frame(rng.complex_gaussian_matrix(n))
    a = (q * lam_a) @ q.conj().T
    b = (q * lam_b) @ q.conj().T
    return (a + a.conj().T) / 2.0, (b + b.conj().T) / 2.0


def random_commuting_pair(spec: GenSpec) -> HpdPair:
    """Pair with a shared random eigenframe and independent eigenvalues."""
    rng = SplitMix64(spec.seed)
    a, b = _commuting_parts(rng, spec.dim, spec.cond_target)
    return HpdPair(a=a, b=b)


def near_commuting_pair(spec: GenSpec, cfg: ToleranceConfig = DEFAULT_CONFIG) -> HpdPair:
    """Commuting pair with B perturbed by epsilon in its log chart.

    B becomes exp(log(B0) + epsilon * K) for a seeded unit-norm Hermitian
    direction K, so positivity is structural. epsilon = 0 returns the
    commuting pair itself (no log/exp round trip), and the draw of K
    happens regardless of epsilon so that sweeps over epsilon at a fixed
    seed perturb one and the same triple (A, B0, K).
    """
    if spec.family != "near_commuting":
        raise InvalidSpec(f"near_commuting_pair needs the near_commuting family, got {spec.family!r}")
    rng = SplitMix64(spec.seed)
    a, b0 = _commuting_parts(rng, spec.dim, spec.cond_target)
    k = _hermitian_unit(rng, spec.dim)
    if spec.epsilon == 0.0:
        return HpdPair(a=a, b=b0)
    b = expm(logm(b0, cfg) + spec.epsilon * k, cfg)
    return HpdPair(a=a, b=b)
