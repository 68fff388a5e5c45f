"""Symplectic linear algebra and entropy primitives for Gaussian states.

All covariance matrices are expressed in shot-noise units, i.e. the vacuum
quadrature variance equals 1, with mode ordering (Q1, P1, Q2, P2, ...).
A covariance matrix is physical iff every symplectic eigenvalue is >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Construction-time symmetry contract.
SYMMETRY_TOL = 1e-12
# Floating-point noise near pure states can push eigenvalues/radicands a hair
# below their analytic bound; anything within this margin is clamped.
CLAMP_TOL = 1e-9
# Looser gate used when a matrix is consumed as a quantum state.
PHYSICALITY_TOL = 1e-6


class UnphysicalStateError(ValueError):
    """A covariance matrix has a symplectic eigenvalue below the vacuum floor."""


def symplectic_form(n_modes: int) -> np.ndarray:
    """Standard symplectic form for (Q1, P1, ..., Qn, Pn) ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Real symmetric 2n x 2n second-moment matrix of an n-mode Gaussian state.

    Parameters
    ----------
    matrix : array_like
        Square 2n x 2n array, symmetric to within ``SYMMETRY_TOL``.

    Raises
    ------
    ValueError
        If the array is not square/even-dimensional or not symmetric.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0 or m.shape[0] % 2:
            raise ValueError(f"covariance matrix must be 2n x 2n, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("covariance matrix contains non-finite entries")
        if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
            raise ValueError(
                f"covariance matrix is not symmetric within {SYMMETRY_TOL:g}"
            )
        m = 0.5 * (m + m.T)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues of a covariance matrix, sorted ascending.

    One eigenvalue per mode; each is >= 1 for a physical state.
    """

    eigenvalues: tuple[float, ...]

    def __post_init__(self):
        if not all(math.isfinite(e) for e in self.eigenvalues):
            raise ValueError("symplectic spectrum contains non-finite values")
        object.__setattr__(self, "eigenvalues", tuple(sorted(self.eigenvalues)))

    def __iter__(self):
        return iter(self.eigenvalues)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def min(self) -> float:
        return self.eigenvalues[0]

    def assert_physical(self, tol: float = PHYSICALITY_TOL) -> None:
        if self.eigenvalues[0] < 1.0 - tol:
            raise UnphysicalStateError(
                f"symplectic eigenvalue {self.eigenvalues[0]!r} below vacuum floor "
                f"(tolerance {tol:g})"
            )


def _as_cov(cov: CovarianceMatrix | np.ndarray) -> CovarianceMatrix:
    if isinstance(cov, CovarianceMatrix):
        return cov
    return CovarianceMatrix(np.asarray(cov))


def g_entropy(x: float) -> float:
    """Bosonic entropy kernel (x+1)log2(x+1) - x log2(x), in bits.

    The x -> 0 limit is 0. Tiny negative inputs from floating-point noise
    (down to -1e-12) are clamped to 0; anything below that is a domain error.
    """
    if x < -1e-12:
        raise ValueError(f"g_entropy requires x >= 0, got {x!r}")
    if x <= 0.0:
        return 0.0
    return (x + 1.0) * math.log2(x + 1.0) - x * math.log2(x)


def symplectic_eigenvalues(cov: CovarianceMatrix | np.ndarray) -> SymplecticSpectrum:
    """Symplectic spectrum of a covariance matrix, one value per mode.

    Computed as the moduli of the eigenvalues of ``Omega @ cov`` (equivalently
    ``i Omega cov``), which occur in +/- pairs; each pair is averaged. Values
    within ``CLAMP_TOL`` below 1 are clamped to 1.
    """
    c = _as_cov(cov)
    ev = np.sort(np.abs(np.linalg.eigvals(symplectic_form(c.n_modes) @ c.matrix)))
    lams = 0.5 * (ev[0::2] + ev[1::2])
    lams = np.where((lams < 1.0) & (lams > 1.0 - CLAMP_TOL), 1.0, lams)
    return SymplecticSpectrum(tuple(float(l) for l in lams))


def von_neumann_entropy(cov: CovarianceMatrix | np.ndarray) -> float:
    """Entropy of a Gaussian state in bits: sum of g_entropy((lam - 1)/2).

    Raises
    ------
    UnphysicalStateError
        If any symplectic eigenvalue is below 1 - PHYSICALITY_TOL.
    """
    spectrum = symplectic_eigenvalues(cov)
    spectrum.assert_physical()
    return sum(g_entropy(max(0.0, (lam - 1.0) / 2.0)) for lam in spectrum)


def conditional_covariance_homodyne(
    cov_joint: CovarianceMatrix | np.ndarray,
    measured_mode: int,
    quadrature: str = "Q",
) -> CovarianceMatrix:
    """Covariance of the kept modes after homodyning one quadrature of one mode.

    Implements gamma_kept - sigma^T (X gamma_meas X)^+ sigma, where X projects
    onto the measured quadrature and ^+ is the Moore-Penrose inverse: for the
    rank-1 matrix diag(v, 0) it is diag(1/v, 0) when v > 0 and the zero matrix
    when v = 0 (in which case the measurement carries no information).

    Parameters
    ----------
    cov_joint : CovarianceMatrix or array
        Joint covariance of n >= 2 modes.
    measured_mode : int
        Index of the mode that is measured (0-based).
    quadrature : {"Q", "P"}
        Which quadrature the homodyne detector reads out.
    """
    cov = _as_cov(cov_joint)
    n = cov.n_modes
    if n < 2:
        raise ValueError("conditioning requires at least two modes")
    if not 0 <= measured_mode < n:
        raise ValueError(f"measured_mode {measured_mode} out of range for {n} modes")
    quad = quadrature.upper()
    if quad not in ("Q", "P"):
        raise ValueError(f"quadrature must be 'Q' or 'P', got {quadrature!r}")

    m = cov.matrix
    col = 2 * measured_mode + ("Q", "P").index(quad)
    kept = [i for i in range(2 * n) if i // 2 != measured_mode]
    reduced = m[np.ix_(kept, kept)]
    v = m[col, col]
    if v > 0.0:
        s = m[kept, col]
        reduced = reduced - np.outer(s, s) / v
    return CovarianceMatrix(reduced)


def beam_splitter_symplectic(
    n_modes: int, mode_a: int, mode_b: int, transmission: float
) -> np.ndarray:
    """Symplectic matrix mixing two modes on a beam splitter.

    Acts identically on both quadratures:
    out_a = sqrt(T) in_a + sqrt(1-T) in_b, out_b = sqrt(1-T) in_a - sqrt(T) in_b.
    """
    if not 0.0 <= transmission <= 1.0:
        raise ValueError(f"transmission must lie in [0, 1], got {transmission!r}")
    if mode_a == mode_b:
        raise ValueError("beam splitter needs two distinct modes")
    root_t = math.sqrt(transmission)
    root_r = math.sqrt(1.0 - transmission)
    s = np.eye(2 * n_modes)
    for q in (0, 1):
        ia, ib = 2 * mode_a + q, 2 * mode_b + q
        s[ia, ia] = root_t
        s[ia, ib] = root_r
        s[ib, ia] = root_r
        s[ib, ib] = -root_t
    return s


def apply_symplectic(
    cov: CovarianceMatrix | np.ndarray, s: np.ndarray
) -> CovarianceMatrix:
    """Conjugate a covariance matrix by a symplectic transformation: S cov S^T."""
    c = _as_cov(cov)
    return CovarianceMatrix(s @ c.matrix @ s.T)


def permute_modes(
    cov: CovarianceMatrix | np.ndarray, order: tuple[int, ...]
) -> CovarianceMatrix:
    """Reorder modes; ``order[k]`` names the old mode placed at new slot k."""
    c = _as_cov(cov)
    if sorted(order) != list(range(c.n_modes)):
        raise ValueError(f"order {order!r} is not a permutation of {c.n_modes} modes")
    idx = [2 * m + q for m in order for q in (0, 1)]
    return CovarianceMatrix(c.matrix[np.ix_(idx, idx)])
