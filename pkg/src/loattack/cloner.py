"""Entangling-cloner route to the eavesdropper's information bounds.

The attacker replaces the channel with a beam splitter of transmission T fed
by half of an EPR pair of variance N, keeps the other half plus the reflected
output in a quantum memory, and measures collectively. Working directly with
her two-mode state gives a second, independent derivation of both Holevo
bounds; this module deliberately re-derives every closed form instead of
reusing the key-rate pipeline, so the two can cross-validate each other.
Only the scalar entropy kernel is shared (via ``gaussian.g_entropy``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import CovarianceMatrix, UnphysicalStateError, g_entropy

_SIGMA_Z = np.diag([1.0, -1.0])
_CLAMP = 1e-9
_PHYS = 1e-6


@dataclass(frozen=True)
class ClonerState:
    """Second moments of the attacker's two retained modes.

    ``v_e1`` is the reflected-output variance, ``v_e1_given_a`` the same
    conditioned on Alice's encoding; the z_* fields are the pairwise
    quadrature correlations with the kept EPR half and with Bob's mode.
    """

    v_e1: float
    v_e1_given_a: float
    z_e1e2: float
    z_e1b: float
    z_e2b: float
    gamma_e: CovarianceMatrix


def _require_open_channel(v: float, t: float, n_eve: float) -> None:
    if v < 1.0:
        raise ValueError(f"total variance must be >= 1, got {v!r}")
    if not 0.0 < t < 1.0:
        raise ValueError(
            f"entangling cloner needs channel transmission in (0, 1), got {t!r}"
        )
    if n_eve < 1.0:
        raise ValueError(f"EPR variance must be >= 1, got {n_eve!r}")


def _sqrt_clamped(x: float) -> float:
    if x < 0.0:
        if x < -_CLAMP:
            raise UnphysicalStateError(f"negative radicand {x!r} in cloner spectrum")
        return 0.0
    return math.sqrt(x)


def _g(lam: float) -> float:
    if lam < 1.0 - _PHYS:
        raise UnphysicalStateError(f"cloner eigenvalue {lam!r} below vacuum floor")
    return g_entropy(max(0.0, (lam - 1.0) / 2.0))


def _pair_from_invariants(delta: float, det: float) -> tuple[float, float]:
    """Symplectic pair of a two-mode state from its Delta invariant and det."""
    root = _sqrt_clamped(delta * delta - 4.0 * det)
    return _sqrt_clamped((delta - root) / 2.0), math.sqrt((delta + root) / 2.0)


def eve_covariance(v: float, t: float, n_eve: float) -> ClonerState:
    """Attacker's two-mode covariance and its derived correlation scalars."""
    _require_open_channel(v, t, n_eve)
    v_e1 = (1.0 - t) * v + t * n_eve
    v_e1_given_a = (1.0 - t) + t * n_eve
    z_e1e2 = math.sqrt(t * (n_eve * n_eve - 1.0))
    z_e1b = math.sqrt(t * (1.0 - t)) * (n_eve - v)
    z_e2b = math.sqrt(1.0 - t) * math.sqrt(n_eve * n_eve - 1.0)
    top = np.hstack([v_e1 * np.eye(2), z_e1e2 * _SIGMA_Z])
    bottom = np.hstack([z_e1e2 * _SIGMA_Z, n_eve * np.eye(2)])
    gamma_e = CovarianceMatrix(np.vstack([top, bottom]))
    return ClonerState(v_e1, v_e1_given_a, z_e1e2, z_e1b, z_e2b, gamma_e)


def eve_symplectic_pair(v: float, t: float, n_eve: float) -> tuple[float, float]:
    """Closed-form symplectic pair of the attacker's unconditioned state."""
    state = eve_covariance(v, t, n_eve)
    z2 = state.z_e1e2 * state.z_e1e2
    delta = state.v_e1 * state.v_e1 + n_eve * n_eve - 2.0 * z2
    det = (state.v_e1 * n_eve - z2) ** 2
    return _pair_from_invariants(delta, det)


def eve_entropy(v: float, t: float, n_eve: float) -> float:
    """Entropy of the attacker's state in bits; equals the joint AB entropy."""
    lo, hi = eve_symplectic_pair(v, t, n_eve)
    return _g(lo) + _g(hi)


def eve_conditional_on_alice(v: float, t: float, n_eve: float) -> CovarianceMatrix:
    """Attacker's covariance given Alice's data: the Q entry of the reflected
    mode drops to its conditional value, everything else is untouched."""
    state = eve_covariance(v, t, n_eve)
    m = np.array(state.gamma_e.matrix)
    m[0, 0] = state.v_e1_given_a
    return CovarianceMatrix(m)


def holevo_ae_cloner(v: float, t: float, n_eve: float) -> float:
    """Holevo bound on the attacker's information about Alice's data (bits)."""
    state = eve_covariance(v, t, n_eve)
    z2 = state.z_e1e2 * state.z_e1e2
    delta = state.v_e1_given_a * state.v_e1 + n_eve * n_eve - 2.0 * z2
    det = (state.v_e1_given_a * n_eve - z2) * (state.v_e1 * n_eve - z2)
    lo, hi = _pair_from_invariants(delta, det)
    return eve_entropy(v, t, n_eve) - _g(lo) - _g(hi)


def eve_conditional_on_bob(v: float, t: float, n_eve: float) -> CovarianceMatrix:
    """Attacker's covariance given Bob's Q homodyne outcome.

    Assembled from the block-diagonal conditional entries: only the Q row of
    each retained mode is corrected by its correlation with Bob's mode.
    """
    state = eve_covariance(v, t, n_eve)
    v_b = t * v + (1.0 - t) * n_eve
    f_block = np.diag([state.v_e1 - state.z_e1b**2 / v_b, state.v_e1])
    g_block = np.diag([n_eve - state.z_e2b**2 / v_b, n_eve])
    h_block = np.diag(
        [state.z_e1e2 - state.z_e1b * state.z_e2b / v_b, -state.z_e1e2]
    )
    return CovarianceMatrix(
        np.block([[f_block, h_block.T], [h_block, g_block]])
    )


def eve_given_bob_pair(v: float, t: float, n_eve: float) -> tuple[float, float]:
    """Symplectic pair of the conditional state via block determinants."""
    m = eve_conditional_on_bob(v, t, n_eve).matrix
    f_det = m[0, 0] * m[1, 1]
    g_det = m[2, 2] * m[3, 3]
    h_det = m[0, 2] * m[1, 3]
    delta = f_det + g_det + 2.0 * h_det
    det = float(np.linalg.det(m))
    return _pair_from_invariants(delta, det)


def holevo_be_cloner(v: float, t: float, n_eve: float) -> float:
    """Holevo bound on the attacker's information about Bob's data (bits)."""
    lo, hi = eve_given_bob_pair(v, t, n_eve)
    return eve_entropy(v, t, n_eve) - _g(lo) - _g(hi)
