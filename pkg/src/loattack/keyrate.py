"""Analytic key-rate pipeline: mutual information, Holevo bounds, key rates.

Two eavesdropper bounds are computed per parameter point: the true one at the
physical channel parameters (T, N), and the pseudo one at (eta*T, 1) -- the
parameters an unmonitored Bob infers when the LO has been attenuated by eta
under the zero-apparent-excess-noise tuning. Their gap is the information the
attacker intercepts without being noticed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ProtocolParams, bob_variances, covariance_ab
from .gaussian import (
    CovarianceMatrix,
    UnphysicalStateError,
    beam_splitter_symplectic,
    apply_symplectic,
    conditional_covariance_homodyne,
    g_entropy,
    permute_modes,
)

# Margin for radicands/eigenvalues grazing their analytic bound, and the gate
# below which a spectrum is rejected as unphysical.
_CLAMP = 1e-9
_PHYS = 1e-6


@dataclass(frozen=True)
class KeyRateReport:
    """Pseudo and true secret key rates for one parameter point, in bits/pulse.

    ``k_pseudo`` is what an unmonitored Bob believes he shares securely;
    ``k_true`` is what actually remains secret; ``intercepted`` is their gap.
    Negative rates are reported as-is, never clamped, so sign crossings stay
    visible; ``secure`` flags k_true > 0.
    """

    i_ab: float
    holevo_true: float
    holevo_pseudo: float
    k_true: float
    k_pseudo: float
    intercepted: float
    secure: bool


def _checked_sqrt(x: float, what: str) -> float:
    if x < 0.0:
        if x < -_CLAMP:
            raise UnphysicalStateError(f"negative {what}: {x!r}")
        x = 0.0
    return math.sqrt(x)


def _g_of_eigenvalue(lam: float) -> float:
    if lam < 1.0 - _PHYS:
        raise UnphysicalStateError(f"symplectic eigenvalue {lam!r} below vacuum floor")
    return g_entropy(max(0.0, (lam - 1.0) / 2.0))


def _abc(v: float, t: float, n_eve: float) -> tuple[float, float, float]:
    """Entries (a, b, c^2) of the joint two-mode covariance."""
    return v, t * v + (1.0 - t) * n_eve, t * (v * v - 1.0)


def joint_symplectic_pair(v: float, t: float, n_eve: float) -> tuple[float, float]:
    """Closed-form symplectic eigenvalues of the joint Alice-Bob state."""
    a, b, c2 = _abc(v, t, n_eve)
    inv_delta = a * a + b * b - 2.0 * c2
    inv_det = a * b - c2
    root = _checked_sqrt(inv_delta * inv_delta - 4.0 * inv_det * inv_det, "radicand")
    lo = _checked_sqrt((inv_delta - root) / 2.0, "eigenvalue square")
    hi = math.sqrt((inv_delta + root) / 2.0)
    return lo, hi


def alice_given_bob_eigenvalue(v: float, t: float, n_eve: float) -> float:
    """Symplectic eigenvalue of Alice's mode conditioned on Bob's homodyne."""
    return math.sqrt(
        ((1.0 - t) * n_eve * v * v + t * v) / (t * v + (1.0 - t) * n_eve)
    )


def dr_conditional_pair(v: float, t: float, n_eve: float) -> tuple[float, float]:
    """Closed-form symplectic pair of (Bob, heterodyne port) given Alice's data."""
    a, b, c2 = _abc(v, t, n_eve)
    inv_delta = a * a + b * b - 2.0 * c2
    inv_det = a * b - c2
    cc = (a + b * inv_det + inv_delta) / (a + 1.0)
    dd = inv_det * (b + inv_det) / (a + 1.0)
    root = _checked_sqrt(cc * cc - 4.0 * dd, "radicand")
    lo = _checked_sqrt((cc - root) / 2.0, "eigenvalue square")
    hi = math.sqrt((cc + root) / 2.0)
    return lo, hi


def conditional_bc_given_a(v: float, t: float, n_eve: float) -> CovarianceMatrix:
    """Joint covariance of (Bob, Alice's idle heterodyne port) given Alice's data.

    Built by the entanglement-based construction: adjoin a vacuum mode to the
    joint Alice-Bob state, mix it with Alice's mode on a balanced beam
    splitter (her heterodyne), reorder, and condition on the Q homodyne of the
    measured output. Mode order of the result is (B, C).
    """
    g_ab = covariance_ab(ProtocolParams(v_s=v - 1.0, t=t, eta=1.0, n_eve=n_eve))
    m = g_ab.matrix
    # modes (A0, C0, B): Alice's EPR half, the vacuum port, Bob
    big = np.eye(6)
    big[0:2, 0:2] = m[0:2, 0:2]
    big[0:2, 4:6] = m[0:2, 2:4]
    big[4:6, 0:2] = m[2:4, 0:2]
    big[4:6, 4:6] = m[2:4, 2:4]
    mixed = apply_symplectic(big, beam_splitter_symplectic(3, 0, 1, 0.5))
    reordered = permute_modes(mixed, (2, 1, 0))  # -> (B, C, A)
    return conditional_covariance_homodyne(reordered, measured_mode=2, quadrature="Q")


def mutual_info_ab(p: ProtocolParams) -> float:
    """Shannon mutual information between Alice's encodings and Bob's data.

    0.5 * log2(V_B / V_B|A); the LO scaling cancels in the ratio, so monitored
    and unmonitored measurements carry the same mutual information.
    """
    v_b, v_b_given_a = bob_variances(p, monitored=True)
    return 0.5 * math.log2(v_b / v_b_given_a)


def holevo_be(v: float, t: float, n_eve: float) -> float:
    """Holevo bound on the eavesdropper's information about Bob's data (bits).

    Closed form for the collective attack: entropy of the joint state minus
    the entropy of Alice's mode conditioned on Bob's homodyne outcome.
    """
    _check_holevo_args(v, t, n_eve)
    lo, hi = joint_symplectic_pair(v, t, n_eve)
    cond = alice_given_bob_eigenvalue(v, t, n_eve)
    return _g_of_eigenvalue(lo) + _g_of_eigenvalue(hi) - _g_of_eigenvalue(cond)


def holevo_ae(v: float, t: float, n_eve: float) -> float:
    """Holevo bound on the eavesdropper's information about Alice's data (bits).

    Entropy of the joint state minus the entropy of (Bob, Alice's idle
    heterodyne port) conditioned on Alice's Q outcome; the conditional pair
    comes from the closed form matching ``conditional_bc_given_a``.
    """
    _check_holevo_args(v, t, n_eve)
    lo, hi = joint_symplectic_pair(v, t, n_eve)
    c_lo, c_hi = dr_conditional_pair(v, t, n_eve)
    return (
        _g_of_eigenvalue(lo)
        + _g_of_eigenvalue(hi)
        - _g_of_eigenvalue(c_lo)
        - _g_of_eigenvalue(c_hi)
    )


def _check_holevo_args(v: float, t: float, n_eve: float) -> None:
    if v < 1.0:
        raise ValueError(f"total variance must be >= 1, got {v!r}")
    if not 0.0 < t <= 1.0:
        raise ValueError(f"channel transmission must lie in (0, 1], got {t!r}")
    if n_eve < 1.0:
        raise ValueError(f"injected-noise variance must be >= 1, got {n_eve!r}")


def keyrates(p: ProtocolParams) -> KeyRateReport:
    """Pseudo and true key rates for one parameter point.

    The true bound is evaluated at the physical (T, N); the pseudo bound at
    the substituted (eta*T, 1) that an unmonitored Bob estimates. At eta = 1
    the two coincide exactly and nothing is intercepted.
    """
    chi = holevo_ae if p.direction == "direct" else holevo_be
    i_ab = mutual_info_ab(p)
    holevo_true = chi(p.v, p.t, p.n_eve)
    holevo_pseudo = chi(p.v, p.eta * p.t, 1.0)
    k_true = i_ab - holevo_true
    k_pseudo = i_ab - holevo_pseudo
    return KeyRateReport(
        i_ab=i_ab,
        holevo_true=holevo_true,
        holevo_pseudo=holevo_pseudo,
        k_true=k_true,
        k_pseudo=k_pseudo,
        intercepted=k_pseudo - k_true,
        secure=k_true > 0.0,
    )
