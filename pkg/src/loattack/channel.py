"""Channel model for Gaussian-modulated coherent-state QKD over a lossy fiber.

Models what Bob sees with and without local-oscillator monitoring: when the LO
is attenuated by a factor eta and Bob keeps normalizing by the calibrated LO
power, every measurement silently shrinks by sqrt(eta). "Monitored" quantities
below are the physical ones; "unmonitored" quantities are what Bob records.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gaussian import CovarianceMatrix

_SIGMA_Z = np.diag([1.0, -1.0])

DEFAULT_LOSS_DB_PER_KM = 0.2


@dataclass(frozen=True)
class LinkBudget:
    """Fiber link of a given length and attenuation."""

    distance_km: float
    loss_db_per_km: float = DEFAULT_LOSS_DB_PER_KM

    def __post_init__(self):
        if self.distance_km < 0:
            raise ValueError(f"distance must be >= 0 km, got {self.distance_km!r}")
        if self.loss_db_per_km <= 0:
            raise ValueError(f"fiber loss must be > 0 dB/km, got {self.loss_db_per_km!r}")


def transmission_from_distance(link: LinkBudget) -> float:
    """Channel transmission of a fiber link: 10^(-loss * distance / 10)."""
    return 10.0 ** (-link.loss_db_per_km * link.distance_km / 10.0)


def noise_for_zero_excess(eta: float, t: float) -> float:
    """Injected-noise variance that makes Bob's apparent excess noise vanish.

    Solves eta * (1 - t) * N = 1 - eta * t, the tuning with which an attacker
    attenuating the LO by eta hides entirely from unmonitored estimation.
    Requires t < 1: a lossless channel leaves no port to inject through.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must lie in (0, 1], got {eta!r}")
    if not 0.0 < t < 1.0:
        raise ValueError(
            f"zero-excess tuning needs channel transmission in (0, 1), got {t!r}"
        )
    return (1.0 - eta * t) / (eta * (1.0 - t))


def excess_noise(t: float, n_eve: float) -> float:
    """Excess noise referred to the channel input: (1 - T)(N - 1)/T."""
    return (1.0 - t) * (n_eve - 1.0) / t


def excess_noise_unmonitored(eps: float, t: float, eta: float) -> float:
    """Apparent excess noise when measurements are not rescaled by the live LO."""
    return eps - (1.0 / eta - 1.0) / t


@dataclass(frozen=True)
class ProtocolParams:
    """One analysis point of the protocol.

    Attributes
    ----------
    v_s : float
        Alice's modulation variance (shot-noise units, >= 0).
    t : float
        Channel transmission in (0, 1].
    eta : float
        LO transmission in (0, 1]; 1 means the LO is untouched.
    n_eve : float or None
        Variance of the attacker's injected noise, >= 1. ``None`` selects the
        zero-apparent-excess-noise tuning for (eta, t); with eta = 1 that is
        the vacuum value 1.
    direction : {"reverse", "direct"}
        Reconciliation direction.
    """

    v_s: float
    t: float
    eta: float = 1.0
    n_eve: float | None = None
    direction: str = "reverse"

    def __post_init__(self):
        if self.v_s < 0:
            raise ValueError(f"modulation variance must be >= 0, got {self.v_s!r}")
        if not 0.0 < self.t <= 1.0:
            raise ValueError(f"channel transmission must lie in (0, 1], got {self.t!r}")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"LO transmission must lie in (0, 1], got {self.eta!r}")
        if self.direction not in ("reverse", "direct"):
            raise ValueError(f"direction must be 'reverse' or 'direct', got {self.direction!r}")
        if self.n_eve is None:
            if self.t < 1.0:
                object.__setattr__(self, "n_eve", noise_for_zero_excess(self.eta, self.t))
            elif self.eta == 1.0:
                object.__setattr__(self, "n_eve", 1.0)
            else:
                raise ValueError(
                    "cannot tune injected noise at t = 1: a lossless channel has "
                    "no port for the attack"
                )
        elif self.n_eve < 1.0:
            raise ValueError(f"injected-noise variance must be >= 1, got {self.n_eve!r}")

    @property
    def v(self) -> float:
        """Total variance of Alice's prepared mode, modulation plus vacuum."""
        return self.v_s + 1.0


def bob_variances(p: ProtocolParams, monitored: bool = True) -> tuple[float, float]:
    """Bob's output variance and his variance conditioned on Alice's encoding.

    Monitored: (TV + (1-T)N, T + (1-T)N). Unmonitored: both scaled by eta.
    """
    v_b = p.t * p.v + (1.0 - p.t) * p.n_eve
    v_b_given_a = p.t + (1.0 - p.t) * p.n_eve
    if monitored:
        return v_b, v_b_given_a
    return p.eta * v_b, p.eta * v_b_given_a


def covariance_ab(p: ProtocolParams, monitored: bool = True) -> CovarianceMatrix:
    """Two-mode covariance of Alice's retained mode and Bob's received mode.

    The unmonitored variant scales Bob's block by eta and the cross block by
    sqrt(eta), i.e. what Bob reconstructs from unscaled measurements.
    """
    v_b = p.t * p.v + (1.0 - p.t) * p.n_eve
    corr = np.sqrt(p.t * (p.v**2 - 1.0))
    if not monitored:
        v_b = p.eta * v_b
        corr = np.sqrt(p.eta) * corr
    top = np.hstack([p.v * np.eye(2), corr * _SIGMA_Z])
    bottom = np.hstack([corr * _SIGMA_Z, v_b * np.eye(2)])
    return CovarianceMatrix(np.vstack([top, bottom]))
