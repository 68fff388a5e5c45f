"""Monte Carlo homodyne pipeline and Bob-side channel estimation.

Simulates the prepare-and-measure run at the level of classical quadrature
records: Gaussian encodings, channel mixing with injected noise, and the
sqrt(eta) shrinkage an unmonitored receiver suffers when the LO is attenuated
but measurements keep being normalized by the calibrated LO power. The
detector's proportionality constant and the LO amplitude are normalized out;
everything is in shot-noise units.

All randomness is drawn from streams derived from a single integer seed, so a
batch and everything computed from it are reproducible bit-for-bit, and the
monitored/unmonitored views of one batch share the same noise realization
(the unmonitored record is literally sqrt(eta) times the monitored one).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ProtocolParams
from .keyrate import KeyRateReport, holevo_ae, holevo_be, keyrates

MIN_ESTIMATION_SAMPLES = 10_000


class EstimationError(ValueError):
    """Channel estimation was asked for on degenerate or insufficient data."""


@dataclass
class PulseBatch:
    """Per-pulse records of one simulated run.

    ``x_bob_raw`` holds the detector outputs before any LO rescaling; it is
    filled by :func:`channel_and_measure` (deterministically, so repeated
    measurement of the same batch is idempotent).
    """

    x_alice: np.ndarray
    quad_choice: np.ndarray
    eta_per_pulse: np.ndarray
    seed: int
    x_bob_raw: np.ndarray | None = None

    def __post_init__(self):
        n = self.x_alice.size
        if self.quad_choice.size != n or self.eta_per_pulse.size != n:
            raise ValueError("per-pulse arrays must all have the same length")
        if np.any(self.eta_per_pulse <= 0.0) or np.any(self.eta_per_pulse > 1.0):
            raise ValueError("per-pulse LO transmission must lie in (0, 1]")

    @property
    def n_pulses(self) -> int:
        return self.x_alice.size


@dataclass(frozen=True)
class EstimatorOutput:
    """Bob's channel estimates from one data set."""

    t_hat: float
    eps_hat: float
    v_b_hat: float
    n_used: int


def generate_batch(p: ProtocolParams, n: int, seed: int) -> PulseBatch:
    """Draw Alice's side of a run: encodings, quadrature choices, LO factors.

    Encodings are Normal(0, V_S) per pulse; the measured quadrature is chosen
    uniformly. The LO transmission is constant at ``p.eta`` (the per-pulse
    array is the extension point for non-uniform attenuation).
    """
    if n < 1:
        raise ValueError(f"need at least one pulse, got {n!r}")
    rng = np.random.default_rng([seed, 0])
    x_alice = rng.normal(0.0, np.sqrt(p.v_s), n)
    quad_choice = rng.integers(0, 2, n, dtype=np.uint8)
    eta_per_pulse = np.full(n, p.eta)
    return PulseBatch(x_alice, quad_choice, eta_per_pulse, seed)


def channel_and_measure(
    batch: PulseBatch, p: ProtocolParams, monitored: bool = True
) -> np.ndarray:
    """Bob's homodyne record for one batch.

    Per pulse: the prepared quadrature is the encoding plus vacuum noise, the
    channel mixes in the injected noise of variance N at transmission T, and
    the detector reads the result. Monitored measurements are returned as-is;
    unmonitored ones are shrunk by sqrt(eta) pulse-by-pulse.
    """
    raw = batch.x_bob_raw
    if raw is None:
        rng = np.random.default_rng([batch.seed, 1])
        n = batch.n_pulses
        x_a = batch.x_alice + rng.normal(0.0, 1.0, n)
        injected = rng.normal(0.0, np.sqrt(p.n_eve), n)
        raw = np.sqrt(p.t) * x_a + np.sqrt(1.0 - p.t) * injected
        batch.x_bob_raw = raw
    if monitored:
        return raw.copy()
    return np.sqrt(batch.eta_per_pulse) * raw


def estimate_channel(
    x_alice_encodings: np.ndarray,
    measurements: np.ndarray,
    assumed_shot_noise: float = 1.0,
) -> EstimatorOutput:
    """Transmission and excess noise as Bob would estimate them.

    Uses sample moments throughout: t_hat is the squared normalized
    covariance (cov(X_S, X_B) / var(X_S))^2, and the excess noise is what is
    left of var(X_B) after removing the modulated signal and the assumed shot
    noise, referred back to the channel input. Using the sample modulation
    variance in both places makes the noise term the exact regression
    residual, which is what keeps the estimate tight.
    """
    x = np.asarray(x_alice_encodings, dtype=float)
    y = np.asarray(measurements, dtype=float)
    if x.size != y.size:
        raise ValueError("encoding and measurement arrays differ in length")
    if x.size < MIN_ESTIMATION_SAMPLES:
        raise EstimationError(
            f"need at least {MIN_ESTIMATION_SAMPLES} samples, got {x.size}"
        )
    v_s = float(x.var())
    if v_s <= 0.0:
        raise EstimationError("modulation variance is zero; nothing to estimate from")
    cov = float(((x - x.mean()) * (y - y.mean())).mean())
    v_b = float(y.var())
    t_hat = (cov / v_s) ** 2
    if t_hat <= 0.0:
        raise EstimationError("estimated transmission is zero")
    eps_hat = (v_b - t_hat * v_s - assumed_shot_noise) / t_hat
    return EstimatorOutput(t_hat=t_hat, eps_hat=eps_hat, v_b_hat=v_b, n_used=x.size)


def implied_channel(est: EstimatorOutput) -> tuple[float, float]:
    """Channel parameters (T, N) implied by an estimate.

    Inverts eps = (1 - T)(N - 1)/T; the returned noise variance is not floored,
    so apparent sub-vacuum noise (the unmonitored-attack signature) survives.
    """
    t = est.t_hat
    if t >= 1.0:
        return t, 1.0
    return t, 1.0 + est.eps_hat * t / (1.0 - t)


def simulated_keyrates(p: ProtocolParams, n: int, seed: int) -> KeyRateReport:
    """Key-rate report reconstructed from simulated data alone.

    One batch is measured twice -- with and without LO monitoring -- and each
    record is run through the channel estimator. The monitored estimates feed
    the true bound, the unmonitored ones the pseudo bound, both through the
    analytic pipeline; as n grows the report converges to
    ``keyrates(p)``. Sampling noise can imply a noise variance marginally
    below vacuum; it is raised to the physical floor of 1 (key rates
    themselves are never clamped).
    """
    batch = generate_batch(p, n, seed)
    est_true = estimate_channel(batch.x_alice, channel_and_measure(batch, p, monitored=True))
    est_pseudo = estimate_channel(batch.x_alice, channel_and_measure(batch, p, monitored=False))
    t_true, n_true = implied_channel(est_true)
    t_pseudo, n_pseudo = implied_channel(est_pseudo)
    t_true, n_true = min(t_true, 1.0), max(n_true, 1.0)
    t_pseudo, n_pseudo = min(t_pseudo, 1.0), max(n_pseudo, 1.0)

    report_true = keyrates(
        ProtocolParams(p.v_s, t_true, eta=1.0, n_eve=n_true, direction=p.direction)
    )
    chi = holevo_ae if p.direction == "direct" else holevo_be
    holevo_pseudo = chi(p.v, t_pseudo, n_pseudo)
    k_true = report_true.i_ab - report_true.holevo_true
    k_pseudo = report_true.i_ab - holevo_pseudo
    return KeyRateReport(
        i_ab=report_true.i_ab,
        holevo_true=report_true.holevo_true,
        holevo_pseudo=holevo_pseudo,
        k_true=k_true,
        k_pseudo=k_pseudo,
        intercepted=k_pseudo - k_true,
        secure=k_true > 0.0,
    )
