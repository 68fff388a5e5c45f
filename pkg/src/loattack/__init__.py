"""Security analysis of CV-QKD under local-oscillator intensity attenuation.

An eavesdropper who attenuates the local oscillator makes an unmonitored
receiver underestimate the channel's excess noise, and with it the
eavesdropper's information. This package computes the resulting pseudo and
true secret key rates for direct and reverse reconciliation, cross-validates
two independent derivations of the Holevo bounds, and confirms the
parameter-estimation signature by Monte Carlo simulation of the homodyne
pipeline.
"""

from .channel import (
    LinkBudget,
    ProtocolParams,
    bob_variances,
    covariance_ab,
    excess_noise,
    excess_noise_unmonitored,
    noise_for_zero_excess,
    transmission_from_distance,
)
from .cloner import (
    ClonerState,
    eve_covariance,
    eve_entropy,
    holevo_ae_cloner,
    holevo_be_cloner,
)
from .gaussian import (
    CovarianceMatrix,
    SymplecticSpectrum,
    UnphysicalStateError,
    conditional_covariance_homodyne,
    g_entropy,
    symplectic_eigenvalues,
    von_neumann_entropy,
)
from .keyrate import (
    KeyRateReport,
    holevo_ae,
    holevo_be,
    keyrates,
    mutual_info_ab,
)
from .simulate import (
    EstimationError,
    EstimatorOutput,
    PulseBatch,
    channel_and_measure,
    estimate_channel,
    generate_batch,
    simulated_keyrates,
)

__version__ = "0.1.0"

__all__ = [
    "CovarianceMatrix",
    "SymplecticSpectrum",
    "UnphysicalStateError",
    "g_entropy",
    "symplectic_eigenvalues",
    "von_neumann_entropy",
    "conditional_covariance_homodyne",
    "LinkBudget",
    "ProtocolParams",
    "transmission_from_distance",
    "bob_variances",
    "covariance_ab",
    "excess_noise",
    "excess_noise_unmonitored",
    "noise_for_zero_excess",
    "KeyRateReport",
    "mutual_info_ab",
    "holevo_be",
    "holevo_ae",
    "keyrates",
    "ClonerState",
    "eve_covariance",
    "eve_entropy",
    "holevo_ae_cloner",
    "holevo_be_cloner",
    "PulseBatch",
    "EstimatorOutput",
    "EstimationError",
    "generate_batch",
    "channel_and_measure",
    "estimate_channel",
    "simulated_keyrates",
    "__version__",
]
