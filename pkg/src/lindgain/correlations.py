"""Generalized fluctuation-dissipation spectra for the quasi-static electric
sector, plus the local noise-current spectral density.

Frequency dependence of the permittivity is the caller's responsibility: each
evaluation receives the split already resolved at the requested frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .greens import SubstrateGeometry, isotropic_gain_tensors
from .material import ScalarPermittivitySplit


@dataclass
class SpectralPoint:
    """Symmetrized field spectral density tensor at one frequency."""

    omega: float
    occupation: float
    tensor: np.ndarray


def field_spectrum(
    split_at_omega: ScalarPermittivitySplit,
    geom: SubstrateGeometry,
    omega: float,
    n_omega: float,
) -> SpectralPoint:
    """Unilateral spectral density (2/pi)(N + 1/2)(G_L + G_G) at the qubit
    position.  Loss and gain channels ADD here: the sign carried by the gain
    response is absorbed into the definition of the gain tensor, which is PSD.
    """
    if omega <= 0:
        raise DomainError("omega must be > 0")
    if n_omega < 0:
        raise DomainError("occupation must be >= 0")
    pair = isotropic_gain_tensors(split_at_omega, geom)
    tensor = (2.0 / np.pi) * (n_omega + 0.5) * (pair.loss + pair.gain)
    return SpectralPoint(omega=float(omega), occupation=float(n_omega), tensor=tensor)


def noise_current_spectrum(
    split: ScalarPermittivitySplit, omega: float, n_omega: float
) -> np.ndarray:
    """Local noise-current spectral density
    (2/pi)(N + 1/2) omega^2 (eps''_L - eps''_G) * identity for a scalar medium.
    Gain increases the noise even though it reduces the net absorption."""
    if omega <= 0:
        raise DomainError("omega must be > 0")
    if n_omega < 0:
        raise DomainError("occupation must be >= 0")
    strength = (
        (2.0 / np.pi)
        * (n_omega + 0.5)
        * omega**2
        * (split.eps_loss - split.eps_gain)
    )
    return strength * np.eye(3)
