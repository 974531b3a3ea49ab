"""Measurement-device-independent entanglement witnessing.

The payoff of the semi-quantum game is

    I_lam(rho) = sum_st beta_st P_lam(1,1 | tau_s, omega_t),

evaluated here both by the full 16-dimensional trace and by the closed form
(1 - lam q c)/16 for the noisy partially entangled family, where
c = 1 + 4 alpha sqrt(1 - alpha^2).  A strictly negative value certifies
entanglement; separable states can never go below zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DensityOperator, is_hermitian, tensor
from .measurement import bell_projector, unsharp_pair
from .states import InputEnsemble, input_ensemble, werner_strength

DETECTION_THRESHOLD = 1e-12

# Pairing the game probabilities with a witness operator W carries a fixed
# factor from the two |Phi+> contractions: sum_st beta_st P(1,1|.) = tr(W rho)/4
# when beta decomposes W over the transposed inputs.  The constant is
# calibrated empirically in the test suite against the identity target.
CONTRACTION_FACTOR = 0.25


class SingularEnsembleError(ValueError):
    """Raised when the input ensembles do not span the operator space."""


@dataclass(frozen=True, eq=False)
class WitnessCoefficients:
    """Real 4x4 table beta[s, t] weighting the joint-success probabilities."""

    beta: np.ndarray

    def __post_init__(self) -> None:
        beta = np.asarray(self.beta, dtype=float)
        if beta.shape != (4, 4):
            raise ValueError(f"beta table must be 4x4; got shape {beta.shape}")
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class WitnessValue:
    """One evaluated witness payoff at a given sharpness."""

    value: float
    lam: float

    @property
    def entangled(self) -> bool:
        """Strict detection: exactly zero does not count."""
        return self.value < -DETECTION_THRESHOLD


def werner_beta() -> WitnessCoefficients:
    """Coefficients 5/8 on matched inputs, -1/8 on mismatched ones."""
    beta = np.full((4, 4), -1.0 / 8.0)
    np.fill_diagonal(beta, 5.0 / 8.0)
    return WitnessCoefficients(beta)


def joint_success_probability(rho: DensityOperator, lam: float, s: int, t: int) -> float:
    """P_lam(1,1 | tau_s, omega_t): both parties project onto their pair effect.

    Alice measures sharply on (A', A); Bob applies the unsharp plus effect on
    (B, B').  The state is assembled as tau_s (x) rho (x) omega_t.
    """
    taus = input_ensemble("tau")
    omegas = input_ensemble("omega")
    op = tensor(bell_projector(), unsharp_pair(lam).plus)
    eta = tensor(taus.states[s].matrix, rho.matrix, omegas.states[t].matrix)
    return float(np.trace(op @ eta).real)


def mdi_ew_numeric(rho: DensityOperator, beta: WitnessCoefficients, lam: float) -> WitnessValue:
    """Witness payoff by the full 16-dimensional trace."""
    if rho.dims != (2, 2):
        raise ValueError(f"witness expects a two-qubit state; layout dims {rho.dims}")
    taus = input_ensemble("tau")
    omegas = input_ensemble("omega")
    op = tensor(bell_projector(), unsharp_pair(lam).plus)
    value = 0.0
    for s in range(4):
        tau = taus.states[s].matrix
        for t in range(4):
            eta = tensor(tau, rho.matrix, omegas.states[t].matrix)
            value += beta.beta[s, t] * np.trace(op @ eta).real
    return WitnessValue(float(value), float(lam))


def mdi_ew_closed_form(q: float) -> float:
    """Sharp-measurement payoff (1 - 3q)/16 of the isotropic singlet mixture."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1]; got {q}")
    return (1.0 - 3.0 * q) / 16.0


def mdi_ew_closed_form_unsharp(q: float, alpha: float, lam: float) -> float:
    """Payoff (1 - lam q c)/16 with c = 1 + 4 alpha sqrt(1 - alpha^2).

    Equivalently -lam q alpha sqrt(1-alpha^2)/4 + (1 - lam q)/16; reduces to
    the sharp closed form at lam = 1, alpha = 1/sqrt(2).
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1]; got {q}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"sharpness must lie in [0, 1]; got {lam}")
    return (1.0 - lam * q * werner_strength(alpha)) / 16.0


def threshold_lambda(q: float, alpha: float) -> float:
    """Minimal sharpness 1/(q c) with strictly negative payoff beyond it.

    Values >= 1 (including inf at q = 0) mean no admissible sharpness can
    witness the state.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1]; got {q}")
    strength = werner_strength(alpha)
    if q == 0.0:
        return math.inf
    return 1.0 / (q * strength)


def decompose_witness(w: np.ndarray, taus: InputEnsemble, omegas: InputEnsemble) -> WitnessCoefficients:
    """Solve sum_st beta_st tau_s^T (x) omega_t^T = w for a real beta table.

    Raises SingularEnsembleError when the sixteen products do not span the
    Hermitian operator space (e.g. duplicated inputs).
    """
    w = np.asarray(w, dtype=complex)
    if w.shape != (4, 4):
        raise ValueError(f"witness operator must be 4x4; got shape {w.shape}")
    if not is_hermitian(w):
        raise ValueError("witness operator must be Hermitian")
    columns = np.column_stack([
        tensor(taus.states[s].matrix.T, omegas.states[t].matrix.T).reshape(-1)
        for s in range(4) for t in range(4)
    ])
    system = np.vstack([columns.real, columns.imag])
    if np.linalg.matrix_rank(system) < 16:
        raise SingularEnsembleError("input ensembles do not span the two-qubit operator space")
    target = np.concatenate([w.reshape(-1).real, w.reshape(-1).imag])
    beta, *_ = np.linalg.lstsq(system, target, rcond=None)
    residual = np.abs(columns @ beta - w.reshape(-1)).max()
    if residual > 1e-10:
        raise SingularEnsembleError(f"decomposition residual {residual} exceeds 1e-10")
    return WitnessCoefficients(beta.reshape(4, 4))
