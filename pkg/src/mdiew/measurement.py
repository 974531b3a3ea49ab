"""Two-outcome joint measurements, sharp and unsharp, and their back-action.

The '+' outcome of the sharp measurement projects a (share, input) qubit
pair onto |Phi+> = (|00> + |11>)/sqrt(2).  The unsharp version with
sharpness lam uses the effects

    E+ = lam P+ + (1 - lam)/4 I_4,      E- = I_4 - E+,

and updates the state through the square-root (Lueders) rule.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import DensityOperator, embed_operator, partial_trace, tensor_states
from .states import bell_phi_plus, input_ensemble

DEGENERATE_OUTCOME_ATOL = 1e-14

OUTCOMES = ("+", "-")


class DegenerateOutcomeError(ValueError):
    """Raised when conditioning on an outcome of (numerically) zero probability."""


@functools.cache
def bell_projector() -> np.ndarray:
    vec = bell_phi_plus()
    return np.outer(vec, vec.conj())


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"sharpness must lie in [0, 1]; got {lam}")
    return lam


@dataclass(frozen=True, eq=False)
class BinaryEffectPair:
    """Effects {plus, minus} of one two-outcome measurement; plus + minus = I exactly."""

    lam: float
    plus: np.ndarray
    minus: np.ndarray

    def effect(self, outcome: str) -> np.ndarray:
        if outcome not in OUTCOMES:
            raise ValueError(f"outcome must be '+' or '-'; got {outcome!r}")
        return self.plus if outcome == "+" else self.minus


def unsharp_pair(lam: float) -> BinaryEffectPair:
    """Effects interpolating between the trivial (lam=0) and sharp (lam=1) measurement.

    The plus effect has eigenvalue (1+3 lam)/4 on |Phi+> and (1-lam)/4 on its
    complement; minus is built as I - plus so the pair sums to the identity
    exactly.
    """
    lam = _check_lambda(lam)
    plus = lam * bell_projector() + (1.0 - lam) / 4.0 * np.eye(4)
    return BinaryEffectPair(lam, plus, np.eye(4) - plus)


def effect_sqrt(lam: float, outcome: str) -> np.ndarray:
    """Square root of an unsharp effect via its two-eigenspace spectral form.

    Exact fast path; agrees with the generic herm_sqrt within 1e-12.
    """
    lam = _check_lambda(lam)
    if outcome == "+":
        on_bell = math.sqrt((1.0 + 3.0 * lam) / 4.0)
        off_bell = math.sqrt((1.0 - lam) / 4.0)
    elif outcome == "-":
        on_bell = math.sqrt((3.0 - 3.0 * lam) / 4.0)
        off_bell = math.sqrt((3.0 + lam) / 4.0)
    else:
        raise ValueError(f"outcome must be '+' or '-'; got {outcome!r}")
    return (on_bell - off_bell) * bell_projector() + off_bell * np.eye(4)


def outcome_probability(rho: DensityOperator, effect: np.ndarray,
                        acting_on: Sequence[str]) -> float:
    """tr(E rho) with the effect extended by identity outside `acting_on`."""
    full = embed_operator(effect, rho.layout, acting_on)
    return float(np.trace(full @ rho.matrix).real)


def luders_update(rho_with_input: DensityOperator, pair: BinaryEffectPair,
                  outcome: str, acting_on: Sequence[str]) -> tuple[DensityOperator, float]:
    """Apply sqrt(E) . sqrt(E) for the given outcome.

    Returns the unnormalized post-measurement operator (its trace is the
    outcome probability) together with that probability.  Conditioning on an
    outcome with probability below 1e-14 raises DegenerateOutcomeError.
    """
    kraus = embed_operator(effect_sqrt(pair.lam, outcome), rho_with_input.layout, acting_on)
    post = kraus @ rho_with_input.matrix @ kraus
    probability = float(post.trace().real)
    if probability < DEGENERATE_OUTCOME_ATOL:
        raise DegenerateOutcomeError(
            f"outcome {outcome!r} has probability {probability} below {DEGENERATE_OUTCOME_ATOL}")
    return DensityOperator(post, rho_with_input.layout, validate=False), probability


def averaged_channel(rho: DensityOperator, lam: float) -> DensityOperator:
    """Shared state left for the next observer after one unsharp measurement.

    Attaches each referee input on B' with weight 1/4, applies the
    square-root update non-selectively (both outcomes summed), and traces the
    input back out.  The measured share is the second factor of `rho`.
    """
    if len(rho.layout.factors) != 2:
        raise ValueError("averaged_channel expects a two-factor shared state")
    lam = _check_lambda(lam)
    omegas = input_ensemble("omega")
    measured = (rho.labels[1], omegas.states[0].labels[0])
    total = np.zeros((rho.layout.dim * 2,) * 2, dtype=complex)
    layout = None
    for weight, omega in zip(omegas.prior, omegas.states):
        eta = tensor_states(rho, omega)
        layout = eta.layout
        for outcome in OUTCOMES:
            kraus = embed_operator(effect_sqrt(lam, outcome), eta.layout, measured)
            total += weight * (kraus @ eta.matrix @ kraus)
    averaged = DensityOperator(total, layout, validate=False)
    return partial_trace(averaged, rho.labels)
