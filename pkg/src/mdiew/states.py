"""States and referee input ensembles used by the witnessing game.

The shared family is the noisy partially entangled pair

    rho(q, alpha) = q |psi><psi| + (1 - q)/4 I_4,
    |psi> = alpha |01> - sqrt(1 - alpha^2) |10>,   0 < alpha <= 1/sqrt(2),

and the referee hands out the four qubit states sigma_s (I + n.sigma)/2 sigma_s
with n = (1, 1, 1)/sqrt(3).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .linalg import DensityOperator, SubsystemLayout

ALICE_INPUT = "A'"
ALICE = "A"
BOB = "B"
BOB_INPUT = "B'"

ALPHA_MAX = 2 ** -0.5

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

BLOCH_AXIS = np.array([1.0, 1.0, 1.0]) / math.sqrt(3.0)


def pair_layout() -> SubsystemLayout:
    """Layout of the shared two-qubit state."""
    return SubsystemLayout(((ALICE, 2), (BOB, 2)))


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha <= ALPHA_MAX:
        raise ValueError(f"alpha must lie in (0, 1/sqrt(2)]; got {alpha}")
    return alpha


def _check_q(q: float) -> float:
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1]; got {q}")
    return q


def psi_alpha(alpha: float) -> np.ndarray:
    """Unit vector alpha |01> - sqrt(1 - alpha^2) |10>."""
    alpha = _check_alpha(alpha)
    vec = np.zeros(4, dtype=complex)
    vec[1] = alpha
    vec[2] = -math.sqrt(1.0 - alpha * alpha)
    return vec


def bell_phi_plus() -> np.ndarray:
    """Unit vector (|00> + |11>)/sqrt(2)."""
    vec = np.zeros(4, dtype=complex)
    vec[0] = vec[3] = 2 ** -0.5
    return vec


@dataclass(frozen=True)
class WernerAlphaState:
    """Mixing weight q on |psi(alpha)><psi(alpha)|, white noise otherwise."""

    q: float
    alpha: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", _check_q(self.q))
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))

    def densify(self) -> DensityOperator:
        vec = psi_alpha(self.alpha)
        matrix = self.q * np.outer(vec, vec.conj()) + (1.0 - self.q) / 4.0 * np.eye(4)
        return DensityOperator(matrix, pair_layout())


def werner_alpha(q: float, alpha: float) -> DensityOperator:
    return WernerAlphaState(q, alpha).densify()


def werner_strength(alpha: float) -> float:
    """The factor c = 1 + 4 alpha sqrt(1 - alpha^2).

    rho(q, alpha) is entangled iff q*c > 1; its negativity is (q*c - 1)/4 then.
    """
    alpha = _check_alpha(alpha)
    return 1.0 + 4.0 * alpha * math.sqrt(1.0 - alpha * alpha)


def _input_matrix(index: int) -> np.ndarray:
    if index not in (0, 1, 2, 3):
        raise ValueError(f"input index must be 0..3; got {index}")
    base = (PAULI[0] + BLOCH_AXIS[0] * PAULI[1] + BLOCH_AXIS[1] * PAULI[2]
            + BLOCH_AXIS[2] * PAULI[3]) / 2.0
    return PAULI[index] @ base @ PAULI[index]


_INPUT_LABEL = {"tau": ALICE_INPUT, "omega": BOB_INPUT}


def input_state(index: int, kind: str = "tau") -> DensityOperator:
    """Referee input number `index`; tau states live on A', omega states on B'.

    Both families follow the same formula, so their matrices coincide.
    """
    if kind not in _INPUT_LABEL:
        raise ValueError(f"kind must be 'tau' or 'omega'; got {kind!r}")
    layout = SubsystemLayout(((_INPUT_LABEL[kind], 2),))
    return DensityOperator(_input_matrix(index), layout)


@dataclass(frozen=True)
class InputEnsemble:
    """Four referee inputs drawn with uniform prior."""

    states: tuple[DensityOperator, ...]
    prior: tuple[float, ...] = (0.25, 0.25, 0.25, 0.25)


@functools.cache
def input_ensemble(kind: str = "tau") -> InputEnsemble:
    return InputEnsemble(tuple(input_state(s, kind) for s in range(4)))


def entanglement_entropy(alpha: float) -> float:
    """Entropy of a reduced half of |psi(alpha)>, in ebits."""
    alpha = _check_alpha(alpha)
    return _binary_entropy(alpha * alpha)


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def alpha_from_entanglement(entropy: float) -> float:
    """Inverse of entanglement_entropy on (0, 1]."""
    entropy = float(entropy)
    if not 0.0 < entropy <= 1.0:
        raise ValueError(f"entanglement must lie in (0, 1]; got {entropy}")
    if entropy == 1.0:
        return ALPHA_MAX
    x = brentq(lambda t: _binary_entropy(t) - entropy, 1e-300, 0.5, xtol=1e-15)
    return math.sqrt(x)
