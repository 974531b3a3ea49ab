"""Deterministic property suite backing the `verify` CLI command.

Each check recomputes one of the package's oracle equivalences or structural
properties and reports its worst deviation against a pinned tolerance.  The
suite is seeded and finishes in a few seconds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, measurement, protocol, states, witness

DEFAULT_SEED = 1234

WITNESS_GRID_TOL = 1e-10
CHANNEL_TOL = 1e-10
SEPARABLE_BOUND = 1e-10
NEGATIVITY_TOL = 1e-10
DELTA_IDENTITY_TOL = 1e-12
FIG3_SLACK = 1e-5

_QS = np.linspace(0.0, 1.0, 5)
_ALPHAS = np.linspace(0.1, states.ALPHA_MAX, 5)
_LAMS = np.linspace(0.0, 1.0, 5)

_CHANNEL_LAMS = (0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0)
_CHANNEL_QS = (0.25, 0.5, 1.0)
_CHANNEL_ALPHAS = (0.2, 0.4, states.ALPHA_MAX)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    deviation: float
    tolerance: float
    detail: str


def _result(name: str, deviation: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(deviation <= tolerance), float(deviation),
                       float(tolerance), detail)


def check_witness_grid() -> CheckResult:
    """Full-trace payoff vs closed form on the 5x5x5 (q, alpha, lam) grid."""
    beta = witness.werner_beta()
    worst = 0.0
    for q in _QS:
        for alpha in _ALPHAS:
            rho = states.werner_alpha(q, alpha)
            for lam in _LAMS:
                numeric = witness.mdi_ew_numeric(rho, beta, lam).value
                closed = witness.mdi_ew_closed_form_unsharp(q, alpha, lam)
                worst = max(worst, abs(numeric - closed))
    return _result("witness_numeric_vs_closed_grid", worst, WITNESS_GRID_TOL)


def check_witness_sharp_corner() -> CheckResult:
    """Sharp maximal corner: payoff -1/8 for the pure singlet-weight state."""
    rho = states.werner_alpha(1.0, states.ALPHA_MAX)
    numeric = witness.mdi_ew_numeric(rho, witness.werner_beta(), 1.0).value
    dev = max(abs(numeric + 0.125), abs(witness.mdi_ew_closed_form(1.0) + 0.125))
    return _result("witness_sharp_corner", dev, 1e-12)


def random_separable_two_qubit(rng: np.random.Generator, max_terms: int = 4) -> linalg.DensityOperator:
    """Random mixture of up to `max_terms` pure product states."""
    terms = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(terms))
    matrix = np.zeros((4, 4), dtype=complex)
    for weight in weights:
        vec_a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        vec_b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        vec = np.kron(vec_a / np.linalg.norm(vec_a), vec_b / np.linalg.norm(vec_b))
        matrix += weight * np.outer(vec, vec.conj())
    return linalg.DensityOperator(matrix, states.pair_layout())


def check_separable_nonnegativity(seed: int = DEFAULT_SEED, samples: int = 200) -> CheckResult:
    """Separable states never score below zero, at any sharpness."""
    rng = np.random.default_rng(seed)
    beta = witness.werner_beta()
    lowest = np.inf
    for _ in range(samples):
        rho = random_separable_two_qubit(rng)
        for lam in (0.25, 0.5, 1.0):
            lowest = min(lowest, witness.mdi_ew_numeric(rho, beta, lam).value)
    return _result("separable_nonnegativity", max(0.0, -lowest), SEPARABLE_BOUND,
                   detail=f"min value {lowest:.3e} over {samples} seeded states")


def check_channel_closure_maximal() -> CheckResult:
    """At alpha = 1/sqrt(2) the channel maps the family onto itself, q -> f q."""
    worst = 0.0
    alpha = states.ALPHA_MAX
    for lam in _CHANNEL_LAMS:
        for q in _CHANNEL_QS:
            out = measurement.averaged_channel(states.werner_alpha(q, alpha), lam)
            want = states.werner_alpha(protocol.f_of_lambda(lam) * q, alpha)
            worst = max(worst, float(np.abs(out.matrix - want.matrix).max()))
    return _result("channel_closure_maximal_alpha", worst, CHANNEL_TOL)


def check_channel_statistics() -> CheckResult:
    """The payoff of the channel output equals the closed form at q -> f q, all alpha.

    For alpha < 1/sqrt(2) the output state itself is NOT the white-noise
    family member (the invariant noise is rho_A (x) I/2), but every witness
    statistic follows the q-recursion exactly.
    """
    beta = witness.werner_beta()
    worst = 0.0
    for lam in _CHANNEL_LAMS:
        decay = protocol.f_of_lambda(lam)
        for q in _CHANNEL_QS:
            for alpha in _CHANNEL_ALPHAS:
                out = measurement.averaged_channel(states.werner_alpha(q, alpha), lam)
                for probe in (0.5, 1.0):
                    numeric = witness.mdi_ew_numeric(out, beta, probe).value
                    closed = witness.mdi_ew_closed_form_unsharp(decay * q, alpha, probe)
                    worst = max(worst, abs(numeric - closed))
    return _result("channel_statistics_general_alpha", worst, CHANNEL_TOL)


def check_decay_spot_values() -> CheckResult:
    """f(0) = 1, f(1) = 1/2, f(1/3) = 0.9670862 within 1e-6."""
    dev = max(abs(protocol.f_of_lambda(0.0) - 1.0),
              abs(protocol.f_of_lambda(1.0) - 0.5),
              abs(protocol.f_of_lambda(1.0 / 3.0) - 0.9670862))
    return _result("decay_factor_spot_values", dev, 1e-6)


def check_negativity_grid() -> CheckResult:
    """Closed-form negativity vs the partial-transpose eigenvalue oracle, 20x20."""
    worst = 0.0
    for q in np.linspace(0.0, 1.0, 20):
        for alpha in np.linspace(0.05, states.ALPHA_MAX, 20):
            closed = protocol.negativity_walpha(q, alpha)
            oracle = linalg.negativity(states.werner_alpha(q, alpha), states.BOB)
            worst = max(worst, abs(closed - oracle))
    return _result("negativity_closed_vs_oracle", worst, NEGATIVITY_TOL)


def check_delta_negativity_identity() -> CheckResult:
    """Threshold-loss closed form vs composing the loss and threshold formulas."""
    worst = 0.0
    for negativity in np.arange(0.05, 0.501, 0.05):
        composed = ((1.0 + 4.0 * negativity) / 4.0
                    * (1.0 - protocol.f_of_lambda(protocol.threshold_from_negativity(negativity))))
        worst = max(worst, abs(composed - protocol.delta_negativity_at_threshold(negativity)))
    return _result("delta_negativity_threshold_identity", worst, DELTA_IDENTITY_TOL)


def check_delta_negativity_monotone() -> CheckResult:
    """Loss is non-negative everywhere and non-decreasing in the sharpness."""
    worst = 0.0
    for negativity in np.linspace(0.0, 0.5, 11):
        previous = -np.inf
        for lam in np.linspace(0.0, 1.0, 101):
            loss = protocol.delta_negativity(negativity, lam)
            worst = max(worst, -loss, previous - loss)
            previous = loss
    return _result("delta_negativity_monotone_in_lambda", worst, 1e-15)


def check_threshold_protocol_count() -> CheckResult:
    """Fourteen observers succeed at maximal initial entanglement."""
    count = protocol.run_threshold_protocol(states.ALPHA_MAX).n_success
    return _result("threshold_protocol_count", abs(count - 14), 0.5,
                   detail=f"n_success = {count}")


def check_threshold_boundary() -> CheckResult:
    """The count-14 region starts at entanglement 0.9349 within 5e-4."""
    _, entropy = protocol.boundary_alpha_for_n(14)
    return _result("threshold_boundary_entanglement", abs(entropy - 0.9349), 5e-4,
                   detail=f"boundary E = {entropy:.6f}")


def check_equal_sharpness_maxima() -> CheckResult:
    """Best equal-sharpness counts: 6 at E = 1 and 5 at E = 0.935."""
    best_max, _ = protocol.n_max_over_lambda(states.ALPHA_MAX)
    best_935, _ = protocol.n_max_over_lambda(states.alpha_from_entanglement(0.935))
    dev = max(abs(best_max - 6), abs(best_935 - 5))
    return _result("equal_sharpness_maxima", dev, 0.5,
                   detail=f"n_max(E=1) = {best_max}, n_max(E=0.935) = {best_935}")


def check_sharp_survival() -> CheckResult:
    """Two observers survive fully sharp measurements at maximal entanglement."""
    count = protocol.run_equal_sharpness(states.ALPHA_MAX, 1.0).n_success
    return _result("sharp_measurement_survival", abs(count - 2), 0.5,
                   detail=f"n_success = {count}")


def check_decomposition_roundtrip() -> CheckResult:
    """Recomposing a decomposed witness operator reproduces it."""
    taus = states.input_ensemble("tau")
    omegas = states.input_ensemble("omega")
    beta = witness.werner_beta()
    target = sum(beta.beta[s, t]
                 * linalg.tensor(taus.states[s].matrix.T, omegas.states[t].matrix.T)
                 for s in range(4) for t in range(4))
    recovered = witness.decompose_witness(target, taus, omegas)
    dev = float(np.abs(recovered.beta - beta.beta).max())
    identity_beta = witness.decompose_witness(np.eye(4), taus, omegas)
    recomposed = sum(identity_beta.beta[s, t]
                     * linalg.tensor(taus.states[s].matrix.T, omegas.states[t].matrix.T)
                     for s in range(4) for t in range(4))
    dev = max(dev, float(np.abs(recomposed - np.eye(4)).max()))
    return _result("witness_decomposition_roundtrip", dev, 1e-10)


def check_range_shape(e_step: float = 0.025) -> CheckResult:
    """Shape of the sharpness-range curves against the initial entanglement.

    For the best achievable count the range shrinks as entanglement drops;
    for every smaller count it grows as entanglement drops.
    """
    grid = np.arange(0.5, 1.0 + 1e-9, e_step)
    table = {}
    for entropy in grid:
        alpha = states.alpha_from_entanglement(min(float(entropy), 1.0))
        ranges = [protocol.lambda_range(alpha, n) for n in range(1, 8)]
        best = max(n for n in range(1, 8) if ranges[n - 1] > 0)
        table[float(entropy)] = (best, ranges)
    keys = sorted(table)
    worst = 0.0
    for n in range(1, 8):
        for e_low, e_high in zip(keys, keys[1:]):
            best_low, ranges_low = table[e_low]
            best_high, ranges_high = table[e_high]
            if n >= best_low and n >= best_high:
                worst = max(worst, ranges_low[n - 1] - ranges_high[n - 1])
            if n < best_low and n < best_high:
                worst = max(worst, ranges_high[n - 1] - ranges_low[n - 1])
    return _result("sharpness_range_shape", worst, FIG3_SLACK)


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    return [
        check_witness_grid(),
        check_witness_sharp_corner(),
        check_separable_nonnegativity(seed),
        check_channel_closure_maximal(),
        check_channel_statistics(),
        check_decay_spot_values(),
        check_negativity_grid(),
        check_delta_negativity_identity(),
        check_delta_negativity_monotone(),
        check_threshold_protocol_count(),
        check_threshold_boundary(),
        check_equal_sharpness_maxima(),
        check_sharp_survival(),
        check_decomposition_roundtrip(),
        check_range_shape(),
    ]
