"""Dense complex linear algebra over small labeled tensor-product spaces.

Operators are plain complex numpy arrays.  A :class:`SubsystemLayout` names
the tensor factors of a composite space, and a :class:`DensityOperator`
couples a matrix to such a layout.  The canonical ordering used by the
witness game is (A', 2), (A, 2), (B, 2), (B', 2): Alice's quantum input,
Alice's share, Bob's share, Bob's quantum input.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Iterable, Sequence

import numpy as np

HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_ATOL = 1e-10


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered (label, local dimension) factors of a tensor-product space."""

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        factors = tuple((str(label), int(dim)) for label, dim in self.factors)
        object.__setattr__(self, "factors", factors)
        labels = [label for label, _ in factors]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate subsystem labels in {labels}")
        if any(dim < 1 for _, dim in factors):
            raise ValueError("subsystem dimensions must be positive")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for _, dim in self.factors)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def position(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown subsystem label {label!r}; have {self.labels}") from None

    def keep(self, labels: Iterable[str]) -> "SubsystemLayout":
        """Sub-layout containing `labels`, in their original relative order."""
        wanted = set(labels)
        missing = wanted - set(self.labels)
        if missing:
            raise ValueError(f"unknown subsystem labels {sorted(missing)}; have {self.labels}")
        return SubsystemLayout(tuple(f for f in self.factors if f[0] in wanted))

    def permuted(self, perm: Sequence[int]) -> "SubsystemLayout":
        _check_permutation(perm, len(self.factors))
        return SubsystemLayout(tuple(self.factors[p] for p in perm))

    def concat(self, other: "SubsystemLayout") -> "SubsystemLayout":
        return SubsystemLayout(self.factors + other.factors)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A matrix over a labeled tensor factorization.

    Construction validates Hermiticity, unit trace and positivity unless
    `validate=False`, which internal routines use to carry unnormalized
    (e.g. post-measurement) operators in the same container.
    """

    matrix: np.ndarray
    layout: SubsystemLayout
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool) -> None:
        matrix = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", matrix)
        dim = self.layout.dim
        if matrix.shape != (dim, dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match layout dimension {dim}")
        if validate:
            if not is_hermitian(matrix, HERMITICITY_ATOL):
                raise ValueError("density operator is not Hermitian within 1e-12")
            trace = matrix.trace()
            if abs(trace - 1.0) > TRACE_ATOL:
                raise ValueError(f"density operator trace {trace} is not 1 within 1e-12")
            low = float(np.linalg.eigvalsh(matrix)[0])
            if low < -PSD_ATOL:
                raise ValueError(f"density operator has negative eigenvalue {low}")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.layout.dims

    @property
    def labels(self) -> tuple[str, ...]:
        return self.layout.labels


def is_hermitian(matrix: np.ndarray, atol: float = HERMITICITY_ATOL) -> bool:
    matrix = np.asarray(matrix)
    return bool(np.max(np.abs(matrix - matrix.conj().T)) <= atol)


def tensor(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product with the first argument's indices most significant."""
    if not ops:
        raise ValueError("tensor() needs at least one operator")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def tensor_states(*states: DensityOperator) -> DensityOperator:
    """Tensor product of states with concatenated layouts."""
    if not states:
        raise ValueError("tensor_states() needs at least one state")
    layout = states[0].layout
    for state in states[1:]:
        layout = layout.concat(state.layout)
    matrix = tensor(*(state.matrix for state in states))
    return DensityOperator(matrix, layout, validate=False)


def _check_permutation(perm: Sequence[int], n: int) -> None:
    if len(perm) != n:
        raise ValueError(f"permutation length {len(perm)} does not match {n} subsystems")
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{tuple(perm)} is not a permutation of 0..{n - 1}")


def _permute(matrix: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    n = len(dims)
    dim = int(np.prod(dims))
    tensor_form = np.asarray(matrix, dtype=complex).reshape(*dims, *dims)
    axes = [*perm, *(p + n for p in perm)]
    return tensor_form.transpose(axes).reshape(dim, dim)


def permute_subsystems(matrix: np.ndarray, layout: SubsystemLayout, perm: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors: position k of the result is factor perm[k].

    Applying a permutation and then its inverse (argsort) is the identity.
    """
    _check_permutation(perm, len(layout.factors))
    return _permute(matrix, layout.dims, perm)


def embed_operator(op: np.ndarray, layout: SubsystemLayout, acting_on: Sequence[str]) -> np.ndarray:
    """Extend `op`, defined on the `acting_on` factors, by identity elsewhere."""
    op = np.asarray(op, dtype=complex)
    positions = [layout.position(label) for label in acting_on]
    if len(set(positions)) != len(positions):
        raise ValueError("acting_on labels must be distinct")
    sub_dim = int(np.prod([layout.dims[p] for p in positions]))
    if op.shape != (sub_dim, sub_dim):
        raise ValueError(f"operator shape {op.shape} does not match acting_on dimension {sub_dim}")
    rest = [p for p in range(len(layout.factors)) if p not in positions]
    if not rest:
        built = op
        built_order = positions
    else:
        rest_dim = int(np.prod([layout.dims[p] for p in rest]))
        built = np.kron(op, np.eye(rest_dim))
        built_order = positions + rest
    dims_built = [layout.dims[p] for p in built_order]
    perm = [built_order.index(k) for k in range(len(layout.factors))]
    return _permute(built, dims_built, perm)


def partial_trace(rho: DensityOperator, keep: Iterable[str]) -> DensityOperator:
    """Trace out every factor not named in `keep` (trace preserving).

    Kept factors stay in their original relative order.
    """
    keep = tuple(keep)
    if not keep:
        raise ValueError("must keep at least one subsystem")
    new_layout = rho.layout.keep(keep)
    traced = [p for p, label in enumerate(rho.labels) if label not in set(keep)]
    dims = list(rho.dims)
    out = rho.matrix.reshape(*dims, *dims)
    for p in sorted(traced, reverse=True):
        out = out.trace(axis1=p, axis2=p + len(dims))
        del dims[p]
    dim = int(np.prod(dims))
    return DensityOperator(out.reshape(dim, dim), new_layout, validate=False)


def partial_transpose(rho: DensityOperator, subsystem: str) -> np.ndarray:
    """Transpose one factor of a two-factor state."""
    if len(rho.layout.factors) != 2:
        raise ValueError("partial_transpose expects a two-factor layout")
    pos = rho.layout.position(subsystem)
    da, db = rho.dims
    tensor_form = rho.matrix.reshape(da, db, da, db)
    axes = (2, 1, 0, 3) if pos == 0 else (0, 3, 2, 1)
    return tensor_form.transpose(axes).reshape(da * db, da * db)


def min_eigenvalue(matrix: np.ndarray) -> float:
    if not is_hermitian(matrix):
        raise ValueError("min_eigenvalue requires a Hermitian matrix")
    return float(np.linalg.eigvalsh(matrix)[0])


def herm_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Positive square root of a Hermitian PSD matrix via eigendecomposition.

    Eigenvalues inside the PSD tolerance band collapse to zero, so square
    roots of projector-like operators do not pick up O(sqrt(eps)) noise.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if not is_hermitian(matrix):
        raise ValueError("herm_sqrt requires a Hermitian matrix")
    eigvals, eigvecs = np.linalg.eigh(matrix)
    if eigvals[0] < -PSD_ATOL:
        raise ValueError(f"herm_sqrt requires a PSD matrix; min eigenvalue {eigvals[0]}")
    eigvals = np.where(eigvals < PSD_ATOL, 0.0, eigvals)
    return (eigvecs * np.sqrt(eigvals)) @ eigvecs.conj().T


def negativity(rho: DensityOperator, subsystem: str) -> float:
    """Entanglement negativity: |sum of negative eigenvalues| of the partial transpose."""
    eigvals = np.linalg.eigvalsh(partial_transpose(rho, subsystem))
    return float(-eigvals[eigvals < 0].sum())
