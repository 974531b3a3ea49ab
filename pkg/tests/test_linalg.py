import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdiew.linalg import (
    DensityOperator,
    SubsystemLayout,
    embed_operator,
    herm_sqrt,
    min_eigenvalue,
    negativity,
    partial_trace,
    partial_transpose,
    permute_subsystems,
    tensor,
    tensor_states,
)

from conftest import random_density_matrix, random_hermitian

I2 = np.eye(2)
I4 = np.eye(4)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)

PAIR = SubsystemLayout((("A", 2), ("B", 2)))


def density(matrix, layout=PAIR):
    return DensityOperator(matrix, layout)


# --- layout ---------------------------------------------------------------

def test_layout_basic_properties():
    layout = SubsystemLayout((("A'", 2), ("A", 2), ("B", 2), ("B'", 2)))
    assert layout.labels == ("A'", "A", "B", "B'")
    assert layout.dims == (2, 2, 2, 2)
    assert layout.dim == 16
    assert layout.position("B") == 2


def test_layout_rejects_duplicate_labels():
    with pytest.raises(ValueError, match="duplicate"):
        SubsystemLayout((("A", 2), ("A", 2)))


def test_layout_keep_preserves_order():
    layout = SubsystemLayout((("A", 2), ("B", 2), ("C", 2)))
    assert layout.keep(["C", "A"]).labels == ("A", "C")
    with pytest.raises(ValueError, match="unknown"):
        layout.keep(["X"])


def test_density_operator_validation():
    with pytest.raises(ValueError, match="Hermitian"):
        density(np.array([[0.5, 1.0], [0.0, 0.5]]), SubsystemLayout((("A", 2),)))
    with pytest.raises(ValueError, match="trace"):
        density(np.eye(4))
    with pytest.raises(ValueError, match="negative eigenvalue"):
        density(np.diag([1.5, -0.5, 0, 0]).astype(complex))
    with pytest.raises(ValueError, match="shape"):
        density(np.eye(2) / 2)


# --- tensor ----------------------------------------------------------------

def test_tensor_identities():
    assert np.array_equal(tensor(I2, I2), I4)
    assert np.array_equal(tensor(SZ, SZ), np.diag([1, -1, -1, 1]).astype(complex))


def test_tensor_block_structure_matches_index_expansion():
    ket0 = np.diag([1.0, 0.0]).astype(complex)
    got = tensor(ket0, SX)
    # oracle: out[2i+k, 2j+l] = a[i,j] * b[k,l]
    want = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    want[2 * i + k, 2 * j + l] = ket0[i, j] * SX[k, l]
    assert np.array_equal(got, want)
    assert np.array_equal(got[:2, :2], SX)
    assert np.all(got[2:, :] == 0) and np.all(got[:, 2:] == 0)


@given(st.integers(0, 2**32 - 1))
def test_tensor_associative(seed):
    rng = np.random.default_rng(seed)
    # exact-product entries (small Gaussian integers): associativity is bitwise
    ints = [rng.integers(-8, 9, (2, 2)) + 1j * rng.integers(-8, 9, (2, 2))
            for _ in range(3)]
    a, b, c = ints
    assert np.array_equal(tensor(tensor(a, b), c), tensor(a, tensor(b, c)))
    # generic floats agree up to rounding of the reassociated products
    x, y, z = (random_hermitian(rng, 2) for _ in range(3))
    assert np.abs(tensor(tensor(x, y), z) - tensor(x, tensor(y, z))).max() < 1e-14


def test_tensor_states_concatenates_layouts(rng):
    a = density(random_density_matrix(rng, 2), SubsystemLayout((("X", 2),)))
    b = density(random_density_matrix(rng, 2), SubsystemLayout((("Y", 2),)))
    joint = tensor_states(a, b)
    assert joint.labels == ("X", "Y")
    assert np.allclose(joint.matrix, np.kron(a.matrix, b.matrix))
    with pytest.raises(ValueError, match="duplicate"):
        tensor_states(a, a)


# --- permutation -----------------------------------------------------------

def test_permute_identity_is_noop(rng):
    m = random_hermitian(rng, 4)
    assert np.array_equal(permute_subsystems(m, PAIR, (0, 1)), m)


def test_permute_swap_law(rng):
    x, y = random_hermitian(rng, 2), random_hermitian(rng, 2)
    swapped = permute_subsystems(tensor(x, y), PAIR, (1, 0))
    assert np.array_equal(swapped, tensor(y, x))


@given(st.integers(0, 2**32 - 1))
def test_permute_round_trip_exact(seed):
    rng = np.random.default_rng(seed)
    layout = SubsystemLayout((("A'", 2), ("A", 2), ("B", 2), ("B'", 2)))
    m = random_hermitian(rng, 16)
    perm = tuple(rng.permutation(4))
    inverse = tuple(np.argsort(perm))
    back = permute_subsystems(permute_subsystems(m, layout, perm),
                              layout.permuted(perm), inverse)
    assert np.array_equal(back, m)


def test_permute_rejects_bad_permutation(rng):
    m = random_hermitian(rng, 4)
    with pytest.raises(ValueError, match="length"):
        permute_subsystems(m, PAIR, (0,))
    with pytest.raises(ValueError, match="not a permutation"):
        permute_subsystems(m, PAIR, (0, 0))


def test_embed_operator_places_factor(rng):
    layout = SubsystemLayout((("A", 2), ("B", 2), ("C", 2)))
    op = random_hermitian(rng, 2)
    assert np.allclose(embed_operator(op, layout, ["B"]), tensor(I2, op, I2))
    pair_op = random_hermitian(rng, 4)
    assert np.allclose(embed_operator(pair_op, layout, ["B", "C"]), tensor(I2, pair_op))
    # non-adjacent and reordered placement, checked against a swap oracle
    got = embed_operator(pair_op, layout, ["C", "A"])
    swap = permute_subsystems(tensor(pair_op, I2),
                              SubsystemLayout((("C", 2), ("A", 2), ("B", 2))), (1, 2, 0))
    assert np.allclose(got, swap)


# --- partial trace ----------------------------------------------------------

@given(st.integers(0, 2**32 - 1))
def test_partial_trace_recovers_product_factor(seed):
    rng = np.random.default_rng(seed)
    rho1 = random_density_matrix(rng, 2)
    rho2 = random_density_matrix(rng, 2)
    joint = density(np.kron(rho1, rho2))
    reduced = partial_trace(joint, ["A"])
    assert reduced.labels == ("A",)
    assert np.abs(reduced.matrix - rho1).max() < 1e-12
    assert np.abs(partial_trace(joint, ["B"]).matrix - rho2).max() < 1e-12


def test_partial_trace_of_bell_is_maximally_mixed():
    phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    rho = density(np.outer(phi, phi.conj()))
    for keep in ("A", "B"):
        assert np.abs(partial_trace(rho, [keep]).matrix - I2 / 2).max() < 1e-14


def test_partial_trace_preserves_trace_and_checks_labels(rng):
    rho = density(random_density_matrix(rng, 4))
    reduced = partial_trace(rho, ["B"])
    assert abs(reduced.matrix.trace() - 1.0) < 1e-12
    with pytest.raises(ValueError, match="unknown"):
        partial_trace(rho, ["Q"])
    with pytest.raises(ValueError, match="at least one"):
        partial_trace(rho, [])


# --- partial transpose -------------------------------------------------------

def test_partial_transpose_keeps_product_states_positive(rng):
    rho = density(np.kron(random_density_matrix(rng, 2), random_density_matrix(rng, 2)))
    for label in ("A", "B"):
        assert min_eigenvalue(partial_transpose(rho, label)) >= -1e-12


def test_partial_transpose_of_singlet():
    rho = density(np.outer(SINGLET, SINGLET.conj()))
    pt = partial_transpose(rho, "B")
    assert np.abs(pt - pt.conj().T).max() < 1e-14
    assert abs(pt.trace() - 1.0) < 1e-14
    assert abs(min_eigenvalue(pt) + 0.5) < 1e-12


def test_partial_transpose_is_involution(rng):
    rho = density(random_density_matrix(rng, 4))
    for label in ("A", "B"):
        once = partial_transpose(rho, label)
        # the intermediate operator may be non-positive, so skip validation
        twice = partial_transpose(DensityOperator(once, PAIR, validate=False), label)
        assert np.array_equal(twice, rho.matrix)


def test_partial_transpose_rejects_unknown_label(rng):
    rho = density(random_density_matrix(rng, 4))
    with pytest.raises(ValueError, match="unknown"):
        partial_transpose(rho, "Q")


# --- spectral helpers ---------------------------------------------------------

def test_min_eigenvalue_spot_values():
    assert min_eigenvalue(I2) == pytest.approx(1.0, abs=1e-12)
    assert min_eigenvalue(SZ) == pytest.approx(-1.0, abs=1e-12)
    with pytest.raises(ValueError, match="Hermitian"):
        min_eigenvalue(np.array([[0, 1], [0, 0]], dtype=complex))


def test_herm_sqrt_identity():
    assert np.abs(herm_sqrt(I4) - I4).max() < 1e-14


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 4, 16]))
def test_herm_sqrt_squares_back(seed, dim):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    psd = g @ g.conj().T
    root = herm_sqrt(psd)
    assert np.abs(root @ root - psd).max() < 1e-10
    assert np.abs(root - root.conj().T).max() < 1e-10
    assert min_eigenvalue(root) >= -1e-12


def test_herm_sqrt_rejects_bad_inputs():
    with pytest.raises(ValueError, match="PSD"):
        herm_sqrt(np.diag([1.0, -1e-6]))
    with pytest.raises(ValueError, match="Hermitian"):
        herm_sqrt(np.array([[0, 1], [0, 0]], dtype=complex))


def test_negativity_spot_values(rng):
    singlet = density(np.outer(SINGLET, SINGLET.conj()))
    assert negativity(singlet, "B") == pytest.approx(0.5, abs=1e-12)
    product = density(np.kron(random_density_matrix(rng, 2), random_density_matrix(rng, 2)))
    assert negativity(product, "B") < 1e-12
