"""Tests for reference states, permutation operators, and the symmetry test."""

import math
from itertools import permutations

import numpy as np
import pytest

from rhozeta.errors import CapExceeded, InvalidParameter
from rhozeta.linalg import partial_trace, random_density, trace_powers, validate_density
from rhozeta.quantum import (
    PureState,
    acceptance_probability,
    bell_state,
    ghz_state,
    isotropic_state,
    make_state,
    permutation_operator,
    plus_state,
    purity,
    sigma_state,
    symmetric_projector,
    w_state,
)
from rhozeta.zeta import series_coeffs

SWAP = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]],
    dtype=complex,
)


# -- states ---------------------------------------------------------------------

def test_plus_state_density():
    rho = plus_state().density()
    assert np.allclose(rho.matrix, np.full((2, 2), 0.5), atol=1e-12)


def test_bell_amplitudes():
    amps = bell_state().amplitudes
    assert np.allclose(amps, np.array([1, 0, 0, 1]) / math.sqrt(2))


def test_w_and_ghz_support():
    assert list(np.flatnonzero(w_state().amplitudes)) == [1, 2, 4]
    assert list(np.flatnonzero(ghz_state().amplitudes)) == [0, 7]


def test_isotropic_zero_is_bell():
    bell = bell_state().density()
    iso = isotropic_state(0.0)
    assert np.allclose(iso.matrix, bell.matrix, atol=1e-12)
    assert iso.rank() == 1


def test_isotropic_one_is_maximally_mixed():
    assert np.allclose(isotropic_state(1.0).matrix, np.eye(4) / 4, atol=1e-15)


def test_sigma_matrix():
    assert np.allclose(sigma_state().matrix, np.diag([1 / 3, 0, 0, 2 / 3]), atol=1e-15)


def test_make_state_dispatch():
    assert isinstance(make_state("plus"), PureState)
    assert make_state("isotropic", p=0.25).dim == 4
    custom_vec = make_state("custom", data=[1, 0])
    assert isinstance(custom_vec, PureState)
    custom_mat = make_state("custom", data=np.eye(2) / 2)
    assert custom_mat.dim == 2


def test_make_state_rejects_bad_input():
    with pytest.raises(InvalidParameter):
        make_state("nonesuch")
    with pytest.raises(InvalidParameter):
        make_state("isotropic", p=1.5)
    with pytest.raises(InvalidParameter):
        make_state("isotropic")
    with pytest.raises(InvalidParameter):
        PureState([1.0, 1.0])


# -- permutation operators ---------------------------------------------------------

def test_identity_permutation():
    assert np.array_equal(permutation_operator(3, 2, (0, 1)), np.eye(9))


def test_swap_operator():
    got = permutation_operator(2, 2, (1, 0))
    assert np.array_equal(got, SWAP)


def test_representation_property_exhaustive():
    d, k = 2, 3
    ops = {p: permutation_operator(d, k, p) for p in permutations(range(k))}
    for p1 in ops:
        for p2 in ops:
            composed = tuple(p1[p2[i]] for i in range(k))
            assert np.array_equal(ops[p1] @ ops[p2], ops[composed])
    for p, op in ops.items():
        inverse = tuple(np.argsort(p))
        assert np.array_equal(op @ ops[inverse], np.eye(d ** k))


def test_permutation_operator_is_permutation_matrix():
    op = permutation_operator(3, 2, (1, 0))
    assert np.array_equal(np.abs(op @ op.conj().T), np.eye(9))
    assert set(np.unique(op.real)) == {0.0, 1.0}
    assert np.all(op.sum(axis=0) == 1) and np.all(op.sum(axis=1) == 1)


def test_caps_enforced():
    with pytest.raises(CapExceeded):
        permutation_operator(2, 6, (0, 1, 2, 3, 4, 5))
    with pytest.raises(CapExceeded):
        symmetric_projector(8, 5)
    with pytest.raises(CapExceeded):
        acceptance_probability(validate_density(np.eye(16) / 16), 4)


# -- symmetric projector ---------------------------------------------------------------

def test_projector_two_qubits():
    proj = symmetric_projector(2, 2)
    assert abs(np.trace(proj.matrix).real - 3.0) < 1e-12
    assert np.allclose(proj.matrix, (np.eye(4) + SWAP) / 2, atol=1e-12)
    # brute-force rank of (I + SWAP)/2
    assert np.linalg.matrix_rank((np.eye(4) + SWAP) / 2) == 3


def test_projector_three_copies_matches_average():
    proj = symmetric_projector(2, 3)
    average = sum(permutation_operator(2, 3, p) for p in permutations(range(3))) / 6
    assert np.allclose(proj.matrix, average, atol=1e-15)
    assert abs(np.trace(proj.matrix).real - 4.0) < 1e-12


def test_projector_trivial_local_dimension():
    assert np.array_equal(symmetric_projector(1, 4).matrix, np.eye(1))


def test_projector_invariants():
    for d, k in ((2, 2), (3, 2), (2, 4), (3, 3)):
        proj = symmetric_projector(d, k).matrix
        assert np.abs(proj - proj.conj().T).max() <= 1e-12
        assert np.abs(proj @ proj - proj).max() <= 1e-10
        assert abs(np.trace(proj).real - math.comb(d + k - 1, k)) <= 1e-8


# -- acceptance probability ----------------------------------------------------------------

def test_acceptance_pure_state_is_one():
    rho = plus_state().density()
    assert abs(acceptance_probability(rho, 4) - 1.0) < 1e-12


def test_acceptance_maximally_mixed_two_copies():
    rho = validate_density(np.eye(2) / 2)
    assert abs(acceptance_probability(rho, 2) - 0.75) < 1e-12


def test_acceptance_maximally_mixed_three_copies():
    rho = validate_density(np.eye(2) / 2)
    assert abs(acceptance_probability(rho, 3) - 0.5) < 1e-12


def test_acceptance_matches_series_coefficients():
    for seed in range(6):
        rho = random_density(2 + seed % 2, 600 + seed)
        series = series_coeffs(trace_powers(rho, 4), 4)
        for k in range(1, 5):
            assert abs(acceptance_probability(rho, k) - series[k]) < 1e-9


def test_acceptance_monotone_in_copies():
    states = [
        plus_state().density(),
        validate_density(np.eye(2) / 2),
        sigma_state(),
        isotropic_state(0.5),
    ]
    for rho in states:
        values = [acceptance_probability(rho, k) for k in range(1, 5)]
        for a, b in zip(values, values[1:]):
            assert b <= a + 1e-12


# -- purity -----------------------------------------------------------------------------------

def test_purity_pure_state():
    assert abs(purity(plus_state().density()) - 1.0) < 1e-12


def test_purity_maximally_mixed():
    assert abs(purity(validate_density(np.eye(2) / 2)) - 0.5) < 1e-12


def test_purity_w_reduction():
    w = w_state().density()
    reduced = partial_trace(w, (2, 4), keep="B")
    assert abs(purity(reduced) - 5 / 9) < 1e-12
