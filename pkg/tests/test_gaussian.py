"""Symplectic/entropy primitives against brute-force oracles."""

from __future__ import annotations

import math

import numpy as np
import pytest

from loattack.gaussian import (
    CovarianceMatrix,
    UnphysicalStateError,
    apply_symplectic,
    beam_splitter_symplectic,
    conditional_covariance_homodyne,
    g_entropy,
    permute_modes,
    symplectic_eigenvalues,
    symplectic_form,
    von_neumann_entropy,
)

from conftest import (
    joint_cov,
    oracle_entropy_bits,
    oracle_symplectic_spectrum,
    random_physical_cov,
    random_symplectic,
)


class TestGEntropy:
    def test_zero_limit(self):
        assert g_entropy(0.0) == 0.0

    def test_unit_value(self):
        # 2*log2(2) - 1*log2(1) = 2
        assert g_entropy(1.0) == pytest.approx(2.0, abs=1e-15)

    def test_half_value_frozen(self):
        # frozen from 40-digit evaluation of the closed form
        assert g_entropy(0.5) == pytest.approx(1.3774437510817343, abs=1e-14)

    def test_tiny_negative_clamped(self):
        assert g_entropy(-1e-13) == 0.0

    def test_domain_error(self):
        with pytest.raises(ValueError, match="x >= 0"):
            g_entropy(-1e-9)

    def test_monotone_on_grid(self):
        xs = np.linspace(0.0, 100.0, 10_000)
        values = [g_entropy(float(x)) for x in xs]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


class TestSymplecticEigenvalues:
    def test_two_vacua(self):
        spec = symplectic_eigenvalues(np.eye(4))
        assert list(spec) == [1.0, 1.0]

    def test_epr_is_pure(self):
        v = 5.0
        c = math.sqrt(v * v - 1.0)
        epr = np.array(
            [[v, 0, c, 0], [0, v, 0, -c], [c, 0, v, 0], [0, -c, 0, v]]
        )
        spec = symplectic_eigenvalues(epr)
        assert spec.eigenvalues == pytest.approx((1.0, 1.0), abs=1e-9)

    def test_joint_state_matches_bruteforce(self):
        m = joint_cov(21.0, 0.5, 2.0)
        expected = oracle_symplectic_spectrum(m)
        got = list(symplectic_eigenvalues(m))
        assert got == pytest.approx(list(expected), abs=1e-10)

    def test_single_thermal_mode(self):
        spec = symplectic_eigenvalues(np.diag([3.0, 3.0]))
        assert list(spec) == pytest.approx([3.0], abs=1e-12)

    def test_rejects_non_symmetric(self):
        bad = np.array([[1.0, 0.5], [0.0, 1.0]])
        with pytest.raises(ValueError, match="symmetric"):
            symplectic_eigenvalues(bad)

    def test_closed_form_agreement_500_random(self, rng):
        # two-mode closed form (from the block invariants) vs the generic route
        for _ in range(500):
            v = rng.uniform(1.0, 60.0)
            t = rng.uniform(0.02, 0.98)
            n = rng.uniform(1.0, 20.0)
            m = joint_cov(v, t, n)
            a, b = v, t * v + (1 - t) * n
            c2 = t * (v * v - 1.0)
            big_a = a * a + b * b - 2.0 * c2
            big_b = a * b - c2
            root = math.sqrt(max(big_a * big_a - 4.0 * big_b * big_b, 0.0))
            closed = sorted(
                [
                    math.sqrt(max((big_a - root) / 2.0, 0.0)),
                    math.sqrt((big_a + root) / 2.0),
                ]
            )
            got = list(symplectic_eigenvalues(m))
            assert got == pytest.approx(closed, abs=1e-9)

    def test_purity_of_symplectic_conjugations(self, rng):
        # S S^T is a pure-state covariance for any symplectic S
        for n_modes in (1, 2, 3):
            for _ in range(20):
                s = random_symplectic(rng, n_modes)
                spec = symplectic_eigenvalues(0.5 * (s @ s.T + (s @ s.T).T))
                assert list(spec) == pytest.approx([1.0] * n_modes, abs=1e-9)

    def test_known_spectrum_recovered(self, rng):
        for n_modes in (1, 2, 3):
            cov, nus = random_physical_cov(rng, n_modes)
            got = list(symplectic_eigenvalues(cov))
            assert got == pytest.approx(list(nus), rel=1e-9)


class TestVonNeumannEntropy:
    def test_vacuum_is_zero(self):
        assert von_neumann_entropy(np.eye(4)) == 0.0

    def test_thermal_mode(self):
        # lambda = 3 -> g((3-1)/2) = g(1) = 2 bits
        assert von_neumann_entropy(np.diag([3.0, 3.0])) == pytest.approx(2.0, abs=1e-12)

    def test_joint_state_matches_bruteforce(self):
        m = joint_cov(21.0, 0.5, 2.0)
        assert von_neumann_entropy(m) == pytest.approx(oracle_entropy_bits(m), abs=1e-10)

    def test_unphysical_rejected(self):
        with pytest.raises(UnphysicalStateError):
            von_neumann_entropy(0.5 * np.eye(2))


class TestConditionalHomodyne:
    def test_product_state_unchanged(self, rng):
        block_a, _ = random_physical_cov(rng, 1)
        block_b, _ = random_physical_cov(rng, 1)
        cov = np.zeros((4, 4))
        cov[:2, :2] = block_a
        cov[2:, 2:] = block_b
        out = conditional_covariance_homodyne(cov, measured_mode=1, quadrature="Q")
        np.testing.assert_allclose(out.matrix, block_a, atol=1e-12)

    def test_pure_joint_state_stays_pure(self):
        # lossless channel: conditioning a two-mode squeezed state on a
        # homodyne outcome leaves a pure single-mode state
        m = joint_cov(21.0, 1.0, 3.0)
        out = conditional_covariance_homodyne(m, measured_mode=1, quadrature="Q")
        assert list(symplectic_eigenvalues(out)) == pytest.approx([1.0], abs=1e-9)

    def test_matches_conditional_closed_form(self):
        v, t, n = 21.0, 0.398, 1.0
        m = joint_cov(v, t, n)
        out = conditional_covariance_homodyne(m, measured_mode=1, quadrature="Q")
        expected = math.sqrt(
            ((1 - t) * n * v * v + t * v) / (t * v + (1 - t) * n)
        )
        assert list(symplectic_eigenvalues(out)) == pytest.approx([expected], abs=1e-10)

    def test_q_and_p_symmetric_for_joint_state(self):
        m = joint_cov(9.0, 0.4, 1.5)
        out_q = conditional_covariance_homodyne(m, 1, "Q")
        out_p = conditional_covariance_homodyne(m, 1, "P")
        # the sigma_z correlation makes the P-conditioned state the
        # quadrature-swapped image of the Q-conditioned one
        swap = np.array([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_allclose(out_p.matrix, swap @ out_q.matrix @ swap, atol=1e-12)

    def test_output_symmetric_physical(self, rng):
        for _ in range(25):
            cov, _ = random_physical_cov(rng, 3)
            out = conditional_covariance_homodyne(cov, measured_mode=0, quadrature="P")
            assert np.max(np.abs(out.matrix - out.matrix.T)) <= 1e-12
            assert symplectic_eigenvalues(out).min >= 1.0 - 1e-9

    def test_zero_variance_measurement_is_noninformative(self):
        # Moore-Penrose inverse of diag(0, 0) is the zero matrix
        cov = np.zeros((4, 4))
        cov[:2, :2] = np.diag([2.0, 2.0])
        out = conditional_covariance_homodyne(cov, measured_mode=1, quadrature="Q")
        np.testing.assert_allclose(out.matrix, np.diag([2.0, 2.0]), atol=0)

    def test_bad_mode_and_quadrature(self):
        m = joint_cov(5.0, 0.5, 1.0)
        with pytest.raises(ValueError, match="out of range"):
            conditional_covariance_homodyne(m, 2, "Q")
        with pytest.raises(ValueError, match="quadrature"):
            conditional_covariance_homodyne(m, 0, "X")


class TestCovarianceMatrixType:
    def test_shape_validation(self):
        with pytest.raises(ValueError, match="2n x 2n"):
            CovarianceMatrix(np.eye(3))

    def test_symmetry_validation(self):
        bad = np.eye(4)
        bad[0, 1] = 1e-6
        with pytest.raises(ValueError, match="symmetric"):
            CovarianceMatrix(bad)

    def test_read_only(self):
        cov = CovarianceMatrix(np.eye(2))
        with pytest.raises(ValueError):
            cov.matrix[0, 0] = 5.0

    def test_n_modes(self):
        assert CovarianceMatrix(np.eye(6)).n_modes == 3


class TestSymplecticHelpers:
    def test_beam_splitter_is_symplectic(self):
        s = beam_splitter_symplectic(3, 0, 2, 0.37)
        omega = symplectic_form(3)
        np.testing.assert_allclose(s @ omega @ s.T, omega, atol=1e-12)

    def test_apply_and_permute_roundtrip(self, rng):
        cov, nus = random_physical_cov(rng, 2)
        swapped = permute_modes(cov, (1, 0))
        back = permute_modes(swapped, (1, 0))
        np.testing.assert_allclose(back.matrix, cov, atol=0)
        mixed = apply_symplectic(cov, beam_splitter_symplectic(2, 0, 1, 0.5))
        # spectrum is a symplectic invariant
        assert list(symplectic_eigenvalues(mixed)) == pytest.approx(list(nus), rel=1e-9)
