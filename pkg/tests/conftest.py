"""Shared oracles and generators for the test suite.

The oracles here are written from scratch on purpose: they give the closed
forms in the package something independent to be checked against.
"""

from __future__ import annotations

import math

import numpy as np
import pytest


def oracle_symplectic_spectrum(matrix: np.ndarray) -> np.ndarray:
    """Brute-force symplectic spectrum: moduli of eig(i Omega M), deduplicated.

    Independent of the package: the symplectic form is built entry by entry
    and the eigenproblem is solved on the explicitly complex matrix.
    """
    dim = matrix.shape[0]
    omega = np.zeros((dim, dim))
    for j in range(0, dim, 2):
        omega[j, j + 1] = 1.0
        omega[j + 1, j] = -1.0
    ev = np.linalg.eigvals(1j * omega @ matrix)
    moduli = np.sort(np.abs(ev))
    return 0.5 * (moduli[0::2] + moduli[1::2])


def oracle_entropy_bits(matrix: np.ndarray) -> float:
    """Gaussian entropy from the brute-force spectrum, in bits."""
    total = 0.0
    for lam in oracle_symplectic_spectrum(matrix):
        x = max(0.0, (lam - 1.0) / 2.0)
        if x > 0.0:
            total += (x + 1.0) * math.log2(x + 1.0) - x * math.log2(x)
    return total


def joint_cov(v: float, t: float, n_eve: float) -> np.ndarray:
    """Alice-Bob covariance assembled entry by entry (test-side copy)."""
    c = math.sqrt(t * (v * v - 1.0))
    b = t * v + (1.0 - t) * n_eve
    return np.array(
        [
            [v, 0.0, c, 0.0],
            [0.0, v, 0.0, -c],
            [c, 0.0, b, 0.0],
            [0.0, -c, 0.0, b],
        ]
    )


def random_symplectic(rng: np.random.Generator, n_modes: int) -> np.ndarray:
    """Random symplectic from layered rotations, squeezers and beam splitters."""

    def rotation(theta: float) -> np.ndarray:
        return np.array(
            [[math.cos(theta), math.sin(theta)], [-math.sin(theta), math.cos(theta)]]
        )

    def single_mode_layer() -> np.ndarray:
        blocks = []
        for _ in range(n_modes):
            r = rng.uniform(-0.8, 0.8)
            squeeze = np.diag([math.exp(r), math.exp(-r)])
            blocks.append(rotation(rng.uniform(0, 2 * math.pi)) @ squeeze)
        out = np.zeros((2 * n_modes, 2 * n_modes))
        for k, blk in enumerate(blocks):
            out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = blk
        return out

    def beam_splitter_layer() -> np.ndarray:
        out = np.eye(2 * n_modes)
        if n_modes < 2:
            return out
        i, j = rng.choice(n_modes, size=2, replace=False)
        ct = math.sqrt(rng.uniform(0.1, 0.9))
        st = math.sqrt(1.0 - ct * ct)
        for q in (0, 1):
            out[2 * i + q, 2 * i + q] = ct
            out[2 * i + q, 2 * j + q] = st
            out[2 * j + q, 2 * i + q] = st
            out[2 * j + q, 2 * j + q] = -ct
        return out

    s = single_mode_layer()
    for _ in range(3):
        s = single_mode_layer() @ beam_splitter_layer() @ s
    return s


def random_physical_cov(
    rng: np.random.Generator, n_modes: int
) -> tuple[np.ndarray, np.ndarray]:
    """Random physical covariance with a known spectrum: S diag(nu) S^T."""
    nus = np.sort(rng.uniform(1.0, 8.0, n_modes))
    diag = np.repeat(nus, 2)
    s = random_symplectic(rng, n_modes)
    cov = s @ np.diag(diag) @ s.T
    return 0.5 * (cov + cov.T), nus


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)
