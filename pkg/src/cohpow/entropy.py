"""Von Neumann entropy and quantum relative entropy, in bits.

Eigenvalues below ``EIG_CUTOFF`` count as zero both for the 0*log(0)
convention and for support detection in the relative entropy.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError
from .states import DensityMatrix

EIG_CUTOFF = 1e-12


def _entropy_of_probs(p: np.ndarray) -> float:
    p = p[p > EIG_CUTOFF]
    if p.size == 0:
        return 0.0
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -tr[rho log2 rho]; lies in [0, log2 dim]."""
    w = np.clip(np.linalg.eigvalsh(rho.matrix), 0.0, 1.0)
    return _entropy_of_probs(w)


def shannon_entropy(p) -> float:
    """Shannon entropy of a probability vector, in bits."""
    return _entropy_of_probs(np.clip(np.asarray(p, dtype=float), 0.0, 1.0))


def binary_entropy(p: float) -> float:
    """h(p) = -p log2 p - (1-p) log2 (1-p)."""
    return shannon_entropy(np.array([p, 1.0 - p]))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """S(rho || sigma) = tr[rho log2 rho] - tr[rho log2 sigma].

    Returns ``math.inf`` when the support of ``rho`` is not contained in
    the support of ``sigma`` (eigenvalues below the cutoff count as zero).
    """
    if rho.dim != sigma.dim:
        raise DimensionError(
            f"relative entropy needs equal dims, got {rho.dim} and {sigma.dim}"
        )
    w_sigma, v_sigma = np.linalg.eigh(sigma.matrix)
    w_sigma = np.clip(w_sigma, 0.0, 1.0)
    # <v_j| rho |v_j>: weight of rho on each eigenvector of sigma.
    overlaps = np.real(np.einsum("ij,jk,ki->i", v_sigma.conj().T, rho.matrix, v_sigma))
    overlaps = np.clip(overlaps, 0.0, 1.0)
    outside = w_sigma <= EIG_CUTOFF
    if np.any(overlaps[outside] > EIG_CUTOFF):
        return math.inf
    inside = ~outside
    cross = float(np.sum(overlaps[inside] * np.log2(w_sigma[inside])))
    return -von_neumann_entropy(rho) - cross
