"""Density matrices and pure states over a fixed computational product basis.

All states carry ``dims``, the tensor-factor dimensions of the underlying
Hilbert space (a one-element tuple for unipartite states).  Incoherence is
always meant with respect to the computational product basis induced by
``dims``; the dephasing maps below project onto that basis.

Values are immutable: the wrapped arrays are copies with the writeable
flag cleared, and every operation returns a new object.  This makes all
functions in this module safe to call from concurrent workers.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass, field

import numpy as np

from .errors import DimensionError, InvariantError

HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
PSD_ATOL = 1e-10
NORM_ATOL = 1e-10


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


def _dm_owned(matrix: np.ndarray, dims: tuple[int, ...]) -> DensityMatrix:
    """Wrap a freshly allocated complex matrix without copy or checks.

    Internal fast path for operations whose output satisfies the state
    invariants by construction; ``dims`` must already be a normalized
    tuple and the caller must not keep a writable reference.
    """
    matrix.setflags(write=False)
    dm = object.__new__(DensityMatrix)
    object.__setattr__(dm, "matrix", matrix)
    object.__setattr__(dm, "dims", dims)
    return dm


def _normalize_dims(dims, size: int) -> tuple[int, ...]:
    if dims is None:
        dims = (size,)
    dims = tuple(int(d) for d in dims)
    if any(d <= 0 for d in dims):
        raise DimensionError(f"factor dimensions must be positive, got {dims}")
    if math.prod(dims) != size:
        raise DimensionError(f"product of dims {dims} does not match size {size}")
    return dims


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace complex matrix with tensor-factor labels.

    Parameters
    ----------
    matrix : array_like
        Square complex matrix.
    dims : sequence of int, optional
        Tensor-factor dimensions; their product must equal the matrix size.
        Defaults to a single factor.
    check : bool
        When True (default) the full invariants are verified: Hermiticity
        and unit trace to 1e-10, minimum eigenvalue >= -1e-10.  Internal
        callers that produce matrices which satisfy the invariants by
        construction pass ``check=False`` to skip the eigendecomposition.
    """

    matrix: np.ndarray
    dims: tuple[int, ...] = None
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        m = _freeze(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", _normalize_dims(self.dims, m.shape[0]))
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self) -> None:
        """Raise :class:`InvariantError` if any state invariant fails."""
        m = self.matrix
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > HERMITICITY_ATOL:
            raise InvariantError("matrix is not Hermitian", herm)
        tr = float(abs(np.trace(m) - 1.0))
        if tr > TRACE_ATOL:
            raise InvariantError("matrix does not have unit trace", tr)
        lam_min = float(np.linalg.eigvalsh(m)[0])
        if lam_min < -PSD_ATOL:
            raise InvariantError("matrix is not positive semidefinite", -lam_min)

    def diagonal(self) -> np.ndarray:
        """Populations in the reference basis (real, clipped to [0, 1])."""
        return np.clip(np.real(np.diag(self.matrix)), 0.0, 1.0)


@dataclass(frozen=True)
class PureState:
    """Normalized state vector with tensor-factor labels."""

    amplitudes: np.ndarray
    dims: tuple[int, ...] = None
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        v = _freeze(self.amplitudes)
        if v.ndim != 1:
            raise DimensionError(f"amplitudes must be a vector, got shape {v.shape}")
        object.__setattr__(self, "amplitudes", v)
        object.__setattr__(self, "dims", _normalize_dims(self.dims, v.shape[0]))
        if check:
            norm_dev = float(abs(np.linalg.norm(v) - 1.0))
            if norm_dev > NORM_ATOL:
                raise InvariantError("state vector is not normalized", norm_dev)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def density(self) -> DensityMatrix:
        """Projector |psi><psi| as a density matrix."""
        v = self.amplitudes
        return DensityMatrix(np.outer(v, v.conj()), self.dims, check=False)


def basis_state(dim: int, index: int, dims=None) -> PureState:
    """Computational basis vector |index> in the given dimension."""
    if not 0 <= index < dim:
        raise DimensionError(f"basis index {index} out of range for dim {dim}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return PureState(v, dims, check=False)


def max_coherent(dim: int, phases=None, dims=None) -> PureState:
    """Maximally coherent state: uniform moduli 1/sqrt(dim) with optional phases.

    The coherence of the result does not depend on the phases; all zero by
    default so that constructions are deterministic.
    """
    if phases is None:
        v = np.full(dim, 1.0 / math.sqrt(dim), dtype=complex)
    else:
        phases = np.asarray(phases, dtype=float)
        if phases.shape != (dim,):
            raise DimensionError(f"expected {dim} phases, got shape {phases.shape}")
        v = np.exp(1j * phases) / math.sqrt(dim)
    return PureState(v, dims, check=False)


def maximally_mixed(dim: int, dims=None) -> DensityMatrix:
    return DensityMatrix(np.eye(dim, dtype=complex) / dim, dims, check=False)


def fourier_entangled_state(dim_a: int, dim_b: int) -> PureState:
    """Maximally coherent bipartite state whose A-marginal is maximally mixed.

    Pairs each A basis vector |i> with the i-th Fourier basis vector of the
    B factor, sum_i |i>|f_i> / sqrt(dim_a).  Every amplitude has modulus
    1/sqrt(dim_a*dim_b), and for dim_b >= dim_a the B vectors are mutually
    orthogonal, which makes this the canonical probe for channels that
    destroy coherence on one side of an entangled pair.
    """
    omega = np.exp(2j * np.pi / dim_b)
    v = np.zeros(dim_a * dim_b, dtype=complex)
    for i in range(dim_a):
        f_i = omega ** (np.arange(dim_b) * (i % dim_b)) / math.sqrt(dim_b)
        v[i * dim_b:(i + 1) * dim_b] = f_i / math.sqrt(dim_a)
    return PureState(v, (dim_a, dim_b), check=False)


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Kronecker product; factor labels are concatenated."""
    return _dm_owned(np.kron(a.matrix, b.matrix), a.dims + b.dims)


def _check_subsystems(rho: DensityMatrix, indices) -> tuple[int, ...]:
    idx = tuple(int(i) for i in indices)
    n = len(rho.dims)
    if len(idx) == 0:
        raise DimensionError("at least one subsystem must be kept")
    if len(set(idx)) != len(idx):
        raise DimensionError(f"duplicate subsystem indices {idx}")
    for i in idx:
        if not 0 <= i < n:
            raise DimensionError(f"subsystem index {i} out of range for {n} factors")
    return idx


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the kept factors (order preserved).

    ``keep`` is a subsystem index or an iterable of indices into
    ``rho.dims``.
    """
    if isinstance(keep, (int, np.integer)):
        keep = (keep,)
    keep = tuple(sorted(_check_subsystems(rho, keep)))
    dims = rho.dims
    n = len(dims)
    if n < 2:
        raise DimensionError("partial trace requires at least two factors")
    r = rho.matrix.reshape(dims + dims)
    # Row index i of factor s pairs with column index i for traced factors,
    # and with an independent index for kept factors.
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    reduced = np.einsum(r, row + col)
    d_keep = math.prod(dims[i] for i in keep)
    out_dims = tuple(dims[i] for i in keep)
    return _dm_owned(np.ascontiguousarray(reduced.reshape(d_keep, d_keep)), out_dims)


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Complete dephasing: keep only the diagonal in the reference basis."""
    return _dm_owned(np.diag(np.diag(rho.matrix)), rho.dims)


def dephase_subsystem(rho: DensityMatrix, subsystem: int) -> DensityMatrix:
    """Dephase a single tensor factor, leaving the others untouched.

    Applies the pinching sum_i (1 x |i><i|) rho (1 x |i><i|) on the chosen
    factor; the result is diagonal across that factor's basis but may keep
    coherence within the remaining factors.
    """
    (s,) = _check_subsystems(rho, (subsystem,))
    dims = rho.dims
    n = len(dims)
    r = rho.matrix.reshape(dims + dims)
    mask_shape = [1] * (2 * n)
    mask_shape[s] = dims[s]
    mask_shape[n + s] = dims[s]
    mask = np.eye(dims[s]).reshape(mask_shape)
    return _dm_owned((r * mask).reshape(rho.dim, rho.dim), dims)


def psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Square root of a PSD matrix via eigendecomposition (eigenvalues clipped at 0)."""
    w, v = np.linalg.eigh(matrix)
    w = np.sqrt(np.maximum(w, 0.0))
    return (v * w) @ v.conj().T
