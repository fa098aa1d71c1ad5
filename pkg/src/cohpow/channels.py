"""Quantum channels as finite Kraus-operator lists."""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

from .errors import DimensionError, InvariantError
from .states import DensityMatrix, _dm_owned, _freeze

COMPLETENESS_ATOL = 1e-9


@dataclass(frozen=True)
class KrausChannel:
    """Completely positive trace-preserving map sum_j K_j rho K_j^dag.

    All operators must share the shape (dim_out, dim_in) and satisfy the
    completeness relation sum_j K_j^dag K_j = identity to 1e-9.
    """

    kraus: tuple[np.ndarray, ...]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        ops = tuple(_freeze(k) for k in self.kraus)
        if not ops:
            raise DimensionError("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if len(shape) != 2:
            raise DimensionError(f"Kraus operators must be matrices, got shape {shape}")
        if any(k.shape != shape for k in ops):
            raise DimensionError("all Kraus operators must share one shape")
        object.__setattr__(self, "kraus", ops)
        if check:
            self.validate()

    @property
    def dim_in(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.kraus[0].shape[0]

    def validate(self) -> None:
        total = sum(k.conj().T @ k for k in self.kraus)
        residual = float(np.max(np.abs(total - np.eye(self.dim_in))))
        if residual > COMPLETENESS_ATOL:
            raise InvariantError("Kraus operators are not complete", residual)


def apply_channel(phi: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """Evaluate sum_j K_j rho K_j^dag.

    When the channel is square and matches the state's dimension the
    tensor-factor labels are preserved; otherwise the output is unipartite
    of dimension ``dim_out``.
    """
    if phi.dim_in != rho.dim:
        raise DimensionError(
            f"channel input dim {phi.dim_in} does not match state dim {rho.dim}"
        )
    out = np.zeros((phi.dim_out, phi.dim_out), dtype=complex)
    for k in phi.kraus:
        out += k @ rho.matrix @ k.conj().T
    dims = rho.dims if phi.dim_out == phi.dim_in else (phi.dim_out,)
    return _dm_owned(out, dims)


def extend_channel(phi: KrausChannel, k: int) -> KrausChannel:
    """Act with the channel on the first factor of a k-dimensional extension.

    Kraus operators become K_j x identity(k), so the second factor is left
    untouched.
    """
    if k < 1:
        raise DimensionError(f"extension dimension must be >= 1, got {k}")
    eye = np.eye(k)
    return KrausChannel(tuple(np.kron(op, eye) for op in phi.kraus), check=False)


def identity_channel(dim: int) -> KrausChannel:
    return KrausChannel((np.eye(dim, dtype=complex),), check=False)
