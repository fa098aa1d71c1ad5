"""Named channel constructors and reproducible random channels."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel
from .errors import DimensionError, InvariantError
from .states import max_coherent


@dataclass(frozen=True)
class ChannelSpec:
    """Declarative channel description with a JSON mirror.

    ``name`` selects the variant; the remaining fields are read per
    variant: erasing(dim, target), max_cohering(dim), unitary(matrix),
    hadamard(), completely_dephasing(dim), depolarizing(dim, p),
    random(dim, env_dim, seed).
    """

    name: str
    dim: int = None
    target: int = 0
    matrix: np.ndarray = None
    p: float = None
    env_dim: int = None
    seed: int = None


def erasing(dim: int, target: int = 0) -> KrausChannel:
    """Channel sending every state to |target><target| (Kraus |target><i|)."""
    if not 0 <= target < dim:
        raise DimensionError(f"target index {target} out of range for dim {dim}")
    ops = []
    for i in range(dim):
        k = np.zeros((dim, dim), dtype=complex)
        k[target, i] = 1.0
        ops.append(k)
    return KrausChannel(tuple(ops), check=False)


def max_cohering(dim: int) -> KrausChannel:
    """Channel sending every state to the maximally coherent state (Kraus |+><i|)."""
    plus = max_coherent(dim).amplitudes
    ops = []
    for i in range(dim):
        bra = np.zeros(dim, dtype=complex)
        bra[i] = 1.0
        ops.append(np.outer(plus, bra))
    return KrausChannel(tuple(ops), check=False)


def unitary_channel(u: np.ndarray) -> KrausChannel:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(f"unitary must be square, got shape {u.shape}")
    residual = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
    if residual > 1e-9:
        raise InvariantError("matrix is not unitary", residual)
    return KrausChannel((u,), check=False)


def hadamard() -> KrausChannel:
    h = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    return unitary_channel(h)


def completely_dephasing(dim: int) -> KrausChannel:
    """Pinching onto the reference basis (Kraus |i><i|)."""
    ops = []
    for i in range(dim):
        k = np.zeros((dim, dim), dtype=complex)
        k[i, i] = 1.0
        ops.append(k)
    return KrausChannel(tuple(ops), check=False)


def depolarizing(dim: int, p: float) -> KrausChannel:
    """rho -> (1-p) rho + p * identity/dim, via Heisenberg-Weyl operators."""
    if not 0.0 <= p <= 1.0:
        raise DimensionError(f"depolarizing strength must lie in [0, 1], got {p}")
    omega = np.exp(2j * np.pi / dim)
    shift = np.roll(np.eye(dim, dtype=complex), 1, axis=0)
    clock = np.diag(omega ** np.arange(dim))
    ops = []
    for a in range(dim):
        for b in range(dim):
            w = np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
            if a == 0 and b == 0:
                ops.append(math.sqrt(1.0 - p + p / dim**2) * w)
            else:
                ops.append(math.sqrt(p) / dim * w)
    return KrausChannel(tuple(ops), check=False)


def random_channel(dim: int, env_dim: int = None, seed: int = 0) -> KrausChannel:
    """Reproducible Haar-like random channel of Kraus rank ``env_dim``.

    Orthonormalizes a seeded complex-Gaussian (dim*env_dim) x dim matrix
    into an isometry V (with the QR phase fixed for a Haar-like
    distribution) and slices Kraus operators K_e = (1 x <e|) V.  The
    default environment dimension ``dim`` gives generic channels at
    minimal cost.
    """
    if env_dim is None:
        env_dim = dim
    if env_dim < 1:
        raise DimensionError(f"environment dimension must be >= 1, got {env_dim}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed)))
    g = rng.standard_normal((dim * env_dim, dim)) + 1j * rng.standard_normal(
        (dim * env_dim, dim)
    )
    q, r = np.linalg.qr(g)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    v = q * phases.conj()
    v = v.reshape(dim, env_dim, dim)
    return KrausChannel(tuple(v[:, e, :] for e in range(env_dim)), check=False)


def build(spec: ChannelSpec) -> KrausChannel:
    """Instantiate the channel described by a :class:`ChannelSpec`."""
    name = spec.name
    if name == "erasing":
        _require(spec, "dim")
        return erasing(spec.dim, spec.target)
    if name == "max_cohering":
        _require(spec, "dim")
        return max_cohering(spec.dim)
    if name == "unitary":
        if spec.matrix is None:
            raise DimensionError("unitary spec needs a matrix")
        return unitary_channel(spec.matrix)
    if name == "hadamard":
        return hadamard()
    if name == "completely_dephasing":
        _require(spec, "dim")
        return completely_dephasing(spec.dim)
    if name == "depolarizing":
        _require(spec, "dim")
        if spec.p is None:
            raise DimensionError("depolarizing spec needs a strength p")
        return depolarizing(spec.dim, spec.p)
    if name == "random":
        _require(spec, "dim")
        return random_channel(spec.dim, spec.env_dim, spec.seed or 0)
    raise DimensionError(f"unknown channel spec name {name!r}")


def _require(spec: ChannelSpec, field: str) -> None:
    if getattr(spec, field) is None:
        raise DimensionError(f"{spec.name} spec needs a value for {field!r}")
