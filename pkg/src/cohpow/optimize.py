"""State-family parameterizations and a deterministic multi-start maximizer.

Every family decodes an unconstrained real vector into a valid density
matrix (the map is total: degenerate inputs fall back to a fixed state
instead of failing), so any objective over states can be maximized with a
derivative-free local search.  Entropy-based objectives are non-smooth at
eigenvalue crossings, which is why a Nelder-Mead simplex is used instead of
gradient methods; dimensions stay small so simplex steps are cheap.

Reproducibility contract: starting points are drawn per restart from a
counter-based generator keyed by (seed, restart index), so the same config
gives bitwise-identical results, and growing the restart count only appends
new starts.  Restarts are independent and could run in parallel; results
are merged by restart index, so a parallel run would agree exactly with a
serial one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionError
from .states import DensityMatrix, _dm_owned, maximally_mixed, tensor

_DEGENERATE_NORM = 1e-12


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    max_iters: int = 2000
    f_tol: float = 1e-9
    x_tol: float = 1e-8
    rng_seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if self.f_tol <= 0 or self.x_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class OptimizationOutcome:
    """Best point of a multi-start run plus per-start diagnostics.

    ``best_value`` is always the objective re-evaluated at ``best_x`` (a
    certified achieved value, never a stale iterate) and equals
    ``max(restart_values)``.
    """

    best_value: float
    best_state: DensityMatrix
    best_x: np.ndarray
    restart_values: tuple[float, ...]
    converged: tuple[bool, ...]
    final_xs: tuple[np.ndarray, ...]


def _decode_root(x: np.ndarray, dim: int, dims: tuple[int, ...]) -> DensityMatrix:
    t = (x[: dim * dim] + 1j * x[dim * dim:]).reshape(dim, dim)
    m = t @ t.conj().T
    tr = float(np.trace(m).real)
    if tr < _DEGENERATE_NORM:
        return maximally_mixed(dim, dims)
    return _dm_owned(m / tr, dims)


def _decode_vector(x: np.ndarray, dim: int, dims: tuple[int, ...]) -> DensityMatrix:
    v = x[:dim] + 1j * x[dim:]
    norm = float(np.linalg.norm(v))
    if norm < _DEGENERATE_NORM:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
    else:
        v = v / norm
    return _dm_owned(np.outer(v, v.conj()), dims)


def _family_dims(dim: int, dims) -> tuple[int, ...]:
    if dims is None:
        return (dim,)
    dims = tuple(int(d) for d in dims)
    if math.prod(dims) != dim:
        raise DimensionError(f"product of dims {dims} does not match dim {dim}")
    return dims


@dataclass(frozen=True)
class PureStateFamily:
    """Normalized complex vector from 2*dim reals."""

    dim: int
    dims: tuple[int, ...] = None

    def __post_init__(self):
        object.__setattr__(self, "dims", _family_dims(self.dim, self.dims))

    @property
    def name(self) -> str:
        return "pure" if len(self.dims) == 1 else "bipartite-pure"

    @property
    def param_len(self) -> int:
        return 2 * self.dim

    def decode(self, x: np.ndarray) -> DensityMatrix:
        return _decode_vector(np.asarray(x, dtype=float), self.dim, self.dims)

    def encode(self, amplitudes: np.ndarray) -> np.ndarray:
        v = np.asarray(amplitudes, dtype=complex)
        return np.concatenate([v.real, v.imag])


@dataclass(frozen=True)
class MixedStateFamily:
    """rho = T T^dag / tr(T T^dag) with T a dim x dim complex matrix from 2*dim^2 reals."""

    dim: int
    dims: tuple[int, ...] = None

    def __post_init__(self):
        object.__setattr__(self, "dims", _family_dims(self.dim, self.dims))

    @property
    def name(self) -> str:
        return "mixed" if len(self.dims) == 1 else "bipartite-mixed"

    @property
    def param_len(self) -> int:
        return 2 * self.dim * self.dim

    def decode(self, x: np.ndarray) -> DensityMatrix:
        return _decode_root(np.asarray(x, dtype=float), self.dim, self.dims)

    def encode(self, root: np.ndarray) -> np.ndarray:
        t = np.asarray(root, dtype=complex).reshape(-1)
        return np.concatenate([t.real, t.imag])


@dataclass(frozen=True)
class ProductFamily:
    """Two independent mixed factors, tensored."""

    dim_a: int
    dim_b: int

    name = "product"

    @property
    def param_len(self) -> int:
        return 2 * self.dim_a**2 + 2 * self.dim_b**2

    def decode(self, x: np.ndarray) -> DensityMatrix:
        x = np.asarray(x, dtype=float)
        na = 2 * self.dim_a**2
        a = _decode_root(x[:na], self.dim_a, (self.dim_a,))
        b = _decode_root(x[na:], self.dim_b, (self.dim_b,))
        return tensor(a, b)

    def encode(self, root_a: np.ndarray, root_b: np.ndarray) -> np.ndarray:
        enc_a = MixedStateFamily(self.dim_a).encode(root_a)
        enc_b = MixedStateFamily(self.dim_b).encode(root_b)
        return np.concatenate([enc_a, enc_b])


@dataclass(frozen=True)
class SeparableMixtureFamily:
    """Convex mixture of product states: sum_t w_t (rho_t^A x rho_t^B).

    Weights come from a softmax over the trailing ``terms`` parameters, so
    every real vector decodes to a separable state.  The default term count
    dim_a*dim_b is a desk-scale compromise; an exact separable
    parameterization would need (dim_a*dim_b)^2 terms.
    """

    dim_a: int
    dim_b: int
    terms: int = None

    name = "separable"

    def __post_init__(self):
        if self.terms is None:
            object.__setattr__(self, "terms", self.dim_a * self.dim_b)
        if self.terms < 1:
            raise DimensionError("separable mixtures need at least one term")

    @property
    def _term_len(self) -> int:
        return 2 * self.dim_a**2 + 2 * self.dim_b**2

    @property
    def param_len(self) -> int:
        return self.terms * self._term_len + self.terms

    def decode(self, x: np.ndarray) -> DensityMatrix:
        x = np.asarray(x, dtype=float)
        step = self._term_len
        logits = x[self.terms * step:]
        weights = np.exp(logits - logits.max())
        weights /= weights.sum()
        dim = self.dim_a * self.dim_b
        out = np.zeros((dim, dim), dtype=complex)
        product = ProductFamily(self.dim_a, self.dim_b)
        for t in range(self.terms):
            out += weights[t] * product.decode(x[t * step:(t + 1) * step]).matrix
        return _dm_owned(out, (self.dim_a, self.dim_b))

    def encode_constant(self, root_a: np.ndarray, root_b: np.ndarray) -> np.ndarray:
        """Encode the product state root_a x root_b exactly.

        Every term carries the same product state, so the softmax weights
        do not matter and the decoded state is exact.
        """
        chunk = ProductFamily(self.dim_a, self.dim_b).encode(root_a, root_b)
        return np.concatenate([np.tile(chunk, self.terms), np.zeros(self.terms)])


def bipartite_pure(dim_a: int, dim_b: int) -> PureStateFamily:
    return PureStateFamily(dim_a * dim_b, (dim_a, dim_b))


def bipartite_mixed(dim_a: int, dim_b: int) -> MixedStateFamily:
    return MixedStateFamily(dim_a * dim_b, (dim_a, dim_b))


def decode(family, x: np.ndarray) -> DensityMatrix:
    """Decode a parameter vector through the given family."""
    x = np.asarray(x, dtype=float)
    if x.shape != (family.param_len,):
        raise DimensionError(
            f"expected parameter vector of length {family.param_len}, got shape {x.shape}"
        )
    return family.decode(x)


def restart_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based generator for one restart, keyed by (seed, index)."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
    )


def maximize(objective, family, config: OptimizerConfig = None, extra_starts=()) -> OptimizationOutcome:
    """Multi-start Nelder-Mead maximization of ``objective(decode(x))``.

    ``extra_starts`` are deterministic starting vectors evaluated before the
    seeded random starts; power computations use them to inject analytic
    candidates (basis states, product embeddings, continuation warm starts).
    The returned value is a certified lower bound on the true supremum.
    """
    if config is None:
        config = OptimizerConfig()
    n = family.param_len
    starts = [np.asarray(x, dtype=float) for x in extra_starts]
    for x in starts:
        if x.shape != (n,):
            raise DimensionError(f"start vector has shape {x.shape}, expected ({n},)")
    for i in range(config.restarts):
        starts.append(restart_rng(config.rng_seed, i).standard_normal(n))

    def neg(x):
        return -objective(family.decode(x))

    # A typical simplex iteration costs 1-2 evaluations, but degenerate
    # objectives (e.g. constants) trigger full-simplex shrinks at n evals
    # per iteration; the maxfev cap keeps those runs proportionate.
    max_fev = 2 * config.max_iters + n + 1
    values, flags, finals = [], [], []
    for x0 in starts:
        res = minimize(
            neg,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": config.max_iters,
                "maxfev": max_fev,
                "fatol": config.f_tol,
                "xatol": config.x_tol,
                "adaptive": n > 10,
            },
        )
        # Re-evaluate at the final simplex vertex: the reported value must
        # be the objective at the reported point, not an internal iterate.
        values.append(float(objective(family.decode(res.x))))
        flags.append(bool(res.success))
        finals.append(np.array(res.x, dtype=float))

    best = int(np.argmax(values))
    return OptimizationOutcome(
        best_value=values[best],
        best_state=family.decode(finals[best]),
        best_x=finals[best],
        restart_values=tuple(values),
        converged=tuple(flags),
        final_xs=tuple(finals),
    )
