"""Cohering and decohering powers of quantum channels.

Seven quantities are computed, each as a certified lower bound obtained by
optimization, paired with an analytic upper bound:

* cohering power: best coherence the channel creates from an incoherent
  input.  Both measures are convex and the map is affine, so the maximum
  over the incoherent simplex sits at a basis state; the value is exact.
* generalized cohering power: best coherence gain over all inputs.
* complete cohering power: the generalized quantity for the channel acting
  on one side of a bipartite state, per ancilla dimension k.  For the
  relative-entropy measure this provably equals the generalized power, and
  the computation enforces that as a consistency check.
* decohering / generalized decohering / complete decohering powers: the
  mirrored quantities for destroying coherence.  The plain decohering
  power carries the constraint that the output is incoherent, handled by
  penalty continuation with a final feasibility gate.
* separable-restricted complete decohering power: same objective over
  convex mixtures of product inputs only (relative entropy measure).

Optimizations run from seeded random starts plus deterministic analytic
candidates (basis states, maximally coherent states, product embeddings of
the single-system optimum, Fourier-paired entangled probes).  The
candidates only add starting points; every reported value is the objective
evaluated at an actual state, so reported values stay honest lower bounds.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .channels import KrausChannel, apply_channel, extend_channel
from .coherence import Measure, c_l1, c_rel_entropy, coherence, max_coherence
from .errors import DimensionError
from .optimize import (
    MixedStateFamily,
    OptimizationOutcome,
    OptimizerConfig,
    PureStateFamily,
    SeparableMixtureFamily,
    bipartite_mixed,
    bipartite_pure,
    maximize,
)
from .states import (
    DensityMatrix,
    basis_state,
    dephase,
    fourier_entangled_state,
    max_coherent,
)

BOUND_SLACK = 1e-6
THEOREM_SLACK = 1e-5
CROSS_CHECK_SLACK = 1e-7
FEASIBILITY_TOL = 1e-6
PENALTY_SCHEDULE = (1e1, 1e2, 1e3, 1e4)


class PowerKind(str, Enum):
    COHERING = "cohering"
    GENERALIZED_COHERING = "generalized-cohering"
    COMPLETE_COHERING = "complete-cohering"
    DECOHERING = "decohering"
    GENERALIZED_DECOHERING = "generalized-decohering"
    COMPLETE_DECOHERING = "complete-decohering"
    SEPARABLE_COMPLETE_DECOHERING = "separable-complete-decohering"


@dataclass(frozen=True)
class PowerReport:
    """One computed power: optimized value, analytic bound, and provenance.

    ``value`` is a certified lower bound (the objective at ``optimal_input``)
    and may not exceed ``upper_bound`` beyond optimizer slack.  ``k`` is the
    ancilla dimension for complete powers and 0 otherwise.
    """

    kind: PowerKind
    measure: Measure
    k: int
    value: float
    upper_bound: float
    optimal_input: DensityMatrix
    config: OptimizerConfig
    family: str
    feasible: bool = True
    product_lower_bound: float = None
    notes: str = ""

    def __post_init__(self):
        if math.isfinite(self.upper_bound) and self.value > self.upper_bound + BOUND_SLACK:
            raise RuntimeError(
                f"computed {self.kind.value} value {self.value} exceeds its analytic "
                f"upper bound {self.upper_bound}"
            )


def default_k_max(dim: int) -> int:
    """Ancilla sweep default: 4 for qubits, scaled so dim*k stays <= 16."""
    return max(1, min(4, 16 // dim))


def _square_dim(phi: KrausChannel) -> int:
    if phi.dim_in != phi.dim_out:
        raise DimensionError(
            "power computations need a square channel "
            f"(got {phi.dim_in} -> {phi.dim_out})"
        )
    return phi.dim_in


def _vector_of(x: np.ndarray, dim: int) -> np.ndarray:
    v = x[:dim] + 1j * x[dim:]
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
        return v
    return v / norm

def _root_of(x: np.ndarray, dim: int) -> np.ndarray:
    return (x[: dim * dim] + 1j * x[dim * dim:]).reshape(dim, dim)


def _basis_root(dim: int, i: int) -> np.ndarray:
    t = np.zeros((dim, dim), dtype=complex)
    t[i, i] = 1.0
    return t


def _plus_root(dim: int) -> np.ndarray:
    t = np.zeros((dim, dim), dtype=complex)
    t[:, 0] = max_coherent(dim).amplitudes
    return t


def _pure_starts(fam: PureStateFamily) -> list[np.ndarray]:
    d = fam.dim
    starts = [fam.encode(basis_state(d, i).amplitudes) for i in range(d)]
    starts.append(fam.encode(max_coherent(d).amplitudes))
    return starts


def _mixed_starts(fam: MixedStateFamily) -> list[np.ndarray]:
    d = fam.dim
    roots = [_basis_root(d, i) for i in range(d)]
    roots.append(np.eye(d, dtype=complex))
    roots.append(_plus_root(d))
    return [fam.encode(r) for r in roots]


def _pick(best_per_family: list[tuple[str, OptimizationOutcome]]):
    """Largest value wins; exact ties go to the earlier (pure) family."""
    idx = int(np.argmax([o.best_value for _, o in best_per_family]))
    return best_per_family[idx]


def _measure_fn(measure: Measure):
    return c_rel_entropy if measure == Measure.REL_ENTROPY else c_l1


def _gain(phi: KrausChannel, measure: Measure, direction: int):
    """Coherence gain objective: +1 creates (C(phi rho) - C(rho)), -1 destroys."""
    c = _measure_fn(measure)

    def objective(rho: DensityMatrix) -> float:
        return direction * (c(apply_channel(phi, rho)) - c(rho))

    return objective


def _generalized(phi, measure, config, direction):
    """Shared engine for the generalized (unconstrained gain) powers."""
    d = _square_dim(phi)
    pure = PureStateFamily(d)
    mixed = MixedStateFamily(d)
    objective = _gain(phi, measure, direction)
    out_pure = maximize(objective, pure, config, extra_starts=_pure_starts(pure))
    out_mixed = maximize(objective, mixed, config, extra_starts=_mixed_starts(mixed))
    family, best = _pick([("pure", out_pure), ("mixed", out_mixed)])
    kind = (
        PowerKind.GENERALIZED_COHERING if direction > 0 else PowerKind.GENERALIZED_DECOHERING
    )
    report = PowerReport(
        kind=kind,
        measure=measure,
        k=0,
        value=max(0.0, best.best_value),
        upper_bound=max_coherence(measure, d),
        optimal_input=best.best_state,
        config=config,
        family=family,
    )
    return report, out_pure, out_mixed


def cohering_power(
    phi: KrausChannel,
    measure: Measure,
    config: OptimizerConfig = None,
    cross_check: bool = True,
) -> PowerReport:
    """Best coherence the channel produces from an incoherent input.

    The objective is convex on the incoherent simplex, so the maximum is
    taken over basis states directly.  With ``cross_check`` a simplex-
    interior optimization (over dephased decoded states) verifies that no
    interior point beats the vertex value beyond 1e-7.
    """
    if config is None:
        config = OptimizerConfig()
    d = _square_dim(phi)
    values = [coherence(measure, apply_channel(phi, basis_state(d, i).density())) for i in range(d)]
    best_i = int(np.argmax(values))
    value = values[best_i]
    if cross_check:
        mixed = MixedStateFamily(d)
        interior = maximize(
            lambda rho: coherence(measure, apply_channel(phi, dephase(rho))),
            mixed,
            config,
            extra_starts=_mixed_starts(mixed),
        )
        if interior.best_value > value + CROSS_CHECK_SLACK:
            raise RuntimeError(
                "incoherent-simplex interior search exceeded the vertex maximum: "
                f"{interior.best_value} > {value}"
            )
    return PowerReport(
        kind=PowerKind.COHERING,
        measure=measure,
        k=0,
        value=value,
        upper_bound=max_coherence(measure, d),
        optimal_input=basis_state(d, best_i).density(),
        config=config,
        family="basis",
    )


def generalized_cohering_power(
    phi: KrausChannel, measure: Measure, config: OptimizerConfig = None
) -> PowerReport:
    """Best coherence gain over all inputs (pure and mixed families searched)."""
    if config is None:
        config = OptimizerConfig()
    report, _, _ = _generalized(phi, measure, config, +1)
    return report


def _bipartite_gain_search(phi, measure, k, config, direction, out_pure, out_mixed,
                           extra_pure=(), extra_mixed=()):
    """One ancilla level of a complete-power computation.

    Warm starts embed the single-system optima as product states (their
    gain equals the single-system value exactly, by additivity of both
    measures on products), alongside maximally coherent and Fourier-paired
    entangled candidates.
    """
    d = phi.dim_in
    ext = extend_channel(phi, k)
    objective = _gain(ext, measure, direction)

    fam_pure = bipartite_pure(d, k)
    v_single = _vector_of(out_pure.best_x, d)
    e0 = basis_state(k, 0).amplitudes
    pure_starts = [
        fam_pure.encode(np.kron(v_single, e0)),
        fam_pure.encode(np.kron(v_single, max_coherent(k).amplitudes)),
        fam_pure.encode(max_coherent(d * k).amplitudes),
    ]
    if k >= 2:
        pure_starts.append(fam_pure.encode(fourier_entangled_state(d, k).amplitudes))
    pure_starts.extend(extra_pure)

    fam_mixed = bipartite_mixed(d, k)
    t_single = _root_of(out_mixed.best_x, d)
    mixed_starts = [
        fam_mixed.encode(np.kron(t_single, np.eye(k, dtype=complex))),
        fam_mixed.encode(np.kron(t_single, _basis_root(k, 0))),
    ]
    mixed_starts.extend(extra_mixed)

    res_pure = maximize(objective, fam_pure, config, extra_starts=pure_starts)
    res_mixed = maximize(objective, fam_mixed, config, extra_starts=mixed_starts)
    return _pick([("bipartite-pure", res_pure), ("bipartite-mixed", res_mixed)])


def complete_cohering_power(
    phi: KrausChannel,
    measure: Measure,
    k_max: int = None,
    config: OptimizerConfig = None,
    single_config: OptimizerConfig = None,
) -> list[PowerReport]:
    """Coherence gain with the channel on one side of a bipartite input.

    Returns one report per ancilla dimension k in 1..k_max.  For the
    relative-entropy measure the value can never exceed the generalized
    cohering power (correlations do not help creation); a violation beyond
    1e-5 raises, since it would mean the single-system search missed its
    optimum.  For the l1 measure each report carries the product-state
    lower bound (single-system gain) * k, which grows without bound in k.

    ``config`` drives the bipartite searches and is the one recorded in the
    reports; ``single_config`` (defaulting to ``config``) drives the
    single-system reference search, whose optimum is embedded as a product
    warm start, so it pays to give it more restarts than the bipartite
    stages.
    """
    if config is None:
        config = OptimizerConfig()
    if single_config is None:
        single_config = config
    d = _square_dim(phi)
    if k_max is None:
        k_max = default_k_max(d)
    if k_max < 1:
        raise DimensionError(f"k_max must be >= 1, got {k_max}")
    ref = _generalized(phi, measure, single_config, +1)
    return [_cohering_level(phi, measure, k, config, ref) for k in range(1, k_max + 1)]


def _cohering_level(phi, measure, k, config, ref) -> PowerReport:
    gen, out_pure, out_mixed = ref
    d = phi.dim_in
    extra_mixed = []
    product_bound = None
    if measure == Measure.L1_NORM:
        product_bound = gen.value * k
        # Product witness for the bound: single-system optimum x |+_k>.
        t_single = _root_of(out_mixed.best_x, d)
        if gen.family == "pure":
            v = _vector_of(out_pure.best_x, d)
            t_single = np.outer(v, basis_state(d, 0).amplitudes.conj())
        extra_mixed.append(
            bipartite_mixed(d, k).encode(np.kron(t_single, _plus_root(k)))
        )
    family, best = _bipartite_gain_search(
        phi, measure, k, config, +1, out_pure, out_mixed, extra_mixed=extra_mixed
    )
    value = max(0.0, best.best_value)
    if measure == Measure.REL_ENTROPY:
        if value > gen.value + THEOREM_SLACK:
            raise RuntimeError(
                f"bipartite cohering gain {value} exceeds the generalized power "
                f"{gen.value} at k={k}; the single-system search missed its optimum"
            )
        upper = max_coherence(measure, d)
    else:
        upper = max_coherence(measure, d * k)
    return PowerReport(
        kind=PowerKind.COMPLETE_COHERING,
        measure=measure,
        k=k,
        value=value,
        upper_bound=upper,
        optimal_input=best.best_state,
        config=config,
        family=family,
        product_lower_bound=product_bound,
    )


def generalized_decohering_power(
    phi: KrausChannel, measure: Measure, config: OptimizerConfig = None
) -> PowerReport:
    """Best coherence loss over all inputs (no constraint on the output)."""
    if config is None:
        config = OptimizerConfig()
    report, _, _ = _generalized(phi, measure, config, -1)
    return report


def decohering_power(
    phi: KrausChannel, measure: Measure, config: OptimizerConfig = None
) -> PowerReport:
    """Best input coherence among inputs the channel maps to incoherent states.

    The constraint is enforced by penalty continuation: maximize
    C(rho) - mu * c_l1(phi[rho]) over an increasing mu schedule, warm
    starting each stage at the previous optimum.  The result counts only
    if the final point satisfies c_l1(phi[rho]) <= 1e-6; otherwise the
    value is 0 with ``feasible=False``.
    """
    if config is None:
        config = OptimizerConfig()
    d = _square_dim(phi)
    c = _measure_fn(measure)

    def stage_objective(mu):
        def objective(rho):
            return c(rho) - mu * c_l1(apply_channel(phi, rho))

        return objective

    best_value = None
    best_state = None
    best_family = None
    diag_state, diag_family, diag_value = None, None, -math.inf
    for family, informed in (
        (PureStateFamily(d), _pure_starts),
        (MixedStateFamily(d), _mixed_starts),
    ):
        starts = informed(family)
        warm = None
        outcome = None
        for mu in PENALTY_SCHEDULE:
            extra = starts + ([warm] if warm is not None else [])
            outcome = maximize(stage_objective(mu), family, config, extra_starts=extra)
            warm = outcome.best_x
        # Final admission: among the last stage's end points keep the best
        # that actually satisfies the incoherent-output constraint.
        for x in outcome.final_xs:
            rho = family.decode(x)
            if c_l1(apply_channel(phi, rho)) <= FEASIBILITY_TOL:
                val = c(rho)
                if best_value is None or val > best_value:
                    best_value, best_state, best_family = val, rho, family.name
        if outcome.best_value > diag_value:
            diag_value = outcome.best_value
            diag_state = outcome.best_state
            diag_family = family.name

    feasible = best_value is not None
    return PowerReport(
        kind=PowerKind.DECOHERING,
        measure=measure,
        k=0,
        value=best_value if feasible else 0.0,
        upper_bound=max_coherence(measure, d),
        optimal_input=best_state if feasible else diag_state,
        config=config,
        family=best_family if feasible else diag_family,
        feasible=feasible,
        notes="" if feasible else "no feasible point found; value reported as 0",
    )


def complete_decohering_power(
    phi: KrausChannel,
    measure: Measure,
    k_max: int = None,
    config: OptimizerConfig = None,
    single_config: OptimizerConfig = None,
) -> list[PowerReport]:
    """Coherence loss with the channel on one side of a bipartite input.

    One report per ancilla dimension k.  Entanglement can push the
    relative-entropy value above the single-system cap log2(d), up to the
    dimension bound 2*log2(d), which is enforced as a sanity check.
    ``single_config`` plays the same role as in
    :func:`complete_cohering_power`.
    """
    if config is None:
        config = OptimizerConfig()
    if single_config is None:
        single_config = config
    d = _square_dim(phi)
    if k_max is None:
        k_max = default_k_max(d)
    if k_max < 1:
        raise DimensionError(f"k_max must be >= 1, got {k_max}")
    ref = _generalized(phi, measure, single_config, -1)
    return [_decohering_level(phi, measure, k, config, ref) for k in range(1, k_max + 1)]


def _decohering_level(phi, measure, k, config, ref) -> PowerReport:
    _, out_pure, out_mixed = ref
    d = phi.dim_in
    family, best = _bipartite_gain_search(
        phi, measure, k, config, -1, out_pure, out_mixed
    )
    value = max(0.0, best.best_value)
    if measure == Measure.REL_ENTROPY:
        upper = 2.0 * math.log2(d)
        if value > upper + THEOREM_SLACK:
            raise RuntimeError(
                f"complete decohering value {value} exceeds the dimension bound "
                f"{upper} at k={k}"
            )
    else:
        upper = max_coherence(measure, d * k)
    return PowerReport(
        kind=PowerKind.COMPLETE_DECOHERING,
        measure=measure,
        k=k,
        value=value,
        upper_bound=upper,
        optimal_input=best.best_state,
        config=config,
        family=family,
    )


def _separable_gain_search(phi, k, config, t_single, t_pure):
    """Decohering-gain search over separable mixtures at one ancilla level.

    Warm starts: the maximally coherent product |+_d><+_d| x |0><0| (which
    saturates the separable bound for fully erasing channels) and product
    embeddings of the single-system optima given as matrix roots.
    """
    d = phi.dim_in
    fam = SeparableMixtureFamily(d, k)
    objective = _gain(extend_channel(phi, k), Measure.REL_ENTROPY, -1)
    starts = [
        fam.encode_constant(_plus_root(d), _basis_root(k, 0)),
        fam.encode_constant(t_single, np.eye(k, dtype=complex)),
        fam.encode_constant(t_pure, _basis_root(k, 0)),
    ]
    return maximize(objective, fam, config, extra_starts=starts)


def separable_complete_decohering_power(
    phi: KrausChannel,
    k_max: int = None,
    config: OptimizerConfig = None,
    single_config: OptimizerConfig = None,
) -> list[PowerReport]:
    """Complete decohering power restricted to separable inputs (relative entropy).

    Without entanglement the value cannot exceed log2(d), the same cap as
    the generalized decohering power; the search runs over convex mixtures
    of product states, so every reported value is achieved by a genuinely
    separable input.
    """
    if config is None:
        config = OptimizerConfig()
    if single_config is None:
        single_config = config
    d = _square_dim(phi)
    if k_max is None:
        k_max = default_k_max(d)
    if k_max < 1:
        raise DimensionError(f"k_max must be >= 1, got {k_max}")
    ref = _generalized(phi, Measure.REL_ENTROPY, single_config, -1)
    return [_separable_level(phi, k, config, ref) for k in range(1, k_max + 1)]


def _separable_level(phi, k, config, ref) -> PowerReport:
    _, out_pure, out_mixed = ref
    d = phi.dim_in
    t_single = _root_of(out_mixed.best_x, d)
    v_single = _vector_of(out_pure.best_x, d)
    t_pure = np.outer(v_single, basis_state(d, 0).amplitudes.conj())
    fam = SeparableMixtureFamily(d, k)
    outcome = _separable_gain_search(phi, k, config, t_single, t_pure)
    value = max(0.0, outcome.best_value)
    upper = math.log2(d)
    if value > upper + THEOREM_SLACK:
        raise RuntimeError(
            f"separable decohering value {value} exceeds the single-system bound "
            f"{upper} at k={k}"
        )
    return PowerReport(
        kind=PowerKind.SEPARABLE_COMPLETE_DECOHERING,
        measure=Measure.REL_ENTROPY,
        k=k,
        value=value,
        upper_bound=upper,
        optimal_input=outcome.best_state,
        config=config,
        family=fam.name,
        notes=f"separable family uses {fam.terms} product terms "
        "(heuristic; an exact parameterization needs the squared count)",
    )


def sweep_complete_power(
    phi: KrausChannel,
    kind: PowerKind,
    measure: Measure,
    k_max: int = None,
    config: OptimizerConfig = None,
    single_config: OptimizerConfig = None,
) -> list[tuple[PowerReport, float]]:
    """Per-ancilla sweep of a complete power with wall time per level.

    Returns (report, wall_ms) pairs for k = 1..k_max; the reports are the
    same ones the corresponding complete power function would produce (the
    single-system reference is computed once, outside the per-level
    timing).
    """
    if config is None:
        config = OptimizerConfig()
    if single_config is None:
        single_config = config
    d = _square_dim(phi)
    if k_max is None:
        k_max = default_k_max(d)
    if k_max < 1:
        raise DimensionError(f"k_max must be >= 1, got {k_max}")
    if kind == PowerKind.COMPLETE_COHERING:
        ref = _generalized(phi, measure, single_config, +1)
        level = lambda k: _cohering_level(phi, measure, k, config, ref)
    elif kind == PowerKind.COMPLETE_DECOHERING:
        ref = _generalized(phi, measure, single_config, -1)
        level = lambda k: _decohering_level(phi, measure, k, config, ref)
    elif kind == PowerKind.SEPARABLE_COMPLETE_DECOHERING:
        if measure != Measure.REL_ENTROPY:
            raise DimensionError(
                "separable complete decohering power is defined for the "
                "relative-entropy measure only"
            )
        ref = _generalized(phi, Measure.REL_ENTROPY, single_config, -1)
        level = lambda k: _separable_level(phi, k, config, ref)
    else:
        raise DimensionError(f"{kind.value} has no ancilla sweep")
    out = []
    for k in range(1, k_max + 1):
        t0 = time.perf_counter()
        report = level(k)
        out.append((report, (time.perf_counter() - t0) * 1e3))
    return out


def cgen_upper_bound(phi: KrausChannel, config: OptimizerConfig = None) -> float:
    """Single-letter cap on the coherence generating capacity of the channel.

    Equals the generalized cohering power under the relative entropy of
    coherence.  The same number is the exact generating capacity when
    arbitrary coherence-non-creating operations are allowed between channel
    uses, so it is reported under both labels by the CLI.
    """
    return generalized_cohering_power(phi, Measure.REL_ENTROPY, config).value


def psi_phi_asymmetry(theta: float) -> tuple[float, float]:
    """Coherence left on two equally coherent entangled states after erasure.

    Builds |psi> = sin(theta)|0,+> + cos(theta)|1,-> and
    |phi> = sin(theta)|+,0> + cos(theta)|-,1>, which have identical
    coherence (and entanglement), erases the first qubit of each, and
    returns the two remaining relative-entropy coherences.  For
    theta != pi/4 they differ: only the psi branch keeps coherence.
    """
    if not 0.0 < theta < math.pi / 2:
        raise ValueError(f"theta must lie strictly inside (0, pi/2), got {theta}")
    s, c = math.sin(theta), math.cos(theta)
    sq2 = math.sqrt(2.0)
    # Amplitude order: |00>, |01>, |10>, |11>.
    psi = np.array([s, s, c, -c], dtype=complex) / sq2
    phi = np.array([s, c, s, -c], dtype=complex) / sq2
    rho_psi = DensityMatrix(np.outer(psi, psi.conj()), (2, 2), check=False)
    rho_phi = DensityMatrix(np.outer(phi, phi.conj()), (2, 2), check=False)
    pre_gap = abs(c_rel_entropy(rho_psi) - c_rel_entropy(rho_phi))
    if pre_gap > 1e-9:
        raise RuntimeError(f"input states should be equally coherent, gap {pre_gap}")
    from .zoo import erasing  # local import to avoid a cycle

    lam = extend_channel(erasing(2), 2)
    return (
        c_rel_entropy(apply_channel(lam, rho_psi)),
        c_rel_entropy(apply_channel(lam, rho_phi)),
    )


def with_seed(config: OptimizerConfig, seed: int) -> OptimizerConfig:
    """Copy of a config with a different seed (convenience for sweeps)."""
    return replace(config, rng_seed=seed)
