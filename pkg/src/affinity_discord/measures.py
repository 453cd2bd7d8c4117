"""Affinity, measurement pinching, discord functionals, and optimization.

The central per-measurement quantity is the pinched overlap

    sum_k Tr[ S (Pi_k x 1) S (Pi_k x 1) ]

evaluated with S = sqrt(rho) for the affinity/remedied measures and S = rho
for the Hilbert-Schmidt measure. Maximizing it over projective bases on
party A yields the corresponding geometric discord.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize as sciopt

from . import linalg
from .errors import (
    DimensionMismatchError,
    OutOfRangeError,
    UnsupportedDimensionError,
    ValidationError,
)
from .states import BipartiteState, PureState, append_ancilla, schmidt_spectrum
from .tolerances import DEFAULT_TOLERANCES, Tolerances

MAX_OPT_DIM = 8
GRID_THETA_DEFAULT = 181
GRID_PHI_DEFAULT = 360
GRID_REFINE_DEFAULT = 500
MULTISTART_DEFAULT = 64
NM_MAXFEV_PER_START = 300
_BATCH = 8192

STRATEGIES = ("grid", "multistart-local", "hybrid")


@dataclass(frozen=True)
class MeasurementBasis:
    """Orthonormal rank-1 projective measurement on one subsystem.

    ``vectors`` holds the measurement kets as rows; projectors are derived.
    """

    dim: int
    vectors: np.ndarray

    def __post_init__(self):
        vecs = np.array(self.vectors, dtype=np.complex128)
        if vecs.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"expected {self.dim} vectors of length {self.dim}, got shape {vecs.shape}"
            )
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)

    @property
    def projectors(self) -> np.ndarray:
        """Stack of rank-1 projectors |v_k><v_k|, shape (dim, dim, dim)."""
        return np.einsum("ka,kb->kab", self.vectors, self.vectors.conj())

    def check(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        gram = self.vectors.conj() @ self.vectors.T
        defect = float(np.max(np.abs(gram - np.eye(self.dim))))
        if defect > tol.projector_tolerance:
            raise ValidationError(f"measurement vectors not orthonormal (defect {defect:.3e})")

    @classmethod
    def computational(cls, dim: int) -> "MeasurementBasis":
        return cls(dim, np.eye(dim, dtype=np.complex128))

    @classmethod
    def from_unitary(cls, u) -> "MeasurementBasis":
        mat = linalg.as_matrix(u)
        basis = cls(mat.shape[0], mat.T.copy())
        basis.check()
        return basis

    @classmethod
    def from_projectors(cls, projectors, tol: Tolerances = DEFAULT_TOLERANCES) -> "MeasurementBasis":
        vecs = []
        for proj in projectors:
            w, v = linalg.hermitian_eig(proj, tol)
            if abs(w[-1] - 1.0) > tol.projector_tolerance or np.any(
                np.abs(w[:-1]) > tol.projector_tolerance
            ):
                raise ValidationError("projector is not rank-1 idempotent")
            vecs.append(v[:, -1])
        basis = cls(len(vecs), np.array(vecs))
        basis.check(tol)
        return basis

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "MeasurementBasis":
        """Qubit basis along the Bloch direction (theta, phi)."""
        return cls(2, _qubit_vectors(np.asarray(theta), np.asarray(phi)))

    @classmethod
    def from_bloch_vector(cls, r) -> "MeasurementBasis":
        """Qubit basis (1 +/- r.sigma)/2 for a unit Bloch vector r."""
        vec = np.asarray(r, dtype=np.float64).ravel()
        if vec.shape != (3,):
            raise DimensionMismatchError("Bloch vector must have 3 components")
        norm = float(np.linalg.norm(vec))
        if norm < 1e-12:
            raise OutOfRangeError("Bloch vector must be nonzero")
        vec = vec / norm
        theta = float(np.arccos(np.clip(vec[2], -1.0, 1.0)))
        phi = float(np.arctan2(vec[1], vec[0]))
        return cls.from_angles(theta, phi)


@dataclass(frozen=True)
class DiscordResult:
    """Discord value with the method that produced it.

    ``method`` is one of closed-pure, closed-2xn, bound, optimized-grid,
    optimized-local, family-analytic.
    """

    value: float
    method: str
    optimal_measurement: MeasurementBasis | None = None
    parameters: np.ndarray | None = None
    evaluations: int = 0


@dataclass(frozen=True)
class AncillaReport:
    """Optimized discords before/after enlarging party B with an ancilla."""

    affinity_before: float
    affinity_after: float
    hs_before: float
    hs_after: float
    sigma_purity: float


# --- pinched-overlap evaluation ---------------------------------------------


def _qubit_vectors(theta, phi) -> np.ndarray:
    """Orthonormal qubit pair for Bloch angles; shape (..., 2, 2), rows are kets."""
    theta = np.asarray(theta, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    e = np.exp(1j * phi)
    out = np.empty(np.broadcast(theta, phi).shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = c
    out[..., 0, 1] = s * e
    out[..., 1, 0] = s
    out[..., 1, 1] = -c * e
    return out


def _pinched_overlap(s4: np.ndarray, vectors: np.ndarray) -> float:
    """sum_k Tr[M_k^2] with M_k = (<v_k| x 1) S (|v_k> x 1) for one basis."""
    m = np.einsum("ka,aibj,kb->kij", vectors.conj(), s4, vectors)
    return float(np.real(np.einsum("kij,kji->", m, m)))


def _pinched_overlap_batch(s4: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Vectorized pinched overlap for a stack of bases, shape (G, m, m) -> (G,)."""
    out = np.empty(vectors.shape[0], dtype=np.float64)
    for lo in range(0, vectors.shape[0], _BATCH):
        chunk = vectors[lo : lo + _BATCH]
        m = np.einsum("gka,aibj,gkb->gkij", chunk.conj(), s4, chunk, optimize=True)
        out[lo : lo + _BATCH] = np.real(np.einsum("gkij,gkji->g", m, m, optimize=True))
    return out


def _pinch(rho: np.ndarray, basis: MeasurementBasis, dim_b: int) -> np.ndarray:
    eye_b = np.eye(dim_b, dtype=np.complex128)
    out = np.zeros_like(rho)
    for proj in basis.projectors:
        big = np.kron(proj, eye_b)
        out += big @ rho @ big
    return out


# --- per-basis functionals ---------------------------------------------------


def _density_of(x) -> np.ndarray:
    if isinstance(x, BipartiteState):
        return np.asarray(x.rho)
    return linalg.as_matrix(x)


def affinity(rho, sigma, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Affinity Tr(sqrt(rho) sqrt(sigma)) between two density matrices.

    Symmetric, equal to 1 exactly when the states coincide, and 0 for
    orthogonal supports.
    """
    a = _density_of(rho)
    b = _density_of(sigma)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch {a.shape} vs {b.shape}")
    sa = linalg.matrix_sqrt_psd(a, tol)
    sb = linalg.matrix_sqrt_psd(b, tol)
    val = float(np.real(np.trace(sa @ sb)))
    return float(np.clip(val, 0.0, 1.0))


def affinity_metric(rho, sigma, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Metric sqrt(1 - affinity); zero exactly for identical states."""
    return float(np.sqrt(1.0 - affinity(rho, sigma, tol)))


def post_measurement(
    state: BipartiteState, basis: MeasurementBasis, tol: Tolerances = DEFAULT_TOLERANCES
) -> BipartiteState:
    """Pinched state sum_k (Pi_k x 1) rho (Pi_k x 1); idempotent and trace preserving."""
    if basis.dim != state.dim_a:
        raise DimensionMismatchError(
            f"basis dimension {basis.dim} does not match dim_a={state.dim_a}"
        )
    pinched = _pinch(np.asarray(state.rho), basis, state.dim_b)
    return BipartiteState(state.dim_a, state.dim_b, pinched)


def affinity_discord_at(
    state: BipartiteState, basis: MeasurementBasis, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Affinity discord functional at a fixed measurement basis.

    Computed in the single-square-root form
    1 - sum_k Tr[sqrt(rho) (Pi_k x 1) sqrt(rho) (Pi_k x 1)], which equals the
    squared Hilbert-Schmidt distance between sqrt(rho) and its pinching.
    """
    if basis.dim != state.dim_a:
        raise DimensionMismatchError(
            f"basis dimension {basis.dim} does not match dim_a={state.dim_a}"
        )
    s = state.sqrt(tol)
    s4 = s.reshape(state.dim_a, state.dim_b, state.dim_a, state.dim_b)
    return 1.0 - _pinched_overlap(s4, np.asarray(basis.vectors))


def hs_discord_at(
    state: BipartiteState, basis: MeasurementBasis, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Hilbert-Schmidt discord functional ||rho - pinched(rho)||^2 at a fixed basis."""
    if basis.dim != state.dim_a:
        raise DimensionMismatchError(
            f"basis dimension {basis.dim} does not match dim_a={state.dim_a}"
        )
    rho = np.asarray(state.rho)
    r4 = rho.reshape(state.dim_a, state.dim_b, state.dim_a, state.dim_b)
    return state.purity() - _pinched_overlap(r4, np.asarray(basis.vectors))


def affinity_to_measured(
    state: BipartiteState, basis: MeasurementBasis, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Diagnostic: affinity between rho and its pinched state.

    This literal reading (square root of the measured state) differs from
    the single-square-root functional away from zero-discord bases; it is
    exposed for comparison only.
    """
    return affinity(state, post_measurement(state, basis, tol), tol)


def pure_discord(psi: PureState) -> DiscordResult:
    """Closed form for pure states: 1 - sum_k s_k^2 over the Schmidt spectrum."""
    s = schmidt_spectrum(psi)
    value = 1.0 - float(np.sum(s**2))
    u, _, _ = np.linalg.svd(psi.amplitudes.reshape(psi.dim_a, psi.dim_b))
    basis = MeasurementBasis.from_unitary(u)
    return DiscordResult(value, "closed-pure", basis, parameters=None, evaluations=0)


# --- optimization over projective measurements --------------------------------


def _hermitian_from_params(t: np.ndarray, m: int) -> np.ndarray:
    h = np.zeros((m, m), dtype=np.complex128)
    h[np.diag_indices(m)] = t[:m]
    idx = m
    for j in range(m):
        for k in range(j + 1, m):
            h[j, k] = t[idx] - 1j * t[idx + 1]
            h[k, j] = t[idx] + 1j * t[idx + 1]
            idx += 2
    return h


def _unitary_exp_i(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


class _EvalCounter:
    def __init__(self):
        self.count = 0


def _seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def _grid_shape(budget: int | None) -> tuple[int, int, int]:
    if budget is None:
        return GRID_THETA_DEFAULT, GRID_PHI_DEFAULT, GRID_REFINE_DEFAULT
    points = max(16, int(budget * 0.9))
    n_theta = max(3, int(np.sqrt(points / 2.0)))
    n_phi = max(4, points // n_theta)
    refine = max(0, budget - n_theta * n_phi)
    return n_theta, n_phi, refine


def _maximize_overlap_grid(
    s4: np.ndarray, budget: int | None, rel_tol: float
) -> tuple[float, np.ndarray, MeasurementBasis, int]:
    n_theta, n_phi, refine = _grid_shape(budget)
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    vectors = _qubit_vectors(tt.ravel(), pp.ravel())
    values = _pinched_overlap_batch(s4, vectors)
    best = int(np.argmax(values))
    best_val = float(values[best])
    best_angles = np.array([tt.ravel()[best], pp.ravel()[best]])
    evals = vectors.shape[0]

    if refine > 0:
        counter = _EvalCounter()

        def negative(angles):
            counter.count += 1
            return -_pinched_overlap(s4, _qubit_vectors(angles[0], angles[1]))

        res = sciopt.minimize(
            negative,
            best_angles,
            method="Nelder-Mead",
            options={
                "maxfev": refine,
                "xatol": 1e-10,
                "fatol": rel_tol * max(1.0, abs(best_val)) * 1e-2,
            },
        )
        evals += counter.count
        if -res.fun > best_val:
            best_val = float(-res.fun)
            best_angles = np.asarray(res.x, dtype=np.float64)
    basis = MeasurementBasis.from_angles(best_angles[0], best_angles[1])
    return best_val, best_angles, basis, evals


def _maximize_overlap_multistart(
    s4: np.ndarray,
    dim_a: int,
    budget: int | None,
    seed,
    include_marginal_start: bool,
    marginal: np.ndarray | None,
) -> tuple[float, np.ndarray, MeasurementBasis, int]:
    starts = MULTISTART_DEFAULT if budget is None else max(1, budget // NM_MAXFEV_PER_START)
    n_params = dim_a * dim_a
    seeds = _seed_sequence(seed).spawn(starts)
    simplex = np.vstack([np.zeros(n_params), 0.4 * np.eye(n_params)])

    best_val = -np.inf
    best_vectors = None
    best_params = None
    evals = 0
    for j in range(starts):
        rng = np.random.default_rng(seeds[j])
        if j == 0 and include_marginal_start and marginal is not None:
            _, u0 = np.linalg.eigh(marginal)
        else:
            g = rng.standard_normal((dim_a, dim_a)) + 1j * rng.standard_normal((dim_a, dim_a))
            _, u0 = np.linalg.eigh((g + g.conj().T) / 2.0)
        counter = _EvalCounter()

        def negative(t, u0=u0, counter=counter):
            counter.count += 1
            u = u0 @ _unitary_exp_i(_hermitian_from_params(t, dim_a))
            return -_pinched_overlap(s4, u.T)

        res = sciopt.minimize(
            negative,
            np.zeros(n_params),
            method="Nelder-Mead",
            options={
                "maxfev": NM_MAXFEV_PER_START,
                "xatol": 1e-9,
                "fatol": 1e-12,
                "initial_simplex": simplex,
            },
        )
        evals += counter.count
        if -res.fun > best_val:
            best_val = float(-res.fun)
            best_params = np.asarray(res.x, dtype=np.float64)
            u = u0 @ _unitary_exp_i(_hermitian_from_params(best_params, dim_a))
            best_vectors = u.T.copy()
    basis = MeasurementBasis(dim_a, best_vectors)
    return best_val, best_params, basis, evals


def _maximize_overlap(
    s: np.ndarray,
    dim_a: int,
    dim_b: int,
    strategy: str,
    budget: int | None,
    seed,
    marginal: np.ndarray | None,
    tol: Tolerances,
) -> tuple[float, np.ndarray | None, MeasurementBasis, int, str]:
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    if dim_a > MAX_OPT_DIM:
        raise UnsupportedDimensionError(
            f"optimization supports dim_a <= {MAX_OPT_DIM}, got {dim_a}"
        )
    s4 = s.reshape(dim_a, dim_b, dim_a, dim_b)
    if dim_a == 1:
        basis = MeasurementBasis.computational(1)
        return _pinched_overlap(s4, basis.vectors), None, basis, 1, "optimized-grid"

    if strategy == "grid" or (strategy == "hybrid" and dim_a == 2):
        if dim_a != 2:
            raise UnsupportedDimensionError("grid strategy requires dim_a = 2")
        val, params, basis, evals = _maximize_overlap_grid(
            s4, budget, tol.optimizer_rel_improvement
        )
        return val, params, basis, evals, "optimized-grid"

    include_marginal = strategy == "hybrid"
    val, params, basis, evals = _maximize_overlap_multistart(
        s4, dim_a, budget, seed, include_marginal, marginal
    )
    return val, params, basis, evals, "optimized-local"


def optimize_affinity_discord(
    state: BipartiteState,
    strategy: str = "hybrid",
    budget: int | None = None,
    seed=0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DiscordResult:
    """Minimize the affinity discord functional over projective bases on A.

    ``strategy`` is 'grid' (Bloch-angle lattice plus local refinement, two-level
    A only), 'multistart-local' (seeded Nelder-Mead restarts over perturbed
    random bases), or 'hybrid' (grid for two-level A, otherwise multistart with
    the marginal eigenbasis as the first start). ``budget`` caps functional
    evaluations; identical seeds give identical results.
    """
    s = state.sqrt(tol)
    best, params, basis, evals, method = _maximize_overlap(
        s, state.dim_a, state.dim_b, strategy, budget, seed, state.marginal("a"), tol
    )
    return DiscordResult(1.0 - best, method, basis, parameters=params, evaluations=evals)


def optimize_hs_discord(
    state: BipartiteState,
    strategy: str = "hybrid",
    budget: int | None = None,
    seed=0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DiscordResult:
    """Minimize ||rho - pinched(rho)||^2 over projective bases on A."""
    rho = np.asarray(state.rho)
    best, params, basis, evals, method = _maximize_overlap(
        rho, state.dim_a, state.dim_b, strategy, budget, seed, state.marginal("a"), tol
    )
    return DiscordResult(
        state.purity() - best, method, basis, parameters=params, evaluations=evals
    )


def remedied_hs_discord(
    state: BipartiteState,
    strategy: str = "hybrid",
    budget: int | None = None,
    seed=0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DiscordResult:
    """Minimize ||sqrt(rho) - pinched(sqrt(rho))||^2 over projective bases on A.

    Numerically identical to the affinity-based optimum; kept as a separate
    surface because it is the ancilla-safe repair of the Hilbert-Schmidt
    measure.
    """
    s = state.sqrt(tol)
    best, params, basis, evals, method = _maximize_overlap(
        s, state.dim_a, state.dim_b, strategy, budget, seed, state.marginal("a"), tol
    )
    # Tr(S^2) = 1 for a unit-trace state, so the distance is 1 - overlap.
    return DiscordResult(1.0 - best, method, basis, parameters=params, evaluations=evals)


def ancilla_behavior_report(
    state: BipartiteState,
    sigma,
    strategy: str = "hybrid",
    budget: int | None = None,
    seed=0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> AncillaReport:
    """Optimized affinity and HS discords before and after appending sigma on B."""
    enlarged = append_ancilla(state, sigma, tol)
    anc = linalg.as_matrix(sigma)
    sigma_purity = float(np.real(np.vdot(anc, anc)))
    aff_before = optimize_affinity_discord(state, strategy, budget, seed, tol).value
    hs_before = optimize_hs_discord(state, strategy, budget, seed, tol).value
    aff_after = optimize_affinity_discord(enlarged, strategy, budget, seed, tol).value
    hs_after = optimize_hs_discord(enlarged, strategy, budget, seed, tol).value
    return AncillaReport(aff_before, aff_after, hs_before, hs_after, sigma_purity)
