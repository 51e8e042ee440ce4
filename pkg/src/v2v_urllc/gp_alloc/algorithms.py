# ============================================================================ #
#                                                                              #
#     Title: Power Allocation Algorithms                                       #
#     Purpose: Max-min information power allocation as a geometric program,   #
#         solved by a log-barrier interior-point method.                       #
#                                                                              #
# ============================================================================ #


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Overview                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


# ---------------------------------------------------------------------------- #
#  Description                                                              ####
# ---------------------------------------------------------------------------- #


"""
!!! note "Summary"
    Given a frame design and a drop, choose the signal and pilot powers of every V2V transmitter and CUE to maximise the smallest information delivered by any pair, while each CUE keeps `Gamma_C >= cue_alloc_threshold`.

    Since the delivered bits are increasing in `Gamma_V`, the problem is a max-min of `Gamma_V`. With an epigraph variable `phi_prime <= Gamma_V` for every pair it becomes a geometric program in the variables `(p_v, q_v, p_c, q_c, phi_prime)`:

    - maximise `phi_prime`;
    - `phi_prime * Phi_r / (tau p_r q_r beta_rr^2) <= 1` for every pair;
    - `Theta_C * den_k / (tau p_k q_k beta_k^2) <= 1` for every CUE;
    - `(2 ** (b / sqrt(lambda)) - 1) / phi_prime <= 1`, the zero-information floor;
    - powers in their boxes.

    Substituting `x = log(variables)` turns every posynomial into a convex log-sum-exp function, which a barrier method with damped Newton steps solves to high accuracy. A phase-I problem finds a strictly feasible start or proves infeasibility.
"""


# ---------------------------------------------------------------------------- #
#                                                                              #
#    Setup                                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


# ---------------------------------------------------------------------------- #
# Imports                                                                   ####
# ---------------------------------------------------------------------------- #


# ## Python StdLib Imports ----
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Optional

# ## Python Third Party Imports ----
import numpy as np
from numpy.typing import NDArray
from scipy.special import logsumexp, softmax
from typeguard import typechecked

# ## Local First Party Imports ----
from v2v_urllc.fbl.algorithms import info_bits
from v2v_urllc.frame_design.algorithms import FrameDesign
from v2v_urllc.geometry.algorithms import Topology
from v2v_urllc.pathloss.algorithms import FadingModel, LinkGains, link_gains
from v2v_urllc.sinr_bounds.algorithms import (
    PilotKind,
    PilotScheme,
    PowerAllocation,
    gamma_c_from_gains,
    gamma_v_from_gains,
    power_bounds,
)
from v2v_urllc.utils.config import ScenarioConfig


# ---------------------------------------------------------------------------- #
# Exports                                                                   ####
# ---------------------------------------------------------------------------- #


__all__: list[str] = [
    "AllocationStatus",
    "Posynomial",
    "GPInstance",
    "AllocationResult",
    "BarrierSettings",
    "build_gp",
    "solve_gp",
    "recover_phi",
    "phi_from_phi_prime",
    "evaluate_posynomial",
    "instance_from_allocation",
    "allocation_from_point",
    "gp_constraint_count",
    "phase_one",
]


# ---------------------------------------------------------------------------- #
# Constants                                                                 ####
# ---------------------------------------------------------------------------- #


log: logging.Logger = logging.getLogger(__name__)

POWER_FLOOR: float = 1e-9
INITIAL_PHI_SHARE: float = 0.9


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Types                                                                 ####
#                                                                              #
# ---------------------------------------------------------------------------- #


class AllocationStatus(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    MAX_ITER = "MaxIter"


@dataclass(frozen=True, eq=False)
class Posynomial:
    """
    !!! note "Summary"
        Sum of monomials `c_j * prod_i x_i ** E[j, i]` with strictly positive coefficients.
    """

    coefficients: NDArray[np.float64]
    exponents: NDArray[np.float64]

    def __post_init__(self) -> None:
        coefficients = np.asarray(self.coefficients, dtype=np.float64).reshape(-1)
        exponents = np.atleast_2d(np.asarray(self.exponents, dtype=np.float64))
        if coefficients.size == 0:
            raise ValueError("A posynomial needs at least one term.")
        if np.any(~(coefficients > 0)):
            raise ValueError("Posynomial coefficients must be strictly positive.")
        if exponents.shape[0] != coefficients.size:
            raise ValueError("One exponent row is required per coefficient.")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "exponents", exponents)

    @property
    def num_terms(self) -> int:
        return int(self.coefficients.size)

    @property
    def num_variables(self) -> int:
        return int(self.exponents.shape[1])

    @property
    def log_coefficients(self) -> NDArray[np.float64]:
        return np.log(self.coefficients)

    def log_value(self, x: NDArray[np.float64]) -> float:
        """`log` of the posynomial at `exp(x)`."""
        return float(logsumexp(self.log_coefficients + self.exponents @ x))


@dataclass(frozen=True, eq=False)
class GPInstance:
    """
    !!! note "Summary"
        A max-min allocation geometric program.

    ???+ abstract "Details"
        Variables are ordered `p_v (P), q_v (P), p_c (K), q_c (K), phi_prime`. `constraints[i]` is the posynomial of the `i`-th `<= 1` constraint and `labels[i]` names it (`"pair:r"`, `"cue:k"` or `"floor"`). `lower` and `upper` are linear-scale boxes; `phi_prime` has none.
    """

    constraints: tuple[Posynomial, ...]
    labels: tuple[str, ...]
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]
    num_pairs: int
    num_cues: int
    scheme: PilotScheme
    gains: LinkGains
    cue_threshold: float
    phi_floor: float

    @property
    def num_variables(self) -> int:
        return 2 * self.num_pairs + 2 * self.num_cues + 1

    @property
    def phi_index(self) -> int:
        return self.num_variables - 1

    @property
    def names(self) -> list[str]:
        out = [f"p_v[{i}]" for i in range(self.num_pairs)] + [f"q_v[{i}]" for i in range(self.num_pairs)]
        out += [f"p_c[{k}]" for k in range(self.num_cues)] + [f"q_c[{k}]" for k in range(self.num_cues)]
        return out + ["phi_prime"]

    def pair_constraint_indices(self) -> list[int]:
        return [i for i, label in enumerate(self.labels) if label.startswith("pair:")]

    def cue_constraint_indices(self) -> list[int]:
        return [i for i, label in enumerate(self.labels) if label.startswith("cue:")]


@dataclass(frozen=True, eq=False)
class AllocationResult:
    """
    !!! note "Summary"
        Outcome of `solve_gp()`.

    ???+ abstract "Details"
        For `Infeasible` results `alloc` is the phase-I point with the smallest worst violation and `phi_prime` is `nan`. `gap` is the barrier duality-gap bound at exit, `mu` the final barrier weight and `decrement` the last squared Newton decrement.
    """

    alloc: PowerAllocation
    phi_prime: float
    phi: float
    status: AllocationStatus
    gamma_v: NDArray[np.float64]
    gamma_c: NDArray[np.float64]
    iterations: dict[str, int] = field(default_factory=dict)
    gap: float = math.nan
    decrement: float = math.nan
    mu: float = math.nan

    @property
    def is_optimal(self) -> bool:
        return self.status is AllocationStatus.OPTIMAL

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "phi_prime": self.phi_prime,
            "phi": self.phi,
            "alloc": self.alloc.to_dict(),
            "gamma_v": self.gamma_v.tolist(),
            "gamma_c": self.gamma_c.tolist(),
            "iterations": dict(self.iterations),
            "gap": self.gap,
        }


@dataclass(frozen=True)
class BarrierSettings:
    """
    !!! note "Summary"
        Barrier-method parameters: `mu` starts at `mu_start` and shrinks by `mu_factor` per outer iteration until the gap bound `m * mu` is below `tol`.
    """

    tol: float = 1e-8
    mu_start: float = 1.0
    mu_factor: float = 10.0
    newton_tol: float = 1e-9
    max_outer: int = 40
    max_newton: int = 100
    alpha: float = 0.01
    beta: float = 0.5


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Building                                                              ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def gp_constraint_count(topology: Topology) -> dict[str, float]:
    """
    !!! note "Summary"
        Inequality count `m = 5 * sum(D_u) + 5 K + 1` of the allocation problem (powers boxed on both sides, one constraint per pair and CUE, and the floor) and the `m ** 3.5` interior-point work estimate.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="Two pairs and one CUE"}
        >>> import numpy as np
        >>> from v2v_urllc.geometry.algorithms import Topology
        >>> from v2v_urllc.gp_alloc.algorithms import gp_constraint_count
        >>> topo = Topology(np.zeros((2, 2)), np.ones((2, 2)), [1, 2], np.ones((1, 2)))
        >>> gp_constraint_count(topo)["constraints"]
        16.0

        ```
    """
    m = 5 * topology.num_pairs + 5 * topology.num_cues + 1
    return {"constraints": float(m), "work_order": float(m) ** 3.5}


def _phi_floor(blocklength: float, b: float) -> float:
    return 2.0 ** (b / math.sqrt(blocklength)) - 1.0


@typechecked
def build_gp(
    topology: Topology,
    fading: FadingModel,
    frame: FrameDesign,
    config: ScenarioConfig,
    cue_threshold: Optional[float] = None,
) -> GPInstance:
    r"""
    !!! note "Summary"
        Assemble the allocation geometric program of one drop.

    ???+ abstract "Details"
        Under SP every pair constraint also carries the squared data power of every transmitter, including the own one, and every CUE constraint the squared powers of all transmitters. Power boxes are `[1e-9 P_max, P_max]` under RP and half that under SP.

    Params:
        topology (Topology):
            The drop.
        fading (FadingModel):
            Path-loss constants.
        frame (FrameDesign):
            Frame fixing `tau` and the blocklength.
        config (ScenarioConfig):
            Power limits and thresholds.
        cue_threshold (Optional[float]):
            CUE SINR target, linear. Defaults to `config.cue_alloc_threshold`.<br>
            Default: `None`

    Raises:
        (ValueError):
            If the drop has no V2V pair, or a pair sees no interference at all so that its SINR is unbounded.

    Returns:
        (GPInstance):
            The program.

    ??? equation "Calculation"
        $$
        \max \phi' \quad \text{s.t.} \quad \frac{\phi' \Phi_r}{\tau p_r q_r \beta_{rr}^2} \le 1, \quad \frac{\Theta^C \mathrm{den}_k}{\tau p^C_k q^C_k (\beta^{C2B}_k)^2} \le 1, \quad \frac{2^{b / \sqrt{\lambda}} - 1}{\phi'} \le 1
        $$
    """
    if topology.num_pairs == 0:
        raise ValueError("The drop has no V2V pair; there is nothing to allocate.")
    scheme = frame.pilot_scheme
    gains = link_gains(topology, fading)
    theta_c = config.cue_alloc_threshold if cue_threshold is None else cue_threshold
    sp = scheme.kind is PilotKind.SP
    tau = scheme.pilot_length
    n_pairs, n_cues = topology.num_pairs, topology.num_cues
    n = 2 * n_pairs + 2 * n_cues + 1
    ip = np.arange(n_pairs)
    iq = n_pairs + ip
    ipc = 2 * n_pairs + np.arange(n_cues)
    iqc = 2 * n_pairs + n_cues + np.arange(n_cues)
    iphi = n - 1
    w = gains.v2v**2
    c = gains.c2v**2
    v2b = gains.v2b**2
    c2b = gains.c2b**2

    constraints: list[Posynomial] = []
    labels: list[str] = []
    for r in range(n_pairs):
        base = np.zeros(n)
        base[iphi] += 1.0
        base[ip[r]] -= 1.0
        base[iq[r]] -= 1.0
        rows: list[NDArray[np.float64]] = []
        coefs: list[float] = []
        for t in range(n_pairs):
            if t != r:
                e = base.copy()
                e[ip[t]] += 1.0
                e[iq[t]] += 1.0
                rows.append(e)
                coefs.append(w[r, t])
            if sp:
                e = base.copy()
                e[ip[t]] += 2.0
                rows.append(e)
                coefs.append(w[r, t])
        for k in range(n_cues):
            e = base.copy()
            e[ipc[k]] += 1.0
            e[iqc[k]] += 1.0
            rows.append(e)
            coefs.append(c[r, k])
            if sp:
                e = base.copy()
                e[ipc[k]] += 2.0
                rows.append(e)
                coefs.append(c[r, k])
        keep = [i for i, coef in enumerate(coefs) if coef > 0]
        if not keep:
            raise ValueError(f"Pair {r} sees no interference; its SINR bound is unbounded.")
        constraints.append(
            Posynomial(np.asarray(coefs)[keep] / (tau * w[r, r]), np.asarray(rows)[keep])
        )
        labels.append(f"pair:{r}")

    for k in range(n_cues):
        base = np.zeros(n)
        base[ipc[k]] -= 1.0
        base[iqc[k]] -= 1.0
        rows = []
        coefs = []
        for t in range(n_pairs):
            e = base.copy()
            e[ip[t]] += 1.0
            e[iq[t]] += 1.0
            rows.append(e)
            coefs.append(v2b[t])
            if sp:
                e = base.copy()
                e[ip[t]] += 2.0
                rows.append(e)
                coefs.append(v2b[t])
        if sp:
            for other in range(n_cues):
                e = base.copy()
                e[ipc[other]] += 2.0
                rows.append(e)
                coefs.append(c2b[other])
        keep = [i for i, coef in enumerate(coefs) if coef > 0]
        if keep:
            constraints.append(
                Posynomial(theta_c * np.asarray(coefs)[keep] / (tau * c2b[k]), np.asarray(rows)[keep])
            )
            labels.append(f"cue:{k}")

    phi_floor = _phi_floor(scheme.blocklength, frame.b)
    floor_exp = np.zeros((1, n))
    floor_exp[0, iphi] = -1.0
    constraints.append(Posynomial(np.array([phi_floor]), floor_exp))
    labels.append("floor")

    pv_max, pc_max = power_bounds(config, scheme)
    upper = np.concatenate([np.full(2 * n_pairs, pv_max), np.full(2 * n_cues, pc_max), [np.inf]])
    lower = np.concatenate([np.full(2 * n_pairs, POWER_FLOOR * pv_max), np.full(2 * n_cues, POWER_FLOOR * pc_max), [0.0]])
    return GPInstance(
        constraints=tuple(constraints),
        labels=tuple(labels),
        lower=lower,
        upper=upper,
        num_pairs=n_pairs,
        num_cues=n_cues,
        scheme=scheme,
        gains=gains,
        cue_threshold=theta_c,
        phi_floor=phi_floor,
    )


@typechecked
def evaluate_posynomial(poly: Posynomial, values: NDArray[np.float64]) -> float:
    """
    !!! note "Summary"
        Value of `poly` at linear-scale positive `values`.
    """
    return float(np.sum(poly.coefficients * np.prod(values[None, :] ** poly.exponents, axis=1)))


@typechecked
def instance_from_allocation(gp: GPInstance, alloc: PowerAllocation, phi_prime: float) -> NDArray[np.float64]:
    """
    !!! note "Summary"
        Linear-scale variable vector of `gp` for an allocation and an epigraph value.
    """
    return np.concatenate([alloc.p_v, alloc.q_v, alloc.p_c, alloc.q_c, [phi_prime]])


@typechecked
def allocation_from_point(gp: GPInstance, values: NDArray[np.float64]) -> PowerAllocation:
    """
    !!! note "Summary"
        Inverse of `instance_from_allocation()`, dropping `phi_prime`.
    """
    p, k = gp.num_pairs, gp.num_cues
    return PowerAllocation(
        p_v=values[:p],
        q_v=values[p : 2 * p],
        p_c=values[2 * p : 2 * p + k],
        q_c=values[2 * p + k : 2 * p + 2 * k],
    )


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Barrier method                                                        ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@dataclass(frozen=True, eq=False)
class _LogProblem:
    """`min c.z` s.t. `logsumexp(logc_i + A_i z) + shift_i . z <= 0` and `lower <= z <= upper`, all in log space."""

    objective: NDArray[np.float64]
    log_coefficients: tuple[NDArray[np.float64], ...]
    exponents: tuple[NDArray[np.float64], ...]
    shifts: tuple[NDArray[np.float64], ...]
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]

    @property
    def num_inequalities(self) -> int:
        return len(self.exponents) + int(np.sum(np.isfinite(self.lower))) + int(np.sum(np.isfinite(self.upper)))

    def constraint_values(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.array(
            [logsumexp(lc + a @ z) + s @ z for lc, a, s in zip(self.log_coefficients, self.exponents, self.shifts)]
        )

    def strictly_feasible(self, z: NDArray[np.float64]) -> bool:
        inside = bool(np.all(z > self.lower) and np.all(z < self.upper))
        return inside and bool(np.all(self.constraint_values(z) < 0))

    def barrier(self, z: NDArray[np.float64], t: float) -> tuple[float, NDArray[np.float64], NDArray[np.float64]]:
        n = z.size
        value = t * float(self.objective @ z)
        grad = t * self.objective.copy()
        hess = np.zeros((n, n))
        for lc, a, s in zip(self.log_coefficients, self.exponents, self.shifts):
            y = lc + a @ z
            f = float(logsumexp(y)) + float(s @ z)
            if f >= 0:
                return math.inf, grad, hess
            pi = softmax(y)
            g = a.T @ pi + s
            h = a.T @ ((pi[:, None] * a) - np.outer(pi, pi @ a))
            value -= math.log(-f)
            grad += g / -f
            hess += h / -f + np.outer(g, g) / f**2
        up = np.isfinite(self.upper)
        lo = np.isfinite(self.lower)
        du = self.upper[up] - z[up]
        dl = z[lo] - self.lower[lo]
        if np.any(du <= 0) or np.any(dl <= 0):
            return math.inf, grad, hess
        value -= float(np.sum(np.log(du)) + np.sum(np.log(dl)))
        grad[up] += 1.0 / du
        grad[lo] -= 1.0 / dl
        diag = np.zeros(n)
        diag[up] += 1.0 / du**2
        diag[lo] += 1.0 / dl**2
        hess[np.diag_indices(n)] += diag
        return value, grad, hess


def _center(
    problem: _LogProblem,
    z: NDArray[np.float64],
    t: float,
    settings: BarrierSettings,
    stop: Optional[Callable[[NDArray[np.float64]], bool]] = None,
) -> tuple[NDArray[np.float64], int, float, bool]:
    """Damped Newton on the barrier subproblem with backtracking line search."""
    decrement = math.inf
    for step in range(1, settings.max_newton + 1):
        value, grad, hess = problem.barrier(z, t)
        try:
            dz = -np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            dz = -np.linalg.lstsq(hess, grad, rcond=None)[0]
        decrement = float(-grad @ dz)
        if decrement / 2.0 <= settings.newton_tol:
            return z, step, decrement, True
        s = 1.0
        while True:
            trial = z + s * dz
            trial_value = problem.barrier(trial, t)[0]
            if trial_value <= value - settings.alpha * s * decrement:
                break
            s *= settings.beta
            if s < 1e-14:
                return z, step, decrement, False
        z = trial
        if stop is not None and stop(z):
            return z, step, decrement, True
    return z, settings.max_newton, decrement, False


def _barrier_solve(
    problem: _LogProblem,
    z0: NDArray[np.float64],
    settings: BarrierSettings,
    stop: Optional[Callable[[NDArray[np.float64]], bool]] = None,
) -> tuple[NDArray[np.float64], bool, dict[str, int], float, float]:
    z = z0.copy()
    m = problem.num_inequalities
    mu = settings.mu_start
    total_newton = 0
    decrement = math.nan
    for outer in range(1, settings.max_outer + 1):
        z, steps, decrement, centred = _center(problem, z, 1.0 / mu, settings, stop)
        total_newton += steps
        log.debug("barrier outer %d: mu %.1e, %d Newton steps, decrement %.2e", outer, mu, steps, decrement)
        if stop is not None and stop(z):
            return z, True, {"outer": outer, "newton": total_newton}, m * mu, decrement
        if m * mu < settings.tol:
            return z, centred, {"outer": outer, "newton": total_newton}, m * mu, decrement
        mu /= settings.mu_factor
    return z, False, {"outer": settings.max_outer, "newton": total_newton}, m * mu, decrement


def _log_problem(gp: GPInstance) -> _LogProblem:
    n = gp.num_variables
    objective = np.zeros(n)
    objective[gp.phi_index] = -1.0
    with np.errstate(divide="ignore"):
        lower = np.log(gp.lower)
    return _LogProblem(
        objective=objective,
        log_coefficients=tuple(p.log_coefficients for p in gp.constraints),
        exponents=tuple(p.exponents for p in gp.constraints),
        shifts=tuple(np.zeros(n) for _ in gp.constraints),
        lower=lower,
        upper=np.log(gp.upper),
    )


@typechecked
def phase_one(
    gp: GPInstance,
    x0: NDArray[np.float64],
    settings: BarrierSettings = BarrierSettings(),
    fixed_phi_prime: Optional[float] = None,
) -> tuple[NDArray[np.float64], float]:
    """
    !!! note "Summary"
        Minimise the largest constraint value `s` over the power boxes, in log space.

    ???+ abstract "Details"
        Stops as soon as `s < 0`, which gives a strictly feasible point. With `fixed_phi_prime` the epigraph variable is pinned, which turns the problem into the feasibility test of one level.

    Returns:
        (tuple[NDArray[np.float64], float]):
            The log-space point and the attained `s`; `s >= 0` at convergence means infeasible.
    """
    base = _log_problem(gp)
    n = gp.num_variables
    lower = base.lower.copy()
    upper = base.upper.copy()
    x_start = x0.copy()
    if fixed_phi_prime is not None:
        x_start[gp.phi_index] = math.log(fixed_phi_prime)
    log_coefficients: list[NDArray[np.float64]] = []
    exponents: list[NDArray[np.float64]] = []
    keep = np.arange(n) if fixed_phi_prime is None else np.delete(np.arange(n), gp.phi_index)
    for lc, a in zip(base.log_coefficients, base.exponents):
        if fixed_phi_prime is not None:
            lc = lc + a[:, gp.phi_index] * math.log(fixed_phi_prime)
        log_coefficients.append(lc)
        exponents.append(np.hstack([a[:, keep], np.zeros((a.shape[0], 1))]))
    m = len(keep)
    shift = np.zeros(m + 1)
    shift[-1] = -1.0
    objective = np.zeros(m + 1)
    objective[-1] = 1.0
    problem = _LogProblem(
        objective=objective,
        log_coefficients=tuple(log_coefficients),
        exponents=tuple(exponents),
        shifts=tuple(shift for _ in exponents),
        lower=np.append(lower[keep], -np.inf),
        upper=np.append(upper[keep], np.inf),
    )
    z0 = np.append(x_start[keep], 0.0)
    z0[-1] = float(np.max(problem.constraint_values(np.append(x_start[keep], 0.0)))) + 1.0
    z, _, _, _, _ = _barrier_solve(problem, z0, settings, stop=lambda z: z[-1] < 0)
    x = x_start.copy()
    x[keep] = z[:-1]
    return x, float(z[-1])


def _initial_point(gp: GPInstance) -> NDArray[np.float64]:
    values = np.concatenate([0.5 * gp.upper[:-1], [1.0]])
    alloc = allocation_from_point(gp, values)
    gamma = gamma_v_from_gains(gp.gains, alloc, gp.scheme)
    phi0 = INITIAL_PHI_SHARE * float(np.min(gamma))
    values[-1] = phi0 if math.isfinite(phi0) and phi0 > 0 else 1.0
    return np.log(values)


@typechecked
def solve_gp(gp: GPInstance, tol: float = 1e-8, settings: Optional[BarrierSettings] = None) -> AllocationResult:
    """
    !!! note "Summary"
        Solve the allocation program by the log-barrier interior-point method.

    ???+ abstract "Details"
        The start has every power at half its upper bound and `phi_prime` at `0.9` times the smallest pair bound there. When that point is not strictly feasible, typically because a CUE misses its target, phase I searches for one and declares the instance infeasible when none exists. The solve is deterministic.

    Params:
        gp (GPInstance):
            The program.
        tol (float):
            Duality-gap tolerance in log space.<br>
            Default: `1e-8`
        settings (Optional[BarrierSettings]):
            Barrier parameters; `tol` overrides their tolerance.<br>
            Default: `None`

    Returns:
        (AllocationResult):
            Powers, epigraph value, recovered bits and status.
    """
    settings = settings or BarrierSettings()
    settings = replace(settings, tol=tol)
    problem = _log_problem(gp)
    x = _initial_point(gp)
    iterations: dict[str, int] = {}
    if not problem.strictly_feasible(x):
        x, s = phase_one(gp, x, settings)
        iterations["phase_one"] = 1
        if s >= 0 or not problem.strictly_feasible(x):
            log.warning("Allocation infeasible: phase I stopped at worst constraint %.3e", s)
            alloc = allocation_from_point(gp, np.exp(x))
            return AllocationResult(
                alloc=alloc,
                phi_prime=math.nan,
                phi=math.nan,
                status=AllocationStatus.INFEASIBLE,
                gamma_v=gamma_v_from_gains(gp.gains, alloc, gp.scheme),
                gamma_c=gamma_c_from_gains(gp.gains, alloc, gp.scheme),
                iterations=iterations,
            )
    z, converged, counts, gap, decrement = _barrier_solve(problem, x, settings)
    iterations.update(counts)
    values = np.exp(z)
    alloc = allocation_from_point(gp, values)
    phi_prime = float(values[-1])
    status = AllocationStatus.OPTIMAL if converged else AllocationStatus.MAX_ITER
    if not converged:
        log.warning("Allocation stopped at the iteration limit with gap bound %.2e", gap)
    return AllocationResult(
        alloc=alloc,
        phi_prime=phi_prime,
        phi=phi_from_phi_prime(phi_prime, gp.scheme.blocklength, gp.phi_floor),
        status=status,
        gamma_v=gamma_v_from_gains(gp.gains, alloc, gp.scheme),
        gamma_c=gamma_c_from_gains(gp.gains, alloc, gp.scheme),
        iterations=iterations,
        gap=gap,
        decrement=decrement,
        mu=gap / problem.num_inequalities,
    )


# ---------------------------------------------------------------------------- #
#                                                                              #
#     Information recovery                                                  ####
#                                                                              #
# ---------------------------------------------------------------------------- #


@typechecked
def phi_from_phi_prime(phi_prime: float, blocklength: float, phi_floor: float) -> float:
    r"""
    !!! note "Summary"
        Bits delivered at SINR `phi_prime` over `blocklength` symbols, given the floor `2 ** (b / sqrt(lambda)) - 1`.

    ???+ example "Examples"

        ```pycon {.py .python linenums="1" title="At the floor"}
        >>> from v2v_urllc.gp_alloc.algorithms import phi_from_phi_prime
        >>> floor = 2 ** (6.15 / 166 ** 0.5) - 1
        >>> abs(phi_from_phi_prime(floor, 166.0, floor)) < 1e-9
        True

        ```

    ??? equation "Calculation"
        $$
        \phi = \lambda \log_2(1 + \phi') - b \sqrt{\lambda}, \quad b \sqrt{\lambda} = \lambda \log_2(1 + \phi'_{\min})
        $$
    """
    return blocklength * (math.log2(1.0 + phi_prime) - math.log2(1.0 + phi_floor))


@typechecked
def recover_phi(result: AllocationResult, frame: FrameDesign, epsilon: Optional[float] = None) -> float:
    """
    !!! note "Summary"
        Minimum information bits over the pairs of an optimal allocation, `lambda log2(1 + phi_prime) - b sqrt(lambda)`.

    ???+ abstract "Details"
        With `epsilon` the bits are recomputed through `v2v_urllc.fbl.algorithms.info_bits()` at that reliability instead of the frame's penalty.

    Raises:
        (ValueError):
            If the result is not optimal.
    """
    if not result.is_optimal:
        raise ValueError(f"Cannot recover information bits from a {result.status.value} allocation.")
    lam = frame.blocklength
    if epsilon is not None:
        return float(info_bits(result.phi_prime, lam, epsilon))
    return lam * math.log2(1.0 + result.phi_prime) - frame.b * math.sqrt(lam)
