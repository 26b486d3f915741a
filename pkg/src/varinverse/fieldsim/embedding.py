"""Symplectic thickening of the Maxwell phase space, checked numerically.

The pre-symplectic pairing on ``(a_tilde, E)`` perturbations is::

    omega(d1, d2) = sum(d1.a_tilde . d2.E - d2.a_tilde . d1.E) dx^3

and the thickened form adds the gauge sector, with the kernel direction
``grad psi`` and its dual ``grad mu``::

    omega_ext(d1, d2) = omega(d1, d2)
                        + sum(grad d1.mu . grad d2.psi - grad d2.mu . grad d1.psi) dx^3

The Coulomb projector has constant coefficients in Fourier space, so the
``mu dP`` term of the general embedding formula vanishes identically.

The Lagrangian on the thickened space is discretized on a trajectory
``s_0 .. s_M`` with step ``dt`` as::

    S = dt * dx^3 * sum_m sum_lattice [ Ebar . (A_{m+1} - A_m)/dt
          + grad mubar . grad((psi_{m+1} - psi_m)/dt - phi)
          - 1/2 |Ebar|^2 - 1/2 |curl Abar|^2 ]

with bars denoting midpoint averages and ``A = a_tilde + grad psi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import (
    ExtendedState,
    GaugeChoice,
    Integrator,
    MaxwellState,
    energy,
    wave_operator,
)
from .grid import (
    GridSpec,
    curl,
    div,
    grad,
    helmholtz_project,
    laplacian,
    lattice_sum,
    maxnorm,
)

__all__ = [
    "SymplecticSample",
    "presymplectic_product",
    "symplectic_product",
    "canonical_pair",
    "gauge_pair",
    "mixed_pair",
    "flow_preserves_form",
    "discrete_action",
    "action_stationarity",
    "StationarityReport",
    "gauge_compare",
    "GaugeReport",
    "leapfrog_trajectory",
]


def _check_perturbation(d: ExtendedState, grid: GridSpec) -> None:
    grid.check_vector(d.a_tilde)
    grid.check_vector(d.E)
    grid.check_scalar(d.psi)
    grid.check_scalar(d.mu)


def _omega_terms(d1: ExtendedState, d2: ExtendedState) -> np.ndarray:
    return d1.a_tilde * d2.E - d2.a_tilde * d1.E


def _gauge_terms(d1: ExtendedState, d2: ExtendedState, grid: GridSpec) -> np.ndarray:
    return grad(d1.mu, grid) * grad(d2.psi, grid) - grad(d2.mu, grid) * grad(d1.psi, grid)


def presymplectic_product(d1: ExtendedState, d2: ExtendedState, grid: GridSpec) -> float:
    """Pairing of two perturbations under the base form (gauge sector ignored)."""
    _check_perturbation(d1, grid)
    _check_perturbation(d2, grid)
    return lattice_sum(_omega_terms(d1, d2)) * grid.cell_volume


def symplectic_product(d1: ExtendedState, d2: ExtendedState, grid: GridSpec) -> float:
    """Pairing under the thickened form.

    Each sector is summed with a correctly rounded lattice-major sum, so
    when the gauge parts vanish the result equals
    :func:`presymplectic_product` bit for bit.
    """
    base = presymplectic_product(d1, d2, grid)
    gauge = lattice_sum(_gauge_terms(d1, d2, grid)) * grid.cell_volume
    return base + gauge


@dataclass
class SymplecticSample:
    """Two tangent perturbations and their pairing value."""

    first: ExtendedState
    second: ExtendedState
    label: str = ""
    value: float = field(init=False, default=float("nan"))

    def evaluate(self, grid: GridSpec) -> float:
        self.value = symplectic_product(self.first, self.second, grid)
        return self.value


def _zero(grid):
    return ExtendedState.zeros(grid)


def canonical_pair(grid: GridSpec, seed: int = 0, cutoff: float = 3.0) -> SymplecticSample:
    """``d1 = (a_tilde = a)``, ``d2 = (E = a)`` with ``a`` random divergence-free."""
    from .initial import band_limited_div_free

    a = band_limited_div_free(grid, np.random.default_rng(seed), cutoff)
    z = _zero(grid)
    return SymplecticSample(
        ExtendedState(a, z.E, z.psi, z.mu),
        ExtendedState(z.a_tilde, a.copy(), z.psi.copy(), z.mu.copy()),
        "canonical",
    )


def gauge_pair(grid: GridSpec, seed: int = 0, cutoff: float = 3.0) -> SymplecticSample:
    """``d1 = (psi = f)``, ``d2 = (mu = g)``: a kernel direction and its dual."""
    from .initial import band_limited_scalar

    rng = np.random.default_rng(seed)
    f = band_limited_scalar(grid, rng, cutoff)
    g = band_limited_scalar(grid, rng, cutoff)
    z = _zero(grid)
    return SymplecticSample(
        ExtendedState(z.a_tilde, z.E, f, z.mu),
        ExtendedState(z.a_tilde.copy(), z.E.copy(), z.psi.copy(), g),
        "gauge",
    )


def mixed_pair(grid: GridSpec, seed: int = 0, cutoff: float = 3.0) -> SymplecticSample:
    """Perturbations with every sector populated."""
    from .initial import band_limited_div_free, band_limited_scalar

    rng = np.random.default_rng(seed)
    parts = [band_limited_div_free(grid, rng, cutoff) for _ in range(4)]
    scalars = [band_limited_scalar(grid, rng, cutoff) for _ in range(4)]
    return SymplecticSample(
        ExtendedState(parts[0], parts[1], scalars[0], scalars[1]),
        ExtendedState(parts[2], parts[3], scalars[2], scalars[3]),
        "mixed",
    )


def flow_preserves_form(
    state: ExtendedState | MaxwellState,
    gauge: GaugeChoice,
    pairs: list[SymplecticSample],
    steps: int,
    grid: GridSpec,
) -> dict:
    """Evolve the base state and every perturbation for ``steps`` steps.

    The dynamics is linear, so perturbations follow the same stepper with
    the gauge term dropped.  Returns initial and final pairing values and
    the relative drift per pair (absolute when the initial value is 0).
    """
    if isinstance(state, MaxwellState):
        state = ExtendedState.from_maxwell(state, grid)
    zero = GaugeChoice.zero(grid)
    base = Integrator(state, gauge, grid)
    base_energy = energy(state, grid)
    results = []
    for pair in pairs:
        v0 = symplectic_product(pair.first, pair.second, grid)
        i1 = Integrator(pair.first, zero, grid)
        i2 = Integrator(pair.second, zero, grid)
        i1.step(steps)
        i2.step(steps)
        d1, d2 = i1.state(), i2.state()
        v1 = symplectic_product(d1, d2, grid)
        drift = abs(v1 - v0) / abs(v0) if v0 else abs(v1 - v0)
        results.append({
            "label": pair.label,
            "initial": v0,
            "final": v1,
            "drift": drift,
            "psi_frozen": bool(np.array_equal(d1.psi, pair.first.psi) and np.array_equal(d2.psi, pair.second.psi)),
            "mu_frozen": bool(np.array_equal(d1.mu, pair.first.mu) and np.array_equal(d2.mu, pair.second.mu)),
        })
    base.step(steps)
    final = base.state()
    return {
        "steps": steps,
        "pairs": results,
        "max_drift": max((r["drift"] for r in results), default=0.0),
        "base_energy_drift": abs(energy(final, grid) - base_energy) / base_energy if base_energy else 0.0,
    }


# -- discrete action ----------------------------------------------------------


def leapfrog_trajectory(state: ExtendedState, gauge: GaugeChoice, grid: GridSpec, steps: int) -> list[ExtendedState]:
    """States ``s_0 .. s_steps`` of the leapfrog flow."""
    integ = Integrator(state, gauge, grid)
    out = [state]
    for _ in range(steps):
        integ.step()
        out.append(integ.state())
    return out


def _check_trajectory(trajectory) -> None:
    if len(trajectory) < 3:
        raise ValueError(f"a trajectory needs at least 3 states, got {len(trajectory)}")
    for s in trajectory:
        if not isinstance(s, ExtendedState):
            raise TypeError("trajectory states must be ExtendedState")


def discrete_action(trajectory: list[ExtendedState], gauge: GaugeChoice, grid: GridSpec) -> float:
    """Midpoint quadrature of the thickened-space Lagrangian along a trajectory."""
    _check_trajectory(trajectory)
    dt = grid.dt
    grad_phi = grad(gauge.phi, grid)
    terms = []
    for s0, s1 in zip(trajectory[:-1], trajectory[1:]):
        a0, a1 = s0.potential(grid), s1.potential(grid)
        e_mid = 0.5 * (s0.E + s1.E)
        a_mid = 0.5 * (s0.a_tilde + s1.a_tilde)
        mu_mid = 0.5 * (s0.mu + s1.mu)
        psi_dot = (s1.psi - s0.psi) / dt
        b = curl(a_mid, grid)
        density = (
            np.sum(e_mid * (a1 - a0) / dt, axis=0)
            + np.sum(grad(mu_mid, grid) * (grad(psi_dot, grid) - grad_phi), axis=0)
            - 0.5 * np.sum(e_mid * e_mid, axis=0)
            - 0.5 * np.sum(b * b, axis=0)
        )
        terms.append(lattice_sum(density))
    return math.fsum(terms) * dt * grid.cell_volume


@dataclass(frozen=True)
class StationarityReport:
    """Max-norms of the discrete Euler-Lagrange expressions at interior times.

    Each is the variation of :func:`discrete_action` divided by
    ``dt * dx^3``: ``e_variation`` (divergence-free ``dE``), ``a_variation``
    (divergence-free ``da_tilde``), ``mu_variation`` (the equation
    ``psi' = phi``) and ``psi_variation`` (the equation ``mu' = 0``).
    """

    e_variation: float
    a_variation: float
    mu_variation: float
    psi_variation: float
    dt: float

    @property
    def residual(self) -> float:
        return max(self.e_variation, self.a_variation, self.mu_variation, self.psi_variation)


def action_stationarity(trajectory: list[ExtendedState], gauge: GaugeChoice, grid: GridSpec) -> StationarityReport:
    """Discrete Euler-Lagrange residuals of :func:`discrete_action` on a trajectory."""
    _check_trajectory(trajectory)
    dt = grid.dt
    res = {"e": 0.0, "a": 0.0, "mu": 0.0, "psi": 0.0}
    pots = [s.potential(grid) for s in trajectory]
    forces = [wave_operator(s.a_tilde, grid) for s in trajectory]
    for m in range(1, len(trajectory) - 1):
        prev, cur, nxt = trajectory[m - 1], trajectory[m], trajectory[m + 1]
        # dS/dE_m
        r_e = (pots[m + 1] - pots[m - 1]) / (2 * dt) - 0.25 * (prev.E + 2 * cur.E + nxt.E)
        r_e, _ = helmholtz_project(r_e, grid)
        # dS/d(a_tilde)_m ; the magnetic term varies to -curl curl = wave_operator
        r_a = -(nxt.E - prev.E) / (2 * dt) + 0.25 * (forces[m - 1] + 2 * forces[m] + forces[m + 1])
        r_a, _ = helmholtz_project(r_a, grid)
        # dS/dmu_m = -laplacian of the midpoint-averaged (psi' - phi)
        r_mu = -laplacian((nxt.psi - prev.psi) / (2 * dt) - gauge.phi, grid)
        # dS/dpsi_m : mu' = 0 plus the div E coupling through A = a_tilde + grad psi
        e_bar_prev = 0.5 * (prev.E + cur.E)
        e_bar_next = 0.5 * (cur.E + nxt.E)
        r_psi = laplacian((nxt.mu - prev.mu) / (2 * dt), grid) + div(e_bar_next - e_bar_prev, grid) / dt
        res["e"] = max(res["e"], maxnorm(r_e))
        res["a"] = max(res["a"], maxnorm(r_a))
        res["mu"] = max(res["mu"], maxnorm(r_mu))
        res["psi"] = max(res["psi"], maxnorm(r_psi))
    return StationarityReport(res["e"], res["a"], res["mu"], res["psi"], dt)


# -- gauge comparison -----------------------------------------------------------


@dataclass(frozen=True)
class GaugeReport:
    steps: int
    field_scale: float
    e_difference: float
    b_difference: float
    a_difference: float
    a_difference_div_free: float

    @property
    def relative_e(self) -> float:
        return self.e_difference / self.field_scale if self.field_scale else self.e_difference

    @property
    def relative_b(self) -> float:
        return self.b_difference / self.field_scale if self.field_scale else self.b_difference

    @property
    def relative_div_free(self) -> float:
        return self.a_difference_div_free / self.a_difference if self.a_difference else 0.0


def gauge_compare(state: MaxwellState, g1: GaugeChoice, g2: GaugeChoice, steps: int, grid: GridSpec) -> GaugeReport:
    """Evolve one state under two gauges and compare observables.

    ``E`` and ``B = curl A`` should agree to round-off, and ``A1 - A2``
    should be a pure gradient.
    """
    i1 = Integrator(state, g1, grid)
    i2 = Integrator(state, g2, grid)
    i1.step(steps)
    i2.step(steps)
    s1, s2 = i1.state(), i2.state()
    b1, b2 = curl(s1.A, grid), curl(s2.A, grid)
    scale = max(maxnorm(s1.E), maxnorm(b1), maxnorm(state.E), maxnorm(curl(state.A, grid)))
    da = s1.A - s2.A
    da_div0, _ = helmholtz_project(da, grid)
    return GaugeReport(
        steps=steps,
        field_scale=scale,
        e_difference=maxnorm(s1.E - s2.E),
        b_difference=maxnorm(b1 - b2),
        a_difference=maxnorm(da),
        a_difference_div_free=maxnorm(da_div0),
    )
