"""Maxwell dynamics on the periodic grid.

The evolution is the family of vector fields::

    dA/ds = E + grad(phi)
    dE/ds = laplacian(A) - grad(div(A))

on pairs ``(A, E)`` with ``div E = 0``.  :class:`ExtendedState` carries the
thickened coordinates: the divergence-free part ``a_tilde`` of ``A``, the
gradient potential ``psi`` (``A = a_tilde + grad psi``) and the dual
potential ``mu``, which does not move.

Time stepping is kick-drift-kick leapfrog.  :func:`step_leapfrog` takes a
single real-space step; :class:`Integrator` runs the same scheme in
Fourier space for long runs and only transforms back when observed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Union

import numpy as np

from .grid import (
    GridSpec,
    curl,
    div,
    div_hat,
    grad,
    grad_hat,
    helmholtz_project,
    lattice_sum,
    maxnorm,
    wave_operator_hat,
)

__all__ = [
    "MaxwellState",
    "ExtendedState",
    "GaugeChoice",
    "ConstraintError",
    "project_gauss",
    "maxwell_rhs",
    "step_leapfrog",
    "energy",
    "gauss_residual",
    "Integrator",
    "evolve",
]


class ConstraintError(ValueError):
    """A state violates the discrete Gauss constraint."""


GAUSS_TOLERANCE = 1e-10


@dataclass(frozen=True)
class MaxwellState:
    """Vector potential ``A`` and electric field ``E``, each ``(3, N, N, N)``."""

    A: np.ndarray
    E: np.ndarray

    @classmethod
    def zeros(cls, grid: GridSpec) -> "MaxwellState":
        z = np.zeros((3,) + grid.shape)
        return cls(z, z.copy())

    def potential(self, grid: GridSpec) -> np.ndarray:
        return self.A


@dataclass(frozen=True)
class ExtendedState:
    """A point of the thickened space: ``(a_tilde, E, psi, mu)``.

    Also used for tangent perturbations of such a point.
    """

    a_tilde: np.ndarray
    E: np.ndarray
    psi: np.ndarray
    mu: np.ndarray

    @classmethod
    def zeros(cls, grid: GridSpec) -> "ExtendedState":
        v = np.zeros((3,) + grid.shape)
        s = np.zeros(grid.shape)
        return cls(v, v.copy(), s, s.copy())

    @classmethod
    def from_maxwell(cls, state: MaxwellState, grid: GridSpec, mu: np.ndarray | None = None) -> "ExtendedState":
        a_tilde, psi = helmholtz_project(state.A, grid)
        if mu is None:
            mu = np.zeros(grid.shape)
        return cls(a_tilde, state.E.copy(), psi, np.asarray(mu, dtype=float))

    def potential(self, grid: GridSpec) -> np.ndarray:
        """Reconstructed ``A = a_tilde + grad psi``."""
        return self.a_tilde + grad(self.psi, grid)

    def to_maxwell(self, grid: GridSpec) -> MaxwellState:
        return MaxwellState(self.potential(grid), self.E.copy())


State = Union[MaxwellState, ExtendedState]


@dataclass(frozen=True)
class GaugeChoice:
    """Gauge function ``phi`` (zero spatial mean) and where it came from."""

    phi: np.ndarray
    tag: str = "zero"

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=float)
        mean = float(np.mean(phi))
        if abs(mean) > 1e-12 * max(1.0, maxnorm(phi)):
            raise ValueError(f"gauge function must have zero mean, got mean {mean:g}")
        object.__setattr__(self, "phi", phi)

    @classmethod
    def zero(cls, grid: GridSpec) -> "GaugeChoice":
        return cls(np.zeros(grid.shape), "zero")

    @classmethod
    def random(cls, grid: GridSpec, seed: int, cutoff: float = 3.0, amplitude: float = 1.0) -> "GaugeChoice":
        from .initial import band_limited_scalar

        phi = band_limited_scalar(grid, np.random.default_rng(seed), cutoff) * amplitude
        return cls(phi, f"random:{seed},{cutoff:g}")

    @property
    def is_zero(self) -> bool:
        return not np.any(self.phi)


def gauss_residual(state: State, grid: GridSpec) -> float:
    """``maxnorm(div E) / maxnorm(E)`` (absolute when ``E`` vanishes)."""
    scale = maxnorm(state.E)
    r = maxnorm(div(state.E, grid))
    return r / scale if scale else r


def project_gauss(state: State, grid: GridSpec) -> State:
    """Remove the gradient part of ``E`` so the Gauss constraint holds."""
    e_div0, _ = helmholtz_project(state.E, grid)
    return replace(state, E=e_div0)


def _check_gauss(state: State, grid: GridSpec) -> None:
    if gauss_residual(state, grid) > GAUSS_TOLERANCE:
        raise ConstraintError(
            f"Gauss constraint violated: |div E|/|E| = {gauss_residual(state, grid):.3e}"
        )


def wave_operator(a: np.ndarray, grid: GridSpec) -> np.ndarray:
    """``laplacian(A) - grad(div(A))``, i.e. ``-curl(curl(A))``."""
    grid.check_vector(a)
    return grid.ifft(wave_operator_hat(grid, grid.fft(a)))


def maxwell_rhs(state: MaxwellState, gauge: GaugeChoice, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Tangent vector ``(dA/ds, dE/ds)`` of the gauge-``phi`` dynamics."""
    _check_gauss(state, grid)
    dA = state.E + grad(gauge.phi, grid)
    dE = wave_operator(state.A, grid)
    return dA, dE


def step_leapfrog(state: State, gauge: GaugeChoice, grid: GridSpec) -> State:
    """One kick-drift-kick step of size ``grid.dt``.

    For an :class:`ExtendedState` the drift moves ``a_tilde`` by ``dt*E``
    and ``psi`` by ``dt*phi``; ``mu`` is returned unchanged (same array
    contents).
    """
    h = grid.dt
    if isinstance(state, ExtendedState):
        a = state.a_tilde
        e = state.E + 0.5 * h * wave_operator(a, grid)
        a = a + h * e
        psi = state.psi + h * gauge.phi
        e = e + 0.5 * h * wave_operator(a, grid)
        return ExtendedState(a, e, psi, state.mu.copy())
    a = state.A
    e = state.E + 0.5 * h * wave_operator(a, grid)
    a = a + h * (e + grad(gauge.phi, grid))
    e = e + 0.5 * h * wave_operator(a, grid)
    return MaxwellState(a, e)


def field_strength(a: np.ndarray, grid: GridSpec) -> np.ndarray:
    """``F[j, k] = d_j A_k - d_k A_j`` as a ``(3, 3, N, N, N)`` array."""
    a_hat = grid.fft(a)
    kk = grid.wavevector
    out = np.empty((3, 3) + a_hat.shape[1:], dtype=complex)
    for j in range(3):
        for k in range(3):
            out[j, k] = 1j * (kk[j] * a_hat[k] - kk[k] * a_hat[j])
    return grid.ifft(out)


MAGNETIC_WEIGHTS = {
    # weight c in  1/2 |E|^2 + c * sum_{j,k} F_jk F_jk
    "hamiltonian": 0.25,
    "verbatim": 0.5,
}


def energy(state: State, grid: GridSpec, convention: str = "hamiltonian") -> float:
    """Field energy ``sum(1/2 |E|^2 + c F_jk F_jk) dx^3``.

    ``convention="hamiltonian"`` (``c = 1/4``) is the function whose
    differential is ``i_Gamma omega``, i.e. ``1/2|E|^2 + 1/2|curl A|^2``,
    and is conserved by the flow.  ``"verbatim"`` (``c = 1/2``) doubles the
    magnetic term and is not conserved.  The gauge sector never contributes.
    """
    try:
        c = MAGNETIC_WEIGHTS[convention]
    except KeyError:
        raise ValueError(f"unknown energy convention {convention!r}") from None
    a = state.a_tilde if isinstance(state, ExtendedState) else state.A
    F = field_strength(a, grid)
    density = 0.5 * np.sum(state.E * state.E, axis=0) + c * np.sum(F * F, axis=(0, 1))
    return lattice_sum(density) * grid.cell_volume


def magnetic_field(a: np.ndarray, grid: GridSpec) -> np.ndarray:
    return curl(a, grid)


class Integrator:
    """Leapfrog in Fourier space for a fixed grid and gauge.

    Uses ``laplacian(A) - grad(div(A)) = -|k|^2 A_T`` with ``A_T`` the
    transverse part, so a step is a handful of elementwise updates on the
    transverse potential and ``E``; the longitudinal part of ``A`` only
    collects ``dt*grad(phi)`` per step.  Same kick-drift-kick scheme as
    :func:`step_leapfrog` up to round-off.
    """

    def __init__(self, state: State, gauge: GaugeChoice, grid: GridSpec):
        self.grid = grid
        self.extended = isinstance(state, ExtendedState)
        self.steps = 0
        a = state.a_tilde if self.extended else state.A
        a_hat = grid.fft(a)
        psi_hat = -div_hat(grid, a_hat) * grid.inverse_k_squared
        self.a_long = grad_hat(grid, psi_hat)
        self.a_trans = a_hat - self.a_long
        self.e_hat = grid.fft(state.E)
        if self.extended:
            self.psi = state.psi.copy()
            self.mu = state.mu.copy()
            self.gauge_drift = gauge.phi * grid.dt
        else:
            self.gauge_drift = grad_hat(grid, grid.fft(gauge.phi)) * grid.dt
        self.has_gauge = not gauge.is_zero
        kick = -0.5 * grid.dt * grid.k_squared
        self._half_kick = np.broadcast_to(kick, self.a_trans.shape).astype(complex)
        self._tmp = np.empty_like(self.a_trans)

    def step(self, count: int = 1) -> None:
        h = self.grid.dt
        a, e, tmp, kick = self.a_trans, self.e_hat, self._tmp, self._half_kick
        for _ in range(count):
            np.multiply(a, kick, out=tmp)
            e += tmp
            np.multiply(e, h, out=tmp)
            a += tmp
            np.multiply(a, kick, out=tmp)
            e += tmp
            if self.has_gauge:
                if self.extended:
                    self.psi += self.gauge_drift
                else:
                    self.a_long += self.gauge_drift
        self.steps += count

    @property
    def time(self) -> float:
        return self.steps * self.grid.dt

    def state(self) -> State:
        e = self.grid.ifft(self.e_hat)
        if self.extended:
            return ExtendedState(self.grid.ifft(self.a_trans), e, self.psi.copy(), self.mu.copy())
        return MaxwellState(self.grid.ifft(self.a_trans + self.a_long), e)

    def probe(self, component: int, index: tuple[int, int, int]) -> float:
        """Value of ``A[component]`` at one lattice point, without a full transform."""
        w = self._probe_weights(index)
        a = self.a_trans[component] + (0 if self.extended else self.a_long[component])
        return float(np.real(np.vdot(w, a)))

    def _probe_weights(self, index):
        cache = self.__dict__.setdefault("_probe_cache", {})
        if index not in cache:
            n = self.grid.n
            f = np.fft.fftfreq(n, 1.0 / n)
            h = np.fft.rfftfreq(n, 1.0 / n)
            phase = 2 * np.pi * (
                f[:, None, None] * index[0] + f[None, :, None] * index[1] + h[None, None, :] * index[2]
            ) / n
            # irfftn weights: interior half-axis modes count twice
            mult = np.full(h.shape, 2.0)
            mult[0] = 1.0
            if n % 2 == 0:
                mult[-1] = 1.0
            cache[index] = np.conj(np.exp(1j * phase) * mult[None, None, :] / n**3)
        return cache[index]


def evolve(
    state: State,
    gauge: GaugeChoice,
    grid: GridSpec,
    steps: int,
    observe: Callable[[int, State], None] | None = None,
    every: int = 0,
) -> State:
    """Advance ``steps`` leapfrog steps, calling ``observe(step, state)``
    at step 0 and every ``every`` steps (and at the end)."""
    integ = Integrator(state, gauge, grid)
    if observe is not None:
        observe(0, state)
    done = 0
    while done < steps:
        chunk = min(every, steps - done) if every else steps - done
        integ.step(chunk)
        done += chunk
        if observe is not None:
            observe(done, integ.state())
    return integ.state()
