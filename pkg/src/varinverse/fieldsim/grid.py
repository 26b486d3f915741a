"""Periodic grids and spectral differential operators.

Lattices are float64 arrays of shape ``(N, N, N)``; vector fields carry a
leading component axis, ``(3, N, N, N)``.  Derivatives are exact on the
resolved band: forward real FFT, multiplication by ``i k``, inverse FFT.

The Nyquist wavenumber is set to zero in every derivative (including the
Laplacian), so the operators are real, ``grad`` is minus the adjoint of
``div`` in the lattice inner product, and ``div grad == laplacian`` holds
to round-off.  Modes whose effective wavevector vanishes (the mean and the
Nyquist planes) are treated like the mean: they belong to the
divergence-free sector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "ConfigurationError",
    "GridSpec",
    "spectral_operator",
    "grad",
    "div",
    "curl",
    "laplacian",
    "helmholtz_project",
    "maxnorm",
    "lattice_sum",
]


class ConfigurationError(ValueError):
    """Grid parameters violate a structural or stability bound."""


STABILITY_FACTOR = 0.2


@dataclass(frozen=True)
class GridSpec:
    """A periodic cube of ``n**3`` points and a timestep.

    ``dt`` must satisfy ``dt <= 0.2*dx``; the leapfrog bound for the
    highest resolved frequency ``sqrt(3)*pi/dx`` is about ``0.367*dx``.
    """

    n: int
    dt: float
    length: float = 2 * math.pi

    def __post_init__(self):
        if self.n < 8 or self.n & (self.n - 1):
            raise ConfigurationError(f"N must be a power of two >= 8, got {self.n}")
        if not self.length > 0:
            raise ConfigurationError("box length must be positive")
        if not self.dt > 0:
            raise ConfigurationError("dt must be positive")
        if self.dt > STABILITY_FACTOR * self.dx * (1 + 1e-12):
            raise ConfigurationError(
                f"dt={self.dt:g} exceeds the stability bound {STABILITY_FACTOR}*dx={STABILITY_FACTOR * self.dx:g}"
            )

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def cell_volume(self) -> float:
        return self.dx**3

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n, self.n, self.n)

    def with_dt(self, dt: float) -> "GridSpec":
        return GridSpec(self.n, dt, self.length)

    def coordinates(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x = np.arange(self.n) * self.dx
        return tuple(np.meshgrid(x, x, x, indexing="ij"))

    @cached_property
    def wavevector(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Derivative wavenumbers on the rfft half-grid, Nyquist zeroed."""
        scale = 2 * math.pi / self.length
        full = np.fft.fftfreq(self.n, 1.0 / self.n)
        full[self.n // 2] = 0.0
        half = np.fft.rfftfreq(self.n, 1.0 / self.n)
        half[-1] = 0.0
        kx = (scale * full)[:, None, None]
        ky = (scale * full)[None, :, None]
        kz = (scale * half)[None, None, :]
        return kx, ky, kz

    @cached_property
    def k_squared(self) -> np.ndarray:
        kx, ky, kz = self.wavevector
        return kx**2 + ky**2 + kz**2

    @cached_property
    def inverse_k_squared(self) -> np.ndarray:
        k2 = self.k_squared
        out = np.zeros_like(k2)
        np.divide(1.0, k2, out=out, where=k2 > 0)
        return out

    @cached_property
    def mode_numbers(self) -> np.ndarray:
        """Integer wavenumber magnitude per rfft mode (Nyquist not zeroed)."""
        full = np.fft.fftfreq(self.n, 1.0 / self.n)
        half = np.fft.rfftfreq(self.n, 1.0 / self.n)
        return np.sqrt(full[:, None, None] ** 2 + full[None, :, None] ** 2 + half[None, None, :] ** 2)

    # transforms
    def fft(self, f: np.ndarray) -> np.ndarray:
        return np.fft.rfftn(f, axes=(-3, -2, -1))

    def ifft(self, f_hat: np.ndarray) -> np.ndarray:
        return np.fft.irfftn(f_hat, s=self.shape, axes=(-3, -2, -1))

    def check_scalar(self, f: np.ndarray) -> None:
        if np.shape(f) != self.shape:
            raise ValueError(f"expected a scalar lattice of shape {self.shape}, got {np.shape(f)}")

    def check_vector(self, v: np.ndarray) -> None:
        if np.shape(v) != (3,) + self.shape:
            raise ValueError(f"expected a vector lattice of shape {(3,) + self.shape}, got {np.shape(v)}")


# -- spectral-space kernels (shared with the integrator) --------------------


def grad_hat(grid: GridSpec, f_hat: np.ndarray) -> np.ndarray:
    return np.stack([1j * k * f_hat for k in grid.wavevector])


def div_hat(grid: GridSpec, v_hat: np.ndarray) -> np.ndarray:
    kx, ky, kz = grid.wavevector
    return 1j * (kx * v_hat[0] + ky * v_hat[1] + kz * v_hat[2])


def curl_hat(grid: GridSpec, v_hat: np.ndarray) -> np.ndarray:
    kx, ky, kz = grid.wavevector
    return 1j * np.stack([
        ky * v_hat[2] - kz * v_hat[1],
        kz * v_hat[0] - kx * v_hat[2],
        kx * v_hat[1] - ky * v_hat[0],
    ])


def wave_operator_hat(grid: GridSpec, a_hat: np.ndarray) -> np.ndarray:
    """Fourier symbol of ``laplacian(A) - grad(div(A))``: ``-|k|^2 A + k (k.A)``."""
    kx, ky, kz = grid.wavevector
    kdota = kx * a_hat[0] + ky * a_hat[1] + kz * a_hat[2]
    return np.stack([-grid.k_squared * a_hat[i] + k * kdota for i, k in enumerate((kx, ky, kz))])


# -- real-space operators -------------------------------------------------


def grad(f: np.ndarray, grid: GridSpec) -> np.ndarray:
    grid.check_scalar(f)
    return grid.ifft(grad_hat(grid, grid.fft(f)))


def div(v: np.ndarray, grid: GridSpec) -> np.ndarray:
    grid.check_vector(v)
    return grid.ifft(div_hat(grid, grid.fft(v)))


def curl(v: np.ndarray, grid: GridSpec) -> np.ndarray:
    grid.check_vector(v)
    return grid.ifft(curl_hat(grid, grid.fft(v)))


def laplacian(f: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Laplacian of a scalar lattice or, componentwise, of a vector lattice."""
    if np.shape(f) != grid.shape:
        grid.check_vector(f)
    return grid.ifft(-grid.k_squared * grid.fft(f))


_OPERATORS = {"grad": grad, "div": div, "curl": curl, "laplacian": laplacian}


def spectral_operator(f: np.ndarray, op: str, grid: GridSpec) -> np.ndarray:
    """Apply ``grad``, ``div``, ``curl`` or ``laplacian`` spectrally."""
    try:
        fn = _OPERATORS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}; expected one of {sorted(_OPERATORS)}") from None
    return fn(np.asarray(f, dtype=float), grid)


def helmholtz_project(v: np.ndarray, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Split ``v = v_div0 + grad(psi)`` with zero-mean ``psi``.

    In Fourier space ``psi_hat = -i (k.v_hat)/|k|^2`` for ``k != 0``; modes
    with vanishing effective wavevector stay in ``v_div0``.
    """
    grid.check_vector(v)
    v_hat = grid.fft(v)
    psi_hat = -div_hat(grid, v_hat) * grid.inverse_k_squared
    div0_hat = v_hat - grad_hat(grid, psi_hat)
    return grid.ifft(div0_hat), grid.ifft(psi_hat)


def project_div_free(v: np.ndarray, grid: GridSpec) -> np.ndarray:
    return helmholtz_project(v, grid)[0]


def maxnorm(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def lattice_sum(values: np.ndarray) -> float:
    """Correctly rounded sum in C (lattice-major) order."""
    return math.fsum(np.ravel(values, order="C").tolist())
