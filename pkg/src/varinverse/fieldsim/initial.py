"""Initial data, gauge specifiers and state snapshots.

Specifier strings::

    standing-wave:kx,ky,kz,amp    single divergence-free mode, E = 0
    random:seed,cutoff            band-limited divergence-free A and E
    file:<path>                   snapshot written by save_snapshot

Snapshots are a one-line JSON header followed by the raw little-endian
float64 lattices in the order listed under ``"fields"``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .dynamics import ExtendedState, GaugeChoice, MaxwellState, project_gauss
from .grid import GridSpec, helmholtz_project

__all__ = [
    "band_limited_scalar",
    "band_limited_div_free",
    "standing_wave",
    "random_state",
    "parse_initial",
    "parse_gauge",
    "save_snapshot",
    "load_snapshot",
]

SNAPSHOT_VERSION = 1


def _band_filter(grid: GridSpec, cutoff: float) -> np.ndarray:
    keep = grid.mode_numbers <= cutoff
    keep[0, 0, 0] = False
    return keep


def band_limited_scalar(grid: GridSpec, rng: np.random.Generator, cutoff: float) -> np.ndarray:
    """Zero-mean smooth random lattice with modes ``|n| <= cutoff``."""
    raw = rng.standard_normal(grid.shape)
    f_hat = grid.fft(raw) * _band_filter(grid, cutoff)
    f = grid.ifft(f_hat)
    scale = np.max(np.abs(f))
    return f / scale if scale else f


def band_limited_div_free(grid: GridSpec, rng: np.random.Generator, cutoff: float) -> np.ndarray:
    """Divergence-free, zero-mean random vector lattice, unit max-norm."""
    raw = rng.standard_normal((3,) + grid.shape)
    v = grid.ifft(grid.fft(raw) * _band_filter(grid, cutoff))
    v, _ = helmholtz_project(v, grid)
    scale = np.max(np.abs(v))
    return v / scale if scale else v


def polarization(k: np.ndarray) -> np.ndarray:
    """Unit vector orthogonal to ``k``; ``x`` for ``k`` along ``z``."""
    if k[0] == 0 and k[1] == 0:
        return np.array([1.0, 0.0, 0.0])
    e = np.cross(k, [0.0, 0.0, 1.0])
    return e / np.linalg.norm(e)


def standing_wave(grid: GridSpec, modes=(0, 0, 1), amplitude: float = 1.0) -> MaxwellState:
    """``A = amp * e * sin(k.x)``, ``E = 0`` with ``k = 2 pi/L * modes``."""
    k = 2 * math.pi / grid.length * np.asarray(modes, dtype=float)
    if not np.any(k):
        raise ValueError("standing wave needs a nonzero mode")
    X = grid.coordinates()
    phase = k[0] * X[0] + k[1] * X[1] + k[2] * X[2]
    e = polarization(k)
    A = amplitude * e[:, None, None, None] * np.sin(phase)[None]
    return MaxwellState(A, np.zeros_like(A))


def standing_wave_exact(grid: GridSpec, modes, amplitude: float, t: float) -> np.ndarray:
    """Continuum solution ``A(x, t) = amp * e * sin(k.x) cos(|k| t)``."""
    k = 2 * math.pi / grid.length * np.asarray(modes, dtype=float)
    return standing_wave(grid, modes, amplitude).A * math.cos(np.linalg.norm(k) * t)


def random_state(grid: GridSpec, seed: int, cutoff: float = 3.0) -> MaxwellState:
    rng = np.random.default_rng(seed)
    A = band_limited_div_free(grid, rng, cutoff)
    E = band_limited_div_free(grid, rng, cutoff)
    return MaxwellState(A, E)


def _numbers(spec: str, count: int, what: str) -> list[float]:
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) != count:
        raise ValueError(f"{what} expects {count} comma-separated values, got {spec!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"{what}: non-numeric value in {spec!r}") from None


def parse_initial(spec: str, grid: GridSpec) -> MaxwellState | ExtendedState:
    """Build an initial state from a specifier string."""
    kind, _, rest = spec.partition(":")
    if kind == "standing-wave":
        kx, ky, kz, amp = _numbers(rest, 4, "standing-wave")
        if any(v != int(v) for v in (kx, ky, kz)):
            raise ValueError("standing-wave mode numbers must be integers")
        return standing_wave(grid, (int(kx), int(ky), int(kz)), amp)
    if kind == "random":
        seed, cutoff = _numbers(rest, 2, "random")
        return random_state(grid, int(seed), cutoff)
    if kind == "file":
        state, _ = load_snapshot(rest, grid)
        return project_gauss(state, grid)
    raise ValueError(f"unknown initial-condition specifier {spec!r}")


def parse_gauge(spec: str, grid: GridSpec) -> GaugeChoice:
    """``zero``, ``random:seed,cutoff`` or ``file:<path>`` (snapshot field ``phi``)."""
    if spec == "zero":
        return GaugeChoice.zero(grid)
    kind, _, rest = spec.partition(":")
    if kind == "random":
        seed, cutoff = _numbers(rest, 2, "random gauge")
        return GaugeChoice.random(grid, int(seed), cutoff)
    if kind == "file":
        header, fields = _read_snapshot(rest)
        if "phi" not in fields:
            raise ValueError(f"{rest}: snapshot has no 'phi' field")
        phi = fields["phi"]
        return GaugeChoice(phi - phi.mean(), f"file:{rest}")
    raise ValueError(f"unknown gauge specifier {spec!r}")


_FIELD_SHAPES = {"A": 3, "E": 3, "a_tilde": 3, "psi": 1, "mu": 1, "phi": 1}


def save_snapshot(path, grid: GridSpec, **fields: np.ndarray) -> None:
    """Write lattices with a JSON header; e.g. ``save_snapshot(p, grid, A=..., E=...)``."""
    names = list(fields)
    for name in names:
        if name not in _FIELD_SHAPES:
            raise ValueError(f"unknown snapshot field {name!r}")
    header = {
        "format": "varinverse-lattice",
        "version": SNAPSHOT_VERSION,
        "N": grid.n,
        "L": grid.length,
        "dt": grid.dt,
        "fields": names,
        "dtype": "float64",
        "byte_order": "little",
    }
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode() + b"\n")
        for name in names:
            fh.write(np.ascontiguousarray(fields[name], dtype="<f8").tobytes())


def _read_snapshot(path) -> tuple[dict, dict[str, np.ndarray]]:
    data = Path(path).read_bytes()
    line, _, body = data.partition(b"\n")
    header = json.loads(line)
    n = int(header["N"])
    arr = np.frombuffer(body, dtype="<f8")
    out = {}
    offset = 0
    for name in header["fields"]:
        size = _FIELD_SHAPES[name] * n**3
        chunk = arr[offset : offset + size]
        if chunk.size != size:
            raise ValueError(f"{path}: truncated snapshot (field {name!r})")
        shape = (n, n, n) if _FIELD_SHAPES[name] == 1 else (3, n, n, n)
        out[name] = chunk.reshape(shape).astype(float)
        offset += size
    return header, out


def load_snapshot(path, grid: GridSpec | None = None) -> tuple[MaxwellState | ExtendedState, dict]:
    """Read a snapshot; returns the state and its header."""
    header, fields = _read_snapshot(path)
    if grid is not None and (header["N"] != grid.n or not math.isclose(header["L"], grid.length)):
        raise ValueError(f"{path}: snapshot grid N={header['N']}, L={header['L']} does not match")
    if "a_tilde" in fields:
        state = ExtendedState(fields["a_tilde"], fields["E"], fields["psi"], fields["mu"])
    else:
        state = MaxwellState(fields["A"], fields["E"])
    return state, header
