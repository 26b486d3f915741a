"""Acceptance suite: twelve end-to-end criteria at their stated tolerances.

Each criterion prints exactly one line ``[criterion N] PASS|FAIL: ...``.
Run under pytest (``pytest tests/test_acceptance.py -v``) or directly
(``python3 tests/test_acceptance.py``) for the twelve-line summary.
"""

from __future__ import annotations

import io
import math
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from corpus import lagrangian_corpus, random_problem  # noqa: E402
from oracles import fode_residual_via_varcalc  # noqa: E402
from varinverse import cli  # noqa: E402
from varinverse.fieldsim import (  # noqa: E402
    ExtendedState,
    GaugeChoice,
    GridSpec,
    Integrator,
    action_stationarity,
    canonical_pair,
    energy,
    flow_preserves_form,
    gauge_compare,
    gauge_pair,
    gauss_residual,
    leapfrog_trajectory,
    mixed_pair,
    presymplectic_product,
    random_state,
    standing_wave,
    standing_wave_exact,
    symplectic_product,
)
from varinverse.fieldsim.grid import lattice_sum, maxnorm  # noqa: E402
from varinverse.jetcore import JetSpace  # noqa: E402
from varinverse.mech import (  # noqa: E402
    HypothesisError,
    PhaseChart,
    SymTwoForm,
    SymVectorField,
    contract,
    differential,
    exterior_derivative,
    fode_lagrangian,
    lie_derivative,
)
from varinverse.parser import parse_problem, render  # noqa: E402
from varinverse.varcalc import SourceForm, coordinate, euler_lagrange, helmholtz, tonti_lagrangian  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"


def dx(n):
    return 2 * math.pi / n


# -- symbolic criteria -------------------------------------------------------------


def criterion_1():
    """Master identity on 200 random Lagrangians, within 60 s."""
    start = time.perf_counter()
    corpus = lagrangian_corpus(200, seed=1)
    bad = [L for L in corpus if not all(e.is_zero() for e in helmholtz(euler_lagrange(L)).entries.values())]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed <= 60
    return ok, f"{200 - len(bad)}/200 Lagrangians give a zero Helmholtz form, {elapsed:.1f} s (limit 60 s)"


def criterion_2():
    """Wave and harmonic variational; heat not, with a first-order witness."""
    TX = JetSpace(("t", "x"), ("u",), 2)
    X = JetSpace(("x",), ("u",), 2)

    def c(space, name):
        return coordinate(space, name)

    wave = helmholtz(SourceForm(TX, (c(TX, "u_tt") - c(TX, "u_xx"),)))
    harmonic = helmholtz(SourceForm(X, (c(X, "u_xx"),)))
    heat = helmholtz(SourceForm(TX, (c(TX, "u_t") - c(TX, "u_xx"),)))
    first_order = [w for w in heat.witnesses if len(w[2]) == 1 and not heat.entries[w].is_zero()]
    ok = wave.variational and harmonic.variational and not heat.variational and bool(first_order)
    label = heat.label(first_order[0]) if first_order else "none"
    value = heat.entries[first_order[0]] if first_order else "-"
    return ok, f"wave {wave.variational}, harmonic {harmonic.variational}, heat {heat.variational} (witness {label} = {value})"


def criterion_3():
    """Tonti round trip on 100 Euler-Lagrange forms."""
    corpus = lagrangian_corpus(100, seed=3)
    good = 0
    for L in corpus:
        E = euler_lagrange(L)
        good += euler_lagrange(tonti_lagrangian(E)) == E
    return good == 100, f"{good}/100 source forms reproduced exactly"


def criterion_4():
    """First-order Lagrangian construction and the dilation counterexample."""
    QP = PhaseChart(("q", "p"))
    q, p = QP.coords()
    w = SymTwoForm(QP, {(0, 1): QP.zero() + 1})

    def field(*components):
        return SymVectorField(QP, tuple(QP.zero() + c for c in components))

    details = []
    ok = True
    for name, gamma in (("oscillator", field(p, -q)), ("translation", field(1, 0))):
        res = fode_lagrangian(gamma, w)
        checks = (
            exterior_derivative(res.B) == w,
            differential(QP, res.E) == contract(gamma, w),
            res.certified,
            all(r.is_zero() for r in fode_residual_via_varcalc(res, gamma)),
        )
        ok &= all(checks)
        details.append(f"{name} {'ok' if all(checks) else 'failed'}")
    dilation = field(q, 0)
    try:
        fode_lagrangian(dilation, w)
        rejected = False
    except HypothesisError as exc:
        rejected = exc.witness == lie_derivative(dilation, w) and not exc.witness.is_zero()
    ok &= rejected
    details.append(f"dilation {'rejected with the Lie-derivative witness' if rejected else 'NOT rejected'}")
    return ok, ", ".join(details)


# -- field criteria ------------------------------------------------------------------


def criterion_5():
    """Standing-wave accuracy at t = 1 and frequency over five periods, within 10 s."""
    start = time.perf_counter()
    grid = GridSpec(16, 1e-3)
    modes, amp = (0, 0, 1), 1.0
    s0 = standing_wave(grid, modes, amp)
    integ = Integrator(s0, GaugeChoice.zero(grid), grid)
    integ.step(1000)
    exact = standing_wave_exact(grid, modes, amp, integ.time)
    err = math.sqrt(lattice_sum((integ.state().A - exact) ** 2) / lattice_sum(exact**2))
    # zero crossings of A_x at z = L/4 where sin(kz) = 1
    k = 2 * math.pi / grid.length
    periods = 5
    steps = int(math.ceil(periods * 2 * math.pi / k / grid.dt)) + 10
    probe = Integrator(s0, GaugeChoice.zero(grid), grid)
    index = (0, 0, grid.n // 4)
    prev = probe.probe(0, index)
    crossings = []
    for m in range(1, steps + 1):
        probe.step()
        cur = probe.probe(0, index)
        if prev * cur < 0:
            crossings.append((m - 1 + prev / (prev - cur)) * grid.dt)
        prev = cur
    crossings = crossings[: 2 * periods]
    half_period = np.polyfit(np.arange(len(crossings)), crossings, 1)[0]
    freq = math.pi / half_period
    freq_err = abs(freq - k) / k
    elapsed = time.perf_counter() - start
    ok = err <= 1e-3 and freq_err <= 0.01 and elapsed <= 10
    return ok, (
        f"relative L2 error {err:.2e} (limit 1e-3), frequency {freq:.6f} vs |k| = {k:.6f} "
        f"({freq_err:.1e}, limit 1e-2), {elapsed:.1f} s (limit 10 s)"
    )


def criterion_6():
    """Gauss constraint after 10^4 steps from random divergence-free data, N = 16."""
    grid = GridSpec(16, 0.1 * dx(16))
    integ = Integrator(random_state(grid, 6, 3.0), GaugeChoice.random(grid, 6, 3.0), grid)
    integ.step(10_000)
    r = gauss_residual(integ.state(), grid)
    return r <= 1e-10, f"max|div E|/max|E| = {r:.2e} after 10^4 steps (limit 1e-10)"


def criterion_7():
    """Energy drift over 10^4 steps at dt = 0.1 dx."""
    n = 32
    grid = GridSpec(n, 0.1 * dx(n))
    s0 = standing_wave(grid, (0, 0, 1), 1.0)
    h0 = energy(s0, grid)
    integ = Integrator(s0, GaugeChoice.zero(grid), grid)
    drift = 0.0
    for _ in range(10_000 // 4):
        integ.step(4)
        drift = max(drift, abs(energy(integ.state(), grid) - h0) / h0)
    return drift <= 1e-4, f"max |H(t) - H(0)|/H(0) = {drift:.3e} over 10^4 steps, N = {n} (limit 1e-4)"


def criterion_8():
    """Every sample pairing preserved over 10^3 steps."""
    grid = GridSpec(16, 0.1 * dx(16))
    pairs = [canonical_pair(grid, 1), gauge_pair(grid, 2), mixed_pair(grid, 3)]
    base = ExtendedState.from_maxwell(random_state(grid, 4), grid)
    rep = flow_preserves_form(base, GaugeChoice.random(grid, 5), pairs, 1000, grid)
    drifts = ", ".join(f"{r['label']} {r['drift']:.1e}" for r in rep["pairs"])
    return rep["max_drift"] <= 1e-10, f"relative drift {drifts} (limit 1e-10)"


def criterion_9():
    """Gauge-free perturbations pair exactly as under the base form."""
    grid = GridSpec(16, 0.1 * dx(16))
    z = np.zeros(grid.shape)
    exact = 0
    for seed in range(20):
        m = mixed_pair(grid, seed)
        d1 = ExtendedState(m.first.a_tilde, m.first.E, z, z)
        d2 = ExtendedState(m.second.a_tilde, m.second.E, z, z)
        exact += symplectic_product(d1, d2, grid) == presymplectic_product(d1, d2, grid)
    return exact == 20, f"{exact}/20 random pairs bit-identical"


def criterion_10():
    """Observables agree across gauges over 10^3 steps; A differs by a gradient."""
    grid = GridSpec(16, 0.1 * dx(16))
    rep = gauge_compare(random_state(grid, 10), GaugeChoice.zero(grid), GaugeChoice.random(grid, 7, 3.0), 1000, grid)
    ok = rep.relative_e <= 1e-9 and rep.relative_b <= 1e-9 and rep.relative_div_free <= 1e-10
    return ok, (
        f"E {rep.relative_e:.1e}, B {rep.relative_b:.1e} (limit 1e-9 x field scale), "
        f"divergence-free part of A difference {rep.relative_div_free:.1e} (limit 1e-10)"
    )


def criterion_11():
    """Second-order stationarity of the discrete action; exact gauge-sector equations."""
    grid = GridSpec(16, 0.02)
    gauge = GaugeChoice.random(grid, 7, 3.0)
    s0 = ExtendedState.from_maxwell(standing_wave(grid, (0, 0, 1), 1.0), grid, mu=gauge.phi * 0.5)
    reports = []
    gauge_ok = True
    for halving in range(3):
        g = grid.with_dt(grid.dt / 2**halving)
        traj = leapfrog_trajectory(s0, gauge, g, round(0.4 / g.dt))
        rep = action_stationarity(traj, gauge, g)
        reports.append(rep)
        scale = maxnorm(gauge.phi) * max(1.0, maxnorm(g.k_squared))
        psi_rate = max(maxnorm((b.psi - a.psi) / g.dt - gauge.phi) for a, b in zip(traj, traj[1:]))
        mu_fixed = all(np.array_equal(s.mu, s0.mu) for s in traj)
        gauge_ok &= rep.mu_variation <= 1e-10 * scale and rep.psi_variation <= 1e-10 * scale
        gauge_ok &= psi_rate <= 1e-10 * maxnorm(gauge.phi) and mu_fixed
    ratios = [a.residual / b.residual for a, b in zip(reports, reports[1:])]
    ok = all(3.5 <= r <= 4.5 for r in ratios) and gauge_ok
    return ok, (
        f"residual ratios {', '.join(f'{r:.2f}' for r in ratios)} (range [3.5, 4.5]); "
        f"psi' = phi and mu' = 0 {'recovered' if gauge_ok else 'NOT recovered'}"
    )


# -- parser and CLI ---------------------------------------------------------------------


GOLDEN_RUNS = (
    (("varcheck", "wave.vp", "--json"), "varcheck_wave_json.out", "out", 0),
    (("varcheck", "heat.vp"), "varcheck_heat.out", "out", 0),
    (("el", "bad.vp"), "el_bad.err", "err", 2),
)


def criterion_12():
    """Parser round trip on 100 random problem files; three golden invocations."""
    rng = random.Random(12)
    trips = 0
    for _ in range(100):
        p = random_problem(rng)
        trips += parse_problem(render(p)) == p
    import os

    here = os.getcwd()
    os.chdir(ROOT / "problems")
    try:
        goldens = 0
        for argv, name, stream, code in GOLDEN_RUNS:
            out, err = io.StringIO(), io.StringIO()
            rc = cli.main(list(argv), out=out, err=err)
            text = out.getvalue() if stream == "out" else err.getvalue()
            goldens += rc == code and text == (GOLDEN / name).read_text()
    finally:
        os.chdir(here)
    return trips == 100 and goldens == 3, f"{trips}/100 round trips, {goldens}/3 golden outputs byte-identical"


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12,
]


def run_criterion(number: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[number - 1]()
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}"
    return bool(ok), line


@pytest.mark.parametrize("number", range(1, 13))
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(i) for i in range(1, 13)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
