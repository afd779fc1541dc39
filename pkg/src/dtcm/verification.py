"""Self-check suites behind the ``verify`` command.

Each suite exercises one structural guarantee of the pipeline: amplitude
normalization, agreement of the two pair-map routes, agreement with the
brute-force oracle, pair-exchange symmetries of the assembled state, and
wholesale validity of reduced states over representative sweeps.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import dynamics
from .algebra import _partial_trace_array, _validate_batch
from .analysis import _PAIR_POSITIONS, Scenario, sweep_concurrence
from .concurrence import _concurrence_general_batch, _concurrence_x_batch, x_pattern_deviation
from .dynamics import BellPairSpec, BellType, FieldSpec, Model, _assemble_dtcm_grid
from .oracle import compare_pipelines

QUICK = "quick"
FULL = "full"


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    max_deviation: float
    tolerance: float
    passed: bool
    seconds: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{self.name}: max deviation {self.max_deviation:.3e} (tolerance {self.tolerance:.0e}) {status}"
        if self.detail:
            text += f" [{self.detail}]"
        return text


def _timed(name: str, tolerance: float, worker) -> SuiteResult:
    # a suite that blows up is a failed suite, not a crashed verifier
    start = time.perf_counter()
    try:
        deviation, detail = worker()
    except Exception as exc:
        elapsed = time.perf_counter() - start
        return SuiteResult(name, float("inf"), tolerance, False, elapsed, f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    return SuiteResult(name, float(deviation), tolerance, float(deviation) <= tolerance, elapsed, detail)


def suite_x_normalization() -> SuiteResult:
    """Transition amplitudes must be normalized for every start state.

    Photon numbers 0..50 against 200 seeded-random times: the squared
    amplitudes of the four flip branches must sum to one.
    """

    def worker():
        rng = np.random.default_rng(20260819)
        taus = rng.uniform(0.0, 20.0, size=200)
        ms = np.arange(51)
        X = dynamics._x_block_table(ms, taus)
        sums = (np.abs(X) ** 2).sum(axis=1)
        dev = float(np.abs(sums - 1.0).max())
        return dev, f"{ms.size} photon levels x {taus.size} times"

    return _timed("x-normalization", 1e-12, worker)


def suite_explicit_maps() -> SuiteResult:
    """The generic pair maps must match the transcribed closed forms."""

    def worker():
        fields = [
            FieldSpec.vacuum(),
            FieldSpec.fock(1),
            FieldSpec.fock(3),
            FieldSpec.thermal(1.0),
        ]
        taus = np.linspace(0.0, 25.0, 50)
        dev = 0.0
        for i in (0, 1):
            for k in (0, 1):
                for j in (0, 1):
                    for l in (0, 1):
                        for fld in fields:
                            generic = dynamics.pair_map(i, k, j, l, fld, taus)
                            explicit = dynamics.pair_map_explicit(i, k, j, l, fld, taus)
                            dev = max(dev, float(np.abs(generic - explicit).max()))
        return dev, "16 operators x 4 fields x 50 times"

    return _timed("explicit-maps", 1e-12, worker)


def _oracle_cases(level: str) -> list[tuple[Scenario, float, np.ndarray, int]]:
    if level == QUICK:
        alphas = [np.pi / 8, 3 * np.pi / 8]
        taus = np.linspace(0.0, 10.0, 10)
    else:
        alphas = [0.0, np.pi / 8, np.pi / 4, 3 * np.pi / 8]
        taus = np.linspace(0.0, 10.0, 20)
    cases = []
    for bell in (BellType.PSI, BellType.PHI):
        for fld in (FieldSpec.vacuum(), FieldSpec.fock(1)):
            for alpha in alphas:
                cases.append((Scenario(Model.DTCM, bell, fld, fld), alpha, taus, 6))
    if level == FULL:
        for bell in (BellType.PSI, BellType.PHI):
            for fld in (FieldSpec.vacuum(), FieldSpec.fock(1)):
                cases.append((Scenario(Model.DJCM, bell, fld, fld), np.pi / 8, taus, 6))
    return cases


def suite_oracle_agreement(level: str = QUICK) -> SuiteResult:
    """Analytic states and concurrences must match the brute-force route."""

    def worker():
        dev = 0.0
        cases = _oracle_cases(level)
        for scenario, alpha, taus, n_max in cases:
            report = compare_pipelines(scenario, alpha, taus, n_max=n_max)
            dev = max(dev, report.max_state_deviation, report.max_concurrence_deviation)
        return dev, f"{len(cases)} scenario/alpha combinations"

    return _timed("oracle-agreement", 1e-8, worker)


def suite_oracle_agreement_thermal() -> SuiteResult:
    """Same oracle comparison on truncated thermal fields (looser tolerance)."""

    def worker():
        taus = np.linspace(0.0, 10.0, 20)
        dev = 0.0
        count = 0
        for nbar in (0.1, 1.0):
            fld = FieldSpec.thermal(nbar)
            n_max = fld.max_photon() + 3
            for bell in (BellType.PSI, BellType.PHI):
                scenario = Scenario(Model.DTCM, bell, fld, fld)
                report = compare_pipelines(scenario, np.pi / 4, taus, n_max=n_max)
                dev = max(dev, report.max_state_deviation, report.max_concurrence_deviation)
                count += 1
        return dev, f"{count} thermal scenarios"

    return _timed("oracle-agreement-thermal", 1e-6, worker)


def suite_pair_symmetries() -> SuiteResult:
    """Exchange symmetries of the assembled state.

    The two named pairs evolve identically (C_AB = C_CD), and the cross pairs
    trade roles when the mixing angle advances by pi/2.
    """

    def worker():
        alphas = np.linspace(0.0, np.pi / 2, 20)
        taus = np.linspace(0.0, 25.0, 20)
        dev = 0.0
        same_pair_scenarios = [
            Scenario(Model.DTCM, BellType.PSI, FieldSpec.vacuum(), FieldSpec.vacuum()),
            Scenario(Model.DTCM, BellType.PHI, FieldSpec.vacuum(), FieldSpec.vacuum()),
            Scenario(Model.DTCM, BellType.PSI, FieldSpec.fock(1), FieldSpec.fock(1)),
        ]
        for scenario in same_pair_scenarios:
            ab = sweep_concurrence(scenario, "AB", alphas, taus)
            cd = sweep_concurrence(scenario, "CD", alphas, taus)
            for c_ab, c_cd in zip(ab, cd):
                dev = max(dev, float(np.abs(c_ab.values - c_cd.values).max()))
        for scenario in same_pair_scenarios[:1] + same_pair_scenarios[2:]:
            ac = sweep_concurrence(scenario, "AC", alphas, taus)
            bd = sweep_concurrence(scenario, "BD", alphas + np.pi / 2, taus)
            for c_ac, c_bd in zip(ac, bd):
                dev = max(dev, float(np.abs(c_ac.values - c_bd.values).max()))
        return dev, f"{len(same_pair_scenarios)} scenarios on a {alphas.size}x{taus.size} grid"

    return _timed("pair-symmetries", 1e-10, worker)


def suite_state_validity() -> SuiteResult:
    """Reduced states across representative sweeps must be physical.

    Hermiticity and trace at 1e-12, eigenvalue floor at -1e-9, X-pattern
    residue at 1e-10 and agreement of the two concurrence routes at 1e-9.
    The thermal member uses a tail mass small enough not to disturb the
    trace bar.  The reported deviation is the worst bar-normalized ratio.
    """

    def worker():
        alphas = np.linspace(0.05, 0.45, 9) * np.pi
        taus = np.linspace(0.0, 25.0, 251)
        scenarios = []
        for bell in (BellType.PSI, BellType.PHI):
            for fld in (FieldSpec.vacuum(), FieldSpec.fock(1), FieldSpec.thermal(1.0, 1e-13)):
                scenarios.append(Scenario(Model.DTCM, bell, fld, fld))
        worst = 0.0
        states = 0
        for scenario in scenarios:
            for alpha in alphas:
                spec = BellPairSpec(scenario.bell_type, float(alpha))
                grid = _assemble_dtcm_grid(spec, spec, scenario.field_a, scenario.field_b, taus)
                for pair in ("AB", "CD", "AC", "BD"):
                    reduced = _partial_trace_array(grid, 4, _PAIR_POSITIONS[pair])
                    report = _validate_batch(reduced)
                    c_fast = _concurrence_x_batch(reduced)
                    c_general = _concurrence_general_batch(reduced)
                    worst = max(
                        worst,
                        report.hermiticity_deviation / 1e-12,
                        report.trace_deviation / 1e-12,
                        max(0.0, -report.min_eigenvalue) / 1e-9,
                        x_pattern_deviation(reduced) / 1e-10,
                        float(np.abs(c_fast - c_general).max()) / 1e-9,
                    )
                    states += reduced.shape[0]
        return worst, f"{states} reduced states, worst bar-normalized ratio"

    return _timed("state-validity", 1.0, worker)


def run_verification(level: str = QUICK) -> list[SuiteResult]:
    """Run every suite for the requested level and return their results."""
    if level not in (QUICK, FULL):
        raise ValueError(f"level must be '{QUICK}' or '{FULL}'")
    results = [
        suite_x_normalization(),
        suite_explicit_maps(),
        suite_oracle_agreement(level),
    ]
    if level == FULL:
        results.append(suite_oracle_agreement_thermal())
    results.append(suite_pair_symmetries())
    results.append(suite_state_validity())
    return results
