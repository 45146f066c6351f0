"""End-to-end acceptance checks, runnable from the CLI and the test suite.

Each check pins its tolerances here; nothing is deferred to calibration.
The checks either verify exact identities, run theorems as tests (which
must never fail), or compare desk-scale measurements against stated
asymptotic bands.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

import numpy as np

from . import boundary, sequences, series, tauberian, twinprime
from .extnum import ExtendedNonnegative

RANDOM_SEED = 12345


@dataclass(frozen=True)
class CheckResult:
    key: str
    description: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.key}: {self.description} | {self.detail} ({self.seconds:.2f}s)"


def _result(key, description, start, passed, detail) -> CheckResult:
    return CheckResult(key, description, bool(passed), detail, time.perf_counter() - start)


# -- acceptance criteria ---------------------------------------------------


def check_pair_constant() -> CheckResult:
    t0 = time.perf_counter()
    c2 = twinprime.twin_prime_constant(10 ** 6)
    elapsed = time.perf_counter() - t0
    err = abs(c2.value - 0.6601618)
    ok = err <= 5e-7 and elapsed < 5.0
    return _result("criterion-1", "pair constant at P=10^6 within 5e-7 of 0.6601618",
                   t0, ok, f"C2={c2.value:.9f} err={err:.2e} runtime={elapsed:.2f}s")


def check_sharpness() -> CheckResult:
    t0 = time.perf_counter()
    worst_lo, worst_hi = math.inf, -math.inf
    all_hold = True
    for k in range(1, 7):
        rep = tauberian.sharpness_check(k)
        all_hold &= rep.holds and rep.exact
        worst_lo = min(worst_lo, rep.ratio)
        worst_hi = max(worst_hi, rep.ratio)
    elapsed = time.perf_counter() - t0
    ok = all_hold and 1.0 <= worst_lo and worst_hi <= 1.2 and elapsed < 1.0
    return _result("criterion-2", "lower-bound witness exact for k=1..6, ratio in [1, 1.2]",
                   t0, ok, f"ratio range [{worst_lo:.6f}, {worst_hi:.6f}]")


def check_real_condition() -> CheckResult:
    t0 = time.perf_counter()
    majorant = 1.0 / math.log(2.0) ** 2 + 2.0 ** (-1.0 / math.log(2.0)) / math.log(2.0)
    lo, hi = math.inf, -math.inf
    ok = True
    for j in range(1, 21):
        value, _, _ = sequences.counterexample_delta_f(2.0 ** -j, rel_tail=1e-18)
        lo, hi = min(lo, value), max(hi, value)
        ok &= 0.3 <= value <= 2.7 and value <= majorant
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    return _result("criterion-3", "delta*f(1+delta) in [0.3, 2.7] under the integral majorant",
                   t0, ok, f"range [{lo:.4f}, {hi:.4f}] majorant {majorant:.4f}")


def random_nonneg_sequence(rng, horizon: int) -> sequences.CoefficientSequence:
    """A varied nonnegative test sequence: mixed scales and sparsity."""
    style = rng.integers(0, 4)
    if style == 0:
        values = rng.uniform(0.0, 10.0 ** rng.integers(-3, 4), horizon)
    elif style == 1:
        values = rng.exponential(1.0, horizon)
    elif style == 2:
        values = rng.uniform(0.0, 1.0, horizon)
        values[rng.uniform(0.0, 1.0, horizon) < 0.95] = 0.0
        values *= 10.0 ** rng.integers(0, 6)
    else:
        values = rng.pareto(1.5, horizon)
    return sequences.CoefficientSequence(horizon=horizon, dense=values, rule="random")


def check_bound_chain() -> CheckResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(RANDOM_SEED)
    failures = 0
    total = 0
    ns = (100, 1000, 10000)
    gens = [sequences.ones(10 ** 4), sequences.von_mangoldt(10 ** 4),
            sequences.twin_weights(10 ** 4), sequences.counterexample(4)]
    for seq in gens:
        for n in ns:
            total += 1
            failures += not tauberian.log_bound_check(seq, n).holds
    for _ in range(100):
        seq = random_nonneg_sequence(rng, 10 ** 4)
        for n in ns:
            total += 1
            failures += not tauberian.log_bound_check(seq, n).holds
    ok = failures == 0
    return _result("criterion-4", "order-log chain holds on generators + 100 random sequences",
                   t0, ok, f"{total} checks, {failures} failures")


def check_identities() -> CheckResult:
    t0 = time.perf_counter()
    gens = [sequences.ones(10 ** 4), sequences.von_mangoldt(10 ** 4),
            sequences.twin_weights(10 ** 4), sequences.counterexample(3)]
    worst = 0.0
    for seq in gens:
        for x in np.linspace(1.01, 3.0, 5):
            for y in np.linspace(-20.0, 20.0, 5):
                z = complex(x, y)
                q = series.eval_q(seq, z).value
                scale = abs(q) + 1e-300
                worst = max(worst,
                            abs(q - series.abel_rhs(seq, z)) / scale,
                            abs(q - series.laplace_q(seq, z)) / scale)
    ok = worst <= 1e-11
    return _result("criterion-5", "three-way transform identity within 1e-11 relative",
                   t0, ok, f"worst relative mismatch {worst:.2e}")


def check_pole_bound() -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    all_hold = True
    cases = []
    for seq, dy in ((sequences.ones(10 ** 5), 0.2),
                    (sequences.twin_weights(10 ** 5), 0.2)):
        xs, ns = boundary.coupled_levels(seq.horizon, 4)
        grid = boundary.scan(seq, dy=dy, x_levels=xs, level_horizons=ns)
        rep = boundary.pole_bound_check(seq, grid)
        cases.append((seq.rule, rep))
    cex = sequences.counterexample(6)
    xs, ns = boundary.coupled_levels(cex.horizon, 4)
    grid = boundary.scan(cex, dy=0.05, x_levels=xs, level_horizons=ns)
    cases.append((cex.rule, boundary.pole_bound_check(cex, grid)))
    for _, rep in cases:
        worst = max(worst, rep.worst_ratio)
        all_hold &= rep.holds
    ok = all_hold and worst <= 1.0 + 1e-10
    return _result("criterion-6", "first-order pole bound on coupled grids",
                   t0, ok, f"worst ratio {worst:.12f}")


# boundary-contrast parameters: the band must reach the witness line at
# ln(10^6) B/pi ~ 132 while the last truncation line stays beyond m_max
CONTRAST_B = 30.0
CONTRAST_M = 128
CONTRAST_DY = CONTRAST_B / 512.0
CONTRAST_LEVELS = 3
CONTRAST_HORIZON = 10 ** 6


def run_contrast():
    """The four classification runs of the boundary-contrast criterion."""
    xs, ns = boundary.coupled_levels(CONTRAST_HORIZON, CONTRAST_LEVELS)
    ones_seq = sequences.ones(CONTRAST_HORIZON)
    grids = boundary.scan_fields(ones_seq, CONTRAST_B, CONTRAST_DY, xs, ns,
                                 fields=("quotient", "pole_removed"))
    diag_ones = boundary.window_coeffs(grids["quotient"], CONTRAST_M)
    diag_pole_removed = boundary.window_coeffs(grids["pole_removed"], CONTRAST_M)
    cex_grid = boundary.scan(sequences.counterexample(6), CONTRAST_B, CONTRAST_DY, xs, ns)
    diag_cex = boundary.window_coeffs(cex_grid, CONTRAST_M)
    heav = boundary.injected_grid(boundary.heaviside_field, CONTRAST_B, CONTRAST_DY, xs, ns)
    diag_heav = boundary.window_coeffs(heav, CONTRAST_M)
    return diag_ones, diag_cex, diag_heav, diag_pole_removed


def check_boundary_contrast() -> CheckResult:
    t0 = time.perf_counter()
    diag_ones, diag_cex, diag_heav, diag_pole_removed = run_contrast()
    last3 = lambda d: d.sup_per_level[list(d.levels_used)]
    ones_sup = last3(diag_ones)
    drift = (ones_sup[1] / ones_sup[0], ones_sup[2] / ones_sup[0])
    cex_sup = last3(diag_cex)
    growth = cex_sup[2] / cex_sup[0]
    elapsed = time.perf_counter() - t0
    ok = (diag_ones.classification == "bounded"
          and all(0.5 <= d <= 1.5 for d in drift)
          and diag_cex.classification == "growing" and growth >= 2.0
          and diag_heav.classification == "bounded"
          and diag_pole_removed.classification == "decaying"
          and elapsed < 60.0)
    detail = (f"ones drift {drift[0]:.2f}/{drift[1]:.2f} [{diag_ones.classification}], "
              f"witness growth {growth:.2f} [{diag_cex.classification}], "
              f"step-model [{diag_heav.classification}], "
              f"pole-removed [{diag_pole_removed.classification}], {elapsed:.1f}s")
    return _result("criterion-7", "boundary contrast classifications on coupled schedules",
                   t0, ok, detail)


def check_hardy_littlewood() -> CheckResult:
    t0 = time.perf_counter()
    rep = twinprime.report(10 ** 6, 10 ** 6)
    elapsed = time.perf_counter() - t0
    ok = 0.98 < rep.ratio_pi < 1.02 and 0.95 < rep.ratio_psi < 1.05 and elapsed < 10.0
    return _result("criterion-8", "pair-count ratios at N=10^6 inside the stated bands",
                   t0, ok, f"ratio_pi={rep.ratio_pi:.4f} ratio_psi={rep.ratio_psi:.4f}")


def check_window_oracle() -> CheckResult:
    t0 = time.perf_counter()
    seq = sequences.ones(1000)
    worst = 0.0
    for x in (1.5, 1.2):
        grid = boundary.scan(seq, x_levels=[x])
        diag = boundary.window_coeffs(grid, m_max=8)
        oracle = boundary.WindowCoeffOracle(seq, x)
        for m in range(-8, 9):
            direct = diag.coefficient(0, m)
            ref = oracle.coefficient(m)
            worst = max(worst, abs(direct - ref) / abs(direct))
    ok = worst <= 1e-5
    return _result("criterion-9", "windowed-coefficient oracle agreement within 1e-5",
                   t0, ok, f"worst relative difference {worst:.2e}")


# -- invariant spot checks --------------------------------------------------


def check_extnum_order() -> CheckResult:
    t0 = time.perf_counter()
    rng = random.Random(RANDOM_SEED)
    inversions = 0
    for _ in range(10 ** 4):
        a = rng.getrandbits(rng.randint(1, 120)) + 1
        b = rng.getrandbits(rng.randint(1, 120)) + 1
        la, lb = ExtendedNonnegative(a).log2, ExtendedNonnegative(b).log2
        if (a < b and la > lb) or (a > b and la < lb):
            inversions += 1
    return _result("invariant-extnum-order", "log2 view preserves order on 10^4 random pairs",
                   t0, inversions == 0, f"{inversions} inversions")


def check_vonmangoldt_primes() -> CheckResult:
    t0 = time.perf_counter()
    lam = sequences.von_mangoldt(10 ** 4).dense
    worst = 0.0
    for n in range(2, 10 ** 4 + 1):
        if all(n % d for d in range(2, math.isqrt(n) + 1)):  # trial division
            worst = max(worst, abs(lam[n - 1] - math.log(n)))
    return _result("invariant-weights-at-primes", "prime entries equal log p against trial division",
                   t0, worst < 1e-15, f"worst |diff| {worst:.1e}")


def check_witness_identity() -> CheckResult:
    t0 = time.perf_counter()
    seq = sequences.counterexample(6)
    ok = True
    for k, e in enumerate(seq.sparse, 1):
        n_log2 = e.log2_index
        ok &= e.value.log2 == n_log2 + math.log2(n_log2)  # a = n log2(n) exactly
        if e.index is not None and e.value.is_exact:
            ok &= e.value.exact_value == e.index * (1 << k)
    return _result("invariant-witness-identity", "witness values equal n*log2(n) exactly",
                   t0, ok, "exact through k=6")


def check_real_coeffs() -> CheckResult:
    """Symmetry invariant: grids of real-coefficient sequences are
    conjugate-symmetric in y, hence every windowed coefficient is real."""
    t0 = time.perf_counter()
    seq = sequences.twin_weights(2000)
    grid = boundary.scan(seq, dy=0.2, x_levels=[1.5, 1.2, 1.1])
    diag = boundary.window_coeffs(grid, m_max=16)
    scale = 1.0 + float(np.max(np.abs(diag.coefficients)))
    worst = float(np.max(np.abs(diag.coefficients.imag))) / scale
    sym = grid.conjugate_symmetry_defect()
    ok = worst <= 1e-12 and sym <= 1e-12 * (1 + float(np.max(np.abs(grid.values))))
    return _result("invariant-real-coeffs", "conjugate-symmetric grid, real windowed coefficients",
                   t0, ok, f"imag defect {worst:.1e}, grid defect {sym:.1e}")


def check_step_sup_matches_table() -> CheckResult:
    t0 = time.perf_counter()
    seq = sequences.counterexample(5)
    cps = [c for c in tauberian.default_checkpoints(seq.horizon)]
    table = tauberian.partial_sums(seq, cps)
    sup_t = max(tauberian.S_of_t(seq, math.log(c)).value for c in cps)
    ok = abs(sup_t - table.final_sup) <= 1e-12 * max(1.0, table.final_sup)
    return _result("invariant-step-sup", "sup of the step view equals the table sup at checkpoints",
                   t0, ok, f"|{sup_t:.6f} - {table.final_sup:.6f}|")


ACCEPTANCE_CHECKS = [
    check_pair_constant,
    check_sharpness,
    check_real_condition,
    check_bound_chain,
    check_identities,
    check_pole_bound,
    check_boundary_contrast,
    check_hardy_littlewood,
    check_window_oracle,
]

INVARIANT_CHECKS = [
    check_extnum_order,
    check_vonmangoldt_primes,
    check_witness_identity,
    check_real_coeffs,
    check_step_sup_matches_table,
]


def run_selftest(printer=print) -> bool:
    """Run every acceptance criterion and invariant check; True iff all pass."""
    all_ok = True
    for fn in ACCEPTANCE_CHECKS + INVARIANT_CHECKS:
        res = fn()
        printer(res.line())
        all_ok &= res.passed
    return all_ok
