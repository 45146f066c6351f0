"""Boundary-line scans and windowed Fourier diagnostics.

The quotient f(x+iy)/z is sampled on grids with x approaching 1 from the
right.  How close x may get is coupled to the truncation horizon in use:
below x - 1 = 1/ln(N) the finite Dirichlet polynomial no longer resembles
the series it truncates, so levels violating the coupling are computed but
flagged.  Windowed Fourier coefficients of each level then probe the
boundary object: uniformly bounded coefficients point to a bounded
normalized partial sum, coefficients that die off in the Fourier index to
a removable (pseudofunction-like) boundary part, and coefficient growth
between coupled levels to unbounded normalized sums.

Any finite-data classification is a heuristic; results carry the label and
the measured sups so callers can judge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError, SamplingError, TermOverflowError
from .sequences import CoefficientSequence
from .series import ln_table

_LOG2 = math.log(2.0)
_LOG2_DOUBLE_MAX = 1023.9

DEFAULT_B = 30.0
DEFAULT_M = 64

# y-steps per restart of the phase recurrence; keeps drift under ~256 eps
_CHUNK = 256


def default_dy(horizon_log: float, b: float = DEFAULT_B) -> float:
    """min(pi / ln N, B / 2048): Nyquist for e^(-iy ln n), amply resolved."""
    return min(math.pi / horizon_log, b / 2048.0)


def hann_window(y: np.ndarray, b: float) -> np.ndarray:
    """cos^2(pi y / 2B) on [-B, B]; vanishes with its slope at the edges."""
    return np.cos(np.pi * y / (2.0 * b)) ** 2


def hann_transform(nu, b: float):
    """Closed-form transform int_{-B}^{B} w(y) e^{i nu y} dy of the window.

    Equals pi^2 sin(B nu) / (nu (pi^2 - B^2 nu^2)), with removable points
    at nu = 0 (value B) and nu = +-pi/B (value B/2).
    """
    nu = np.asarray(nu, dtype=np.float64)
    out = np.empty_like(nu)
    near_zero = np.abs(nu) * b < 1e-7
    near_edge = np.abs(np.abs(nu) - math.pi / b) * b < 1e-7
    regular = ~(near_zero | near_edge)
    v = nu[regular]
    out[regular] = math.pi ** 2 * np.sin(b * v) / (v * (math.pi ** 2 - b ** 2 * v ** 2))
    out[near_zero] = b
    out[near_edge] = b / 2.0
    return out if out.ndim else float(out)


# -- grids ----------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryGrid:
    """Samples of a boundary field over (x-level, y) with coupling flags."""

    x_levels: tuple           # strictly decreasing, all > 1
    y: np.ndarray             # symmetric uniform grid on [-B, B]
    values: np.ndarray        # complex, shape (len(x_levels), len(y))
    b: float
    horizon: int | None
    log2_horizon: float
    level_horizons: tuple     # truncation horizon used at each level
    coupling_ok: tuple        # x - 1 >= 1/ln(level horizon)
    field: str                # "quotient" | "pole_removed" | "injected"

    @property
    def dy(self) -> float:
        return float(self.y[1] - self.y[0])

    def conjugate_symmetry_defect(self) -> float:
        """max |v(x,-y) - conj(v(x,y))| over the grid (0 for real inputs)."""
        flipped = self.values[:, ::-1]
        return float(np.max(np.abs(flipped - np.conj(self.values))))


def _y_grid(b: float, dy: float) -> np.ndarray:
    if b <= 0:
        raise DomainError("window half-width B must be positive")
    if dy <= 0:
        raise DomainError("y step must be positive")
    half = max(1, int(round(b / dy)))
    return np.linspace(-b, b, 2 * half + 1)


def _check_levels(x_levels) -> tuple:
    xs = tuple(float(x) for x in x_levels)
    if not xs:
        raise DomainError("at least one x-level required")
    if any(x <= 1.0 for x in xs):
        raise DomainError("all x-levels must exceed 1")
    if any(b >= a for a, b in zip(xs, xs[1:])):
        raise DomainError("x-levels must be strictly decreasing")
    return xs


def coupled_levels(horizon: int, count: int):
    """count levels with x_j - 1 = 1/ln(N_j), N_j = horizon^(j/count).

    Encodes the operating envelope as a preset: each level's closeness to
    the boundary matches the truncation horizon used there.
    """
    horizon = int(horizon)
    if count < 1:
        raise DomainError("level count must be >= 1")
    if horizon < 10:
        raise DomainError("coupled schedules need horizon >= 10")
    ns, xs = [], []
    for j in range(1, count + 1):
        n_j = max(3, int(round(horizon ** (j / count))))
        n_j = min(n_j, horizon)
        ns.append(n_j)
        xs.append(1.0 + 1.0 / math.log(n_j))
    return xs, ns


def _f_row_dense(seq: CoefficientSequence, x: float, y: np.ndarray) -> np.ndarray:
    """f_N(x + iy) over a uniform y grid via a chunked phase recurrence."""
    support = np.nonzero(seq.dense)[0]
    out = np.zeros(len(y), dtype=np.complex128)
    if len(support) == 0:
        return out
    t = ln_table(seq.horizon)[support]
    amp = seq.dense[support] * np.exp(-x * t)
    dy = y[1] - y[0] if len(y) > 1 else 0.0
    step = np.exp(-1j * dy * t)
    for start in range(0, len(y), _CHUNK):
        u = amp * np.exp(-1j * y[start] * t)
        stop = min(start + _CHUNK, len(y))
        for j in range(start, stop):
            out[j] = u.sum()
            if j + 1 < stop:
                u *= step
    return out


def _f_row_sparse(seq: CoefficientSequence, x: float, y: np.ndarray) -> np.ndarray:
    out = np.zeros(len(y), dtype=np.complex128)
    for e in seq.sparse:
        a_log2 = e.value.log2
        if a_log2 == float("-inf"):
            continue
        mag_log2 = a_log2 - x * e.log2_index
        if mag_log2 > _LOG2_DOUBLE_MAX:
            raise TermOverflowError(
                f"term at log2(n)={e.log2_index:g} exceeds the double range")
        out += (2.0 ** mag_log2) * np.exp(-1j * y * (e.log2_index * _LOG2))
    return out


def _check_sampling(dy: float, log_horizon: float) -> None:
    limit = math.pi / log_horizon
    if dy > limit * (1.0 + 1e-12):
        raise SamplingError(
            f"y step {dy:g} too coarse for horizon (need <= pi/ln(N) = {limit:g})")


def scan(seq: CoefficientSequence, b: float = DEFAULT_B, dy: float | None = None,
         x_levels=None, level_horizons=None, field: str = "quotient") -> BoundaryGrid:
    """Evaluate the chosen boundary field on an (x-level, y) grid.

    field "quotient" gives f/z; "pole_removed" gives f - 1/(z-1) (the
    difference whose boundary behavior distinguishes convergent normalized
    sums).  level_horizons, when given, truncates the sequence per level;
    coupling flags are computed against the horizon actually used.
    """
    return _scan_fields(seq, b, dy, x_levels, level_horizons, (field,))[field]


def scan_fields(seq: CoefficientSequence, b: float = DEFAULT_B, dy: float | None = None,
                x_levels=None, level_horizons=None, fields=("quotient",)):
    """Like scan, but computes several fields from one pass over the terms."""
    return _scan_fields(seq, b, dy, x_levels, level_horizons, tuple(fields))


def _scan_fields(seq, b, dy, x_levels, level_horizons, fields):
    for f in fields:
        if f not in ("quotient", "pole_removed"):
            raise ValueError(f"unknown field {f!r}")
    if x_levels is None:
        raise DomainError("x_levels required (or use coupled_levels)")
    xs = _check_levels(x_levels)
    if level_horizons is None:
        horizons = [None] * len(xs)
    else:
        horizons = list(level_horizons)
        if len(horizons) != len(xs):
            raise DomainError("level_horizons must match x_levels")
    if dy is None:
        dy = default_dy(seq.log_horizon(), b)
    y = _y_grid(b, dy)
    _check_sampling(float(y[1] - y[0]), seq.log_horizon())

    rows = {f: np.empty((len(xs), len(y)), dtype=np.complex128) for f in fields}
    used = []
    ok = []
    for i, x in enumerate(xs):
        trunc = seq if horizons[i] is None else seq.truncated(horizons[i])
        log_h = trunc.log_horizon()
        used.append(trunc.horizon if trunc.horizon is not None else 2.0 ** trunc.log2_horizon)
        ok.append(x - 1.0 >= (1.0 - 1e-12) / log_h if log_h > 0 else True)
        f_row = (_f_row_dense if trunc.dense is not None else _f_row_sparse)(trunc, x, y)
        z = x + 1j * y
        for f in fields:
            rows[f][i] = f_row / z if f == "quotient" else f_row - 1.0 / (z - 1.0)
    return {
        f: BoundaryGrid(xs, y, rows[f], float(b), seq.horizon, seq.log2_horizon,
                        tuple(used), tuple(ok), f)
        for f in fields
    }


def injected_grid(field_fn, b: float, dy: float, x_levels, level_horizons=None,
                  coupling_ok=None) -> BoundaryGrid:
    """Build a grid from a closed-form field (x, y array) -> complex array.

    Used for reference objects such as the boundary transform of the unit
    step, 1/((x-1) + iy), and for pole-removed comparisons.
    """
    xs = _check_levels(x_levels)
    y = _y_grid(b, dy)
    values = np.empty((len(xs), len(y)), dtype=np.complex128)
    for i, x in enumerate(xs):
        values[i] = field_fn(x, y)
    if level_horizons is None:
        used = tuple(float("nan") for _ in xs)
        ok = tuple(True for _ in xs) if coupling_ok is None else tuple(coupling_ok)
    else:
        used = tuple(level_horizons)
        ok = tuple(x - 1.0 >= (1.0 - 1e-12) / math.log(n) for x, n in zip(xs, used)) \
            if coupling_ok is None else tuple(coupling_ok)
    return BoundaryGrid(xs, y, values, float(b), None, float("nan"), used, ok, "injected")


def heaviside_field(x: float, y: np.ndarray) -> np.ndarray:
    """Boundary model with a single first-order pole: 1/((x-1) + iy)."""
    return 1.0 / ((x - 1.0) + 1j * y)


# -- windowed Fourier diagnostics ----------------------------------------


@dataclass(frozen=True)
class FourierDiagnostic:
    """Windowed local Fourier coefficients per x-level plus a trend label.

    For real-coefficient sequences the grid is conjugate-symmetric in y,
    which makes every c_m real (the spectrum is one-sided in m, so the
    magnitudes are not symmetric between m and -m).
    """

    b: float
    window: str
    m_max: int
    center: float
    x_levels: tuple
    coefficients: np.ndarray    # shape (levels, 2*m_max+1), index m+m_max
    sup_per_level: np.ndarray   # max_m |c_m| per level
    tail_sup_per_level: np.ndarray
    tail_start: int             # tail band is |m| in [tail_start, m_max]
    levels_used: tuple          # indices of the coupled levels classified
    classification: str         # bounded | decaying | growing | inconclusive
    note: str = "finite-data heuristic; see sups per level"

    def coefficient(self, level: int, m: int) -> complex:
        return self.coefficients[level, m + self.m_max]


def window_coeffs(grid: BoundaryGrid, m_max: int = DEFAULT_M,
                  center: float = 0.0, tail_start: int | None = None) -> FourierDiagnostic:
    """Windowed coefficients c_m(x) and the trend classification.

    c_m = (1/2B) sum_j w(y_j - center) q(x + i y_j) exp(i m pi (y_j - center)/B) dy,
    a trapezoid rule that is exact-edge because the window vanishes with
    its slope at the rim.  m_max is guarded at a quarter of the per-window
    sample count.
    """
    m_max = int(m_max)
    if m_max < 1:
        raise ResolutionError("m_max must be >= 1")
    dy = grid.dy
    if center == 0.0:
        sel = slice(None)
        y_rel = grid.y
    else:
        mask = np.abs(grid.y - center) <= grid.b * (1 + 1e-12)
        if grid.y[mask].size < 8 or abs(grid.y[mask][0] - (center - grid.b)) > dy \
                or abs(grid.y[mask][-1] - (center + grid.b)) > dy:
            raise DomainError("grid does not cover the requested window")
        sel = mask
        y_rel = grid.y[mask] - center
    if m_max > (2.0 * grid.b / dy) / 4.0:
        raise ResolutionError(
            f"m_max={m_max} exceeds the resolution guard B/dy/4 = {(2.0 * grid.b / dy) / 4.0:g}")
    if tail_start is None:
        tail_start = max(1, m_max // 2)
    if not 1 <= tail_start <= m_max:
        raise ResolutionError("tail_start must lie in [1, m_max]")

    w = hann_window(y_rel, grid.b)
    ms = np.arange(-m_max, m_max + 1)
    phases = np.exp(1j * np.pi * np.outer(ms, y_rel) / grid.b)
    n_levels = len(grid.x_levels)
    coeffs = np.empty((n_levels, len(ms)), dtype=np.complex128)
    for i in range(n_levels):
        coeffs[i] = (dy / (2.0 * grid.b)) * phases @ (w * grid.values[i, sel])
    mags = np.abs(coeffs)
    sup = mags.max(axis=1)
    tail_mask = np.abs(ms) >= tail_start
    tail_sup = mags[:, tail_mask].max(axis=1)

    usable = [i for i, ok in enumerate(grid.coupling_ok) if ok]
    label, used = _classify(sup, tail_sup, usable)
    return FourierDiagnostic(grid.b, "hann", m_max, float(center), grid.x_levels,
                             coeffs, sup, tail_sup, int(tail_start), used, label)


def _classify(sup, tail_sup, usable_levels):
    """Trend over the last three coupled levels.

    growing:  sup_m |c_m| rises monotonically and at least doubles.
    decaying: the coefficient tail collapses below 0.2 of the head on the
              two deepest levels (coefficients dying off in m).
    bounded:  sup_m |c_m| drifts within [0.5, 1.5] of the first level.
    """
    if len(usable_levels) < 3:
        return "inconclusive", tuple(usable_levels)
    used = tuple(usable_levels[-3:])
    s1, s2, s3 = (float(sup[i]) for i in used)
    t2, t3 = float(tail_sup[used[1]]), float(tail_sup[used[2]])
    if max(s1, s2, s3) == 0.0:
        return "bounded", used
    if s1 < s2 < s3 and s3 >= 2.0 * s1:
        return "growing", used
    if s2 > 0 and s3 > 0 and t2 <= 0.2 * s2 and t3 <= 0.2 * s3:
        return "decaying", used
    if s1 > 0 and 0.5 <= s2 / s1 <= 1.5 and 0.5 <= s3 / s1 <= 1.5:
        return "bounded", used
    return "inconclusive", used


# -- independent oracle for the window coefficients -----------------------


def window_f_coeff_closed_form(seq: CoefficientSequence, x: float, b: float, m: int) -> complex:
    """Exact windowed coefficient of the f-part via the window transform.

    Exchanging sum and integral, the coefficient of f(x+iy) is
    sum_n a_n n^(-x) W(m pi / B - ln n) / (2B) with W the closed-form
    window transform; no y-quadrature enters.
    """
    if not x > 1.0:
        raise DomainError("oracle requires x > 1")
    nu = m * math.pi / b
    if seq.dense is not None:
        support = np.nonzero(seq.dense)[0]
        if len(support) == 0:
            return 0j
        t = ln_table(seq.horizon)[support]
        amp = seq.dense[support] * np.exp(-x * t)
        return complex(float(np.dot(amp, hann_transform(nu - t, b))) / (2.0 * b), 0.0)
    total = 0.0
    for e in seq.sparse:
        a_log2 = e.value.log2
        if a_log2 == float("-inf"):
            continue
        mag_log2 = a_log2 - x * e.log2_index
        if mag_log2 > _LOG2_DOUBLE_MAX:
            raise TermOverflowError("term exceeds the double range")
        total += (2.0 ** mag_log2) * float(hann_transform(nu - e.log2_index * _LOG2, b))
    return complex(total / (2.0 * b), 0.0)


class WindowCoeffOracle:
    """Cross-check for window_coeffs that avoids the y-grid entirely.

    The f-part coefficients come from the closed-form window transform;
    the 1/z factor is windowed separately by fine quadrature and applied
    as a convolution over Fourier indices.  Build once per (seq, x); the
    per-m evaluation is then a dot product.
    """

    def __init__(self, seq: CoefficientSequence, x: float, b: float = DEFAULT_B,
                 j_halfwidth: int | None = None, quad_points: int = 2 ** 15 + 1):
        if not x > 1.0:
            raise DomainError("oracle requires x > 1")
        self.b = float(b)
        self.x = float(x)
        if j_halfwidth is None:
            j_halfwidth = int(math.ceil(b * seq.log_horizon() / math.pi)) + 254
        self.j_halfwidth = int(j_halfwidth)
        js = np.arange(-self.j_halfwidth, self.j_halfwidth + 1)
        self._js = js
        self._cf = np.array(
            [window_f_coeff_closed_form(seq, x, b, int(j)) for j in js],
            dtype=np.complex128)
        # Fourier coefficients of 1/z on [-B, B) by composite Simpson
        if quad_points % 2 == 0:
            quad_points += 1
        yy = np.linspace(-b, b, quad_points)
        weights = np.ones(quad_points)
        weights[1:-1:2] = 4.0
        weights[2:-1:2] = 2.0
        weights *= (yy[1] - yy[0]) / 3.0
        core = weights / (x + 1j * yy)
        p_half = self.j_halfwidth + 16
        ps = np.arange(-p_half, p_half + 1)
        phase = np.exp(1j * math.pi * np.outer(ps, yy) / b)
        self._p_half = p_half
        self._v = (phase @ core) / (2.0 * b)

    def coefficient(self, m: int) -> complex:
        """Oracle value of c_m for the quotient field."""
        ps = m - self._js
        valid = np.abs(ps) <= self._p_half
        return complex(np.dot(self._cf[valid], self._v[ps[valid] + self._p_half]))


def window_coeffs_oracle(seq: CoefficientSequence, x: float, b: float, m: int) -> complex:
    """One-shot oracle coefficient; build WindowCoeffOracle for many m."""
    return WindowCoeffOracle(seq, x, b).coefficient(m)


# -- first-order pole bound ----------------------------------------------


@dataclass(frozen=True)
class PoleBoundReport:
    """Worst |q(z)| (x-1) over a grid against the exact step-function sup."""

    m_n: float          # sup over n <= horizon of s(n)/n
    worst_ratio: float
    holds: bool

    def to_json_obj(self):
        return {"M_N": self.m_n, "worst_ratio": self.worst_ratio, "holds": self.holds}


def step_sup(seq: CoefficientSequence) -> float:
    """sup over n <= horizon of s(n)/n, attained at a jump index."""
    if seq.dense is not None:
        if seq.horizon == 0:
            return 0.0
        sums = np.cumsum(seq.dense)
        return float(np.max(sums / np.arange(1, seq.horizon + 1)))
    best = 0.0
    running = None
    for e in seq.sparse:
        running = e.value if running is None else running + e.value
        n_log2 = e.log2_index
        best = max(best, 2.0 ** (running.log2 - n_log2))
    return best


def pole_bound_check(seq: CoefficientSequence, grid: BoundaryGrid) -> PoleBoundReport:
    """Verify |q(z)| <= M_N / (x - 1) on the grid.

    Exact for truncations: their normalized partial-sum step is bounded by
    M_N by construction, so this must hold for every sequence and grid.
    """
    if grid.field != "quotient":
        raise ValueError("pole bound applies to quotient grids")
    m_n = step_sup(seq)
    worst = 0.0
    for i, x in enumerate(grid.x_levels):
        level_max = float(np.max(np.abs(grid.values[i]))) * (x - 1.0)
        worst = max(worst, level_max)
    if m_n == 0.0:
        ratio = 0.0 if worst == 0.0 else math.inf
    else:
        ratio = worst / m_n
    return PoleBoundReport(m_n, ratio, ratio <= 1.0 + 1e-10)
