"""Numerical laboratory for Dirichlet series with nonnegative coefficients.

Evaluates finite Dirichlet sums and their quotient form near the boundary
line x = 1, checks the order-log(N) growth chain and its doubly
exponential sharpness witness, verifies the summation-by-parts and
step-transform identities exactly, classifies boundary behavior through
windowed Fourier diagnostics, and reproduces the twin-prime comparisons.
"""

from .boundary import (BoundaryGrid, FourierDiagnostic, PoleBoundReport, WindowCoeffOracle,
                       coupled_levels, default_dy, hann_transform, hann_window,
                       heaviside_field, injected_grid, pole_bound_check, scan, scan_fields,
                       step_sup, window_coeffs, window_coeffs_oracle,
                       window_f_coeff_closed_form)
from .errors import (CoefficientFileError, DomainError, ResolutionError, ResourceLimitError,
                     SamplingError, TermOverflowError)
from .extnum import EXACT_LIMIT, ExtendedNonnegative
from .quad import adaptive_simpson
from .sequences import (CoefficientSequence, SparseEntry, counterexample,
                        counterexample_delta_f, load_coefficients, ones, save_coefficients,
                        twin_weights, von_mangoldt)
from .series import (EvalResult, abel_rhs, eval_f, eval_q, laplace_q, ln_table, step_laplace)
from .sieve import prime_mask, primes_up_to, von_mangoldt_table
from .tauberian import (LogBoundReport, PartialSumTable, SharpnessReport, StepValue,
                        S_of_t, default_checkpoints, log_bound_check, partial_sums,
                        sharpness_check)
from .twinprime import (PairConstant, TwinPrimeReport, d2_eval, d2_quotient, li2, pi2,
                        psi2, report, twin_prime_constant)

__version__ = "0.1.0"
