#pragma once

#include <cstddef>

/// Central registry of the numeric defaults used by estimators and scans.
/// Every asymptotic decision in the library routes through one of these
/// constants so that experiment configs can override them in exactly one
/// place and reports can echo the resolved values.
namespace gf::defaults {

/// Fraction of an eps-grid (counted from the small-eps end) used by the
/// log-log regression that renders limsup-type exponents on a finite grid.
inline constexpr double tail_fraction = 0.5;

/// Tolerance, in exponent units, applied to every asymptotic comparison
/// between fitted valuations (sums, minima, products).
inline constexpr double fit_tol = 0.05;

/// Valuation slack accepted by the slow-scale classifier: a strongly
/// positive net passes when its fitted valuation is >= -slow_scale_tol.
inline constexpr double slow_scale_tol = 0.2;

/// Verdict threshold for regularity slope tests (microlocal cone scans and
/// derivative-growth tests): regular when the fitted slope stays at or
/// below this value. Chosen midway between the analytic values 0 (smooth)
/// and 1 (delta at logarithmic scale).
inline constexpr double slope_tol = 0.25;

/// Number of scan directions on the frequency circle for 2-d wave front
/// scans, and the half-angle of each test cone in radians.
inline constexpr std::size_t n_angles = 16;
inline constexpr double cone_half_angle = 0.39269908169872414;  // pi/8

/// FFT windowing: zero-padding factor, upper band edge as a fraction of the
/// grid Nyquist frequency, and the lower band edge in units of the
/// fundamental frequency 2*pi/L of the domain.
inline constexpr std::size_t fft_pad_factor = 4;
inline constexpr double f_hi_fraction = 0.8;
inline constexpr double f_lo_cycles = 4.0;

/// Interpolation order for point values on grids (3 = cubic).
inline constexpr int interpolation_order = 3;

/// Fixed time step of the bicharacteristic integrator and the nullity
/// tolerance of its initial-data check.
inline constexpr double bichar_dt = 1e-3;
inline constexpr double nullity_tol = 1e-10;

/// Guard threshold: a per-eps trajectory is truncated (with metadata, not
/// an error) once |xi| exceeds this bound.
inline constexpr double blowup_guard = 1e12;

/// CFL number of the upwind cross-validation solver.
inline constexpr double upwind_cfl = 0.9;

}  // namespace gf::defaults
