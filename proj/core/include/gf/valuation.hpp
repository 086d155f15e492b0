#pragma once

#include <cstddef>

#include "gf/defaults.hpp"
#include "gf/gen_number.hpp"

namespace gf {

/// Result of the log-log regression that estimates the valuation
/// sup{ b : |u_eps| = O(eps^b) } on a finite grid. The estimate is the
/// least-squares slope of log|u_eps| against log(eps) over the tail window;
/// an all-zero tail is reported through the `infinite` flag (the valuation
/// of the zero net).
struct ValuationEstimate {
    double b_hat = 0.0;          ///< estimated exponent (meaningless if infinite)
    bool infinite = false;       ///< tail is identically zero
    double fit_residual = 0.0;   ///< RMS residual of the regression, >= 0
    std::size_t window_begin = 0;
    std::size_t window_end = 0;  ///< window is [window_begin, window_end)
    std::size_t zeros_excluded = 0;  ///< exact zeros dropped from the fit
};

/// Moderateness classification of a net.
enum class NetClass { moderate, negligible, neither };

/// True for both moderate and negligible (negligible implies moderate).
bool is_moderate_class(NetClass c);

const char* to_string(NetClass c);

/// Estimate the valuation of u over the small-eps tail of its grid.
/// Requires at least 8 grid points and tail_fraction in (0, 1]; throws
/// std::invalid_argument otherwise. Exact zeros inside an otherwise nonzero
/// tail are excluded from the fit and counted in the estimate.
ValuationEstimate estimate_valuation(const GenNumber& u,
                                     double tail_fraction = defaults::tail_fraction);

/// Ultra-pseudo-norm e^{-b_hat}; 0 when the valuation is infinite.
double ultra_norm(const GenNumber& u,
                  double tail_fraction = defaults::tail_fraction);

/// Growth classification from the fitted valuation: negligible when
/// b_hat >= q_max (or infinite), else moderate when b_hat >= -N_max, else
/// neither.
NetClass classify(const GenNumber& u, int N_max, int q_max,
                  double tail_fraction = defaults::tail_fraction);

/// Numerical slow-scale test: strong positivity (every value real and
/// strictly positive; otherwise std::invalid_argument) together with fitted
/// valuation >= -tol. Renders the condition "every fixed power of the net
/// is O(1/eps)", which is equivalent to valuation >= 0.
bool is_slow_scale(const GenNumber& w,
                   double tol = defaults::slow_scale_tol,
                   double tail_fraction = defaults::tail_fraction);

}  // namespace gf
