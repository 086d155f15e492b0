#pragma once

#include <cstddef>
#include <span>

namespace gf {

/// Ordinary least-squares line fit y ~ intercept + slope * x.
struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;  ///< root mean square of the fit residuals
    double r2 = 0.0;            ///< coefficient of determination (1 for a perfect line)
    std::size_t n = 0;          ///< number of points used
};

/// Fit a straight line through (x_i, y_i). Requires xs.size() == ys.size().
/// With fewer than two points, or degenerate x spread, returns slope 0 and
/// r2 0 with n recorded; callers treat that as "no trend measurable".
LinFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace gf
