#include "gf/linfit.hpp"

#include <cmath>
#include <stdexcept>

namespace gf {

LinFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_line: size mismatch");
    LinFit fit;
    fit.n = xs.size();
    if (fit.n < 2) {
        if (fit.n == 1) fit.intercept = ys[0];
        return fit;
    }

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(fit.n);
    my /= static_cast<double>(fit.n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) {
        // All abscissae coincide: no measurable trend.
        fit.intercept = my;
        return fit;
    }

    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    fit.rms_residual = std::sqrt(ss_res / static_cast<double>(fit.n));
    fit.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

}  // namespace gf
