#include "gf/valuation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gf/linfit.hpp"

namespace gf {

bool is_moderate_class(NetClass c) { return c != NetClass::neither; }

const char* to_string(NetClass c) {
    switch (c) {
        case NetClass::moderate: return "moderate";
        case NetClass::negligible: return "negligible";
        case NetClass::neither: return "neither";
    }
    return "?";
}

ValuationEstimate estimate_valuation(const GenNumber& u, double tail_fraction) {
    if (u.size() < 8)
        throw std::invalid_argument(
            "estimate_valuation: need at least 8 grid points");

    ValuationEstimate est;
    est.window_begin = u.grid().tail_begin(tail_fraction);
    est.window_end = u.size();

    std::vector<double> xs, ys;
    xs.reserve(est.window_end - est.window_begin);
    ys.reserve(xs.capacity());
    for (std::size_t k = est.window_begin; k < est.window_end; ++k) {
        const double mag = std::abs(u[k]);
        if (mag == 0.0) {
            ++est.zeros_excluded;
            continue;
        }
        xs.push_back(std::log(u.grid()[k]));
        ys.push_back(std::log(mag));
    }

    if (xs.empty()) {
        // The paper's val(0) = +infinity: an identically vanishing tail.
        est.infinite = true;
        return est;
    }
    if (xs.size() == 1) {
        // Single usable point: the only available exponent witness.
        est.b_hat = ys[0] / xs[0];
        return est;
    }

    const LinFit fit = fit_line(xs, ys);
    est.b_hat = fit.slope;
    est.fit_residual = fit.rms_residual;
    return est;
}

double ultra_norm(const GenNumber& u, double tail_fraction) {
    const ValuationEstimate est = estimate_valuation(u, tail_fraction);
    if (est.infinite) return 0.0;
    return std::exp(-est.b_hat);
}

NetClass classify(const GenNumber& u, int N_max, int q_max, double tail_fraction) {
    const ValuationEstimate est = estimate_valuation(u, tail_fraction);
    if (est.infinite || est.b_hat >= static_cast<double>(q_max))
        return NetClass::negligible;
    if (est.b_hat >= -static_cast<double>(N_max))
        return NetClass::moderate;
    return NetClass::neither;
}

bool is_slow_scale(const GenNumber& w, double tol, double tail_fraction) {
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k].imag() != 0.0 || !(w[k].real() > 0.0))
            throw std::invalid_argument(
                "is_slow_scale: net must be real and strictly positive");
    }
    const ValuationEstimate est = estimate_valuation(w, tail_fraction);
    if (est.infinite) return false;  // unreachable for positive nets
    return est.b_hat >= -tol;
}

}  // namespace gf
