#include "gf/mollifier.hpp"

#include <cmath>
#include <stdexcept>

namespace gf {

namespace {

constexpr std::size_t kTableIntervals = 4096;

double raw_bump(double x) {
    const double s = 1.0 - x * x;
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s);
}

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlx[7] = {-0.9491079123427585, -0.7415311855993945,
                            -0.4058451513773972, 0.0,
                            0.4058451513773972,  0.7415311855993945,
                            0.9491079123427585};
constexpr double kGlw[7] = {0.1294849661688697, 0.2797053914892766,
                            0.3818300505051189, 0.4179591836734694,
                            0.3818300505051189, 0.2797053914892766,
                            0.1294849661688697};

double integrate_raw(double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += kGlw[i] * raw_bump(mid + half * kGlx[i]);
    return s * half;
}

}  // namespace

Mollifier::Mollifier() : name_("bump") {
    table_h_ = 1.0 / static_cast<double>(kTableIntervals);
    // Cumulative integral of the raw bump over [0, x_i] in extended
    // precision, then normalized so the total mass over [-1, 1] is exactly 1.
    std::vector<long double> cum(kTableIntervals + 1, 0.0L);
    for (std::size_t i = 0; i < kTableIntervals; ++i) {
        const double a = static_cast<double>(i) * table_h_;
        const double b = a + table_h_;
        cum[i + 1] = cum[i] + static_cast<long double>(integrate_raw(a, b));
    }
    norm_ = 2.0 * static_cast<double>(cum.back());
    table_.resize(cum.size());
    for (std::size_t i = 0; i < cum.size(); ++i)
        table_[i] = static_cast<double>(cum[i] / cum.back()) * 0.5;
    rho0_ = rho(0.0);

    // Construction-time verification of symmetry, positivity, and unit mass
    // (the latter against an independent Simpson sum over the table nodes).
    long double simpson = 0.0L;
    for (std::size_t i = 0; i < kTableIntervals; i += 2) {
        const double x0 = static_cast<double>(i) * table_h_;
        simpson += (rho(x0) + 4.0 * rho(x0 + table_h_) + rho(x0 + 2.0 * table_h_)) *
                   (table_h_ / 3.0);
    }
    const double mass = 2.0 * static_cast<double>(simpson);
    if (std::abs(mass - 1.0) > 1e-10)
        throw std::logic_error("Mollifier: unit-mass verification failed");
    if (!(rho(0.3) == rho(-0.3)) || rho(0.5) < 0.0)
        throw std::logic_error("Mollifier: symmetry/positivity verification failed");
}

const Mollifier& Mollifier::bump() {
    static const Mollifier instance;
    return instance;
}

double Mollifier::rho(double x) const { return raw_bump(x) / norm_; }

double Mollifier::drho(double x) const {
    const double s = 1.0 - x * x;
    if (s <= 0.0) return 0.0;
    return rho(x) * (-2.0 * x / (s * s));
}

double Mollifier::half_integral(double x) const {
    // Cubic Hermite interpolation of the cumulative table on [0, 1]; the
    // density provides exact endpoint derivatives.
    if (x >= 1.0) return 0.5;
    const double pos = x / table_h_;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= kTableIntervals) i = kTableIntervals - 1;
    const double t = pos - static_cast<double>(i);
    const double x0 = static_cast<double>(i) * table_h_;
    const double f0 = table_[i], f1 = table_[i + 1];
    const double d0 = rho(x0) * table_h_, d1 = rho(x0 + table_h_) * table_h_;
    const double t2 = t * t, t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * f0 + (t3 - 2.0 * t2 + t) * d0 +
           (-2.0 * t3 + 3.0 * t2) * f1 + (t3 - t2) * d1;
}

double Mollifier::cdf(double x) const {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x >= 0.0 ? 0.5 + half_integral(x) : 0.5 - half_integral(-x);
}

}  // namespace gf
