#pragma once

#include <string>
#include <vector>

namespace gf {

/// Smooth, even, nonnegative bump with support in [-1, 1] and unit mass.
/// The default (and currently only) profile is the normalized
/// exp(-1/(1-x^2)) bump. The density and its derivative are evaluated in
/// closed form; the cumulative distribution, which has no closed form, is
/// served from a high-accuracy quadrature table built at construction and
/// interpolated with cubic Hermite polynomials (the density supplies exact
/// endpoint slopes), keeping the table error near machine precision.
class Mollifier {
public:
    /// Shared normalized bump instance.
    static const Mollifier& bump();

    const std::string& name() const { return name_; }

    double rho(double x) const;   ///< density, 0 outside (-1, 1)
    double drho(double x) const;  ///< its derivative
    double cdf(double x) const;   ///< integral of rho over (-inf, x]

    double rho0() const { return rho0_; }

private:
    Mollifier();

    double half_integral(double x) const;  ///< integral of rho over [0, x], x in [0, 1]

    std::string name_;
    double norm_;            ///< normalization constant: integral of the raw bump
    double rho0_;
    std::vector<double> table_;  ///< cumulative integral of rho over [0, x_i]
    double table_h_;
};

}  // namespace gf
