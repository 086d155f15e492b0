#pragma once

#include <string>

#include "gf/eps_grid.hpp"
#include "gf/gen_number.hpp"

namespace gf {

/// Named growth scale gamma_eps used to calibrate regularity tests:
/// log(1/eps), a power eps^-p, or a positive constant. Scales must be
/// strictly positive and nondecreasing as eps decreases on every grid they
/// are evaluated over.
class ScaleFn {
public:
    enum class Kind { log, pow, constant };

    static ScaleFn log_scale();
    static ScaleFn pow_scale(double p);     ///< p > 0
    static ScaleFn const_scale(double c);   ///< c > 0

    /// Parses the config tags "log", "pow:<p>", "const", "const:<c>".
    static ScaleFn parse(const std::string& tag);

    Kind kind() const { return kind_; }
    double param() const { return param_; }
    std::string tag() const;

    /// gamma_eps at a single parameter value.
    double operator()(double eps) const;

    /// Samples the scale over a grid; throws std::domain_error if the scale
    /// fails strict positivity there (e.g. log at eps = 1).
    GenNumber sample(const EpsGrid& grid) const;

    bool operator==(const ScaleFn&) const = default;

private:
    ScaleFn(Kind kind, double param) : kind_(kind), param_(param) {}
    Kind kind_;
    double param_;
};

}  // namespace gf
