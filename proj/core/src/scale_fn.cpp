#include "gf/scale_fn.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gf {

ScaleFn ScaleFn::log_scale() { return ScaleFn(Kind::log, 0.0); }

ScaleFn ScaleFn::pow_scale(double p) {
    if (!(p > 0.0))
        throw std::invalid_argument("ScaleFn: power scale needs p > 0");
    return ScaleFn(Kind::pow, p);
}

ScaleFn ScaleFn::const_scale(double c) {
    if (!(c > 0.0))
        throw std::invalid_argument("ScaleFn: constant scale needs c > 0");
    return ScaleFn(Kind::constant, c);
}

ScaleFn ScaleFn::parse(const std::string& tag) {
    if (tag == "log") return log_scale();
    if (tag == "const") return const_scale(1.0);
    const auto colon = tag.find(':');
    if (colon != std::string::npos) {
        const std::string head = tag.substr(0, colon);
        const std::string arg = tag.substr(colon + 1);
        try {
            const double v = std::stod(arg);
            if (head == "pow") return pow_scale(v);
            if (head == "const") return const_scale(v);
        } catch (const std::logic_error&) {
            // fall through to the rejection below
        }
    }
    throw std::invalid_argument("ScaleFn: unknown tag '" + tag +
                                "' (expected log, pow:<p>, const, const:<c>)");
}

std::string ScaleFn::tag() const {
    char buf[48];
    switch (kind_) {
        case Kind::log:
            return "log";
        case Kind::pow:
            std::snprintf(buf, sizeof buf, "pow:%.17g", param_);
            return buf;
        case Kind::constant:
            std::snprintf(buf, sizeof buf, "const:%.17g", param_);
            return buf;
    }
    return "?";
}

double ScaleFn::operator()(double eps) const {
    switch (kind_) {
        case Kind::log:
            return std::log(1.0 / eps);
        case Kind::pow:
            return std::pow(eps, -param_);
        case Kind::constant:
            return param_;
    }
    return 0.0;
}

GenNumber ScaleFn::sample(const EpsGrid& grid) const {
    std::vector<GenNumber::value_type> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double g = (*this)(grid[k]);
        if (!(g > 0.0))
            throw std::domain_error("ScaleFn: scale '" + tag() +
                                    "' is not strictly positive on the grid");
        values[k] = g;
    }
    return GenNumber(grid, std::move(values));
}

}  // namespace gf
