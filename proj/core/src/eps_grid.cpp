#include "gf/eps_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gf {

EpsGrid::EpsGrid(std::vector<double> epsilons) : eps_(std::move(epsilons)) {
    if (eps_.empty())
        throw std::invalid_argument("EpsGrid: empty parameter list");
    for (std::size_t k = 0; k < eps_.size(); ++k) {
        const double e = eps_[k];
        if (!std::isfinite(e) || e <= 0.0 || e > 1.0)
            throw std::invalid_argument("EpsGrid: parameters must lie in (0, 1]");
        if (k > 0 && !(e < eps_[k - 1]))
            throw std::invalid_argument("EpsGrid: parameters must be strictly decreasing");
    }
}

std::size_t EpsGrid::tail_begin(double tail_fraction) const {
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw std::invalid_argument("EpsGrid: tail_fraction must lie in (0, 1]");
    const std::size_t n = eps_.size();
    std::size_t w = static_cast<std::size_t>(
        std::ceil(tail_fraction * static_cast<double>(n)));
    w = std::clamp<std::size_t>(w, std::min<std::size_t>(2, n), n);
    return n - w;
}

EpsGrid make_geometric_grid(double eps0, double ratio, std::size_t count) {
    if (!(eps0 > 0.0) || eps0 > 1.0)
        throw std::invalid_argument("make_geometric_grid: eps0 must lie in (0, 1]");
    if (!(ratio > 0.0) || !(ratio < 1.0))
        throw std::invalid_argument("make_geometric_grid: ratio must lie in (0, 1)");
    if (count == 0)
        throw std::invalid_argument("make_geometric_grid: count must be positive");
    std::vector<double> eps(count);
    for (std::size_t k = 0; k < count; ++k)
        eps[k] = eps0 * std::pow(ratio, static_cast<double>(k));
    return EpsGrid(std::move(eps));
}

EpsGrid make_dyadic_grid(int k_lo, int k_hi) {
    if (k_lo < 0 || k_hi < k_lo)
        throw std::invalid_argument("make_dyadic_grid: need 0 <= k_lo <= k_hi");
    std::vector<double> eps;
    eps.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (int k = k_lo; k <= k_hi; ++k)
        eps.push_back(std::pow(2.0, -k));
    return EpsGrid(std::move(eps));
}

}  // namespace gf
