#pragma once

#include <cstddef>
#include <vector>

namespace gf {

/// Finite, strictly decreasing grid of regularization parameters in (0, 1].
/// Every net in the toolkit (numbers, grid functions, trajectories) is
/// indexed by one of these grids; asymptotic statements about eps -> 0 are
/// rendered as regressions over its small-eps tail.
class EpsGrid {
public:
    /// Takes ownership of an explicit parameter list. Throws
    /// std::invalid_argument unless the list is nonempty, strictly
    /// decreasing, and contained in (0, 1].
    explicit EpsGrid(std::vector<double> epsilons);

    std::size_t size() const { return eps_.size(); }
    double operator[](std::size_t k) const { return eps_[k]; }
    const std::vector<double>& values() const { return eps_; }

    /// Index range [begin, size) of the tail window holding the given
    /// fraction of the grid (rounded up, at least two points when size >= 2).
    std::size_t tail_begin(double tail_fraction) const;

    bool operator==(const EpsGrid& other) const { return eps_ == other.eps_; }
    bool operator!=(const EpsGrid& other) const { return !(*this == other); }

private:
    std::vector<double> eps_;
};

/// Geometric grid eps_k = eps0 * ratio^k for k = 0 .. count-1.
/// Throws std::invalid_argument for eps0 outside (0, 1], ratio outside
/// (0, 1), or count == 0.
EpsGrid make_geometric_grid(double eps0, double ratio, std::size_t count);

/// Convenience: the dyadic grid eps_k = 2^-k for k = k_lo .. k_hi.
EpsGrid make_dyadic_grid(int k_lo, int k_hi);

}  // namespace gf
