#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "gf/eps_grid.hpp"
#include "gf/gen_number.hpp"
#include "gf/spatial_grid.hpp"

namespace gf {

/// Grid-sampled representative of a generalized function: one complex
/// sample array per eps_k over a fixed spatial grid. Immutable after
/// construction; per-eps layers are independent.
class GridFn {
public:
    using value_type = std::complex<double>;

    GridFn(SpatialGrid grid, EpsGrid eps,
           std::vector<std::vector<value_type>> samples);

    /// Samples fn(k, point) over all grid nodes and eps indices.
    static GridFn from_function(
        const SpatialGrid& grid, const EpsGrid& eps,
        const std::function<value_type(std::size_t, const std::array<double, 2>&)>& fn);

    const SpatialGrid& grid() const { return grid_; }
    const EpsGrid& eps() const { return eps_; }
    const std::vector<value_type>& samples(std::size_t k) const { return samples_[k]; }
    value_type at(std::size_t k, std::size_t i0, std::size_t i1 = 0) const {
        return samples_[k][grid_.index(i0, i1)];
    }

    /// Per-eps sup of |samples| over nodes inside the box, as a net.
    GenNumber sup_abs(const Box& region) const;

private:
    SpatialGrid grid_;
    EpsGrid eps_;
    std::vector<std::vector<value_type>> samples_;
};

/// Boundary treatment of finite-difference stencils.
enum class BoundaryMode { one_sided, periodic };

/// Per-eps finite-difference derivative of the given order (1..4) along an
/// axis. Interior nodes use centered stencils (5 nodes for orders 1-2,
/// 7 nodes for orders 3-4); near the boundary the stencil window shifts
/// inward, yielding one-sided formulas of at least matching order, unless
/// periodic wrap-around is requested.
GridFn derivative(const GridFn& u, int axis, int order,
                  BoundaryMode mode = BoundaryMode::one_sided);

/// Finite-difference weights for the m-th derivative at evaluation point z
/// given distinct node locations xs (Fornberg's recursion). Exposed mainly
/// for tests of the stencil generator.
std::vector<double> fd_weights(double z, const std::vector<double>& xs, int m);

}  // namespace gf
