#include "gf/spatial_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace gf {

namespace {

void check_axis(const GridAxis& ax) {
    if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi) || !(ax.lo < ax.hi))
        throw std::invalid_argument("SpatialGrid: axis needs lo < hi");
    if (ax.n < 64)
        throw std::invalid_argument("SpatialGrid: need at least 64 nodes per axis");
}

}  // namespace

SpatialGrid::SpatialGrid(GridAxis ax0) : dim_(1), ax_{ax0, GridAxis{0.0, 1.0, 1}} {
    check_axis(ax0);
    ax_[1].n = 1;
}

SpatialGrid::SpatialGrid(GridAxis ax0, GridAxis ax1) : dim_(2), ax_{ax0, ax1} {
    check_axis(ax0);
    check_axis(ax1);
}

const GridAxis& SpatialGrid::axis(int d) const {
    if (d < 0 || d >= dim_)
        throw std::out_of_range("SpatialGrid: axis index out of range");
    return ax_[d];
}

std::size_t SpatialGrid::node_count() const {
    return dim_ == 1 ? ax_[0].n : ax_[0].n * ax_[1].n;
}

std::array<double, 2> SpatialGrid::coords(std::size_t flat) const {
    const std::size_t i0 = flat % ax_[0].n;
    const std::size_t i1 = flat / ax_[0].n;
    return {ax_[0].coord(i0), dim_ == 2 ? ax_[1].coord(i1) : 0.0};
}

bool SpatialGrid::operator==(const SpatialGrid& o) const {
    if (dim_ != o.dim_) return false;
    for (int d = 0; d < dim_; ++d)
        if (ax_[d].lo != o.ax_[d].lo || ax_[d].hi != o.ax_[d].hi ||
            ax_[d].n != o.ax_[d].n)
            return false;
    return true;
}

}  // namespace gf
