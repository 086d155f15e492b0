#pragma once

#include <array>
#include <cstddef>

namespace gf {

/// One uniformly spaced axis of a spatial grid.
struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t n = 0;

    double h() const { return (hi - lo) / static_cast<double>(n - 1); }
    double coord(std::size_t i) const { return lo + h() * static_cast<double>(i); }
    double length() const { return hi - lo; }
};

/// Axis-aligned box used to select regions of a grid (sup norms, scan
/// windows). For 1-d grids only component 0 is consulted.
struct Box {
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{0.0, 0.0};

    static Box interval(double a, double b) { return Box{{a, 0.0}, {b, 0.0}}; }
    static Box rect(double ax, double bx, double ay, double by) {
        return Box{{ax, ay}, {bx, by}};
    }
    bool contains(int dim, const std::array<double, 2>& p) const {
        for (int d = 0; d < dim; ++d)
            if (p[d] < lo[d] || p[d] > hi[d]) return false;
        return true;
    }
};

/// Uniform 1-d or 2-d sampling grid for representatives of generalized
/// functions. Nodes are stored axis-0 fastest; a 2-d grid with axes (x, t)
/// has flat index i1 * n0 + i0.
class SpatialGrid {
public:
    /// Throws std::invalid_argument unless lo < hi and n >= 64 per axis.
    explicit SpatialGrid(GridAxis ax0);
    SpatialGrid(GridAxis ax0, GridAxis ax1);

    int dim() const { return dim_; }
    const GridAxis& axis(int d) const;
    std::size_t node_count() const;

    std::size_t index(std::size_t i0, std::size_t i1 = 0) const {
        return i1 * ax_[0].n + i0;
    }
    std::array<double, 2> coords(std::size_t flat) const;

    bool operator==(const SpatialGrid& o) const;
    bool operator!=(const SpatialGrid& o) const { return !(*this == o); }

private:
    int dim_;
    std::array<GridAxis, 2> ax_;
};

}  // namespace gf
