#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "gf/eps_grid.hpp"
#include "gf/spatial_grid.hpp"

namespace gf {

/// Generalized point: one coordinate tuple per eps_k. The compact flag
/// declares that the net stays inside a fixed bounding box, which is then
/// enforced at construction.
class GenPoint {
public:
    GenPoint(EpsGrid eps, std::vector<std::array<double, 2>> coords, int dim,
             bool compact_flag = false,
             std::optional<Box> bounding_box = std::nullopt);

    /// Constant 1-d point x_eps = x0.
    static GenPoint constant(const EpsGrid& eps, double x0);

    /// 1-d point sampled from fn(eps).
    static GenPoint from_function(const EpsGrid& eps,
                                  const std::function<double(double)>& fn);

    const EpsGrid& eps() const { return eps_; }
    int dim() const { return dim_; }
    const std::array<double, 2>& coord(std::size_t k) const { return coords_[k]; }
    bool compact_flag() const { return compact_; }

private:
    EpsGrid eps_;
    std::vector<std::array<double, 2>> coords_;
    int dim_;
    bool compact_;
};

/// One cell of a box partition together with its center, as reported by
/// support_of_point.
struct SupportCell {
    std::array<long, 2> index{0, 0};
    std::array<double, 2> center{0.0, 0.0};
    bool operator==(const SupportCell&) const = default;
};

/// Finite rendering of the support of a generalized point: the cells of the
/// box partition (cell edge cell_size) hit by the small-eps tail half of
/// the coordinate net. Coordinates outside the box are ignored, so the
/// result may be empty for escaping nets.
std::vector<SupportCell> support_of_point(const GenPoint& p, const Box& domain_box,
                                          double cell_size);

}  // namespace gf
