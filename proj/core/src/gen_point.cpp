#include "gf/gen_point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gf {

GenPoint::GenPoint(EpsGrid eps, std::vector<std::array<double, 2>> coords, int dim,
                   bool compact_flag, std::optional<Box> bounding_box)
    : eps_(std::move(eps)), coords_(std::move(coords)), dim_(dim),
      compact_(compact_flag) {
    if (dim_ < 1 || dim_ > 2)
        throw std::invalid_argument("GenPoint: dimension must be 1 or 2");
    if (coords_.size() != eps_.size())
        throw std::invalid_argument("GenPoint: one coordinate per eps required");
    for (const auto& c : coords_)
        for (int d = 0; d < dim_; ++d)
            if (!std::isfinite(c[d]))
                throw std::invalid_argument("GenPoint: coordinates must be finite");
    if (compact_) {
        if (!bounding_box)
            throw std::invalid_argument(
                "GenPoint: compact flag requires a declared bounding box");
        for (const auto& c : coords_)
            if (!bounding_box->contains(dim_, c))
                throw std::invalid_argument(
                    "GenPoint: coordinate escapes the declared bounding box");
    }
}

GenPoint GenPoint::constant(const EpsGrid& eps, double x0) {
    std::vector<std::array<double, 2>> coords(eps.size(), {x0, 0.0});
    return GenPoint(eps, std::move(coords), 1);
}

GenPoint GenPoint::from_function(const EpsGrid& eps,
                                 const std::function<double(double)>& fn) {
    std::vector<std::array<double, 2>> coords(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) coords[k] = {fn(eps[k]), 0.0};
    return GenPoint(eps, std::move(coords), 1);
}

std::vector<SupportCell> support_of_point(const GenPoint& p, const Box& domain_box,
                                          double cell_size) {
    if (!(cell_size > 0.0))
        throw std::invalid_argument("support_of_point: cell_size must be positive");
    const std::size_t tail = p.eps().tail_begin(0.5);
    std::vector<SupportCell> cells;
    for (std::size_t k = tail; k < p.eps().size(); ++k) {
        const auto& c = p.coord(k);
        if (!domain_box.contains(p.dim(), c)) continue;
        SupportCell cell;
        for (int d = 0; d < p.dim(); ++d) {
            cell.index[d] = static_cast<long>(
                std::floor((c[d] - domain_box.lo[d]) / cell_size));
            cell.center[d] =
                domain_box.lo[d] + (static_cast<double>(cell.index[d]) + 0.5) * cell_size;
        }
        if (std::find(cells.begin(), cells.end(), cell) == cells.end())
            cells.push_back(cell);
    }
    std::sort(cells.begin(), cells.end(), [](const SupportCell& a, const SupportCell& b) {
        return a.index < b.index;
    });
    return cells;
}

}  // namespace gf
