#include "gf/regularity.hpp"

#include <limits>
#include <stdexcept>

#include "gf/linfit.hpp"
#include "gf/valuation.hpp"

namespace gf {

GInftyReport is_ginfty(const GridFn& u, const Box& region, int alpha_max,
                       double slope_tol, BoundaryMode mode) {
    const int dim = u.grid().dim();
    if (alpha_max < 1 || alpha_max > 4 * dim)
        throw std::invalid_argument(
            "is_ginfty: alpha_max must be between 1 and 4 per axis");

    bool any_node = false;
    for (std::size_t i = 0; i < u.grid().node_count() && !any_node; ++i)
        any_node = region.contains(dim, u.grid().coords(i));
    if (!any_node)
        throw std::invalid_argument("is_ginfty: region contains no grid nodes");

    GInftyReport rep;
    std::vector<double> xs, ys;
    double min_v = std::numeric_limits<double>::infinity();

    const int cap = 4;
    for (int a0 = 0; a0 <= std::min(cap, alpha_max); ++a0) {
        const int b_hi = dim == 2 ? std::min(cap, alpha_max - a0) : 0;
        for (int a1 = 0; a1 <= b_hi; ++a1) {
            GridFn d = u;
            if (a0 > 0) d = derivative(d, 0, a0, mode);
            if (a1 > 0) d = derivative(d, 1, a1, mode);

            AlphaValuation av;
            av.alpha = {a0, a1};
            av.total = a0 + a1;
            const ValuationEstimate est = estimate_valuation(d.sup_abs(region));
            av.infinite = est.infinite;
            if (!est.infinite) {
                av.v = est.b_hat;
                xs.push_back(static_cast<double>(av.total));
                ys.push_back(av.v);
                min_v = std::min(min_v, av.v);
            }
            rep.valuations.push_back(av);
        }
    }

    const LinFit fit = fit_line(xs, ys);
    rep.slope = fit.slope;
    rep.n_witness = xs.empty() ? 0.0 : -min_v;
    rep.regular = rep.slope >= -slope_tol;
    return rep;
}

}  // namespace gf
