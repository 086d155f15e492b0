#pragma once

#include <array>
#include <vector>

#include "gf/defaults.hpp"
#include "gf/grid_fn.hpp"

namespace gf {

/// Valuation of sup_region |d^alpha u_eps| for one multi-index alpha.
struct AlphaValuation {
    std::array<int, 2> alpha{0, 0};  ///< per-axis derivative orders (alpha[1]=0 in 1-d)
    int total = 0;                   ///< |alpha|
    bool infinite = false;           ///< derivative net vanished on the fit window
    double v = 0.0;                  ///< valuation estimate when finite
};

/// Outcome of the derivative-growth regularity test.
struct GInftyReport {
    bool regular = false;
    double n_witness = 0.0;  ///< -min_alpha v(alpha): the exhibited growth exponent
    double slope = 0.0;      ///< least-squares slope of v(alpha) against |alpha|
    std::vector<AlphaValuation> valuations;
};

/// Tests membership in the regular subalgebra over `region`: computes the
/// valuation v(alpha) of sup_region |d^alpha u_eps| for every multi-index
/// with |alpha| <= alpha_max (per-axis order capped at 4), then declares u
/// regular iff the least-squares slope of v(alpha) against |alpha| stays
/// above -slope_tol. A bounded loss exponent across all derivative orders
/// shows up as slope ~ 0; order-by-order growth as a strictly negative
/// slope. Identically vanishing derivative nets are recorded as infinite
/// and excluded from the fit.
GInftyReport is_ginfty(const GridFn& u, const Box& region, int alpha_max,
                       double slope_tol = defaults::slope_tol,
                       BoundaryMode mode = BoundaryMode::one_sided);

}  // namespace gf
