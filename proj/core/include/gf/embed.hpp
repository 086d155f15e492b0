#pragma once

#include "gf/defaults.hpp"
#include "gf/dist_spec.hpp"
#include "gf/gen_number.hpp"
#include "gf/gen_point.hpp"
#include "gf/grid_fn.hpp"
#include "gf/mollifier.hpp"
#include "gf/scale_fn.hpp"

namespace gf {

/// Mollifier embedding of a distribution: samples_k = (dist * rho^{eps_k})
/// on the grid, where rho^eps(x) = gamma_eps * rho(gamma_eps * x) and
/// gamma_eps = scale(eps). On 2-d grids the profile varies along `axis` and
/// is constant along the other axis.
///
/// Requires resolvability 1/gamma_eps >= 4h at every eps_k; a violation
/// raises an error naming the offending eps_k.
GridFn embed(const DistSpec& dist, const Mollifier& m, const ScaleFn& scale,
             const SpatialGrid& grid, const EpsGrid& eps, int axis = 0);

/// Value of u at a generalized point: per-eps polynomial interpolation of
/// u_eps at x_eps (order 1 = linear, 3 = cubic; tensor-product in 2-d).
/// Coordinates must lie inside the grid box at every eps_k.
GenNumber point_value(const GridFn& u, const GenPoint& p,
                      int order = defaults::interpolation_order);

/// Integral pairing int k_eps * u_eps by per-eps trapezoid quadrature
/// (tensor-product trapezoid in 2-d). Grids and eps-grids must match.
GenNumber kernel_pairing(const GridFn& k, const GridFn& u);

/// Point-evaluation kernel v_eps(y) = rho^eps(x_eps - y) for the
/// generalized point p (tensor-product mollifier in 2-d), so that
/// kernel_pairing(delta_kernel(p), u) recovers point_value(u, p) for
/// regular u. Resolvability as in embed.
GridFn delta_kernel(const GenPoint& p, const Mollifier& m, const ScaleFn& scale,
                    const SpatialGrid& grid);

}  // namespace gf
