#include "gf/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace gf {

namespace {

std::string fmt_eps(std::size_t k, double eps) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "eps_%zu = %.17g", k, eps);
    return buf;
}

void check_resolvability(const ScaleFn& scale, const SpatialGrid& grid,
                         const EpsGrid& eps, const char* op) {
    double h = grid.axis(0).h();
    if (grid.dim() == 2) h = std::max(h, grid.axis(1).h());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double gamma = scale(eps[k]);
        if (!(gamma > 0.0))
            throw std::invalid_argument(std::string(op) + ": scale is not positive at " +
                                        fmt_eps(k, eps[k]));
        if (1.0 / gamma < 4.0 * h) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "%s: mollifier width 1/gamma = %.17g under-resolves grid "
                          "spacing h = %.17g (need >= 4h) at %s",
                          op, 1.0 / gamma, h, fmt_eps(k, eps[k]).c_str());
            throw std::invalid_argument(buf);
        }
    }
}

/// Lagrange interpolation of one axis at x using an `order`+1 node window
/// of the uniform axis; returns the window base index and barycentric-free
/// Lagrange weights.
void interp_weights(const GridAxis& ax, double x, int order, std::size_t& base,
                    double* w) {
    const int m = order + 1;
    const double h = ax.h();
    double t = (x - ax.lo) / h;
    long i = static_cast<long>(std::floor(t));
    long b = i - (m - 1) / 2;
    b = std::clamp<long>(b, 0, static_cast<long>(ax.n) - m);
    base = static_cast<std::size_t>(b);
    for (int j = 0; j < m; ++j) {
        double num = 1.0, den = 1.0;
        for (int l = 0; l < m; ++l) {
            if (l == j) continue;
            num *= t - (b + l);
            den *= static_cast<double>(j - l);
        }
        w[j] = num / den;
    }
}

}  // namespace

GridFn embed(const DistSpec& dist, const Mollifier& m, const ScaleFn& scale,
             const SpatialGrid& grid, const EpsGrid& eps, int axis) {
    if (dist.terms.empty()) throw std::invalid_argument("embed: empty distribution");
    if (axis < 0 || axis >= grid.dim())
        throw std::invalid_argument("embed: axis out of range");
    check_resolvability(scale, grid, eps, "embed");

    const GridAxis& ax = grid.axis(axis);
    std::vector<std::vector<GridFn::value_type>> samples(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double gamma = scale(eps[k]);
        // The profile only depends on the coordinate along `axis`; evaluate
        // it once per axis node and broadcast.
        std::vector<double> profile(ax.n);
        for (std::size_t i = 0; i < ax.n; ++i)
            profile[i] = dist.mollified(m, gamma, ax.coord(i));

        std::vector<GridFn::value_type> layer(grid.node_count());
        if (grid.dim() == 1) {
            for (std::size_t i = 0; i < ax.n; ++i) layer[i] = profile[i];
        } else {
            const std::size_t n0 = grid.axis(0).n, n1 = grid.axis(1).n;
            for (std::size_t i1 = 0; i1 < n1; ++i1)
                for (std::size_t i0 = 0; i0 < n0; ++i0)
                    layer[grid.index(i0, i1)] = profile[axis == 0 ? i0 : i1];
        }
        samples[k] = std::move(layer);
    }
    return GridFn(grid, eps, std::move(samples));
}

GenNumber point_value(const GridFn& u, const GenPoint& p, int order) {
    if (!(p.eps() == u.eps()))
        throw std::invalid_argument("point_value: eps-grids of function and point differ");
    if (p.dim() != u.grid().dim())
        throw std::invalid_argument("point_value: dimension mismatch");
    if (order != 1 && order != 3)
        throw std::invalid_argument("point_value: interpolation order must be 1 or 3");

    const SpatialGrid& g = u.grid();
    const int m = order + 1;
    std::vector<GridFn::value_type> vals(u.eps().size());
    for (std::size_t k = 0; k < u.eps().size(); ++k) {
        const auto& x = p.coord(k);
        for (int d = 0; d < g.dim(); ++d) {
            const GridAxis& ax = g.axis(d);
            const double slack = 1e-12 * ax.length();
            if (x[d] < ax.lo - slack || x[d] > ax.hi + slack) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "point_value: coordinate %.17g leaves axis-%d range "
                              "[%.17g, %.17g] at %s",
                              x[d], d, ax.lo, ax.hi, fmt_eps(k, u.eps()[k]).c_str());
                throw std::invalid_argument(buf);
            }
        }

        double w0[4], w1[4];
        std::size_t b0 = 0, b1 = 0;
        interp_weights(g.axis(0), x[0], order, b0, w0);
        if (g.dim() == 1) {
            GridFn::value_type acc = 0.0;
            for (int j = 0; j < m; ++j) acc += w0[j] * u.at(k, b0 + j);
            vals[k] = acc;
        } else {
            interp_weights(g.axis(1), x[1], order, b1, w1);
            GridFn::value_type acc = 0.0;
            for (int j1 = 0; j1 < m; ++j1)
                for (int j0 = 0; j0 < m; ++j0)
                    acc += w0[j0] * w1[j1] * u.at(k, b0 + j0, b1 + j1);
            vals[k] = acc;
        }
    }
    return GenNumber(u.eps(), std::move(vals));
}

GenNumber kernel_pairing(const GridFn& k, const GridFn& u) {
    if (!(k.grid() == u.grid()))
        throw std::invalid_argument("kernel_pairing: spatial grids differ");
    if (!(k.eps() == u.eps()))
        throw std::invalid_argument("kernel_pairing: eps-grids differ");

    const SpatialGrid& g = k.grid();
    std::vector<GridFn::value_type> vals(k.eps().size());
    for (std::size_t q = 0; q < k.eps().size(); ++q) {
        const auto& a = k.samples(q);
        const auto& b = u.samples(q);
        GridFn::value_type acc = 0.0;
        if (g.dim() == 1) {
            const std::size_t n = g.axis(0).n;
            for (std::size_t i = 0; i < n; ++i) {
                const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
                acc += w * a[i] * b[i];
            }
            acc *= g.axis(0).h();
        } else {
            const std::size_t n0 = g.axis(0).n, n1 = g.axis(1).n;
            for (std::size_t i1 = 0; i1 < n1; ++i1) {
                const double wy = (i1 == 0 || i1 + 1 == n1) ? 0.5 : 1.0;
                for (std::size_t i0 = 0; i0 < n0; ++i0) {
                    const double wx = (i0 == 0 || i0 + 1 == n0) ? 0.5 : 1.0;
                    const std::size_t idx = g.index(i0, i1);
                    acc += wx * wy * a[idx] * b[idx];
                }
            }
            acc *= g.axis(0).h() * g.axis(1).h();
        }
        vals[q] = acc;
    }
    return GenNumber(k.eps(), std::move(vals));
}

GridFn delta_kernel(const GenPoint& p, const Mollifier& m, const ScaleFn& scale,
                    const SpatialGrid& grid) {
    if (p.dim() != grid.dim())
        throw std::invalid_argument("delta_kernel: dimension mismatch");
    check_resolvability(scale, grid, p.eps(), "delta_kernel");

    const EpsGrid& eps = p.eps();
    std::vector<std::vector<GridFn::value_type>> samples(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double gamma = scale(eps[k]);
        const auto& x = p.coord(k);
        std::vector<GridFn::value_type> layer(grid.node_count());
        if (grid.dim() == 1) {
            const GridAxis& ax = grid.axis(0);
            for (std::size_t i = 0; i < ax.n; ++i)
                layer[i] = gamma * m.rho(gamma * (x[0] - ax.coord(i)));
        } else {
            const GridAxis& a0 = grid.axis(0);
            const GridAxis& a1 = grid.axis(1);
            std::vector<double> r0(a0.n), r1(a1.n);
            for (std::size_t i = 0; i < a0.n; ++i)
                r0[i] = gamma * m.rho(gamma * (x[0] - a0.coord(i)));
            for (std::size_t i = 0; i < a1.n; ++i)
                r1[i] = gamma * m.rho(gamma * (x[1] - a1.coord(i)));
            for (std::size_t i1 = 0; i1 < a1.n; ++i1)
                for (std::size_t i0 = 0; i0 < a0.n; ++i0)
                    layer[grid.index(i0, i1)] = r0[i0] * r1[i1];
        }
        samples[k] = std::move(layer);
    }
    return GridFn(grid, eps, std::move(samples));
}

}  // namespace gf
