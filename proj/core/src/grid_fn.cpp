#include "gf/grid_fn.hpp"

#include <cmath>
#include <stdexcept>

namespace gf {

GridFn::GridFn(SpatialGrid grid, EpsGrid eps,
               std::vector<std::vector<value_type>> samples)
    : grid_(std::move(grid)), eps_(std::move(eps)), samples_(std::move(samples)) {
    if (samples_.size() != eps_.size())
        throw std::invalid_argument("GridFn: one sample array per eps required");
    for (const auto& layer : samples_) {
        if (layer.size() != grid_.node_count())
            throw std::invalid_argument("GridFn: sample array shape mismatch");
        for (const auto& v : layer)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("GridFn: samples must be finite");
    }
}

GridFn GridFn::from_function(
    const SpatialGrid& grid, const EpsGrid& eps,
    const std::function<value_type(std::size_t, const std::array<double, 2>&)>& fn) {
    std::vector<std::vector<value_type>> samples(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        samples[k].resize(grid.node_count());
        for (std::size_t i = 0; i < grid.node_count(); ++i)
            samples[k][i] = fn(k, grid.coords(i));
    }
    return GridFn(grid, eps, std::move(samples));
}

GenNumber GridFn::sup_abs(const Box& region) const {
    std::vector<GenNumber::value_type> sup(eps_.size(), 0.0);
    for (std::size_t k = 0; k < eps_.size(); ++k) {
        double best = 0.0;
        for (std::size_t i = 0; i < grid_.node_count(); ++i) {
            if (!region.contains(grid_.dim(), grid_.coords(i))) continue;
            best = std::max(best, std::abs(samples_[k][i]));
        }
        sup[k] = best;
    }
    return GenNumber(eps_, std::move(sup));
}

std::vector<double> fd_weights(double z, const std::vector<double>& xs, int m) {
    // Fornberg's recursion for finite-difference weights on arbitrary nodes.
    const std::size_t n = xs.size();
    if (n == 0 || m < 0 || static_cast<std::size_t>(m) >= n)
        throw std::invalid_argument("fd_weights: need more nodes than the order");
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = static_cast<int>(std::min<std::size_t>(i, m));
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

namespace {

// Weights in unit spacing for the m-th derivative evaluated at offset p of a
// w-node window [0, w). For m >= 1 the weight at the evaluation node is
// corrected so the weights sum to exactly zero: constants then have an
// exactly vanishing derivative instead of a roundoff-level one.
std::vector<double> window_weights(std::size_t w, std::size_t p, int m) {
    std::vector<double> xs(w);
    for (std::size_t j = 0; j < w; ++j) xs[j] = static_cast<double>(j);
    std::vector<double> wts = fd_weights(static_cast<double>(p), xs, m);
    if (m >= 1) {
        double s = 0.0;
        for (double v : wts) s += v;
        wts[p] -= s;
    }
    return wts;
}

}  // namespace

GridFn derivative(const GridFn& u, int axis, int order, BoundaryMode mode) {
    if (order < 1 || order > 4)
        throw std::invalid_argument("derivative: order must be 1..4");
    if (axis < 0 || axis >= u.grid().dim())
        throw std::invalid_argument("derivative: axis out of range");

    const std::size_t w = (order <= 2) ? 5 : 7;
    const GridAxis& ax = u.grid().axis(axis);
    const std::size_t n = ax.n;
    if (n < w + 1)
        throw std::invalid_argument("derivative: axis too short for the stencil");
    const double scale = std::pow(ax.h(), -order);

    // One weight table per in-window evaluation offset.
    std::vector<std::vector<double>> wts(w);
    for (std::size_t p = 0; p < w; ++p) wts[p] = window_weights(w, p, order);
    const std::size_t centre = w / 2;

    const std::size_t n0 = u.grid().axis(0).n;
    const std::size_t n_other = u.grid().dim() == 2
                                    ? u.grid().axis(axis == 0 ? 1 : 0).n
                                    : 1;
    const std::size_t stride = (axis == 0) ? 1 : n0;
    const std::size_t line_stride = (axis == 0) ? n0 : 1;

    std::vector<std::vector<GridFn::value_type>> out(u.eps().size());
    for (std::size_t k = 0; k < u.eps().size(); ++k) {
        const auto& in = u.samples(k);
        out[k].assign(in.size(), 0.0);
        for (std::size_t line = 0; line < n_other; ++line) {
            const std::size_t base = line * line_stride;
            for (std::size_t i = 0; i < n; ++i) {
                // The weights sum to exactly zero, so applying them to
                // differences against the evaluation node is algebraically
                // identical but makes constants differentiate to exactly 0.
                GridFn::value_type acc = 0.0;
                if (mode == BoundaryMode::periodic) {
                    // Last node is identified with the first (period n-1).
                    const long period = static_cast<long>(n) - 1;
                    const GridFn::value_type uc =
                        in[base + static_cast<std::size_t>(
                                      static_cast<long>(i) % period) * stride];
                    for (std::size_t j = 0; j < w; ++j) {
                        const long off = static_cast<long>(j) - static_cast<long>(centre);
                        long idx = (static_cast<long>(i) + off) % period;
                        if (idx < 0) idx += period;
                        acc += wts[centre][j] *
                               (in[base + static_cast<std::size_t>(idx) * stride] - uc);
                    }
                } else {
                    const std::size_t s =
                        (i < centre) ? 0 : std::min(i - centre, n - w);
                    const std::size_t p = i - s;
                    const GridFn::value_type uc = in[base + i * stride];
                    for (std::size_t j = 0; j < w; ++j)
                        acc += wts[p][j] * (in[base + (s + j) * stride] - uc);
                }
                out[k][base + i * stride] = acc * scale;
            }
        }
    }
    return GridFn(u.grid(), u.eps(), std::move(out));
}

}  // namespace gf
