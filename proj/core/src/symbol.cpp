#include "gf/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gf/fft.hpp"
#include "gf/valuation.hpp"

namespace gf {

namespace {

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

// Sampling resolutions of the seminorm and ellipticity scans. Coarser in
// 2-d, where the sampled product region grows with the fourth power.
constexpr std::size_t kClassX1d = 33;
constexpr std::size_t kClassX2d = 9;
constexpr std::size_t kClassMags1d = 17;
constexpr std::size_t kClassMags2d = 9;
constexpr std::size_t kClassAngles2d = 8;
constexpr std::size_t kEllX1d = 17;
constexpr std::size_t kEllX2d = 9;
constexpr std::size_t kEllMags = 33;
constexpr std::size_t kEllAngles2d = 9;

// Relative finite-difference steps and the relative magnitude below which
// a symbol value counts as a zero of the ellipticity scan.
constexpr double kFdRel = 1e-3;
constexpr double kVanishRel = 1e-12;
constexpr int kMaxAxisOrder = 3;

struct Stencil {
    int half;
    std::array<double, 5> w;  // weights at offsets -half .. +half
};

const Stencil& central_stencil(int order) {
    static const Stencil s1{1, {-0.5, 0.0, 0.5, 0.0, 0.0}};
    static const Stencil s2{1, {1.0, -2.0, 1.0, 0.0, 0.0}};
    static const Stencil s3{2, {-0.5, 1.0, 0.0, -1.0, 0.5}};
    switch (order) {
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        default: throw std::invalid_argument("central_stencil: order must be 1..3");
    }
}

// Tensor-product central difference of the symbol at (x, xi): logical axes
// 0,1 are spatial, 2,3 are frequency; ord[i] is the derivative order and
// step[i] the step along axis i.
std::complex<double> symbol_fd(const SymbolNet& a, std::size_t k,
                               const std::array<double, 2>& x,
                               const std::array<double, 2>& xi,
                               const std::array<int, 4>& ord,
                               const std::array<double, 4>& step, int axis) {
    while (axis < 4 && ord[axis] == 0) ++axis;
    if (axis == 4) return a(k, x, xi);

    const Stencil& st = central_stencil(ord[axis]);
    std::array<int, 4> rest = ord;
    rest[axis] = 0;
    std::complex<double> acc{0.0, 0.0};
    for (int off = -st.half; off <= st.half; ++off) {
        const double w = st.w[static_cast<std::size_t>(off + st.half)];
        if (w == 0.0) continue;
        std::array<double, 2> xs = x;
        std::array<double, 2> xis = xi;
        if (axis < 2)
            xs[static_cast<std::size_t>(axis)] += off * step[static_cast<std::size_t>(axis)];
        else
            xis[static_cast<std::size_t>(axis - 2)] +=
                off * step[static_cast<std::size_t>(axis)];
        acc += w * symbol_fd(a, k, xs, xis, rest, step, axis + 1);
    }
    return acc / std::pow(step[static_cast<std::size_t>(axis)], ord[axis]);
}

std::vector<double> geometric_ladder(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    const double ratio = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo * std::exp(ratio * static_cast<double>(i));
    out.front() = lo;
    out.back() = hi;
    return out;
}

// Multi-indices with |alpha| <= total_max and per-axis order <= kMaxAxisOrder.
std::vector<std::array<int, 2>> multi_indices(int dim, int total_max) {
    std::vector<std::array<int, 2>> out;
    if (dim == 1) {
        for (int a = 0; a <= total_max; ++a) out.push_back({a, 0});
        return out;
    }
    for (int t = 0; t <= total_max; ++t)
        for (int a0 = 0; a0 <= std::min(t, kMaxAxisOrder); ++a0) {
            const int a1 = t - a0;
            if (a1 <= kMaxAxisOrder) out.push_back({a0, a1});
        }
    return out;
}

void validate_band(const FreqBand& band, const char* who) {
    if (!(band.lo > 0.0) || !(band.hi > band.lo))
        throw std::invalid_argument(std::string(who) +
                                    ": frequency band requires 0 < lo < hi");
}

std::vector<double> real_net(const ScaleFn& s, const EpsGrid& eps) {
    const GenNumber g = s.sample(eps);  // validates strict positivity
    std::vector<double> out(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) out[k] = g[k].real();
    return out;
}

}  // namespace

double xi_bracket(const std::array<double, 2>& xi, int dim) {
    const double q = (dim == 1) ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
    return std::sqrt(1.0 + q);
}

SymbolNet::SymbolNet(EpsGrid eps, int dim, double order, Eval eval, std::string name,
                     bool x_independent)
    : eps_(std::move(eps)),
      dim_(dim),
      order_(order),
      eval_(std::move(eval)),
      name_(std::move(name)),
      x_independent_(x_independent) {
    if (dim_ != 1 && dim_ != 2)
        throw std::invalid_argument("SymbolNet: dimension must be 1 or 2");
    if (!std::isfinite(order_))
        throw std::invalid_argument("SymbolNet: order must be finite");
    if (!eval_) throw std::invalid_argument("SymbolNet: evaluator must be callable");
}

SymbolNet SymbolNet::scaled_bracket(const EpsGrid& eps, const ScaleFn& omega) {
    std::vector<double> w = real_net(omega, eps);
    return SymbolNet(
        eps, 1, 1.0,
        [w](std::size_t k, const std::array<double, 2>&, const std::array<double, 2>& xi) {
            return std::complex<double>(w[k] * xi_bracket(xi, 1), 0.0);
        },
        "omega*<xi> [omega=" + omega.tag() + "]", true);
}

SymbolNet SymbolNet::one_plus_cx2(const EpsGrid& eps, const ScaleFn& c) {
    std::vector<double> cv = real_net(c, eps);
    return SymbolNet(
        eps, 1, 0.0,
        [cv](std::size_t k, const std::array<double, 2>& x, const std::array<double, 2>&) {
            return std::complex<double>(1.0 + cv[k] * x[0] * x[0], 0.0);
        },
        "1+c*x^2 [c=" + c.tag() + "]", false);
}

SymbolNet SymbolNet::multiplier_ixi(const EpsGrid& eps) {
    return SymbolNet(
        eps, 1, 1.0,
        [](std::size_t, const std::array<double, 2>&, const std::array<double, 2>& xi) {
            return std::complex<double>(0.0, xi[0]);
        },
        "multiplier:i*xi", true);
}

SymbolNet SymbolNet::transport_principal(const EpsGrid& eps, const ScaleFn& gamma,
                                         const Mollifier& m) {
    std::vector<double> g = real_net(gamma, eps);
    const Mollifier* mol = &m;
    return SymbolNet(
        eps, 2, 1.0,
        [g, mol](std::size_t k, const std::array<double, 2>& x,
                 const std::array<double, 2>& xi) {
            const double theta = 1.0 - mol->cdf(g[k] * x[0]);
            return std::complex<double>(xi[1] + theta * xi[0], 0.0);
        },
        "transport:tau+theta*xi [gamma=" + gamma.tag() + "]", false);
}

SymbolNet SymbolNet::from_name(const std::string& family, const EpsGrid& eps,
                               const ScaleFn& param) {
    if (family == "1+c*x^2") return one_plus_cx2(eps, param);
    if (family == "transport:tau+theta*xi") return transport_principal(eps, param);
    if (family == "multiplier:i*xi") return multiplier_ixi(eps);
    if (family == "omega*<xi>") return scaled_bracket(eps, param);
    throw std::invalid_argument("SymbolNet: unknown family '" + family + "'");
}

bool check_symbol_class(const SymbolNet& a, const Box& K, int alpha_max, int beta_max,
                        const FreqBand& band) {
    const int dim = a.dim();
    validate_band(band, "check_symbol_class");
    if (alpha_max < 0 || beta_max < 0 || alpha_max > kMaxAxisOrder * dim ||
        beta_max > kMaxAxisOrder * dim)
        throw std::invalid_argument(
            "check_symbol_class: derivative totals must lie in 0.." +
            std::to_string(kMaxAxisOrder * dim));
    for (int d = 0; d < dim; ++d)
        if (!(K.lo[static_cast<std::size_t>(d)] < K.hi[static_cast<std::size_t>(d)]))
            throw std::invalid_argument("check_symbol_class: empty window");

    // Spatial lattice over K.
    std::vector<std::array<double, 2>> xs;
    const std::size_t nx = (dim == 1) ? kClassX1d : kClassX2d;
    if (dim == 1) {
        const double step = (K.hi[0] - K.lo[0]) / static_cast<double>(nx - 1);
        for (std::size_t i = 0; i < nx; ++i)
            xs.push_back({K.lo[0] + step * static_cast<double>(i), 0.0});
    } else {
        const double s0 = (K.hi[0] - K.lo[0]) / static_cast<double>(nx - 1);
        const double s1 = (K.hi[1] - K.lo[1]) / static_cast<double>(nx - 1);
        for (std::size_t i1 = 0; i1 < nx; ++i1)
            for (std::size_t i0 = 0; i0 < nx; ++i0)
                xs.push_back({K.lo[0] + s0 * static_cast<double>(i0),
                              K.lo[1] + s1 * static_cast<double>(i1)});
    }

    // Frequency samples: geometric magnitudes times a fixed direction set.
    const std::vector<double> mags = geometric_ladder(
        band.lo, band.hi, (dim == 1) ? kClassMags1d : kClassMags2d);
    std::vector<std::array<double, 2>> dirs;
    if (dim == 1) {
        dirs.push_back({1.0, 0.0});
        dirs.push_back({-1.0, 0.0});
    } else {
        for (std::size_t i = 0; i < kClassAngles2d; ++i) {
            const double phi =
                2.0 * M_PI * static_cast<double>(i) / static_cast<double>(kClassAngles2d);
            dirs.push_back({std::cos(phi), std::sin(phi)});
        }
    }

    const std::vector<std::array<int, 2>> alphas = multi_indices(dim, alpha_max);
    const std::vector<std::array<int, 2>> betas = multi_indices(dim, beta_max);
    const EpsGrid& eps = a.eps();
    const double m = a.order();

    std::vector<double> gmax(eps.size(), 0.0);
    for (const auto& alpha : alphas) {
        for (const auto& beta : betas) {
            const int atot = alpha[0] + alpha[1];
            const std::array<int, 4> ord{beta[0], beta[1], alpha[0], alpha[1]};
            for (std::size_t k = 0; k < eps.size(); ++k) {
                double sup = 0.0;
                for (const auto& x : xs) {
                    for (double mag : mags) {
                        const double br = std::sqrt(1.0 + mag * mag);
                        const double weight = std::pow(br, -m + static_cast<double>(atot));
                        for (const auto& d : dirs) {
                            const std::array<double, 2> xi{mag * d[0], mag * d[1]};
                            const std::array<double, 4> step{
                                kFdRel * (1.0 + std::abs(x[0])),
                                kFdRel * (1.0 + std::abs(x[1])), kFdRel * br,
                                kFdRel * br};
                            const std::complex<double> v =
                                symbol_fd(a, k, x, xi, ord, step, 0);
                            sup = std::max(sup, weight * std::abs(v));
                        }
                    }
                }
                gmax[k] = std::max(gmax[k], sup);
            }
        }
    }

    if (std::all_of(gmax.begin(), gmax.end(), [](double v) { return v == 0.0; }))
        return true;  // the zero symbol sits in every class
    std::vector<std::complex<double>> vals(gmax.begin(), gmax.end());
    return is_slow_scale(GenNumber(eps, std::move(vals)));
}

EllipticityReport micro_elliptic(const SymbolNet& a, const std::array<double, 2>& x0,
                                 const std::array<double, 2>& xi0, double u_radius,
                                 double cone_angle, const FreqBand& band) {
    const int dim = a.dim();
    validate_band(band, "micro_elliptic");
    if (!(u_radius > 0.0))
        throw std::invalid_argument("micro_elliptic: window radius must be positive");
    if (!(cone_angle > 0.0) || !(cone_angle < M_PI / 2.0))
        throw std::invalid_argument(
            "micro_elliptic: cone half-angle must lie in (0, pi/2)");
    const double xi_norm =
        (dim == 1) ? std::abs(xi0[0]) : std::hypot(xi0[0], xi0[1]);
    if (!(xi_norm > 0.0))
        throw std::invalid_argument("micro_elliptic: direction must be nonzero");

    // Spatial samples in the ball around x0.
    std::vector<std::array<double, 2>> xs;
    if (dim == 1) {
        const double step = 2.0 * u_radius / static_cast<double>(kEllX1d - 1);
        for (std::size_t i = 0; i < kEllX1d; ++i)
            xs.push_back({x0[0] - u_radius + step * static_cast<double>(i), 0.0});
    } else {
        const double step = 2.0 * u_radius / static_cast<double>(kEllX2d - 1);
        for (std::size_t i1 = 0; i1 < kEllX2d; ++i1)
            for (std::size_t i0 = 0; i0 < kEllX2d; ++i0) {
                const double px = x0[0] - u_radius + step * static_cast<double>(i0);
                const double py = x0[1] - u_radius + step * static_cast<double>(i1);
                if (std::hypot(px - x0[0], py - x0[1]) <= u_radius + 1e-12)
                    xs.push_back({px, py});
            }
    }

    // Directions across the cone section.
    std::vector<std::array<double, 2>> dirs;
    if (dim == 1) {
        dirs.push_back({xi0[0] > 0.0 ? 1.0 : -1.0, 0.0});
    } else {
        const double base = std::atan2(xi0[1], xi0[0]);
        for (std::size_t i = 0; i < kEllAngles2d; ++i) {
            const double phi = base - cone_angle +
                               2.0 * cone_angle * static_cast<double>(i) /
                                   static_cast<double>(kEllAngles2d - 1);
            dirs.push_back({std::cos(phi), std::sin(phi)});
        }
    }

    const std::vector<double> mags = geometric_ladder(band.lo, band.hi, kEllMags);
    const EpsGrid& eps = a.eps();
    const double m = a.order();
    const std::size_t npts = xs.size() * dirs.size();

    std::vector<std::complex<double>> r_vals(eps.size());
    std::vector<std::complex<double>> s_vals(eps.size());
    bool admissible = true;
    std::string diagnostic;

    for (std::size_t k = 0; k < eps.size(); ++k) {
        // Tabulate the symbol on all rings of the cone section.
        std::vector<std::vector<std::complex<double>>> ring(kEllMags);
        std::vector<double> thr(kEllMags);
        std::vector<char> ok(kEllMags, 1);
        for (std::size_t j = 0; j < kEllMags; ++j) {
            const double br = std::sqrt(1.0 + mags[j] * mags[j]);
            thr[j] = kVanishRel * std::pow(br, m);
            ring[j].resize(npts);
            std::size_t p = 0;
            for (const auto& x : xs)
                for (const auto& d : dirs)
                    ring[j][p++] = a(k, x, {mags[j] * d[0], mags[j] * d[1]});
        }

        // Zeros by magnitude, by sign change along the cone arc, and by
        // sign change along each ray of the magnitude ladder.
        for (std::size_t j = 0; j < kEllMags; ++j) {
            for (std::size_t p = 0; p < npts && ok[j]; ++p)
                if (std::abs(ring[j][p]) <= thr[j]) ok[j] = 0;
            if (dim == 2) {
                for (std::size_t xi_i = 0; xi_i < xs.size() && ok[j]; ++xi_i)
                    for (std::size_t ai = 0; ai + 1 < dirs.size(); ++ai) {
                        const auto va = ring[j][xi_i * dirs.size() + ai];
                        const auto vb = ring[j][xi_i * dirs.size() + ai + 1];
                        if (va.real() * vb.real() < 0.0 &&
                            std::abs(va.imag()) <= thr[j] &&
                            std::abs(vb.imag()) <= thr[j]) {
                            ok[j] = 0;
                            break;
                        }
                    }
            }
        }
        for (std::size_t j = 0; j + 1 < kEllMags; ++j)
            for (std::size_t p = 0; p < npts; ++p) {
                const auto va = ring[j][p];
                const auto vb = ring[j + 1][p];
                if (va.real() * vb.real() < 0.0 && std::abs(va.imag()) <= thr[j] &&
                    std::abs(vb.imag()) <= thr[j + 1]) {
                    ok[j] = 0;
                    ok[j + 1] = 0;
                }
            }

        // Smallest radius whose whole tail is zero-free.
        std::size_t first_good = kEllMags;
        for (std::size_t j = kEllMags; j-- > 0;) {
            if (!ok[j]) break;
            first_good = j;
        }
        if (first_good == kEllMags) {
            admissible = false;
            if (diagnostic.empty())
                diagnostic = "no zero-free cone tail inside the band at eps index " +
                             std::to_string(k) + " (eps=" + num17(eps[k]) + ")";
            r_vals[k] = band.hi;
            s_vals[k] = 0.0;
            continue;
        }
        double s = 0.0;
        for (std::size_t j = first_good; j < kEllMags; ++j) {
            const double br = std::sqrt(1.0 + mags[j] * mags[j]);
            const double w = std::pow(br, m);
            for (std::size_t p = 0; p < npts; ++p)
                s = std::max(s, w / std::abs(ring[j][p]));
        }
        r_vals[k] = mags[first_good];
        s_vals[k] = s;
    }

    GenNumber r_net(eps, std::move(r_vals));
    GenNumber s_net(eps, std::move(s_vals));
    bool r_slow = false;
    bool s_slow = false;
    if (admissible) {
        r_slow = is_slow_scale(r_net);
        s_slow = is_slow_scale(s_net);
        if (!r_slow && diagnostic.empty())
            diagnostic = "lower-radius net grows faster than any slow scale";
        if (!s_slow && diagnostic.empty())
            diagnostic = "bound net grows faster than any slow scale";
    }
    const bool verdict = admissible && r_slow && s_slow;

    return EllipticityReport{x0,     xi0,    u_radius,   cone_angle,
                             band,   m,      std::move(r_net), std::move(s_net),
                             r_slow, s_slow, admissible, verdict,
                             std::move(diagnostic)};
}

void ell_write_csv(std::ostream& os, const EllipticityReport& report) {
    os << "k,eps,r,s,admissible\n";
    const EpsGrid& eps = report.r_net.grid();
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double s = report.s_net[k].real();
        os << k << ',' << num17(eps[k]) << ',' << num17(report.r_net[k].real()) << ','
           << num17(s) << ',' << (s > 0.0 ? 1 : 0) << '\n';
    }
}

GridFn quantize_apply(const SymbolNet& a, const GridFn& u) {
    const SpatialGrid& grid = u.grid();
    if (a.dim() != grid.dim())
        throw std::invalid_argument("quantize_apply: dimension mismatch");
    if (a.eps() != u.eps())
        throw std::invalid_argument("quantize_apply: eps grids differ");

    const int dim = grid.dim();
    const std::size_t n0 = grid.axis(0).n;
    const std::size_t n1 = (dim == 2) ? grid.axis(1).n : 1;
    const std::size_t n = n0 * n1;
    const double h0 = grid.axis(0).h();
    const double h1 = (dim == 2) ? grid.axis(1).h() : h0;

    // Signed frequencies of the DFT bins, treating the grid as one period.
    auto freq = [](std::size_t j, std::size_t nn, double h) {
        const double js = (j > nn / 2) ? static_cast<double>(j) - static_cast<double>(nn)
                                       : static_cast<double>(j);
        return 2.0 * M_PI * js / (static_cast<double>(nn) * h);
    };
    double f_cut = defaults::f_hi_fraction * (M_PI / h0);
    if (dim == 2) f_cut = std::min(f_cut, defaults::f_hi_fraction * (M_PI / h1));

    std::vector<std::vector<std::complex<double>>> out(u.eps().size());
    for (std::size_t k = 0; k < u.eps().size(); ++k) {
        const auto& in = u.samples(k);
        std::vector<std::complex<double>> hat =
            (dim == 1) ? fft_forward_1d(in) : fft_forward_2d(in, n0, n1);

        if (a.x_independent()) {
            for (std::size_t j1 = 0; j1 < n1; ++j1)
                for (std::size_t j0 = 0; j0 < n0; ++j0) {
                    const double xi0 = freq(j0, n0, h0);
                    const double xi1 = (dim == 2) ? freq(j1, n1, h1) : 0.0;
                    const double mag = (dim == 2) ? std::hypot(xi0, xi1) : std::abs(xi0);
                    auto& v = hat[j1 * n0 + j0];
                    v = (mag <= f_cut) ? v * a(k, {0.0, 0.0}, {xi0, xi1})
                                       : std::complex<double>(0.0, 0.0);
                }
            std::vector<std::complex<double>> back =
                (dim == 1) ? fft_inverse_1d(hat) : fft_inverse_2d(hat, n0, n1);
            for (auto& v : back) v /= static_cast<double>(n);
            out[k] = std::move(back);
            continue;
        }

        // x-dependent symbols: apply the multiplier bin by bin at every
        // node (quadratic in the node count; intended for modest grids).
        std::vector<std::complex<double>> tw0(n0), tw1(n1);
        for (std::size_t t = 0; t < n0; ++t)
            tw0[t] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(t) /
                                         static_cast<double>(n0));
        for (std::size_t t = 0; t < n1; ++t)
            tw1[t] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(t) /
                                         static_cast<double>(n1));

        struct Bin {
            std::size_t j0, j1;
            std::array<double, 2> xi;
            std::complex<double> hat;
        };
        std::vector<Bin> bins;
        for (std::size_t j1 = 0; j1 < n1; ++j1)
            for (std::size_t j0 = 0; j0 < n0; ++j0) {
                const double xi0 = freq(j0, n0, h0);
                const double xi1 = (dim == 2) ? freq(j1, n1, h1) : 0.0;
                const double mag = (dim == 2) ? std::hypot(xi0, xi1) : std::abs(xi0);
                if (mag <= f_cut)
                    bins.push_back(Bin{j0, j1, {xi0, xi1}, hat[j1 * n0 + j0]});
            }

        std::vector<std::complex<double>> v(n);
        for (std::size_t p1 = 0; p1 < n1; ++p1)
            for (std::size_t p0 = 0; p0 < n0; ++p0) {
                const std::array<double, 2> x = grid.coords(grid.index(p0, p1));
                std::complex<double> acc{0.0, 0.0};
                for (const Bin& b : bins) {
                    const std::complex<double> phase =
                        tw0[(p0 * b.j0) % n0] * ((dim == 2) ? tw1[(p1 * b.j1) % n1]
                                                            : std::complex<double>(1.0));
                    acc += a(k, x, b.xi) * b.hat * phase;
                }
                v[grid.index(p0, p1)] = acc / static_cast<double>(n);
            }
        out[k] = std::move(v);
    }
    return GridFn(grid, u.eps(), std::move(out));
}

GInftyReport nonchar_example(const ScaleFn& c_spec, int alpha_max) {
    if (alpha_max < 1)
        throw std::invalid_argument("nonchar_example: alpha_max must be at least 1");
    const EpsGrid eps = make_dyadic_grid(4, 19);
    const std::vector<double> c = real_net(c_spec, eps);
    const SpatialGrid grid(GridAxis{-1.0, 1.0, 16385});
    const GridFn u = GridFn::from_function(
        grid, eps,
        [&c](std::size_t k, const std::array<double, 2>& p) {
            return std::complex<double>(1.0 / (1.0 + c[k] * p[0] * p[0]), 0.0);
        });
    return is_ginfty(u, Box::interval(-0.5, 0.5), alpha_max);
}

}  // namespace gf
