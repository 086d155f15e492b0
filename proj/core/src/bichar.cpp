#include "gf/bichar.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "gf/svg.hpp"
#include "gf/valuation.hpp"

namespace gf {

namespace {

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

constexpr double kFdStepRel = 1e-5;
constexpr double kConstEqTol = 1e-14;

double xi_norm(const std::array<double, 2>& xi, int dim) {
    return (dim == 1) ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
}

struct State {
    std::array<double, 2> x{0.0, 0.0};
    std::array<double, 2> xi{0.0, 0.0};
    double tau = 0.0;
};

State derivs(const CoeffField& c, std::size_t k, double t, const State& s) {
    const int dim = c.dim();
    State d;
    for (int j = 0; j < dim; ++j) d.x[static_cast<std::size_t>(j)] = c.a(k, j, s.x, t);
    for (int i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (int j = 0; j < dim; ++j)
            acc -= c.dx_a(k, j, i, s.x, t) * s.xi[static_cast<std::size_t>(j)];
        d.xi[static_cast<std::size_t>(i)] = acc;
    }
    double dtau = 0.0;
    if (c.time_dependent())
        for (int j = 0; j < dim; ++j)
            dtau -= c.dt_a(k, j, s.x, t) * s.xi[static_cast<std::size_t>(j)];
    d.tau = dtau;
    return d;
}

State axpy(const State& s, double h, const State& d) {
    State out = s;
    for (std::size_t i = 0; i < 2; ++i) {
        out.x[i] += h * d.x[i];
        out.xi[i] += h * d.xi[i];
    }
    out.tau += h * d.tau;
    return out;
}

State rk4_step(const CoeffField& c, std::size_t k, double t, double dt,
               const State& s) {
    const State k1 = derivs(c, k, t, s);
    const State k2 = derivs(c, k, t + dt / 2.0, axpy(s, dt / 2.0, k1));
    const State k3 = derivs(c, k, t + dt / 2.0, axpy(s, dt / 2.0, k2));
    const State k4 = derivs(c, k, t + dt, axpy(s, dt, k3));
    State out = s;
    for (std::size_t i = 0; i < 2; ++i) {
        out.x[i] += dt / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
        out.xi[i] += dt / 6.0 * (k1.xi[i] + 2.0 * k2.xi[i] + 2.0 * k3.xi[i] + k4.xi[i]);
    }
    out.tau += dt / 6.0 * (k1.tau + 2.0 * k2.tau + 2.0 * k3.tau + k4.tau);
    return out;
}

struct Trajectory {
    std::vector<State> samples;  // may stop early at the blow-up guard
    double trunc_time = -1.0;
};

// Integrates n_steps of size dt, keeping every `keep`-th sample.
Trajectory run_eps(const CoeffField& c, std::size_t k, const State& init,
                   std::size_t n_steps, double dt, std::size_t keep) {
    Trajectory tr;
    tr.samples.reserve(n_steps / keep + 1);
    tr.samples.push_back(init);
    State s = init;
    for (std::size_t i = 0; i < n_steps; ++i) {
        s = rk4_step(c, k, dt * static_cast<double>(i), dt, s);
        const bool last_kept = ((i + 1) % keep == 0);
        if (last_kept) tr.samples.push_back(s);
        if (xi_norm(s.xi, c.dim()) > defaults::blowup_guard) {
            if (!last_kept) tr.samples.push_back(s);
            tr.trunc_time = dt * static_cast<double>(i + 1);
            break;
        }
    }
    return tr;
}

void parallel_over(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    const std::size_t n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

std::vector<double> scale_values(const ScaleFn& s, const EpsGrid& eps) {
    const GenNumber g = s.sample(eps);
    std::vector<double> out(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) out[k] = g[k].real();
    return out;
}

}  // namespace

CoeffField::CoeffField(EpsGrid eps, int dim, std::vector<Coef> a, std::string name)
    : eps_(std::move(eps)), dim_(dim), a_(std::move(a)), name_(std::move(name)) {
    if (dim_ != 1 && dim_ != 2)
        throw std::invalid_argument("CoeffField: dimension must be 1 or 2");
    if (a_.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("CoeffField: one coefficient per dimension");
    for (const auto& f : a_)
        if (!f) throw std::invalid_argument("CoeffField: evaluator must be callable");
}

CoeffField& CoeffField::with_dx(std::vector<std::array<Coef, 2>> dx) {
    if (dx.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("CoeffField: one derivative row per coefficient");
    for (const auto& row : dx)
        for (int i = 0; i < dim_; ++i)
            if (!row[static_cast<std::size_t>(i)])
                throw std::invalid_argument("CoeffField: derivative must be callable");
    dx_ = std::move(dx);
    return *this;
}

CoeffField& CoeffField::with_dt(std::vector<Coef> dt) {
    if (dt.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("CoeffField: one time derivative per coefficient");
    dt_ = std::move(dt);
    time_dependent_ = true;
    return *this;
}

CoeffField& CoeffField::with_a0(Coef a0) {
    if (!a0) throw std::invalid_argument("CoeffField: a0 must be callable");
    a0_ = std::move(a0);
    return *this;
}

CoeffField& CoeffField::with_constant_outside(double radius) {
    if (radius < 0.0)
        throw std::invalid_argument("CoeffField: radius must be nonnegative");
    constant_outside_ = true;
    outside_radius_ = radius;
    return *this;
}

CoeffField& CoeffField::with_log_type() {
    log_type_ = true;
    return *this;
}

CoeffField CoeffField::constant(const EpsGrid& eps, int dim,
                                const std::array<double, 2>& vals,
                                const std::string& name) {
    std::vector<Coef> a;
    std::vector<std::array<Coef, 2>> dx;
    const Coef zero = [](std::size_t, const std::array<double, 2>&, double) {
        return 0.0;
    };
    for (int j = 0; j < dim; ++j) {
        const double v = vals[static_cast<std::size_t>(j)];
        a.push_back([v](std::size_t, const std::array<double, 2>&, double) { return v; });
        dx.push_back({zero, zero});
    }
    CoeffField c(eps, dim, std::move(a), name);
    c.with_dx(std::move(dx)).with_constant_outside(0.0).with_log_type();
    return c;
}

CoeffField CoeffField::linear(const EpsGrid& eps) {
    std::vector<Coef> a;
    a.push_back(
        [](std::size_t, const std::array<double, 2>& x, double) { return x[0]; });
    std::vector<std::array<Coef, 2>> dx(1);
    dx[0][0] = [](std::size_t, const std::array<double, 2>&, double) { return 1.0; };
    dx[0][1] = [](std::size_t, const std::array<double, 2>&, double) { return 0.0; };
    CoeffField c(eps, 1, std::move(a), "linear");
    c.with_dx(std::move(dx)).with_log_type();
    return c;
}

CoeffField CoeffField::smooth_bump(const EpsGrid& eps) {
    std::vector<Coef> a;
    a.push_back([](std::size_t, const std::array<double, 2>& x, double) {
        return 1.0 + std::exp(-x[0] * x[0]);
    });
    std::vector<std::array<Coef, 2>> dx(1);
    dx[0][0] = [](std::size_t, const std::array<double, 2>& x, double) {
        return -2.0 * x[0] * std::exp(-x[0] * x[0]);
    };
    dx[0][1] = [](std::size_t, const std::array<double, 2>&, double) { return 0.0; };
    CoeffField c(eps, 1, std::move(a), "smooth-bump");
    c.with_dx(std::move(dx)).with_log_type();
    return c;
}

CoeffField CoeffField::hs_theta(const EpsGrid& eps, const ScaleFn& gamma,
                                const Mollifier& m) {
    const std::vector<double> g = scale_values(gamma, eps);
    const Mollifier* mol = &m;
    std::vector<Coef> a;
    a.push_back([g, mol](std::size_t k, const std::array<double, 2>& x, double) {
        return 1.0 - mol->cdf(g[k] * x[0]);
    });
    std::vector<std::array<Coef, 2>> dx(1);
    dx[0][0] = [g, mol](std::size_t k, const std::array<double, 2>& x, double) {
        return -g[k] * mol->rho(g[k] * x[0]);
    };
    dx[0][1] = [](std::size_t, const std::array<double, 2>&, double) { return 0.0; };
    CoeffField c(eps, 1, std::move(a), "hs-theta [gamma=" + gamma.tag() + "]");
    c.with_dx(std::move(dx))
        .with_constant_outside(1.0 / *std::min_element(g.begin(), g.end()));
    // The declared growth class follows the scale: gamma within a bounded
    // multiple of log(1/eps) makes sup|d_x a| = gamma * rho(0) log-type.
    std::vector<GenNumber::value_type> ratio(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k)
        ratio[k] = g[k] / std::log(1.0 / eps[k]);
    const ValuationEstimate v = estimate_valuation(GenNumber(eps, std::move(ratio)));
    if (v.infinite || v.b_hat >= -defaults::fit_tol) c.with_log_type();
    return c;
}

double CoeffField::a(std::size_t k, int j, const std::array<double, 2>& x,
                     double t) const {
    return a_[static_cast<std::size_t>(j)](k, x, t);
}

double CoeffField::a0(std::size_t k, const std::array<double, 2>& x, double t) const {
    return a0_ ? a0_(k, x, t) : 0.0;
}

double CoeffField::dx_a(std::size_t k, int j, int i, const std::array<double, 2>& x,
                        double t) const {
    if (!dx_.empty())
        return dx_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)](k, x, t);
    const double h = kFdStepRel * (1.0 + std::abs(x[static_cast<std::size_t>(i)]));
    std::array<double, 2> xp = x, xm = x;
    xp[static_cast<std::size_t>(i)] += h;
    xm[static_cast<std::size_t>(i)] -= h;
    return (a(k, j, xp, t) - a(k, j, xm, t)) / (2.0 * h);
}

double CoeffField::dt_a(std::size_t k, int j, const std::array<double, 2>& x,
                        double t) const {
    if (!time_dependent_) return 0.0;
    if (!dt_.empty()) return dt_[static_cast<std::size_t>(j)](k, x, t);
    const double h = kFdStepRel * (1.0 + std::abs(t));
    return (a(k, j, x, t + h) - a(k, j, x, t - h)) / (2.0 * h);
}

FieldCheck verify_field(const CoeffField& c, const Box& window) {
    const EpsGrid& eps = c.eps();
    const int dim = c.dim();

    bool const_ok = true;
    if (c.constant_outside()) {
        const double R = c.outside_radius();
        const std::array<double, 3> offsets{0.0, 1.0, 2.5};
        for (std::size_t k = 0; k < eps.size() && const_ok; ++k)
            for (int j = 0; j < dim && const_ok; ++j)
                for (int d = 0; d < dim && const_ok; ++d)
                    for (double side : {1.0, -1.0}) {
                        std::array<double, 2> base{0.0, 0.0};
                        base[static_cast<std::size_t>(d)] = side * R;
                        const double ref = c.a(k, j, base, 0.0);
                        for (double off : offsets) {
                            std::array<double, 2> p = base;
                            p[static_cast<std::size_t>(d)] += side * off;
                            if (std::abs(c.a(k, j, p, 0.0) - ref) >
                                kConstEqTol * (1.0 + std::abs(ref))) {
                                const_ok = false;
                                break;
                            }
                        }
                    }
    }

    // Derivative and zero-order sup net over the window lattice.
    const std::size_t n_side = (dim == 1) ? 129 : 33;
    std::vector<std::array<double, 2>> pts;
    if (dim == 1) {
        const double step = (window.hi[0] - window.lo[0]) / static_cast<double>(n_side - 1);
        for (std::size_t i = 0; i < n_side; ++i)
            pts.push_back({window.lo[0] + step * static_cast<double>(i), 0.0});
    } else {
        const double s0 = (window.hi[0] - window.lo[0]) / static_cast<double>(n_side - 1);
        const double s1 = (window.hi[1] - window.lo[1]) / static_cast<double>(n_side - 1);
        for (std::size_t i1 = 0; i1 < n_side; ++i1)
            for (std::size_t i0 = 0; i0 < n_side; ++i0)
                pts.push_back({window.lo[0] + s0 * static_cast<double>(i0),
                               window.lo[1] + s1 * static_cast<double>(i1)});
    }
    std::vector<GenNumber::value_type> sup(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        double g = 0.0;
        for (const auto& p : pts) {
            for (int j = 0; j < dim; ++j)
                for (int i = 0; i < dim; ++i)
                    g = std::max(g, std::abs(c.dx_a(k, j, i, p, 0.0)));
            g = std::max(g, std::abs(c.a0(k, p, 0.0)));
        }
        sup[k] = g;
    }
    GenNumber net(eps, std::move(sup));

    bool log_ok = true;
    if (c.log_type()) {
        bool all_zero = true;
        for (std::size_t k = 0; k < eps.size(); ++k)
            if (net[k].real() != 0.0) all_zero = false;
        if (!all_zero) {
            std::vector<GenNumber::value_type> ratio(eps.size());
            for (std::size_t k = 0; k < eps.size(); ++k)
                ratio[k] = net[k].real() / std::log(1.0 / eps[k]);
            const ValuationEstimate v =
                estimate_valuation(GenNumber(eps, std::move(ratio)));
            log_ok = v.infinite || v.b_hat >= -defaults::fit_tol;
        }
    }
    return FieldCheck{const_ok, log_ok, std::move(net)};
}

BicharCurve integrate_bichar(const CoeffField& c, const std::array<double, 2>& x0,
                             const std::array<double, 2>& xi0, double tau0,
                             double t_end, double dt, bool waive_nullity, int jobs) {
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate_bichar: t_end must be positive");
    if (!(dt > 0.0) || dt > t_end)
        throw std::invalid_argument("integrate_bichar: dt must lie in (0, t_end]");
    const EpsGrid& eps = c.eps();
    const int dim = c.dim();

    if (!waive_nullity) {
        const double scale = 1.0 + xi_norm(xi0, dim);
        for (std::size_t k = 0; k < eps.size(); ++k) {
            double q = tau0;
            for (int j = 0; j < dim; ++j)
                q += c.a(k, j, x0, 0.0) * xi0[static_cast<std::size_t>(j)];
            if (std::abs(q) > defaults::nullity_tol * scale)
                throw std::invalid_argument(
                    "integrate_bichar: initial data is not null at eps index " +
                    std::to_string(k) + " (q1 = " + num17(q) +
                    "); pass waive_nullity to integrate anyway");
        }
    }

    // A whole number of steps covering [0, t_end] exactly.
    const std::size_t n_steps = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(t_end / dt)));
    const double dt_eff = t_end / static_cast<double>(n_steps);

    BicharCurve b{eps,  dim,  {},   {}, {}, {}, x0,
                  xi0,  tau0, {},   {},
                  c.analytic_dx() ? "analytic" : "central-difference step 1e-5*(1+|x|)"};
    b.t.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i)
        b.t[i] = dt_eff * static_cast<double>(i);
    b.x.resize(eps.size());
    b.xi.resize(eps.size());
    b.tau.resize(eps.size());
    b.trunc_time.assign(eps.size(), -1.0);
    b.halving_err.assign(eps.size(), 0.0);

    const State init{x0, xi0, tau0};
    parallel_over(eps.size(), jobs, [&](std::size_t k) {
        const Trajectory coarse = run_eps(c, k, init, n_steps, dt_eff, 1);
        const Trajectory fine = run_eps(c, k, init, 2 * n_steps, dt_eff / 2.0, 2);
        const std::size_t n = coarse.samples.size();
        b.x[k].resize(n);
        b.xi[k].resize(n);
        b.tau[k].resize(n);
        double gap = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const State& s = coarse.samples[i];
            b.x[k][i] = s.x;
            b.xi[k][i] = s.xi;
            b.tau[k][i] = s.tau;
            if (i < fine.samples.size()) {
                const State& f = fine.samples[i];
                for (std::size_t dd = 0; dd < static_cast<std::size_t>(dim); ++dd) {
                    gap = std::max(gap, std::abs(s.x[dd] - f.x[dd]));
                    gap = std::max(gap, std::abs(s.xi[dd] - f.xi[dd]));
                }
                gap = std::max(gap, std::abs(s.tau - f.tau));
            }
        }
        b.trunc_time[k] = coarse.trunc_time;
        b.halving_err[k] = gap;
    });
    return b;
}

GenNumber null_residual(const BicharCurve& b, const CoeffField& c) {
    if (b.eps != c.eps())
        throw std::invalid_argument("null_residual: curve and field eps grids differ");
    std::vector<GenNumber::value_type> out(b.eps.size());
    for (std::size_t k = 0; k < b.eps.size(); ++k) {
        double worst = 0.0;
        for (std::size_t i = 0; i < b.x[k].size(); ++i) {
            double q = b.tau[k][i];
            for (int j = 0; j < b.dim; ++j)
                q += c.a(k, j, b.x[k][i], b.t[i]) *
                     b.xi[k][i][static_cast<std::size_t>(j)];
            worst = std::max(worst, std::abs(q));
        }
        out[k] = worst;
    }
    return GenNumber(b.eps, std::move(out));
}

GenNumber xi_sup_net(const BicharCurve& b) {
    std::vector<GenNumber::value_type> out(b.eps.size());
    for (std::size_t k = 0; k < b.eps.size(); ++k) {
        double worst = 0.0;
        for (const auto& xi : b.xi[k]) worst = std::max(worst, xi_norm(xi, b.dim));
        out[k] = worst;
    }
    return GenNumber(b.eps, std::move(out));
}

FlowSet hamilton_flow(const CoeffField& c, double t,
                      const std::vector<std::array<double, 2>>& x_pts,
                      const std::vector<std::array<double, 2>>& xi_pts, double dt,
                      int jobs) {
    if (x_pts.empty() || x_pts.size() != xi_pts.size())
        throw std::invalid_argument(
            "hamilton_flow: point lists must be nonempty and of equal length");
    if (t < 0.0) throw std::invalid_argument("hamilton_flow: time must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("hamilton_flow: dt must be positive");

    FlowSet f{c.eps(), c.dim(), t, x_pts, xi_pts, {}};
    f.image.assign(x_pts.size(), std::vector<FlowPoint>(c.eps().size()));
    if (t == 0.0) {
        for (std::size_t p = 0; p < x_pts.size(); ++p)
            for (std::size_t k = 0; k < c.eps().size(); ++k)
                f.image[p][k] = FlowPoint{x_pts[p], xi_pts[p], false};
        return f;
    }

    const std::size_t n_steps =
        static_cast<std::size_t>(std::max<long long>(1, std::llround(t / dt)));
    const double dt_eff = t / static_cast<double>(n_steps);
    const std::size_t n_eps = c.eps().size();

    parallel_over(x_pts.size() * n_eps, jobs, [&](std::size_t flat) {
        const std::size_t p = flat / n_eps;
        const std::size_t k = flat % n_eps;
        const State init{x_pts[p], xi_pts[p], 0.0};
        const Trajectory tr = run_eps(c, k, init, n_steps, dt_eff, n_steps);
        const State& last = tr.samples.back();
        f.image[p][k] = FlowPoint{last.x, last.xi, tr.trunc_time >= 0.0};
    });
    return f;
}

void bichar_write_csv(std::ostream& os, const BicharCurve& b, const CoeffField& c) {
    if (b.eps != c.eps())
        throw std::invalid_argument("bichar_write_csv: curve and field eps grids differ");
    if (b.dim == 1)
        os << "k,eps,t,x,xi,tau,residual\n";
    else
        os << "k,eps,t,x,y,xi,eta,tau,residual\n";
    for (std::size_t k = 0; k < b.eps.size(); ++k) {
        for (std::size_t i = 0; i < b.x[k].size(); ++i) {
            double q = b.tau[k][i];
            for (int j = 0; j < b.dim; ++j)
                q += c.a(k, j, b.x[k][i], b.t[i]) *
                     b.xi[k][i][static_cast<std::size_t>(j)];
            os << k << ',' << num17(b.eps[k]) << ',' << num17(b.t[i]) << ','
               << num17(b.x[k][i][0]) << ',';
            if (b.dim == 2) os << num17(b.x[k][i][1]) << ',';
            os << num17(b.xi[k][i][0]) << ',';
            if (b.dim == 2) os << num17(b.xi[k][i][1]) << ',';
            os << num17(b.tau[k][i]) << ',' << num17(std::abs(q)) << '\n';
        }
    }
}

void flow_write_csv(std::ostream& os, const FlowSet& f) {
    if (f.dim == 1)
        os << "point,k,eps,x,xi,truncated\n";
    else
        os << "point,k,eps,x,y,xi,eta,truncated\n";
    for (std::size_t p = 0; p < f.image.size(); ++p)
        for (std::size_t k = 0; k < f.eps.size(); ++k) {
            const FlowPoint& q = f.image[p][k];
            os << p << ',' << k << ',' << num17(f.eps[k]) << ',' << num17(q.x[0])
               << ',';
            if (f.dim == 2) os << num17(q.x[1]) << ',';
            os << num17(q.xi[0]) << ',';
            if (f.dim == 2) os << num17(q.xi[1]) << ',';
            os << (q.truncated ? 1 : 0) << '\n';
        }
}

void bichar_write_svg(std::ostream& os, const BicharCurve& b,
                      const std::string& title) {
    double x_min = b.x0[0], x_max = b.x0[0];
    double t_max = 0.0;
    for (std::size_t k = 0; k < b.eps.size(); ++k)
        for (std::size_t i = 0; i < b.x[k].size(); ++i) {
            x_min = std::min(x_min, b.x[k][i][0]);
            x_max = std::max(x_max, b.x[k][i][0]);
            t_max = std::max(t_max, b.t[i]);
        }
    if (x_max - x_min < 1e-12) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    const double pad = 0.05 * (x_max - x_min);
    SvgCanvas svg(0.0, t_max, x_min - pad, x_max + pad, title);
    svg.axes("t", "x");

    const std::size_t n_eps = b.eps.size();
    for (std::size_t k = 0; k < n_eps; ++k) {
        const double f =
            (n_eps > 1) ? static_cast<double>(k) / static_cast<double>(n_eps - 1) : 1.0;
        char color[8];
        std::snprintf(color, sizeof(color), "#%02x%02x%02x",
                      static_cast<int>(190.0 + f * (198.0 - 190.0)),
                      static_cast<int>(190.0 * (1.0 - f) + f * 40.0),
                      static_cast<int>(190.0 * (1.0 - f) + f * 40.0));
        std::string pts;
        for (std::size_t i = 0; i < b.x[k].size(); ++i) {
            pts += svg_num(svg.px(b.t[i]));
            pts += ',';
            pts += svg_num(svg.py(b.x[k][i][0]));
            if (i + 1 < b.x[k].size()) pts += ' ';
        }
        svg.polyline(pts, color, k + 1 == n_eps ? 1.8 : 1.0);
    }
    svg.text_px(SvgCanvas::kWidth - 270.0, 30.0,
                "eps from " + num17(b.eps[0]) + " to " + num17(b.eps[n_eps - 1]),
                12.0, "#444444");
    os << svg.str();
}

}  // namespace gf
