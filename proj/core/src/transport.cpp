#include "gf/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
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

/// Valuation of net / log(1/eps) must not dip below -fit_tol: the log-type
/// condition on a nonnegative net.
bool log_type_net(const std::vector<double>& net, const EpsGrid& eps) {
    std::vector<std::complex<double>> ratio(net.size());
    for (std::size_t k = 0; k < net.size(); ++k)
        ratio[k] = net[k] / std::log(1.0 / eps[k]);
    const ValuationEstimate v = estimate_valuation(GenNumber(eps, std::move(ratio)));
    return v.infinite || v.b_hat >= -defaults::fit_tol;
}

/// One classical RK4 step of the joint back-trace state (z, E) with
/// dz/dr = -a(z) and dE/dr = (d_x a)(z).
void back_step(const CoeffField& c, std::size_t k, double dt, double& z, double& E) {
    auto fa = [&](double y) { return c.a(k, 0, {y, 0.0}, 0.0); };
    auto fd = [&](double y) { return c.dx_a(k, 0, 0, {y, 0.0}, 0.0); };
    const double k1z = -fa(z), k1e = fd(z);
    const double z2 = z + 0.5 * dt * k1z;
    const double k2z = -fa(z2), k2e = fd(z2);
    const double z3 = z + 0.5 * dt * k2z;
    const double k3z = -fa(z3), k3e = fd(z3);
    const double z4 = z + dt * k3z;
    const double k4z = -fa(z4), k4e = fd(z4);
    z += dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
    E += dt / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
}

/// One forward RK4 step of dx/dt = a(x) of size dt from x.
double forward_step(const CoeffField& c, std::size_t k, double x, double dt) {
    auto fa = [&](double y) { return c.a(k, 0, {y, 0.0}, 0.0); };
    const double k1 = fa(x);
    const double k2 = fa(x + 0.5 * dt * k1);
    const double k3 = fa(x + 0.5 * dt * k2);
    const double k4 = fa(x + dt * k3);
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

GenNumber real_net(const EpsGrid& eps, const std::vector<double>& v) {
    std::vector<std::complex<double>> c(v.begin(), v.end());
    return GenNumber(eps, std::move(c));
}

GenNumber mass_drift_net(const GridFn& u) {
    const SpatialGrid& g = u.grid();
    const std::size_t n0 = g.axis(0).n, n1 = g.axis(1).n;
    const double h = g.axis(0).h();
    std::vector<double> drift(u.eps().size(), 0.0);
    for (std::size_t k = 0; k < u.eps().size(); ++k) {
        const auto& s = u.samples(k);
        double m0 = 0.0;
        for (std::size_t i = 0; i < n0; ++i) m0 += s[i].real();
        m0 *= h;
        const double denom = std::max(std::abs(m0), 1e-300);
        for (std::size_t j = 1; j < n1; ++j) {
            double m = 0.0;
            for (std::size_t i = 0; i < n0; ++i) m += s[j * n0 + i].real();
            m *= h;
            drift[k] = std::max(drift[k], std::abs(m - m0) / denom);
        }
    }
    return real_net(u.eps(), drift);
}

void check_finite(const std::vector<std::vector<std::complex<double>>>& samples,
                  const char* solver) {
    for (const auto& layer : samples)
        for (const auto& v : layer)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::runtime_error(std::string(solver) +
                                         " produced a nonfinite sample");
}

}  // namespace

// ---------------------------------------------------------------------------
// ThetaField

ThetaField::ThetaField(const EpsGrid& eps, const ScaleFn& gamma, const Mollifier& m)
    : eps_(eps), gamma_(gamma), m_(&m) {
    if (eps_.size() < 8)
        throw std::invalid_argument(
            "ThetaField needs at least 8 eps values for the log-type audit");
    std::vector<double> sup_theta(eps_.size()), sup_dtheta(eps_.size());
    for (std::size_t k = 0; k < eps_.size(); ++k) {
        const double g = gamma_(eps_[k]);
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("ThetaField: scale '" + gamma_.tag() +
                                        "' is not positive at eps " + num17(eps_[k]));
        const double w = 1.0 / g;
        if (std::abs(theta(k, 0.0) - 0.5) > 1e-12)
            throw std::logic_error("ThetaField: Theta(0) != 1/2");
        if (theta(k, -2.0 * w) != 1.0 || theta(k, 2.0 * w) != 0.0)
            throw std::logic_error("ThetaField: Theta is not a unit step outside 1/gamma");
        double prev = theta(k, -2.0 * w);
        for (int i = 1; i <= 32; ++i) {
            const double cur = theta(k, -2.0 * w + 4.0 * w * i / 32.0);
            if (cur > prev + 1e-12)
                throw std::logic_error("ThetaField: Theta is not nonincreasing");
            prev = cur;
        }
        sup_theta[k] = 1.0;
        sup_dtheta[k] = g * m_->rho(0.0);
    }
    if (!log_type_net(sup_theta, eps_) || !log_type_net(sup_dtheta, eps_))
        throw std::invalid_argument("ThetaField: sup norms of Theta and Theta' at scale '" +
                                    gamma_.tag() + "' fail the log-type check");
}

double ThetaField::gamma(std::size_t k) const { return gamma_(eps_[k]); }

double ThetaField::width(std::size_t k) const { return 1.0 / gamma(k); }

double ThetaField::theta(std::size_t k, double x) const {
    return 1.0 - m_->cdf(gamma(k) * x);
}

double ThetaField::dtheta(std::size_t k, double x) const {
    const double g = gamma(k);
    return -g * m_->rho(g * x);
}

CoeffField ThetaField::coefficient() const {
    return CoeffField::hs_theta(eps_, gamma_, *m_);
}

ThetaField build_theta(const Mollifier& m, const ScaleFn& scale, const EpsGrid& eps) {
    return ThetaField(eps, scale, m);
}

// ---------------------------------------------------------------------------
// CauchySpec

CauchySpec CauchySpec::hurd_sattinger(const EpsGrid& eps, const ScaleFn& gamma,
                                      double s0, const Box& box, double t_end,
                                      std::size_t nx, std::size_t nt) {
    ThetaField th(eps, gamma);  // runs the structural audit
    SpatialGrid grid(GridAxis{box.lo[0], box.hi[0], nx}, GridAxis{0.0, t_end, nt});
    CauchySpec spec{eps,
                    th.coefficient(),
                    DistSpec::delta(-s0),
                    gamma,
                    &th.mollifier(),
                    grid,
                    s0,
                    defaults::bichar_dt,
                    1};
    spec.validate();
    return spec;
}

CauchySpec CauchySpec::smooth_problem(const EpsGrid& eps, CoeffField coeff,
                                      DistSpec datum, const Box& box, double t_end,
                                      std::size_t nx, std::size_t nt) {
    SpatialGrid grid(GridAxis{box.lo[0], box.hi[0], nx}, GridAxis{0.0, t_end, nt});
    double s0 = 1.5;
    for (const auto& term : datum.terms)
        if (term.kind != DistTerm::Kind::smooth && std::abs(term.x0) > 0.0) {
            s0 = std::abs(term.x0);
            break;
        }
    CauchySpec spec{eps,
                    std::move(coeff),
                    std::move(datum),
                    ScaleFn::log_scale(),
                    &Mollifier::bump(),
                    grid,
                    s0,
                    defaults::bichar_dt,
                    1};
    spec.validate();
    return spec;
}

void CauchySpec::validate() const {
    if (coeff.dim() != 1)
        throw std::invalid_argument("CauchySpec: coefficient must be one-dimensional");
    if (coeff.time_dependent())
        throw std::invalid_argument("CauchySpec: coefficient must be time-independent");
    if (coeff.eps().size() != eps.size())
        throw std::invalid_argument("CauchySpec: coefficient eps-grid mismatch");
    for (std::size_t k = 0; k < eps.size(); ++k)
        if (coeff.eps()[k] != eps[k])
            throw std::invalid_argument("CauchySpec: coefficient eps-grid mismatch");
    if (grid.dim() != 2)
        throw std::invalid_argument("CauchySpec: grid must be space-time (2-d)");
    if (grid.axis(1).lo != 0.0)
        throw std::invalid_argument("CauchySpec: time axis must start at 0");
    const double t_end = grid.axis(1).hi;
    if (!(trace_dt > 0.0) || trace_dt > t_end)
        throw std::invalid_argument("CauchySpec: trace_dt must lie in (0, t_end]");
    if (jobs < 1) throw std::invalid_argument("CauchySpec: jobs must be >= 1");
    if (moll == nullptr) throw std::invalid_argument("CauchySpec: missing mollifier");
    if (datum.terms.empty())
        throw std::invalid_argument("CauchySpec: empty initial datum");
    if (!(s0 > 0.0)) throw std::invalid_argument("CauchySpec: s0 must be positive");
    const GridAxis& ax = grid.axis(0);
    for (const auto& term : datum.terms)
        if (term.kind != DistTerm::Kind::smooth &&
            (term.x0 <= ax.lo || term.x0 >= ax.hi))
            throw std::invalid_argument("CauchySpec: datum anchored outside the grid");
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double g = datum_scale(eps[k]);
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("CauchySpec: datum scale not positive at eps " +
                                        num17(eps[k]));
        if (1.0 / g < 4.0 * ax.h())
            throw std::invalid_argument(
                "CauchySpec: datum of width " + num17(1.0 / g) + " at eps " +
                num17(eps[k]) + " is unresolvable on spacing " + num17(ax.h()) +
                " (needs 4h)");
    }
}

double CauchySpec::g0(std::size_t k, double x) const {
    return datum.mollified(*moll, datum_scale(eps[k]), x);
}

// ---------------------------------------------------------------------------
// Solvers

SolutionField solve_characteristics(const CauchySpec& spec) {
    spec.validate();
    const SpatialGrid& grid = spec.grid;
    const std::size_t n0 = grid.axis(0).n, n1 = grid.axis(1).n;
    const double dt_grid = grid.axis(1).h();
    const std::size_t m = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(std::ceil(dt_grid / spec.trace_dt))));
    const double dt = dt_grid / static_cast<double>(m);
    const std::size_t n_eps = spec.eps.size();

    std::vector<std::vector<std::complex<double>>> samples(
        n_eps, std::vector<std::complex<double>>(n0 * n1));
    parallel_over(n_eps * n0, spec.jobs, [&](std::size_t flat) {
        const std::size_t k = flat / n0, i = flat % n0;
        double z = grid.axis(0).coord(i);
        double E = 0.0;
        samples[k][i] = spec.g0(k, z);
        for (std::size_t j = 1; j < n1; ++j) {
            for (std::size_t s = 0; s < m; ++s) back_step(spec.coeff, k, dt, z, E);
            samples[k][j * n0 + i] = spec.g0(k, z) * std::exp(-E);
        }
    });
    check_finite(samples, "solve_characteristics");
    GridFn u(grid, spec.eps, std::move(samples));
    GenNumber drift = mass_drift_net(u);
    return SolutionField{std::move(u), "characteristics", std::move(drift), -1.0};
}

SolutionField solve_upwind(const CauchySpec& spec, double cfl) {
    spec.validate();
    if (!(cfl > 0.0) || cfl > defaults::upwind_cfl)
        throw std::invalid_argument("solve_upwind: cfl must lie in (0, 0.9]");
    const SpatialGrid& grid = spec.grid;
    const std::size_t n0 = grid.axis(0).n, n1 = grid.axis(1).n;
    const double h = grid.axis(0).h();
    const double dt_grid = grid.axis(1).h();
    const std::size_t n_eps = spec.eps.size();

    std::vector<std::vector<std::complex<double>>> samples(
        n_eps, std::vector<std::complex<double>>(n0 * n1));
    parallel_over(n_eps, spec.jobs, [&](std::size_t k) {
        // interface velocities at x = lo + (i - 1/2) h, i = 0..n0
        std::vector<double> v(n0 + 1);
        double a_max = 0.0;
        for (std::size_t i = 0; i <= n0; ++i) {
            const double x = grid.axis(0).lo + (static_cast<double>(i) - 0.5) * h;
            v[i] = spec.coeff.a(k, 0, {x, 0.0}, 0.0);
            a_max = std::max(a_max, std::abs(v[i]));
        }
        const std::size_t m = static_cast<std::size_t>(std::max(
            1.0, std::ceil(a_max * dt_grid / (cfl * h))));
        const double dt = dt_grid / static_cast<double>(m);

        std::vector<double> u(n0), flux(n0 + 1);
        for (std::size_t i = 0; i < n0; ++i) {
            u[i] = spec.g0(k, grid.axis(0).coord(i));
            samples[k][i] = u[i];
        }
        for (std::size_t j = 1; j < n1; ++j) {
            for (std::size_t s = 0; s < m; ++s) {
                for (std::size_t i = 0; i <= n0; ++i) {
                    const double ul = (i == 0) ? u[0] : u[i - 1];
                    const double ur = (i == n0) ? u[n0 - 1] : u[i];
                    flux[i] = v[i] >= 0.0 ? v[i] * ul : v[i] * ur;
                }
                for (std::size_t i = 0; i < n0; ++i)
                    u[i] -= dt / h * (flux[i + 1] - flux[i]);
            }
            for (std::size_t i = 0; i < n0; ++i) samples[k][j * n0 + i] = u[i];
        }
    });
    check_finite(samples, "solve_upwind");
    GridFn u(grid, spec.eps, std::move(samples));
    GenNumber drift = mass_drift_net(u);
    return SolutionField{std::move(u), "upwind", std::move(drift), -1.0};
}

GenNumber cross_validate(SolutionField& a, SolutionField& b) {
    if (a.u.grid() != b.u.grid())
        throw std::invalid_argument("cross_validate: grid mismatch");
    if (a.u.eps().size() != b.u.eps().size())
        throw std::invalid_argument("cross_validate: eps mismatch");
    for (std::size_t k = 0; k < a.u.eps().size(); ++k)
        if (a.u.eps()[k] != b.u.eps()[k])
            throw std::invalid_argument("cross_validate: eps mismatch");
    const SpatialGrid& grid = a.u.grid();
    const std::size_t n0 = grid.axis(0).n, n1 = grid.axis(1).n;
    const double h = grid.axis(0).h();
    std::vector<double> resid(a.u.eps().size(), 0.0);
    for (std::size_t k = 0; k < a.u.eps().size(); ++k) {
        const auto& sa = a.u.samples(k);
        const auto& sb = b.u.samples(k);
        double m0 = 0.0;
        for (std::size_t i = 0; i < n0; ++i) m0 += std::abs(sa[i].real());
        m0 = std::max(m0 * h, 1e-300);
        for (std::size_t j = 0; j < n1; ++j) {
            double d = 0.0;
            for (std::size_t i = 0; i < n0; ++i)
                d += std::abs(sa[j * n0 + i].real() - sb[j * n0 + i].real());
            resid[k] = std::max(resid[k], d * h / m0);
        }
    }
    const double worst = *std::max_element(resid.begin(), resid.end());
    a.cross_residual = worst;
    b.cross_residual = worst;
    return real_net(a.u.eps(), resid);
}

GenNumber slice_mass(const SolutionField& s, std::size_t j) {
    const SpatialGrid& grid = s.u.grid();
    const std::size_t n0 = grid.axis(0).n;
    if (j >= grid.axis(1).n)
        throw std::invalid_argument("slice_mass: time index out of range");
    std::vector<double> mass(s.u.eps().size());
    for (std::size_t k = 0; k < s.u.eps().size(); ++k) {
        const auto& layer = s.u.samples(k);
        double m = 0.0;
        for (std::size_t i = 0; i < n0; ++i) m += layer[j * n0 + i].real();
        mass[k] = m * grid.axis(0).h();
    }
    return real_net(s.u.eps(), mass);
}

GridFn time_slice(const SolutionField& s, std::size_t j) {
    const SpatialGrid& grid = s.u.grid();
    const std::size_t n0 = grid.axis(0).n;
    if (j >= grid.axis(1).n)
        throw std::invalid_argument("time_slice: time index out of range");
    SpatialGrid line(grid.axis(0));
    std::vector<std::vector<std::complex<double>>> rows(s.u.eps().size());
    for (std::size_t k = 0; k < s.u.eps().size(); ++k) {
        const auto& layer = s.u.samples(k);
        rows[k].assign(layer.begin() + static_cast<std::ptrdiff_t>(j * n0),
                       layer.begin() + static_cast<std::ptrdiff_t>((j + 1) * n0));
    }
    return GridFn(line, s.u.eps(), std::move(rows));
}

// ---------------------------------------------------------------------------
// Kink time

KinkTime find_t_eps(const CoeffField& a, double s0, double horizon, double dt) {
    if (a.dim() != 1)
        throw std::invalid_argument("find_t_eps: coefficient must be one-dimensional");
    if (a.time_dependent())
        throw std::invalid_argument("find_t_eps: coefficient must be time-independent");
    if (!(s0 > 0.0)) throw std::invalid_argument("find_t_eps: s0 must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("find_t_eps: dt must be positive");
    if (horizon == 0.0) horizon = 2.0 * s0 + 2.0;
    if (horizon < dt) throw std::invalid_argument("find_t_eps: horizon below dt");

    const EpsGrid& eps = a.eps();
    std::vector<std::complex<double>> times(eps.size()), speeds(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        double x = -s0, t = 0.0;
        bool crossed = false;
        while (t < horizon) {
            const double x_next = forward_step(a, k, x, dt);
            if (x_next >= 0.0) {
                double lo = 0.0, hi = dt;
                while (hi - lo > 1e-13) {
                    const double mid = 0.5 * (lo + hi);
                    if (forward_step(a, k, x, mid) < 0.0)
                        lo = mid;
                    else
                        hi = mid;
                }
                const double s_cross = 0.5 * (lo + hi);
                times[k] = t + s_cross;
                speeds[k] = a.a(k, 0, {forward_step(a, k, x, s_cross), 0.0}, 0.0);
                crossed = true;
                break;
            }
            x = x_next;
            t += dt;
        }
        if (!crossed)
            throw std::runtime_error("find_t_eps: no zero crossing before t = " +
                                     num17(horizon) + " at eps " + num17(eps[k]));
    }
    return KinkTime{GenNumber(eps, std::move(times)), GenNumber(eps, std::move(speeds))};
}

KinkTime find_t_eps(const ThetaField& th, double s0, double horizon, double dt) {
    return find_t_eps(th.coefficient(), s0, horizon, dt);
}

// ---------------------------------------------------------------------------
// Smooth propagation

PropagationReport smooth_propagation_case(const CauchySpec& spec,
                                          const std::vector<double>& t_list,
                                          const WFScanParams& scan) {
    if (t_list.empty())
        throw std::invalid_argument("smooth_propagation_case: empty time list");
    const double t_end = spec.grid.axis(1).hi;
    for (double t : t_list)
        if (t < 0.0 || t > t_end)
            throw std::invalid_argument("smooth_propagation_case: time outside [0, T]");

    SolutionField sol = solve_characteristics(spec);

    PropagationReport rep;
    for (const auto& term : spec.datum.terms)
        if (term.kind != DistTerm::Kind::smooth) {
            rep.seeds.push_back({term.x0, 1.0});
            rep.seeds.push_back({term.x0, -1.0});
        }

    const GridAxis& ax = spec.grid.axis(0);
    const double margin = scan.r + 2.0 * ax.h();
    std::vector<std::array<double, 2>> base;
    const double b_lo = ax.lo + margin, b_hi = ax.hi - margin;
    const double step = std::max(2.0 * ax.h(), (b_hi - b_lo) / 256.0);
    for (double x = b_lo; x <= b_hi + 1e-12; x += step) base.push_back({x, 0.0});
    const std::vector<std::array<double, 2>> dirs{{1.0, 0.0}, {-1.0, 0.0}};

    for (double t : t_list) {
        const std::size_t j = static_cast<std::size_t>(
            std::llround(t / spec.grid.axis(1).h()));
        const double t_used = spec.grid.axis(1).coord(j);
        GridFn line = time_slice(sol, j);
        WFReport wf = wf_scan(line, base, dirs, scan, spec.datum_scale);
        if (!rep.seeds.empty()) {
            std::vector<std::array<double, 2>> xs, ks;
            for (const auto& s : rep.seeds) {
                xs.push_back({s[0], 0.0});
                ks.push_back({s[1], 0.0});
            }
            rep.slices.push_back(PropagationSlice{
                t_used, std::move(wf),
                hamilton_flow(spec.coeff, t_used, xs, ks, spec.trace_dt, spec.jobs)});
        } else {
            rep.slices.push_back(PropagationSlice{
                t_used, std::move(wf), FlowSet{spec.eps, 1, t_used, {}, {}, {}}});
        }
    }
    return rep;
}

std::vector<std::array<double, 2>> hs_scan_points(double s0, double t_end) {
    std::vector<std::array<double, 2>> pts;
    for (double f : {0.8, 0.6, 0.4, 0.3})
        pts.push_back({-f * s0, (1.0 - f) * s0});     // incoming ray t = x + s0
    pts.push_back({0.0, s0});                          // the kink
    pts.push_back({0.0, s0 + 0.15});                   // post-kink ray
    pts.push_back({0.0, s0 + 0.18});
    pts.push_back({-s0 - 0.5, 0.5});                   // far-field controls
    pts.push_back({0.75, 0.5});
    pts.push_back({-s0 - 1.0, t_end - 0.6});
    pts.push_back({0.9, t_end - 0.5});
    pts.push_back({0.5 * s0, s0});
    return pts;
}

// ---------------------------------------------------------------------------
// Reports

void mass_write_csv(std::ostream& os, const SolutionField& s) {
    os << "k,eps,t,mass\n";
    const std::size_t n1 = s.u.grid().axis(1).n;
    std::vector<GenNumber> masses;
    masses.reserve(n1);
    for (std::size_t j = 0; j < n1; ++j) masses.push_back(slice_mass(s, j));
    for (std::size_t k = 0; k < s.u.eps().size(); ++k)
        for (std::size_t j = 0; j < n1; ++j)
            os << k << ',' << num17(s.u.eps()[k]) << ','
               << num17(s.u.grid().axis(1).coord(j)) << ','
               << num17(masses[j][k].real()) << '\n';
}

void kink_write_csv(std::ostream& os, const KinkTime& kt, const EpsGrid& eps,
                    const ScaleFn& gamma) {
    os << "k,eps,gamma,t_eps,speed\n";
    for (std::size_t k = 0; k < eps.size(); ++k)
        os << k << ',' << num17(eps[k]) << ',' << num17(gamma(eps[k])) << ','
           << num17(kt.t[k].real()) << ',' << num17(kt.speed[k].real()) << '\n';
}

void heatmap_write_svg(std::ostream& os, const SolutionField& s, std::size_t k,
                       const std::string& title) {
    if (k >= s.u.eps().size())
        throw std::invalid_argument("heatmap_write_svg: eps index out of range");
    const SpatialGrid& grid = s.u.grid();
    const std::size_t n0 = grid.axis(0).n, n1 = grid.axis(1).n;
    const auto& layer = s.u.samples(k);

    const std::size_t bx = (n0 + 119) / 120, bt = (n1 + 119) / 120;
    const std::size_t mx = (n0 + bx - 1) / bx, mt = (n1 + bt - 1) / bt;
    std::vector<double> block(mx * mt, 0.0);
    double v_max = 0.0;
    for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t i = 0; i < n0; ++i) {
            const double v = std::abs(layer[j * n0 + i]);
            double& b = block[(j / bt) * mx + i / bx];
            b = std::max(b, v);
            v_max = std::max(v_max, v);
        }

    SvgCanvas svg(grid.axis(0).lo, grid.axis(0).hi, grid.axis(1).lo, grid.axis(1).hi,
                  title);
    for (std::size_t jb = 0; jb < mt; ++jb)
        for (std::size_t ib = 0; ib < mx; ++ib) {
            const double v = block[jb * mx + ib];
            if (v_max <= 0.0 || v <= 0.0) continue;
            const double f = std::pow(v / v_max, 0.4);
            char color[8];
            std::snprintf(color, sizeof(color), "#%02x%02x%02x",
                          static_cast<int>(250.0 + f * (127.0 - 250.0)),
                          static_cast<int>(250.0 + f * (29.0 - 250.0)),
                          static_cast<int>(250.0 + f * (29.0 - 250.0)));
            const double x0 = grid.axis(0).coord(ib * bx) - 0.5 * grid.axis(0).h();
            const double x1 =
                grid.axis(0).coord(std::min(n0 - 1, (ib + 1) * bx - 1)) +
                0.5 * grid.axis(0).h();
            const double t0 = grid.axis(1).coord(jb * bt) - 0.5 * grid.axis(1).h();
            const double t1 =
                grid.axis(1).coord(std::min(n1 - 1, (jb + 1) * bt - 1)) +
                0.5 * grid.axis(1).h();
            svg.rect_px(svg.px(x0), svg.py(t1), svg.px(x1) - svg.px(x0),
                        svg.py(t0) - svg.py(t1), color);
        }
    svg.axes("x", "t");
    svg.text_px(SvgCanvas::kWidth - 320.0, 30.0,
                "eps = " + num17(s.u.eps()[k]) + ", max |u| = " + num17(v_max), 12.0,
                "#444444");
    os << svg.str();
}

void fan_write_svg(std::ostream& os, const ThetaField& th, double s0, double t_end,
                   const std::string& title) {
    if (!(s0 > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("fan_write_svg: s0 and t_end must be positive");
    const CoeffField c = th.coefficient();
    const std::size_t n_eps = th.eps().size();
    const double dt = defaults::bichar_dt;
    const std::size_t n_steps =
        static_cast<std::size_t>(std::llround(t_end / dt));
    const std::size_t keep = std::max<std::size_t>(1, n_steps / 400);

    double x_hi_world = 0.25 * s0;
    SvgCanvas svg(0.0, t_end, -s0 - 0.1 * s0, x_hi_world, title);

    for (std::size_t k = 0; k < n_eps; ++k) {
        const double f =
            (n_eps > 1) ? static_cast<double>(k) / static_cast<double>(n_eps - 1) : 1.0;
        char color[8];
        std::snprintf(color, sizeof(color), "#%02x%02x%02x",
                      static_cast<int>(190.0 + f * (198.0 - 190.0)),
                      static_cast<int>(190.0 * (1.0 - f) + f * 40.0),
                      static_cast<int>(190.0 * (1.0 - f) + f * 40.0));
        std::string pts;
        double x = -s0;
        pts += svg_num(svg.px(0.0));
        pts += ',';
        pts += svg_num(svg.py(x));
        for (std::size_t i = 1; i <= n_steps; ++i) {
            x = forward_step(c, k, x, dt);
            if (i % keep == 0 || i == n_steps) {
                pts += ' ';
                pts += svg_num(svg.px(dt * static_cast<double>(i)));
                pts += ',';
                pts += svg_num(svg.py(x));
            }
        }
        svg.polyline(pts, color, 1.0);
    }
    // the broken limit curve x = min(t - s0, 0)
    std::string limit;
    limit += svg_num(svg.px(0.0));
    limit += ',';
    limit += svg_num(svg.py(-s0));
    limit += ' ';
    limit += svg_num(svg.px(s0));
    limit += ',';
    limit += svg_num(svg.py(0.0));
    if (t_end > s0) {
        limit += ' ';
        limit += svg_num(svg.px(t_end));
        limit += ',';
        limit += svg_num(svg.py(0.0));
    }
    svg.polyline(limit, "#111111", 3.0);
    svg.axes("t", "x");
    svg.text_px(SvgCanvas::kWidth - 300.0, 30.0,
                "eps from " + num17(th.eps()[0]) + " to " + num17(th.eps()[n_eps - 1]),
                12.0, "#444444");
    os << svg.str();
}

}  // namespace gf
