#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "gf/bichar.hpp"
#include "gf/defaults.hpp"
#include "gf/dist_spec.hpp"
#include "gf/gen_number.hpp"
#include "gf/grid_fn.hpp"
#include "gf/mollifier.hpp"
#include "gf/scale_fn.hpp"
#include "gf/wavefront.hpp"

namespace gf {

/// Mollified left step: Theta_eps = (H(-.) * rho^eps) in closed
/// antiderivative form, together with its exact derivative
/// Theta'_eps = -rho^eps. Theta_eps is nonincreasing, equals 1 left of
/// -1/gamma_eps, 0 right of 1/gamma_eps, and 1/2 at the origin; both
/// sup-norm nets must be of log type, which restricts the admissible
/// scales (construction rejects power scales).
class ThetaField {
public:
    /// Throws std::invalid_argument when the scale is nonpositive on the
    /// grid or either sup-norm net fails the log-type check, and
    /// std::logic_error when a mollifier invariant fails its spot audit.
    ThetaField(const EpsGrid& eps, const ScaleFn& gamma,
               const Mollifier& m = Mollifier::bump());

    const EpsGrid& eps() const { return eps_; }
    const ScaleFn& scale() const { return gamma_; }
    const Mollifier& mollifier() const { return *m_; }

    double gamma(std::size_t k) const;
    /// Transition half-width 1/gamma_eps.
    double width(std::size_t k) const;
    double theta(std::size_t k, double x) const;
    double dtheta(std::size_t k, double x) const;

    /// Bichar-compatible view: a_eps(x) = Theta_eps(x) with analytic
    /// spatial derivative, constant outside the transition width.
    CoeffField coefficient() const;

private:
    EpsGrid eps_;
    ScaleFn gamma_;
    const Mollifier* m_;
};

/// Convenience spelling of the ThetaField constructor.
ThetaField build_theta(const Mollifier& m, const ScaleFn& scale, const EpsGrid& eps);

/// One Cauchy problem instance for D_t u + a d_x u + (d_x a) u = 0 on a
/// space-time grid (axis 0 = x, axis 1 = t starting at 0). The initial
/// datum is a mollified distribution at `datum_scale`.
struct CauchySpec {
    EpsGrid eps;
    CoeffField coeff;     ///< 1-d, time-independent
    DistSpec datum;       ///< initial condition, mollified per eps
    ScaleFn datum_scale;  ///< embedding scale of the datum
    const Mollifier* moll = nullptr;
    SpatialGrid grid;     ///< axis 0 = x, axis 1 = t with lo = 0
    double s0 = 1.5;      ///< distance of the datum anchor from the origin
    double trace_dt = defaults::bichar_dt;  ///< characteristic sub-step
    int jobs = 1;

    /// The step problem: coefficient Theta at scale `gamma`, datum
    /// delta(-s0) mollified at the same scale.
    static CauchySpec hurd_sattinger(const EpsGrid& eps, const ScaleFn& gamma,
                                     double s0 = 1.5,
                                     const Box& box = Box::interval(-4.0, 2.0),
                                     double t_end = 3.0, std::size_t nx = 769,
                                     std::size_t nt = 97);

    /// A smooth-coefficient problem with an arbitrary datum embedded at
    /// the log scale.
    static CauchySpec smooth_problem(const EpsGrid& eps, CoeffField coeff,
                                     DistSpec datum, const Box& box,
                                     double t_end, std::size_t nx,
                                     std::size_t nt);

    /// Throws std::invalid_argument on dimension/scale mismatches, a
    /// time-dependent coefficient, a time axis not starting at 0, a datum
    /// anchored outside the spatial interval, or a bad sub-step.
    void validate() const;

    /// Initial datum g_eps(x).
    double g0(std::size_t k, double x) const;
};

/// Per-eps solution samples with solver provenance.
struct SolutionField {
    GridFn u;             ///< samples over the space-time grid
    std::string solver;   ///< "characteristics" or "upwind"
    GenNumber mass_drift; ///< per eps: max_t |m(t) - m(0)| / |m(0)|
    double cross_residual = -1.0;  ///< set by cross_validate, else -1
};

/// Solves by per-node characteristic back-tracing: each grid node (x, t)
/// is pulled back to time 0 along dy/dr = a(y) with a joint RK4 trace
/// that accumulates the exponent int_0^t (d_x a)(y(r)) dr, and
/// u = g(y(0)) * exp(-int). Coefficients and datum extend beyond the grid
/// in closed form, so traces may leave the box freely.
SolutionField solve_characteristics(const CauchySpec& spec);

/// First-order upwind finite-volume cross-check for
/// d_t u + d_x(a u) = 0, sub-stepped so that max |a| dt <= cfl h.
/// Throws std::invalid_argument unless 0 < cfl <= 0.9.
SolutionField solve_upwind(const CauchySpec& spec, double cfl = defaults::upwind_cfl);

/// Per-eps max-over-time L1 distance between two solutions of the same
/// problem, relative to the initial-slice L1 mass of `a`. Stores the
/// worst value in both cross_residual fields. Throws on grid or eps
/// mismatches.
GenNumber cross_validate(SolutionField& a, SolutionField& b);

/// Mass h * sum of the real part of slice j, one value per eps.
GenNumber slice_mass(const SolutionField& s, std::size_t j);

/// Slice at time node j as a 1-d grid function over the spatial axis.
GridFn time_slice(const SolutionField& s, std::size_t j);

/// Zero-crossing data of the characteristic started at -s0.
struct KinkTime {
    GenNumber t;      ///< bisection-refined crossing time per eps
    GenNumber speed;  ///< dx/dt = a_eps(x) at the crossing
};

/// Integrates dx/dt = a_eps(x), x(0) = -s0, and locates the time of the
/// zero crossing per eps by bisection inside the bracketing RK4 step.
/// Horizon 0 means 2 s0 + 2. Throws std::invalid_argument on bad
/// arguments and std::runtime_error when some eps never crosses within
/// the horizon.
KinkTime find_t_eps(const CoeffField& a, double s0, double horizon = 0.0,
                    double dt = defaults::bichar_dt);
KinkTime find_t_eps(const ThetaField& th, double s0, double horizon = 0.0,
                    double dt = defaults::bichar_dt);

/// One scanned time slice of a smooth-coefficient propagation run.
struct PropagationSlice {
    double t = 0.0;  ///< grid time actually used
    WFReport wf;     ///< 1-d scan of the slice
    FlowSet flow;    ///< Hamilton image of the datum's conormal seeds
};

/// Slice scans plus transported seeds for the flow-versus-scan
/// comparison.
struct PropagationReport {
    std::vector<PropagationSlice> slices;
    std::vector<std::array<double, 2>> seeds;  ///< (x0, +-1) per datum delta
};

/// Solves the Cauchy problem, scans each requested time slice over a
/// sweep of base points in the +-1 directions, and transports the
/// datum's conormal seeds with the Hamilton flow to the same times.
/// Smooth data yield no seeds and an empty flow. Times must lie in
/// [0, t_end]; they are snapped to the nearest grid slice.
PropagationReport smooth_propagation_case(const CauchySpec& spec,
                                          const std::vector<double>& t_list,
                                          const WFScanParams& scan);

/// Space-time survey geometry for the step problem: points on the
/// incoming ray {t = x + s0, x < 0}, the kink (0, s0), two post-kink
/// points on {x = 0}, and far-field controls. At least 12 points.
std::vector<std::array<double, 2>> hs_scan_points(double s0, double t_end);

/// CSV rows "k,eps,t,mass" for every eps and time node.
void mass_write_csv(std::ostream& os, const SolutionField& s);

/// CSV rows "k,eps,gamma,t_eps,speed" for a crossing table.
void kink_write_csv(std::ostream& os, const KinkTime& kt, const EpsGrid& eps,
                    const ScaleFn& gamma);

/// Heatmap of |u_eps| over the space-time box for one eps (block maxima
/// on a downsampled lattice).
void heatmap_write_svg(std::ostream& os, const SolutionField& s, std::size_t k,
                       const std::string& title);

/// Characteristic fan x_eps(t) from -s0 (thin curves, one per eps) with
/// the thick broken limit curve x = min(t - s0, 0).
void fan_write_svg(std::ostream& os, const ThetaField& th, double s0,
                   double t_end, const std::string& title);

}  // namespace gf
