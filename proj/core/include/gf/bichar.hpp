#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gf/defaults.hpp"
#include "gf/eps_grid.hpp"
#include "gf/gen_number.hpp"
#include "gf/mollifier.hpp"
#include "gf/scale_fn.hpp"
#include "gf/spatial_grid.hpp"

namespace gf {

/// Real coefficient family of a first-order operator
/// d_t + sum_j a_j(x, t) d_{x_j} + a_0(x, t), one evaluator set per eps.
/// Fields default to time-independent with a vanishing zero-order part;
/// analytic spatial derivatives are attached when a closed form exists,
/// otherwise the integrator falls back to central differences and says so
/// in the curve provenance.
class CoeffField {
public:
    /// Evaluator of one scalar coefficient at (x, t) for eps index k.
    using Coef = std::function<double(std::size_t k, const std::array<double, 2>& x,
                                      double t)>;

    /// a[j] evaluates the coefficient of d_{x_j}, j < dim.
    CoeffField(EpsGrid eps, int dim, std::vector<Coef> a, std::string name);

    /// Analytic Jacobian: dx[j][i] = d a_j / d x_i.
    CoeffField& with_dx(std::vector<std::array<Coef, 2>> dx);
    /// Analytic time derivatives d a_j / d t; marks the field
    /// time-dependent.
    CoeffField& with_dt(std::vector<Coef> dt);
    /// Zero-order coefficient a_0 (absent means identically zero).
    CoeffField& with_a0(Coef a0);
    /// Declares the coefficients constant for |x_i| >= radius.
    CoeffField& with_constant_outside(double radius);
    /// Declares sup|d_x a| + sup|a_0| to be O(log(1/eps)).
    CoeffField& with_log_type();

    /// a_j identically equal to vals[j]; constant outside radius zero and
    /// log-type by construction.
    static CoeffField constant(const EpsGrid& eps, int dim,
                               const std::array<double, 2>& vals,
                               const std::string& name = "constant");
    /// One-dimensional a(x) = x with analytic derivative.
    static CoeffField linear(const EpsGrid& eps);
    /// One-dimensional a(x) = 1 + exp(-x^2) with analytic derivative.
    static CoeffField smooth_bump(const EpsGrid& eps);
    /// One-dimensional a_eps(x) = Theta_eps(x) = 1 - cdf(gamma_eps x): the
    /// mollified left step of the singular transport example. Constant
    /// outside 1/min_k gamma_k; log-type exactly when gamma is.
    static CoeffField hs_theta(const EpsGrid& eps, const ScaleFn& gamma,
                               const Mollifier& m = Mollifier::bump());

    const EpsGrid& eps() const { return eps_; }
    int dim() const { return dim_; }
    const std::string& name() const { return name_; }
    bool time_dependent() const { return time_dependent_; }
    bool constant_outside() const { return constant_outside_; }
    double outside_radius() const { return outside_radius_; }
    bool log_type() const { return log_type_; }
    bool analytic_dx() const { return !dx_.empty(); }

    double a(std::size_t k, int j, const std::array<double, 2>& x, double t) const;
    double a0(std::size_t k, const std::array<double, 2>& x, double t) const;
    /// d a_j / d x_i, analytic or central difference with step
    /// 1e-5 (1 + |x_i|).
    double dx_a(std::size_t k, int j, int i, const std::array<double, 2>& x,
                double t) const;
    /// d a_j / d t: zero for time-independent fields.
    double dt_a(std::size_t k, int j, const std::array<double, 2>& x, double t) const;

private:
    EpsGrid eps_;
    int dim_;
    std::vector<Coef> a_;
    std::vector<std::array<Coef, 2>> dx_;
    std::vector<Coef> dt_;
    Coef a0_;
    std::string name_;
    bool time_dependent_ = false;
    bool constant_outside_ = false;
    double outside_radius_ = 0.0;
    bool log_type_ = false;
};

/// Structural audit of a coefficient field's declared flags over a box.
struct FieldCheck {
    bool constant_outside_ok = true;
    bool log_type_ok = true;
    GenNumber deriv_sup;  ///< per-eps sup of max_j |d_x a_j| + |a_0| over the box
};

/// Samples the field over `window` (t = 0) and verifies the declared
/// structure: values at and beyond the declared radius agree, and the
/// derivative sup net stays within a bounded multiple of log(1/eps).
FieldCheck verify_field(const CoeffField& c, const Box& window);

/// Sampled generalized bicharacteristic: shared time samples, per-eps
/// trajectories (possibly truncated early by the blow-up guard, hence
/// ragged), and the recorded step-halving error estimate.
struct BicharCurve {
    EpsGrid eps;
    int dim = 1;
    std::vector<double> t;  ///< intended samples 0 = t_0 < ... < t_n
    std::vector<std::vector<std::array<double, 2>>> x;   ///< [k][i]
    std::vector<std::vector<std::array<double, 2>>> xi;  ///< [k][i]
    std::vector<std::vector<double>> tau;                ///< [k][i]
    std::array<double, 2> x0{0.0, 0.0};
    std::array<double, 2> xi0{0.0, 0.0};
    double tau0 = 0.0;
    std::vector<double> trunc_time;   ///< per eps; negative when untruncated
    std::vector<double> halving_err;  ///< per eps: max gap vs the dt/2 run
    std::string derivative_mode;      ///< "analytic" or the difference step
};

/// Integrates the Hamilton system x' = a(x,t), xi' = -(d_x a) xi,
/// tau' = -(d_t a) . xi by fixed-step RK4 from t = 0 to t_end, one
/// trajectory per eps (deterministic output slots; `jobs` threads).
/// Initial data must satisfy the null condition
/// |tau0 + a(x0,0).xi0| <= 1e-10 (1 + |xi0|) per eps unless waived.
/// A trajectory is cut (with its last state and time recorded) once
/// |xi| exceeds the blow-up guard. Throws std::invalid_argument on bad
/// geometry or non-null initial data.
BicharCurve integrate_bichar(const CoeffField& c, const std::array<double, 2>& x0,
                             const std::array<double, 2>& xi0, double tau0,
                             double t_end, double dt = defaults::bichar_dt,
                             bool waive_nullity = false, int jobs = 1);

/// Per-eps max over samples of |tau + sum_j a_j(x,t) xi_j| along the curve.
GenNumber null_residual(const BicharCurve& b, const CoeffField& c);

/// Per-eps max over samples of |xi(t)|, for Gronwall-type bounds and
/// moderateness classification of trajectories.
GenNumber xi_sup_net(const BicharCurve& b);

/// Image of one phase-space point under the time-t Hamilton flow.
struct FlowPoint {
    std::array<double, 2> x{0.0, 0.0};
    std::array<double, 2> xi{0.0, 0.0};
    bool truncated = false;
};

/// Time-t Hamilton flow of a set of phase-space points, per eps.
struct FlowSet {
    EpsGrid eps;
    int dim = 1;
    double t = 0.0;
    std::vector<std::array<double, 2>> x0;   ///< input points
    std::vector<std::array<double, 2>> xi0;
    std::vector<std::vector<FlowPoint>> image;  ///< [point][k]
};

/// Transports each (x, xi) from time 0 to time t (t >= 0) under the field.
FlowSet hamilton_flow(const CoeffField& c, double t,
                      const std::vector<std::array<double, 2>>& x_pts,
                      const std::vector<std::array<double, 2>>& xi_pts,
                      double dt = defaults::bichar_dt, int jobs = 1);

/// Rows "k,eps,t,x[,y],xi[,eta],tau,residual"; the residual column repeats
/// the null_residual integrand at each sample.
void bichar_write_csv(std::ostream& os, const BicharCurve& b, const CoeffField& c);

/// Rows "point,k,eps,x[,y],xi[,eta],truncated".
void flow_write_csv(std::ostream& os, const FlowSet& f);

/// Fan of the per-eps trajectories x(t) (first component against time),
/// shaded from the coarsest to the finest eps.
void bichar_write_svg(std::ostream& os, const BicharCurve& b, const std::string& title);

}  // namespace gf
