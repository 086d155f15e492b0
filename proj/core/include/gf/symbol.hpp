#pragma once

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <string>

#include "gf/defaults.hpp"
#include "gf/gen_number.hpp"
#include "gf/grid_fn.hpp"
#include "gf/mollifier.hpp"
#include "gf/regularity.hpp"
#include "gf/scale_fn.hpp"

namespace gf {

/// Japanese bracket <xi> = sqrt(1 + |xi|^2).
double xi_bracket(const std::array<double, 2>& xi, int dim);

/// Tested frequency magnitudes [lo, hi], 0 < lo < hi.
struct FreqBand {
    double lo = 1.0;
    double hi = 1e4;
};

/// A symbol family a_eps(x, xi) of declared order m, given by a closed-form
/// evaluator per eps. Closed forms (rather than sampled tensors) keep the
/// frequency derivatives meaningful at large |xi|, where finite differences
/// use steps proportional to <xi>.
class SymbolNet {
public:
    using Eval = std::function<std::complex<double>(
        std::size_t k, const std::array<double, 2>& x, const std::array<double, 2>& xi)>;

    /// dim is the spatial (= frequency) dimension, 1 or 2. x_independent
    /// marks pure Fourier multipliers a(xi), unlocking the fast
    /// quantization path.
    SymbolNet(EpsGrid eps, int dim, double order, Eval eval, std::string name,
              bool x_independent = false);

    /// omega_eps * <xi>, order 1. The classical bracket for omega = const 1.
    static SymbolNet scaled_bracket(const EpsGrid& eps, const ScaleFn& omega);

    /// 1 + c_eps x^2, order 0, one-dimensional.
    static SymbolNet one_plus_cx2(const EpsGrid& eps, const ScaleFn& c);

    /// i xi, order 1, one-dimensional Fourier multiplier of d/dx.
    static SymbolNet multiplier_ixi(const EpsGrid& eps);

    /// tau + Theta_eps(x) xi with Theta_eps(x) = 1 - cdf(gamma_eps x): the
    /// principal symbol of d_t + Theta_eps(x) d_x. Two-dimensional with
    /// x = (x, t) and xi = (xi, tau), order 1.
    static SymbolNet transport_principal(const EpsGrid& eps, const ScaleFn& gamma,
                                         const Mollifier& m = Mollifier::bump());

    /// Config-facing families: "1+c*x^2", "transport:tau+theta*xi",
    /// "multiplier:i*xi" (param ignored for the multiplier). Throws
    /// std::invalid_argument for unknown names.
    static SymbolNet from_name(const std::string& family, const EpsGrid& eps,
                               const ScaleFn& param);

    const EpsGrid& eps() const { return eps_; }
    int dim() const { return dim_; }
    double order() const { return order_; }
    const std::string& name() const { return name_; }
    bool x_independent() const { return x_independent_; }

    std::complex<double> operator()(std::size_t k, const std::array<double, 2>& x,
                                    const std::array<double, 2>& xi) const {
        return eval_(k, x, xi);
    }

private:
    EpsGrid eps_;
    int dim_;
    double order_;
    Eval eval_;
    std::string name_;
    bool x_independent_;
};

/// Weighted seminorm test of the symbol class: for every xi-multi-index
/// alpha with |alpha| <= alpha_max and x-multi-index beta with
/// |beta| <= beta_max (at most order 3 per axis), fit the net
///   g_eps = sup over K x band of <xi>^{-m+|alpha|} |d^alpha_xi d^beta_x a_eps|
/// and test the pointwise max over (alpha, beta) for slow-scale membership.
/// Derivatives are central finite differences with steps 1e-3 <xi> in
/// frequency and 1e-3 (1+|x|) in space. Throws std::invalid_argument on
/// out-of-range orders or an empty window, and propagates the slow-scale
/// positivity error if the seminorm net vanishes at some but not all eps.
bool check_symbol_class(const SymbolNet& a, const Box& K, int alpha_max, int beta_max,
                        const FreqBand& band = {});

/// Witness record of the micro-ellipticity test at one (x0, xi0).
struct EllipticityReport {
    std::array<double, 2> x0{0.0, 0.0};
    std::array<double, 2> xi0{1.0, 0.0};
    double u_radius = 0.0;
    double cone_angle = 0.0;
    FreqBand band;
    double order = 0.0;
    GenNumber r_net;  ///< per-eps smallest admissible lower radius
    GenNumber s_net;  ///< per-eps sup of <xi>^m / |a_eps| beyond r_net
    bool r_slow = false;
    bool s_slow = false;
    bool admissible = false;  ///< an admissible radius exists at every eps
    bool verdict = false;     ///< admissible and both witness nets slow-scale
    std::string diagnostic;   ///< set when the verdict is forced false
};

/// Greedy micro-ellipticity witness on the ball |x - x0| <= u_radius times
/// the cone of half-angle cone_angle around xi0 restricted to the band:
/// per eps, r_eps is the smallest sampled radius beyond which a_eps has no
/// zero in the region (zeros are caught by magnitude threshold and by sign
/// changes between neighboring samples), and s_eps is the sup of
/// <xi>^m / |a_eps| there. The verdict requires both nets to be slow-scale.
/// Throws std::invalid_argument on invalid geometry.
EllipticityReport micro_elliptic(const SymbolNet& a, const std::array<double, 2>& x0,
                                 const std::array<double, 2>& xi0, double u_radius,
                                 double cone_angle, const FreqBand& band);

/// Per-eps rows "k,eps,r,s,admissible" under a header.
void ell_write_csv(std::ostream& os, const EllipticityReport& report);

/// Left quantization by FFT: per eps,
///   v_eps(x) = sum_xi a_eps(x, xi) u_hat_eps(xi) e^{i x xi} / N,
/// with frequencies beyond the default band fraction of Nyquist truncated.
/// Pure multipliers go through a forward/inverse FFT pair; x-dependent
/// symbols apply the multiplier row by row (quadratic in the node count).
/// The grid is treated as one period. Throws std::invalid_argument when
/// grids or eps nets disagree.
GridFn quantize_apply(const SymbolNet& a, const GridFn& u);

/// The noncharacteristic regularity example: u_eps = 1 / (1 + c_eps x^2)
/// sampled on a fixed deep grid, classified by is_ginfty over a window
/// around the coefficient's critical point. Regular exactly when (c_eps)
/// is slow-scale. Requires c_eps >= 0 (throws std::invalid_argument via
/// the scale's positivity check).
GInftyReport nonchar_example(const ScaleFn& c_spec, int alpha_max);

}  // namespace gf
