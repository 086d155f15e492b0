#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "gf/defaults.hpp"
#include "gf/grid_fn.hpp"
#include "gf/scale_fn.hpp"

namespace gf {

/// One microlocal test configuration: a cutoff neighborhood of a base
/// point and a frequency cone around a unit direction, restricted to a
/// magnitude band.
struct ConeSpec {
    std::array<double, 2> x0{0.0, 0.0};   ///< base point
    double r = 0.25;                      ///< cutoff radius
    std::array<double, 2> xi0{1.0, 0.0};  ///< unit direction
    double theta = defaults::cone_half_angle;  ///< cone half-angle (radians)
    double f_lo = 0.0, f_hi = 0.0;        ///< tested frequency magnitudes

    /// Throws std::invalid_argument unless r > 0 with x0 +- r inside the
    /// grid, theta in (0, pi/2), |xi0| > 0, and the band satisfies
    /// f_lo >= 4 * 2pi / (shortest axis length) and f_hi <= the grid
    /// Nyquist frequency pi / h.
    void validate(const SpatialGrid& grid) const;
};

/// Decay suprema s_eps(l) = sup over the cone-band of
/// h^d |F(phi u_eps)(xi)| (1+|xi|)^l, one row per eps.
struct DecayProfile {
    std::vector<int> l_values;
    EpsGrid eps;
    std::vector<std::vector<double>> s;  ///< s[k][j] for eps_k, l_values[j]
    std::string scale_tag;               ///< provenance: scale used to build u
};

/// Verdict of the decay-slope test.
struct MicroVerdict {
    bool regular = false;
    double slope = 0.0;           ///< least-squares slope of N(l) against l
    std::vector<double> n_hat;    ///< fitted growth exponent per l-value
};

/// Smooth cutoff sampled on the grid: 1 on |x - x0| <= r/2, 0 outside
/// |x - x0| <= r, with a C-infinity radial transition. Throws if the
/// support would be clipped by the grid boundary.
std::vector<double> cutoff(const std::array<double, 2>& x0, double r,
                           const SpatialGrid& grid);

/// Per-eps windowed spectrum suprema over the cone-band, from an FFT of
/// cutoff * u_eps cropped to the cutoff support and zero-padded by at
/// least the default factor to a power of two. Throws on an invalid cone,
/// an empty cone-band intersection, or l_values outside {0..8}.
DecayProfile cone_decay_profile(const GridFn& u, const ConeSpec& c,
                                const std::vector<int>& l_values,
                                const ScaleFn& scale);

/// Growth-slope verdict on a profile: for each l, N(l) is the
/// least-squares slope of log s_eps(l) against log gamma_eps over the
/// small-eps tail; the pair is regular iff the slope of N(l) against l
/// stays at or below slope_tol (one exponent works for every l).
/// Requires >= 4 l-values and >= 8 eps points. An identically zero profile
/// is regular with slope 0.
MicroVerdict microlocal_verdict(const DecayProfile& p, const ScaleFn& scale,
                                double slope_tol = defaults::slope_tol);

/// Scan configuration shared by every (base point, direction) pair.
struct WFScanParams {
    double r = 0.25;
    double theta = defaults::cone_half_angle;
    double f_lo = 0.0;  ///< 0: auto = 4 * 2pi / shortest axis length
    double f_hi = 0.0;  ///< 0: auto = 0.8 * Nyquist
    std::vector<int> l_values{1, 2, 3, 4};
    double slope_tol = defaults::slope_tol;
    bool half_radius_retest = true;  ///< accept singular only if r and r/2 agree
    int jobs = 1;                    ///< worker threads (results independent of it)
};

/// One scanned (base point, direction) entry of a report.
struct WFPair {
    std::array<double, 2> x0{0.0, 0.0};
    std::array<double, 2> xi0{1.0, 0.0};
    double angle = 0.0;  ///< atan2(xi0[1], xi0[0])
    bool singular = false;
    double slope = 0.0;         ///< full-radius decay slope
    double slope_retest = 0.0;  ///< half-radius slope (when retested)
    bool retested = false;
    std::string error;  ///< non-fatal per-pair failure, verdict then regular
};

/// Estimated generalized wave front set at the recorded scale: the
/// singular pairs of the scan.
struct WFReport {
    std::vector<WFPair> pairs;
    std::string scale_tag;
    std::vector<int> l_values;
    double slope_tol = defaults::slope_tol;
};

/// Runs the microlocal test on every (base point, direction) pair.
/// Per-pair errors are recorded in the pair, not raised. Results are
/// deterministic and independent of params.jobs.
WFReport wf_scan(const GridFn& u, const std::vector<std::array<double, 2>>& base_points,
                 const std::vector<std::array<double, 2>>& directions,
                 const WFScanParams& params, const ScaleFn& scale);

/// Uniform direction grid: n angles on the unit circle starting at 0.
std::vector<std::array<double, 2>> angle_grid(int n = defaults::n_angles);

/// CSV rows "x,y,angle,verdict,slope,retest_slope,error" under a header.
void wf_write_csv(std::ostream& os, const WFReport& report);

/// Self-contained overlay figure: base points colored by verdict with one
/// tick per scanned direction (filled when singular).
void wf_write_svg(std::ostream& os, const WFReport& report, const Box& world,
                  const std::string& title);

}  // namespace gf
