#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gf/dist_spec.hpp"
#include "gf/embed.hpp"
#include "gf/fft.hpp"
#include "gf/mollifier.hpp"
#include "gf/scale_fn.hpp"
#include "gf/wavefront.hpp"

using namespace gf;

namespace {

SpatialGrid grid1d(double lo, double hi, std::size_t n) {
    return SpatialGrid(GridAxis{lo, hi, n});
}

/// Band used throughout: the automatic choice of wf_scan, spelled out so
/// profile-level tests can reproduce it bit for bit.
double band_lo(const SpatialGrid& g) {
    double len = g.axis(0).length();
    if (g.dim() == 2) len = std::min(len, g.axis(1).length());
    return 4.0 * 2.0 * M_PI / len;
}

double band_hi(const SpatialGrid& g) {
    double ny = M_PI / g.axis(0).h();
    if (g.dim() == 2) ny = std::min(ny, M_PI / g.axis(1).h());
    return 0.8 * ny;
}

ConeSpec cone_at(double x, const SpatialGrid& g, double r, double dir = 1.0) {
    ConeSpec c;
    c.x0 = {x, 0.0};
    c.r = r;
    c.xi0 = {dir, 0.0};
    c.f_lo = band_lo(g);
    c.f_hi = band_hi(g);
    return c;
}

std::vector<std::complex<double>> naive_dft_1d(const std::vector<std::complex<double>>& v) {
    const std::size_t n = v.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ph = -2.0 * M_PI * static_cast<double>(j * k % n) / n;
            acc += v[j] * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        out[k] = acc;
    }
    return out;
}

std::vector<std::complex<double>> naive_dft_2d(const std::vector<std::complex<double>>& v,
                                               std::size_t n0, std::size_t n1) {
    std::vector<std::complex<double>> out(n0 * n1);
    for (std::size_t k1 = 0; k1 < n1; ++k1)
        for (std::size_t k0 = 0; k0 < n0; ++k0) {
            std::complex<double> acc = 0.0;
            for (std::size_t j1 = 0; j1 < n1; ++j1)
                for (std::size_t j0 = 0; j0 < n0; ++j0) {
                    const double ph = -2.0 * M_PI *
                                      (static_cast<double>(j0 * k0) / n0 +
                                       static_cast<double>(j1 * k1) / n1);
                    acc += v[j1 * n0 + j0] * std::complex<double>(std::cos(ph), std::sin(ph));
                }
            out[k1 * n0 + k0] = acc;
        }
    return out;
}

}  // namespace

TEST_CASE("forward FFT matches a direct DFT evaluation") {
    SUBCASE("1-d, power-of-two and composite sizes") {
        for (std::size_t n : {std::size_t(16), std::size_t(12)}) {
            std::vector<std::complex<double>> v(n);
            for (std::size_t j = 0; j < n; ++j)
                v[j] = {std::sin(0.7 * j + 0.3), std::cos(1.3 * j) - 0.2};
            const auto got = fft_forward_1d(v);
            const auto want = naive_dft_1d(v);
            REQUIRE(got.size() == n);
            for (std::size_t k = 0; k < n; ++k)
                CHECK(std::abs(got[k] - want[k]) <= 1e-12 * static_cast<double>(n));
        }
    }
    SUBCASE("2-d with axis 0 fastest") {
        const std::size_t n0 = 4, n1 = 3;
        std::vector<std::complex<double>> v(n0 * n1);
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = {0.1 * j - 0.4, std::sin(2.1 * j)};
        const auto got = fft_forward_2d(v, n0, n1);
        const auto want = naive_dft_2d(v, n0, n1);
        for (std::size_t k = 0; k < v.size(); ++k)
            CHECK(std::abs(got[k] - want[k]) <= 1e-12);
    }
    SUBCASE("identical inputs give identical outputs across calls") {
        std::vector<std::complex<double>> v(32);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = {1.0 / (j + 1.0), 0.25 * j};
        const auto a = fft_forward_1d(v);
        const auto b = fft_forward_1d(v);
        for (std::size_t k = 0; k < v.size(); ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("cutoff window is a smooth radial plateau") {
    const SpatialGrid g(GridAxis{-1.0, 1.0, 129}, GridAxis{-1.0, 1.0, 129});
    const std::array<double, 2> x0{0.0, 0.0};
    const auto phi = cutoff(x0, 0.5, g);

    auto at = [&](std::size_t i0, std::size_t i1) { return phi[g.index(i0, i1)]; };
    const std::size_t c = 64;  // node at the origin
    CHECK(at(c, c) == 1.0);
    CHECK(at(c + 16, c) == 1.0);   // distance 0.25 = r/2: still on the plateau
    CHECK(at(c, c + 16) == 1.0);   // radial symmetry of the plateau
    CHECK(at(c + 32, c) == 0.0);   // distance 0.50 = r: support boundary
    CHECK(at(c + 40, c) == 0.0);   // outside the support
    CHECK(at(c + 24, c) == 0.5);   // midpoint of the transition zone
    CHECK(at(c + 24, c) == at(c, c + 24));
    CHECK(at(c - 24, c) == at(c + 24, c));

    // Monotone decay through the transition zone.
    double prev = 1.0;
    for (std::size_t i = c + 16; i <= c + 32; ++i) {
        CHECK(at(i, c) <= prev);
        prev = at(i, c);
    }
    for (double v : phi) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    CHECK_THROWS_AS(cutoff({0.9, 0.0}, 0.5, g), std::invalid_argument);
    CHECK_THROWS_AS(cutoff({0.0, -0.9}, 0.5, g), std::invalid_argument);
    CHECK_THROWS_AS(cutoff(x0, 0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(cutoff(x0, -0.25, g), std::invalid_argument);
}

TEST_CASE("cone specifications reject inconsistent geometry") {
    const SpatialGrid g = grid1d(-2.0, 2.0, 2049);
    const ConeSpec ok = cone_at(0.0, g, 0.75);
    CHECK_NOTHROW(ok.validate(g));

    ConeSpec c = ok;
    c.r = 0.0;
    CHECK_THROWS_AS(c.validate(g), std::invalid_argument);
    c = ok;
    c.x0 = {1.8, 0.0};
    CHECK_THROWS_AS(c.validate(g), std::invalid_argument);
    c = ok;
    c.theta = 0.0;
    CHECK_THROWS_AS(c.validate(g), std::invalid_argument);
    c = ok;
    c.theta = M_PI / 2.0;
    CHECK_THROWS_AS(c.validate(g), std::invalid_argument);
    c = ok;
    c.xi0 = {0.0, 0.0};
    CHECK_THROWS_AS(c.validate(g), std::invalid_argument);
    c = ok;
    c.f_lo = 0.5 * band_lo(g);  // fewer than four cycles across the domain
    CHECK_THROWS_AS(c.validate(g), std::invalid_argument);
    c = ok;
    c.f_hi = 1.01 * M_PI / g.axis(0).h();  // beyond Nyquist
    CHECK_THROWS_AS(c.validate(g), std::invalid_argument);
    c = ok;
    c.f_lo = c.f_hi;
    CHECK_THROWS_AS(c.validate(g), std::invalid_argument);
}

TEST_CASE("angle grid covers the unit circle uniformly") {
    const auto dirs = angle_grid();
    REQUIRE(dirs.size() == 16);
    CHECK(dirs[0][0] == 1.0);
    CHECK(dirs[0][1] == 0.0);
    for (const auto& d : dirs)
        CHECK(std::hypot(d[0], d[1]) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(dirs[4][0]) <= 1e-15);
    CHECK(dirs[4][1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dirs[8][0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK_THROWS_AS(angle_grid(0), std::invalid_argument);
}

TEST_CASE("windowed decay profiles classify point singularities") {
    const Mollifier& m = Mollifier::bump();
    const ScaleFn scale = ScaleFn::log_scale();
    const EpsGrid eps = make_dyadic_grid(4, 19);
    const SpatialGrid g = grid1d(-2.0, 2.0, 2049);
    const std::vector<int> ls{1, 2, 3, 4};

    const GridFn ud = embed(DistSpec::delta(0.0), m, scale, g, eps);
    const ConeSpec cp = cone_at(0.0, g, 0.75);
    const DecayProfile pd = cone_decay_profile(ud, cp, ls, scale);

    SUBCASE("profile carries its configuration") {
        CHECK(pd.l_values == ls);
        CHECK(pd.scale_tag == "log");
        REQUIRE(pd.s.size() == eps.size());
        for (const auto& row : pd.s) REQUIRE(row.size() == ls.size());
    }

    SUBCASE("a point mass is singular with unit growth per weight order") {
        const MicroVerdict v = microlocal_verdict(pd, scale);
        CHECK_FALSE(v.regular);
        CHECK(v.slope == doctest::Approx(1.0).epsilon(0.15));
        REQUIRE(v.n_hat.size() == 4);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(v.n_hat[i] == doctest::Approx(static_cast<double>(ls[i])).epsilon(0.15));

        // Same verdict from the half-size window: the classification is a
        // property of the germ at the point, not of the window chosen.
        const DecayProfile ph = cone_decay_profile(ud, cone_at(0.0, g, 0.375), ls, scale);
        const MicroVerdict vh = microlocal_verdict(ph, scale);
        CHECK_FALSE(vh.regular);
        CHECK(vh.slope == doctest::Approx(1.0).epsilon(0.15));
    }

    SUBCASE("opposite directions agree for a real even input") {
        const DecayProfile pn = cone_decay_profile(ud, cone_at(0.0, g, 0.75, -1.0), ls, scale);
        const MicroVerdict va = microlocal_verdict(pd, scale);
        const MicroVerdict vb = microlocal_verdict(pn, scale);
        CHECK(va.regular == vb.regular);
        CHECK(va.slope == doctest::Approx(vb.slope).epsilon(1e-9));
        for (std::size_t i = 0; i < va.n_hat.size(); ++i)
            CHECK(va.n_hat[i] == doctest::Approx(vb.n_hat[i]).epsilon(1e-9));
    }

    SUBCASE("verdict is invariant under amplitude scaling") {
        const GridFn big = embed(DistSpec::delta(0.0, 1000.0), m, scale, g, eps);
        const MicroVerdict va = microlocal_verdict(pd, scale);
        const MicroVerdict vb =
            microlocal_verdict(cone_decay_profile(big, cp, ls, scale), scale);
        CHECK(va.regular == vb.regular);
        CHECK(va.slope == doctest::Approx(vb.slope).epsilon(1e-9));
        for (std::size_t i = 0; i < va.n_hat.size(); ++i)
            CHECK(va.n_hat[i] == doctest::Approx(vb.n_hat[i]).epsilon(1e-9));
    }

    SUBCASE("a smooth function is regular") {
        DistTerm ts;
        ts.kind = DistTerm::Kind::smooth;
        ts.smooth.fn = SmoothSpec::Fn::gaussian;
        ts.smooth.a = 1.0;
        ts.smooth.b = 0.0;
        ts.smooth.c = 0.5;
        const GridFn us = embed(DistSpec::combo({ts}), m, scale, g, eps);
        const MicroVerdict v =
            microlocal_verdict(cone_decay_profile(us, cp, ls, scale), scale);
        CHECK(v.regular);
        CHECK(std::abs(v.slope) <= 0.1);
        for (double n : v.n_hat) CHECK(std::abs(n) <= 0.15);
    }

    SUBCASE("a step is singular with growth emerging at high weight order") {
        const GridFn uh = embed(DistSpec::heaviside(0.0, false), m, scale, g, eps);
        const MicroVerdict v =
            microlocal_verdict(cone_decay_profile(uh, cp, ls, scale), scale);
        CHECK_FALSE(v.regular);
        CHECK(v.slope == doctest::Approx(1.0).epsilon(0.2));
        CHECK(v.n_hat[3] > 2.0);
    }

    SUBCASE("a window away from the support sees nothing and is regular") {
        ConeSpec far = cone_at(1.25, g, 0.5);
        const DecayProfile pf = cone_decay_profile(ud, far, ls, scale);
        for (const auto& row : pf.s)
            for (double s : row) CHECK(s == 0.0);
        const MicroVerdict v = microlocal_verdict(pf, scale);
        CHECK(v.regular);
        CHECK(v.slope == 0.0);
    }

    SUBCASE("profiles at translated base points match bit for bit") {
        // 0.5 is a whole number of grid cells, so the window contents are
        // exact translates and every derived quantity must coincide.
        const GridFn u2 = embed(DistSpec::delta(0.5), m, scale, g, eps);
        ConeSpec c2 = cone_at(0.5, g, 0.75);
        const DecayProfile pb = cone_decay_profile(u2, c2, ls, scale);
        REQUIRE(pb.s.size() == pd.s.size());
        for (std::size_t k = 0; k < pd.s.size(); ++k)
            for (std::size_t j = 0; j < pd.s[k].size(); ++j)
                CHECK(pd.s[k][j] == pb.s[k][j]);
    }

    SUBCASE("a band that dodges every frequency bin is rejected") {
        // With this window the padded transform has bins spaced pi/2 apart,
        // so (10.1, 10.9) contains none of them.
        ConeSpec c = cone_at(0.0, g, 0.25);
        c.f_lo = 10.1;
        c.f_hi = 10.9;
        CHECK_THROWS_AS(cone_decay_profile(ud, c, ls, scale), std::invalid_argument);
    }

    SUBCASE("input validation") {
        ConeSpec c = cone_at(0.0, g, 0.75);
        CHECK_THROWS_AS(cone_decay_profile(ud, c, {}, scale), std::invalid_argument);
        CHECK_THROWS_AS(cone_decay_profile(ud, c, {1, 2, 9}, scale), std::invalid_argument);
        CHECK_THROWS_AS(cone_decay_profile(ud, c, {-1, 2, 3}, scale), std::invalid_argument);

        DecayProfile few = pd;
        few.l_values = {1, 2, 3};
        for (auto& row : few.s) row.resize(3);
        CHECK_THROWS_AS(microlocal_verdict(few, scale), std::invalid_argument);

        const EpsGrid short_eps = make_dyadic_grid(4, 10);
        const GridFn us = embed(DistSpec::delta(0.0), m, scale, g, short_eps);
        DecayProfile p7 = cone_decay_profile(us, cp, ls, scale);
        CHECK_THROWS_AS(microlocal_verdict(p7, scale), std::invalid_argument);
    }
}

TEST_CASE("a full scan recovers the singular support of a one-dimensional net") {
    const Mollifier& m = Mollifier::bump();
    const ScaleFn scale = ScaleFn::log_scale();
    const EpsGrid eps = make_dyadic_grid(4, 19);
    const SpatialGrid g = grid1d(-4.0, 4.0, 4097);

    DistTerm td;
    td.kind = DistTerm::Kind::delta;
    td.x0 = 1.5;
    DistTerm th;
    th.kind = DistTerm::Kind::heaviside;
    th.x0 = -1.5;
    th.left = false;
    const GridFn u = embed(DistSpec::combo({td, th}), m, scale, g, eps);

    WFScanParams params;
    params.r = 1.0;
    const std::vector<std::array<double, 2>> pts{
        {-3.0, 0.0}, {-1.5, 0.0}, {0.0, 0.0}, {1.5, 0.0}, {3.0, 0.0}};
    const std::vector<std::array<double, 2>> dirs{{1.0, 0.0}, {-1.0, 0.0}};
    const WFReport rep = wf_scan(u, pts, dirs, params, scale);

    REQUIRE(rep.pairs.size() == pts.size() * dirs.size());
    CHECK(rep.scale_tag == "log");

    SUBCASE("singular exactly at the step and at the point mass") {
        for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
            const WFPair& p = rep.pairs[i];
            CHECK(p.error.empty());
            const bool on_singularity = std::abs(std::abs(p.x0[0]) - 1.5) < 1e-12;
            CHECK(p.singular == on_singularity);
            if (on_singularity) {
                CHECK(p.retested);
                CHECK(p.slope == doctest::Approx(1.0).epsilon(0.15));
                CHECK(p.slope_retest > rep.slope_tol + 0.1);
            } else {
                CHECK_FALSE(p.retested);
                CHECK(std::abs(p.slope) <= 1e-12);
            }
        }
        // Report rows follow the scan order: base points outer, directions inner.
        CHECK(rep.pairs[0].x0[0] == -3.0);
        CHECK(rep.pairs[1].x0[0] == -3.0);
        CHECK(rep.pairs[1].angle == doctest::Approx(M_PI).epsilon(1e-15));
        CHECK(rep.pairs[9].x0[0] == 3.0);
    }

    SUBCASE("scan agrees with a standalone profile at the same pair") {
        ConeSpec c = cone_at(1.5, g, params.r);
        const MicroVerdict v =
            microlocal_verdict(cone_decay_profile(u, c, params.l_values, scale), scale,
                               params.slope_tol);
        CHECK(rep.pairs[6].x0[0] == 1.5);
        CHECK(rep.pairs[6].slope == v.slope);  // same window, same numbers
        CHECK(rep.pairs[6].singular == !v.regular);
    }

    SUBCASE("results are byte-identical regardless of the worker count") {
        WFScanParams par4 = params;
        par4.jobs = 4;
        const WFReport rep4 = wf_scan(u, pts, dirs, par4, scale);
        std::ostringstream a, b;
        wf_write_csv(a, rep);
        wf_write_csv(b, rep4);
        CHECK(a.str() == b.str());
    }

    SUBCASE("CSV rendering") {
        std::ostringstream os;
        wf_write_csv(os, rep);
        const std::string csv = os.str();
        CHECK(csv.rfind("x,y,angle,verdict,slope,retest_slope,error\n", 0) == 0);
        CHECK(csv.find("\n1.5,0,0,singular,") != std::string::npos);
        CHECK(csv.find("\n-3,0,0,regular,") != std::string::npos);
        CHECK(csv.find("3.1415926535897931") != std::string::npos);
        std::size_t lines = 0;
        for (char ch : csv)
            if (ch == '\n') ++lines;
        CHECK(lines == rep.pairs.size() + 1);
    }

    SUBCASE("SVG rendering") {
        std::ostringstream os;
        Box world;
        world.lo = {-4.0, -1.0};
        world.hi = {4.0, 1.0};
        wf_write_svg(os, rep, world, "scan overlay");
        const std::string svg = os.str();
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(svg.find("width=\"1000\"") != std::string::npos);
        CHECK(svg.find("height=\"700\"") != std::string::npos);
        CHECK(svg.find("scan overlay") != std::string::npos);
        CHECK(svg.find("#c62828") != std::string::npos);  // singular marks present
    }

    SUBCASE("per-pair failures are recorded, not raised") {
        // Base point too close to the boundary for the window: the scan
        // reports the problem on the affected pairs and continues.
        const std::vector<std::array<double, 2>> bad{{3.8, 0.0}, {1.5, 0.0}};
        const WFReport r2 = wf_scan(u, bad, dirs, params, scale);
        REQUIRE(r2.pairs.size() == 4);
        CHECK_FALSE(r2.pairs[0].error.empty());
        CHECK_FALSE(r2.pairs[0].singular);
        CHECK_FALSE(r2.pairs[1].error.empty());
        CHECK(r2.pairs[2].error.empty());
        CHECK(r2.pairs[2].singular);
        CHECK(r2.pairs[3].singular);
    }

    SUBCASE("scan input validation") {
        CHECK_THROWS_AS(wf_scan(u, {}, dirs, params, scale), std::invalid_argument);
        CHECK_THROWS_AS(wf_scan(u, pts, {}, params, scale), std::invalid_argument);
        WFScanParams bad = params;
        bad.l_values = {1, 2, 3};
        CHECK_THROWS_AS(wf_scan(u, pts, dirs, bad, scale), std::invalid_argument);
    }
}

TEST_CASE("directional verdicts separate a line singularity in two dimensions") {
    const Mollifier& m = Mollifier::bump();
    const ScaleFn scale = ScaleFn::log_scale();
    const EpsGrid eps = make_dyadic_grid(4, 19);
    const SpatialGrid g(GridAxis{-1.0, 1.0, 257}, GridAxis{-1.0, 1.0, 257});

    // A point mass in x, constant along y: singular exactly across the
    // line x = 0 and only in the +-x directions.
    const GridFn u = embed(DistSpec::delta(0.0), m, scale, g, eps, 0);

    WFScanParams params;
    params.r = 0.35;
    const std::vector<std::array<double, 2>> pts{{0.0, 0.3}, {0.5, 0.0}};
    const std::vector<std::array<double, 2>> dirs{
        {1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    const WFReport rep = wf_scan(u, pts, dirs, params, scale);
    REQUIRE(rep.pairs.size() == 8);
    for (const auto& p : rep.pairs) CHECK(p.error.empty());

    // On the line: the normal directions are singular, the tangential ones
    // are regular.
    CHECK(rep.pairs[0].singular);
    CHECK(rep.pairs[1].singular);
    CHECK(rep.pairs[0].slope == doctest::Approx(0.85).epsilon(0.25));
    CHECK_FALSE(rep.pairs[2].singular);
    CHECK_FALSE(rep.pairs[3].singular);
    CHECK(std::abs(rep.pairs[2].slope) <= 0.2);

    // Mirror directions agree.
    CHECK(rep.pairs[0].slope == doctest::Approx(rep.pairs[1].slope).epsilon(1e-9));
    CHECK(rep.pairs[2].slope == doctest::Approx(rep.pairs[3].slope).epsilon(1e-9));

    // Away from the line the window tail is empty for small eps: regular in
    // every direction with an exactly flat profile.
    for (std::size_t i = 4; i < 8; ++i) {
        CHECK_FALSE(rep.pairs[i].singular);
        CHECK(std::abs(rep.pairs[i].slope) <= 1e-12);
    }
}
