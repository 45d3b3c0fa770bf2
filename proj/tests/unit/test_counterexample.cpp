#include <cmath>
#include <numbers>

#include "cli/checks.hpp"
#include "doctest.h"
#include "nuharm/counterexample.hpp"

using namespace nuharm;
using std::numbers::pi;

namespace {

// C_a(x) by composite Gauss-Legendre on [0, x] after t = u^{1/(1-a)}, which removes the endpoint singularity
double C_reference(double alpha, double x) {
    const double xi[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
    const double wi[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                          0.2369268850561891};
    const double q = 1.0 / (1.0 - alpha);
    const double umax = std::pow(x, 1.0 - alpha);
    const int panels = 20000;
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = umax * k / panels, hi = umax * (k + 1) / panels;
        for (int i = 0; i < 5; ++i) {
            const double u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xi[i];
            // t = u^q, dt = q u^{q-1} du, t^{-a} = u^{-a q}; exponent q-1-a q = 0
            s += 0.5 * (hi - lo) * wi[i] * q * std::cos(std::pow(u, q));
        }
    }
    return s;
}

}  // namespace

TEST_SUITE("counterexample") {
    TEST_CASE("oscillatory integral against an independent quadrature") {
        for (double a : {0.1, 0.25, 0.45})
            for (double x : {0.5, 3.0, 20.0, 200.0}) CHECK(oscillatory_C(a, x) == doctest::Approx(C_reference(a, x)).epsilon(1e-9));
    }

    TEST_CASE("limit of C_a matches the Gamma identity") {
        for (double a : {0.1, 0.25, 0.45})
            CHECK(oscillatory_C_limit(a) == doctest::Approx(std::tgamma(1 - a) * std::sin(pi * a / 2)).epsilon(1e-6));
    }

    TEST_CASE("lower bound B") {
        CHECK(lower_bound_B(0.45, 0.5, 1e4, 4096) > 0.0);
        // C_a is negative near 3pi/2 for small alpha
        CHECK(lower_bound_B(0.1, 0.5, 1e4, 4096) < 0.0);
        // the oscillation amplitude x^{-a} stays above the limit ~0.167 up to x ~ 1e8
        CHECK(lower_bound_B(0.1, 10.0, 1e4, 4096) < 0.0);
        CHECK(admissible_inner_cutoff(0.1, 1.0) == 0.0);
        const double r = admissible_inner_cutoff(0.25, 1.0);
        CHECK(r >= 1.0);
        CHECK(lower_bound_B(0.25, r, 1e5, 4096) > 0.0);
        CHECK(lower_bound_B(0.25, r / 10.0, 1e5, 4096) <= 0.0);
    }

    TEST_CASE("f_alpha samples") {
        const auto spec = CounterexampleSpec::with_p_prime(GroupTag::Affine, 0.25, 1.5, 2.0);
        CHECK(f_alpha_value(spec, GroupElement::affine(1.0, 1.0)).real() == doctest::Approx(1.0));
        CHECK(std::abs(f_alpha_value(spec, GroupElement::affine(3.0, 1.0))) == 0.0);
        CHECK(std::abs(f_alpha_value(spec, GroupElement::affine(1.0, 3.0))) == 0.0);

        GroupGridSpec g;
        g.n_b = 8;  // even: no node at b = 0
        g.n_a = 8;
        auto grid = std::make_shared<Grid>(build_group_grid(g));
        CHECK_NOTHROW(build_f_alpha(spec, grid));
        g.n_b = 9;
        CHECK_THROWS(build_f_alpha(spec, std::make_shared<Grid>(build_group_grid(g))));
    }

    TEST_CASE("exponents and thresholds") {
        const auto aff = CounterexampleSpec::with_p_prime(GroupTag::Affine, 0.45, 1.5);
        CHECK(predicted_exponent(aff) == doctest::Approx(2 * (0.45 - 1) + 2 / 1.5 - 1));
        CHECK(predicted_exponent(aff) + 1 == doctest::Approx(0.23333333333));
        CHECK(alpha_threshold(GroupTag::Affine, 1.5) == doctest::Approx(1.0 / 3.0));
        CHECK(alpha_threshold(GroupTag::Sim2, 1.6) == doctest::Approx(0.25));
        CHECK(alpha_threshold(GroupTag::PoincareAff, 1.5) == doctest::Approx(0.75 - 1.0 / 3.0));
        const auto sim = CounterexampleSpec::with_p_prime(GroupTag::Sim2, 0.45, 1.6);
        CHECK(predicted_exponent(sim) + 1 == doctest::Approx(2 * 0.45 + 4 / 1.6 - 3));
        const auto paff = CounterexampleSpec::with_p_prime(GroupTag::PoincareAff, 0.45, 1.5);
        CHECK(predicted_exponent(paff) + 1 == doctest::Approx(4 * 0.45 + 2 / 1.5 - 3));
    }

    TEST_CASE("truncated integral against the antiderivative") {
        auto spec = CounterexampleSpec::with_p_prime(GroupTag::Affine, 0.45, 1.5);
        const double e = predicted_exponent(spec);
        spec.T = 1e6;
        const double v1 = truncated_divergence_integral(spec);
        spec.T = 2e6;
        const double v2 = truncated_divergence_integral(spec);
        // value ~ c (T^{e+1} - R^{e+1}); the offset changes the ratio slightly
        CHECK(v2 / v1 == doctest::Approx(std::pow(2.0, e + 1)).epsilon(0.02));
        CHECK(truncated_divergence_integral(spec, 0.0) == 0.0);
    }

    TEST_CASE("slope fitter") {
        std::vector<SweepRecord> r;
        for (int k = 0; k <= 8; ++k) {
            SweepRecord s;
            s.T = std::pow(10.0, 1 + k / 4.0);
            s.value = std::pow(s.T, 0.25);
            r.push_back(s);
        }
        CHECK(fit_loglog_slope(r) == doctest::Approx(0.25).epsilon(1e-6));
        double prev = 1.0;
        for (double top : {1e3, 1e6, 1e12}) {
            std::vector<SweepRecord> l;
            for (int k = 0; k <= 8; ++k) {
                SweepRecord s;
                s.T = top * std::pow(10.0, (k - 8) / 8.0);
                s.value = std::log(s.T);
                l.push_back(s);
            }
            const double sl = fit_loglog_slope(l);
            CHECK(sl < prev);
            prev = sl;
        }
        CHECK(prev < 0.05);
    }

    TEST_CASE("sweeps") {
        const SweepResult d = cli::run_sweep(GroupTag::Affine, 0.45, 1.5, 1.0, {});
        CHECK(d.observed == Growth::Divergent);
        CHECK(d.slope == doctest::Approx(0.23333).epsilon(0.05));
        CHECK(d.pass);
        const SweepResult c = cli::run_sweep(GroupTag::Affine, 0.20, 1.5, 1.0, {});
        CHECK(c.predicted == Growth::Convergent);
        CHECK(c.observed == Growth::Convergent);
        const SweepResult s = cli::run_sweep(GroupTag::Sim2, 0.45, 1.6, 1.0, {});
        CHECK(s.predicted == Growth::Divergent);
        CHECK(s.pass);
        for (std::size_t k = 1; k < d.records.size(); ++k) CHECK(d.records[k].T > d.records[k - 1].T);
    }

    TEST_CASE("S2 two-pipeline check") {
        const auto rows = cli::s2_checks({});
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].value <= 0.03);
        CHECK(rows[1].value == 0.0);
        CHECK(rows[2].value <= 0.05);
    }

    TEST_CASE("spec validation") {
        auto s = CounterexampleSpec::with_p_prime(GroupTag::Affine, 0.45, 1.5);
        s.T = 0.5;
        CHECK_THROWS(s.validate());
        CHECK_THROWS(CounterexampleSpec::with_p_prime(GroupTag::Affine, 0.45, 0.9).validate());
    }
}
