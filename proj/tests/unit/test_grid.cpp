#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "nuharm/grid.hpp"

using namespace nuharm;
using std::numbers::pi;

namespace {

double integrate_fn(const Grid& g, double (*f)(std::span<const double>)) {
    std::vector<double> s(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) s[k] = f(g.node(k));
    return integrate(g, s);
}

}  // namespace

TEST_SUITE("grid") {
    TEST_CASE("half-line trapezoid in log") {
        const Grid g = build_halfline_grid(1, 2, 1.0, 2.0);
        CHECK(integrate_fn(g, [](std::span<const double>) { return 1.0; }) ==
              doctest::Approx(0.5 * 3.0 * std::log(2.0)));
        const Grid fine = build_halfline_grid(1, 256, 1.0, 2.0);
        CHECK(integrate_fn(fine, [](std::span<const double>) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-5));
    }

    TEST_CASE("integral of 1/s over [1, e]") {
        const Grid g = build_halfline_grid(1, 64, 1.0, std::exp(1.0));
        CHECK(std::abs(integrate_fn(g, [](std::span<const double> x) { return 1.0 / x[0]; }) - 1.0) < 1e-4);
        const Grid m = build_halfline_grid(-1, 64, 1.0, std::exp(1.0));
        CHECK(m.node(0)[0] < 0.0);
        CHECK_THROWS(build_halfline_grid(1, 8, 2.0, 1.0));
        CHECK_THROWS(build_halfline_grid(1, 8, 0.0, 1.0));
    }

    TEST_CASE("annulus") {
        const Grid g = build_plane_grid(64, 64, 1.0, 2.0);
        CHECK(integrate_fn(g, [](std::span<const double>) { return 1.0; }) == doctest::Approx(3 * pi).epsilon(5e-3));
        const Grid h = build_plane_grid(64, 64, 0.1, 3.0);
        CHECK(integrate_fn(h, [](std::span<const double> x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); }) ==
              doctest::Approx(pi * (std::exp(-0.01) - std::exp(-9.0))).epsilon(5e-3));
    }

    TEST_CASE("cones") {
        const Grid g = build_cone_grid(1, 1, 64, 64, 1.0, 2.0, 1.0);
        CHECK(integrate_fn(g, [](std::span<const double>) { return 1.0; }) == doctest::Approx(3.0).epsilon(5e-3));
        for (std::size_t k = 0; k < g.size(); k += 97) {
            const auto x = g.node(k);
            CHECK(in_cone(1, 1, {x[0], x[1]}));
        }
        for (int i : {1, 2})
            for (int j : {1, 2}) {
                const Vec2 x = cone_point(i, j, 1.5, 0.4);
                CHECK(std::abs(minkowski(x, x)) == doctest::Approx(2.25));
                double r = 0, u = 0;
                REQUIRE(cone_chart(i, j, x, r, u));
                CHECK(r == doctest::Approx(1.5));
                CHECK(u == doctest::Approx(0.4));
                CHECK(in_cone(i, j, x));
                CHECK_FALSE(in_cone(3 - i, j, x));
            }
        CHECK_THROWS(build_cone_grid(3, 1, 8, 8, 1.0, 2.0, 1.0));
    }

    TEST_CASE("rapidity is shifted by boosts") {
        for (int i : {1, 2})
            for (int j : {1, 2}) {
                const Vec2 x = cone_point(i, j, 0.8, -0.3);
                CHECK(rapidity(boost(0.5, x)) == doctest::Approx(rapidity(x) + 0.5));
            }
    }

    TEST_CASE("group grid measures") {
        GroupGridSpec s;
        s.tag = GroupTag::Affine;
        s.n_b = 33;
        s.b_lo = -1;
        s.b_hi = 1;
        s.n_a = 129;
        s.a_min = 1;
        s.a_max = 2;
        const Grid g = build_group_grid(s);
        CHECK(integrate_fn(g, [](std::span<const double>) { return 1.0; }) == doctest::Approx(1.0).epsilon(5e-3));

        s.tag = GroupTag::Sim2;
        s.n_angle = 16;
        const Grid h = build_group_grid(s);
        CHECK(integrate_fn(h, [](std::span<const double>) { return 1.0; }) ==
              doctest::Approx(4.0 * 3.0 / 8.0 * 2 * pi).epsilon(5e-3));
    }

    TEST_CASE("trivial integrals") {
        const Grid g = build_plane_grid(16, 16, 1.0, 2.0);
        CHECK(integrate(g, std::vector<double>(g.size(), 0.0)) == 0.0);
        CHECK(integrate(g, std::vector<double>(g.size(), 1.0)) == doctest::Approx(pairwise_sum(g.weights())));
    }

    TEST_CASE("element and coordinates round trip") {
        GroupGridSpec s;
        s.tag = GroupTag::PoincareAff;
        s.n_b = 8;
        s.n_a = 8;
        s.n_angle = 8;
        const Grid g = build_group_grid(s);
        for (std::size_t k = 0; k < g.size(); k += 37) {
            const auto c = g.coordinates(g.element(k));
            for (std::size_t d = 0; d < c.size(); ++d) CHECK(c[d] == doctest::Approx(g.node(k)[d]));
        }
    }

    TEST_CASE("lattice quadrature gives full cells") {
        const Axis a = Axis::linear(5, 0.0, 4.0);
        CHECK(a.weight(0) == doctest::Approx(0.5));
        CHECK(a.with(Quadrature::Lattice).weight(0) == doctest::Approx(1.0));
    }

    TEST_CASE("interpolation stencil reproduces linear functions") {
        const Grid g = build_plane_grid(16, 16, 1.0, 3.0);
        std::vector<double> vals(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) vals[k] = std::log(std::hypot(g.node(k)[0], g.node(k)[1]));
        const double p[2] = {1.7, 0.9};
        const Stencil st = g.stencil(p);
        REQUIRE(st.count > 0);
        double v = 0.0;
        for (int i = 0; i < st.count; ++i) v += st.weight[i] * vals[st.index[i]];
        CHECK(v == doctest::Approx(std::log(std::hypot(1.7, 0.9))).epsilon(1e-12));
        const double out[2] = {5.0, 0.0};
        CHECK(g.stencil(out).count == 0);
    }

    TEST_CASE("csv round trip") {
        const Grid g = build_halfline_grid(1, 8, 0.5, 4.0);
        std::stringstream ss;
        write_grid_csv(ss, g);
        const GridTable t = read_grid_csv(ss);
        REQUIRE(t.weights.size() == g.size());
        for (std::size_t k = 0; k < g.size(); ++k) {
            CHECK(t.weights[k] == doctest::Approx(g.weight(k)).epsilon(1e-15));
            CHECK(t.nodes[k] == doctest::Approx(g.node(k)[0]).epsilon(1e-15));
        }
    }
}
