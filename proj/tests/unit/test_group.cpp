#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nuharm/group.hpp"

using namespace nuharm;
using std::numbers::pi;

namespace {

void check_close(const GroupElement& g, const GroupElement& h, double tol = 1e-12) {
    CHECK(g.tag == h.tag);
    CHECK(g.b.x == doctest::Approx(h.b.x).epsilon(tol));
    CHECK(g.b.y == doctest::Approx(h.b.y).epsilon(tol));
    CHECK(g.a == doctest::Approx(h.a).epsilon(tol));
    CHECK(g.angle == doctest::Approx(h.angle).epsilon(tol));
}

GroupElement random_element(GroupTag tag, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double a = std::exp(u(rng) / 2.0);
    switch (tag) {
        case GroupTag::Affine: return GroupElement::affine(u(rng), a);
        case GroupTag::Sim2: return GroupElement::sim2({u(rng), u(rng)}, a, reduce_angle(u(rng) * 2.0));
        case GroupTag::PoincareAff: return GroupElement::poincare({u(rng), u(rng)}, a, u(rng) / 2.0);
    }
    return identity(tag);
}

}  // namespace

TEST_SUITE("group") {
    TEST_CASE("multiplication examples") {
        check_close(multiply(GroupElement::affine(1, 2), GroupElement::affine(3, 4)), GroupElement::affine(7, 8));
        check_close(multiply(GroupElement::sim2({0, 0}, 1, pi / 2), GroupElement::sim2({1, 0}, 1, 0)),
                    GroupElement::sim2({0, 1}, 1, pi / 2));
        check_close(multiply(GroupElement::poincare({0, 0}, 2, 0), GroupElement::poincare({1, 1}, 1, 0)),
                    GroupElement::poincare({2, 2}, 2, 0));
    }

    TEST_CASE("mixed tags are rejected") {
        CHECK_THROWS_AS(multiply(GroupElement::affine(0, 1), GroupElement::sim2({0, 0}, 1, 0)), IncompatibleGroups);
    }

    TEST_CASE("inverse examples") {
        check_close(inverse(GroupElement::affine(3, 2)), GroupElement::affine(-1.5, 0.5));
        const GroupElement s = inverse(GroupElement::sim2({1, 0}, 1, pi / 2));
        CHECK(s.b.x == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(s.b.y == doctest::Approx(1.0));
        CHECK(s.angle == doctest::Approx(3 * pi / 2));
    }

    TEST_CASE("identity elements") {
        check_close(identity(GroupTag::Affine), GroupElement::affine(0, 1));
        check_close(identity(GroupTag::Sim2), GroupElement::sim2({0, 0}, 1, 0));
        check_close(identity(GroupTag::PoincareAff), GroupElement::poincare({0, 0}, 1, 0));
    }

    TEST_CASE("axioms on random elements") {
        std::mt19937_64 rng(3);
        for (GroupTag tag : {GroupTag::Affine, GroupTag::Sim2, GroupTag::PoincareAff}) {
            for (int k = 0; k < 50; ++k) {
                const GroupElement g = random_element(tag, rng), h = random_element(tag, rng), x = random_element(tag, rng);
                const GroupElement l = multiply(multiply(g, h), x), r = multiply(g, multiply(h, x));
                CHECK(l.b.x == doctest::Approx(r.b.x).epsilon(1e-10).scale(10));
                CHECK(l.b.y == doctest::Approx(r.b.y).epsilon(1e-10).scale(10));
                CHECK(l.a == doctest::Approx(r.a).epsilon(1e-12));
                CHECK(std::remainder(l.angle - r.angle, 2 * pi) == doctest::Approx(0.0).epsilon(1e-12).scale(1));
                const GroupElement e = multiply(inverse(g), g);
                CHECK(std::abs(e.b.x) < 1e-12);
                CHECK(std::abs(e.b.y) < 1e-12);
                CHECK(e.a == doctest::Approx(1.0));
                CHECK(std::abs(std::remainder(e.angle, 2 * pi)) < 1e-12);
            }
        }
    }

    TEST_CASE("Haar densities") {
        CHECK(haar_density(GroupTag::Affine, HaarSide::Left, GroupElement::affine(5, 2)) == doctest::Approx(0.25));
        CHECK(haar_density(GroupTag::Sim2, HaarSide::Left, GroupElement::sim2({0, 0}, 2, 0)) == doctest::Approx(0.125));
        CHECK(haar_density(GroupTag::PoincareAff, HaarSide::Right, GroupElement::poincare({0, 0}, 4, 1)) ==
              doctest::Approx(0.25));
    }

    TEST_CASE("modular functions") {
        CHECK(modular_function(GroupTag::PoincareAff, GroupElement::poincare({0, 0}, 2, 0)) == doctest::Approx(0.25));
        CHECK(modular_function(GroupTag::Affine, GroupElement::affine(0, 2)) == doctest::Approx(0.5));
        CHECK(modular_function(GroupTag::Sim2, GroupElement::sim2({0, 0}, 2, 0)) == doctest::Approx(0.25));
    }

    TEST_CASE("modular function against right translation of a Gaussian") {
        // int f(x g) dmu_L(x) in closed form for f = exp(-b^2/2 - (ln a)^2/2) on the affine group:
        // x g = (b + a c, a d); substituting gives the factor 1/d against int f dmu_L
        const double d = 2.0, c = 0.3;
        auto integral = [&](double cc, double dd) {
            double s = 0.0;
            const int n = 800;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double b = -12.0 + 24.0 * (i + 0.5) / n, la = -8.0 + 16.0 * (j + 0.5) / n;
                    const double a = std::exp(la);
                    const double bb = b + a * cc, aa = a * dd;
                    s += std::exp(-bb * bb / 2 - std::log(aa) * std::log(aa) / 2) / a * (24.0 / n) * (16.0 / n);
                }
            return s;
        };
        const double ratio = integral(c, d) / integral(0.0, 1.0);
        CHECK(ratio == doctest::Approx(1.0 / modular_function(GroupTag::Affine, GroupElement::affine(c, d))).epsilon(1e-6));
    }

    TEST_CASE("plane action") {
        const Vec2 x = plane_action(GroupElement::sim2({1, 0}, 2, 0), {1, 1});
        CHECK(x.x == doctest::Approx(3.0));
        CHECK(x.y == doctest::Approx(2.0));
        const double t = 0.7;
        const Vec2 y = plane_action(GroupElement::poincare({0, 0}, 1, t), {1, 0});
        CHECK(y.x == doctest::Approx(std::cosh(t)));
        CHECK(y.y == doctest::Approx(std::sinh(t)));
        CHECK_THROWS(plane_action(GroupElement::affine(0, 1), {1, 1}));

        std::mt19937_64 rng(5);
        for (GroupTag tag : {GroupTag::Sim2, GroupTag::PoincareAff})
            for (int k = 0; k < 20; ++k) {
                const GroupElement g = random_element(tag, rng), h = random_element(tag, rng);
                const Vec2 p{0.3, -1.1};
                const Vec2 l = plane_action(multiply(g, h), p), r = plane_action(g, plane_action(h, p));
                CHECK(std::abs(l.x - r.x) < 1e-12 * (1 + std::abs(l.x)));
                CHECK(std::abs(l.y - r.y) < 1e-12 * (1 + std::abs(l.y)));
            }
    }

    TEST_CASE("names") {
        CHECK(parse_group_tag("paff") == GroupTag::PoincareAff);
        CHECK(to_string(GroupTag::Sim2) == "sim2");
        CHECK_THROWS_AS(parse_group_tag("heisenberg"), std::invalid_argument);
    }
}
