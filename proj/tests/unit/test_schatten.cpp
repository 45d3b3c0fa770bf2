#include <cmath>
#include <random>

#include "doctest.h"
#include "nuharm/schatten.hpp"

using namespace nuharm;

namespace {

Eigen::MatrixXcd random_matrix(int r, int c, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXcd m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cdouble(n(rng), n(rng));
    return m;
}

}  // namespace

TEST_SUITE("schatten") {
    TEST_CASE("diagonal examples") {
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
        d(0, 0) = 3.0;
        d(1, 1) = 4.0;
        CHECK(schatten_norm(d, 2.0) == doctest::Approx(5.0));
        CHECK(schatten_norm(d, 1.0) == doctest::Approx(7.0));
        CHECK(schatten_norm(d, infinity) == doctest::Approx(4.0));
        CHECK(schatten_norm(d, 3.0) == doctest::Approx(std::cbrt(27.0 + 64.0)));
        CHECK_THROWS(schatten_norm(d, 0.5));
    }

    TEST_CASE("S2 is the Frobenius norm") {
        std::mt19937_64 rng(1);
        const Eigen::MatrixXcd m = random_matrix(7, 5, rng);
        CHECK(schatten_norm(m, 2.0) == doctest::Approx(m.norm()).epsilon(1e-12));
        const SingularSpectrum s = singular_spectrum(m);
        REQUIRE(s.values.size() == 5);
        for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] <= s.values[i - 1]);
    }

    TEST_CASE("norms are unitarily invariant and ordered") {
        std::mt19937_64 rng(2);
        const Eigen::MatrixXcd m = random_matrix(6, 6, rng);
        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(6, 6, rng));
        const Eigen::MatrixXcd q = qr.householderQ();
        for (double r : {1.0, 1.5, 2.0, 4.0, infinity}) {
            CHECK(schatten_norm(q * m, r) == doctest::Approx(schatten_norm(m, r)).epsilon(1e-12));
        }
        CHECK(schatten_norm(m, 1.0) >= schatten_norm(m, 2.0));
        CHECK(schatten_norm(m, 2.0) >= schatten_norm(m, 4.0));
        CHECK(schatten_norm(m, 4.0) >= schatten_norm(m, infinity));
    }

    TEST_CASE("weighted matrix") {
        auto rg = std::make_shared<Grid>(build_halfline_grid(1, 5, 1.0, 2.0));
        KernelMatrix k{rg, rg, Eigen::MatrixXcd::Constant(5, 5, cdouble(2.0, 0.0))};
        const Eigen::MatrixXcd m = weighted_matrix(k);
        double hs = 0.0;
        for (std::size_t i = 0; i < rg->size(); ++i)
            for (std::size_t j = 0; j < rg->size(); ++j) hs += rg->weight(i) * rg->weight(j) * 4.0;
        CHECK(m.squaredNorm() == doctest::Approx(hs).epsilon(1e-10));

        const KernelMatrix back = kernel_from_weighted(m, rg, rg);
        CHECK((back.entries - k.entries).norm() < 1e-12);

        // measure 1 x 1: constant kernel c has HS norm |c|
        auto lin = std::make_shared<Grid>(build_halfline_grid(1, 401, 1.0, std::exp(1.0)));
        KernelMatrix c{lin, lin, Eigen::MatrixXcd::Zero(401, 401)};
        for (std::size_t i = 0; i < lin->size(); ++i)
            for (std::size_t j = 0; j < lin->size(); ++j) c.entries(i, j) = 3.0 / (lin->node(i)[0] * lin->node(j)[0]);
        CHECK(schatten_norm(weighted_matrix(c), 2.0) == doctest::Approx(3.0 * std::sqrt((1 - std::exp(-1.0)) * (1 - std::exp(-1.0)))).epsilon(1e-4));
    }

    TEST_CASE("mixed norm of a field") {
        GroupGridSpec s;
        s.n_b = 3;
        s.n_a = 2;
        auto g = std::make_shared<Grid>(build_group_grid(s));
        auto rp = std::make_shared<Grid>(build_halfline_grid(1, 3, 1.0, 4.0));
        auto rm = std::make_shared<Grid>(build_halfline_grid(-1, 3, 1.0, 4.0));
        OperatorField f = OperatorField::zeros(g, dual_labels(GroupTag::Affine), {rp, rm});
        CHECK(mixed_norm(f, 2.0) == 0.0);
        CHECK(mixed_norm(f, infinity) == 0.0);

        std::mt19937_64 rng(4);
        double sum2 = 0.0, worst = 0.0;
        for (std::size_t l = 0; l < 2; ++l)
            for (std::size_t x = 0; x < g->size(); ++x) {
                const Eigen::MatrixXcd m = random_matrix(3, 3, rng);
                f.entries[l][x] = m;
                const Eigen::VectorXd k = duflo_moore_weights(f.labels[l], *f.rep_grids[l]);
                const Eigen::MatrixXcd mk = m * k.cwiseSqrt().asDiagonal();
                sum2 += g->weight(x) * mk.squaredNorm();
                worst = std::max(worst, schatten_norm(m, infinity));
            }
        CHECK(mixed_norm(f, 2.0) == doctest::Approx(std::sqrt(sum2)).epsilon(1e-12));

        MixedNormAccumulator acc(2.0);
        for (std::size_t l = 0; l < 2; ++l)
            for (std::size_t x = 0; x < g->size(); ++x)
                acc.add(g->weight(x), f.entries[l][x], duflo_moore_weights(f.labels[l], *f.rep_grids[l]));
        CHECK(acc.value() == doctest::Approx(mixed_norm(f, 2.0)).epsilon(1e-12));
        CHECK(mixed_norm(f, infinity) == doctest::Approx(worst).epsilon(1e-12));
        CHECK_THROWS(mixed_norm(f, 0.5));
    }
}
