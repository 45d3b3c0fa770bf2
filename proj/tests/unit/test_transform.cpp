#include <cmath>
#include <numbers>
#include <random>

#include "cli/checks.hpp"
#include "doctest.h"
#include "nuharm/schatten.hpp"
#include "nuharm/setup.hpp"
#include "nuharm/transform.hpp"

using namespace nuharm;
using std::numbers::pi;

namespace {

SetupParams small(GroupTag tag) { return cli::tiny_params(tag); }

}  // namespace

TEST_SUITE("transform") {
    TEST_CASE("partial Fourier transform of a b-indicator") {
        GroupGridSpec s;
        s.tag = GroupTag::Affine;
        s.n_b = 801;
        s.b_lo = -1.0;
        s.b_hi = 1.0;
        s.n_a = 3;
        auto g = std::make_shared<Grid>(build_group_grid(s));
        const GridFunction f(g, Eigen::VectorXcd::Ones(g->size()));
        std::vector<Vec2> freqs;
        for (double sv : {0.5, 1.0, 3.0, 7.0}) freqs.push_back({sv, 0.0});
        const Eigen::MatrixXcd F = partial_fourier_translation(f, freqs);
        REQUIRE(F.rows() == 4);
        REQUIRE(F.cols() == 3);
        for (int r = 0; r < 4; ++r) {
            const double sv = freqs[r].x;
            const double exact = 2.0 * std::sin(sv) / sv / std::sqrt(2 * pi);
            for (int c = 0; c < 3; ++c) CHECK(std::abs(F(r, c) - exact) < 1e-4);
        }
        CHECK(F.row(0).norm() > 0);
        CHECK(partial_fourier_translation(GridFunction(g), freqs).norm() == 0.0);
    }

    TEST_CASE("narrow bump in b gives a flat transform") {
        GroupGridSpec s;
        s.tag = GroupTag::Affine;
        s.n_b = 401;
        s.b_lo = -1.0;
        s.b_hi = 1.0;
        s.n_a = 2;
        auto g = std::make_shared<Grid>(build_group_grid(s));
        GridFunction f(g);
        for (std::size_t k = 0; k < g->size(); ++k) f.values[k] = std::exp(-std::pow(g->node(k)[0] / 0.01, 2));
        const Eigen::MatrixXcd F = partial_fourier_translation(f, {{0.1, 0}, {2.0, 0}, {5.0, 0}});
        CHECK(std::abs(F(2, 0) / F(0, 0) - 1.0) < 2e-3);
    }

    TEST_CASE("closed-form kernels match direct quadrature") {
        for (GroupTag tag : {GroupTag::Affine, GroupTag::Sim2, GroupTag::PoincareAff}) {
            const auto rows = cli::kernel_oracle_checks(tag, {});
            for (const auto& r : rows) CHECK_MESSAGE(r.value < 1e-2, r.group << " " << r.value);
        }
    }

    TEST_CASE("zero function gives zero transforms") {
        for (GroupTag tag : {GroupTag::Affine, GroupTag::Sim2, GroupTag::PoincareAff}) {
            const HarmonicSetup s = make_setup(tag, small(tag));
            const GridFunction z(s.group);
            for (std::size_t l = 0; l < s.reps.labels.size(); ++l)
                CHECK(group_fourier(s.reps.labels[l], z, 0.5, s.reps.grids[l]).entries.norm() == 0.0);
            const WignerField w = wigner_transform(z, z, s.reps);
            CHECK(mixed_norm(w, 2.0) == 0.0);
            CHECK(inversion_reconstruct_weighted(tag, s.group, s.reps,
                                                 std::vector<Eigen::MatrixXcd>(s.reps.labels.size()))
                      .values.norm() == 0.0);
            const SymbolField sigma = OperatorField::zeros(s.group, s.reps.labels, s.reps.grids);
            const GridFunction f = standard_bump(tag).sample(s.group);
            CHECK(std::abs(weyl_quadratic_form(sigma, f, f)) == 0.0);
        }
    }

    TEST_CASE("Plancherel and inversion on the desk setups") {
        for (GroupTag tag : {GroupTag::Affine, GroupTag::Sim2, GroupTag::PoincareAff}) {
            const HarmonicSetup s = make_setup(tag, desk_params(tag));
            CHECK(cli::plancherel_check(s, cli::TestFunction::Bump, {}).front().value < 0.02);
            CHECK(cli::inversion_check(s, cli::TestFunction::Bump, {}).front().value < 0.05);
        }
    }

    TEST_CASE("Weyl form: sesquilinearity and the self pairing") {
        for (GroupTag tag : {GroupTag::Affine, GroupTag::Sim2, GroupTag::PoincareAff}) {
            const HarmonicSetup s = make_setup(tag, small(tag));
            Bump gb = standard_bump(tag);
            gb.b0 = {0.3, -0.2};
            gb.log_a0 = 0.1;
            const GridFunction f = standard_bump(tag).sample(s.group), g = gb.sample(s.group);
            GridFunction f2 = f;
            for (std::size_t k = 0; k < s.group->size(); ++k) f2.values[k] *= std::cos(s.group->node(k)[0]);
            SymbolField sigma = OperatorField::zeros(s.group, s.reps.labels, s.reps.grids);
            std::mt19937_64 rng(11);
            std::normal_distribution<double> n(0.0, 1.0);
            for (std::size_t l = 0; l < sigma.labels.size(); ++l) {
                const auto d = static_cast<Eigen::Index>(s.reps.grids[l]->size());
                for (std::size_t x = 0; x < s.group->size(); x += 3) {
                    Eigen::MatrixXcd m(d, d);
                    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cdouble(n(rng), n(rng));
                    sigma.entries[l][x] = m;
                }
            }
            const cdouble lam(0.3, -1.2);
            GridFunction comb = f;
            comb.values = f.values + lam * f2.values;
            const cdouble lhs = weyl_quadratic_form(sigma, comb, g);
            const cdouble rhs = weyl_quadratic_form(sigma, f, g) + lam * weyl_quadratic_form(sigma, f2, g);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));

            SymbolField scaled = sigma;
            for (auto& row : scaled.entries)
                for (auto& e : row)
                    if (e.size() != 0) e *= lam;
            CHECK(std::abs(weyl_quadratic_form(scaled, f, g) - std::conj(lam) * weyl_quadratic_form(sigma, f, g)) <=
                  1e-10 * std::abs(weyl_quadratic_form(scaled, f, g)));

            // sigma = W(f,g): the pairing is ||W(f,g)||_{2,mu}^2
            const WignerField w = wigner_transform(f, g, s.reps);
            const cdouble self = weyl_quadratic_form(w, w);
            CHECK(std::abs(self.imag()) <= 1e-10 * std::abs(self));
            CHECK(self.real() == doctest::Approx(std::pow(mixed_norm(w, 2.0), 2)).epsilon(1e-10));
            CHECK(std::abs(weyl_quadratic_form(w, f, g) - self) <= 1e-10 * std::abs(self));
        }
    }

    TEST_CASE("Fourier via Wigner and the Wigner bound on the affine group") {
        const HarmonicSetup s = make_setup(GroupTag::Affine, cli::weyl_params(GroupTag::Affine));
        const cli::WignerStats st = cli::wigner_stats(s, 2, 3, cli::TestFunction::Bump);
        CHECK(st.fourier_via_wigner < 0.02);
        CHECK(st.bound_excess_2 < 0.01);
        CHECK(st.bound_excess_4 < 0.01);
        CHECK(st.bound_excess_inf < 0.01);
    }

    TEST_CASE("Weyl bound at p = 2") {
        const HarmonicSetup s = make_setup(GroupTag::Affine, cli::weyl_params(GroupTag::Affine));
        CHECK(cli::weyl_bound_excess(s, 2.0, 2, 5, cli::TestFunction::Bump) <= 0.02);
        CHECK_THROWS(cli::weyl_bound_excess(s, 2.5, 1, 5, cli::TestFunction::Bump));
    }
}
