#include "cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nuharm/schatten.hpp"

namespace nuharm::cli {

namespace {

constexpr double pi = std::numbers::pi;

std::string group_name(GroupTag tag) { return std::string(to_string(tag)); }

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

GroupElement random_element(GroupTag tag, std::mt19937_64& rng, double a_lo, double a_hi, double b_half,
                            double angle_half) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a = std::exp(std::log(a_lo) + 0.5 * (1.0 + u(rng)) * std::log(a_hi / a_lo));
    const Vec2 b{b_half * u(rng), b_half * u(rng)};
    const double angle = angle_half * u(rng);
    switch (tag) {
        case GroupTag::Affine: return GroupElement::affine(b.x, a);
        case GroupTag::Sim2: return GroupElement::sim2(b, a, angle);
        case GroupTag::PoincareAff: return GroupElement::poincare(b, a, angle);
    }
    return identity(tag);
}

double angle_gap(GroupTag tag, double x, double y) {
    if (tag != GroupTag::Sim2) return std::abs(x - y);
    const double d = std::abs(x - y);
    return std::min(d, 2.0 * pi - d);
}

// componentwise error of two elements measured against the size of the
// largest term that entered either computation
double element_error(const GroupElement& x, const GroupElement& y, double b_scale) {
    double e = std::max(std::abs(x.b.x - y.b.x), std::abs(x.b.y - y.b.y)) / b_scale;
    e = std::max(e, std::abs(x.a - y.a) / std::max(x.a, y.a));
    return std::max(e, angle_gap(x.tag, x.angle, y.angle) / std::max({1.0, std::abs(x.angle), std::abs(y.angle)}));
}

double linear_growth(const GroupElement& g) {
    // bound on |a Lambda v| / |v|
    return g.a * (g.tag == GroupTag::PoincareAff ? std::exp(std::abs(g.angle)) : 1.0);
}

double b_norm(const GroupElement& g) { return std::hypot(g.b.x, g.b.y); }

}  // namespace

double Tolerances::get(const std::string& check, double fallback) const {
    if (auto it = by_check.find(check); it != by_check.end()) return it->second;
    if (all) return *all;
    return fallback;
}

CheckRow make_row(const std::string& check, GroupTag tag, const std::string& metric, double value,
                  const Tolerances& tol, double default_tol) {
    CheckRow r{check, group_name(tag), metric, value, tol.get(check, default_tol), false};
    r.pass = std::isfinite(r.value) && r.value <= r.tolerance;
    return r;
}

bool all_pass(const std::vector<CheckRow>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

double relative_difference(double x, double y) {
    const double m = std::max(std::abs(x), std::abs(y));
    return m == 0.0 ? 0.0 : std::abs(x - y) / m;
}

// --- group-core -------------------------------------------------------------

std::vector<CheckRow> group_algebra_checks(GroupTag tag, std::uint64_t seed, int triples, const Tolerances& tol) {
    auto rng = make_rng(seed, 1);
    std::uniform_real_distribution<double> la(std::log(0.1), std::log(10.0)), u(-10.0, 10.0);
    auto draw = [&] {
        const double a = std::exp(la(rng));
        const Vec2 b{u(rng), u(rng)};
        const double angle = u(rng);
        switch (tag) {
            case GroupTag::Affine: return GroupElement::affine(b.x, a);
            case GroupTag::Sim2: return GroupElement::sim2(b, a, angle);
            case GroupTag::PoincareAff: return GroupElement::poincare(b, a, angle);
        }
        return identity(tag);
    };
    double assoc = 0.0, inv = 0.0;
    const GroupElement e = identity(tag);
    for (int t = 0; t < triples; ++t) {
        const GroupElement g = draw(), h = draw(), k = draw();
        const GroupElement lhs = multiply(multiply(g, h), k);
        const GroupElement rhs = multiply(g, multiply(h, k));
        const double scale =
            1.0 + b_norm(g) + linear_growth(g) * (b_norm(h) + linear_growth(h) * b_norm(k));
        assoc = std::max(assoc, element_error(lhs, rhs, scale));

        const GroupElement gi = inverse(g);
        const double s_inv = 1.0 + b_norm(g) + linear_growth(g) * b_norm(gi) + b_norm(gi) + linear_growth(gi) * b_norm(g);
        inv = std::max(inv, element_error(multiply(g, gi), e, s_inv));
        inv = std::max(inv, element_error(multiply(gi, g), e, s_inv));
    }
    return {make_row("associativity", tag, "max_rel_error", assoc, tol, 1e-9),
            make_row("inverse_law", tag, "max_rel_error", inv, tol, 1e-9)};
}

GroupGridSpec haar_grid(GroupTag tag) {
    GroupGridSpec g;
    g.tag = tag;
    g.n_b = 64;
    g.b_lo = -4.0;
    g.b_hi = 4.0;
    g.n_a = 32;
    g.a_min = std::exp(-2.4);
    g.a_max = std::exp(2.4);
    g.n_angle = 32;
    g.angle_lo = -2.4;
    g.angle_hi = 2.4;
    return g;
}

std::vector<CheckRow> haar_checks(GroupTag tag, const GroupGridSpec& spec, std::uint64_t seed, int translations,
                                  const Tolerances& tol) {
    const Grid grid = build_group_grid(spec);
    const Bump f = standard_bump(tag);
    std::vector<std::complex<double>> s(grid.size());
    std::vector<GroupElement> nodes(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        nodes[k] = grid.element(k);
        s[k] = f(nodes[k]);
    }
    const double base = std::abs(integrate(grid, s));

    auto rng = make_rng(seed, 2);
    double left = 0.0, modular = 0.0;
    for (int t = 0; t < translations; ++t) {
        const GroupElement g = random_element(tag, rng, 0.7, 1.4, 0.5, tag == GroupTag::Sim2 ? pi : 0.3);
        const GroupElement gi = inverse(g);
        for (std::size_t k = 0; k < grid.size(); ++k) s[k] = f(multiply(gi, nodes[k]));
        left = std::max(left, relative_difference(std::abs(integrate(grid, s)), base));
        for (std::size_t k = 0; k < grid.size(); ++k) s[k] = f(multiply(nodes[k], g));
        const double ratio = std::abs(integrate(grid, s)) / base;
        modular = std::max(modular, std::abs(ratio * modular_function(tag, g) - 1.0));
    }
    return {make_row("left_invariance", tag, "max_rel_error", left, tol, 0.01),
            make_row("modular_function", tag, "max_rel_error", modular, tol, 0.01)};
}

// --- representations --------------------------------------------------------

std::vector<std::shared_ptr<const Grid>> representation_grids(GroupTag tag, int n) {
    std::vector<std::shared_ptr<const Grid>> out;
    for (const auto& lab : dual_labels(tag)) {
        switch (lab.kind) {
            case RepKind::RhoPlus:
            case RepKind::RhoMinus:
                out.push_back(std::make_shared<Grid>(
                    build_halfline_grid(lab.kind == RepKind::RhoPlus ? 1 : -1, n, 0.02, 20.0)));
                break;
            case RepKind::Pi: out.push_back(std::make_shared<Grid>(build_plane_grid(n / 2, n / 2, 0.165, 6.0))); break;
            case RepKind::PiCone:
                out.push_back(std::make_shared<Grid>(build_cone_grid(lab.i, lab.j, n / 2, n / 2, 0.165, 6.0, 1.8)));
                break;
        }
    }
    return out;
}

GridFunction representation_test_vector(const RepLabel& label, std::shared_ptr<const Grid> grid) {
    GridFunction f(grid);
    for (std::size_t k = 0; k < grid->size(); ++k) {
        const auto x = grid->node(k);
        double r = 0.0, profile = 1.0;
        switch (label.kind) {
            case RepKind::RhoPlus:
            case RepKind::RhoMinus: r = std::abs(x[0]); break;
            case RepKind::Pi:
                r = std::hypot(x[0], x[1]);
                profile = 1.0 + 0.5 * std::cos(std::atan2(x[1], x[0]) - 0.3);
                break;
            case RepKind::PiCone: {
                double u = 0.0;
                cone_chart(label.i, label.j, {x[0], x[1]}, r, u);
                profile = std::exp(-u * u / (2.0 * 0.35 * 0.35));
                break;
            }
        }
        const double lr = std::log(r);
        f.values[static_cast<Eigen::Index>(k)] = std::exp(-lr * lr / (2.0 * 0.4 * 0.4)) * profile * std::polar(1.0, 0.7 * lr);
    }
    return f;
}

RepResiduals representation_residuals(GroupTag tag, int n, std::uint64_t seed, int samples) {
    RepResiduals out;
    const auto labels = dual_labels(tag);
    const auto grids = representation_grids(tag, n);
    for (std::size_t l = 0; l < labels.size(); ++l) {
        const auto& lab = labels[l];
        const auto grid = grids[l];
        const GridFunction phi = representation_test_vector(lab, grid);
        const double n0 = phi.norm();
        // lattice of exact dilations / rotations / boosts of this grid
        const double h = grid->axes()[0].dv;
        const double h_angle = grid->axes().size() > 1 ? grid->axes()[1].dv : 0.0;
        auto rng = make_rng(seed, 3 + l);
        std::uniform_int_distribution<int> step(-3, 3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        auto exact = [&] {
            const double a = std::exp(h * step(rng));
            const Vec2 b{u(rng), u(rng)};
            switch (tag) {
                case GroupTag::Affine: return GroupElement::affine(b.x, a);
                case GroupTag::Sim2: return GroupElement::sim2(b, a, h_angle * step(rng));
                case GroupTag::PoincareAff: return GroupElement::poincare(b, a, h_angle * step(rng));
            }
            return identity(tag);
        };
        auto generic = [&] {
            return random_element(tag, rng, std::exp(-0.2), std::exp(0.2), 1.0, tag == GroupTag::Sim2 ? pi : 0.3);
        };
        auto measure = [&](const GroupElement& g, const GroupElement& k, double& unit, double& hom) {
            const GridFunction pg = apply_representation(lab, g, phi);
            unit = std::max(unit, std::abs(pg.norm() - n0) / n0);
            const GridFunction two = apply_representation(lab, g, apply_representation(lab, k, phi));
            const GridFunction one = apply_representation(lab, multiply(g, k), phi);
            hom = std::max(hom, GridFunction(grid, two.values - one.values).norm() / n0);
        };
        for (int t = 0; t < samples; ++t) {
            const GroupElement g = exact(), k = exact();
            measure(g, k, out.unitarity_exact, out.homomorphism_exact);
        }
        for (int t = 0; t < samples; ++t) {
            const GroupElement g = generic(), k = generic();
            measure(g, k, out.unitarity_generic, out.homomorphism_generic);
        }
    }
    return out;
}

std::vector<CheckRow> representation_checks(GroupTag tag, int n, std::uint64_t seed, const Tolerances& tol) {
    const RepResiduals r1 = representation_residuals(tag, n, seed);
    const RepResiduals r2 = representation_residuals(tag, 2 * n, seed);
    auto ratio = [](double fine, double coarse) { return coarse == 0.0 ? 0.0 : fine / coarse; };
    return {
        make_row("unitarity_exact", tag, "max_rel_residual", r1.unitarity_exact, tol, 1e-3),
        make_row("homomorphism_exact", tag, "max_rel_residual", r1.homomorphism_exact, tol, 1e-3),
        make_row("unitarity_generic", tag, "max_rel_residual", r1.unitarity_generic, tol, 1e-2),
        make_row("homomorphism_generic", tag, "max_rel_residual", r1.homomorphism_generic, tol, 1e-2),
        make_row("unitarity_refinement", tag, "residual_ratio_2n_over_n",
                 ratio(r2.unitarity_generic, r1.unitarity_generic), tol, 0.5),
        make_row("homomorphism_refinement", tag, "residual_ratio_2n_over_n",
                 ratio(r2.homomorphism_generic, r1.homomorphism_generic), tol, 0.5),
    };
}

// --- transforms -------------------------------------------------------------

GridFunction test_function(const HarmonicSetup& s, TestFunction tf) {
    if (tf == TestFunction::Zero) return GridFunction(s.group);
    return standard_bump(s.tag).sample(s.group);
}

std::vector<CheckRow> plancherel_check(const HarmonicSetup& s, TestFunction tf, const Tolerances& tol) {
    const GridFunction f = test_function(s, tf);
    const double lhs = std::pow(f.norm(), 2);
    double rhs = 0.0;
    for (std::size_t l = 0; l < s.reps.labels.size(); ++l)
        rhs += std::pow(schatten_norm(weighted_matrix(group_fourier(s.reps.labels[l], f, 0.5, s.reps.grids[l])), 2.0), 2);
    return {make_row("plancherel", s.tag, "rel_error", relative_difference(lhs, rhs), tol, 0.02)};
}

std::vector<CheckRow> inversion_check(const HarmonicSetup& s, TestFunction tf, const Tolerances& tol) {
    const GridFunction f = test_function(s, tf);
    std::vector<Eigen::MatrixXcd> ops;
    for (std::size_t l = 0; l < s.reps.labels.size(); ++l)
        ops.push_back(weighted_matrix(group_fourier(s.reps.labels[l], f, 1.0, s.reps.grids[l])));
    const GridFunction rec = inversion_reconstruct_weighted(s.tag, s.group, s.reps, ops);
    const double err = GridFunction(s.group, rec.values - f.values).norm();
    const double n0 = f.norm();
    return {make_row("inversion", s.tag, "rel_l2_error", n0 == 0.0 ? err : err / n0, tol, 0.05)};
}

WignerStats wigner_stats(const HarmonicSetup& s, int pairs, std::uint64_t seed, TestFunction tf) {
    WignerStats st;
    st.pairs = pairs;
    auto rng = make_rng(seed, 10);
    std::vector<Eigen::VectorXd> k;
    for (std::size_t l = 0; l < s.reps.labels.size(); ++l)
        k.push_back(duflo_moore_weights(s.reps.labels[l], *s.reps.grids[l]));
    for (int t = 0; t < pairs; ++t) {
        const Bump fb = wigner_bump(s.tag, rng), gb = wigner_bump(s.tag, rng);
        const GridFunction f = tf == TestFunction::Zero ? GridFunction(s.group) : fb.sample(s.group);
        const GridFunction g = gb.sample(s.group);
        const GroupFunction g_exact = [&gb](const GroupElement& y) { return gb(y); };
        const cdouble c = integrate(*s.group, std::span<const cdouble>(g.values.data(), static_cast<std::size_t>(g.values.size())));
        const double fg = f.norm() * g.norm();

        std::vector<Eigen::MatrixXcd> integral;
        for (const auto& rg : s.reps.grids) {
            const auto n = static_cast<Eigen::Index>(rg->size());
            integral.push_back(Eigen::MatrixXcd::Zero(n, n));
        }
        MixedNormAccumulator n2(2.0), n4(4.0), ninf(infinity);
        // S4 terms far below the total only enter as upper bounds
        n4.skip_below(1e-8 * std::pow(fg, 4) / static_cast<double>(s.group->size()));
        visit_wigner(f, g_exact, s.reps, [&](std::size_t x, std::size_t l, const Eigen::MatrixXcd& w) {
            const double wx = s.group->weight(x);
            integral[l] += wx * w;
            n2.add(wx, w, k[l]);
            n4.add(wx, w, k[l]);
            ninf.add(wx, w, k[l]);
        });
        double num = 0.0, den = 0.0;
        for (std::size_t l = 0; l < s.reps.labels.size(); ++l) {
            const Eigen::MatrixXcd fh = weighted_matrix(group_fourier(s.reps.labels[l], f, 0.0, s.reps.grids[l]));
            num += (integral[l] / c - fh).squaredNorm();
            den += fh.squaredNorm();
        }
        st.fourier_via_wigner = std::max(st.fourier_via_wigner, den == 0.0 ? std::sqrt(num) : std::sqrt(num / den));
        auto excess = [fg](double v) { return fg == 0.0 ? (v == 0.0 ? -1.0 : infinity) : v / fg - 1.0; };
        st.bound_excess_2 = std::max(st.bound_excess_2, excess(n2.value()));
        st.bound_excess_4 = std::max(st.bound_excess_4, excess(n4.value()));
        st.bound_excess_inf = std::max(st.bound_excess_inf, excess(ninf.value()));
    }
    return st;
}

std::vector<CheckRow> wigner_checks(const HarmonicSetup& s, int pairs, std::uint64_t seed, TestFunction tf,
                                    const Tolerances& tol) {
    const WignerStats st = wigner_stats(s, pairs, seed, tf);
    return {
        make_row("fourier_via_wigner", s.tag, "max_hs_rel_error", st.fourier_via_wigner, tol, 0.02),
        make_row("wigner_bound_p2", s.tag, "max_norm_excess", st.bound_excess_2, tol, 0.01),
        make_row("wigner_bound_p4", s.tag, "max_norm_excess", st.bound_excess_4, tol, 0.01),
        make_row("wigner_bound_pinf", s.tag, "max_norm_excess", st.bound_excess_inf, tol, 0.01),
    };
}

namespace {

// M = W K^{1/p'} in the weighted frame
Eigen::MatrixXcd scaled(const Eigen::MatrixXcd& m, const Eigen::VectorXd& k, double e) {
    Eigen::MatrixXcd out = m;
    if (e != 0.0)
        for (Eigen::Index j = 0; j < out.cols(); ++j) out.col(j) *= std::pow(k[j], e);
    return out;
}

struct WeylTrial {
    const HarmonicSetup& s;
    double p;
    double pp;  // conjugate exponent, infinity for p = 1
    std::vector<Eigen::VectorXd> k;
    double cut = 0.0;  // dual part lives where ||M||_F >= cut
    std::uint64_t noise_seed = 0;
    Vec2 centre_b;
    double centre_la = 0.0;
    double centre_angle = 0.0;

    // Hoelder dual of M at one node, times K^{-1/p}; empty when not selected
    Eigen::MatrixXcd dual(const Eigen::MatrixXcd& m, std::size_t l, std::size_t x, std::size_t best_x,
                          std::size_t best_l) const {
        const Eigen::MatrixXcd mm = scaled(m, k[l], std::isinf(pp) ? 0.0 : 1.0 / pp);
        Eigen::MatrixXcd d;
        if (std::isinf(pp)) {
            if (x != best_x || l != best_l) return {};
            Eigen::BDCSVD<Eigen::MatrixXcd> svd(mm, Eigen::ComputeThinU | Eigen::ComputeThinV);
            d = svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
        } else {
            if (mm.norm() < cut) return {};
            if (p == 2.0) {
                d = mm;
            } else {
                // U S^{p'-1} V* = M (M* M)^{(p'-2)/2}
                const Eigen::MatrixXcd gram = mm.adjoint() * mm;
                const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
                const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).array().pow(0.5 * (pp - 2.0));
                d = mm * (es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint());
            }
        }
        return scaled(d, k[l], -1.0 / p);
    }

    // rank-3 random matrix under a Gaussian envelope around a random centre, times K^{-1/p}
    Eigen::MatrixXcd noise(std::size_t l, std::size_t x) const {
        const GroupElement e = s.group->element(x);
        const Vec2 db = e.b - centre_b;
        const double dla = std::log(e.a) - centre_la;
        double q = dot(db, db) / 0.25 + dla * dla / 0.09;
        if (s.tag == GroupTag::PoincareAff) q += std::pow((e.angle - centre_angle) / 0.3, 2);
        if (s.tag == GroupTag::Sim2) q += std::pow(angle_gap(s.tag, e.angle, centre_angle) / 0.5, 2);
        if (q > 9.0) return {};
        auto rng = make_rng(noise_seed, x * 8 + l);
        std::normal_distribution<double> nd;
        const auto n = k[l].size();
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
        for (int t = 0; t < 3; ++t) {
            Eigen::VectorXcd a(n), b(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                a[i] = {nd(rng), nd(rng)};
                b[i] = {nd(rng), nd(rng)};
            }
            r += a * b.adjoint();
        }
        return scaled(r * std::exp(-0.5 * q), k[l], -1.0 / p);
    }
};

}  // namespace

double weyl_bound_excess(const HarmonicSetup& s, double p, int triples, std::uint64_t seed, TestFunction tf) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("the Weyl bound is checked for 1 <= p <= 2");
    auto rng = make_rng(seed, 20 + static_cast<std::uint64_t>(p * 1000.0));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = -1.0;
    const auto& grid = *s.group;
    for (int t = 0; t < triples; ++t) {
        const Bump fb = wigner_bump(s.tag, rng), gb = wigner_bump(s.tag, rng);
        const GridFunction f = tf == TestFunction::Zero ? GridFunction(s.group) : fb.sample(s.group);
        const GroupFunction g_exact = [&gb](const GroupElement& y) { return gb(y); };
        const double fg = f.norm() * gb.sample(s.group).norm();

        WeylTrial tr{s, p, p == 1.0 ? infinity : p / (p - 1.0), {}, 0.0, rng(), {}, 0.0, 0.0};
        for (std::size_t l = 0; l < s.reps.labels.size(); ++l)
            tr.k.push_back(duflo_moore_weights(s.reps.labels[l], *s.reps.grids[l]));
        {
            std::uniform_int_distribution<std::size_t> node(0, grid.size() - 1);
            const GroupElement c = grid.element(node(rng));
            tr.centre_b = c.b;
            tr.centre_la = std::log(c.a);
            tr.centre_angle = c.angle;
        }
        const double lambda = u(rng);

        // pass 1: locate the dual part and its norm
        double max_f = 0.0, best_op = -1.0;
        std::size_t best_x = 0, best_l = 0;
        visit_wigner(f, g_exact, s.reps, [&](std::size_t x, std::size_t l, const Eigen::MatrixXcd& w) {
            const Eigen::MatrixXcd mm = scaled(w, tr.k[l], std::isinf(tr.pp) ? 0.0 : 1.0 / tr.pp);
            const double fr = mm.norm();
            max_f = std::max(max_f, fr);
            if (std::isinf(tr.pp) && fr > best_op) {
                const double op = schatten_norm(mm, infinity);
                if (op > best_op) {
                    best_op = op;
                    best_x = x;
                    best_l = l;
                }
            }
        });
        tr.cut = 1e-2 * max_f;
        // ||D||_p^p = sum_x w_x ||M_x||_{p'}^{p'} over the selected nodes
        double dual_p = 0.0;
        if (std::isinf(tr.pp)) {
            dual_p = best_op >= 0.0 ? grid.weight(best_x) : 0.0;
        } else {
            visit_wigner(f, g_exact, s.reps, [&](std::size_t x, std::size_t l, const Eigen::MatrixXcd& w) {
                const Eigen::MatrixXcd mm = scaled(w, tr.k[l], 1.0 / tr.pp);
                if (mm.norm() < tr.cut) return;
                const Eigen::MatrixXcd gram = mm.adjoint() * mm;
                const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
                dual_p += grid.weight(x) * es.eigenvalues().cwiseMax(0.0).array().pow(0.5 * tr.pp).sum();
            });
        }
        const double dual_norm = std::pow(dual_p, 1.0 / p);
        MixedNormAccumulator noise_norm(p);
        for (std::size_t x = 0; x < grid.size(); ++x)
            for (std::size_t l = 0; l < s.reps.labels.size(); ++l) {
                const Eigen::MatrixXcd r = tr.noise(l, x);
                if (r.size() != 0) noise_norm.add(grid.weight(x), r, tr.k[l]);
            }
        const double cd = dual_norm > 0.0 ? lambda / dual_norm : 0.0;
        const double cn = noise_norm.value() > 0.0 ? (1.0 - lambda) / noise_norm.value() : 0.0;

        // pass 2: sigma = cd D + cn N, its norm and the pairing with W(f,g)
        MixedNormAccumulator sigma_norm(p);
        std::vector<cdouble> terms(grid.size(), 0.0);
        std::vector<char> seen(grid.size() * s.reps.labels.size(), 0);
        auto pair_node = [&](std::size_t x, std::size_t l, const Eigen::MatrixXcd* w) {
            Eigen::MatrixXcd sig;
            if (w) sig = tr.dual(*w, l, x, best_x, best_l);
            if (sig.size() != 0) sig *= cd;
            const Eigen::MatrixXcd r = tr.noise(l, x);
            if (r.size() != 0) {
                if (sig.size() == 0)
                    sig = cn * r;
                else
                    sig += cn * r;
            }
            if (sig.size() == 0) return;
            sigma_norm.add(grid.weight(x), sig, tr.k[l]);
            if (!w) return;
            cdouble tr_sw = 0.0;
            for (Eigen::Index j = 0; j < w->cols(); ++j) tr_sw += sig.col(j).dot(w->col(j)) * tr.k[l][j];
            terms[x] += grid.weight(x) * tr_sw;
        };
        visit_wigner(f, g_exact, s.reps, [&](std::size_t x, std::size_t l, const Eigen::MatrixXcd& w) {
            seen[x * s.reps.labels.size() + l] = 1;
            pair_node(x, l, &w);
        });
        for (std::size_t x = 0; x < grid.size(); ++x)
            for (std::size_t l = 0; l < s.reps.labels.size(); ++l)
                if (!seen[x * s.reps.labels.size() + l]) pair_node(x, l, nullptr);

        const double lhs = std::abs(pairwise_sum(std::span<const cdouble>(terms)));
        const double rhs = sigma_norm.value() * fg;
        worst = std::max(worst, rhs == 0.0 ? (lhs == 0.0 ? -1.0 : infinity) : lhs / rhs - 1.0);
    }
    return worst;
}

std::vector<CheckRow> weyl_checks(const HarmonicSetup& s, const std::vector<double>& ps, int triples,
                                  std::uint64_t seed, TestFunction tf, const Tolerances& tol) {
    std::vector<CheckRow> rows;
    for (double p : ps) {
        char name[32];
        std::snprintf(name, sizeof name, "weyl_bound_p%g", p);
        rows.push_back(make_row(name, s.tag, "max_bound_excess", weyl_bound_excess(s, p, triples, seed, tf), tol, 0.02));
    }
    return rows;
}

SetupParams weyl_params(GroupTag tag) {
    SetupParams p;
    switch (tag) {
        case GroupTag::Affine:
            p.n_rep = 32;
            p.rep_min = 1e-2;
            p.rep_max = 6.0;
            p.n_b = 32;
            p.b_half = 3.0;
            p.n_a = 13;
            break;
        case GroupTag::Sim2:
            p.n_rep = 8;
            p.n_angular = 8;
            p.rep_min = 0.05;
            p.rep_max = 5.0;
            p.n_b = 9;
            p.b_half = 3.5;
            p.n_a = 5;
            break;
        case GroupTag::PoincareAff:
            p.n_rep = 8;
            p.n_angular = 7;
            p.rep_min = 0.05;
            p.rep_max = 5.0;
            p.u_max = 2.0;
            p.n_b = 9;
            p.b_half = 3.5;
            p.n_a = 5;
            p.n_angle = 5;
            break;
    }
    return p;
}

SetupParams tiny_params(GroupTag tag) {
    SetupParams p;
    p.n_rep = 8;
    p.n_b = 8;
    p.rep_min = 0.3;
    p.rep_max = 4.0;
    p.b_half = 2.0;
    switch (tag) {
        case GroupTag::Affine: p.n_a = 7; break;
        case GroupTag::Sim2:
            p.n_angular = 8;
            p.n_a = 5;
            break;
        case GroupTag::PoincareAff:
            p.n_angular = 7;
            p.n_a = 5;
            p.n_angle = 5;
            p.u_max = 0.6;
            p.rep_max = 2.5;
            break;
    }
    return p;
}

std::vector<CheckRow> kernel_oracle_checks(GroupTag tag, const Tolerances& tol) {
    const HarmonicSetup s = make_setup(tag, tiny_params(tag));
    Bump b = standard_bump(tag);
    b.sigma_b = 1.5;
    b.b0 = {0.0, 0.0};
    b.sigma_a = 0.2;
    b.sigma_angle = 0.2;
    b.chirp = tag == GroupTag::Affine ? Vec2{2.0, 0.0} : tag == GroupTag::Sim2 ? Vec2{1.5, 1.0} : Vec2{2.0, 0.3};
    const GridFunction f = b.sample(s.group);
    double worst = 0.0;
    for (std::size_t l = 0; l < s.reps.labels.size(); ++l)
        for (double pp : {1.5, 2.0, 3.0}) {
            const Eigen::MatrixXcd mc = weighted_matrix(group_fourier(s.reps.labels[l], f, 1.0 / pp, s.reps.grids[l]));
            const Eigen::MatrixXcd md =
                weighted_matrix(direct_fourier_operator(s.reps.labels[l], f, 1.0 / pp, s.reps.grids[l]));
            worst = std::max(worst, (mc - md).norm() / md.norm());
        }
    return {make_row("kernel_oracle", tag, "max_frobenius_rel_error", worst, tol, 0.01)};
}

// --- counterexamples --------------------------------------------------------

S2Report f_alpha_s2(double alpha, double pp) {
    // the jump of F1 at a = L must fall between dilation nodes
    constexpr int n_rep = 128;
    constexpr double s_min = 1e-3, s_max = 5.0;
    const double h = std::log(s_max / s_min) / (n_rep - 1);
    const double L = std::exp(0.5 * h);
    const auto spec = CounterexampleSpec::with_p_prime(GroupTag::Affine, alpha, pp, L, 1.0);
    const int k_hi = static_cast<int>(std::ceil(std::log(L) / h)) + 2;
    const LatticeRange ar = log_lattice(h, k_hi - 60, k_hi);
    GroupGridSpec g;
    g.tag = GroupTag::Affine;
    g.n_b = 256;
    g.b_lo = -L;
    g.b_hi = L;
    g.b_grading = 3.0;
    g.n_a = ar.n;
    g.a_min = ar.lo;
    g.a_max = ar.hi;
    auto grid = std::make_shared<Grid>(build_group_grid(g));
    const GridFunction f = build_f_alpha(spec, grid);
    auto rp = std::make_shared<Grid>(build_halfline_grid(1, n_rep, s_min, s_max));
    auto rm = std::make_shared<Grid>(build_halfline_grid(-1, n_rep, s_min, s_max));
    return small_grid_s2_check(
        f, [&](double s, double a) { return closed_form_F1_affine(spec, s, a); }, pp, rp, rm, L);
}

std::vector<CheckRow> s2_checks(const Tolerances& tol) {
    std::vector<CheckRow> rows;
    const HarmonicSetup s = make_setup(GroupTag::Affine, desk_params(GroupTag::Affine));
    const Bump b = standard_bump(GroupTag::Affine);
    const GridFunction f = b.sample(s.group);
    auto f1 = [&](double sv, double a) { return b.affine_F1(sv, a); };
    double worst = 0.0;
    for (double pp : {1.5, 2.0, 3.0})
        worst = std::max(worst, small_grid_s2_check(f, f1, pp, s.reps.grids[0], s.reps.grids[1]).relative_error);
    rows.push_back(make_row("s2_norm_smooth", GroupTag::Affine, "max_rel_error", worst, tol, 0.03));

    const S2Report z = small_grid_s2_check(
        GridFunction(s.group), [](double, double) { return cdouble(0.0); }, 1.5, s.reps.grids[0], s.reps.grids[1]);
    rows.push_back(make_row("s2_norm_zero", GroupTag::Affine, "abs_sum", z.lhs + z.rhs, tol, 0.0));
    rows.push_back(make_row("s2_norm_f_alpha", GroupTag::Affine, "rel_error", f_alpha_s2(0.45, 1.5).relative_error, tol, 0.05));
    return rows;
}

std::vector<CheckRow> oscillatory_checks(const std::vector<double>& alphas, const Tolerances& tol) {
    std::vector<CheckRow> rows;
    for (double a : alphas) {
        const double gamma = std::tgamma(1.0 - a) * std::sin(pi * a / 2.0);
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "_a%g", a);
        rows.push_back(make_row(std::string("oscillatory_C_1e4") + suffix, GroupTag::Affine, "rel_error_vs_gamma",
                                std::abs(oscillatory_C(a, 1e4) / gamma - 1.0), tol, 1e-3));
        rows.push_back(make_row(std::string("oscillatory_limit") + suffix, GroupTag::Affine, "rel_error_vs_gamma",
                                std::abs(oscillatory_C_limit(a) / gamma - 1.0), tol, 1e-3));
        // B > 0 on [0.5, 1e4]: reported as -B <= 0
        rows.push_back(make_row(std::string("lower_bound_B") + suffix, GroupTag::Affine, "minus_B",
                                -lower_bound_B(a, 0.5, 1e4, 4096), tol, -1e-12));
    }
    return rows;
}

std::string window_violation(GroupTag tag, double alpha, double pp) {
    const std::string name = group_name(tag);
    if (!(pp > 1.0 && pp < 2.0)) return name + ": the window needs 1 < p' < 2 (p > 2), got p'=" + std::to_string(pp);
    if (!(alpha > 0.0 && alpha < 0.5)) {
        switch (tag) {
            case GroupTag::Affine: return "affine: the window is 1/2 > alpha > 1 - 1/p', got alpha=" + std::to_string(alpha);
            case GroupTag::Sim2:
                return "sim2: the window is 1/2 > alpha > 3/2 - 2/p' (2 > p' > 4/3) or alpha > 0 (1 < p' <= 4/3), got alpha=" +
                       std::to_string(alpha);
            case GroupTag::PoincareAff:
                return "paff: the window is 1/2 > alpha >= 3/4 - 1/(2p') > 0, got alpha=" + std::to_string(alpha);
        }
    }
    return {};
}

SweepResult run_sweep(GroupTag tag, double alpha, double pp, double L, std::optional<double> R) {
    double r = R.value_or(0.0);
    if (!R) {
        r = admissible_inner_cutoff(alpha, L);
        if (r <= 0.0) r = 1.0;
    }
    return sweep_divergence(CounterexampleSpec::with_p_prime(tag, alpha, pp, L, r));
}

CheckRow sweep_row(const SweepResult& r, const Tolerances& tol) {
    const CounterexampleSpec& spec = r.records.front().spec;
    const double e1 = r.records.front().predicted_exponent + 1.0;
    if (r.predicted == Growth::Divergent) {
        const double v = r.observed == Growth::Divergent ? std::abs(r.slope - e1) / e1 : infinity;
        return make_row("divergence_slope", spec.tag, "slope_rel_error", v, tol, 0.05);
    }
    // below threshold: consecutive increments over the last decade must shrink
    const double v = r.observed == r.predicted ? r.increment_ratio : infinity;
    return make_row("convergence", spec.tag, "increment_ratio", v, tol, 1.0 - 1e-6);
}

}  // namespace nuharm::cli
