#include "nuharm/setup.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nuharm {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

SetupParams desk_params(GroupTag tag) {
    SetupParams p;
    switch (tag) {
        case GroupTag::Affine:
            p.n_rep = 128;
            p.rep_min = 1e-3;
            p.rep_max = 12.0;
            p.n_b = 64;
            p.b_half = 3.0;
            p.n_a = 33;
            break;
        case GroupTag::Sim2:
            p.n_rep = 32;
            p.n_angular = 32;
            p.rep_min = 0.02;
            p.rep_max = 10.0;
            p.n_b = 24;
            p.b_half = 2.5;
            p.n_a = 15;
            break;
        case GroupTag::PoincareAff:
            p.n_rep = 33;
            p.n_angular = 29;
            p.rep_min = 3e-3;
            p.rep_max = 8.0;
            p.u_max = 3.5;
            p.n_b = 24;
            p.b_half = 2.5;
            p.n_a = 13;
            p.n_angle = 13;
            break;
    }
    return p;
}

SetupParams reduced_params(GroupTag tag) {
    SetupParams p;
    switch (tag) {
        case GroupTag::Affine:
            p.n_rep = 64;
            p.rep_min = 5e-3;
            p.rep_max = 10.0;
            p.n_b = 48;
            p.b_half = 3.0;
            p.n_a = 21;
            break;
        case GroupTag::Sim2:
            p.n_rep = 12;
            p.n_angular = 8;
            p.rep_min = 0.05;
            p.rep_max = 5.0;
            p.n_b = 11;
            p.b_half = 3.75;
            p.n_a = 5;
            break;
        case GroupTag::PoincareAff:
            p.n_rep = 10;
            p.n_angular = 9;
            p.rep_min = 0.05;
            p.rep_max = 5.0;
            p.u_max = 2.0;
            p.n_b = 11;
            p.b_half = 3.5;
            p.n_a = 5;
            p.n_angle = 5;
            break;
    }
    return p;
}

HarmonicSetup make_setup(GroupTag tag, const SetupParams& p) {
    if (p.n_rep < 2 || p.n_a < 2 || p.n_b < 2) throw std::invalid_argument("setup needs at least two nodes per axis");
    HarmonicSetup s;
    s.tag = tag;
    s.params = p;
    s.log_step = std::log(p.rep_max / p.rep_min) / (p.n_rep - 1);
    const int k_lo = -(p.n_a - 1) / 2;
    const LatticeRange ar = log_lattice(s.log_step, k_lo, k_lo + p.n_a - 1);

    GroupGridSpec g;
    g.tag = tag;
    g.n_b = p.n_b;
    g.b_lo = -p.b_half;
    g.b_hi = p.b_half;
    g.b_grading = p.b_grading;
    g.n_a = ar.n;
    g.a_min = ar.lo;
    g.a_max = ar.hi;
    g.b_quadrature = Quadrature::Lattice;
    g.rest_quadrature = Quadrature::Lattice;
    constexpr Quadrature lat = Quadrature::Lattice;

    s.reps.labels = dual_labels(tag);
    switch (tag) {
        case GroupTag::Affine:
            s.reps.grids.push_back(std::make_shared<Grid>(build_halfline_grid(1, p.n_rep, p.rep_min, p.rep_max, lat)));
            s.reps.grids.push_back(std::make_shared<Grid>(build_halfline_grid(-1, p.n_rep, p.rep_min, p.rep_max, lat)));
            break;
        case GroupTag::Sim2:
            g.n_angle = p.n_angular;
            s.reps.grids.push_back(std::make_shared<Grid>(build_plane_grid(p.n_rep, p.n_angular, p.rep_min, p.rep_max, lat)));
            break;
        case GroupTag::PoincareAff: {
            if (p.n_angular % 2 == 0 || p.n_angle % 2 == 0)
                throw std::invalid_argument("cone u nodes and rapidity nodes must be odd so that 0 is a node");
            const double hu = 2.0 * p.u_max / (p.n_angular - 1);
            const int kt = (p.n_angle - 1) / 2;
            g.n_angle = p.n_angle;
            g.angle_lo = -kt * hu;
            g.angle_hi = kt * hu;
            for (const auto& lab : s.reps.labels)
                s.reps.grids.push_back(std::make_shared<Grid>(
                    build_cone_grid(lab.i, lab.j, p.n_rep, p.n_angular, p.rep_min, p.rep_max, p.u_max, lat)));
            break;
        }
    }
    s.group = std::make_shared<Grid>(build_group_grid(g));
    return s;
}

std::complex<double> Bump::operator()(const GroupElement& g) const {
    if (g.tag != tag) throw IncompatibleGroups("bump evaluated on the wrong group");
    const Vec2 d = g.b - b0;
    const double la = std::log(g.a) - log_a0;
    double q = dot(d, d) / (sigma_b * sigma_b) + la * la / (sigma_a * sigma_a);
    if (tag == GroupTag::PoincareAff) {
        const double t = (g.angle - angle0) / sigma_angle;
        q += t * t;
    }
    if (support > 0.0 && q > support * support) return 0.0;
    double v = std::exp(-0.5 * q);
    if (tag == GroupTag::Sim2) v *= 1.0 + modulation * std::cos(g.angle - angle0);
    return amplitude * v * std::polar(1.0, dot(chirp, g.b));
}

GridFunction Bump::sample(std::shared_ptr<const Grid> grid) const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(grid->size()));
    for (std::size_t k = 0; k < grid->size(); ++k) v[k] = (*this)(grid->element(k));
    return {std::move(grid), std::move(v)};
}

std::complex<double> Bump::affine_F1(double s, double a) const {
    if (tag != GroupTag::Affine) throw IncompatibleGroups("affine_F1 needs an affine bump");
    // (2pi)^{-1/2} int exp(-(b-b0)^2/2sigma^2 + i c b - i b s) db
    const double w = s - chirp.x;
    const double la = std::log(a) - log_a0;
    return amplitude * sigma_b * std::exp(-0.5 * sigma_b * sigma_b * w * w - 0.5 * la * la / (sigma_a * sigma_a)) *
           std::polar(1.0, -w * b0.x);
}

Bump standard_bump(GroupTag tag) {
    Bump b;
    b.tag = tag;
    switch (tag) {
        case GroupTag::Affine:
            b.b0 = {0.3, 0.0};
            b.sigma_b = 0.5;
            b.sigma_a = 0.25;
            break;
        case GroupTag::Sim2:
            b.b0 = {0.2, -0.1};
            b.sigma_b = 0.5;
            b.sigma_a = 0.3;
            b.angle0 = 1.0;
            break;
        case GroupTag::PoincareAff:
            b.b0 = {0.2, -0.1};
            b.sigma_b = 0.5;
            b.sigma_a = 0.3;
            b.sigma_angle = 0.3;
            break;
    }
    return b;
}

Bump random_bump(GroupTag tag, std::mt19937_64& rng, double spread) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Bump b = standard_bump(tag);
    b.amplitude = std::polar(0.5 + 0.5 * std::abs(u(rng)), std::numbers::pi * u(rng));
    b.b0 = {0.3 * spread * u(rng), tag == GroupTag::Affine ? 0.0 : 0.3 * spread * u(rng)};
    b.sigma_b *= 1.0 + 0.2 * u(rng);
    b.log_a0 = 0.1 * spread * u(rng);
    b.sigma_a *= 1.0 + 0.2 * u(rng);
    b.angle0 = tag == GroupTag::Sim2 ? two_pi * 0.5 * (1.0 + u(rng)) : 0.1 * spread * u(rng);
    b.modulation = 0.5 * std::abs(u(rng));
    b.chirp = {0.5 * u(rng), tag == GroupTag::Affine ? 0.0 : 0.5 * u(rng)};
    return b;
}

Bump wigner_bump(GroupTag tag, std::mt19937_64& rng) {
    Bump b = random_bump(tag, rng);
    b.support = 4.5;
    if (tag != GroupTag::Affine) {
        // products f(x') g(x'^{-1} x) must stay band-limited on the coarse b-lattice, and the
        // dilations/rotations they involve must stay inside the reduced windows
        b.sigma_b *= 2.0;
        b.sigma_a *= 0.5;
        b.log_a0 *= 0.5;
        b.sigma_angle *= 0.5;
        if (tag == GroupTag::PoincareAff) b.angle0 *= 0.5;
    }
    return b;
}

}  // namespace nuharm
