#include "nuharm/representation.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace nuharm {

RepLabel RepLabel::pi_cone(int i, int j) {
    if (!((i == 1 || i == 2) && (j == 1 || j == 2))) throw std::invalid_argument("cone indices must be 1 or 2");
    return {RepKind::PiCone, i, j};
}

GroupTag RepLabel::group() const {
    switch (kind) {
        case RepKind::RhoPlus:
        case RepKind::RhoMinus: return GroupTag::Affine;
        case RepKind::Pi: return GroupTag::Sim2;
        case RepKind::PiCone: return GroupTag::PoincareAff;
    }
    return GroupTag::Affine;
}

Domain RepLabel::domain() const {
    switch (kind) {
        case RepKind::RhoPlus: return Domain::half_line(1);
        case RepKind::RhoMinus: return Domain::half_line(-1);
        case RepKind::Pi: return Domain::plane();
        case RepKind::PiCone: return Domain::cone(i, j);
    }
    return Domain::plane();
}

std::string RepLabel::name() const {
    switch (kind) {
        case RepKind::RhoPlus: return "rho+";
        case RepKind::RhoMinus: return "rho-";
        case RepKind::Pi: return "pi";
        case RepKind::PiCone: return "pi" + std::to_string(i) + std::to_string(j);
    }
    return "?";
}

std::vector<RepLabel> dual_labels(GroupTag tag) {
    switch (tag) {
        case GroupTag::Affine: return {RepLabel::rho_plus(), RepLabel::rho_minus()};
        case GroupTag::Sim2: return {RepLabel::pi()};
        case GroupTag::PoincareAff:
            return {RepLabel::pi_cone(1, 1), RepLabel::pi_cone(2, 1), RepLabel::pi_cone(1, 2), RepLabel::pi_cone(2, 2)};
    }
    return {};
}

void check_compatible(const RepLabel& label, const Grid& grid) {
    if (!(label.domain() == grid.domain()))
        throw std::invalid_argument("representation " + label.name() + " does not act on a " + grid.domain().name() +
                                    " grid");
}

GridFunction::GridFunction(std::shared_ptr<const Grid> g, Eigen::VectorXcd v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid || static_cast<std::size_t>(values.size()) != grid->size())
        throw std::invalid_argument("grid function length does not match its grid");
}

GridFunction::GridFunction(std::shared_ptr<const Grid> g) : grid(std::move(g)) {
    values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid->size()));
}

double GridFunction::norm() const {
    std::vector<double> sq(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) sq[k] = std::norm(values[k]);
    return std::sqrt(integrate(*grid, sq));
}

cdouble GridFunction::inner(const GridFunction& other) const {
    std::vector<cdouble> t(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) t[k] = values[k] * std::conj(other.values[k]);
    return integrate(*grid, std::span<const cdouble>(t));
}

SparseOp representation_matrix(const RepLabel& label, const GroupElement& g, const Grid& grid) {
    check_compatible(label, grid);
    if (g.tag != label.group())
        throw IncompatibleGroups("element of " + std::string(to_string(g.tag)) + " used with " + label.name());
    const auto n = static_cast<Eigen::Index>(grid.size());
    std::vector<Eigen::Triplet<cdouble>> trips;
    trips.reserve(grid.size() * 2);
    std::array<double, 2> p{};
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto x = grid.node(k);
        cdouble amp;
        if (g.tag == GroupTag::Affine) {
            p[0] = g.a * x[0];
            amp = std::sqrt(g.a) * std::polar(1.0, -g.b.x * x[0]);
        } else {
            const Vec2 xv{x[0], x[1]};
            Vec2 y;
            double phase;
            if (g.tag == GroupTag::Sim2) {
                y = g.a * rotate(-g.angle, xv);
                phase = -dot(g.b, xv);
            } else {
                y = g.a * boost(-g.angle, xv);
                phase = minkowski(xv, g.b);
            }
            p = {y.x, y.y};
            amp = g.a * std::polar(1.0, phase);
        }
        const Stencil st = grid.stencil(std::span<const double>(p.data(), grid.dim()));
        for (int s = 0; s < st.count; ++s)
            trips.emplace_back(k, static_cast<Eigen::Index>(st.index[s]), amp * st.weight[s]);
    }
    SparseOp m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

GridFunction apply_representation(const RepLabel& label, const GroupElement& g, const GridFunction& phi) {
    return {phi.grid, representation_matrix(label, g, *phi.grid) * phi.values};
}

Eigen::VectorXd duflo_moore_weights(const RepLabel& label, const Grid& grid) {
    check_compatible(label, grid);
    Eigen::VectorXd w(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto x = grid.node(k);
        switch (label.kind) {
            case RepKind::RhoPlus:
            case RepKind::RhoMinus: w[k] = std::abs(x[0]); break;
            case RepKind::Pi: w[k] = x[0] * x[0] + x[1] * x[1]; break;
            case RepKind::PiCone: w[k] = std::abs(x[0] * x[0] - x[1] * x[1]) / (2.0 * std::numbers::pi); break;
        }
    }
    return w;
}

GridFunction apply_duflo_moore(const DufloMooreSpec& spec, const GridFunction& phi) {
    if (spec.exponent < 0.0 || spec.exponent > 1.0) throw std::invalid_argument("Duflo-Moore exponent must lie in [0,1]");
    const Eigen::VectorXd w = duflo_moore_weights(spec.rep, *phi.grid);
    Eigen::VectorXcd v = phi.values;
    if (spec.exponent != 0.0)
        for (Eigen::Index k = 0; k < v.size(); ++k) v[k] *= std::pow(w[k], spec.exponent);
    return {phi.grid, std::move(v)};
}

void write_grid_function_csv(std::ostream& os, const GridFunction& f) {
    const auto old = os.precision(17);
    for (int d = 0; d < f.grid->dim(); ++d) os << (d ? ",x" : "x") << d + 1;
    os << ",re,im\n";
    for (std::size_t k = 0; k < f.grid->size(); ++k) {
        for (double x : f.grid->node(k)) os << x << ',';
        os << f.values[k].real() << ',' << f.values[k].imag() << '\n';
    }
    os.precision(old);
}

}  // namespace nuharm
