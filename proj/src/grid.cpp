#include "nuharm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nuharm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double snap_tol = 1e-9;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

template <class T>
T pairwise(const T* x, std::size_t n) {
    if (n <= 8) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t m = n / 2;
    return pairwise(x, m) + pairwise(x + m, n - m);
}

}  // namespace

double Axis::physical(double v) const {
    switch (map) {
        case AxisMap::Linear: return v;
        case AxisMap::Log: return std::exp(v);
        case AxisMap::Power: return scale * std::copysign(std::pow(std::abs(v), power), v);
    }
    return v;
}

double Axis::computational(double x) const {
    switch (map) {
        case AxisMap::Linear: return x;
        case AxisMap::Log: return x > 0.0 ? std::log(x) : std::numeric_limits<double>::quiet_NaN();
        case AxisMap::Power: return std::copysign(std::pow(std::abs(x) / scale, 1.0 / power), x);
    }
    return x;
}

double Axis::jacobian(double v) const {
    switch (map) {
        case AxisMap::Linear: return 1.0;
        case AxisMap::Log: return std::exp(v);
        case AxisMap::Power: return scale * power * std::pow(std::abs(v), power - 1.0);
    }
    return 1.0;
}

double Axis::end_factor(int k) const {
    if (periodic || cells || n == 1) return 1.0;
    return (k == 0 || k == n - 1) ? 0.5 : 1.0;
}

Axis Axis::linear(int n, double lo, double hi) {
    require(n >= 2 && lo < hi, "linear axis needs n >= 2 and lo < hi");
    Axis ax;
    ax.map = AxisMap::Linear;
    ax.n = n;
    ax.v0 = lo;
    ax.dv = (hi - lo) / (n - 1);
    return ax;
}

Axis Axis::with(Quadrature q) const {
    Axis ax = *this;
    ax.cells = q == Quadrature::Lattice && !periodic;
    return ax;
}

Axis Axis::periodic_circle(int n) {
    require(n >= 1, "periodic axis needs n >= 1");
    Axis ax;
    ax.map = AxisMap::Linear;
    ax.n = n;
    ax.v0 = 0.0;
    ax.dv = two_pi / n;
    ax.periodic = true;
    return ax;
}

Axis Axis::logarithmic(int n, double lo, double hi) {
    require(n >= 2 && lo > 0.0 && lo < hi, "log axis needs n >= 2 and 0 < lo < hi");
    Axis ax;
    ax.map = AxisMap::Log;
    ax.n = n;
    ax.v0 = std::log(lo);
    ax.dv = (std::log(hi) - std::log(lo)) / (n - 1);
    return ax;
}

Axis Axis::graded(int n, double half_width, double power) {
    require(n >= 2 && half_width > 0.0 && power >= 1.0, "graded axis needs n >= 2, width > 0, power >= 1");
    Axis ax;
    ax.map = power == 1.0 ? AxisMap::Linear : AxisMap::Power;
    ax.n = n;
    if (ax.map == AxisMap::Linear) {
        ax.v0 = -half_width;
        ax.dv = 2.0 * half_width / (n - 1);
    } else {
        ax.v0 = -1.0;
        ax.dv = 2.0 / (n - 1);
        ax.power = power;
        ax.scale = half_width;
    }
    return ax;
}

Domain Domain::half_line(int sign) {
    require(sign == 1 || sign == -1, "half-line sign must be +1 or -1");
    return {sign > 0 ? DomainKind::HalfLinePlus : DomainKind::HalfLineMinus, 0, 0, GroupTag::Affine};
}
Domain Domain::plane() { return {DomainKind::Plane, 0, 0, GroupTag::Sim2}; }
Domain Domain::cone(int i, int j) {
    require((i == 1 || i == 2) && (j == 1 || j == 2), "cone indices must be 1 or 2");
    return {DomainKind::Cone, i, j, GroupTag::PoincareAff};
}
Domain Domain::group_domain(GroupTag tag) { return {DomainKind::Group, 0, 0, tag}; }

std::string Domain::name() const {
    switch (kind) {
        case DomainKind::HalfLinePlus: return "halfline+";
        case DomainKind::HalfLineMinus: return "halfline-";
        case DomainKind::Plane: return "plane";
        case DomainKind::Cone: return "cone" + std::to_string(cone_i) + std::to_string(cone_j);
        case DomainKind::Group: return "group:" + std::string(to_string(group));
    }
    return "?";
}

Vec2 cone_point(int i, int j, double r, double u) {
    const double c = r * std::cosh(u), s = r * std::sinh(u);
    if (j == 1) return i == 1 ? Vec2{c, s} : Vec2{-c, s};
    return i == 1 ? Vec2{s, c} : Vec2{s, -c};
}

bool in_cone(int i, int j, Vec2 x) {
    const double lead = j == 1 ? x.x : x.y;
    const double other = j == 1 ? x.y : x.x;
    const double signed_lead = i == 1 ? lead : -lead;
    return signed_lead > std::abs(other);
}

bool cone_chart(int i, int j, Vec2 x, double& r, double& u) {
    if (!in_cone(i, j, x)) return false;
    const double lead = (j == 1 ? x.x : x.y) * (i == 1 ? 1.0 : -1.0);
    const double other = j == 1 ? x.y : x.x;
    r = std::sqrt((lead - other) * (lead + other));
    u = std::atanh(other / lead);
    return true;
}

double rapidity(Vec2 x) {
    return std::abs(x.x) > std::abs(x.y) ? std::atanh(x.y / x.x) : std::atanh(x.x / x.y);
}

Grid::Grid(Domain domain, std::vector<Axis> axes) : domain_(domain), axes_(std::move(axes)) {
    std::size_t total = 1;
    for (const auto& ax : axes_) {
        require(ax.n >= 1, "axis with no nodes");
        total *= static_cast<std::size_t>(ax.n);
    }
    const int na = static_cast<int>(axes_.size());
    switch (domain_.kind) {
        case DomainKind::HalfLinePlus:
        case DomainKind::HalfLineMinus:
            require(na == 1 && axes_[0].map == AxisMap::Log, "half-line grid needs one log axis");
            dim_ = 1;
            break;
        case DomainKind::Plane:
        case DomainKind::Cone:
            require(na == 2 && axes_[0].map == AxisMap::Log, "plane/cone grid needs (log r, angle) axes");
            dim_ = 2;
            break;
        case DomainKind::Group:
            require(na == translation_dim(domain_.group) + 1 + (has_angle(domain_.group) ? 1 : 0),
                    "group grid axis count does not match the group");
            require(axes_[translation_dim(domain_.group)].map == AxisMap::Log, "group dilation axis must be logarithmic");
            dim_ = na;
            break;
    }
    nodes_.resize(total * dim_);
    weights_.resize(total);
    std::vector<int> idx(na);
    for (std::size_t k = 0; k < total; ++k) {
        unflatten(k, idx);
        double w = 1.0;
        for (int d = 0; d < na; ++d) w *= axes_[d].weight(idx[d]);
        double* x = nodes_.data() + k * dim_;
        switch (domain_.kind) {
            case DomainKind::HalfLinePlus:
            case DomainKind::HalfLineMinus: {
                const double s = axes_[0].physical(axes_[0].v(idx[0]));
                x[0] = domain_.kind == DomainKind::HalfLinePlus ? s : -s;
                break;
            }
            case DomainKind::Plane: {
                const double r = axes_[0].physical(axes_[0].v(idx[0]));
                const double phi = axes_[1].v(idx[1]);
                x[0] = r * std::cos(phi);
                x[1] = r * std::sin(phi);
                w *= r;
                break;
            }
            case DomainKind::Cone: {
                const double r = axes_[0].physical(axes_[0].v(idx[0]));
                const Vec2 p = cone_point(domain_.cone_i, domain_.cone_j, r, axes_[1].v(idx[1]));
                x[0] = p.x;
                x[1] = p.y;
                w *= r;
                break;
            }
            case DomainKind::Group: {
                for (int d = 0; d < na; ++d) x[d] = axes_[d].physical(axes_[d].v(idx[d]));
                w *= haar_density(domain_.group, HaarSide::Left, element(k));
                break;
            }
        }
        weights_[k] = w;
    }
}

std::size_t Grid::flat(std::span<const int> idx) const {
    std::size_t k = 0;
    for (std::size_t d = 0; d < axes_.size(); ++d) k = k * axes_[d].n + idx[d];
    return k;
}

void Grid::unflatten(std::size_t k, std::span<int> idx) const {
    for (std::size_t d = axes_.size(); d-- > 0;) {
        idx[d] = static_cast<int>(k % axes_[d].n);
        k /= axes_[d].n;
    }
}

int Grid::translation_axes() const {
    return domain_.kind == DomainKind::Group ? translation_dim(domain_.group) : 0;
}

GroupElement Grid::element(std::size_t k) const {
    if (domain_.kind != DomainKind::Group) throw std::invalid_argument("element() needs a group grid");
    const double* x = nodes_.data() + k * dim_;
    switch (domain_.group) {
        case GroupTag::Affine: return GroupElement::affine(x[0], x[1]);
        case GroupTag::Sim2: return GroupElement::sim2({x[0], x[1]}, x[2], x[3]);
        case GroupTag::PoincareAff: return GroupElement::poincare({x[0], x[1]}, x[2], x[3]);
    }
    throw std::logic_error("unreachable");
}

std::vector<double> Grid::coordinates(const GroupElement& g) const {
    if (domain_.kind != DomainKind::Group || g.tag != domain_.group)
        throw IncompatibleGroups("group element does not belong to this grid's group");
    if (g.tag == GroupTag::Affine) return {g.b.x, g.a};
    return {g.b.x, g.b.y, g.a, g.angle};
}

bool Grid::chart(std::span<const double> p, std::span<double> v) const {
    switch (domain_.kind) {
        case DomainKind::HalfLinePlus:
        case DomainKind::HalfLineMinus: {
            const double s = domain_.kind == DomainKind::HalfLinePlus ? p[0] : -p[0];
            if (!(s > 0.0)) return false;
            v[0] = std::log(s);
            return true;
        }
        case DomainKind::Plane: {
            const double r = std::hypot(p[0], p[1]);
            if (!(r > 0.0)) return false;
            v[0] = std::log(r);
            v[1] = reduce_angle(std::atan2(p[1], p[0]));
            return true;
        }
        case DomainKind::Cone: {
            double r, u;
            if (!cone_chart(domain_.cone_i, domain_.cone_j, {p[0], p[1]}, r, u) || !(r > 0.0)) return false;
            v[0] = std::log(r);
            v[1] = u;
            return true;
        }
        case DomainKind::Group: {
            const int nb = translation_dim(domain_.group);
            for (int d = 0; d < nb; ++d) v[d] = axes_[d].computational(p[d]);
            if (!(p[nb] > 0.0)) return false;
            v[nb] = std::log(p[nb]);
            if (domain_.group == GroupTag::Sim2)
                v[nb + 1] = reduce_angle(p[nb + 1]);
            else if (domain_.group == GroupTag::PoincareAff)
                v[nb + 1] = p[nb + 1];
            return true;
        }
    }
    return false;
}

Stencil Grid::stencil(std::span<const double> point) const {
    std::array<double, 4> v{};
    Stencil st;
    if (!chart(point, std::span<double>(v.data(), axes_.size()))) return st;
    return stencil_computational(std::span<const double>(v.data(), axes_.size()));
}

Stencil axis_stencil(std::span<const Axis> axes, std::span<const double> v) {
    Stencil st;
    const int na = static_cast<int>(axes.size());
    if (na > 4) throw std::invalid_argument("at most four axes are supported");
    std::array<int, 4> lo{}, hi{};
    std::array<double, 4> frac{};
    for (int d = 0; d < na; ++d) {
        const Axis& ax = axes[d];
        double t = (v[d] - ax.v0) / ax.dv;
        if (!std::isfinite(t)) return st;
        if (ax.periodic) {
            t = std::fmod(t, static_cast<double>(ax.n));
            if (t < 0.0) t += ax.n;
        } else {
            if (t < -snap_tol || t > ax.n - 1 + snap_tol) return st;
            t = std::clamp(t, 0.0, static_cast<double>(ax.n - 1));
        }
        const double r = std::round(t);
        if (std::abs(t - r) < snap_tol) t = r;
        int i0 = static_cast<int>(std::floor(t));
        double f = t - i0;
        if (ax.periodic) {
            i0 %= ax.n;
            hi[d] = (i0 + 1) % ax.n;
        } else {
            if (i0 >= ax.n - 1) {
                i0 = ax.n - 1;
                f = 0.0;
            }
            hi[d] = std::min(i0 + 1, ax.n - 1);
        }
        lo[d] = i0;
        frac[d] = f;
    }
    std::array<int, 4> idx{};
    for (int corner = 0; corner < (1 << na); ++corner) {
        double w = 1.0;
        for (int d = 0; d < na; ++d) {
            const bool up = (corner >> d) & 1;
            w *= up ? frac[d] : 1.0 - frac[d];
            idx[d] = up ? hi[d] : lo[d];
        }
        if (w == 0.0) continue;
        std::size_t k = 0;
        for (int d = 0; d < na; ++d) k = k * axes[d].n + idx[d];
        st.index[st.count] = k;
        st.weight[st.count] = w;
        ++st.count;
    }
    return st;
}

Stencil Grid::stencil_computational(std::span<const double> v) const {
    return axis_stencil(axes_, v);
}

Grid build_halfline_grid(int sign, int n, double s_min, double s_max, Quadrature q) {
    require(n >= 2 && s_min > 0.0 && s_min < s_max, "half-line grid needs n >= 2 and 0 < s_min < s_max");
    return Grid(Domain::half_line(sign), {Axis::logarithmic(n, s_min, s_max).with(q)});
}

Grid build_plane_grid(int n_r, int n_phi, double r_min, double r_max, Quadrature q) {
    require(n_r >= 2 && n_phi >= 1 && r_min > 0.0 && r_min < r_max, "plane grid needs 0 < r_min < r_max");
    return Grid(Domain::plane(), {Axis::logarithmic(n_r, r_min, r_max).with(q), Axis::periodic_circle(n_phi)});
}

Grid build_cone_grid(int i, int j, int n_r, int n_u, double r_min, double r_max, double u_max, Quadrature q) {
    require((i == 1 || i == 2) && (j == 1 || j == 2), "invalid cone index");
    require(n_r >= 2 && n_u >= 2 && r_min > 0.0 && r_min < r_max && u_max > 0.0, "invalid cone grid bounds");
    return Grid(Domain::cone(i, j),
                {Axis::logarithmic(n_r, r_min, r_max).with(q), Axis::linear(n_u, -u_max, u_max).with(q)});
}

Grid build_group_grid(const GroupGridSpec& s) {
    require(s.a_min > 0.0 && s.a_min < s.a_max && s.n_a >= 2, "group grid needs 0 < a_min < a_max");
    require(s.n_b >= 2 && s.b_lo < s.b_hi, "group grid needs b_lo < b_hi");
    std::vector<Axis> axes;
    Axis b_axis;
    if (s.b_grading > 1.0) {
        require(std::abs(s.b_lo + s.b_hi) < 1e-12 * (s.b_hi - s.b_lo), "graded b-axis needs a symmetric box");
        b_axis = Axis::graded(s.n_b, s.b_hi, s.b_grading);
    } else {
        b_axis = Axis::linear(s.n_b, s.b_lo, s.b_hi);
    }
    b_axis = b_axis.with(s.b_quadrature);
    for (int d = 0; d < translation_dim(s.tag); ++d) axes.push_back(b_axis);
    axes.push_back(Axis::logarithmic(s.n_a, s.a_min, s.a_max).with(s.rest_quadrature));
    if (s.tag == GroupTag::Sim2) {
        axes.push_back(Axis::periodic_circle(s.n_angle));
    } else if (s.tag == GroupTag::PoincareAff) {
        require(s.angle_lo < s.angle_hi && s.n_angle >= 2, "rapidity window needs lo < hi");
        axes.push_back(Axis::linear(s.n_angle, s.angle_lo, s.angle_hi).with(s.rest_quadrature));
    }
    return Grid(Domain::group_domain(s.tag), std::move(axes));
}

LatticeRange log_lattice(double h, int k_lo, int k_hi) {
    require(h > 0.0 && k_lo < k_hi, "lattice range needs h > 0 and k_lo < k_hi");
    return {k_hi - k_lo + 1, std::exp(k_lo * h), std::exp(k_hi * h)};
}

double pairwise_sum(std::span<const double> x) { return pairwise(x.data(), x.size()); }
std::complex<double> pairwise_sum(std::span<const std::complex<double>> x) { return pairwise(x.data(), x.size()); }

double integrate(const Grid& grid, std::span<const double> samples) {
    require(samples.size() == grid.size(), "sample count does not match the grid");
    std::vector<double> t(samples.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = grid.weight(k) * samples[k];
    return pairwise_sum(t);
}

std::complex<double> integrate(const Grid& grid, std::span<const std::complex<double>> samples) {
    require(samples.size() == grid.size(), "sample count does not match the grid");
    std::vector<std::complex<double>> t(samples.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = grid.weight(k) * samples[k];
    return pairwise_sum(std::span<const std::complex<double>>(t));
}

void write_grid_csv(std::ostream& os, const Grid& grid) {
    const auto old = os.precision(17);
    for (int d = 0; d < grid.dim(); ++d) os << (d ? ",x" : "x") << d + 1;
    os << ",weight\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        for (double x : grid.node(k)) os << x << ',';
        os << grid.weight(k) << '\n';
    }
    os.precision(old);
}

GridTable read_grid_csv(std::istream& is) {
    GridTable t;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty grid file");
    t.dim = static_cast<int>(std::count(line.begin(), line.end(), ','));
    if (t.dim < 1 || line.rfind("weight") == std::string::npos) throw std::runtime_error("bad grid header: " + line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        int col = 0;
        while (std::getline(ls, cell, ',')) {
            const double x = std::stod(cell);
            (col < t.dim ? t.nodes : t.weights).push_back(x);
            ++col;
        }
        if (col != t.dim + 1) throw std::runtime_error("bad grid row: " + line);
    }
    return t;
}

}  // namespace nuharm
