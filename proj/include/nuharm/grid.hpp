#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nuharm/group.hpp"

namespace nuharm {

// An axis carries a uniform computational coordinate v_k = v0 + k dv and a
// map to the physical coordinate.
enum class AxisMap { Linear, Log, Power };

// Trapezoid halves the end nodes; Lattice gives every node its full cell, which
// keeps re-indexings between commensurate lattices exact partial isometries.
enum class Quadrature { Trapezoid, Lattice };

struct Axis {
    AxisMap map = AxisMap::Linear;
    double v0 = 0.0;
    double dv = 1.0;
    int n = 0;
    bool periodic = false;  // period n*dv, equal weights
    bool cells = false;     // Lattice quadrature
    double power = 1.0;     // Power: x = scale * sign(v) |v|^power
    double scale = 1.0;

    double v(int k) const { return v0 + k * dv; }
    double physical(double v) const;
    // NaN when x is outside the map's range
    double computational(double x) const;
    double jacobian(double v) const;
    double end_factor(int k) const;
    double weight(int k) const { return dv * end_factor(k) * jacobian(v(k)); }
    Axis with(Quadrature q) const;
    // computational interval represented by the nodes
    double lower_edge() const { return cells ? v0 - 0.5 * dv : v0; }
    double upper_edge() const { return cells ? v(n - 1) + 0.5 * dv : v(n - 1); }

    static Axis linear(int n, double lo, double hi);
    static Axis periodic_circle(int n);  // [0, 2pi)
    static Axis logarithmic(int n, double lo, double hi);
    // nodes symmetric about 0; an even n never places a node at 0
    static Axis graded(int n, double half_width, double power);
};

enum class DomainKind { HalfLinePlus, HalfLineMinus, Plane, Cone, Group };

struct Domain {
    DomainKind kind = DomainKind::Plane;
    int cone_i = 0;
    int cone_j = 0;
    GroupTag group = GroupTag::Affine;

    static Domain half_line(int sign);
    static Domain plane();
    static Domain cone(int i, int j);
    static Domain group_domain(GroupTag tag);

    std::string name() const;
    bool operator==(const Domain&) const = default;
};

// Cone C_i^j: i picks the sign, j the dominant coordinate.
//   C_1^1 = r( cosh u, sinh u)   C_2^1 = r(-cosh u, sinh u)
//   C_1^2 = r( sinh u, cosh u)   C_2^2 = r( sinh u,-cosh u)
Vec2 cone_point(int i, int j, double r, double u);
bool in_cone(int i, int j, Vec2 x);
// inverse of cone_point; false outside the cone
bool cone_chart(int i, int j, Vec2 x, double& r, double& u);
// rapidity psi with psi(Lambda_t x) = psi(x) + t on every cone
double rapidity(Vec2 x);

struct Stencil {
    std::array<std::size_t, 16> index{};
    std::array<double, 16> weight{};
    int count = 0;
};

// multilinear stencil over a tensor block of axes (row-major, last axis fastest)
Stencil axis_stencil(std::span<const Axis> axes, std::span<const double> v);

class Grid {
public:
    Grid(Domain domain, std::vector<Axis> axes);

    const Domain& domain() const { return domain_; }
    const std::vector<Axis>& axes() const { return axes_; }
    std::size_t size() const { return weights_.size(); }
    // physical coordinates per node: 1 (half-line), 2 (plane, cone),
    // 2/4 for group grids (b..., a[, angle])
    int dim() const { return dim_; }

    std::span<const double> node(std::size_t k) const {
        return {nodes_.data() + k * dim_, static_cast<std::size_t>(dim_)};
    }
    double weight(std::size_t k) const { return weights_[k]; }
    const std::vector<double>& weights() const { return weights_; }

    std::size_t flat(std::span<const int> idx) const;
    void unflatten(std::size_t k, std::span<int> idx) const;

    // computational coordinates of a physical point; false outside the chart
    bool chart(std::span<const double> point, std::span<double> v) const;
    // multilinear interpolation stencil in computational coordinates;
    // empty outside the truncated domain
    Stencil stencil(std::span<const double> point) const;
    Stencil stencil_computational(std::span<const double> v) const;

    // group grids only
    GroupElement element(std::size_t k) const;
    std::vector<double> coordinates(const GroupElement& g) const;
    int translation_axes() const;

private:
    Domain domain_;
    std::vector<Axis> axes_;
    int dim_ = 0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

Grid build_halfline_grid(int sign, int n, double s_min, double s_max, Quadrature q = Quadrature::Trapezoid);
Grid build_plane_grid(int n_r, int n_phi, double r_min, double r_max, Quadrature q = Quadrature::Trapezoid);
Grid build_cone_grid(int i, int j, int n_r, int n_u, double r_min, double r_max, double u_max,
                     Quadrature q = Quadrature::Trapezoid);

struct GroupGridSpec {
    GroupTag tag = GroupTag::Affine;
    int n_b = 32;  // per translation axis
    double b_lo = -1.0;
    double b_hi = 1.0;
    double b_grading = 1.0;  // > 1: power grading towards b = 0 (symmetric box only)
    int n_a = 16;
    double a_min = 0.5;
    double a_max = 2.0;
    int n_angle = 16;  // Sim2: full circle, periodic
    double angle_lo = -1.0;  // PoincareAff rapidity window
    double angle_hi = 1.0;
    Quadrature b_quadrature = Quadrature::Trapezoid;
    Quadrature rest_quadrature = Quadrature::Trapezoid;  // a and angle axes
};

Grid build_group_grid(const GroupGridSpec& spec);

// dilation window exp(k_lo h) .. exp(k_hi h), on the lattice exp(h Z)
struct LatticeRange {
    int n;
    double lo;
    double hi;
};
LatticeRange log_lattice(double h, int k_lo, int k_hi);

double pairwise_sum(std::span<const double> x);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> x);

double integrate(const Grid& grid, std::span<const double> samples);
std::complex<double> integrate(const Grid& grid, std::span<const std::complex<double>> samples);

void write_grid_csv(std::ostream& os, const Grid& grid);

struct GridTable {
    int dim = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};
GridTable read_grid_csv(std::istream& is);

}  // namespace nuharm
