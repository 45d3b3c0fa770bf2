#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "nuharm/grid.hpp"
#include "nuharm/group.hpp"

namespace nuharm {

using cdouble = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<cdouble, Eigen::RowMajor>;

enum class RepKind { RhoPlus, RhoMinus, Pi, PiCone };

struct RepLabel {
    RepKind kind = RepKind::Pi;
    int i = 0;
    int j = 0;

    static RepLabel rho_plus() { return {RepKind::RhoPlus, 0, 0}; }
    static RepLabel rho_minus() { return {RepKind::RhoMinus, 0, 0}; }
    static RepLabel pi() { return {RepKind::Pi, 0, 0}; }
    static RepLabel pi_cone(int i, int j);

    GroupTag group() const;
    Domain domain() const;
    std::string name() const;
    bool operator==(const RepLabel&) const = default;
};

// rho+, rho- / pi / pi_1^1, pi_2^1, pi_1^2, pi_2^2
std::vector<RepLabel> dual_labels(GroupTag tag);

void check_compatible(const RepLabel& label, const Grid& grid);

struct GridFunction {
    std::shared_ptr<const Grid> grid;
    Eigen::VectorXcd values;

    GridFunction() = default;
    GridFunction(std::shared_ptr<const Grid> g, Eigen::VectorXcd v);
    explicit GridFunction(std::shared_ptr<const Grid> g);  // zeros

    double norm() const;
    cdouble inner(const GridFunction& other) const;  // <this, other>, antilinear in other
};

struct DufloMooreSpec {
    RepLabel rep;
    double exponent = 1.0;
};

// Matrix of rho(g) acting on node values: (R phi)_x = amp(g) phase(g, x) phi(T_g x),
// the dilated argument interpolated multilinearly, zero outside the grid.
SparseOp representation_matrix(const RepLabel& label, const GroupElement& g, const Grid& grid);
GridFunction apply_representation(const RepLabel& label, const GroupElement& g, const GridFunction& phi);

// |s|, |x|^2 or |<x;x>|/2pi at every node
Eigen::VectorXd duflo_moore_weights(const RepLabel& label, const Grid& grid);
GridFunction apply_duflo_moore(const DufloMooreSpec& spec, const GridFunction& phi);

void write_grid_function_csv(std::ostream& os, const GridFunction& f);

}  // namespace nuharm
