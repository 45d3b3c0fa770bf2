#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nuharm/grid.hpp"
#include "nuharm/representation.hpp"

namespace nuharm {

// f^(rho) = c_G int f(g) rho(g) dmu_L(g); chosen so that Plancherel and
// inversion hold with the Duflo-Moore operators as defined
double fourier_constant(GroupTag tag);
// constant of the translation Fourier transform in b
double translation_fourier_constant(GroupTag tag);

// (A phi)(x) = sum_y K(x,y) w_y phi(y)
struct KernelMatrix {
    std::shared_ptr<const Grid> row_grid;
    std::shared_ptr<const Grid> col_grid;
    Eigen::MatrixXcd entries;
};

void write_kernel_csv(std::ostream& os, const KernelMatrix& k);

// F1 f sampled at the given frequencies.  Rows follow `freqs`, columns the
// rest block (a[, angle]) of the group grid in grid order.
//   Affine  (2pi)^{-1/2} int f e^{-i b s} db
//   Sim2    (2pi)^{-1}   int f e^{-i b.xi} db
//   P_aff   (2pi)^{-1}   int f e^{i<xi;b>} db
Eigen::MatrixXcd partial_fourier_translation(const GridFunction& f, const std::vector<Vec2>& freqs);
std::vector<Vec2> frequencies(const Grid& rep_grid);

// kernel of f^(rho) K^dm_exponent from the closed form in terms of F1 f
KernelMatrix group_fourier(const RepLabel& label, const GridFunction& f, double dm_exponent,
                           std::shared_ptr<const Grid> rep_grid);
// same operator by direct quadrature of c_G sum_g w_g f(g) rho(g) K^dm_exponent
KernelMatrix direct_fourier_operator(const RepLabel& label, const GridFunction& f, double dm_exponent,
                                     std::shared_ptr<const Grid> rep_grid);

// D^{1/2} R D^{-1/2}: rho(g) in the isometric (quadrature weighted) frame
SparseOp weighted_representation(const RepLabel& label, const GroupElement& g, const Grid& rep_grid);

// Operator valued function on group grid x labels.  Entries are stored in
// the weighted frame; an empty matrix stands for zero.
struct OperatorField {
    std::shared_ptr<const Grid> group_grid;
    std::vector<RepLabel> labels;
    std::vector<std::shared_ptr<const Grid>> rep_grids;
    std::vector<std::vector<Eigen::MatrixXcd>> entries;  // [label][node]

    static OperatorField zeros(std::shared_ptr<const Grid> group_grid, std::vector<RepLabel> labels,
                               std::vector<std::shared_ptr<const Grid>> rep_grids);
    void check_shape() const;
};
using SymbolField = OperatorField;
using WignerField = OperatorField;

struct RepSpaces {
    std::vector<RepLabel> labels;
    std::vector<std::shared_ptr<const Grid>> grids;
};

// Called once per (node, label) where W(f,g) is not identically zero.
using WignerVisitor = std::function<void(std::size_t node, std::size_t label, const Eigen::MatrixXcd& w)>;

// W(f,g)(x) = c_G sum_x' w_x' f(x') g(x'^{-1} x) rho(x'), g interpolated on the
// group grid and zero outside it
void visit_wigner(const GridFunction& f, const GridFunction& g, const RepSpaces& reps, const WignerVisitor& visit);
WignerField wigner_transform(const GridFunction& f, const GridFunction& g, const RepSpaces& reps);

// g known in closed form: evaluated exactly at x'^{-1} x instead of interpolated
using GroupFunction = std::function<cdouble(const GroupElement&)>;
void visit_wigner(const GridFunction& f, const GroupFunction& g, const RepSpaces& reps, const WignerVisitor& visit);
WignerField wigner_transform(const GridFunction& f, const GroupFunction& g, const RepSpaces& reps);

// sum_rho sum_x w_x Tr(sigma(x)^* W(f,g)(x) K)
cdouble weyl_quadratic_form(const SymbolField& sigma, const GridFunction& f, const GridFunction& g);
cdouble weyl_quadratic_form(const SymbolField& sigma, const WignerField& w);

// sum_x w_x W(f,g)(x) per label, weighted frame
std::vector<Eigen::MatrixXcd> wigner_integral(const GridFunction& f, const GridFunction& g, const RepSpaces& reps);
std::vector<Eigen::MatrixXcd> wigner_integral(const GridFunction& f, const GroupFunction& g, const RepSpaces& reps);

// f(x) = c_G sum_rho Tr(rho(x)^* A_rho), A_rho = f^(rho) K given as kernels
GridFunction inversion_reconstruct(GroupTag tag, std::shared_ptr<const Grid> group_grid,
                                   const std::vector<std::pair<RepLabel, KernelMatrix>>& fourier_data);
// same with the operators given in the weighted frame; an empty matrix is zero
GridFunction inversion_reconstruct_weighted(GroupTag tag, std::shared_ptr<const Grid> group_grid, const RepSpaces& reps,
                                            const std::vector<Eigen::MatrixXcd>& weighted_ops);

}  // namespace nuharm
