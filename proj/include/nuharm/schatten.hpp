#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "nuharm/transform.hpp"

namespace nuharm {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct SingularSpectrum {
    std::vector<double> values;  // nonincreasing
};

// M = D_row^{1/2} K D_col^{1/2}
Eigen::MatrixXcd weighted_matrix(const KernelMatrix& k);
KernelMatrix kernel_from_weighted(const Eigen::MatrixXcd& m, std::shared_ptr<const Grid> row_grid,
                                  std::shared_ptr<const Grid> col_grid);

SingularSpectrum singular_spectrum(const Eigen::MatrixXcd& m);
// r >= 1 or infinity
double schatten_norm(const SingularSpectrum& s, double r);
double schatten_norm(const Eigen::MatrixXcd& m, double r);

// (sum_rho sum_x w_x ||F(x,rho) K^{dm}||_p^p)^{1/p}; p = infinity gives the
// largest operator norm.  dm defaults to 1/p.
double mixed_norm(const OperatorField& field, double p);
double mixed_norm(const OperatorField& field, double p, double dm_exponent);

// accumulates the same norm from streamed entries
class MixedNormAccumulator {
public:
    MixedNormAccumulator(double p, double dm_exponent);
    explicit MixedNormAccumulator(double p);
    void add(double node_weight, const Eigen::MatrixXcd& weighted_entry, const Eigen::VectorXd& duflo_moore);
    double value() const;
    // finite p: a term whose bound w ||.||_F^p is below tol enters as that bound,
    // so value() becomes an upper estimate off by at most (skipped terms) * tol
    void skip_below(double tol) { skip_ = tol; }
    std::size_t skipped() const { return n_skipped_; }

private:
    double p_;
    double dm_;
    std::vector<double> terms_;
    double max_ = 0.0;
    double skip_ = 0.0;
    std::size_t n_skipped_ = 0;
};

}  // namespace nuharm
