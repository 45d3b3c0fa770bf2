#include "nuharm/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nuharm {

namespace {

void require_order(double r) {
    if (!(r >= 1.0)) throw std::invalid_argument("Schatten order must be >= 1");
}

}  // namespace

Eigen::MatrixXcd weighted_matrix(const KernelMatrix& k) {
    if (!k.row_grid || !k.col_grid) throw std::invalid_argument("kernel without grids");
    if (static_cast<std::size_t>(k.entries.rows()) != k.row_grid->size() ||
        static_cast<std::size_t>(k.entries.cols()) != k.col_grid->size())
        throw std::invalid_argument("kernel dimensions do not match its grids");
    Eigen::MatrixXcd m = k.entries;
    for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) *= std::sqrt(k.row_grid->weight(i));
    for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) *= std::sqrt(k.col_grid->weight(j));
    return m;
}

KernelMatrix kernel_from_weighted(const Eigen::MatrixXcd& m, std::shared_ptr<const Grid> row_grid,
                                  std::shared_ptr<const Grid> col_grid) {
    KernelMatrix k{std::move(row_grid), std::move(col_grid), m};
    for (Eigen::Index i = 0; i < m.rows(); ++i) k.entries.row(i) /= std::sqrt(k.row_grid->weight(i));
    for (Eigen::Index j = 0; j < m.cols(); ++j) k.entries.col(j) /= std::sqrt(k.col_grid->weight(j));
    return k;
}

SingularSpectrum singular_spectrum(const Eigen::MatrixXcd& m) {
    SingularSpectrum s;
    if (m.size() == 0) return s;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& v = svd.singularValues();
    s.values.assign(v.data(), v.data() + v.size());
    std::sort(s.values.begin(), s.values.end(), std::greater<>());
    return s;
}

double schatten_norm(const SingularSpectrum& s, double r) {
    require_order(r);
    if (s.values.empty()) return 0.0;
    const double top = s.values.front();
    if (std::isinf(r)) return top;
    if (top == 0.0) return 0.0;
    const double cut = r < 2.0 ? 1e-14 * top : 0.0;
    double acc = 0.0;
    // scaled to avoid overflow in high powers
    for (double x : s.values)
        if (x > cut) acc += std::pow(x / top, r);
    return top * std::pow(acc, 1.0 / r);
}

double schatten_norm(const Eigen::MatrixXcd& m, double r) {
    require_order(r);
    if (m.size() == 0) return 0.0;
    if (r == 2.0) return m.norm();
    if (r == 4.0 || std::isinf(r)) {
        // Gram matrix: ||m||_4^4 = ||m* m||_F^2 and ||m||_op^2 = lambda_max(m* m)
        const bool wide = m.rows() < m.cols();
        const Eigen::Index n = wide ? m.rows() : m.cols();
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
        if (wide)
            g.selfadjointView<Eigen::Lower>().rankUpdate(m);
        else
            g.selfadjointView<Eigen::Lower>().rankUpdate(m.adjoint());
        if (r == 4.0) {
            double f2 = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                f2 += std::norm(g(j, j));
                for (Eigen::Index i = j + 1; i < n; ++i) f2 += 2.0 * std::norm(g(i, j));
            }
            return std::pow(f2, 0.25);
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
        return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
    }
    return schatten_norm(singular_spectrum(m), r);
}

MixedNormAccumulator::MixedNormAccumulator(double p, double dm) : p_(p), dm_(dm) { require_order(p); }
MixedNormAccumulator::MixedNormAccumulator(double p) : MixedNormAccumulator(p, std::isinf(p) ? 0.0 : 1.0 / p) {}

void MixedNormAccumulator::add(double w, const Eigen::MatrixXcd& m, const Eigen::VectorXd& k) {
    if (m.size() == 0) return;
    if (std::isinf(p_)) {
        if (m.norm() > max_) max_ = std::max(max_, schatten_norm(m, infinity));  // op norm <= Frobenius
        return;
    }
    Eigen::MatrixXcd mk = m;
    if (dm_ != 0.0)
        for (Eigen::Index j = 0; j < mk.cols(); ++j) mk.col(j) *= std::pow(k[j], dm_);
    if (skip_ > 0.0) {
        const double bound = w * std::pow(mk.norm(), p_);
        if (bound < skip_) {
            terms_.push_back(bound);
            ++n_skipped_;
            return;
        }
    }
    const double s = schatten_norm(mk, p_);
    terms_.push_back(w * std::pow(s, p_));
}

double MixedNormAccumulator::value() const {
    if (std::isinf(p_)) return max_;
    return std::pow(pairwise_sum(terms_), 1.0 / p_);
}

double mixed_norm(const OperatorField& field, double p, double dm) {
    field.check_shape();
    MixedNormAccumulator acc(p, dm);
    for (std::size_t lab = 0; lab < field.labels.size(); ++lab) {
        const Eigen::VectorXd k = duflo_moore_weights(field.labels[lab], *field.rep_grids[lab]);
        for (std::size_t x = 0; x < field.group_grid->size(); ++x)
            acc.add(field.group_grid->weight(x), field.entries[lab][x], k);
    }
    return acc.value();
}

double mixed_norm(const OperatorField& field, double p) {
    return mixed_norm(field, p, std::isinf(p) ? 0.0 : 1.0 / p);
}

}  // namespace nuharm
