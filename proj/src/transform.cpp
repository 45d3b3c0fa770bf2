#include "nuharm/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "nuharm/schatten.hpp"

namespace nuharm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double angle_tol = 1e-9;

using RowMatrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct GroupLayout {
    int nb = 0;             // translation axes
    std::size_t n_b = 1;    // translation block size
    std::size_t n_rest = 1; // (a[, angle]) block size
};

GroupLayout layout(const Grid& grid) {
    if (grid.domain().kind != DomainKind::Group) throw std::invalid_argument("expected a function on a group grid");
    GroupLayout l;
    l.nb = grid.translation_axes();
    for (int d = 0; d < static_cast<int>(grid.axes().size()); ++d)
        (d < l.nb ? l.n_b : l.n_rest) *= static_cast<std::size_t>(grid.axes()[d].n);
    return l;
}

void require_group(const RepLabel& label, const Grid& group_grid) {
    if (group_grid.domain().kind != DomainKind::Group || group_grid.domain().group != label.group())
        throw IncompatibleGroups("representation " + label.name() + " does not belong to the group of the grid");
}

// phase of rho(b,1,0) at rep node x
double translation_phase(GroupTag tag, std::span<const double> b, std::span<const double> x) {
    switch (tag) {
        case GroupTag::Affine: return -b[0] * x[0];
        case GroupTag::Sim2: return -(b[0] * x[0] + b[1] * x[1]);
        case GroupTag::PoincareAff: return x[0] * b[0] - x[1] * b[1];
    }
    return 0.0;
}

// On a uniform translation axis a trapezoid sum over b is the transform of the band-limited
// interpolant of the samples, which vanishes beyond the Nyquist frequency instead of repeating.
struct Band {
    int nb = 0;
    double limit[2] = {INFINITY, INFINITY};
    bool contains(std::span<const double> xi) const {
        for (int d = 0; d < nb; ++d)
            if (std::abs(xi[d]) > limit[d]) return false;
        return true;
    }
};

Band translation_band(const Grid& grid) {
    Band band;
    band.nb = grid.translation_axes();
    for (int d = 0; d < band.nb; ++d) {
        const Axis& ax = grid.axes()[d];
        const bool uniform = ax.map == AxisMap::Linear || (ax.map == AxisMap::Power && ax.power == 1.0);
        if (uniform) band.limit[d] = pi / std::abs(ax.dv * ax.jacobian(ax.v(0)));
    }
    return band;
}

// E(ib, x) = exp(i phase(b_ib, x)), zero outside the band
Eigen::MatrixXcd translation_phases(const Grid& group_grid, const Grid& rep_grid) {
    const GroupLayout l = layout(group_grid);
    const GroupTag tag = group_grid.domain().group;
    const Band band = translation_band(group_grid);
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(l.n_b), static_cast<Eigen::Index>(rep_grid.size()));
    for (std::size_t x = 0; x < rep_grid.size(); ++x) {
        const auto xs = rep_grid.node(x);
        if (!band.contains(xs.first(static_cast<std::size_t>(l.nb)))) continue;
        for (std::size_t ib = 0; ib < l.n_b; ++ib)
            e(ib, x) = std::polar(1.0, translation_phase(tag, group_grid.node(ib * l.n_rest).first(l.nb), xs));
    }
    return e;
}

GroupElement rest_element(const Grid& group_grid, std::size_t ir) {
    GroupElement g = group_grid.element(ir);  // ib = 0
    g.b = {0.0, 0.0};
    return g;
}

}  // namespace

double fourier_constant(GroupTag tag) {
    return tag == GroupTag::Sim2 ? 1.0 / (2.0 * pi) : 1.0 / std::sqrt(2.0 * pi);
}

double translation_fourier_constant(GroupTag tag) {
    return tag == GroupTag::Affine ? 1.0 / std::sqrt(2.0 * pi) : 1.0 / (2.0 * pi);
}

void write_kernel_csv(std::ostream& os, const KernelMatrix& k) {
    const auto old = os.precision(17);
    os << "row_index,col_index,re,im\n";
    for (Eigen::Index i = 0; i < k.entries.rows(); ++i)
        for (Eigen::Index j = 0; j < k.entries.cols(); ++j)
            os << i << ',' << j << ',' << k.entries(i, j).real() << ',' << k.entries(i, j).imag() << '\n';
    os.precision(old);
}

std::vector<Vec2> frequencies(const Grid& rep_grid) {
    std::vector<Vec2> out(rep_grid.size());
    for (std::size_t k = 0; k < rep_grid.size(); ++k) {
        const auto x = rep_grid.node(k);
        out[k] = rep_grid.dim() == 1 ? Vec2{x[0], 0.0} : Vec2{x[0], x[1]};
    }
    return out;
}

Eigen::MatrixXcd partial_fourier_translation(const GridFunction& f, const std::vector<Vec2>& freqs) {
    const Grid& grid = *f.grid;
    const GroupLayout l = layout(grid);
    if (l.nb == 0) throw std::invalid_argument("group grid has no translation axis");
    const GroupTag tag = grid.domain().group;
    const double c = translation_fourier_constant(tag);
    const Band band = translation_band(grid);
    std::vector<int> idx(grid.axes().size(), 0);
    Eigen::MatrixXcd e(static_cast<Eigen::Index>(freqs.size()), static_cast<Eigen::Index>(l.n_b));
    for (std::size_t ib = 0; ib < l.n_b; ++ib) {
        grid.unflatten(ib * l.n_rest, idx);
        double wb = c;
        for (int d = 0; d < l.nb; ++d) wb *= grid.axes()[d].weight(idx[d]);
        const auto b = grid.node(ib * l.n_rest).first(l.nb);
        for (std::size_t q = 0; q < freqs.size(); ++q) {
            const double xi[2] = {freqs[q].x, freqs[q].y};
            if (!band.contains(std::span<const double>(xi, l.nb))) {
                e(q, ib) = 0.0;
                continue;
            }
            e(q, ib) = wb * std::polar(1.0, translation_phase(tag, b, std::span<const double>(xi, l.nb)));
        }
    }
    const Eigen::Map<const RowMatrix> fm(f.values.data(), static_cast<Eigen::Index>(l.n_b),
                                         static_cast<Eigen::Index>(l.n_rest));
    return e * fm;
}

KernelMatrix group_fourier(const RepLabel& label, const GridFunction& f, double e,
                           std::shared_ptr<const Grid> rep_grid) {
    const Grid& grid = *f.grid;
    require_group(label, grid);
    check_compatible(label, *rep_grid);
    const GroupLayout l = layout(grid);
    const GroupTag tag = label.group();

    const Eigen::MatrixXcd g = partial_fourier_translation(f, frequencies(*rep_grid));

    const std::span<const Axis> rest_axes(grid.axes().data() + l.nb, grid.axes().size() - l.nb);
    const auto n = static_cast<Eigen::Index>(rep_grid->size());
    KernelMatrix k{rep_grid, rep_grid, Eigen::MatrixXcd::Zero(n, n)};
    const double paff_const = std::pow(2.0 * pi, 0.5 - e);

    for (Eigen::Index ix = 0; ix < n; ++ix) {
        const auto xs = rep_grid->node(ix);
        for (Eigen::Index iy = 0; iy < n; ++iy) {
            const auto ys = rep_grid->node(iy);
            double v[2] = {0.0, 0.0};
            double factor = 0.0;
            if (tag == GroupTag::Affine) {
                const double a = ys[0] / xs[0];
                if (!(a > 0.0)) continue;
                v[0] = std::log(a);
                factor = std::pow(a, e - 1.5) * std::pow(std::abs(xs[0]), e - 1.0);
            } else if (tag == GroupTag::Sim2) {
                const Vec2 x{xs[0], xs[1]}, y{ys[0], ys[1]};
                const double nx = std::sqrt(dot(x, x)), ny = std::sqrt(dot(y, y));
                double c = dot(x, y) / (nx * ny);
                if (std::abs(c) > 1.0 + angle_tol) continue;
                c = std::clamp(c, -1.0, 1.0);
                double theta = std::acos(c);
                if (cross(x, y) > 0.0) theta = 2.0 * pi - theta;
                v[0] = std::log(ny / nx);
                v[1] = reduce_angle(theta);
                factor = std::pow(ny, 2.0 * e - 3.0) * nx;
            } else {
                const Vec2 x{xs[0], xs[1]}, y{ys[0], ys[1]};
                const double qx = std::abs(minkowski(x, x)), qy = std::abs(minkowski(y, y));
                double ch = std::abs(minkowski(x, y)) / std::sqrt(qx * qy);
                if (ch < 1.0 - angle_tol) continue;
                ch = std::max(ch, 1.0);
                const double a = std::sqrt(qy / qx);
                const double dpsi = rapidity(x) - rapidity(y);
                v[0] = std::log(a);
                v[1] = std::copysign(std::acosh(ch), dpsi);
                factor = paff_const * std::pow(a, 2.0 * e - 3.0) * std::pow(qx, e - 1.0);
            }
            const Stencil st = axis_stencil(rest_axes, std::span<const double>(v, rest_axes.size()));
            if (st.count == 0) continue;
            cdouble acc = 0.0;
            for (int s = 0; s < st.count; ++s) acc += st.weight[s] * g(ix, static_cast<Eigen::Index>(st.index[s]));
            k.entries(ix, iy) = factor * acc;
        }
    }
    return k;
}

KernelMatrix direct_fourier_operator(const RepLabel& label, const GridFunction& f, double e,
                                     std::shared_ptr<const Grid> rep_grid) {
    const Grid& grid = *f.grid;
    require_group(label, grid);
    check_compatible(label, *rep_grid);
    const double c = fourier_constant(label.group());
    const auto n = static_cast<Eigen::Index>(rep_grid->size());
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (f.values[k] == cdouble(0.0)) continue;
        const cdouble coef = c * grid.weight(k) * f.values[k];
        const SparseOp r = representation_matrix(label, grid.element(k), *rep_grid);
        for (Eigen::Index row = 0; row < r.outerSize(); ++row)
            for (SparseOp::InnerIterator it(r, row); it; ++it) acc(row, it.col()) += coef * it.value();
    }
    const Eigen::VectorXd dm = duflo_moore_weights(label, *rep_grid);
    for (Eigen::Index y = 0; y < n; ++y) acc.col(y) *= std::pow(dm[y], e) / rep_grid->weight(y);
    return {rep_grid, rep_grid, std::move(acc)};
}

SparseOp weighted_representation(const RepLabel& label, const GroupElement& g, const Grid& rep_grid) {
    SparseOp r = representation_matrix(label, g, rep_grid);
    for (Eigen::Index row = 0; row < r.outerSize(); ++row)
        for (SparseOp::InnerIterator it(r, row); it; ++it)
            it.valueRef() *= std::sqrt(rep_grid.weight(row) / rep_grid.weight(it.col()));
    return r;
}

OperatorField OperatorField::zeros(std::shared_ptr<const Grid> group_grid, std::vector<RepLabel> labels,
                                   std::vector<std::shared_ptr<const Grid>> rep_grids) {
    OperatorField f{std::move(group_grid), std::move(labels), std::move(rep_grids), {}};
    f.entries.assign(f.labels.size(), std::vector<Eigen::MatrixXcd>(f.group_grid->size()));
    f.check_shape();
    return f;
}

void OperatorField::check_shape() const {
    if (!group_grid) throw std::invalid_argument("operator field without a group grid");
    if (labels.size() != rep_grids.size() || entries.size() != labels.size())
        throw std::invalid_argument("operator field label/grid/entry counts differ");
    for (std::size_t l = 0; l < labels.size(); ++l) {
        require_group(labels[l], *group_grid);
        check_compatible(labels[l], *rep_grids[l]);
        if (entries[l].size() != group_grid->size()) throw std::invalid_argument("operator field entry count mismatch");
        const auto n = static_cast<Eigen::Index>(rep_grids[l]->size());
        for (const auto& m : entries[l])
            if (m.size() != 0 && (m.rows() != n || m.cols() != n))
                throw std::invalid_argument("operator field entry has the wrong dimensions");
    }
}

namespace {

// gval(y) returns g(y) for y = x'^{-1} x
template <class GValue>
void visit_wigner_impl(const GridFunction& f, const GValue& gval, const RepSpaces& reps, const WignerVisitor& visit) {
    const Grid& grid = *f.grid;
    const GroupLayout l = layout(grid);
    const double c = fourier_constant(grid.domain().group);
    for (const auto& lab : reps.labels) require_group(lab, grid);

    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (f.values[k] != cdouble(0.0)) support.push_back(k);
    std::vector<GroupElement> inv(support.size());
    std::vector<cdouble> coef0(support.size());
    for (std::size_t s = 0; s < support.size(); ++s) {
        inv[s] = inverse(grid.element(support[s]));
        coef0[s] = c * grid.weight(support[s]) * f.values[support[s]];
    }

    // rho(b,a,angle) = diag(phase_b) rho(0,a,angle)
    std::vector<RowMatrix> phases;
    std::vector<std::vector<SparseOp>> rest_ops(reps.labels.size());
    for (std::size_t lab = 0; lab < reps.labels.size(); ++lab) {
        check_compatible(reps.labels[lab], *reps.grids[lab]);
        phases.push_back(translation_phases(grid, *reps.grids[lab]));
        for (std::size_t ir = 0; ir < l.n_rest; ++ir)
            rest_ops[lab].push_back(weighted_representation(reps.labels[lab], rest_element(grid, ir), *reps.grids[lab]));
    }

    struct Entry {
        Eigen::Index ir, ib;
        cdouble v;
    };
    std::vector<Entry> entries;
    RowMatrix coef(static_cast<Eigen::Index>(l.n_rest), static_cast<Eigen::Index>(l.n_b));
    const std::size_t dense_above = l.n_rest * l.n_b / 5;
    for (std::size_t x = 0; x < grid.size(); ++x) {
        const GroupElement xe = grid.element(x);
        entries.clear();
        for (std::size_t s = 0; s < support.size(); ++s) {
            const cdouble gv = gval(multiply(inv[s], xe));
            if (gv == cdouble(0.0)) continue;
            entries.push_back({static_cast<Eigen::Index>(support[s] % l.n_rest),
                               static_cast<Eigen::Index>(support[s] / l.n_rest), coef0[s] * gv});
        }
        if (entries.empty()) continue;
        const bool dense = entries.size() > dense_above;
        if (dense) {
            coef.setZero();
            for (const auto& en : entries) coef(en.ir, en.ib) = en.v;
        }
        for (std::size_t lab = 0; lab < reps.labels.size(); ++lab) {
            Eigen::MatrixXcd diag;  // n_rest x n_rep
            if (dense) {
                diag.noalias() = coef * phases[lab];
            } else {
                diag = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(l.n_rest), phases[lab].cols());
                for (const auto& en : entries) diag.row(en.ir) += en.v * phases[lab].row(en.ib);
            }
            const auto n = static_cast<Eigen::Index>(reps.grids[lab]->size());
            Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
            for (std::size_t ir = 0; ir < l.n_rest; ++ir) {
                const SparseOp& r = rest_ops[lab][ir];
                const auto row_scale = diag.row(static_cast<Eigen::Index>(ir));
                for (Eigen::Index row = 0; row < r.outerSize(); ++row) {
                    const cdouble d = row_scale(row);
                    if (d == cdouble(0.0)) continue;
                    for (SparseOp::InnerIterator it(r, row); it; ++it) w(row, it.col()) += d * it.value();
                }
            }
            visit(x, lab, w);
        }
    }
}

}  // namespace

void visit_wigner(const GridFunction& f, const GridFunction& g, const RepSpaces& reps, const WignerVisitor& visit) {
    if (f.grid != g.grid && !(f.grid->size() == g.grid->size() && f.grid->domain() == g.grid->domain()))
        throw std::invalid_argument("Wigner transform needs f and g on the same group grid");
    const Grid& grid = *g.grid;
    std::vector<double> pt;
    visit_wigner_impl(
        f,
        [&](const GroupElement& y) {
            pt = grid.coordinates(y);
            const Stencil st = grid.stencil(pt);
            cdouble gv = 0.0;
            for (int q = 0; q < st.count; ++q) gv += st.weight[q] * g.values[static_cast<Eigen::Index>(st.index[q])];
            return gv;
        },
        reps, visit);
}

void visit_wigner(const GridFunction& f, const GroupFunction& g, const RepSpaces& reps, const WignerVisitor& visit) {
    if (f.grid->domain().kind != DomainKind::Group) throw std::invalid_argument("expected a function on a group grid");
    visit_wigner_impl(f, g, reps, visit);
}

namespace {

template <class G>
WignerField wigner_field(const GridFunction& f, const G& g, const RepSpaces& reps) {
    WignerField w = OperatorField::zeros(f.grid, reps.labels, reps.grids);
    visit_wigner(f, g, reps, [&](std::size_t node, std::size_t lab, const Eigen::MatrixXcd& m) { w.entries[lab][node] = m; });
    return w;
}

template <class G>
std::vector<Eigen::MatrixXcd> wigner_sum(const GridFunction& f, const G& g, const RepSpaces& reps) {
    std::vector<Eigen::MatrixXcd> out;
    for (const auto& rg : reps.grids)
        out.push_back(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rg->size()), static_cast<Eigen::Index>(rg->size())));
    visit_wigner(f, g, reps, [&](std::size_t x, std::size_t lab, const Eigen::MatrixXcd& w) {
        out[lab] += f.grid->weight(x) * w;
    });
    return out;
}

}  // namespace

WignerField wigner_transform(const GridFunction& f, const GridFunction& g, const RepSpaces& reps) {
    return wigner_field(f, g, reps);
}

WignerField wigner_transform(const GridFunction& f, const GroupFunction& g, const RepSpaces& reps) {
    return wigner_field(f, g, reps);
}

namespace {

cdouble trace_pairing(const Eigen::MatrixXcd& sigma, const Eigen::MatrixXcd& w, const Eigen::VectorXd& k) {
    cdouble t = 0.0;
    for (Eigen::Index j = 0; j < w.cols(); ++j) t += sigma.col(j).dot(w.col(j)) * k[j];  // dot conjugates sigma
    return t;
}

}  // namespace

cdouble weyl_quadratic_form(const SymbolField& sigma, const GridFunction& f, const GridFunction& g) {
    sigma.check_shape();
    std::vector<Eigen::VectorXd> k;
    for (std::size_t lab = 0; lab < sigma.labels.size(); ++lab)
        k.push_back(duflo_moore_weights(sigma.labels[lab], *sigma.rep_grids[lab]));
    std::vector<cdouble> terms(sigma.group_grid->size(), 0.0);
    visit_wigner(f, g, {sigma.labels, sigma.rep_grids}, [&](std::size_t x, std::size_t lab, const Eigen::MatrixXcd& w) {
        const auto& s = sigma.entries[lab][x];
        if (s.size() == 0) return;
        terms[x] += sigma.group_grid->weight(x) * trace_pairing(s, w, k[lab]);
    });
    return pairwise_sum(std::span<const cdouble>(terms));
}

cdouble weyl_quadratic_form(const SymbolField& sigma, const WignerField& w) {
    sigma.check_shape();
    w.check_shape();
    if (sigma.labels != w.labels || sigma.group_grid->size() != w.group_grid->size())
        throw std::invalid_argument("symbol and Wigner field have different shapes");
    std::vector<cdouble> terms(sigma.group_grid->size(), 0.0);
    for (std::size_t lab = 0; lab < sigma.labels.size(); ++lab) {
        const Eigen::VectorXd k = duflo_moore_weights(sigma.labels[lab], *sigma.rep_grids[lab]);
        for (std::size_t x = 0; x < terms.size(); ++x) {
            const auto& s = sigma.entries[lab][x];
            const auto& m = w.entries[lab][x];
            if (s.size() == 0 || m.size() == 0) continue;
            terms[x] += sigma.group_grid->weight(x) * trace_pairing(s, m, k);
        }
    }
    return pairwise_sum(std::span<const cdouble>(terms));
}

std::vector<Eigen::MatrixXcd> wigner_integral(const GridFunction& f, const GridFunction& g, const RepSpaces& reps) {
    return wigner_sum(f, g, reps);
}

std::vector<Eigen::MatrixXcd> wigner_integral(const GridFunction& f, const GroupFunction& g, const RepSpaces& reps) {
    return wigner_sum(f, g, reps);
}

GridFunction inversion_reconstruct_weighted(GroupTag tag, std::shared_ptr<const Grid> group_grid, const RepSpaces& reps,
                                            const std::vector<Eigen::MatrixXcd>& ops) {
    const Grid& grid = *group_grid;
    const GroupLayout l = layout(grid);
    if (grid.domain().group != tag) throw IncompatibleGroups("group grid does not match the requested group");
    auto expected = dual_labels(tag);
    for (const auto& lab : expected) {
        bool found = false;
        for (const auto& have : reps.labels) found = found || have == lab;
        if (!found) throw std::invalid_argument("inversion needs Fourier data for " + lab.name());
    }
    if (ops.size() != reps.labels.size()) throw std::invalid_argument("one operator per label expected");
    const double c = fourier_constant(tag);
    RowMatrix out = RowMatrix::Zero(static_cast<Eigen::Index>(l.n_b), static_cast<Eigen::Index>(l.n_rest));
    for (std::size_t lab = 0; lab < reps.labels.size(); ++lab) {
        const Grid& rg = *reps.grids[lab];
        const auto n = static_cast<Eigen::Index>(rg.size());
        if (ops[lab].size() == 0) continue;  // zero operator
        if (ops[lab].rows() != n || ops[lab].cols() != n)
            throw std::invalid_argument("operator shape does not match the representation grid");
        // Q(ir, x) = sum_col conj(P_ir(x, col)) A(x, col)
        Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(l.n_rest), n);
        for (std::size_t ir = 0; ir < l.n_rest; ++ir) {
            const SparseOp p = weighted_representation(reps.labels[lab], rest_element(grid, ir), rg);
            for (Eigen::Index row = 0; row < p.outerSize(); ++row)
                for (SparseOp::InnerIterator it(p, row); it; ++it)
                    q(static_cast<Eigen::Index>(ir), row) += std::conj(it.value()) * ops[lab](row, it.col());
        }
        const Eigen::MatrixXcd e = translation_phases(grid, rg).conjugate();
        out.noalias() += c * (e * q.transpose());
    }
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(out.data(), out.size());
    return {group_grid, std::move(v)};
}

GridFunction inversion_reconstruct(GroupTag tag, std::shared_ptr<const Grid> group_grid,
                                   const std::vector<std::pair<RepLabel, KernelMatrix>>& data) {
    RepSpaces reps;
    std::vector<Eigen::MatrixXcd> ops;
    for (const auto& [lab, k] : data) {
        if (!k.row_grid || k.row_grid != k.col_grid) throw std::invalid_argument("Fourier data must be square kernels");
        reps.labels.push_back(lab);
        reps.grids.push_back(k.row_grid);
        ops.push_back(weighted_matrix(k));
    }
    return inversion_reconstruct_weighted(tag, std::move(group_grid), reps, ops);
}

}  // namespace nuharm
