#include "nuharm/counterexample.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nuharm/schatten.hpp"
#include "nuharm/transform.hpp"

namespace nuharm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;
constexpr double panel_width = pi / 4.0;
constexpr double asymptotic_start = 2000.0;

struct GaussLegendre {
    std::array<double, 10> x{};
    std::array<double, 10> w{};
    GaussLegendre() {
        const int n = 10;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre& gauss() {
    static const GaussLegendre g;
    return g;
}

template <class F>
double gauss_panels(F&& f, double lo, double hi, double width) {
    if (!(hi > lo)) return 0.0;
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    const double h = (hi - lo) / n;
    const auto& gl = gauss();
    double total = 0.0;
    for (int p = 0; p < n; ++p) {
        const double mid = lo + (p + 0.5) * h;
        double s = 0.0;
        for (int i = 0; i < 10; ++i) s += gl.w[i] * f(mid + 0.5 * h * gl.x[i]);
        total += 0.5 * h * s;
    }
    return total;
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("oscillatory_C needs 0 <= alpha < 1");
}

// int_0^m t^{-a} cos t dt for m <= 1, termwise
double series_part(double alpha, double m) {
    if (m <= 0.0) return 0.0;
    double total = 0.0;
    double fact = 1.0;  // (2k)!
    double mpow = std::pow(m, 1.0 - alpha);
    for (int k = 0; k < 40; ++k) {
        const double term = mpow / (fact * (2.0 * k + 1.0 - alpha));
        total += (k % 2 ? -term : term);
        if (term < 1e-18) break;
        mpow *= m * m;
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return total;
}

// int_y^inf t^{-a} e^{it} dt ~ i e^{iy} y^{-a} sum_k (-i)^k (a)_k y^{-k}
std::complex<double> tail_integral(double alpha, double y) {
    std::complex<double> sum = 0.0;
    std::complex<double> term = 1.0;
    double last = 2.0;
    for (int k = 0; k < 60; ++k) {
        const double mag = std::abs(term);
        if (mag > last) break;  // asymptotic series starts to diverge
        sum += term;
        if (mag < 1e-17) break;
        last = mag;
        term *= std::complex<double>(0.0, -1.0) * (alpha + k) / y;
    }
    return std::complex<double>(0.0, 1.0) * std::polar(std::pow(y, -alpha), y) * sum;
}

double integrand(double alpha, double t) { return std::pow(t, -alpha) * std::cos(t); }

// int_u^v t^{-a} cos t dt for 1 <= u <= v
double segment(double alpha, double u, double v) {
    if (v <= u) return 0.0;
    double total = 0.0;
    const double qe = std::min(v, asymptotic_start);
    if (qe > u) total += gauss_panels([alpha](double t) { return integrand(alpha, t); }, u, qe, panel_width);
    const double ts = std::max(u, asymptotic_start);
    if (v > ts) total += (tail_integral(alpha, ts) - tail_integral(alpha, v)).real();
    return total;
}

// C at increasing abscissae, integrating consecutive segments once
std::vector<double> oscillatory_C_sorted(double alpha, const std::vector<double>& xs) {
    check_alpha(alpha);
    std::vector<double> out(xs.size());
    double prev_x = 0.0, prev_c = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double x = xs[k];
        if (x <= 1.0) {
            out[k] = series_part(alpha, x);
        } else {
            if (prev_x < 1.0) {
                prev_c = series_part(alpha, 1.0);
                prev_x = 1.0;
            }
            out[k] = prev_c + segment(alpha, prev_x, x);
        }
        prev_x = std::max(prev_x, x);
        prev_c = out[k];
    }
    return out;
}

double power_integral(double e, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    if (std::abs(e + 1.0) < 1e-12) return std::log(hi / lo);
    return (std::pow(hi, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0);
}

}  // namespace

void CounterexampleSpec::validate() const {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must lie in (0, 1/2)");
    if (!(p > 2.0)) throw std::invalid_argument("p must exceed 2");
    if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
    if (!(R > 0.0 && R < T)) throw std::invalid_argument("cutoffs need 0 < R < T");
}

CounterexampleSpec CounterexampleSpec::with_p_prime(GroupTag tag, double alpha, double pp, double L, double R) {
    CounterexampleSpec s;
    s.tag = tag;
    s.alpha = alpha;
    s.p = pp / (pp - 1.0);
    s.L = L;
    s.R = R;
    s.T = 10.0 * R;
    return s;
}

double oscillatory_C(double alpha, double x) {
    check_alpha(alpha);
    if (x < 0.0) throw std::invalid_argument("oscillatory_C needs x >= 0");
    return oscillatory_C_sorted(alpha, {x})[0];
}

double oscillatory_C_limit(double alpha) {
    check_alpha(alpha);
    return oscillatory_C(alpha, asymptotic_start) + tail_integral(alpha, asymptotic_start).real();
}

double lower_bound_B(double alpha, double x_min, double x_max, int n) {
    if (!(x_min > 0.0 && x_min < x_max) || n < 2) throw std::invalid_argument("lower_bound_B needs 0 < x_min < x_max, n >= 2");
    std::vector<double> xs;
    xs.reserve(n + 1024);
    const double r = std::log(x_max / x_min) / (n - 1);
    for (int k = 0; k < n; ++k) xs.push_back(x_min * std::exp(k * r));
    // local minima of C sit at 3pi/2 + 2pi k and increase with k
    const double explicit_to = std::min(x_max, 1e5);
    long k = static_cast<long>(std::ceil((x_min - 1.5 * pi) / two_pi));
    if (k < 0) k = 0;
    double m = 1.5 * pi + two_pi * k;
    for (; m <= explicit_to; m += two_pi) xs.push_back(m);
    xs.push_back(m);
    std::sort(xs.begin(), xs.end());
    const auto c = oscillatory_C_sorted(alpha, xs);
    return *std::min_element(c.begin(), c.end());
}

double admissible_inner_cutoff(double alpha, double L) {
    for (double R = 1.0; R <= 1e6; R *= 10.0)
        if (lower_bound_B(alpha, R * L, R * L * 1e4, 4096) > 0.0) return R;
    return 0.0;
}

std::complex<double> f_alpha_value(const CounterexampleSpec& spec, const GroupElement& g) {
    const double L = spec.L, al = spec.alpha;
    if (g.a > L) return 0.0;
    if (spec.tag == GroupTag::Affine) {
        if (std::abs(g.b.x) > L) return 0.0;
        if (g.b.x == 0.0) throw std::domain_error("f_alpha is singular at b = 0");
        return std::pow(std::abs(g.b.x), -al) * g.a * g.a;
    }
    if (std::abs(g.b.x) > L || std::abs(g.b.y) > L) return 0.0;
    if (g.b.x == 0.0 || g.b.y == 0.0) throw std::domain_error("f_alpha is singular on the axes b_i = 0");
    const double phi = std::pow(std::abs(g.b.x), -al) * std::pow(std::abs(g.b.y), -al);
    if (spec.tag == GroupTag::Sim2) return phi * g.a * g.a * g.a * g.angle;
    if (std::abs(g.angle) > L) return 0.0;
    return phi * std::pow(g.a, 5) * g.angle;
}

GridFunction build_f_alpha(const CounterexampleSpec& spec, std::shared_ptr<const Grid> grid) {
    if (grid->domain().kind != DomainKind::Group || grid->domain().group != spec.tag)
        throw IncompatibleGroups("f_alpha needs a grid of its own group");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(grid->size()));
    for (std::size_t k = 0; k < grid->size(); ++k) v[k] = f_alpha_value(spec, grid->element(k));
    return {std::move(grid), std::move(v)};
}

std::complex<double> closed_form_F1_affine(const CounterexampleSpec& spec, double s, double a) {
    if (s == 0.0) throw std::domain_error("closed form F1 is not defined at s = 0");
    if (!(a > 0.0) || a > spec.L) return 0.0;
    const double as = std::abs(s);
    return 2.0 / std::sqrt(two_pi) * oscillatory_C(spec.alpha, as * spec.L) * std::pow(as, spec.alpha - 1.0) * a * a;
}

double predicted_exponent(const CounterexampleSpec& spec) {
    const double q = 1.0 / spec.p_prime();
    const double al = spec.alpha;
    switch (spec.tag) {
        case GroupTag::Affine: return 2.0 * (al - 1.0) + 2.0 * q - 1.0;
        case GroupTag::Sim2: return 2.0 * (al - 1.0) + 4.0 * q - 2.0;
        case GroupTag::PoincareAff: return 4.0 * (al - 1.0) + 2.0 * q;
    }
    return 0.0;
}

double alpha_threshold(GroupTag tag, double pp) {
    switch (tag) {
        case GroupTag::Affine: return 1.0 - 1.0 / pp;
        case GroupTag::Sim2: return 1.5 - 2.0 / pp;
        case GroupTag::PoincareAff: return 0.75 - 0.5 / pp;
    }
    return 0.0;
}

double truncated_divergence_integral(const CounterexampleSpec& spec, double B) {
    if (!(spec.R > 0.0 && spec.R < spec.T)) throw std::invalid_argument("cutoffs need 0 < R < T");
    const double A = std::max(B, 0.0);
    if (A == 0.0) return 0.0;
    const double q = 1.0 / spec.p_prime();
    const double al = spec.alpha, L = spec.L, R = spec.R, T = spec.T;
    switch (spec.tag) {
        case GroupTag::Affine: {
            const double a_part = power_integral(1.0 + 2.0 * q, 0.0, L);
            return 2.0 * A * A / pi * a_part * power_integral(2.0 * (al - 1.0) + 2.0 * q - 1.0, R, T);
        }
        case GroupTag::Sim2: {
            const double c = std::pow(two_pi, -2.0) * std::pow(2.0 * A, 4) * std::pow(2.0, -(2.0 * q - 1.0));
            const double theta_part = std::pow(two_pi, 3) / 3.0;
            const double a_part = power_integral(1.0 + 4.0 * q, 0.0, L);
            const double xi2_part = std::pow(R, 2.0 * al - 1.0) / (1.0 - 2.0 * al);
            return c * theta_part * a_part * xi2_part * power_integral(2.0 * (al - 1.0) + 4.0 * q - 2.0, R, T);
        }
        case GroupTag::PoincareAff: {
            if (T <= R + 1.0) return 0.0;
            const double c = std::pow(two_pi, 1.0 - 2.0 * q) * std::pow(two_pi, -2.0) * 16.0 * std::pow(A, 4);
            const double a_part = power_integral(5.0 + 4.0 * q, 0.0, L);
            const double theta_part = 2.0 * L * L * L / 3.0;
            const double gam = 2.0 * (al - 1.0) + 2.0 * q;
            // region x2 in (R, x1 - 1): int x2^{gam-1} dx2
            auto inner = [&](double x1) {
                return std::abs(gam) < 1e-12 ? std::log((x1 - 1.0) / R)
                                              : (std::pow(x1 - 1.0, gam) - std::pow(R, gam)) / gam;
            };
            const double outer = gauss_panels(
                [&](double u) {
                    const double x1 = std::exp(u);
                    return x1 * std::pow(x1, 2.0 * (al - 1.0)) * inner(x1);
                },
                std::log(R + 1.0), std::log(T), 0.25);
            return c * a_part * theta_part * std::pow(2.0, 2.0 * q - 1.0) * outer;
        }
    }
    return 0.0;
}

double truncated_divergence_integral(const CounterexampleSpec& spec) {
    const double x0 = spec.R * spec.L;
    return truncated_divergence_integral(spec, lower_bound_B(spec.alpha, x0, x0 * 1e4, 4096));
}

double fit_loglog_slope(const std::vector<SweepRecord>& records) {
    if (records.size() < 4) throw std::invalid_argument("slope fit needs at least four records");
    std::vector<const SweepRecord*> rs;
    for (const auto& r : records) rs.push_back(&r);
    std::sort(rs.begin(), rs.end(), [](auto* a, auto* b) { return a->T < b->T; });
    const double t_hi = rs.back()->T;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (auto* r : rs) {
        if (r->T < t_hi / 10.0 * (1.0 - 1e-9)) continue;
        if (!(r->value > 0.0)) throw std::domain_error("slope fit needs positive values");
        const double x = std::log(r->T), y = std::log(r->value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("the last decade holds fewer than two records");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string to_string(Growth g) {
    switch (g) {
        case Growth::Divergent: return "divergent";
        case Growth::Logarithmic: return "logarithmic";
        case Growth::Convergent: return "convergent";
    }
    return "?";
}

SweepResult sweep_divergence(const CounterexampleSpec& base, const SweepOptions& opt) {
    SweepResult res;
    const double e = predicted_exponent(base);
    if (std::abs(e + 1.0) < 1e-12)
        res.predicted = Growth::Logarithmic;
    else
        res.predicted = e + 1.0 > 0.0 ? Growth::Divergent : Growth::Convergent;

    int decades = opt.min_decades;
    if (res.predicted == Growth::Divergent)
        decades = std::max(decades, static_cast<int>(std::ceil(2.0 / (e + 1.0))) + 1);
    else if (res.predicted == Growth::Logarithmic)
        decades = std::max(decades, 25);

    const double x0 = base.R * base.L;
    res.B = lower_bound_B(base.alpha, x0, x0 * 1e4, 4096);
    const int n = decades * opt.points_per_decade + 1;
    for (int k = 0; k < n; ++k) {
        CounterexampleSpec s = base;
        s.T = base.R * std::pow(10.0, opt.first_decade + static_cast<double>(k) / opt.points_per_decade);
        SweepRecord r{s, s.T, truncated_divergence_integral(s, res.B), e, 0.0};
        res.records.push_back(r);
    }

    std::ostringstream detail;
    if (!(res.B > 0.0)) {
        res.observed = Growth::Convergent;
        res.pass = false;
        detail << "no positive oscillatory lower bound on [R L, inf) (B=" << res.B << ")";
        res.detail = detail.str();
        return res;
    }
    res.slope = fit_loglog_slope(res.records);
    for (auto& r : res.records) r.fitted_slope = res.slope;

    // increments over the last decade
    const int m = opt.points_per_decade;
    std::vector<double> inc;
    for (int k = n - 1 - m; k < n - 1; ++k) inc.push_back(res.records[k + 1].value - res.records[k].value);
    bool positive = true, shrinking = true;
    double ratio = 0.0;
    for (std::size_t k = 0; k < inc.size(); ++k) {
        positive = positive && inc[k] > 0.0;
        if (k > 0) {
            const double q = inc[k] / inc[k - 1];
            shrinking = shrinking && q < 1.0 - 1e-6;
            ratio += q / (inc.size() - 1);
        }
    }
    res.increment_ratio = ratio;

    // residuals of power and log fits over the last decade
    double res_pow = 0.0, res_log = 0.0;
    {
        std::vector<double> lx, ly, v;
        for (int k = n - 1 - m; k < n; ++k) {
            lx.push_back(std::log(res.records[k].T));
            ly.push_back(std::log(res.records[k].value));
            v.push_back(res.records[k].value);
        }
        auto line_fit = [](const std::vector<double>& x, const std::vector<double>& y) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double nn = static_cast<double>(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                sx += x[i];
                sy += y[i];
                sxx += x[i] * x[i];
                sxy += x[i] * y[i];
            }
            const double b = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
            return std::pair{(sy - b * sx) / nn, b};
        };
        const auto [p0, p1] = line_fit(lx, ly);
        const auto [l0, l1] = line_fit(lx, v);
        for (std::size_t i = 0; i < lx.size(); ++i) {
            res_pow += std::pow(std::exp(p0 + p1 * lx[i]) / v[i] - 1.0, 2);
            res_log += std::pow((l0 + l1 * lx[i]) / v[i] - 1.0, 2);
        }
    }

    if (positive && shrinking)
        res.observed = Growth::Convergent;
    else if (res.slope < 0.02 && res_log < res_pow)
        res.observed = Growth::Logarithmic;
    else
        res.observed = Growth::Divergent;

    res.pass = res.observed == res.predicted;
    if (res.predicted == Growth::Divergent)
        res.pass = res.pass && std::abs(res.slope - (e + 1.0)) <= opt.slope_tolerance * (e + 1.0);
    detail << "slope=" << res.slope << " predicted=" << e + 1.0 << " increment_ratio=" << ratio;
    res.detail = detail.str();
    return res;
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
    const auto old = os.precision(10);
    os << "group,alpha,p_prime,L,R,T,value,predicted_exponent\n";
    for (const auto& rec : r.records)
        os << to_string(rec.spec.tag) << ',' << rec.spec.alpha << ',' << rec.spec.p_prime() << ',' << rec.spec.L << ','
           << rec.spec.R << ',' << rec.T << ',' << rec.value << ',' << rec.predicted_exponent << '\n';
    const double e = r.records.empty() ? 0.0 : r.records.front().predicted_exponent;
    os << "# fitted_slope=" << r.slope << " predicted_slope=" << e + 1.0 << " B=" << r.B
       << " verdict=" << to_string(r.observed) << " expected=" << to_string(r.predicted)
       << " pass=" << (r.pass ? "true" : "false") << '\n';
    os.precision(old);
}

S2Report small_grid_s2_check(const GridFunction& f, const std::function<std::complex<double>(double, double)>& f1,
                             double pp, std::shared_ptr<const Grid> rep_plus, std::shared_ptr<const Grid> rep_minus,
                             double a_break) {
    const double e = 1.0 / pp;
    S2Report rep;
    for (const auto& lab : {RepLabel::rho_plus(), RepLabel::rho_minus()}) {
        auto g = lab.kind == RepKind::RhoPlus ? rep_plus : rep_minus;
        const KernelMatrix k = group_fourier(lab, f, e, g);
        rep.lhs += std::pow(schatten_norm(weighted_matrix(k), 2.0), 2);
    }
    const Axis& a_axis = f.grid->axes()[1];
    const double a_lo = std::exp(a_axis.lower_edge()), a_hi = std::exp(a_axis.upper_edge());
    double rhs = 0.0;
    for (const auto* g : {rep_plus.get(), rep_minus.get()}) {
        const Axis& sx = g->axes()[0];
        const double lo = sx.lower_edge(), hi = sx.upper_edge();
        const double sign = g->domain().kind == DomainKind::HalfLinePlus ? 1.0 : -1.0;
        rhs += gauss_panels(
            [&](double ls) {
                const double s = std::exp(ls);
                // t = a s stays inside the representation window
                const double la_lo = std::max(std::log(a_lo), lo - ls), la_hi = std::min(std::log(a_hi), hi - ls);
                auto inner = [&](double la) {
                    const double a = std::exp(la);
                    return std::norm(f1(sign * s, a)) * std::pow(a, 2.0 * e - 2.0);
                };
                double v = 0.0;
                const double lb = a_break > 0.0 ? std::log(a_break) : la_lo;
                if (la_lo < lb && lb < la_hi)
                    v = gauss_panels(inner, la_lo, lb, 0.1) + gauss_panels(inner, lb, la_hi, 0.1);
                else
                    v = gauss_panels(inner, la_lo, la_hi, 0.1);
                return v * std::pow(s, 2.0 * e);
            },
            lo, hi, 0.1);
    }
    rep.rhs = rhs;
    rep.relative_error = rep.lhs == 0.0 && rep.rhs == 0.0 ? 0.0 : std::abs(rep.lhs - rep.rhs) / std::max(rep.lhs, rep.rhs);
    return rep;
}

}  // namespace nuharm
