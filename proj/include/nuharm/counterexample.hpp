#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "nuharm/grid.hpp"
#include "nuharm/representation.hpp"

namespace nuharm {

struct CounterexampleSpec {
    GroupTag tag = GroupTag::Affine;
    double alpha = 0.45;
    double p = 3.0;  // Lebesgue exponent, p' = p/(p-1)
    double L = 1.0;  // support half-width
    double R = 1.0;  // inner cutoff
    double T = 10.0; // outer cutoff

    double p_prime() const { return p / (p - 1.0); }
    void validate() const;
    static CounterexampleSpec with_p_prime(GroupTag tag, double alpha, double p_prime, double L = 1.0, double R = 1.0);
};

// C_a(x) = int_0^x t^{-a} cos t dt, absolute accuracy ~1e-12
double oscillatory_C(double alpha, double x);
// lim C_a(x) from the asymptotic expansion of the tail (not the Gamma identity)
double oscillatory_C_limit(double alpha);

// inf of C_a over [x_min, inf), sampled on an n-point log grid of
// [x_min, x_max] plus every local minimum 3pi/2 + 2pi k up to the first one
// past x_max.  A nonpositive value means no positive bound exists.
double lower_bound_B(double alpha, double x_min, double x_max, int n);
// smallest R in {1, 10, 100, ...} with C_a > 0 on [R L, inf); 0 if none below 1e6
double admissible_inner_cutoff(double alpha, double L);

// f_a on a group grid; the grid must not contain nodes with b_i = 0
GridFunction build_f_alpha(const CounterexampleSpec& spec, std::shared_ptr<const Grid> grid);
std::complex<double> f_alpha_value(const CounterexampleSpec& spec, const GroupElement& g);

// (2pi)^{-1/2} 2 C_a(|s| L) |s|^{a-1} a^2 on 0 < a <= L
std::complex<double> closed_form_F1_affine(const CounterexampleSpec& spec, double s, double a);

// tail power e of the dominant one-dimensional integral
double predicted_exponent(const CounterexampleSpec& spec);
// alpha at which e = -1
double alpha_threshold(GroupTag tag, double p_prime);

// lower-bound integral with the outer limit replaced by spec.T; B is the
// oscillatory lower bound on [R L, inf), clamped at 0
double truncated_divergence_integral(const CounterexampleSpec& spec);
double truncated_divergence_integral(const CounterexampleSpec& spec, double B);

struct SweepRecord {
    CounterexampleSpec spec;
    double T = 0.0;
    double value = 0.0;
    double predicted_exponent = 0.0;
    double fitted_slope = 0.0;
};

// slope of log(value) vs log(T) over the last decade of T
double fit_loglog_slope(const std::vector<SweepRecord>& records);

enum class Growth { Divergent, Logarithmic, Convergent };
std::string to_string(Growth g);

struct SweepResult {
    std::vector<SweepRecord> records;
    double B = 0.0;
    double slope = 0.0;
    double increment_ratio = 0.0;  // consecutive increments, last decade
    Growth predicted = Growth::Divergent;
    Growth observed = Growth::Divergent;
    bool pass = false;
    std::string detail;
};

struct SweepOptions {
    double first_decade = 1.0;  // T starts at R 10^first_decade
    int min_decades = 5;        // length of the sweep in decades
    int points_per_decade = 4;
    double slope_tolerance = 0.05;  // relative
};

// geometric sweep of T.  In the divergent regime the sweep is extended until
// the R^{e+1} offset is below 1% of the value so that the last-decade slope
// measures e+1.
SweepResult sweep_divergence(const CounterexampleSpec& spec, const SweepOptions& opt = {});

void write_sweep_csv(std::ostream& os, const SweepResult& result);

struct S2Report {
    double lhs = 0.0;
    double rhs = 0.0;
    double relative_error = 0.0;
};

// sum_+- ||f^(rho) K^{1/p'}||_S2^2 through the kernel pipeline against a
// direct quadrature of int int |F1 f(s,a)|^2 a^{2/p'-3} |s|^{2/p'-1} over the
// same windows.  a_break marks a jump of F1 in a (the support edge a = L).
S2Report small_grid_s2_check(const GridFunction& f, const std::function<std::complex<double>(double, double)>& f1,
                             double p_prime, std::shared_ptr<const Grid> rep_plus, std::shared_ptr<const Grid> rep_minus,
                             double a_break = 0.0);

}  // namespace nuharm
