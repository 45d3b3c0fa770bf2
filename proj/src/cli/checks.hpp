#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nuharm/counterexample.hpp"
#include "nuharm/grid.hpp"
#include "nuharm/setup.hpp"

namespace nuharm::cli {

// a row passes when value <= tolerance
struct CheckRow {
    std::string check;
    std::string group;
    std::string metric;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Tolerances {
    std::optional<double> all;              // replaces every default
    std::map<std::string, double> by_check; // per check name
    double get(const std::string& check, double fallback) const;
};

CheckRow make_row(const std::string& check, GroupTag tag, const std::string& metric, double value,
                  const Tolerances& tol, double default_tol);

bool all_pass(const std::vector<CheckRow>& rows);

enum class TestFunction { Bump, Zero };

// |x - y| / max(|x|, |y|), 0 when both vanish
double relative_difference(double x, double y);

// --- group-core -----------------------------------------------------------

std::vector<CheckRow> group_algebra_checks(GroupTag tag, std::uint64_t seed, int triples, const Tolerances& tol);

// default 64 per translation axis, 32 dilations, 32 angles
GroupGridSpec haar_grid(GroupTag tag);
// left invariance under random left translations and the right-translation
// ratio against 1 / modular_function
std::vector<CheckRow> haar_checks(GroupTag tag, const GroupGridSpec& grid, std::uint64_t seed, int translations,
                                  const Tolerances& tol);

// --- representations ------------------------------------------------------

// n: nodes per representation axis (half-line count; plane and cone use n/2 per axis)
std::vector<std::shared_ptr<const Grid>> representation_grids(GroupTag tag, int n);
GridFunction representation_test_vector(const RepLabel& label, std::shared_ptr<const Grid> grid);

struct RepResiduals {
    double unitarity_exact = 0.0;
    double homomorphism_exact = 0.0;
    double unitarity_generic = 0.0;
    double homomorphism_generic = 0.0;
};
RepResiduals representation_residuals(GroupTag tag, int n, std::uint64_t seed, int samples = 10);
// residuals at n and 2n; the refinement rows require the generic residuals to halve
std::vector<CheckRow> representation_checks(GroupTag tag, int n, std::uint64_t seed, const Tolerances& tol);

// --- transforms -----------------------------------------------------------

GridFunction test_function(const HarmonicSetup& s, TestFunction tf);
std::vector<CheckRow> plancherel_check(const HarmonicSetup& s, TestFunction tf, const Tolerances& tol);
std::vector<CheckRow> inversion_check(const HarmonicSetup& s, TestFunction tf, const Tolerances& tol);

struct WignerStats {
    double fourier_via_wigner = 0.0;  // worst HS relative error
    double bound_excess_2 = -1.0;     // worst ||W||_p / (||f|| ||g||) - 1
    double bound_excess_4 = -1.0;
    double bound_excess_inf = -1.0;
    int pairs = 0;
};
WignerStats wigner_stats(const HarmonicSetup& s, int pairs, std::uint64_t seed, TestFunction tf);
std::vector<CheckRow> wigner_checks(const HarmonicSetup& s, int pairs, std::uint64_t seed, TestFunction tf,
                                    const Tolerances& tol);

// worst |<W_sigma f, conj g>| / (||sigma||_{p,mu} ||f|| ||g||) - 1 over random triples;
// sigma mixes the Hoelder dual of W(f,g) with a localized random field
double weyl_bound_excess(const HarmonicSetup& s, double p, int triples, std::uint64_t seed, TestFunction tf);
std::vector<CheckRow> weyl_checks(const HarmonicSetup& s, const std::vector<double>& ps, int triples,
                                  std::uint64_t seed, TestFunction tf, const Tolerances& tol);

// small grids: the Weyl check runs many SVDs per node and triple
SetupParams weyl_params(GroupTag tag);

// closed-form kernel against direct quadrature on a grid with <= 8 nodes per axis
SetupParams tiny_params(GroupTag tag);
std::vector<CheckRow> kernel_oracle_checks(GroupTag tag, const Tolerances& tol);

// --- counterexamples ------------------------------------------------------

std::vector<CheckRow> s2_checks(const Tolerances& tol);
// f_alpha with the support edge placed between dilation nodes
S2Report f_alpha_s2(double alpha, double p_prime);

std::vector<CheckRow> oscillatory_checks(const std::vector<double>& alphas, const Tolerances& tol);

// (alpha, p') outside the group's admissible window; empty when admissible
std::string window_violation(GroupTag tag, double alpha, double p_prime);
SweepResult run_sweep(GroupTag tag, double alpha, double p_prime, double L, std::optional<double> R);
CheckRow sweep_row(const SweepResult& r, const Tolerances& tol);

}  // namespace nuharm::cli
