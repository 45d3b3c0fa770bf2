#pragma once

#include <complex>
#include <memory>
#include <random>

#include "nuharm/grid.hpp"
#include "nuharm/representation.hpp"
#include "nuharm/transform.hpp"

namespace nuharm {

// Resolution of a harmonic-analysis run.  Group grids are made commensurate
// with the representation grids: the dilation axis steps by the radial log
// step, the Sim2 angle count equals the plane's angle count and the P_aff
// rapidity step equals the cone's u step.  Representation matrices at group
// nodes are then pure re-indexings.
struct SetupParams {
    int n_rep = 64;       // half-line / radial nodes
    int n_angular = 16;   // plane angles or cone u nodes
    double rep_min = 1e-2;
    double rep_max = 10.0;
    double u_max = 3.0;   // cone rapidity window
    int n_b = 32;         // per translation axis
    double b_half = 3.0;
    double b_grading = 1.0;
    int n_a = 17;
    int n_angle = 9;      // P_aff only (Sim2 uses n_angular)
};

SetupParams desk_params(GroupTag tag);
// smaller grids for Wigner computations (quadratic in the group grid size)
SetupParams reduced_params(GroupTag tag);

struct HarmonicSetup {
    GroupTag tag = GroupTag::Affine;
    SetupParams params;
    std::shared_ptr<const Grid> group;
    RepSpaces reps;
    double log_step = 0.0;
};

HarmonicSetup make_setup(GroupTag tag, const SetupParams& p);

// Gaussian in (b, log a) times an angle profile: 1 + m cos(theta - theta0)
// on Sim2, a Gaussian in the rapidity on P_aff.
struct Bump {
    GroupTag tag = GroupTag::Affine;
    std::complex<double> amplitude = 1.0;
    Vec2 b0;
    double sigma_b = 0.5;
    double log_a0 = 0.0;
    double sigma_a = 0.3;
    double angle0 = 0.0;
    double sigma_angle = 0.3;
    double modulation = 0.5;
    Vec2 chirp;  // extra phase exp(i chirp . b)
    double support = 0.0;  // > 0: zero where the Gaussian exponent exceeds support^2 / 2

    std::complex<double> operator()(const GroupElement& g) const;
    GridFunction sample(std::shared_ptr<const Grid> grid) const;
    // closed-form F1 on the affine group
    std::complex<double> affine_F1(double s, double a) const;
};

Bump standard_bump(GroupTag tag);
Bump random_bump(GroupTag tag, std::mt19937_64& rng, double spread = 1.0);
// compactly supported random bump sized for Wigner checks on desk (affine) or
// reduced (Sim2, P_aff) setups
Bump wigner_bump(GroupTag tag, std::mt19937_64& rng);

}  // namespace nuharm
