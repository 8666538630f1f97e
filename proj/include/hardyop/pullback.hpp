#pragma once

#include "hardyop/hardy.hpp"

namespace hardyop {

/// Weighted boundary-sample point cloud realizing the pullback measure
/// mu_{psi,phi,q}: atom i sits at phi(xi_i) with weight |psi(xi_i)|^q / N.
struct EmpiricalPullbackMeasure {
    double q = 2.0;
    NodeSet atoms;                // locations in the closed ball
    std::vector<double> weights;  // >= 0
    double total_mass = 0.0;

    // provenance
    std::optional<Symbol> psi;
    std::optional<BallSelfMap> phi;
    QuadratureScheme scheme;

    std::size_t size() const { return weights.size(); }

    /// Direct construction from raw atoms (tests, deserialization).
    static EmpiricalPullbackMeasure from_atoms(double q, NodeSet atoms,
                                               std::vector<double> weights);
};

/// Build mu_{psi,phi,q} on the boundary node set of `scheme`.
/// Requires a validated self-map.
EmpiricalPullbackMeasure build_pullback(const Symbol& psi, const BallSelfMap& phi, double q,
                                        const QuadratureScheme& scheme);

struct PullbackIntegral {
    double atom_sum = 0.0;      // sum_i w_i g(loc_i)
    double boundary_sum = 0.0;  // mean over the boundary of |psi|^q (g o phi)
    double rel_diff = 0.0;
};

/// Integrates a nonnegative g against mu two ways: the atom sum and the
/// boundary integral from the measure's provenance. The two are the same sum
/// up to floating-point rounding; disagreement flags broken plumbing.
/// Throws on a negative g value.
PullbackIntegral integrate_pullback(const EmpiricalPullbackMeasure& mu,
                                    const std::function<double(std::span<const Complex>)>& g);

struct ExtremeSetProfile {
    std::vector<double> eps;         // strictly decreasing
    std::vector<double> sigma_mass;  // sigma(E_eps)
    std::vector<double> mu_mass;     // integral of |psi|^q over E_eps
    double sigma_limit = 0.0;
    double sigma_limit_unc = 0.0;
    double mu_limit = 0.0;
    double mu_limit_unc = 0.0;
};

std::span<const double> default_eps_schedule();

/// Masses of E_eps = { xi : |phi(xi)| >= 1-eps } along the schedule, with the
/// eps -> 0 limits extrapolated from the plateau of the last two entries
/// (uncertainty: half-spread plus the Monte Carlo standard error).
ExtremeSetProfile extreme_profile(const Symbol& psi, const BallSelfMap& phi, double q,
                                  std::span<const double> eps_schedule,
                                  const QuadratureScheme& scheme);

struct MassEstimate {
    double value = 0.0;
    double uncertainty = 0.0;
};

/// mu_{psi,phi,q}(phi(E)) as the extrapolated limit of the mu-mass profile.
MassEstimate pullback_extreme_mass(const ExtremeSetProfile& profile);

}  // namespace hardyop
