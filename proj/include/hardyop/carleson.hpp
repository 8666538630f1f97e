#pragma once

#include "hardyop/estimators.hpp"

namespace hardyop {

std::span<const double> default_h_schedule();
std::span<const double> default_berezin_shells();
std::span<const double> default_boundary_radii();

struct BoxConstant {
    double value = 0.0;
    CVec argmax_center;
    double argmax_h = 0.0;
    std::vector<std::pair<double, double>> profile;  // (h, sup over centers)
    /// growth factors across the finest apertures; all > 2 classifies the
    /// normalized window masses as divergent
    std::vector<double> tail_growth;
    bool divergent = false;
};

/// M = sup over sampled centers and grid apertures of mu(S_h(xi)) / h^{n beta}.
BoxConstant box_constant(const EmpiricalPullbackMeasure& mu, double beta,
                         std::span<const double> h_grid = default_h_schedule(),
                         std::size_t center_count = 128, std::uint64_t seed = 1729);

struct VanishingProfile {
    std::vector<std::pair<double, double>> profile;  // (h, sup over centers)
    bool vanishing = false;
};

/// Vanishing verdict: the final profile entries decrease and the last one is
/// below 10% of the box constant.
VanishingProfile vanishing_profile(const EmpiricalPullbackMeasure& mu, double beta,
                                   std::span<const double> h_grid = default_h_schedule(),
                                   std::size_t center_count = 128,
                                   std::uint64_t seed = 1729);

struct BerezinSup {
    double sup = 0.0;
    CVec argmax;
    std::vector<std::pair<double, double>> shell_sups;  // (|z|, sup over directions)
    std::vector<double> tail_growth;
    bool divergent = false;
    double worst_two_way_rel = 0.0;
};

/// sup over a radial-shell grid of the Berezin-type integral
/// int (1-|z|^2)^{nq/p} / |1-<w,z>|^{2nq/p} dmu(w), evaluated two ways at
/// every grid point (atom sum, and the boundary-integral form from the
/// measure's provenance). Disagreement beyond 1e-10 relative throws.
BerezinSup berezin_sup(const Symbol& psi, const BallSelfMap& phi, double p, double q,
                       const QuadratureScheme& scheme,
                       std::span<const double> shells = default_berezin_shells(),
                       std::size_t directions = 24);

struct BoundaryTrace {
    std::vector<std::pair<double, double>> trace;  // (r, sup over directions)
    double limit = 0.0;
    double limit_unc = 0.0;
    TrendClass trend = TrendClass::Undecided;
    double limit_qroot = 0.0;  // limit^(1/q)
};

/// Berezin values along |w| -> 1, with the extrapolated limit and also its
/// 1/q-th power (both scalings of the boundary lower-bound are reported).
BoundaryTrace berezin_boundary_trace(const Symbol& psi, const BallSelfMap& phi, double p,
                                     double q, const QuadratureScheme& scheme,
                                     std::span<const double> radii = default_boundary_radii(),
                                     std::size_t directions = 24);

struct BoundaryMass {
    std::vector<std::pair<double, double>> profile;  // (eps, mass at |loc| >= 1-eps)
    double limit = 0.0;
    double limit_unc = 0.0;
};

/// Mass of the atoms within eps of the boundary, extrapolated to eps -> 0.
BoundaryMass boundary_mass_check(const EmpiricalPullbackMeasure& mu,
                                 std::span<const double> eps = default_eps_schedule());

/// beta = q/p Carleson diagnostic bundle for W: H^p -> H^q, 0 < p <= q.
struct CarlesonReport {
    Setting setting;
    double beta = 1.0;
    BoxConstant box;
    VanishingProfile vanishing;
    BerezinSup berezin;
    BoundaryTrace boundary;
    /// direct corpus estimate of ||W||_{p,q}: max of ||W f||_q over
    /// unit-H^p kernels and normalized random polynomials
    double corpus_norm = 0.0;
    std::vector<std::pair<double, double>> corpus_kernel_trace;  // (|w|, ||W f_w||_q)
    bool corpus_divergent = false;
    bool indicators_agree = false;
    bool bounded = false;
    std::vector<std::string> citations;
    QuadratureScheme scheme;
};

/// The three boundedness indicators (box constant, Berezin supremum, corpus
/// norm estimate) with the coherence verdict; a disagreement is flagged in
/// the report, not thrown.
CarlesonReport equivalence_report(const Symbol& psi, const BallSelfMap& phi, double p,
                                  double q, const QuadratureScheme& scheme);

/// Verdict for the 1 < p <= q < infinity regime from the Berezin boundary
/// limit (and the vanishing profile as the criterion tag).
CompactnessVerdict compactness_verdict(const Setting& setting, const CarlesonReport& report);

}  // namespace hardyop
