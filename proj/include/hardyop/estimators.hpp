#pragma once

#include "hardyop/pullback.hpp"

namespace hardyop {

struct Setting {
    double p = 2.0;  // may be infinity
    double q = 2.0;  // may be infinity
    std::size_t n = 1;
};

struct Bound {
    double value = 0.0;
    double uncertainty = 0.0;
    std::string provenance;
};

enum class TrendClass { Vanishing, Plateau, Undecided };

std::string to_string(TrendClass t);

struct TrendLimit {
    double value = 0.0;
    double uncertainty = 0.0;
    TrendClass trend = TrendClass::Undecided;
};

/// Limit of a nonincreasing positive trace. A tail decaying by more than 25%
/// per step extrapolates to 0 (bounded by the last entry); a flat tail
/// extrapolates to the midpoint of the last two entries; anything in between
/// is left undecided with the last entry as the spread.
TrendLimit trend_limit(std::span<const double> seq);

struct Trace {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (parameter, value)
};

enum class OperatorRegime {
    SupToH2,         // exact essential-norm formula
    SupToHq,         // factor-2 bracket, q > 1
    HpToHqLower,     // lower bound only, inner-function witnesses (n = 1)
    HpToHqInterp,    // heuristic interpolation upper bound, 1 < q < p
    HpToSup,         // boundary-ratio limit bracket
    HpToHqCarleson,  // 1 < p <= q < infinity, measure-theoretic indicators
};

std::string to_string(OperatorRegime r);

/// Essential-norm / boundedness diagnostic bundle.
struct EstimateReport {
    Setting setting;
    OperatorRegime regime = OperatorRegime::SupToH2;
    std::optional<Bound> lower, upper, exact;
    std::optional<TrendClass> trace_trend;  // set by limit-based estimators
    std::vector<Trace> traces;
    std::vector<std::string> citations;
    QuadratureScheme scheme;

    /// lower <= exact <= upper within combined uncertainties, all >= 0.
    bool ordering_ok() const;
};

// ---------------------------------------------------------------------------
// staged boundary-supremum search
// ---------------------------------------------------------------------------

struct SearchBudget {
    std::size_t directions = 96;  // global directions at stage 0
    std::size_t radial = 16;      // radii per stage
    int stages = 6;               // stage s samples radii up to 1 - 10^-(s+1)
    std::size_t top_k = 8;
    std::size_t local = 24;  // local directions per kept candidate
    std::uint64_t seed = 1729;
};

struct StagedSearchResult {
    double sup = 0.0;
    CVec argmax;
    std::vector<double> stage_sups;
    /// growth factors between the last stages; all > 2 classifies the
    /// supremum as growing without plateau
    std::vector<double> tail_growth;
    bool grows_unbounded = false;
    bool region_hit = true;  // false when no sample satisfied the region predicate
};

using RatioFn = std::function<double(std::span<const Complex>)>;
using RegionFn = std::function<bool(std::span<const Complex>)>;

/// Coarse-to-fine interior maximization of `ratio` over B_n, pushing sample
/// radii toward the boundary stage by stage (up to 1 - 1e-6 by default) and
/// refining directions around the running maximizers.
StagedSearchResult staged_ratio_search(const RatioFn& ratio, std::size_t n,
                                       const SearchBudget& budget,
                                       const RegionFn& region = nullptr);

// ---------------------------------------------------------------------------
// estimators
// ---------------------------------------------------------------------------

/// Exact essential norm for the sup-norm domain into H^2:
/// sqrt of the extrapolated extreme pullback mass at exponent 2.
EstimateReport essnorm_exact_hinf_h2(const Symbol& psi, const BallSelfMap& phi,
                                     const QuadratureScheme& scheme,
                                     std::span<const double> eps = default_eps_schedule());

/// Factor-2 bracket for the sup-norm domain into H^q (q > 1):
/// [mu^(1/q) / 2, 2 mu^(1/q)]. At q = 2 the exact value is cross-linked.
EstimateReport essnorm_bounds_hinf_hq(const Symbol& psi, const BallSelfMap& phi, double q,
                                      const QuadratureScheme& scheme,
                                      std::span<const double> eps = default_eps_schedule());

/// Lower bound mu^(1/q) for H^p -> H^q (1 < p), with the inner-function
/// witness trace ||W(g^m)||_q. Gated to n = 1.
EstimateReport essnorm_lower_hp_hq(const Symbol& psi, const BallSelfMap& phi, double p,
                                   double q, const QuadratureScheme& scheme,
                                   std::span<const double> eps = default_eps_schedule(),
                                   const Symbol* witness = nullptr);

/// Heuristic interpolation upper bound for 1 < q < p, r > q:
/// ||P|| * ||W||_{p,r} * sigma(E)^{(r-q)/(qr)}, where ||W||_{p,r} is a
/// corpus maximum (itself a lower estimate of the operator norm, which makes
/// the product a heuristic upper bound). projection_norm is required unless
/// q = 2, where the projection is orthogonal and has norm exactly 1.
EstimateReport essnorm_upper_interp(const Symbol& psi, const BallSelfMap& phi, double p,
                                    double q, double r,
                                    std::optional<double> projection_norm,
                                    const QuadratureScheme& scheme,
                                    std::span<const double> eps = default_eps_schedule());

struct BoundednessReport {
    Setting setting;
    double sup = 0.0;
    CVec argmax;
    bool bounded = false;
    StagedSearchResult search;
    std::vector<std::string> citations;
};

/// W: H^p -> H^infty is bounded iff sup |psi(z)| / (1-|phi(z)|^2)^{n/p} < inf.
BoundednessReport boundedness_hp_hinf(const Symbol& psi, const BallSelfMap& phi, double p,
                                      const SearchBudget& budget = {});

std::span<const double> default_delta_schedule();

/// Bracket [L, 2L] for H^p -> H^infty (p > 1), where L is the extrapolated
/// limit of the boundary-ratio suprema over the shrinking regions
/// { z : dist(phi(z), boundary) < delta }. An empty region yields L = 0.
/// Requires a prior bounded verdict.
EstimateReport essnorm_bounds_hp_hinf(const Symbol& psi, const BallSelfMap& phi, double p,
                                      const BoundednessReport& bounded,
                                      std::span<const double> deltas = default_delta_schedule(),
                                      const SearchBudget& budget = {});

struct TruncationTrace {
    int k = 0;
    std::vector<int> ms;
    std::vector<double> q_norms;      // ||Q_k W(g^m)||_2
    std::vector<double> r_norms;      // ||R_k W(g^m)||_2
    std::vector<double> image_norms;  // ||W(g^m)||_2 by boundary quadrature
    double contraction = 0.0;         // measured max |g o phi| on |z| <= 1/(2n)
    double tail_fraction = 0.0;       // worst unexpanded mass fraction seen
};

/// Expands psi * (g o phi)^m to degree d and splits at k. The head norms
/// decay geometrically at a rate governed by the interior contraction of
/// g o phi; the tail norms realize the essential-norm lower-bound mechanism.
/// Gated to n = 1; throws BudgetError if more than 1% of the image mass
/// falls outside degree d.
TruncationTrace truncated_image_trace(const Symbol& psi, const BallSelfMap& phi, int k,
                                      const Symbol& g, std::span<const int> ms, int d,
                                      const QuadratureScheme& scheme);

struct CompactnessVerdict {
    enum class State { Compact, NonCompact, Inconclusive };
    State state = State::Inconclusive;
    std::string criterion;
    double deciding_value = 0.0;
    double uncertainty = 0.0;
};

std::string to_string(CompactnessVerdict::State s);

/// Verdict by the criterion matching the report's regime: the deciding
/// quantity is zero within uncertainty (compact), clearly positive
/// (non-compact), or straddling (inconclusive). For the lower-bound-only
/// regime a vanishing quantity is inconclusive, not compact.
CompactnessVerdict compactness_verdict(const EstimateReport& report);

}  // namespace hardyop
