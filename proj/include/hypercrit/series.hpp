#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hypercrit/counting.hpp"
#include "hypercrit/subgroup.hpp"

namespace hypercrit {

/// Truncation of a Poincare-type series: per-sphere terms for n <= R, their
/// sum, and (when the last term ratios certify geometric domination) an
/// upper bound on the discarded tail.
struct SeriesEstimate {
    double exponent = 0;
    int truncation_radius = 0;
    std::vector<double> per_sphere_terms;  // index n = 0..R
    double partial_sum = 0;
    std::optional<double> tail_bound;
};

/// Assembles the estimate from exact sphere counts; terms summed in
/// ascending n. The tail bound t_R q/(1-q), q = max of the last two term
/// ratios, is emitted only when both ratios exist and are < 1 - 1e-6.
SeriesEstimate series_from_counts(const std::vector<BigInt>& counts, double s);

/// P_H(s) truncated at radius R: sum over members of e^(-s |w|).
SeriesEstimate poincare_partial(const SubgroupHandle& H, double s, int R);

/// Growth-rate estimate from exact sphere counts. Differences are taken
/// between consecutive nonempty spheres, normalized by the gap; the bracket
/// is the (min, max) of the last ceil(Rmax/4) of them. When the tail counts
/// are in exact geometric progression the slope is reported as the exact
/// log of that integer ratio.
struct ExponentEstimate {
    std::vector<int> radii;              // nonempty sphere radii
    std::vector<double> log_counts;      // ln of the counts at those radii
    std::vector<std::pair<int, double>> difference_estimates;  // (radius, slope)
    double slope = 0;
    std::pair<double, double> bracket{0, 0};
    bool finite_group = false;  // no nonempty sphere beyond n = 0
    bool exact_ratio = false;
};

ExponentEstimate critical_exponent_estimate(const SubgroupHandle& H, int Rmax);

/// Divergence at a truncation cannot be decided, only classified.
enum class GrowthClass { LinearOrFaster, ApparentlyBounded, Inconclusive };

const char* growth_class_name(GrowthClass c);

struct DivergenceReport {
    double exponent = 0;
    int truncation_radius = 0;
    std::vector<double> partial_sums;  // index n = 0..Rmax
    GrowthClass classification = GrowthClass::Inconclusive;
};

/// Looks at the increments of the partial sums over the last half of the
/// truncation window: flat-or-growing increments mean the series is still
/// adding mass linearly; a geometric decay certificate means the partial
/// sums are apparently bounded.
DivergenceReport divergence_diagnostic(const SubgroupHandle& H, double delta_hat, int Rmax);

/// P_Gamma(s; z, U) truncated at R: sum over gamma in Gamma with |gamma|
/// <= R and z . gamma in U.
SeriesEstimate partial_poincare_over_action(const SubgroupHandle& Gamma,
                                            const PermutationAction& action, int z,
                                            const std::vector<int>& U, double s, int R);

/// P_Gamma(s; h, V) over E_Gamma(h, V) = {gamma in Gamma : gamma h gamma^-1
/// in V}, truncated at R. Solutions are centralizer cosets in the full
/// group, walked exactly and filtered by membership in Gamma.
SeriesEstimate conjugation_series(const SubgroupHandle& Gamma, const Word& h,
                                  const std::vector<Word>& V, double s, int R);

/// Check of the inequality e^(-s d(go,o)) <= beta e^(-(s/2) d(ho,o)) with
/// beta = max over g in K of e^((s/2) d(go,o)), for every enumerated gamma
/// in E(h, K). The slack is exact in the word lengths, so a violation would
/// be a counting bug rather than numerical noise.
struct HalfExponentReport {
    int checked = 0;
    double beta = 0;
    double worst_slack = 0;
    std::optional<Word> worst_gamma;
    bool violation = false;
};

HalfExponentReport half_exponent_check(int rank, const Word& h, const std::vector<Word>& K,
                                       double s, int R);

/// Shortest-element bound: gamma_h = minimal element of E(h, K) (shortlex
/// ties), and alpha follows the proof recipe alpha = n (1 - e^-s)^-1
/// e^(2sD) with D the largest basepoint-to-axis distance over K and n the
/// orbit multiplicity bound 2 |K| max-translation-length.
struct ShortestElementReport {
    Word gamma_h;
    double series_value = 0;
    double bound_value = 0;
    double alpha = 0;
    int axis_distance = 0;     // D
    double multiplicity = 0;   // n
    int enumerated = 0;
};

ShortestElementReport shortest_element_bound(int rank, const Word& h, const std::vector<Word>& K,
                                             double s, int R);

/// Bottom of the Laplacian spectrum from the critical exponent:
/// d^2/4 below the half-dimension, delta (d - delta) above it.
double lambda0_from_delta(double delta, double dim);

}  // namespace hypercrit
