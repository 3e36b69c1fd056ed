#pragma once

#include <string>
#include <vector>

#include "hypercrit/density.hpp"
#include "hypercrit/series.hpp"
#include "hypercrit/subgroup.hpp"

namespace hypercrit {

/// A finitely supported conjugation-invariant probability measure on
/// subgroups of F_k. Construction verifies that the weights sum to 1 and
/// that conjugation by every generator letter permutes the support with
/// matching weights.
class FiniteIrs {
public:
    struct Member {
        SubgroupHandle subgroup;
        double weight = 0;
    };

    static FiniteIrs make(int rank, std::vector<Member> support);

    int rank() const { return rank_; }
    const std::vector<Member>& support() const { return support_; }

private:
    int rank_ = 0;
    std::vector<Member> support_;
};

/// Pushforward of the uniform measure on the coset space: the conjugacy
/// orbit of a finite-index subgroup, weighted by fiber size.
FiniteIrs irs_from_finite_index(const SubgroupHandle& H);

/// Dirac mass at a normal subgroup; normality is verified on generator
/// conjugations and failure names the offending conjugation.
FiniteIrs irs_from_normal(const SubgroupHandle& N);

/// delta(mu) as an expectation of slope estimates over the support.
struct ExpectedExponentRow {
    std::string key;
    double weight = 0;
    ExponentEstimate estimate;
};

struct ExpectedExponentReport {
    double value = 0;
    std::vector<ExpectedExponentRow> rows;
};

ExpectedExponentReport expected_critical_exponent(const FiniteIrs& mu, int Rmax);

/// Desk-scale verdicts against delta(H) > dim/2. Truncated counts cannot
/// refute the theorem, so a bracket below the bound reads CONTRADICTION
/// (of the truncation) rather than failure of the statement.
enum class TheoremVerdict { Pass, Inconclusive, Contradiction };

const char* theorem_verdict_name(TheoremVerdict v);

struct TheoremOneRow {
    std::string key;
    double weight = 0;
    std::pair<double, double> bracket{0, 0};
    TheoremVerdict verdict = TheoremVerdict::Inconclusive;
};

struct TheoremOneReport {
    double threshold = 0;  // ln(2k-1)/2
    std::vector<TheoremOneRow> rows;
    bool all_pass = false;
};

TheoremOneReport theorem_one_check(const FiniteIrs& mu, int Rmax);

/// Quantitative recurrence counts E_{r,k}(x, U) = E(x, U) n A[r, r+k] for
/// the full group acting on a finite set, via (radius, point) DP.
struct RecurrenceRow {
    int r = 0;
    BigInt count;
    double normalized = 0;  // e^(-deltaHat r) |E_{r,k}|
};

struct RecurrenceReport {
    int x = 0;
    std::vector<int> U;
    int window = 0;
    double delta_hat = 0;
    double mu_U = 0;
    std::vector<RecurrenceRow> rows;  // r = 0..rmax
    double infimum = 0;
    double kappa_hat = 0;       // min(infimum, 1)
    double measure_margin = 0;  // mu(U) - (1 - kappa_hat)
};

RecurrenceReport recurrence_counts(int rank, const PermutationAction& action, int x,
                                   const std::vector<int>& U, int window, int rmax,
                                   double delta_hat);

/// The truncated inequality chain behind the divergence-at-one-half
/// theorem:
///   P_Delta(delta/2)  >=  (1/alpha beta) sum_h P(delta; h, V)
///                     >=  (1/alpha beta) P(delta; Delta, Omega_V),
/// with delta = ln(2k-1), alpha from the shortest-element recipe and beta
/// from the half-exponent lemma, all at explicit truncation radii.
struct PipelineReport {
    double exponent = 0;  // delta = ln(2k-1)
    int radius = 0;       // gamma-ball radius R
    int h_radius = 0;     // h-ball radius 2R + max |V|
    double alpha = 0;
    double beta = 0;
    long long h_count = 0;  // h in Delta with a conjugate in V within R
    double q1 = 0;
    double q2 = 0;
    double q3 = 0;
    bool ineq1 = false;  // q1 >= q2
    bool ineq2 = false;  // q2 >= q3
    bool empty_chain = false;
};

PipelineReport divergence_pipeline(const SubgroupHandle& Delta, const std::vector<Word>& V,
                                   int R);

/// Builds projected W_s densities for every support member at
/// s = delta_hat + epsilon (smallest ladder rung), with the exact density
/// for full-group members. Projected densities are finite-truncation
/// artifacts: they are recorded with distortion 1 and flagged as
/// uncontrolled approximations.
DensityFamily irs_density_family(const FiniteIrs& mu, double delta_hat, int R, int depth,
                                 double epsilon = 0.01);

/// Per-radius check of (a) sum over the annulus of pi(gamma, Delta) against
/// c' e^(deltaHat r) with c' = c p e^(deltaHat k) extracted at a small
/// calibration radius, and (b) the inverse-trick bound
/// sum |E_{r,k}| <= 2 d^12 sum pi, integrated over the support.
struct SummedCocycleRow {
    int r = 0;
    double sum_pi = 0;     // weighted over the support
    double bound = 0;      // c' e^(deltaHat r)
    double margin1 = 0;    // bound - max over members of per-member sum
    double count_e = 0;    // weighted |E_{r,k}|
    double rhs2 = 0;       // 2 d^12 sum_pi
    double margin2 = 0;
};

struct SummedCocycleReport {
    double delta_hat = 0;
    int window = 0;
    int shadow_radius = 0;
    double c_const = 0;
    double p_mult = 0;
    double c_prime = 0;
    std::vector<SummedCocycleRow> rows;
    bool all_ok = false;
    bool uncontrolled_approximation = false;
};

SummedCocycleReport summed_cocycle_check(const FiniteIrs& mu, const DensityFamily& family,
                                         int window, int rmax, int shadow_radius);

}  // namespace hypercrit
