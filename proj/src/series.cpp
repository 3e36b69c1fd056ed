#include "hypercrit/series.hpp"

#include <algorithm>
#include <cmath>

#include "hypercrit/conjugacy.hpp"
#include "hypercrit/boundary_point.hpp"
#include "hypercrit/errors.hpp"

namespace hypercrit {

SeriesEstimate series_from_counts(const std::vector<BigInt>& counts, double s) {
    SeriesEstimate e;
    e.exponent = s;
    e.truncation_radius = static_cast<int>(counts.size()) - 1;
    e.per_sphere_terms.reserve(counts.size());
    for (std::size_t n = 0; n < counts.size(); ++n) {
        double term = counts[n].to_double() * std::exp(-s * static_cast<double>(n));
        e.per_sphere_terms.push_back(term);
        e.partial_sum += term;
    }
    std::size_t R = e.per_sphere_terms.size();
    if (R >= 3) {
        double t2 = e.per_sphere_terms[R - 1];
        double t1 = e.per_sphere_terms[R - 2];
        double t0 = e.per_sphere_terms[R - 3];
        if (t0 > 0 && t1 > 0 && t2 > 0) {
            double q = std::max(t1 / t0, t2 / t1);
            if (q < 1.0 - 1e-6) e.tail_bound = t2 * q / (1.0 - q);
        }
    }
    return e;
}

SeriesEstimate poincare_partial(const SubgroupHandle& H, double s, int R) {
    if (s < 0) throw InvalidInputError("exponent s must be nonnegative");
    if (R < 0) throw InvalidInputError("truncation radius must be nonnegative");
    return series_from_counts(sphere_counts(H, R), s);
}

ExponentEstimate critical_exponent_estimate(const SubgroupHandle& H, int Rmax) {
    if (Rmax < 2) throw InvalidInputError("Rmax must be at least 2");
    auto counts = sphere_counts(H, Rmax);
    ExponentEstimate est;
    for (int n = 1; n <= Rmax; ++n) {
        if (!counts[static_cast<std::size_t>(n)].is_zero()) {
            est.radii.push_back(n);
            est.log_counts.push_back(std::log(counts[static_cast<std::size_t>(n)].to_double()));
        }
    }
    if (est.radii.empty()) {
        est.finite_group = true;
        est.slope = 0;
        est.bracket = {0, 0};
        return est;
    }
    for (std::size_t i = 0; i + 1 < est.radii.size(); ++i) {
        int gap = est.radii[i + 1] - est.radii[i];
        est.difference_estimates.push_back(
            {est.radii[i + 1], (est.log_counts[i + 1] - est.log_counts[i]) / gap});
    }
    if (est.difference_estimates.empty()) {
        // A single nonempty sphere gives no growth information.
        est.slope = 0;
        est.bracket = {0, 0};
        return est;
    }
    std::size_t window = static_cast<std::size_t>((Rmax + 3) / 4);
    window = std::min(window, est.difference_estimates.size());
    std::size_t lo = est.difference_estimates.size() - window;

    // Exact geometric tail: identical count ratios and identical gaps over
    // the window let us report the slope as a log of integers.
    bool exact = true;
    std::size_t lo_r = est.radii.size() - window;  // pairs (lo_r-1+i, lo_r+i)
    Rational ratio;
    int gap0 = 0;
    for (std::size_t i = 0; i < window && exact; ++i) {
        std::size_t hi_idx = lo_r + i;
        const BigInt& a = counts[static_cast<std::size_t>(est.radii[hi_idx - 1])];
        const BigInt& b = counts[static_cast<std::size_t>(est.radii[hi_idx])];
        Rational q(b, a);
        int gap = est.radii[hi_idx] - est.radii[hi_idx - 1];
        if (i == 0) {
            ratio = q;
            gap0 = gap;
        } else if (!(q == ratio) || gap != gap0) {
            exact = false;
        }
    }
    double mn = est.difference_estimates[lo].second;
    double mx = mn;
    for (std::size_t i = lo; i < est.difference_estimates.size(); ++i) {
        mn = std::min(mn, est.difference_estimates[i].second);
        mx = std::max(mx, est.difference_estimates[i].second);
    }
    if (exact) {
        est.exact_ratio = true;
        est.slope =
            (std::log(ratio.num().to_double()) - std::log(ratio.den().to_double())) / gap0;
        est.bracket = {est.slope, est.slope};
    } else {
        // Chord slope across the window; always inside the bracket.
        std::size_t first = lo_r - 1;
        est.slope = (est.log_counts.back() - est.log_counts[first]) /
                    (est.radii.back() - est.radii[first]);
        est.bracket = {mn, mx};
    }
    return est;
}

const char* growth_class_name(GrowthClass c) {
    switch (c) {
        case GrowthClass::LinearOrFaster: return "linear-or-faster";
        case GrowthClass::ApparentlyBounded: return "apparently-bounded";
        case GrowthClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

DivergenceReport divergence_diagnostic(const SubgroupHandle& H, double delta_hat, int Rmax) {
    if (delta_hat < 0) throw InvalidInputError("exponent must be nonnegative");
    auto counts = sphere_counts(H, Rmax);
    SeriesEstimate se = series_from_counts(counts, delta_hat);
    DivergenceReport rep;
    rep.exponent = delta_hat;
    rep.truncation_radius = Rmax;
    double acc = 0;
    for (double t : se.per_sphere_terms) {
        acc += t;
        rep.partial_sums.push_back(acc);
    }

    // Window width: the largest nonempty-sphere gap in the second half
    // (subgroups with parity constraints have empty odd spheres).
    int half = Rmax / 2;
    int gap = 1, last_nonempty = -1, max_gap = 1;
    bool any = false;
    for (int n = half; n <= Rmax; ++n) {
        if (!counts[static_cast<std::size_t>(n)].is_zero()) {
            if (any) max_gap = std::max(max_gap, n - last_nonempty);
            last_nonempty = n;
            any = true;
        }
    }
    gap = any ? max_gap : 1;

    std::vector<double> increments;
    for (int start = half + 1; start + gap - 1 <= Rmax; start += gap) {
        double inc = 0;
        for (int n = start; n < start + gap; ++n) inc += se.per_sphere_terms[static_cast<std::size_t>(n)];
        increments.push_back(inc);
    }
    if (!increments.empty() && increments.front() > 0) {
        double mn = *std::min_element(increments.begin(), increments.end());
        if (mn >= 0.5 * increments.front()) {
            rep.classification = GrowthClass::LinearOrFaster;
            return rep;
        }
    }
    rep.classification = se.tail_bound ? GrowthClass::ApparentlyBounded : GrowthClass::Inconclusive;
    return rep;
}

SeriesEstimate partial_poincare_over_action(const SubgroupHandle& Gamma,
                                            const PermutationAction& action, int z,
                                            const std::vector<int>& U, double s, int R) {
    for (int u : U)
        if (u < 0 || u >= action.size())
            throw InvalidInputError("subset element outside the action's set");
    auto counts = action_orbit_counts(Gamma, action, z, R);
    std::vector<BigInt> hit(static_cast<std::size_t>(R) + 1);
    for (int n = 0; n <= R; ++n)
        for (int u : U) hit[static_cast<std::size_t>(n)] += counts[static_cast<std::size_t>(n)][static_cast<std::size_t>(u)];
    return series_from_counts(hit, s);
}

SeriesEstimate conjugation_series(const SubgroupHandle& Gamma, const Word& h,
                                  const std::vector<Word>& V, double s, int R) {
    if (h.is_identity()) throw InvalidInputError("h must be nontrivial");
    std::vector<BigInt> counts(static_cast<std::size_t>(R) + 1);
    for (const Word& g : conjugators_into(h, V, R))
        if (Gamma.contains(g)) counts[static_cast<std::size_t>(g.length())] += BigInt(1);
    return series_from_counts(counts, s);
}

HalfExponentReport half_exponent_check(int rank, const Word& h, const std::vector<Word>& K,
                                       double s, int R) {
    (void)rank;
    int lmax = 0;
    for (const Word& g : K) lmax = std::max(lmax, g.length());
    HalfExponentReport rep;
    rep.beta = std::exp(0.5 * s * lmax);
    bool first = true;
    for (const Word& gamma : conjugators_into(h, K, R)) {
        // log slack = (s/2) (lmax - |h| + 2|gamma|), sign exact in integers.
        int key = lmax - h.length() + 2 * gamma.length();
        double slack = 0.5 * s * key;
        if (first || slack < rep.worst_slack) {
            rep.worst_slack = slack;
            rep.worst_gamma = gamma;
            first = false;
        }
        if (key < 0) rep.violation = true;
        ++rep.checked;
    }
    if (first) rep.worst_slack = 0;
    return rep;
}

ShortestElementReport shortest_element_bound(int rank, const Word& h, const std::vector<Word>& K,
                                             double s, int R) {
    (void)rank;
    if (s <= 0) throw InvalidInputError("shortest_element_bound needs s > 0");
    std::vector<Word> E = conjugators_into(h, K, R);
    if (E.empty())
        throw NotFoundError("E(h, K) is empty within radius " + std::to_string(R));
    ShortestElementReport rep;
    rep.enumerated = static_cast<int>(E.size());
    rep.gamma_h = E.front();  // sorted shortlex: minimal length, smallest word
    int D = 0, lt_max = 0;
    for (const Word& g : K) {
        if (g.is_identity()) continue;
        D = std::max(D, dist_to_axis(g));
        lt_max = std::max(lt_max, cyclic_decompose(g).core.length());
    }
    rep.axis_distance = D;
    rep.multiplicity = 2.0 * static_cast<double>(K.size()) * std::max(1, lt_max);
    rep.alpha = rep.multiplicity / (1.0 - std::exp(-s)) * std::exp(2.0 * s * D);
    for (const Word& gamma : E) rep.series_value += std::exp(-s * gamma.length());
    rep.bound_value = rep.alpha * std::exp(-s * rep.gamma_h.length());
    return rep;
}

double lambda0_from_delta(double delta, double dim) {
    if (!(dim > 0)) throw InvalidInputError("boundary dimension must be positive");
    if (delta < 0 || delta > dim)
        throw InvalidInputError("critical exponent must lie in [0, dim]");
    if (delta <= 0.5 * dim) return 0.25 * dim * dim;
    return delta * (dim - delta);
}

}  // namespace hypercrit
