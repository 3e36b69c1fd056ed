#include "hypercrit/irs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hypercrit/conjugacy.hpp"
#include "hypercrit/counting.hpp"
#include "hypercrit/errors.hpp"
#include "hypercrit/parallel.hpp"

namespace hypercrit {

FiniteIrs FiniteIrs::make(int rank, std::vector<Member> support) {
    if (support.empty()) throw InvalidInputError("invalid-irs: empty support");
    double total = 0;
    std::map<std::string, double> weight_of;
    for (const auto& m : support) {
        if (m.weight <= 0) throw InvalidInputError("invalid-irs: weights must be positive");
        if (m.subgroup.rank() != rank)
            throw InvalidInputError("invalid-irs: support member of wrong rank");
        if (weight_of.contains(m.subgroup.canonical_key()))
            throw InvalidInputError("invalid-irs: duplicate support member");
        weight_of[m.subgroup.canonical_key()] = m.weight;
        total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw InvalidInputError("invalid-irs: weights sum to " + std::to_string(total));
    for (const auto& m : support) {
        for (Letter l = 0; l < alphabet_size(rank); ++l) {
            SubgroupHandle c = m.subgroup.conjugated(Word::from_reduced({l}));
            auto it = weight_of.find(c.canonical_key());
            if (it == weight_of.end())
                throw InvalidInputError(
                    "invalid-irs: conjugate by '" + std::string(1, letter_to_char(l)) +
                    "' of a support member leaves the support");
            if (std::abs(it->second - m.weight) > 1e-12)
                throw InvalidInputError("invalid-irs: conjugation does not preserve weights");
        }
    }
    FiniteIrs mu;
    mu.rank_ = rank;
    mu.support_ = std::move(support);
    return mu;
}

FiniteIrs irs_from_finite_index(const SubgroupHandle& H) {
    if (!H.has_graph() || !H.has_finite_index())
        throw InvalidInputError("irs_from_finite_index requires a finite-index subgroup");
    // Coset view: the Schreier action of the complete core graph.
    const StallingsGraph& g = H.graph();
    std::vector<std::vector<int>> perms(static_cast<std::size_t>(H.rank()),
                                        std::vector<int>(static_cast<std::size_t>(g.size())));
    for (int v = 0; v < g.size(); ++v)
        for (int gen = 0; gen < H.rank(); ++gen)
            perms[static_cast<std::size_t>(gen)][static_cast<std::size_t>(v)] =
                g.step(v, static_cast<Letter>(2 * gen));
    PermutationAction action = PermutationAction::make(H.rank(), std::move(perms));

    std::map<std::string, std::pair<SubgroupHandle, int>> orbit;  // key -> (handle, fiber)
    for (int q = 0; q < action.size(); ++q) {
        SubgroupHandle stab = SubgroupHandle::coset_stabilizer(action, q);
        auto [it, fresh] = orbit.try_emplace(stab.canonical_key(), stab, 0);
        it->second.second += 1;
    }
    std::vector<FiniteIrs::Member> support;
    for (auto& [key, entry] : orbit)
        support.push_back({std::move(entry.first),
                           static_cast<double>(entry.second) / action.size()});
    return FiniteIrs::make(H.rank(), std::move(support));
}

FiniteIrs irs_from_normal(const SubgroupHandle& N) {
    for (Letter l = 0; l < alphabet_size(N.rank()); ++l) {
        SubgroupHandle c = N.conjugated(Word::from_reduced({l}));
        if (c.canonical_key() != N.canonical_key())
            throw InvalidInputError("subgroup is not normal: conjugation by '" +
                                    std::string(1, letter_to_char(l)) +
                                    "' moves it");
    }
    return FiniteIrs::make(N.rank(), {{N, 1.0}});
}

ExpectedExponentReport expected_critical_exponent(const FiniteIrs& mu, int Rmax) {
    const auto& support = mu.support();
    std::vector<ExpectedExponentRow> rows(support.size());
    parallel_for(support.size(), [&](std::size_t i) {
        rows[i].key = support[i].subgroup.canonical_key();
        rows[i].weight = support[i].weight;
        rows[i].estimate = critical_exponent_estimate(support[i].subgroup, Rmax);
    });
    ExpectedExponentReport rep;
    rep.rows = std::move(rows);
    for (const auto& row : rep.rows) rep.value += row.weight * row.estimate.slope;
    return rep;
}

const char* theorem_verdict_name(TheoremVerdict v) {
    switch (v) {
        case TheoremVerdict::Pass: return "PASS";
        case TheoremVerdict::Inconclusive: return "INCONCLUSIVE";
        case TheoremVerdict::Contradiction: return "CONTRADICTION";
    }
    return "?";
}

TheoremOneReport theorem_one_check(const FiniteIrs& mu, int Rmax) {
    TheoremOneReport rep;
    rep.threshold = 0.5 * std::log(static_cast<double>(2 * mu.rank() - 1));
    rep.all_pass = true;
    for (const auto& member : mu.support()) {
        ExponentEstimate est = critical_exponent_estimate(member.subgroup, Rmax);
        if (est.finite_group)
            throw InvalidInputError(
                "theorem_one_check: support member is finite (no nonempty sphere up to Rmax); "
                "the theorem requires infinite subgroups");
        TheoremOneRow row;
        row.key = member.subgroup.canonical_key();
        row.weight = member.weight;
        row.bracket = est.bracket;
        if (est.bracket.first > rep.threshold)
            row.verdict = TheoremVerdict::Pass;
        else if (est.bracket.second < rep.threshold)
            row.verdict = TheoremVerdict::Contradiction;
        else
            row.verdict = TheoremVerdict::Inconclusive;
        if (row.verdict != TheoremVerdict::Pass) rep.all_pass = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

RecurrenceReport recurrence_counts(int rank, const PermutationAction& action, int x,
                                   const std::vector<int>& U, int window, int rmax,
                                   double delta_hat) {
    if (delta_hat <= 0) throw InvalidInputError("delta_hat must be positive");
    if (window < 0 || rmax < 0) throw InvalidInputError("window and rmax must be nonnegative");
    std::set<int> u_set(U.begin(), U.end());
    for (int u : u_set)
        if (u < 0 || u >= action.size())
            throw InvalidInputError("subset element outside the action's set");
    SubgroupHandle full = SubgroupHandle::full_group(rank);
    auto counts = action_orbit_counts(full, action, x, rmax + window);
    RecurrenceReport rep;
    rep.x = x;
    rep.U.assign(u_set.begin(), u_set.end());
    rep.window = window;
    rep.delta_hat = delta_hat;
    rep.mu_U = static_cast<double>(u_set.size()) / action.size();
    bool first = true;
    for (int r = 0; r <= rmax; ++r) {
        RecurrenceRow row;
        row.r = r;
        for (int n = r; n <= r + window; ++n)
            for (int u : u_set)
                row.count += counts[static_cast<std::size_t>(n)][static_cast<std::size_t>(u)];
        row.normalized = row.count.to_double() * std::exp(-delta_hat * r);
        if (first || row.normalized < rep.infimum) rep.infimum = row.normalized;
        first = false;
        rep.rows.push_back(std::move(row));
    }
    rep.kappa_hat = std::min(rep.infimum, 1.0);
    rep.measure_margin = rep.mu_U - (1.0 - rep.kappa_hat);
    return rep;
}

PipelineReport divergence_pipeline(const SubgroupHandle& Delta, const std::vector<Word>& V,
                                   int R) {
    if (V.empty()) throw InvalidInputError("V must be nonempty");
    for (const Word& v : V)
        if (v.is_identity())
            throw InvalidInputError("V must consist of hyperbolic (nontrivial) elements");
    if (R < 0) throw InvalidInputError("radius must be nonnegative");
    int rank = Delta.rank();
    PipelineReport rep;
    rep.exponent = std::log(static_cast<double>(2 * rank - 1));
    rep.radius = R;
    int lmax = 0, lt_max = 0, dmax = 0;
    for (const Word& v : V) {
        lmax = std::max(lmax, v.length());
        lt_max = std::max(lt_max, cyclic_decompose(v).core.length());
        dmax = std::max(dmax, dist_to_axis(v));
    }
    rep.h_radius = 2 * R + lmax;
    double s = rep.exponent;
    rep.beta = std::exp(0.5 * s * lmax);
    rep.alpha = 2.0 * static_cast<double>(V.size()) * std::max(1, lt_max) /
                (1.0 - std::exp(-s)) * std::exp(2.0 * s * dmax);

    // Q1: truncated P_Delta(delta/2) out to the h-ball radius.
    rep.q1 = poincare_partial(Delta, 0.5 * s, rep.h_radius).partial_sum;

    // Candidate h's: exactly those with a conjugator into V inside ball(R).
    std::set<Word> candidates;
    for_each_ball_word(rank, R, [&](const Word& gamma) {
        Word gi = gamma.inverse();
        for (const Word& v : V) {
            Word h = gi * v * gamma;
            if (Delta.contains(h)) candidates.insert(h);
        }
    });
    rep.h_count = static_cast<long long>(candidates.size());
    rep.empty_chain = candidates.empty();

    double inner_total = 0;
    for (const Word& h : candidates)
        for (const Word& gamma : conjugators_into(h, V, R))
            inner_total += std::exp(-s * gamma.length());
    rep.q2 = inner_total / (rep.alpha * rep.beta);

    double omega_total = 0;
    for_each_ball_word(rank, R, [&](const Word& gamma) {
        Word gi = gamma.inverse();
        for (const Word& v : V) {
            if (Delta.contains(gi * v * gamma)) {
                omega_total += std::exp(-s * gamma.length());
                return;
            }
        }
    });
    rep.q3 = omega_total / (rep.alpha * rep.beta);

    double tol = 1e-9 * std::max({1.0, rep.q1, rep.q2, rep.q3});
    rep.ineq1 = rep.q1 >= rep.q2 - tol;
    rep.ineq2 = rep.q2 >= rep.q3 - tol;
    return rep;
}

DensityFamily irs_density_family(const FiniteIrs& mu, double delta_hat, int R, int depth,
                                 double epsilon) {
    DensityFamily fam;
    fam.rank = mu.rank();
    fam.delta_hat = delta_hat;
    fam.distortion = 1.0;
    std::string full_key = SubgroupHandle::full_group(mu.rank()).canonical_key();
    for (const auto& member : mu.support()) {
        if (member.subgroup.canonical_key() == full_key) {
            fam.by_subgroup.emplace(full_key,
                                    exact_conformal_density(mu.rank(), Word(), depth));
            continue;
        }
        OrbitMeasure w = ws_measure(member.subgroup, delta_hat + epsilon, R);
        fam.by_subgroup.emplace(member.subgroup.canonical_key(), boundary_project(w, depth));
    }
    return fam;
}

SummedCocycleReport summed_cocycle_check(const FiniteIrs& mu, const DensityFamily& family,
                                         int window, int rmax, int shadow_radius) {
    SummedCocycleReport rep;
    rep.delta_hat = family.delta_hat;
    rep.window = window;
    rep.shadow_radius = shadow_radius;
    rep.uncontrolled_approximation = !family.exact_full_group;
    int rank = mu.rank();
    SubgroupHandle full = SubgroupHandle::full_group(rank);

    // Shadow-cover multiplicity of the lattice: annulus elements gamma with
    // |gamma| = n cast the cylinder shadows Cyl(gamma_<=n-R), and every end
    // extends to exactly (2k-1)^R of those per sphere, hence
    // p = (window + 1)(2k-1)^R once r > R.
    rep.p_mult = (window + 1) * std::pow(static_cast<double>(2 * rank - 1), shadow_radius);

    auto member_density = [&](const FiniteIrs::Member& m) -> const CylinderMeasure& {
        auto it = family.by_subgroup.find(m.subgroup.canonical_key());
        if (it == family.by_subgroup.end())
            throw NotFoundError("density family has no density for subgroup " +
                                m.subgroup.canonical_key());
        return it->second;
    };

    // Calibration: c = max over small gamma of pi e^(-deltaHat |gamma|)
    // divided by nu(S_R(o, gamma^-1 o)).
    int calib = std::min(4, rmax);
    rep.c_const = 0;
    for (const auto& member : mu.support()) {
        const CylinderMeasure& nu = member_density(member);
        for_each_member(full, calib, [&](const Word& g) {
            if (g.is_identity()) return;
            double pi = pi_from_measure(nu, family.delta_hat, g.inverse());
            double shadow_mass;
            if (g.length() <= shadow_radius) {
                shadow_mass = nu.total();
            } else {
                Word stem = g.inverse().prefix(g.length() - shadow_radius);
                auto it = nu.masses().find(stem);
                shadow_mass = it == nu.masses().end() ? 0.0 : it->second.value;
            }
            if (shadow_mass <= 0) return;  // no lower-bound information
            rep.c_const = std::max(rep.c_const,
                                   pi * std::exp(-family.delta_hat * g.length()) / shadow_mass);
        });
    }
    if (rep.c_const <= 0) rep.c_const = 1.0;
    rep.c_prime = rep.c_const * rep.p_mult * std::exp(family.delta_hat * window);

    double d12 = std::pow(family.distortion, 12);
    rep.all_ok = true;
    auto annuli = sphere_counts(full, rmax + window);
    for (int r = 0; r <= rmax; ++r) {
        SummedCocycleRow row;
        row.r = r;
        double worst_member_sum = 0;
        for (const auto& member : mu.support()) {
            const CylinderMeasure& nu = member_density(member);
            double sum_pi = 0;
            for_each_annulus_member(full, r, r + window, [&](const Word& g) {
                sum_pi += pi_from_measure(nu, family.delta_hat, g.inverse());
            });
            worst_member_sum = std::max(worst_member_sum, sum_pi);
            row.sum_pi += member.weight * sum_pi;
        }
        BigInt e_count(0);
        for (int n = r; n <= r + window; ++n) e_count += annuli[static_cast<std::size_t>(n)];
        row.count_e = e_count.to_double();
        row.bound = rep.c_prime * std::exp(family.delta_hat * r);
        row.margin1 = row.bound - worst_member_sum;
        row.rhs2 = 2.0 * d12 * row.sum_pi;
        row.margin2 = row.rhs2 - row.count_e;
        if (row.margin1 < 0 || row.margin2 < 0) rep.all_ok = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace hypercrit
