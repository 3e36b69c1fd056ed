// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hypercrit/conjugacy.hpp"
#include "hypercrit/counting.hpp"
#include "hypercrit/cylinder.hpp"
#include "hypercrit/density.hpp"
#include "hypercrit/irs.hpp"
#include "hypercrit/series.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace hypercrit;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    int id;
    const char* name;
    double budget;
    Clock::time_point start;
    bool ok = true;
    std::string detail;

    Criterion(int id_, const char* name_, double budget_)
        : id(id_), name(name_), budget(budget_), start(Clock::now()) {}

    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
    void finish() {
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (ok && secs > budget) {
            ok = false;
            detail = "over time budget (" + std::to_string(secs) + "s)";
        }
        std::printf("%s  %2d  %-34s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", id, name, secs,
                    ok ? "" : " -- ", ok ? "" : detail.c_str());
        if (!ok) ++failures;
    }
};

Word W(const std::string& s) { return Word::parse(s, 2); }

SubgroupHandle commutator2() {
    return SubgroupHandle::kernel_abelian(2, {{1, 0}, {0, 1}});
}

SubgroupHandle mod2_kernel() { return SubgroupHandle::kernel_finite(2, {{1, 0}, {0, 1}}); }

PermutationAction coset3_action() {
    return PermutationAction::make(2, {{1, 2, 0}, {1, 0, 2}});
}

std::vector<std::pair<Word, std::vector<Word>>> lemma_corpus() {
    std::mt19937 rng(421);
    std::vector<std::pair<Word, std::vector<Word>>> out;
    while (out.size() < 50) {
        Word h = testutil::random_word_up_to(rng, 2, 5);
        if (h.is_identity()) continue;
        std::vector<Word> K;
        int conjugates = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < conjugates; ++i) {
            Word u = testutil::random_word_up_to(rng, 2, 3);
            Word k = u * h * u.inverse();
            if (std::find(K.begin(), K.end(), k) == K.end()) K.push_back(k);
        }
        if (rng() % 3 == 0) {
            Word extra = testutil::random_word_up_to(rng, 2, 4);
            if (!extra.is_identity() && std::find(K.begin(), K.end(), extra) == K.end())
                K.push_back(extra);
        }
        out.push_back({h, K});
    }
    return out;
}

void criterion_1_growth() {
    Criterion c(1, "growth exactness", 1.0);
    auto counts = sphere_counts(SubgroupHandle::full_group(2), 30);
    BigInt expect(4);
    c.require(counts[0] == BigInt(1), "sphere 0");
    for (int n = 1; n <= 30; ++n) {
        c.require(counts[static_cast<std::size_t>(n)] == expect,
                  "sphere " + std::to_string(n));
        expect *= BigInt(3);
    }
    c.finish();
}

void criterion_2_lattice_exponent() {
    Criterion c(2, "uniform lattice exponent ln 3", 1.0);
    auto counts = sphere_counts(SubgroupHandle::full_group(2), 20);
    for (int n = 2; n <= 20; ++n) {
        Rational ratio(counts[static_cast<std::size_t>(n)],
                       counts[static_cast<std::size_t>(n - 1)]);
        c.require(ratio == Rational(3), "count ratio at R=" + std::to_string(n));
    }
    ExponentEstimate est = critical_exponent_estimate(SubgroupHandle::full_group(2), 20);
    c.require(est.exact_ratio, "exact ratio detection");
    c.require(est.slope == std::log(3.0), "slope must be ln 3 exactly");
    c.require(est.bracket.first == est.slope && est.bracket.second == est.slope, "bracket");
    c.finish();
}

void criterion_3_main_theorem() {
    Criterion c(3, "main theorem desk check", 30.0);
    FiniteIrs mu = irs_from_normal(commutator2());
    TheoremOneReport rep = theorem_one_check(mu, 40);
    c.require(rep.rows.size() == 1, "single support member");
    c.require(rep.rows[0].bracket.first >= 0.95, "bracket lower end >= 0.95");
    c.require(rep.threshold < 0.5494 && rep.threshold > 0.5493, "threshold ln3/2");
    c.require(rep.rows[0].verdict == TheoremVerdict::Pass, "verdict PASS");
    c.finish();
}

void criterion_4_lemma_suite() {
    Criterion c(4, "half-exponent and shortest-element", 60.0);
    for (const auto& [h, K] : lemma_corpus()) {
        for (double s : {0.5, std::log(3.0)}) {
            HalfExponentReport half = half_exponent_check(2, h, K, s, 10);
            c.require(!half.violation, "half-exponent violation at h=" + h.str());
            c.require(half.checked > 0, "empty E for h=" + h.str());
            ShortestElementReport sh = shortest_element_bound(2, h, K, s, 10);
            c.require(sh.series_value <= sh.bound_value + 1e-12,
                      "shortest-element bound at h=" + h.str());
        }
    }
    c.finish();
}

void criterion_5_shadow_lemma() {
    Criterion c(5, "shadow lemma exactness", 10.0);
    SubgroupHandle full = SubgroupHandle::full_group(2);
    CylinderMeasure nu = exact_conformal_density(2, Word(), 8);
    ShadowLemmaReport r0 = shadow_lemma_check(full, std::log(3.0), 3, 0, 8, nu);
    c.require(r0.all_exact, "exact rational ratios");
    Rational expect(3, 4);
    for (const auto& row : r0.rows)
        c.require(row.exact && *row.exact == expect, "ratio at g=" + row.g.str());
    ShadowLemmaReport r1 = shadow_lemma_check(full, std::log(3.0), 3, 1, 8, nu);
    c.require(r1.min_ratio >= 0.75 - 1e-12, "R=1 min ratio");
    c.require(r1.max_ratio <= 3.0 + 1e-12, "R=1 max ratio");
    c.finish();
}

void criterion_6_busemann_shadow() {
    Criterion c(6, "busemann-shadow bounds", 30.0);
    std::mt19937 rng(977);
    long long samples = 0;
    while (samples < 10000) {
        Word x = testutil::random_word_up_to(rng, 2, 6);
        Word y = testutil::random_word_up_to(rng, 2, 6);
        if (x == y) continue;
        int R = static_cast<int>(rng() % 4);
        BusemannShadowReport rep = busemann_shadow_bounds_check(2, x, y, R, 4);
        c.require(!rep.violation, "violation at x=" + x.str() + " y=" + y.str() +
                                      " R=" + std::to_string(R));
        samples += rep.samples;
    }
    c.finish();
}

void criterion_7_covering() {
    Criterion c(7, "shadow covering lemma", 10.0);
    ShadowCoverReport a = shadow_cover_check(SubgroupHandle::full_group(2), 1, 1, 4);
    ShadowCoverReport b = shadow_cover_check(SubgroupHandle::full_group(2), 1, 1, 4);
    c.require(a.covered, "covered");
    c.require(a.max_multiplicity >= 1, "multiplicity finite and positive");
    c.require(a.max_multiplicity == b.max_multiplicity &&
                  a.min_multiplicity == b.min_multiplicity,
              "deterministic across runs");
    c.finish();
}

void criterion_8_quasi_cocycle() {
    Criterion c(8, "quasi-cocycle identity", 10.0);
    DensityFamily fam = exact_full_group_family(2);
    SubgroupHandle full = SubgroupHandle::full_group(2);
    std::vector<Word> ball;
    for_each_ball_word(2, 4, [&](const Word& w) { ball.push_back(w); });
    Rational one(1);
    for (const Word& g : ball) {
        CocycleValue v = quasi_cocycle_pi(fam, full, g);
        c.require(v.exact && *v.exact == one, "pi(g) != 1 at g=" + g.str());
    }
    for (const Word& g : ball) {
        for (const Word& h : ball) {
            CocycleResidual r = quasi_cocycle_residual(fam, full, g, h);
            if (r.residual > 1e-12) {
                c.require(false, "residual " + std::to_string(r.residual) + " at g=" +
                                     g.str() + " h=" + h.str());
                break;
            }
        }
        if (!c.ok) break;
    }
    c.finish();
}

void criterion_9_recurrence() {
    Criterion c(9, "quantitative recurrence", 10.0);
    PermutationAction a = coset3_action();
    RecurrenceReport rep = recurrence_counts(2, a, 0, {0, 1}, 1, 12, std::log(3.0));
    c.require(rep.infimum > 0, "normalized infimum positive");
    for (int r = 0; r <= 8; ++r) {
        long long brute = 0;
        for_each_ball_word(2, r + 1, [&](const Word& w) {
            if (w.length() < r) return;
            int p = a.act_word(0, w);
            if (p == 0 || p == 1) ++brute;
        });
        c.require(rep.rows[static_cast<std::size_t>(r)].count == BigInt(brute),
                  "count mismatch at r=" + std::to_string(r));
    }
    c.finish();
}

void criterion_10_pipeline() {
    Criterion c(10, "divergence pipeline", 60.0);
    PipelineReport rep = divergence_pipeline(mod2_kernel(), {W("aa")}, 8);
    c.require(!rep.empty_chain, "chain nonempty");
    c.require(rep.ineq1, "P_Delta(delta/2) >= (1/ab) sum_h P(delta;h,V)");
    c.require(rep.ineq2, "sum_h P(delta;h,V) >= P(delta;Delta,Omega_V)");
    c.require(rep.q1 > 0 && rep.q2 > 0 && rep.q3 > 0, "positive values");
    c.finish();
}

void criterion_11_lambda0() {
    Criterion c(11, "lambda0 formula", 1.0);
    c.require(lambda0_from_delta(2.0, 2.0) == 0.0, "co-amenable branch");
    c.require(lambda0_from_delta(0.5, 2.0) == 1.0, "flat branch");
    c.require(lambda0_from_delta(1.5, 2.0) == 0.75, "quadratic branch");
    for (double d : {1.0, 2.0, 3.0}) {
        double lo = lambda0_from_delta(d / 2, d);
        double hi = lambda0_from_delta(std::nextafter(d / 2, d), d);
        c.require(std::abs(lo - hi) <= 1e-12, "continuity at the branch point");
    }
    c.finish();
}

void criterion_12_oracles() {
    Criterion c(12, "oracle equivalence", 300.0);
    std::vector<SubgroupHandle> corpus = {
        SubgroupHandle::full_group(2),
        SubgroupHandle::stallings(2, {W("a")}),
        SubgroupHandle::stallings(2, {W("aa"), W("ab")}),
        SubgroupHandle::stallings(2, {W("ab"), W("ba")}),
        commutator2(),
        mod2_kernel(),
        SubgroupHandle::coset_stabilizer(coset3_action(), 0),
    };
    for (const auto& H : corpus) {
        auto counts = sphere_counts(H, 8);
        BigInt ball(0);
        for (int n = 0; n <= 8; ++n) {
            c.require(counts[static_cast<std::size_t>(n)] ==
                          BigInt(oracle::brute_sphere_count(H, n)),
                      "sphere count mismatch");
            ball += counts[static_cast<std::size_t>(n)];
        }
        c.require(annulus_count(H, 0, 8).count == ball, "annulus vs sphere sum");
    }
    // E_{r,k} via the action DP
    PermutationAction a = coset3_action();
    auto counts = action_orbit_counts(SubgroupHandle::full_group(2), a, 1, 8);
    for (int n = 0; n <= 8; ++n) {
        auto brute = oracle::brute_action_counts(a, 1, n);
        for (int p = 0; p < a.size(); ++p) {
            long long expect = brute.contains(p) ? brute[p] : 0;
            c.require(counts[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)] ==
                          BigInt(expect),
                      "action count");
        }
    }
    // conjugation series enumeration
    std::mt19937 rng(1201);
    for (int t = 0; t < 25; ++t) {
        Word h = testutil::random_word_up_to(rng, 2, 4);
        if (h.is_identity()) continue;
        Word u = testutil::random_word_up_to(rng, 2, 3);
        std::vector<Word> V{u * h * u.inverse()};
        if (t % 2) V.push_back(testutil::random_word_up_to(rng, 2, 4));
        c.require(conjugators_into(h, V, 10) == oracle::brute_conjugators(2, h, V, 10),
                  "conjugator enumeration at h=" + h.str());
    }
    c.finish();
}

}  // namespace

int main() {
    criterion_1_growth();
    criterion_2_lattice_exponent();
    criterion_3_main_theorem();
    criterion_4_lemma_suite();
    criterion_5_shadow_lemma();
    criterion_6_busemann_shadow();
    criterion_7_covering();
    criterion_8_quasi_cocycle();
    criterion_9_recurrence();
    criterion_10_pipeline();
    criterion_11_lambda0();
    criterion_12_oracles();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
