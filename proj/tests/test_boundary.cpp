#include <doctest.h>

#include <cmath>
#include <random>

#include "hypercrit/cylinder.hpp"
#include "hypercrit/density.hpp"
#include "hypercrit/errors.hpp"
#include "test_util.hpp"

using namespace hypercrit;

namespace {

Word W(const std::string& s, int rank = 2) { return Word::parse(s, rank); }

SubgroupHandle mod2_kernel() { return SubgroupHandle::kernel_finite(2, {{1, 0}, {0, 1}}); }

}  // namespace

TEST_CASE("shadows on the tree") {
    Shadow s0 = shadow(2, W(""), W("ab"), 0);
    CHECK_FALSE(s0.set.full);
    REQUIRE(s0.set.stems.size() == 1);
    CHECK(s0.set.stems[0].str() == "ab");

    Shadow s1 = shadow(2, W(""), W("ab"), 1);
    REQUIRE(s1.set.stems.size() == 1);
    CHECK(s1.set.stems[0].str() == "a");

    Shadow sful = shadow(2, W(""), W(""), 2);
    CHECK(sful.set.full);

    // brute check: end membership against ray tracing to depth 5
    std::mt19937 rng(3);
    for (int t = 0; t < 60; ++t) {
        Word x = testutil::random_word_up_to(rng, 2, 4);
        Word y = testutil::random_word_up_to(rng, 2, 4);
        int R = static_cast<int>(rng() % 3);
        Shadow s = shadow(2, x, y, R);
        for (int e = 0; e < 20; ++e) {
            Word stem = testutil::random_reduced_word(rng, 2, 5);
            Letter tail_letter = stem.last();
            TreeBoundaryPoint local(TreeBoundaryPoint::make(stem, Word::from_reduced({tail_letter})));
            // ray from x to x.local passes the vertices x.prefixes
            TreeBoundaryPoint xi = local.translated(x);
            int closest = 1 << 20;
            Word wrel = x.inverse() * y;
            for (int d = 0; d <= 12; ++d) {
                std::vector<Letter> pref;
                for (int i = 0; i < d; ++i) pref.push_back(local.letter_at(i));
                closest = std::min(closest, tree_dist(Word::from_reduced(pref), wrel));
            }
            bool inside = closest <= R;
            CHECK(s.set.contains_end(local) == inside);
            (void)xi;
        }
    }
}

TEST_CASE("cylinder canonicalization") {
    // merging a complete family yields the parent
    std::vector<Word> children;
    for (const char* s : {"ab", "aa", "aB"}) children.push_back(W(s));
    CylinderSet merged = canonical_cylinder_set(2, children);
    REQUIRE(merged.stems.size() == 1);
    CHECK(merged.stems[0].str() == "a");

    // idempotent
    CylinderSet again = canonical_cylinder_set(2, merged.stems);
    CHECK(again.stems == merged.stems);

    // nested stems collapse
    CylinderSet nested = canonical_cylinder_set(2, {W("a"), W("ab")});
    REQUIRE(nested.stems.size() == 1);
    CHECK(nested.stems[0].str() == "a");

    // all four depth-1 cylinders = the whole boundary
    CylinderSet whole = canonical_cylinder_set(2, {W("a"), W("A"), W("b"), W("B")});
    CHECK(whole.full);

    // union agrees with membership sampling
    std::mt19937 rng(19);
    for (int t = 0; t < 30; ++t) {
        std::vector<Word> s1, s2;
        for (int i = 0; i < 3; ++i) s1.push_back(testutil::random_reduced_word(rng, 2, 1 + static_cast<int>(rng() % 3)));
        for (int i = 0; i < 3; ++i) s2.push_back(testutil::random_reduced_word(rng, 2, 1 + static_cast<int>(rng() % 3)));
        CylinderSet a = canonical_cylinder_set(2, s1);
        CylinderSet b = canonical_cylinder_set(2, s2);
        CylinderSet u = cylinder_union(a, b);
        CylinderSet i = cylinder_intersection(a, b);
        for (int e = 0; e < 40; ++e) {
            TreeBoundaryPoint xi = TreeBoundaryPoint::make(
                testutil::random_word_up_to(rng, 2, 4), testutil::random_reduced_word(rng, 2, 1));
            CHECK(u.contains_end(xi) == (a.contains_end(xi) || b.contains_end(xi)));
            CHECK(i.contains_end(xi) == (a.contains_end(xi) && b.contains_end(xi)));
        }
    }
}

TEST_CASE("shadow cover check") {
    SubgroupHandle full = SubgroupHandle::full_group(2);
    ShadowCoverReport part = shadow_cover_check(full, 0, 0, 3);
    CHECK(part.covered);
    CHECK(part.max_multiplicity == 1);  // sphere shadows partition the boundary
    CHECK(part.min_multiplicity == 1);

    ShadowCoverReport rep = shadow_cover_check(full, 1, 1, 4);
    CHECK(rep.covered);
    CHECK(rep.max_multiplicity <= 9);
    CHECK(rep.max_multiplicity >= 1);

    ShadowCoverReport idx2 = shadow_cover_check(mod2_kernel(), 2, 2, 5);
    CHECK(idx2.covered);
}

TEST_CASE("busemann shadow bounds") {
    BusemannShadowReport r0 = busemann_shadow_bounds_check(2, W(""), W("ab"), 0, 5);
    CHECK_FALSE(r0.violation);
    CHECK(r0.max_beta == 2);  // upper bound tight on Cyl(ab)
    CHECK(r0.min_beta == 2);

    BusemannShadowReport r1 = busemann_shadow_bounds_check(2, W(""), W("ab"), 1, 5);
    CHECK_FALSE(r1.violation);
    CHECK(r1.max_beta == 2);
    CHECK(r1.min_beta == 0);  // lower bound tight at a b^-1 a^inf

    CHECK_THROWS_AS(busemann_shadow_bounds_check(2, W("a"), W("a"), 1, 4), InvalidInputError);

    std::mt19937 rng(29);
    for (int t = 0; t < 50; ++t) {
        Word x = testutil::random_word_up_to(rng, 2, 6);
        Word y = testutil::random_word_up_to(rng, 2, 6);
        if (x == y) continue;
        BusemannShadowReport rep =
            busemann_shadow_bounds_check(2, x, y, static_cast<int>(rng() % 4), 4);
        CHECK_FALSE(rep.violation);
    }
}

TEST_CASE("ws measures") {
    SubgroupHandle full = SubgroupHandle::full_group(2);
    OrbitMeasure m = ws_measure(full, std::log(4.0), 2);
    REQUIRE(!m.atoms.empty());
    CHECK(m.atoms[0].first.is_identity());
    CHECK(m.atoms[0].second == doctest::Approx(1.0 / 2.75).epsilon(1e-12));
    double mass_a = 0;
    for (const auto& [w, wt] : m.atoms)
        if (!w.is_identity() && w.letter(0) == W("a").letter(0)) mass_a += wt;
    CHECK(mass_a == doctest::Approx(0.4375 / 2.75).epsilon(1e-9));  // (1/4 + 3/16) / 2.75

    SubgroupHandle cyc = SubgroupHandle::stallings(2, {W("a")});
    OrbitMeasure mc = ws_measure(cyc, 1.0, 1);
    REQUIRE(mc.atoms.size() == 3);
    double z = 1 + 2 * std::exp(-1.0);
    CHECK(mc.atoms[0].second == doctest::Approx(1.0 / z));

    OrbitMeasure deg = ws_measure(SubgroupHandle::stallings(2, std::vector<Word>{}), 1.0, 4);
    CHECK(deg.degenerate);
}

TEST_CASE("boundary projection") {
    SubgroupHandle full = SubgroupHandle::full_group(2);
    OrbitMeasure m = ws_measure(full, std::log(4.0), 2);
    CylinderMeasure nu = boundary_project(m, 1);
    CHECK(nu.total() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nu.mass(W("a")).value == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(nu.mass(W("b")).value == doctest::Approx(0.25).epsilon(1e-9));

    CylinderMeasure nu3 = boundary_project(m, 3);
    CHECK(nu3.additivity_defect() <= 1e-9);
    CHECK(nu3.total() == doctest::Approx(1.0).epsilon(1e-9));
    // symmetric subgroup: depth-1 masses all equal
    for (const char* s : {"a", "A", "b", "B"})
        CHECK(nu3.mass(W(s)).value == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("exact conformal density") {
    CylinderMeasure nu_o = exact_conformal_density(2, W(""), 3);
    CHECK(nu_o.is_exact());
    CHECK(nu_o.mass(W("a")).exact->to_string() == "1/4");
    CHECK(nu_o.mass(W("ab")).exact->to_string() == "1/12");
    CHECK(nu_o.total_mass().exact->to_string() == "1");
    CHECK(nu_o.additivity_defect() == 0.0);

    CylinderMeasure nu_a = exact_conformal_density(2, W("a"), 3);
    CHECK(nu_a.mass(W("a")).exact->to_string() == "3/4");
    CHECK(nu_a.total_mass().exact->to_string() == "1");

    // conformal property, cylinder-exact: nu_x(C) = sum over refinement of
    // 3^beta nu_o; equality of rationals for |x| <= 4, depth 6
    std::mt19937 rng(43);
    for (int t = 0; t < 8; ++t) {
        Word x = testutil::random_word_up_to(rng, 2, 4);
        CylinderMeasure nu_x = exact_conformal_density(2, x, 6);
        CylinderMeasure base = exact_conformal_density(2, W(""), 6);
        for (int d = 1; d <= 3; ++d) {
            for (int reps = 0; reps < 10; ++reps) {
                Word stem = testutil::random_reduced_word(rng, 2, d);
                Rational direct = *nu_x.mass(stem).exact;
                // refine to depth 6 and integrate the derivative
                Rational sum;
                for_each_sphere_word(2, 6, [&](const Word& leaf) {
                    bool nested = leaf.length() >= stem.length() &&
                                  common_prefix_len(leaf, stem) == stem.length();
                    if (!nested) return;
                    int c = common_prefix_len(leaf, x);
                    int e = 2 * c - x.length();
                    Rational deriv = e >= 0
                        ? Rational(BigInt::pow(BigInt(3), static_cast<unsigned>(e)), BigInt(1))
                        : Rational(BigInt(1), BigInt::pow(BigInt(3), static_cast<unsigned>(-e)));
                    sum += deriv * *base.mass(leaf).exact;
                });
                CHECK(direct == sum);
            }
        }
    }
}

TEST_CASE("conjugation property of the full-group density") {
    // g_* nu_(g^-1 x) = nu_x, cylinder-exact, for |g| <= 4: evaluated via
    // nu_(g^-1 x)(g^-1 C) = nu_x(C) over cylinders C deep enough to resolve.
    std::mt19937 rng(47);
    for (int t = 0; t < 20; ++t) {
        Word g = testutil::random_word_up_to(rng, 2, 4);
        Word x = testutil::random_word_up_to(rng, 2, 2);
        Word gInvX = g.inverse() * x;
        CylinderMeasure nu_x = exact_conformal_density(2, x, 10);
        CylinderMeasure nu_conj = exact_conformal_density(2, gInvX, 10);
        for (int reps = 0; reps < 6; ++reps) {
            // cylinder below g, so that g^-1 C is again a cylinder: C = Cyl(g w)
            Word w;
            do {
                w = testutil::random_reduced_word(rng, 2, 6);
            } while (!g.is_identity() && w.letter(0) == letter_inverse(g.last()));
            Word stem = g * w;
            CHECK(*nu_x.mass(stem).exact == *nu_conj.mass(w).exact);
        }
    }
}

TEST_CASE("density ladder is reported at every rung") {
    auto ladder = density_ladder(mod2_kernel(), std::log(3.0), 6, 2);
    REQUIRE(ladder.size() == density_ladder_epsilons().size());
    for (const auto& rung : ladder) {
        CHECK(rung.projected.total() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(rung.projected.additivity_defect() <= 1e-9);
    }
}

TEST_CASE("shadow lemma ratios") {
    SubgroupHandle full = SubgroupHandle::full_group(2);
    CylinderMeasure nu = exact_conformal_density(2, W(""), 9);
    ShadowLemmaReport r0 = shadow_lemma_check(full, std::log(3.0), 3, 0, 8, nu);
    CHECK(r0.all_exact);
    for (const auto& row : r0.rows) {
        REQUIRE(row.exact.has_value());
        CHECK(row.exact->to_string() == "3/4");
    }

    ShadowLemmaReport r1 = shadow_lemma_check(full, std::log(3.0), 3, 1, 8, nu);
    CHECK(r1.min_ratio >= 0.75 - 1e-12);
    CHECK(r1.max_ratio <= 3.0 + 1e-12);

    // spread stability: same min/max at rmax 6 and rmax 10
    ShadowLemmaReport r6 = shadow_lemma_check(full, std::log(3.0), 3, 1, 6, nu);
    ShadowLemmaReport r10 = shadow_lemma_check(full, std::log(3.0), 3, 1, 10, nu);
    CHECK(r6.min_ratio == doctest::Approx(r10.min_ratio));
    CHECK(r6.max_ratio == doctest::Approx(r10.max_ratio));

    CHECK_THROWS_AS(shadow_lemma_check(full, std::log(3.0), 3, 0, 12, nu), InvalidInputError);
}

TEST_CASE("quasi cocycle on the exact density") {
    DensityFamily fam = exact_full_group_family(2);
    SubgroupHandle full = SubgroupHandle::full_group(2);
    std::mt19937 rng(53);
    for (int t = 0; t < 30; ++t) {
        Word g = testutil::random_word_up_to(rng, 2, 5);
        CocycleValue v = quasi_cocycle_pi(fam, full, g);
        REQUIRE(v.exact.has_value());
        CHECK(v.exact->to_string() == "1");
        Word h = testutil::random_word_up_to(rng, 2, 5);
        CocycleResidual res = quasi_cocycle_residual(fam, full, g, h);
        CHECK(res.residual <= 1e-12);
    }
}

TEST_CASE("quasi cocycle over projected densities of a normal subgroup") {
    SubgroupHandle k2 = mod2_kernel();
    DensityFamily fam;
    fam.rank = 2;
    fam.delta_hat = std::log(3.0);
    fam.by_subgroup.emplace(k2.canonical_key(),
                            boundary_project(ws_measure(k2, std::log(3.0) + 0.01, 8), 5));
    std::mt19937 rng(59);
    for (int t = 0; t < 10; ++t) {
        Word g = testutil::random_word_up_to(rng, 2, 3);
        Word h = testutil::random_word_up_to(rng, 2, 3);
        // hHh^-1 = H so the relation reduces to pi(gh) ~ pi(g) pi(h)
        CocycleResidual res = quasi_cocycle_residual(fam, k2, g, h);
        CHECK(std::isfinite(res.residual));
        CHECK(res.pi_h > 0);
    }
    // missing density -> not-found naming the conjugate
    SubgroupHandle cyc = SubgroupHandle::stallings(2, {W("a")});
    CHECK_THROWS_AS(quasi_cocycle_pi(fam, cyc, W("a")), NotFoundError);
}
