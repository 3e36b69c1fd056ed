#include <doctest.h>

#include <random>

#include "hypercrit/counting.hpp"
#include "hypercrit/errors.hpp"
#include "hypercrit/subgroup.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace hypercrit;

namespace {

Word W(const std::string& s, int rank = 2) { return Word::parse(s, rank); }

SubgroupHandle commutator_subgroup(int rank) {
    std::vector<std::vector<long long>> images;
    for (int g = 0; g < rank; ++g) {
        std::vector<long long> v(static_cast<std::size_t>(rank), 0);
        v[static_cast<std::size_t>(g)] = 1;
        images.push_back(v);
    }
    return SubgroupHandle::kernel_abelian(rank, images);
}

SubgroupHandle mod2_kernel() {
    // F_2 -> Z/2, a -> 1, b -> 0, realized as a 2-point action.
    return SubgroupHandle::kernel_finite(2, {{1, 0}, {0, 1}});
}

PermutationAction s3_action() {
    // a -> (0 1 2), b -> (0 1)
    return PermutationAction::make(2, {{1, 2, 0}, {1, 0, 2}});
}

}  // namespace

TEST_CASE("stallings folding basics") {
    SubgroupHandle a = SubgroupHandle::stallings(2, {W("a")});
    CHECK(a.graph().size() == 1);
    CHECK(a.contains(W("aaa")));
    CHECK_FALSE(a.contains(W("b")));

    SubgroupHandle whole = SubgroupHandle::stallings(2, {W("a"), W("b")});
    CHECK(whole.graph().size() == 1);
    CHECK(whole.has_finite_index());
    CHECK(whole.finite_index() == 1);
    CHECK(whole.canonical_key() == SubgroupHandle::full_group(2).canonical_key());

    SubgroupHandle h = SubgroupHandle::stallings(2, {W("aa"), W("ab")});
    CHECK(h.graph().size() == 2);
    CHECK_FALSE(h.contains(W("a")));
    CHECK(h.contains(W("aaab")));  // a^3 b = a^2 . ab
    // idempotent under re-folding through the extracted basis
    SubgroupHandle refold = SubgroupHandle::stallings(2, h.generators());
    CHECK(refold.canonical_key() == h.canonical_key());
}

TEST_CASE("membership agrees with generator-product search") {
    std::mt19937 rng(31);
    std::vector<std::vector<Word>> gen_sets = {
        {W("a")}, {W("aa"), W("ab")}, {W("ab"), W("ba")}, {W("aba"), W("bb")}};
    for (const auto& gens : gen_sets) {
        SubgroupHandle h = SubgroupHandle::stallings(2, gens);
        auto products = oracle::generated_set(gens, 12);
        for (int i = 0; i < 200; ++i) {
            Word w = testutil::random_word_up_to(rng, 2, 10);
            bool in_products = products.contains(w);
            // product search is one-sided at finite depth: membership may
            // exceed it only for words the search has not reached yet
            if (in_products) CHECK(h.contains(w));
            if (!h.contains(w)) CHECK_FALSE(in_products);
        }
        // and on the corpus the two agree exactly for short words
        for_each_ball_word(2, 6, [&](const Word& w) {
            CHECK(h.contains(w) == products.contains(w));
        });
    }
}

TEST_CASE("kernel membership agrees with direct image computation") {
    // independent oracle: recompute images in test code
    std::mt19937 rng(71);
    SubgroupHandle comm = commutator_subgroup(2);
    SubgroupHandle k2 = mod2_kernel();
    for (int i = 0; i < 200; ++i) {
        Word w = testutil::random_word_up_to(rng, 2, 10);
        long long ea = 0, eb = 0;
        for (int j = 0; j < w.length(); ++j) {
            long long sgn = letter_is_inverse(w.letter(j)) ? -1 : 1;
            (letter_gen(w.letter(j)) == 0 ? ea : eb) += sgn;
        }
        CHECK(comm.contains(w) == (ea == 0 && eb == 0));
        CHECK(k2.contains(w) == (ea % 2 == 0));
    }
}

TEST_CASE("kernel membership") {
    SubgroupHandle comm = commutator_subgroup(2);
    CHECK(comm.contains(W("abAB")));
    CHECK_FALSE(comm.contains(W("a")));
    CHECK(comm.contains(W("")));

    SubgroupHandle k2 = mod2_kernel();
    CHECK(k2.contains(W("aa")));
    CHECK(k2.contains(W("b")));
    CHECK_FALSE(k2.contains(W("a")));
    CHECK_FALSE(k2.contains(W("ab")));
    CHECK(k2.has_finite_index());
    CHECK(k2.finite_index() == 2);
}

TEST_CASE("coset stabilizer membership and transport") {
    PermutationAction a = s3_action();
    SubgroupHandle stab0 = SubgroupHandle::coset_stabilizer(a, 0);
    CHECK(stab0.finite_index() == 3);
    CHECK(stab0.contains(W("b")) == (a.act_word(0, W("b")) == 0));
    // stabilizer transport: g Stab(p) g^-1 = Stab(p . g^-1)
    std::mt19937 rng(17);
    for (int i = 0; i < 50; ++i) {
        Word g = testutil::random_word_up_to(rng, 2, 6);
        SubgroupHandle conj = stab0.conjugated(g);
        SubgroupHandle direct =
            SubgroupHandle::coset_stabilizer(a, a.act_word(0, g.inverse()));
        CHECK(conj.canonical_key() == direct.canonical_key());
        Word w = testutil::random_word_up_to(rng, 2, 8);
        CHECK(conj.contains(g * w * g.inverse()) == stab0.contains(w));
    }
}

TEST_CASE("coset stabilizer in a non-transitive action restricts to the orbit") {
    // a acts as (0 1)(2 3), b fixes everything: the orbit of 0 is {0, 1}
    PermutationAction a = PermutationAction::make(2, {{1, 0, 3, 2}, {0, 1, 2, 3}});
    SubgroupHandle stab = SubgroupHandle::coset_stabilizer(a, 0);
    CHECK(stab.finite_index() == 2);
    CHECK(stab.contains(Word::parse("aa", 2)));
    CHECK(stab.contains(Word::parse("b", 2)));
    CHECK_FALSE(stab.contains(Word::parse("a", 2)));
}

TEST_CASE("sphere counts: full group closed form") {
    for (int rank : {2, 3, 4}) {
        SubgroupHandle full = SubgroupHandle::full_group(rank);
        auto counts = sphere_counts(full, 30);
        CHECK(counts[0] == BigInt(1));
        BigInt expect(2 * rank);
        for (int n = 1; n <= 30; ++n) {
            CHECK(counts[static_cast<std::size_t>(n)] == expect);
            expect *= BigInt(2 * rank - 1);
        }
    }
}

TEST_CASE("sphere counts match brute force") {
    std::vector<SubgroupHandle> corpus = {
        SubgroupHandle::full_group(2),
        SubgroupHandle::stallings(2, {W("a")}),
        SubgroupHandle::stallings(2, {W("aa"), W("ab")}),
        SubgroupHandle::stallings(2, {W("ab"), W("ba")}),
        commutator_subgroup(2),
        mod2_kernel(),
        SubgroupHandle::coset_stabilizer(s3_action(), 0),
        SubgroupHandle::kernel_abelian(2, {{1}, {1}}),
        // non-unit image entries exercise the coordinate return bounds
        SubgroupHandle::kernel_abelian(2, {{2, 1}, {1, 1}}),
        SubgroupHandle::kernel_abelian(2, {{3}, {-2}}),
    };
    for (const auto& H : corpus) {
        auto counts = sphere_counts(H, 8);
        for (int n = 0; n <= 8; ++n)
            CHECK(counts[static_cast<std::size_t>(n)] ==
                  BigInt(oracle::brute_sphere_count(H, n)));
    }
    // a rank-3 sample of each carrier family
    std::vector<SubgroupHandle> rank3 = {
        SubgroupHandle::full_group(3),
        SubgroupHandle::stallings(3, {W("a", 3), W("b", 3), W("cc", 3)}),
        SubgroupHandle::kernel_abelian(3, {{1, 0}, {0, 1}, {1, 1}}),
    };
    for (const auto& H : rank3) {
        auto counts = sphere_counts(H, 6);
        for (int n = 0; n <= 6; ++n)
            CHECK(counts[static_cast<std::size_t>(n)] ==
                  BigInt(oracle::brute_sphere_count(H, n)));
    }
}

TEST_CASE("folding is presentation independent") {
    // three presentations of <a^2, ab>
    SubgroupHandle h1 = SubgroupHandle::stallings(2, {W("aa"), W("ab")});
    SubgroupHandle h2 = SubgroupHandle::stallings(2, {W("ab"), W("aa")});
    SubgroupHandle h3 = SubgroupHandle::stallings(2, {W("aa"), W("aaab")});  // a^3 b = a^2 . ab
    CHECK(h1.canonical_key() == h2.canonical_key());
    CHECK(h1.canonical_key() == h3.canonical_key());
    // and a redundant generator changes nothing
    SubgroupHandle h4 = SubgroupHandle::stallings(2, {W("aa"), W("ab"), W("abab")});
    CHECK(h1.canonical_key() == h4.canonical_key());
}

TEST_CASE("kernelAbelian examples from the commutator subgroup") {
    SubgroupHandle comm = commutator_subgroup(2);
    CHECK(sphere_count(comm, 4) == BigInt(8));
    AnnulusCount a = annulus_count(comm, 0, 4);
    CHECK(a.count == BigInt(9));  // 1 + 0 + 0 + 0 + 8
}

TEST_CASE("member enumeration matches brute force") {
    std::vector<SubgroupHandle> corpus = {
        SubgroupHandle::stallings(2, {W("a")}),
        SubgroupHandle::stallings(2, {W("aa"), W("ab")}),
        commutator_subgroup(2),
        mod2_kernel(),
    };
    for (const auto& H : corpus) {
        std::vector<Word> walked;
        for_each_member(H, 7, [&](const Word& w) { walked.push_back(w); });
        std::sort(walked.begin(), walked.end(), shortlex_less);
        CHECK(walked == oracle::brute_members(H, 7));
    }
}

TEST_CASE("annulus counting and errors") {
    SubgroupHandle full = SubgroupHandle::full_group(2);
    CHECK(annulus_count(full, 1, 2).count == BigInt(16));
    CHECK(annulus_count(full, 0, 0).count == BigInt(1));
    CHECK_THROWS_AS(annulus_count(full, 3, 2), InvalidInputError);
}

TEST_CASE("coornaert ratios") {
    double ln3 = std::log(3.0);
    SubgroupHandle full = SubgroupHandle::full_group(2);
    CoornaertReport rep = coornaert_ratios(full, 1, 12, ln3);
    for (const auto& row : rep.rows)
        if (row.r >= 1) CHECK(row.ratio == doctest::Approx(16.0 / 3.0).epsilon(1e-9));

    // cyclic subgroup at exponent 0: inclusive annuli [r, r+1] hold
    // {a^r, a^-r, a^(r+1), a^-(r+1)}
    SubgroupHandle cyc = SubgroupHandle::stallings(2, {W("a")});
    CoornaertReport rep2 = coornaert_ratios(cyc, 1, 12, 0.0);
    for (const auto& row : rep2.rows)
        if (row.r >= 1) CHECK(row.count == BigInt(4));

    // index-3 subgroup, window 2: bounded spread
    SubgroupHandle stab = SubgroupHandle::coset_stabilizer(s3_action(), 0);
    CoornaertReport rep3 = coornaert_ratios(stab, 2, 14, ln3);
    double spread = rep3.max_ratio / rep3.min_ratio;
    CHECK(spread < 10.0);
}

TEST_CASE("conjugation preserves sphere counts of normal subgroups") {
    std::mt19937 rng(41);
    std::vector<SubgroupHandle> normals = {commutator_subgroup(2), mod2_kernel(),
                                           SubgroupHandle::kernel_abelian(2, {{1}, {1}})};
    for (const auto& N : normals) {
        auto base = sphere_counts(N, 12);
        Word g = testutil::random_word_up_to(rng, 2, 5);
        auto conj = sphere_counts(N.conjugated(g), 12);
        CHECK(base == conj);
    }
    // and for a non-normal subgroup conjugation transports counts too
    // (sphere counts are conjugation invariant at the level of subgroups
    // only when lengths are preserved; here we check the handle arithmetic)
    SubgroupHandle cyc = SubgroupHandle::stallings(2, {W("a")});
    SubgroupHandle conj = cyc.conjugated(W("b"));
    CHECK(conj.contains(W("baB")));
    CHECK_FALSE(conj.contains(W("a")));
}

TEST_CASE("finite index coset consistency over a conjugacy orbit") {
    // Sum of indices over distinct conjugates equals index x (number of
    // distinct conjugates), via coset tables.
    PermutationAction a = s3_action();
    std::set<std::string> keys;
    long long index_sum = 0;
    for (int p = 0; p < a.size(); ++p) {
        SubgroupHandle stab = SubgroupHandle::coset_stabilizer(a, p);
        if (keys.insert(stab.canonical_key()).second) index_sum += stab.finite_index();
    }
    CHECK(index_sum == 3 * static_cast<long long>(keys.size()));
}

TEST_CASE("action orbit counts match brute force") {
    PermutationAction a = s3_action();
    SubgroupHandle full = SubgroupHandle::full_group(2);
    auto counts = action_orbit_counts(full, a, 0, 7);
    for (int n = 0; n <= 7; ++n) {
        auto brute = oracle::brute_action_counts(a, 0, n);
        for (int p = 0; p < a.size(); ++p) {
            long long expect = brute.contains(p) ? brute[p] : 0;
            CHECK(counts[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)] ==
                  BigInt(expect));
        }
    }
    // restricted to a subgroup: only members of Gamma count
    SubgroupHandle k2 = mod2_kernel();
    auto counts2 = action_orbit_counts(k2, a, 0, 6);
    for (int n = 0; n <= 6; ++n) {
        std::map<int, long long> brute;
        for_each_sphere_word(2, n, [&](const Word& w) {
            if (k2.contains(w)) brute[a.act_word(0, w)] += 1;
        });
        for (int p = 0; p < a.size(); ++p) {
            long long expect = brute.contains(p) ? brute[p] : 0;
            CHECK(counts2[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)] ==
                  BigInt(expect));
        }
    }
}

TEST_CASE("permutation action validation") {
    CHECK_THROWS_AS(PermutationAction::make(2, {{0, 0}, {0, 1}}), InvalidInputError);
    CHECK_THROWS_AS(PermutationAction::make(2, {{0}}), InvalidInputError);
}
