#pragma once

// Brute-force oracles, kept independent of the DP/coset-walk paths they
// check: everything here enumerates raw reduced words of the ambient group
// and filters with the membership predicate or direct word arithmetic.

#include <map>
#include <set>
#include <vector>

#include "hypercrit/counting.hpp"
#include "hypercrit/subgroup.hpp"
#include "hypercrit/word.hpp"

namespace hypercrit::oracle {

inline long long brute_sphere_count(const SubgroupHandle& H, int n) {
    long long c = 0;
    for_each_sphere_word(H.rank(), n, [&](const Word& w) {
        if (H.contains(w)) ++c;
    });
    return c;
}

inline std::vector<Word> brute_members(const SubgroupHandle& H, int maxLen) {
    std::vector<Word> out;
    for_each_ball_word(H.rank(), maxLen, [&](const Word& w) {
        if (H.contains(w)) out.push_back(w);
    });
    return out;
}

/// Membership by generator-product search: all products of up to `factors`
/// generators (and inverses).
inline std::set<Word> generated_set(const std::vector<Word>& gens, int factors) {
    std::set<Word> cur{Word()};
    std::vector<Word> steps;
    for (const Word& g : gens) {
        steps.push_back(g);
        steps.push_back(g.inverse());
    }
    std::set<Word> all = cur;
    for (int i = 0; i < factors; ++i) {
        std::set<Word> next;
        for (const Word& w : cur)
            for (const Word& s : steps) next.insert(w * s);
        cur = std::move(next);
        all.insert(cur.begin(), cur.end());
    }
    return all;
}

/// E(h, V) by scanning the whole ball.
inline std::vector<Word> brute_conjugators(int rank, const Word& h, const std::vector<Word>& V,
                                           int R) {
    std::set<Word> vset(V.begin(), V.end());
    std::vector<Word> out;
    for_each_ball_word(rank, R, [&](const Word& g) {
        if (vset.contains(g * h * g.inverse())) out.push_back(g);
    });
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

/// gamma z in U counts by scanning the whole ball (right action).
inline std::map<int, long long> brute_action_counts(const PermutationAction& a, int z, int n) {
    std::map<int, long long> out;
    for_each_sphere_word(a.rank(), n, [&](const Word& w) { out[a.act_word(z, w)] += 1; });
    return out;
}

}  // namespace hypercrit::oracle
