#include "hypercrit/conjugacy.hpp"

#include <algorithm>
#include <set>

#include "hypercrit/errors.hpp"

namespace hypercrit {

std::optional<Word> solve_conjugation(const Word& h, const Word& g) {
    if (h.is_identity() || g.is_identity()) {
        if (h.is_identity() && g.is_identity()) return Word();
        return std::nullopt;
    }
    CyclicDecomposition dh = cyclic_decompose(h);
    CyclicDecomposition dg = cyclic_decompose(g);
    if (dh.core.length() != dg.core.length()) return std::nullopt;
    int n = dh.core.length();
    for (int j = 0; j < n; ++j) {
        bool match = true;
        for (int i = 0; i < n && match; ++i)
            match = dh.core.letter((i + j) % n) == dg.core.letter(i);
        if (!match) continue;
        // rot_j(c_h) = x^-1 c_h x with x the length-j prefix.
        Word x = dh.core.prefix(j);
        return dg.wing * x.inverse() * dh.wing.inverse();
    }
    return std::nullopt;
}

Word centralizer_root(const Word& h) {
    if (h.is_identity()) throw InvalidInputError("centralizer_root: identity");
    CyclicDecomposition d = cyclic_decompose(h);
    Word p = primitive_root(d.core);
    return d.wing * p * d.wing.inverse();
}

std::vector<Word> conjugators_into(const Word& h, const std::vector<Word>& K, int R) {
    if (h.is_identity()) throw InvalidInputError("conjugators_into: h must be nontrivial");
    std::set<Word> out;
    Word r = centralizer_root(h);
    int root_len = cyclic_decompose(h).core.length() == 0 ? 1 : primitive_root(cyclic_decompose(h).core).length();
    int wing_len = cyclic_decompose(h).wing.length();
    for (const Word& g : K) {
        auto gamma0 = solve_conjugation(h, g);
        if (!gamma0) continue;
        // Solutions form the right coset gamma0 . C(h).
        int tmax = (R + gamma0->length() + 2 * wing_len) / std::max(1, root_len) + 2;
        Word cur = *gamma0;
        for (int t = 0; t <= tmax; ++t) {
            if (cur.length() <= R) out.insert(cur);
            cur = cur * r;
        }
        cur = *gamma0 * r.inverse();
        for (int t = 1; t <= tmax; ++t) {
            if (cur.length() <= R) out.insert(cur);
            cur = cur * r.inverse();
        }
    }
    std::vector<Word> v(out.begin(), out.end());
    std::sort(v.begin(), v.end(), shortlex_less);
    return v;
}

}  // namespace hypercrit
