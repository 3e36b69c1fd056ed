#include "hypercrit/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hypercrit/errors.hpp"

namespace hypercrit {

namespace {

// DP over (graph vertex, last letter). Returns per-level counts of reduced
// words tracing from the basepoint to each vertex.
std::vector<std::vector<BigInt>> graph_level_counts(const StallingsGraph& g, int nmax) {
    int nv = g.size();
    int al = alphabet_size(g.rank());
    std::vector<std::vector<BigInt>> result(static_cast<std::size_t>(nmax) + 1,
                                            std::vector<BigInt>(static_cast<std::size_t>(nv)));
    result[0][0] = BigInt(1);
    // state[v][l]: count of reduced words of the current length ending at v
    // with final letter l.
    std::vector<std::vector<BigInt>> state(static_cast<std::size_t>(nv),
                                           std::vector<BigInt>(static_cast<std::size_t>(al)));
    for (Letter l = 0; l < al; ++l) {
        int w = g.step(0, l);
        if (w != -1) state[static_cast<std::size_t>(w)][static_cast<std::size_t>(l)] += BigInt(1);
    }
    for (int n = 1; n <= nmax; ++n) {
        for (int v = 0; v < nv; ++v)
            for (Letter l = 0; l < al; ++l)
                result[static_cast<std::size_t>(n)][static_cast<std::size_t>(v)] +=
                    state[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)];
        if (n == nmax) break;
        std::vector<std::vector<BigInt>> next(static_cast<std::size_t>(nv),
                                              std::vector<BigInt>(static_cast<std::size_t>(al)));
        for (int v = 0; v < nv; ++v) {
            for (Letter l = 0; l < al; ++l) {
                const BigInt& c = state[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)];
                if (c.is_zero()) continue;
                for (Letter l2 = 0; l2 < al; ++l2) {
                    if (l2 == letter_inverse(l)) continue;
                    int w = g.step(v, l2);
                    if (w != -1)
                        next[static_cast<std::size_t>(w)][static_cast<std::size_t>(l2)] += c;
                }
            }
        }
        state = std::move(next);
    }
    return result;
}

struct AbelianState {
    std::vector<long long> vec;
    Letter last;
    auto operator<=>(const AbelianState&) const = default;
};

std::vector<long long> coordinate_steps(const std::vector<std::vector<long long>>& images) {
    std::size_t m = images[0].size();
    std::vector<long long> vmax(m, 0);
    for (const auto& v : images)
        for (std::size_t j = 0; j < m; ++j) vmax[j] = std::max(vmax[j], std::abs(v[j]));
    return vmax;
}

// Least number of letters needed to bring vec back to zero, coordinatewise.
long long steps_back_lower_bound(const std::vector<long long>& vec,
                                 const std::vector<long long>& vmax) {
    long long lb = 0;
    for (std::size_t j = 0; j < vec.size(); ++j) {
        if (vec[j] == 0) continue;
        if (vmax[j] == 0) return -1;  // stuck off zero
        lb = std::max(lb, (std::abs(vec[j]) + vmax[j] - 1) / vmax[j]);
    }
    return lb;
}

std::vector<BigInt> abelian_sphere_counts(const SubgroupHandle& H, int nmax) {
    const auto& images = H.abelian_images();
    std::vector<long long> vmax = coordinate_steps(images);
    std::size_t m = images[0].size();
    std::vector<BigInt> counts(static_cast<std::size_t>(nmax) + 1);
    counts[0] = BigInt(1);
    std::map<AbelianState, BigInt> state;
    std::vector<long long> zero(m, 0);
    for (Letter l = 0; l < alphabet_size(H.rank()); ++l) {
        std::vector<long long> v = zero;
        const auto& img = images[static_cast<std::size_t>(letter_gen(l))];
        long long sgn = letter_is_inverse(l) ? -1 : 1;
        for (std::size_t j = 0; j < m; ++j) v[j] += sgn * img[j];
        state[{std::move(v), l}] += BigInt(1);
    }
    for (int n = 1; n <= nmax; ++n) {
        for (const auto& [st, c] : state)
            if (st.vec == zero) counts[static_cast<std::size_t>(n)] += c;
        if (n == nmax) break;
        std::map<AbelianState, BigInt> next;
        for (const auto& [st, c] : state) {
            for (Letter l = 0; l < alphabet_size(H.rank()); ++l) {
                if (l == letter_inverse(st.last)) continue;
                std::vector<long long> v = st.vec;
                const auto& img = images[static_cast<std::size_t>(letter_gen(l))];
                long long sgn = letter_is_inverse(l) ? -1 : 1;
                for (std::size_t j = 0; j < m; ++j) v[j] += sgn * img[j];
                long long lb = steps_back_lower_bound(v, vmax);
                if (lb < 0 || lb > nmax - (n + 1)) continue;
                next[{std::move(v), l}] += c;
            }
        }
        state = std::move(next);
    }
    return counts;
}

}  // namespace

std::vector<BigInt> sphere_counts(const SubgroupHandle& H, int nmax) {
    if (nmax < 0) throw InvalidInputError("sphere radius must be nonnegative");
    if (H.kind() == SubgroupHandle::Kind::KernelAbelian) return abelian_sphere_counts(H, nmax);
    auto levels = graph_level_counts(H.graph(), nmax);
    std::vector<BigInt> counts(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n) counts[static_cast<std::size_t>(n)] = levels[static_cast<std::size_t>(n)][0];
    return counts;
}

BigInt sphere_count(const SubgroupHandle& H, int n) { return sphere_counts(H, n).back(); }

AnnulusCount annulus_count(const SubgroupHandle& H, int r1, int r2) {
    if (r1 < 0 || r1 > r2)
        throw InvalidInputError("annulus requires 0 <= r1 <= r2");
    auto counts = sphere_counts(H, r2);
    AnnulusCount a{r1, r2, BigInt(0)};
    for (int n = r1; n <= r2; ++n) a.count += counts[static_cast<std::size_t>(n)];
    return a;
}

CoornaertReport coornaert_ratios(const SubgroupHandle& H, int window, int rmax,
                                 double delta_hat) {
    if (window < 1) throw InvalidInputError("window must be at least 1");
    if (rmax < 0) throw InvalidInputError("rmax must be nonnegative");
    auto counts = sphere_counts(H, rmax + window);
    CoornaertReport rep;
    rep.window = window;
    rep.delta_hat = delta_hat;
    for (int r = 0; r <= rmax; ++r) {
        BigInt c(0);
        for (int n = r; n <= r + window; ++n) c += counts[static_cast<std::size_t>(n)];
        double ratio = c.to_double() * std::exp(-delta_hat * r);
        rep.rows.push_back({r, c, ratio});
    }
    rep.min_ratio = rep.rows.front().ratio;
    rep.max_ratio = rep.rows.front().ratio;
    for (const auto& row : rep.rows) {
        rep.min_ratio = std::min(rep.min_ratio, row.ratio);
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    }
    return rep;
}

namespace {

void member_walk_graph(const StallingsGraph& g, const std::vector<int>& back, int v, int maxLen,
                       std::vector<Letter>& cur, const std::function<void(const Word&)>& fn) {
    if (v == 0) fn(Word::from_reduced(cur));
    if (static_cast<int>(cur.size()) == maxLen) return;
    int remaining = maxLen - static_cast<int>(cur.size());
    for (Letter l = 0; l < alphabet_size(g.rank()); ++l) {
        if (!cur.empty() && cur.back() == letter_inverse(l)) continue;
        int w = g.step(v, l);
        if (w == -1) continue;
        if (back[static_cast<std::size_t>(w)] < 0 || back[static_cast<std::size_t>(w)] > remaining - 1)
            continue;
        cur.push_back(l);
        member_walk_graph(g, back, w, maxLen, cur, fn);
        cur.pop_back();
    }
}

void member_walk_abelian(const SubgroupHandle& H, const std::vector<long long>& vmax,
                         std::vector<long long>& vec, int maxLen, std::vector<Letter>& cur,
                         const std::function<void(const Word&)>& fn) {
    bool at_zero = std::all_of(vec.begin(), vec.end(), [](long long e) { return e == 0; });
    if (at_zero) fn(Word::from_reduced(cur));
    if (static_cast<int>(cur.size()) == maxLen) return;
    int remaining = maxLen - static_cast<int>(cur.size());
    const auto& images = H.abelian_images();
    std::size_t m = vec.size();
    for (Letter l = 0; l < alphabet_size(H.rank()); ++l) {
        if (!cur.empty() && cur.back() == letter_inverse(l)) continue;
        const auto& img = images[static_cast<std::size_t>(letter_gen(l))];
        long long sgn = letter_is_inverse(l) ? -1 : 1;
        for (std::size_t j = 0; j < m; ++j) vec[j] += sgn * img[j];
        long long lb = steps_back_lower_bound(vec, vmax);
        if (lb >= 0 && lb <= remaining - 1) {
            cur.push_back(l);
            member_walk_abelian(H, vmax, vec, maxLen, cur, fn);
            cur.pop_back();
        }
        for (std::size_t j = 0; j < m; ++j) vec[j] -= sgn * img[j];
    }
}

}  // namespace

void for_each_member(const SubgroupHandle& H, int maxLen,
                     const std::function<void(const Word&)>& fn) {
    std::vector<Letter> cur;
    if (H.kind() == SubgroupHandle::Kind::KernelAbelian) {
        std::vector<long long> vec(H.abelian_images()[0].size(), 0);
        member_walk_abelian(H, coordinate_steps(H.abelian_images()), vec, maxLen, cur, fn);
    } else {
        member_walk_graph(H.graph(), H.graph().dist_to_base(), 0, maxLen, cur, fn);
    }
}

void for_each_annulus_member(const SubgroupHandle& H, int r1, int r2,
                             const std::function<void(const Word&)>& fn) {
    for_each_member(H, r2, [&](const Word& w) {
        if (w.length() >= r1) fn(w);
    });
}

std::vector<std::vector<BigInt>> action_orbit_counts(const SubgroupHandle& Gamma,
                                                     const PermutationAction& action, int z,
                                                     int nmax) {
    if (z < 0 || z >= action.size())
        throw InvalidInputError("point outside the action's set");
    if (Gamma.rank() != action.rank())
        throw InvalidInputError("subgroup and action ranks differ");
    int npts = action.size();
    std::vector<std::vector<BigInt>> result(
        static_cast<std::size_t>(nmax) + 1, std::vector<BigInt>(static_cast<std::size_t>(npts)));
    if (Gamma.kind() == SubgroupHandle::Kind::KernelAbelian) {
        // Sparse DP over ((vector, point), last letter).
        const auto& images = Gamma.abelian_images();
        std::vector<long long> vmax = coordinate_steps(images);
        std::size_t m = images[0].size();
        std::vector<long long> zero(m, 0);
        struct Key {
            std::vector<long long> vec;
            int point;
            Letter last;
            auto operator<=>(const Key&) const = default;
        };
        result[0][static_cast<std::size_t>(z)] = BigInt(1);
        std::map<Key, BigInt> state;
        auto push = [&](std::map<Key, BigInt>& dst, const Key& prev, Letter l, const BigInt& c,
                        int level) {
            std::vector<long long> v = prev.vec;
            const auto& img = images[static_cast<std::size_t>(letter_gen(l))];
            long long sgn = letter_is_inverse(l) ? -1 : 1;
            for (std::size_t j = 0; j < m; ++j) v[j] += sgn * img[j];
            long long lb = steps_back_lower_bound(v, vmax);
            if (lb < 0 || lb > nmax - level) return;
            dst[{std::move(v), action.act(prev.point, l), l}] += c;
        };
        for (Letter l = 0; l < alphabet_size(Gamma.rank()); ++l)
            push(state, Key{zero, z, letter_inverse(l)}, l, BigInt(1), 1);
        for (int n = 1; n <= nmax; ++n) {
            for (const auto& [key, c] : state)
                if (key.vec == zero) result[static_cast<std::size_t>(n)][static_cast<std::size_t>(key.point)] += c;
            if (n == nmax) break;
            std::map<Key, BigInt> next;
            for (const auto& [key, c] : state)
                for (Letter l = 0; l < alphabet_size(Gamma.rank()); ++l)
                    if (l != letter_inverse(key.last)) push(next, key, l, c, n + 1);
            state = std::move(next);
        }
        return result;
    }

    const StallingsGraph& g = Gamma.graph();
    int nv = g.size();
    int al = alphabet_size(Gamma.rank());
    auto idx = [&](int v, int p) { return static_cast<std::size_t>(v * npts + p); };
    std::vector<std::vector<BigInt>> state(static_cast<std::size_t>(nv * npts),
                                           std::vector<BigInt>(static_cast<std::size_t>(al)));
    result[0][static_cast<std::size_t>(z)] = BigInt(1);
    for (Letter l = 0; l < al; ++l) {
        int w = g.step(0, l);
        if (w != -1) state[idx(w, action.act(z, l))][static_cast<std::size_t>(l)] += BigInt(1);
    }
    for (int n = 1; n <= nmax; ++n) {
        for (int v = 0; v < nv; ++v)
            for (int p = 0; p < npts; ++p)
                for (Letter l = 0; l < al; ++l) {
                    const BigInt& c = state[idx(v, p)][static_cast<std::size_t>(l)];
                    if (!c.is_zero() && v == 0)
                        result[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)] += c;
                }
        if (n == nmax) break;
        std::vector<std::vector<BigInt>> next(static_cast<std::size_t>(nv * npts),
                                              std::vector<BigInt>(static_cast<std::size_t>(al)));
        for (int v = 0; v < nv; ++v)
            for (int p = 0; p < npts; ++p)
                for (Letter l = 0; l < al; ++l) {
                    const BigInt& c = state[idx(v, p)][static_cast<std::size_t>(l)];
                    if (c.is_zero()) continue;
                    for (Letter l2 = 0; l2 < al; ++l2) {
                        if (l2 == letter_inverse(l)) continue;
                        int w = g.step(v, l2);
                        if (w != -1)
                            next[idx(w, action.act(p, l2))][static_cast<std::size_t>(l2)] += c;
                    }
                }
        state = std::move(next);
    }
    return result;
}

}  // namespace hypercrit
