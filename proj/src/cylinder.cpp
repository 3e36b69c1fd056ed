#include "hypercrit/cylinder.hpp"

#include <algorithm>
#include <map>

#include "hypercrit/counting.hpp"
#include "hypercrit/errors.hpp"

namespace hypercrit {

namespace {

bool is_prefix(const Word& p, const Word& w) {
    if (p.length() > w.length()) return false;
    for (int i = 0; i < p.length(); ++i)
        if (p.letter(i) != w.letter(i)) return false;
    return true;
}

/// Valid child letters of a stem: anything that keeps the word reduced.
int child_count(int rank, const Word& stem) {
    return stem.is_identity() ? alphabet_size(rank) : alphabet_size(rank) - 1;
}

}  // namespace

bool CylinderSet::contains_cylinder(const Word& stem) const {
    if (full) return true;
    for (const Word& s : stems)
        if (is_prefix(s, stem)) return true;
    return false;
}

bool CylinderSet::contains_end(const TreeBoundaryPoint& xi) const {
    if (full) return true;
    for (const Word& s : stems)
        if (xi.confluence_with_word(s) == s.length()) return true;
    return false;
}

CylinderSet canonical_cylinder_set(int rank, std::vector<Word> stems) {
    CylinderSet set;
    set.rank = rank;
    for (const Word& s : stems)
        if (s.is_identity()) {
            set.full = true;
            return set;
        }
    // Drop nested stems.
    std::sort(stems.begin(), stems.end(), shortlex_less);
    stems.erase(std::unique(stems.begin(), stems.end()), stems.end());
    std::vector<Word> kept;
    for (const Word& s : stems) {
        bool nested = false;
        for (const Word& t : kept)
            if (is_prefix(t, s)) {
                nested = true;
                break;
            }
        if (!nested) kept.push_back(s);
    }
    // Merge complete sibling families until stable.
    bool merged = true;
    while (merged) {
        merged = false;
        std::map<Word, int> family;  // parent -> number of child stems present
        for (const Word& s : kept) family[s.prefix(s.length() - 1)] += 1;
        for (const auto& [parent, cnt] : family) {
            if (cnt != child_count(rank, parent)) continue;
            std::vector<Word> next;
            for (const Word& s : kept)
                if (!(s.length() == parent.length() + 1 && is_prefix(parent, s)))
                    next.push_back(s);
            if (parent.is_identity()) {
                CylinderSet all;
                all.rank = rank;
                all.full = true;
                return all;
            }
            next.push_back(parent);
            std::sort(next.begin(), next.end(), shortlex_less);
            kept = std::move(next);
            merged = true;
            break;
        }
    }
    set.stems = std::move(kept);
    return set;
}

CylinderSet full_boundary(int rank) {
    CylinderSet s;
    s.rank = rank;
    s.full = true;
    return s;
}

CylinderSet cylinder_union(const CylinderSet& a, const CylinderSet& b) {
    if (a.full || b.full) return full_boundary(a.rank);
    std::vector<Word> stems = a.stems;
    stems.insert(stems.end(), b.stems.begin(), b.stems.end());
    return canonical_cylinder_set(a.rank, std::move(stems));
}

CylinderSet cylinder_intersection(const CylinderSet& a, const CylinderSet& b) {
    if (a.full) return b;
    if (b.full) return a;
    // Two cylinders meet iff one stem is a prefix of the other, and the
    // intersection is the deeper one.
    std::vector<Word> stems;
    for (const Word& s : a.stems)
        for (const Word& t : b.stems) {
            if (is_prefix(s, t))
                stems.push_back(t);
            else if (is_prefix(t, s))
                stems.push_back(s);
        }
    return canonical_cylinder_set(a.rank, std::move(stems));
}

Shadow shadow(int rank, const Word& x, const Word& y, int R) {
    if (R < 0) throw InvalidInputError("shadow radius must be nonnegative");
    Shadow s;
    s.x = x;
    s.y = y;
    s.radius = R;
    Word w = x.inverse() * y;
    if (w.length() <= R) {
        s.set = full_boundary(rank);
    } else {
        s.set = canonical_cylinder_set(rank, {w.prefix(w.length() - R)});
    }
    return s;
}

ShadowCoverReport shadow_cover_check(const SubgroupHandle& H, int k, int R, int r) {
    if (k < 0 || R < 0 || r < 0) throw InvalidInputError("parameters must be nonnegative");
    int rank = H.rank();
    std::vector<Word> stems;       // proper-cylinder shadows
    long long full_shadows = 0;    // shadows equal to the whole boundary
    long long count = 0;
    for_each_annulus_member(H, r, r + k, [&](const Word& g) {
        ++count;
        if (g.length() <= R)
            ++full_shadows;
        else
            stems.push_back(g.prefix(g.length() - R));
    });
    ShadowCoverReport rep;
    rep.shadows = count;
    rep.depth = r + k + R + 1;
    bool first = true;
    // Multiplicity of each depth-level cylinder; every stem has length
    // <= r + k - R < depth, so depth-level cylinders refine all shadows.
    for_each_sphere_word(rank, rep.depth, [&](const Word& w) {
        long long mult = full_shadows;
        for (const Word& s : stems)
            if (is_prefix(s, w)) ++mult;
        if (first) {
            rep.min_multiplicity = rep.max_multiplicity = mult;
            first = false;
        } else {
            rep.min_multiplicity = std::min(rep.min_multiplicity, mult);
            rep.max_multiplicity = std::max(rep.max_multiplicity, mult);
        }
    });
    rep.covered = !first && rep.min_multiplicity >= 1;
    return rep;
}

BusemannShadowReport busemann_shadow_bounds_check(int rank, const Word& x, const Word& y, int R,
                                                  int sample_depth) {
    if (x == y) throw InvalidInputError("busemann_shadow_bounds_check requires x != y");
    Shadow s = shadow(rank, x, y, R);
    BusemannShadowReport rep;
    rep.dist = tree_dist(x, y);
    rep.radius = R;
    std::vector<Word> roots =
        s.set.full ? std::vector<Word>{} : s.set.stems;
    if (s.set.full)
        for (Letter l = 0; l < alphabet_size(rank); ++l) roots.push_back(Word::from_reduced({l}));

    bool first = true;
    auto visit_end = [&](const TreeBoundaryPoint& local_end) {
        TreeBoundaryPoint xi = local_end.translated(x);
        int beta = busemann_tree(xi, x, y);
        if (first) {
            rep.min_beta = rep.max_beta = beta;
            first = false;
        } else {
            rep.min_beta = std::min(rep.min_beta, beta);
            rep.max_beta = std::max(rep.max_beta, beta);
        }
        if (beta < rep.dist - 2 * R || beta > rep.dist) rep.violation = true;
        ++rep.samples;
    };
    for (const Word& root : roots) {
        // Extend the stem to sample_depth in all reduced ways, then close
        // each sample with the two extreme periodic tails.
        int target = std::max(root.length(), sample_depth);
        std::vector<Letter> cur = root.letters();
        auto rec = [&](auto&& self) -> void {
            if (static_cast<int>(cur.size()) == target) {
                Word stem = Word::from_reduced(cur);
                Letter lo = -1, hi = -1;
                for (Letter l = 0; l < alphabet_size(rank); ++l) {
                    if (!stem.is_identity() && l == letter_inverse(stem.last())) continue;
                    if (lo == -1) lo = l;
                    hi = l;
                }
                visit_end(TreeBoundaryPoint::make(stem, Word::from_reduced({lo})));
                if (hi != lo) visit_end(TreeBoundaryPoint::make(stem, Word::from_reduced({hi})));
                return;
            }
            for (Letter l = 0; l < alphabet_size(rank); ++l) {
                if (!cur.empty() && cur.back() == letter_inverse(l)) continue;
                cur.push_back(l);
                self(self);
                cur.pop_back();
            }
        };
        rec(rec);
    }
    return rep;
}

}  // namespace hypercrit
