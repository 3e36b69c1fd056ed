#pragma once

#include <vector>

#include "hypercrit/boundary_point.hpp"
#include "hypercrit/subgroup.hpp"
#include "hypercrit/word.hpp"

namespace hypercrit {

/// A finite union of boundary cylinders Cyl(w) in canonical form: stems are
/// sorted, none is a prefix of another, and any complete sibling family is
/// merged into its parent (the full boundary at the root). The boundary set
/// determines the canonical stem list and vice versa.
struct CylinderSet {
    int rank = 0;
    bool full = false;
    std::vector<Word> stems;

    bool empty() const { return !full && stems.empty(); }

    /// Does the set contain the whole cylinder at `stem`? (True when some
    /// canonical stem is a prefix of `stem`.)
    bool contains_cylinder(const Word& stem) const;

    /// Does the set contain this end?
    bool contains_end(const TreeBoundaryPoint& xi) const;
};

CylinderSet canonical_cylinder_set(int rank, std::vector<Word> stems);
CylinderSet full_boundary(int rank);
CylinderSet cylinder_union(const CylinderSet& a, const CylinderSet& b);
CylinderSet cylinder_intersection(const CylinderSet& a, const CylinderSet& b);

/// The shadow S_R(x, y): ends whose ray from x meets the closed ball of
/// radius R around y, expressed in the frame translated so x sits at the
/// basepoint. On the tree this is the full boundary when d(x,y) <= R and a
/// single cylinder otherwise.
struct Shadow {
    Word x;
    Word y;
    int radius = 0;
    CylinderSet set;
};

Shadow shadow(int rank, const Word& x, const Word& y, int R);

/// Cover check for Proposition-style shadow covers: do the shadows
/// S_R(o, gamma o) over the annulus A_H[r, r+k] cover the boundary, and
/// with what multiplicity? Exact cylinder arithmetic at depth r+k+R+1.
struct ShadowCoverReport {
    bool covered = false;
    long long max_multiplicity = 0;
    long long min_multiplicity = 0;
    int depth = 0;
    long long shadows = 0;
};

ShadowCoverReport shadow_cover_check(const SubgroupHandle& H, int k, int R, int r);

/// Samples every end of shadow(x, y, R) to the given depth and checks
/// d(x,y) - 2R <= beta_xi(x, y) <= d(x,y) on each sample.
struct BusemannShadowReport {
    long long samples = 0;
    int min_beta = 0;
    int max_beta = 0;
    int dist = 0;
    int radius = 0;
    bool violation = false;
};

BusemannShadowReport busemann_shadow_bounds_check(int rank, const Word& x, const Word& y, int R,
                                                  int sample_depth);

}  // namespace hypercrit
