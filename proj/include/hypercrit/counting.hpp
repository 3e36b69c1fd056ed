#pragma once

#include <functional>
#include <vector>

#include "hypercrit/bigint.hpp"
#include "hypercrit/subgroup.hpp"

namespace hypercrit {

/// |{w in H : |w| = n}| for n = 0..nmax, exact. Computed by dynamic
/// programming over (carrier state, last letter) pairs -- the ambient ball
/// is never materialized. Kernel-to-Z^m carriers use a sparse vector-state
/// DP whose states are pruned to those that can still return to zero.
std::vector<BigInt> sphere_counts(const SubgroupHandle& H, int nmax);
BigInt sphere_count(const SubgroupHandle& H, int n);

struct AnnulusCount {
    int r1 = 0;
    int r2 = 0;
    BigInt count;
};

/// |{w in H : r1 <= |w| <= r2}|, both ends included.
AnnulusCount annulus_count(const SubgroupHandle& H, int r1, int r2);

struct CoornaertRow {
    int r = 0;
    BigInt count;     // |A_H[r, r + window]|
    double ratio = 0; // count * e^(-deltaHat * r)
};

struct CoornaertReport {
    int window = 1;
    double delta_hat = 0;
    std::vector<CoornaertRow> rows;  // r = 0..rmax
    double min_ratio = 0;
    double max_ratio = 0;
};

/// Annulus counts against the reference growth e^(deltaHat * r); bounded
/// ratio spread is the finite-scale face of Coornaert's theorem.
CoornaertReport coornaert_ratios(const SubgroupHandle& H, int window, int rmax, double delta_hat);

/// Streams the members of H with |w| <= maxLen in depth-first prefix order.
/// The walk is pruned by distance-to-basepoint (graph carriers) or by
/// coordinate return bounds (kernel-to-Z^m), so sparse subgroups enumerate
/// fast.
void for_each_member(const SubgroupHandle& H, int maxLen,
                     const std::function<void(const Word&)>& fn);

/// Members with r1 <= |w| <= r2.
void for_each_annulus_member(const SubgroupHandle& H, int r1, int r2,
                             const std::function<void(const Word&)>& fn);

/// counts[n][p] = |{w in Gamma : |w| = n, z . w = p}| for n <= nmax, exact.
/// Generators act on the right. Gamma may be any carrier.
std::vector<std::vector<BigInt>> action_orbit_counts(const SubgroupHandle& Gamma,
                                                     const PermutationAction& action, int z,
                                                     int nmax);

}  // namespace hypercrit
