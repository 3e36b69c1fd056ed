#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypercrit/bigint.hpp"
#include "hypercrit/cylinder.hpp"
#include "hypercrit/subgroup.hpp"

namespace hypercrit {

/// Truncated orbit measure W_s: atoms e^(-s|g|) delta_g over the members of
/// H in the ball of radius R, normalized to total mass 1.
struct OrbitMeasure {
    int rank = 0;
    std::string subgroup_key;
    double s = 0;
    int radius = 0;
    std::vector<std::pair<Word, double>> atoms;  // normalized weights, shortlex order
    bool degenerate = false;                     // support is the identity alone
};

OrbitMeasure ws_measure(const SubgroupHandle& H, double s, int R);

struct CylinderMass {
    double value = 0;
    std::optional<Rational> exact;
};

/// A finitely additive measure on the boundary, stored on every cylinder of
/// depth <= depth(). Exact masses are carried when the construction allows.
class CylinderMeasure {
public:
    CylinderMeasure() = default;
    CylinderMeasure(int rank, int depth) : rank_(rank), depth_(depth) {}

    int rank() const { return rank_; }
    int depth() const { return depth_; }
    bool is_exact() const { return exact_; }
    void set_exact(bool e) { exact_ = e; }

    double total() const { return total_.value; }
    const CylinderMass& total_mass() const { return total_; }
    void set_total(CylinderMass m) { total_ = std::move(m); }

    const CylinderMass& mass(const Word& stem) const;
    void set_mass(const Word& stem, CylinderMass m);
    const std::map<Word, CylinderMass>& masses() const { return mass_; }

    /// Max additivity defect |m(w) - sum m(children)| over interior stems.
    double additivity_defect() const;

    /// Aggregates interior levels from the deepest level by additivity and
    /// fills the total.
    void roll_up();

private:
    int rank_ = 0;
    int depth_ = 0;
    bool exact_ = false;
    CylinderMass total_;
    std::map<Word, CylinderMass> mass_;
};

/// The unique F_k-conformal density of dimension ln(2k-1) on the tree
/// boundary, based at x, computed in exact rationals down to `depth`:
/// nu_o(Cyl(w)) = (1/2k)(2k-1)^-( |w| - 1 ), and nu_x via the conformal
/// derivative (2k-1)^beta_xi(o,x).
CylinderMeasure exact_conformal_density(int rank, const Word& x, int depth);

/// Pushes a truncated orbit measure to the boundary at the given depth.
/// Atoms at or beyond the depth land in their prefix cylinder; interior
/// atoms are spread over the depth-level cylinders proportionally to the
/// exact full-group conformal weights seen from the atom.
CylinderMeasure boundary_project(const OrbitMeasure& m, int depth);

/// The deterministic replacement for a weak-* accumulation point: evaluate
/// W_s at s = delta_hat + epsilon over a fixed ladder of epsilons and
/// report every rung.
struct DensityLadderEntry {
    double epsilon = 0;
    double s = 0;
    OrbitMeasure orbit;
    CylinderMeasure projected;
};

std::vector<DensityLadderEntry> density_ladder(const SubgroupHandle& H, double delta_hat, int R,
                                               int depth);
inline const std::vector<double>& density_ladder_epsilons() {
    static const std::vector<double> eps{0.1, 0.05, 0.02, 0.01};
    return eps;
}

/// Shadow lemma ratio table: nu(S_R(o, g^-1 o)) e^(deltaHat d(o,go)) over
/// the members g of H with 1 <= |g| <= rmax. When `exact_base` is set the
/// factor e^deltaHat is taken to be that exact integer and exact densities
/// produce exact rational ratios.
struct ShadowLemmaRow {
    Word g;
    double ratio = 0;
    std::optional<Rational> exact;
};

struct ShadowLemmaReport {
    int radius = 0;
    double delta_hat = 0;
    std::vector<ShadowLemmaRow> rows;
    double min_ratio = 0;
    double max_ratio = 0;
    bool all_exact = false;
};

ShadowLemmaReport shadow_lemma_check(const SubgroupHandle& H, double delta_hat,
                                     std::optional<long long> exact_base, int R, int rmax,
                                     const CylinderMeasure& density);

/// Total mass of nu_v for the exact full-group density: the Poincare
/// quasi-cocycle value pi(g, F_k) at v = g^-1 o, in exact rationals.
Rational pi_exact_full_group(int rank, const Word& v);

/// pi from a projected density, resolved to the density's depth: masses of
/// Cyl(v_<=j) weighted by e^(deltaHat (2j - |v|)).
double pi_from_measure(const CylinderMeasure& nu, double delta_hat, const Word& v);

/// A family of boundary densities indexed by canonical subgroup key, as
/// used by the quasi-cocycle and the IRS-level checks. `distortion` is the
/// quasiconformality allowance d (exact tree densities have d = 1).
struct DensityFamily {
    int rank = 0;
    double delta_hat = 0;
    std::optional<long long> exact_base;
    bool exact_full_group = false;  // use the closed-form exact density
    double distortion = 1.0;
    std::map<std::string, CylinderMeasure> by_subgroup;
};

DensityFamily exact_full_group_family(int rank);

struct CocycleValue {
    double pi = 0;
    std::optional<Rational> exact;
};

/// pi(g, H) = |nu^H at g^-1 o|; throws NotFoundError when the family lacks
/// a density for H.
CocycleValue quasi_cocycle_pi(const DensityFamily& family, const SubgroupHandle& H,
                              const Word& g);

/// Residual |ln pi(gh,H) - ln pi(g, hHh^-1) - ln pi(h,H)| of the
/// approximate cocycle relation.
struct CocycleResidual {
    double pi_gh = 0;
    double pi_g_conj = 0;
    double pi_h = 0;
    double residual = 0;
};

CocycleResidual quasi_cocycle_residual(const DensityFamily& family, const SubgroupHandle& H,
                                       const Word& g, const Word& h);

}  // namespace hypercrit
