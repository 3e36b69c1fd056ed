#include "hypercrit/density.hpp"

#include <algorithm>
#include <cmath>

#include "hypercrit/counting.hpp"
#include "hypercrit/errors.hpp"

namespace hypercrit {

namespace {

Rational pow_signed(long long base, int e) {
    BigInt b(base);
    if (e >= 0) return Rational(BigInt::pow(b, static_cast<unsigned>(e)), BigInt(1));
    return Rational(BigInt(1), BigInt::pow(b, static_cast<unsigned>(-e)));
}

/// nu_o(Cyl(prefix of length j)) for the exact full-group density.
Rational exact_prefix_mass(int rank, int j) {
    if (j == 0) return Rational(1);
    long long lam = 2 * rank - 1;
    return Rational(BigInt(1), BigInt(2 * rank) * BigInt::pow(BigInt(lam), static_cast<unsigned>(j - 1)));
}

}  // namespace

OrbitMeasure ws_measure(const SubgroupHandle& H, double s, int R) {
    if (R < 0) throw InvalidInputError("truncation radius must be nonnegative");
    OrbitMeasure m;
    m.rank = H.rank();
    m.subgroup_key = H.canonical_key();
    m.s = s;
    m.radius = R;
    double total = 0;
    for_each_member(H, R, [&](const Word& w) {
        double wt = std::exp(-s * w.length());
        m.atoms.push_back({w, wt});
        total += wt;
    });
    std::sort(m.atoms.begin(), m.atoms.end(),
              [](const auto& a, const auto& b) { return shortlex_less(a.first, b.first); });
    for (auto& [w, wt] : m.atoms) wt /= total;
    m.degenerate = m.atoms.size() <= 1;
    return m;
}

const CylinderMass& CylinderMeasure::mass(const Word& stem) const {
    if (stem.is_identity()) return total_;
    auto it = mass_.find(stem);
    if (it == mass_.end())
        throw InvalidInputError("cylinder measure has no mass for stem '" + stem.str() +
                                "' (depth " + std::to_string(depth_) + ")");
    return it->second;
}

void CylinderMeasure::set_mass(const Word& stem, CylinderMass m) { mass_[stem] = std::move(m); }

double CylinderMeasure::additivity_defect() const {
    double worst = 0;
    for (int level = 0; level < depth_; ++level) {
        for_each_sphere_word(rank_, level, [&](const Word& stem) {
            const CylinderMass& here = stem.is_identity() ? total_ : mass(stem);
            double sum = 0;
            bool exact_ok = here.exact.has_value();
            Rational rsum;
            for (Letter l = 0; l < alphabet_size(rank_); ++l) {
                if (!stem.is_identity() && l == letter_inverse(stem.last())) continue;
                auto it = mass_.find(stem * Word::from_reduced({l}));
                if (it == mass_.end()) continue;
                sum += it->second.value;
                if (exact_ok && it->second.exact)
                    rsum += *it->second.exact;
                else
                    exact_ok = false;
            }
            // Exact masses must balance as rationals; doubles carry rounding.
            double defect = exact_ok ? (rsum == *here.exact ? 0.0 : 1.0)
                                     : std::abs(here.value - sum);
            worst = std::max(worst, defect);
        });
    }
    return worst;
}

void CylinderMeasure::roll_up() {
    for (int level = depth_ - 1; level >= 0; --level) {
        for_each_sphere_word(rank_, level, [&](const Word& stem) {
            CylinderMass acc;
            bool exact_ok = exact_;
            Rational r;
            for (Letter l = 0; l < alphabet_size(rank_); ++l) {
                if (!stem.is_identity() && l == letter_inverse(stem.last())) continue;
                auto it = mass_.find(stem * Word::from_reduced({l}));
                if (it == mass_.end()) continue;
                acc.value += it->second.value;
                if (it->second.exact && exact_ok)
                    r += *it->second.exact;
                else
                    exact_ok = false;
            }
            if (exact_ok) acc.exact = r;
            if (stem.is_identity())
                total_ = std::move(acc);
            else
                mass_[stem] = std::move(acc);
        });
    }
}

CylinderMeasure exact_conformal_density(int rank, const Word& x, int depth) {
    if (rank < 2) throw InvalidInputError("tree model requires rank >= 2");
    if (depth < 1) throw InvalidInputError("depth must be at least 1");
    int work_depth = std::max(depth, x.length() + 1);
    CylinderMeasure nu(rank, work_depth);
    nu.set_exact(true);
    long long lam = 2 * rank - 1;
    for_each_sphere_word(rank, work_depth, [&](const Word& w) {
        int c = common_prefix_len(w, x);
        Rational m = exact_prefix_mass(rank, work_depth) * pow_signed(lam, 2 * c - x.length());
        nu.set_mass(w, CylinderMass{m.to_double(), m});
    });
    nu.roll_up();
    if (work_depth > depth) {
        // Truncate to the requested depth.
        CylinderMeasure out(rank, depth);
        out.set_exact(true);
        out.set_total(nu.total_mass());
        for (const auto& [stem, m] : nu.masses())
            if (stem.length() <= depth) out.set_mass(stem, m);
        return out;
    }
    return nu;
}

CylinderMeasure boundary_project(const OrbitMeasure& m, int depth) {
    if (depth < 1) throw InvalidInputError("depth must be at least 1");
    CylinderMeasure nu(m.rank, depth);
    double lam = static_cast<double>(2 * m.rank - 1);
    double level_mass = exact_prefix_mass(m.rank, depth).to_double();
    std::map<Word, double> leaf;
    for (const auto& [v, wt] : m.atoms) {
        if (v.length() >= depth) {
            leaf[v.prefix(depth)] += wt;
            continue;
        }
        // Interior atom: spread over depth-level cylinders with the exact
        // conformal weights nu_v(Cyl(w)); these sum to 1 over the level.
        for_each_sphere_word(m.rank, depth, [&](const Word& w) {
            int c = common_prefix_len(w, v);
            double share = level_mass * std::pow(lam, 2 * c - v.length());
            leaf[w] += wt * share;
        });
    }
    for (const auto& [w, val] : leaf) nu.set_mass(w, CylinderMass{val, std::nullopt});
    // Fill the remaining depth-level stems with zero mass, then aggregate.
    for_each_sphere_word(m.rank, depth, [&](const Word& w) {
        if (!leaf.contains(w)) nu.set_mass(w, CylinderMass{0.0, std::nullopt});
    });
    nu.roll_up();
    return nu;
}

std::vector<DensityLadderEntry> density_ladder(const SubgroupHandle& H, double delta_hat, int R,
                                               int depth) {
    std::vector<DensityLadderEntry> out;
    for (double eps : density_ladder_epsilons()) {
        DensityLadderEntry e;
        e.epsilon = eps;
        e.s = delta_hat + eps;
        e.orbit = ws_measure(H, e.s, R);
        e.projected = boundary_project(e.orbit, depth);
        out.push_back(std::move(e));
    }
    return out;
}

ShadowLemmaReport shadow_lemma_check(const SubgroupHandle& H, double delta_hat,
                                     std::optional<long long> exact_base, int R, int rmax,
                                     const CylinderMeasure& density) {
    if (rmax < 1) throw InvalidInputError("rmax must be at least 1");
    if (density.depth() < rmax - R)
        throw InvalidInputError("density depth " + std::to_string(density.depth()) +
                                " cannot resolve shadows of stems up to length " +
                                std::to_string(rmax - R));
    ShadowLemmaReport rep;
    rep.radius = R;
    rep.delta_hat = delta_hat;
    rep.all_exact = density.is_exact() && exact_base.has_value();
    for_each_member(H, rmax, [&](const Word& g) {
        if (g.is_identity()) return;
        ShadowLemmaRow row;
        row.g = g;
        Word ginv = g.inverse();
        const CylinderMass* m;
        if (g.length() <= R) {
            m = &density.total_mass();
        } else {
            m = &density.mass(ginv.prefix(g.length() - R));
        }
        if (rep.all_exact && m->exact) {
            Rational r = *m->exact *
                         Rational(BigInt::pow(BigInt(*exact_base),
                                              static_cast<unsigned>(g.length())),
                                  BigInt(1));
            row.exact = r;
            row.ratio = r.to_double();
        } else {
            row.ratio = m->value * std::exp(delta_hat * g.length());
        }
        rep.rows.push_back(std::move(row));
    });
    if (rep.rows.empty()) {
        rep.all_exact = false;
        return rep;
    }
    for (const auto& row : rep.rows) {
        if (!row.exact) rep.all_exact = false;
    }
    rep.min_ratio = rep.rows.front().ratio;
    rep.max_ratio = rep.rows.front().ratio;
    for (const auto& row : rep.rows) {
        rep.min_ratio = std::min(rep.min_ratio, row.ratio);
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    }
    return rep;
}

Rational pi_exact_full_group(int rank, const Word& v) {
    long long lam = 2 * rank - 1;
    Rational pi;
    int n = v.length();
    for (int j = 0; j < n; ++j) {
        Rational shell = exact_prefix_mass(rank, j) - exact_prefix_mass(rank, j + 1);
        pi += shell * pow_signed(lam, 2 * j - n);
    }
    pi += exact_prefix_mass(rank, n) * pow_signed(lam, n);
    return pi;
}

double pi_from_measure(const CylinderMeasure& nu, double delta_hat, const Word& v) {
    int n = v.length();
    int cap = std::min(n, nu.depth());
    double pi = 0;
    double prev = nu.total();
    for (int j = 1; j <= cap; ++j) {
        double cur = 0;
        auto it = nu.masses().find(v.prefix(j));
        if (it != nu.masses().end()) cur = it->second.value;
        pi += (prev - cur) * std::exp(delta_hat * (2.0 * (j - 1) - n));
        prev = cur;
    }
    if (cap == n) {
        pi += prev * std::exp(delta_hat * n);
        return pi;
    }
    // v runs deeper than the density resolves. Refine the unresolved
    // cylinder by the exact full-group conformal reference (the projection
    // convention), so the exact density integrates to pi = 1 at any depth:
    //   remainder = m_cap * [sum_{j=cap..n-1} (q_j - q_{j+1}) e^(dh(2j-n))
    //                        + q_n e^(dh n)] / q_cap.
    int rank = nu.rank();
    auto q = [&](int j) { return exact_prefix_mass(rank, j).to_double(); };
    double ref = 0;
    for (int j = cap; j < n; ++j)
        ref += (q(j) - q(j + 1)) * std::exp(delta_hat * (2.0 * j - n));
    ref += q(n) * std::exp(delta_hat * n);
    pi += prev * ref / q(cap);
    return pi;
}

DensityFamily exact_full_group_family(int rank) {
    DensityFamily f;
    f.rank = rank;
    f.delta_hat = std::log(static_cast<double>(2 * rank - 1));
    f.exact_base = 2 * rank - 1;
    f.exact_full_group = true;
    f.distortion = 1.0;
    return f;
}

CocycleValue quasi_cocycle_pi(const DensityFamily& family, const SubgroupHandle& H,
                              const Word& g) {
    CocycleValue v;
    Word target = g.inverse();
    if (family.exact_full_group) {
        if (H.canonical_key() != SubgroupHandle::full_group(family.rank).canonical_key())
            throw NotFoundError("exact density family only covers the full group; missing " +
                                H.canonical_key());
        Rational pi = pi_exact_full_group(family.rank, target);
        v.exact = pi;
        v.pi = pi.to_double();
        return v;
    }
    auto it = family.by_subgroup.find(H.canonical_key());
    if (it == family.by_subgroup.end())
        throw NotFoundError("density family has no density for subgroup " + H.canonical_key());
    v.pi = pi_from_measure(it->second, family.delta_hat, target);
    return v;
}

CocycleResidual quasi_cocycle_residual(const DensityFamily& family, const SubgroupHandle& H,
                                       const Word& g, const Word& h) {
    CocycleResidual r;
    SubgroupHandle conj = H.conjugated(h);
    r.pi_gh = quasi_cocycle_pi(family, H, g * h).pi;
    r.pi_g_conj = quasi_cocycle_pi(family, conj, g).pi;
    r.pi_h = quasi_cocycle_pi(family, H, h).pi;
    r.residual = std::abs(std::log(r.pi_gh) - std::log(r.pi_g_conj) - std::log(r.pi_h));
    return r;
}

}  // namespace hypercrit
