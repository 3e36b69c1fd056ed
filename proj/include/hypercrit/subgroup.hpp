#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hypercrit/stallings.hpp"
#include "hypercrit/word.hpp"

namespace hypercrit {

/// Finite permutation action of F_k: one permutation per generator, with
/// generators acting on the right (p . uv = (p . u) . v). Carries the
/// uniform probability measure. Transitive instances serve as coset tables.
class PermutationAction {
public:
    static PermutationAction make(int rank, std::vector<std::vector<int>> perms);

    int rank() const { return rank_; }
    int size() const { return size_; }
    const std::vector<std::vector<int>>& perms() const { return perms_; }

    int act(int p, Letter l) const {
        return letter_is_inverse(l) ? inv_[static_cast<std::size_t>(letter_gen(l))][static_cast<std::size_t>(p)]
                                    : perms_[static_cast<std::size_t>(letter_gen(l))][static_cast<std::size_t>(p)];
    }
    int act_word(int p, const Word& w) const;

    bool is_transitive() const;
    std::vector<int> orbit_of(int p) const;

private:
    int rank_ = 0;
    int size_ = 0;
    std::vector<std::vector<int>> perms_;
    std::vector<std::vector<int>> inv_;
};

/// A subgroup of F_k under one of four carriers: Stallings core graph,
/// point stabilizer of a transitive permutation action, kernel of a map to
/// a finite permutation group, or kernel of a map to Z^m. Immutable.
class SubgroupHandle {
public:
    enum class Kind { Stallings, CosetStabilizer, KernelFinite, KernelAbelian };

    static SubgroupHandle full_group(int rank);
    static SubgroupHandle stallings(int rank, const std::vector<Word>& generators);
    static SubgroupHandle coset_stabilizer(PermutationAction action, int point);
    static SubgroupHandle kernel_finite(int rank, std::vector<std::vector<int>> images);
    static SubgroupHandle kernel_abelian(int rank, std::vector<std::vector<long long>> images);

    Kind kind() const { return kind_; }
    int rank() const { return rank_; }

    bool contains(const Word& w) const;
    SubgroupHandle conjugated(const Word& g) const;

    /// Stable identifier; equal subgroups in graph-backed carriers get equal
    /// keys (canonical Stallings graph), kernels are keyed by their images.
    const std::string& canonical_key() const { return key_; }

    /// True for graph-backed kinds (those expose a folded graph view).
    bool has_graph() const { return kind_ != Kind::KernelAbelian; }
    const StallingsGraph& graph() const;

    bool has_finite_index() const;
    long long finite_index() const;

    /// Conjugation by every generator letter fixes the subgroup.
    bool is_normal_on_generators() const;

    const PermutationAction& action() const;
    int stabilized_point() const;
    const std::vector<std::vector<int>>& finite_images() const;
    const std::vector<std::vector<long long>>& abelian_images() const;

    /// Free basis for the Stallings carrier.
    std::vector<Word> generators() const;

private:
    Kind kind_ = Kind::Stallings;
    int rank_ = 0;
    std::string key_;
    std::shared_ptr<const StallingsGraph> graph_;
    std::shared_ptr<const PermutationAction> action_;  // CosetStabilizer / KernelFinite
    int point_ = 0;
    std::vector<std::vector<int>> finite_images_;
    std::vector<std::vector<long long>> abelian_images_;
};

}  // namespace hypercrit
