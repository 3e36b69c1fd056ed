#pragma once

#include <string>
#include <vector>

#include "hypercrit/word.hpp"

namespace hypercrit {

/// Folded core graph of a finitely generated subgroup of F_k. Vertex 0 is
/// the basepoint. Edges are stored in both directions: out(v, l) = w implies
/// out(w, l^-1) = v. Folded means out(v, l) is single-valued, which this
/// representation enforces by construction.
class StallingsGraph {
public:
    /// Classical Stallings folding of the wedge of generator loops,
    /// followed by core trimming and canonical relabeling.
    static StallingsGraph fold(int rank, const std::vector<Word>& generators);

    /// One vertex with every loop: the whole group F_k.
    static StallingsGraph full_group(int rank);

    /// Complete graph from explicit transitions (Schreier/Cayley graphs).
    /// next[v][l] must be total and involution-consistent.
    static StallingsGraph from_transitions(int rank, std::vector<std::vector<int>> next,
                                           int basepoint);

    int rank() const { return rank_; }
    int size() const { return static_cast<int>(out_.size()); }

    /// Target of the l-edge at v, or -1.
    int step(int v, Letter l) const { return out_[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)]; }

    /// Endpoint of the path spelling w from v, or -1 if the path dies.
    int trace(int v, const Word& w) const;

    /// Membership: the path spelling w from the basepoint closes there.
    bool accepts(const Word& w) const;

    /// Every vertex carries all 2k edges; equivalent to finite index.
    bool is_complete() const;

    int degree(int v) const;

    /// Free basis of the subgroup from a breadth-first spanning tree.
    std::vector<Word> basis() const;

    /// Shortest edge-path length from each vertex back to the basepoint.
    std::vector<int> dist_to_base() const;

    /// Breadth-first relabeling from the basepoint with edges visited in
    /// letter order; equal subgroups yield identical canonical graphs.
    StallingsGraph canonicalized() const;
    std::string canonical_key() const;

private:
    int rank_ = 0;
    std::vector<std::vector<int>> out_;  // [vertex][letter] -> vertex or -1

    StallingsGraph() = default;
    void link(int u, Letter l, int v);
};

}  // namespace hypercrit
