#pragma once

#include <optional>
#include <string>

#include "hypercrit/word.hpp"

namespace hypercrit {

/// An end of the Cayley tree: the eventually periodic infinite reduced word
/// prefix . tail . tail . tail ... Eventually periodic ends are dense in the
/// boundary and admit exact arithmetic, which is all the checks need.
///
/// Stored in canonical form: the tail is a primitive cyclically reduced word
/// and the prefix is shortest possible (its last letter never equals the
/// tail's last letter). Canonical form makes equality structural.
class TreeBoundaryPoint {
public:
    /// prefix may be empty; tail must be nonempty and cyclically reduced.
    /// Cancellation at the junction is resolved by rotating the tail.
    static TreeBoundaryPoint make(const Word& prefix, const Word& tail);

    const Word& prefix() const { return prefix_; }
    const Word& tail() const { return tail_; }

    Letter letter_at(int i) const;

    bool operator==(const TreeBoundaryPoint& o) const = default;

    /// Gromov product (xi|eta)_o: length of the common prefix of the two
    /// infinite words; nullopt when the ends coincide.
    static std::optional<int> confluence(const TreeBoundaryPoint& a, const TreeBoundaryPoint& b);

    /// Leading letters of w that lie on the ray to this end.
    int confluence_with_word(const Word& w) const;

    /// The translated end g . xi.
    TreeBoundaryPoint translated(const Word& g) const;

    std::string str() const;  // "prefix(tail)*"

private:
    Word prefix_;
    Word tail_;
};

/// Visual metric rho_a(xi, eta) = a^-(xi|eta)_o on the tree boundary; zero
/// for equal ends. Defaults to the base a = e, where the visual-metric
/// bracket holds with both constants equal to 1.
double visual_distance(const TreeBoundaryPoint& a, const TreeBoundaryPoint& b,
                       double base = 2.718281828459045235360287);

/// Busemann function beta_xi(x, y) on the tree, exact.
int busemann_tree(const TreeBoundaryPoint& xi, const Word& x, const Word& y);

enum class IsometryType { Identity, Elliptic, Parabolic, Hyperbolic };

std::string isometry_type_name(IsometryType t);

/// Nontrivial elements of a free group act as hyperbolic tree isometries;
/// there are no elliptics or parabolics since the action is free.
IsometryType classify_tree_isometry(const Word& w);

struct TreeAxis {
    TreeBoundaryPoint repelling;   // h^-
    TreeBoundaryPoint attracting;  // h^+
    int translation_length = 0;
};

/// Endpoint map on hyperbolic elements: h = u c u^-1 with c cyclically
/// reduced gives (u c^-inf, u c^inf) and translation length |c|.
TreeAxis tree_axis(const Word& h);

/// Distance from the basepoint to the axis of h (= |u| above).
int dist_to_axis(const Word& h);

}  // namespace hypercrit
