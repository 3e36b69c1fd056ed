#include "hypercrit/boundary_point.hpp"

#include <cmath>
#include <numeric>

#include "hypercrit/errors.hpp"

namespace hypercrit {

namespace {

bool cyclically_reduced(const Word& w) {
    return w.is_identity() || w.first() != letter_inverse(w.last());
}

Word rotate_left(const Word& w, int k) {
    // w = xy with |x| = k  ->  yx
    std::vector<Letter> ls;
    ls.reserve(static_cast<std::size_t>(w.length()));
    for (int i = 0; i < w.length(); ++i) ls.push_back(w.letter((i + k) % w.length()));
    return Word::from_reduced(std::move(ls));
}

}  // namespace

TreeBoundaryPoint TreeBoundaryPoint::make(const Word& prefix, const Word& tail) {
    if (tail.is_identity()) throw InvalidInputError("boundary point: empty periodic tail");
    if (!cyclically_reduced(tail))
        throw InvalidInputError("boundary point: tail is not cyclically reduced");

    // Resolve cancellation at the junction by consuming tail letters.
    std::vector<Letter> p = prefix.letters();
    int phase = 0;
    while (!p.empty() && p.back() == letter_inverse(tail.letter(phase))) {
        p.pop_back();
        phase = (phase + 1) % tail.length();
    }
    Word t = rotate_left(tail, phase);

    // Primitive tail, then shortest prefix (absorb trailing letters into a
    // backwards rotation of the tail).
    t = primitive_root(t);
    while (!p.empty() && p.back() == t.last()) {
        p.pop_back();
        t = rotate_left(t, t.length() - 1);
    }

    TreeBoundaryPoint bp;
    bp.prefix_ = Word::from_reduced(std::move(p));
    bp.tail_ = t;
    return bp;
}

Letter TreeBoundaryPoint::letter_at(int i) const {
    if (i < prefix_.length()) return prefix_.letter(i);
    return tail_.letter((i - prefix_.length()) % tail_.length());
}

std::optional<int> TreeBoundaryPoint::confluence(const TreeBoundaryPoint& a,
                                                 const TreeBoundaryPoint& b) {
    if (a == b) return std::nullopt;
    int m = std::max(a.prefix_.length(), b.prefix_.length());
    int l = std::lcm(a.tail_.length(), b.tail_.length());
    int bound = m + l;
    for (int i = 0; i < bound; ++i) {
        if (a.letter_at(i) != b.letter_at(i)) return i;
    }
    // Identical through a full common period: same end (canonical forms
    // should already have matched).
    return std::nullopt;
}

int TreeBoundaryPoint::confluence_with_word(const Word& w) const {
    int i = 0;
    while (i < w.length() && w.letter(i) == letter_at(i)) ++i;
    return i;
}

TreeBoundaryPoint TreeBoundaryPoint::translated(const Word& g) const {
    // Feed the end's letters into g until the junction stops cancelling.
    std::vector<Letter> stack = g.letters();
    int consumed = 0;
    int total = prefix_.length();
    while (true) {
        Letter l = letter_at(consumed);
        if (!stack.empty() && stack.back() == letter_inverse(l)) {
            stack.pop_back();
            ++consumed;
        } else if (consumed < total) {
            stack.push_back(l);
            ++consumed;
        } else {
            break;  // whole prefix consumed, no cancellation pending
        }
    }
    int phase = (consumed <= total) ? 0 : (consumed - total) % tail_.length();
    return make(Word::from_reduced(std::move(stack)), rotate_left(tail_, phase));
}

std::string TreeBoundaryPoint::str() const { return prefix_.str() + "(" + tail_.str() + ")*"; }

double visual_distance(const TreeBoundaryPoint& a, const TreeBoundaryPoint& b, double base) {
    if (base <= 1.0) throw InvalidInputError("visual metric parameter must exceed 1");
    auto c = TreeBoundaryPoint::confluence(a, b);
    if (!c) return 0.0;
    return std::pow(base, -static_cast<double>(*c));
}

int busemann_tree(const TreeBoundaryPoint& xi, const Word& x, const Word& y) {
    int cx = xi.confluence_with_word(x);
    int cy = xi.confluence_with_word(y);
    return (x.length() - 2 * cx) - (y.length() - 2 * cy);
}

std::string isometry_type_name(IsometryType t) {
    switch (t) {
        case IsometryType::Identity: return "identity";
        case IsometryType::Elliptic: return "elliptic";
        case IsometryType::Parabolic: return "parabolic";
        case IsometryType::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

IsometryType classify_tree_isometry(const Word& w) {
    return w.is_identity() ? IsometryType::Identity : IsometryType::Hyperbolic;
}

TreeAxis tree_axis(const Word& h) {
    if (h.is_identity())
        throw InvalidInputError("axis_endpoints: identity has no axis");
    CyclicDecomposition d = cyclic_decompose(h);
    TreeAxis ax;
    ax.attracting = TreeBoundaryPoint::make(d.wing, d.core);
    ax.repelling = TreeBoundaryPoint::make(d.wing, d.core.inverse());
    ax.translation_length = d.core.length();
    return ax;
}

int dist_to_axis(const Word& h) {
    if (h.is_identity())
        throw InvalidInputError("dist_to_axis: identity has no axis");
    return cyclic_decompose(h).wing.length();
}

}  // namespace hypercrit
