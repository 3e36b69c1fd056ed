#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hypercrit {

/// Letters of F_k: generator i is encoded as 2*i, its inverse as 2*i + 1.
/// String form: 'a' + i for generators, 'A' + i for inverses.
using Letter = std::int8_t;

constexpr Letter letter_inverse(Letter l) { return static_cast<Letter>(l ^ 1); }
constexpr int letter_gen(Letter l) { return l >> 1; }
constexpr bool letter_is_inverse(Letter l) { return (l & 1) != 0; }
constexpr int alphabet_size(int rank) { return 2 * rank; }

char letter_to_char(Letter l);
Letter letter_from_char(char c, int rank);

/// A reduced word in the free group F_k: the exact group element, and the
/// vertex it moves the basepoint to in the Cayley tree. The empty word is
/// the basepoint o. Instances are immutable values; every factory reduces.
class Word {
public:
    Word() = default;

    /// Free reduction of an arbitrary letter sequence.
    static Word reduce(std::span<const Letter> letters);
    static Word from_reduced(std::vector<Letter> letters);  // trusts the caller

    /// Parse compact string form ("abA" = a b a^-1, "" = identity).
    static Word parse(const std::string& s, int rank);

    int length() const { return static_cast<int>(letters_.size()); }
    bool is_identity() const { return letters_.empty(); }
    const std::vector<Letter>& letters() const { return letters_; }
    Letter letter(int i) const { return letters_[static_cast<std::size_t>(i)]; }
    Letter first() const { return letters_.front(); }
    Letter last() const { return letters_.back(); }

    Word inverse() const;
    Word prefix(int len) const;
    Word suffix_from(int start) const;
    Word pow(int e) const;

    /// Reduced product. The group operation.
    friend Word operator*(const Word& a, const Word& b);

    /// Largest generator index used, plus one (0 for the identity).
    int min_rank() const;

    std::string str() const;

    std::strong_ordering operator<=>(const Word& o) const;
    bool operator==(const Word& o) const = default;

private:
    std::vector<Letter> letters_;
};

/// Length-then-lexicographic order; the tie-break order used everywhere a
/// canonical representative is needed.
bool shortlex_less(const Word& a, const Word& b);

/// Word metric distance d(x, y) = |x^-1 y|.
int tree_dist(const Word& x, const Word& y);

/// Number of shared leading letters.
int common_prefix_len(const Word& x, const Word& y);

/// (x|y)_base = (d(x,base) + d(y,base) - d(x,y)) / 2. With base = o this is
/// the common prefix length; returned doubled to stay in exact integers.
int gromov_product_doubled(const Word& x, const Word& y, const Word& base);

/// Writes h as u c u^-1 with c cyclically reduced (c nonempty iff h is).
struct CyclicDecomposition {
    Word wing;  // u
    Word core;  // c
};
CyclicDecomposition cyclic_decompose(const Word& h);

/// Smallest p with c = p^m, for cyclically reduced nonempty c.
Word primitive_root(const Word& c);

/// Streams all reduced words of length exactly n over F_rank in shortlex
/// order; fn(word). Used by oracles and ball enumerators.
void for_each_sphere_word(int rank, int n, const std::function<void(const Word&)>& fn);

/// All reduced words of length <= maxLen, in shortlex order.
void for_each_ball_word(int rank, int maxLen, const std::function<void(const Word&)>& fn);

}  // namespace hypercrit
