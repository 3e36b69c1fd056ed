#include "hypercrit/word.hpp"

#include <algorithm>

#include "hypercrit/errors.hpp"

namespace hypercrit {

char letter_to_char(Letter l) {
    int g = letter_gen(l);
    return letter_is_inverse(l) ? static_cast<char>('A' + g) : static_cast<char>('a' + g);
}

Letter letter_from_char(char c, int rank) {
    if (c >= 'a' && c < 'a' + rank) return static_cast<Letter>(2 * (c - 'a'));
    if (c >= 'A' && c < 'A' + rank) return static_cast<Letter>(2 * (c - 'A') + 1);
    throw InvalidInputError(std::string("letter '") + c + "' outside the rank-" +
                            std::to_string(rank) + " alphabet");
}

Word Word::reduce(std::span<const Letter> letters) {
    Word w;
    w.letters_.reserve(letters.size());
    for (Letter l : letters) {
        if (!w.letters_.empty() && w.letters_.back() == letter_inverse(l)) {
            w.letters_.pop_back();
        } else {
            w.letters_.push_back(l);
        }
    }
    return w;
}

Word Word::from_reduced(std::vector<Letter> letters) {
    Word w;
    w.letters_ = std::move(letters);
    return w;
}

Word Word::parse(const std::string& s, int rank) {
    std::vector<Letter> ls;
    ls.reserve(s.size());
    for (char c : s) ls.push_back(letter_from_char(c, rank));
    return reduce(ls);
}

Word Word::inverse() const {
    std::vector<Letter> ls(letters_.rbegin(), letters_.rend());
    for (Letter& l : ls) l = letter_inverse(l);
    return from_reduced(std::move(ls));
}

Word Word::prefix(int len) const {
    return from_reduced(std::vector<Letter>(letters_.begin(), letters_.begin() + len));
}

Word Word::suffix_from(int start) const {
    return from_reduced(std::vector<Letter>(letters_.begin() + start, letters_.end()));
}

Word Word::pow(int e) const {
    Word base = e < 0 ? inverse() : *this;
    int n = e < 0 ? -e : e;
    Word r;
    for (int i = 0; i < n; ++i) r = r * base;
    return r;
}

Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> ls = a.letters_;
    for (Letter l : b.letters_) {
        if (!ls.empty() && ls.back() == letter_inverse(l)) {
            ls.pop_back();
        } else {
            ls.push_back(l);
        }
    }
    return Word::from_reduced(std::move(ls));
}

int Word::min_rank() const {
    int r = 0;
    for (Letter l : letters_) r = std::max(r, letter_gen(l) + 1);
    return r;
}

std::string Word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(letter_to_char(l));
    return s;
}

std::strong_ordering Word::operator<=>(const Word& o) const {
    return std::lexicographical_compare_three_way(letters_.begin(), letters_.end(),
                                                  o.letters_.begin(), o.letters_.end());
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a < b;
}

int tree_dist(const Word& x, const Word& y) {
    int c = common_prefix_len(x, y);
    return (x.length() - c) + (y.length() - c);
}

int common_prefix_len(const Word& x, const Word& y) {
    int n = std::min(x.length(), y.length());
    int i = 0;
    while (i < n && x.letter(i) == y.letter(i)) ++i;
    return i;
}

int gromov_product_doubled(const Word& x, const Word& y, const Word& base) {
    return tree_dist(x, base) + tree_dist(y, base) - tree_dist(x, y);
}

CyclicDecomposition cyclic_decompose(const Word& h) {
    int lo = 0, hi = h.length();
    while (hi - lo >= 2 && h.letter(lo) == letter_inverse(h.letter(hi - 1))) {
        ++lo;
        --hi;
    }
    CyclicDecomposition d;
    d.wing = h.prefix(lo);
    d.core = Word::from_reduced(
        std::vector<Letter>(h.letters().begin() + lo, h.letters().begin() + hi));
    return d;
}

Word primitive_root(const Word& c) {
    int n = c.length();
    if (n == 0) throw InvalidInputError("primitive_root: empty word");
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (int i = d; i < n && periodic; ++i) periodic = c.letter(i) == c.letter(i - d);
        if (periodic) return c.prefix(d);
    }
    return c;  // unreachable: d = n always matches
}

namespace {

void sphere_walk(int rank, int n, std::vector<Letter>& cur,
                 const std::function<void(const Word&)>& fn) {
    if (static_cast<int>(cur.size()) == n) {
        fn(Word::from_reduced(cur));
        return;
    }
    for (Letter l = 0; l < alphabet_size(rank); ++l) {
        if (!cur.empty() && cur.back() == letter_inverse(l)) continue;
        cur.push_back(l);
        sphere_walk(rank, n, cur, fn);
        cur.pop_back();
    }
}

}  // namespace

void for_each_sphere_word(int rank, int n, const std::function<void(const Word&)>& fn) {
    std::vector<Letter> cur;
    cur.reserve(static_cast<std::size_t>(n));
    sphere_walk(rank, n, cur, fn);
}

void for_each_ball_word(int rank, int maxLen, const std::function<void(const Word&)>& fn) {
    for (int n = 0; n <= maxLen; ++n) for_each_sphere_word(rank, n, fn);
}

}  // namespace hypercrit
