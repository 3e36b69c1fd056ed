#pragma once

#include <optional>
#include <vector>

#include "hypercrit/word.hpp"

namespace hypercrit {

/// Some gamma with gamma h gamma^-1 = g, or nullopt when h and g are not
/// conjugate. All solutions form gamma . C(h).
std::optional<Word> solve_conjugation(const Word& h, const Word& g);

/// Generator of the centralizer C(h) = <r>: the primitive root of h.
Word centralizer_root(const Word& h);

/// E(h, K) within the ball of radius R in the full group: all gamma with
/// |gamma| <= R and gamma h gamma^-1 in K. Exact -- solutions are unions of
/// centralizer cosets, walked directly instead of searching the ball.
/// Returned sorted shortlex.
std::vector<Word> conjugators_into(const Word& h, const std::vector<Word>& K, int R);

}  // namespace hypercrit
