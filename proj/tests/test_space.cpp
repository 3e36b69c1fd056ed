#include <doctest.h>

#include <cmath>
#include <random>

#include "hypercrit/boundary_point.hpp"
#include "hypercrit/errors.hpp"
#include "hypercrit/plane.hpp"
#include "hypercrit/word.hpp"
#include "test_util.hpp"

using namespace hypercrit;

namespace {

Word W(const std::string& s, int rank = 2) { return Word::parse(s, rank); }

TreeBoundaryPoint end_of(const std::string& prefix, const std::string& tail, int rank = 2) {
    return TreeBoundaryPoint::make(W(prefix, rank), W(tail, rank));
}

}  // namespace

TEST_CASE("word reduction") {
    CHECK(W("aAb").str() == "b");
    CHECK(W("").str() == "");
    CHECK(W("abBa").str() == "aa");
    CHECK(W("abAB").length() == 4);
    // fixed point on already-reduced input
    CHECK(W("abab").str() == "abab");
    CHECK_THROWS_AS(Word::parse("az", 2), InvalidInputError);
}

TEST_CASE("word algebra") {
    CHECK((W("ab") * W("Ba")).str() == "aa");
    CHECK(W("ab").inverse().str() == "BA");
    CHECK(W("ab").pow(3).str() == "ababab");
    CHECK(W("ab").pow(-2).str() == "BABA");
    CHECK(W("aa").pow(0).str() == "");
}

TEST_CASE("tree distance and gromov product") {
    CHECK(tree_dist(W(""), W("ab")) == 2);
    CHECK(tree_dist(W("a"), W("b")) == 2);
    CHECK(tree_dist(W("ab"), W("ab")) == 0);
    CHECK(gromov_product_doubled(W("ab"), W("abb"), W("")) == 4);  // (ab, ab^2)_e = 2
    CHECK(gromov_product_doubled(W("a"), W("b"), W("")) == 0);
    CHECK(gromov_product_doubled(W("ab"), W("ab"), W("")) == 4);   // = length
}

TEST_CASE("triangle inequality and tripod condition on the tree") {
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        Word x = testutil::random_word_up_to(rng, 2, 8);
        Word y = testutil::random_word_up_to(rng, 2, 8);
        Word z = testutil::random_word_up_to(rng, 2, 8);
        CHECK(tree_dist(x, z) <= tree_dist(x, y) + tree_dist(y, z));
        // 0-hyperbolicity: min of the three pairwise Gromov products at o is
        // attained at least twice.
        int a = gromov_product_doubled(x, y, Word());
        int b = gromov_product_doubled(y, z, Word());
        int c = gromov_product_doubled(x, z, Word());
        int mn = std::min({a, b, c});
        int hits = (a == mn) + (b == mn) + (c == mn);
        CHECK(hits >= 2);
    }
}

TEST_CASE("boundary points canonicalize and compare") {
    CHECK(end_of("a", "ba") == end_of("", "ab"));
    CHECK(end_of("abab", "ab") == end_of("", "ab"));
    CHECK(end_of("", "abab") == end_of("", "ab"));  // primitive tail
    CHECK(end_of("", "a") != end_of("", "b"));
    // junction cancellation: b . (b^-1 a)^inf
    TreeBoundaryPoint p = TreeBoundaryPoint::make(W("b"), W("Ba"));
    CHECK(p.letter_at(0) == W("a").letter(0));
    CHECK_THROWS_AS(TreeBoundaryPoint::make(W(""), W("")), InvalidInputError);
    CHECK_THROWS_AS(TreeBoundaryPoint::make(W(""), W("aA")), InvalidInputError);
}

TEST_CASE("visual distance on the tree") {
    auto a_inf = end_of("", "a");
    auto b_inf = end_of("", "b");
    auto ab_inf = end_of("a", "b");
    CHECK(visual_distance(a_inf, b_inf) == doctest::Approx(1.0));
    CHECK(visual_distance(a_inf, ab_inf) == doctest::Approx(std::exp(-1.0)));
    CHECK(visual_distance(a_inf, a_inf) == 0.0);
    // exposed parameter
    CHECK(visual_distance(a_inf, ab_inf, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("busemann on the tree") {
    auto a_inf = end_of("", "a");
    CHECK(busemann_tree(a_inf, W(""), W("a")) == 1);
    CHECK(busemann_tree(a_inf, W("ba"), W("ba")) == 0);
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        Word x = testutil::random_word_up_to(rng, 2, 7);
        Word y = testutil::random_word_up_to(rng, 2, 7);
        Word z = testutil::random_word_up_to(rng, 2, 7);
        auto xi = TreeBoundaryPoint::make(testutil::random_word_up_to(rng, 2, 5),
                                          testutil::random_reduced_word(rng, 2, 1));
        // cocycle identity, exact
        CHECK(busemann_tree(xi, x, z) == busemann_tree(xi, x, y) + busemann_tree(xi, y, z));
        CHECK(std::abs(busemann_tree(xi, x, y)) <= tree_dist(x, y));
    }
}

TEST_CASE("tree isometries classify and have exact axes") {
    CHECK(classify_tree_isometry(W("")) == IsometryType::Identity);
    CHECK(classify_tree_isometry(W("ab")) == IsometryType::Hyperbolic);

    TreeAxis ax = tree_axis(W("ab"));
    CHECK(ax.translation_length == 2);
    CHECK(ax.attracting == end_of("", "ab"));
    CHECK(ax.repelling == end_of("", "BA"));

    TreeAxis ax2 = tree_axis(W("abA"));
    CHECK(ax2.translation_length == 1);
    CHECK(ax2.attracting == end_of("a", "b"));
    CHECK(ax2.repelling == end_of("a", "B"));
    CHECK_THROWS_AS(tree_axis(W("")), InvalidInputError);
}

TEST_CASE("axis endpoints are conjugation equivariant") {
    std::mt19937 rng(23);
    int done = 0;
    while (done < 100) {
        Word h = testutil::random_word_up_to(rng, 2, 6);
        if (h.is_identity()) continue;
        Word g = testutil::random_word_up_to(rng, 2, 8);
        TreeAxis base = tree_axis(h);
        TreeAxis conj = tree_axis(g * h * g.inverse());
        CHECK(conj.attracting == base.attracting.translated(g));
        CHECK(conj.repelling == base.repelling.translated(g));
        CHECK(conj.translation_length == base.translation_length);
        ++done;
    }
}

TEST_CASE("plane distances and busemann") {
    PlanePoint i(0, 1), i2(0, 2);
    CHECK(plane_dist(i, i2) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(plane_dist(i, i) == 0.0);
    CHECK(busemann_plane(PlaneBoundaryPoint::infinity(), i, i2) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(PlanePoint(0, -1), InvalidInputError);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> re(-2, 2), im(0.2, 3), bnd(-2, 2);
    for (int t = 0; t < 200; ++t) {
        PlanePoint x(re(rng), im(rng)), y(re(rng), im(rng)), z(re(rng), im(rng));
        CHECK(plane_dist(x, z) <= plane_dist(x, y) + plane_dist(y, z) + 1e-9);
        CHECK(plane_dist(x, y) == doctest::Approx(plane_dist(y, x)).epsilon(1e-12));
        PlaneBoundaryPoint xi =
            t % 3 == 0 ? PlaneBoundaryPoint::infinity() : PlaneBoundaryPoint::at(bnd(rng));
        double bxy = busemann_plane(xi, x, y);
        CHECK(std::abs(bxy) <= plane_dist(x, y) + 1e-9);
        double cocycle = busemann_plane(xi, x, z) -
                         (busemann_plane(xi, x, y) + busemann_plane(xi, y, z));
        CHECK(std::abs(cocycle) <= 1e-9);
    }
}

TEST_CASE("plane isometry classification") {
    CHECK(classify_plane_isometry(PlaneIsometry(2, 0, 0, 0.5)) == IsometryType::Hyperbolic);
    CHECK(classify_plane_isometry(PlaneIsometry(1, 1, 0, 1)) == IsometryType::Parabolic);
    CHECK(classify_plane_isometry(PlaneIsometry(0, -1, 1, 0)) == IsometryType::Elliptic);
    CHECK(classify_plane_isometry(PlaneIsometry(1, 0, 0, 1)) == IsometryType::Identity);
    CHECK(classify_plane_isometry(PlaneIsometry(-1, 0, 0, -1)) == IsometryType::Identity);
    CHECK_THROWS_AS(PlaneIsometry(1, 1, 1, 1), InvalidInputError);
}

TEST_CASE("plane axis endpoints and translation length") {
    PlaneAxis ax = plane_axis(PlaneIsometry(2, 0, 0, 0.5));
    CHECK(ax.attracting.at_infinity);
    CHECK_FALSE(ax.repelling.at_infinity);
    CHECK(ax.repelling.value == doctest::Approx(0.0));
    CHECK(ax.translation_length == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(plane_axis(PlaneIsometry(1, 1, 0, 1)), InvalidInputError);

    // equivariance under conjugation
    PlaneIsometry h(2, 0, 0, 0.5);
    PlaneIsometry g(1, 1, 0, 1);  // z + 1
    PlaneAxis conj = plane_axis(g * h * g.inverse());
    CHECK(conj.translation_length == doctest::Approx(ax.translation_length).epsilon(1e-9));
    CHECK(conj.repelling.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(conj.attracting.at_infinity);
}
