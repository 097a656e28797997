#include <doctest.h>

#include "fiid/prng.hpp"
#include "fiid/subset_type.hpp"
#include "test_util.hpp"

using namespace fiid;
using namespace fiid::testutil;

TEST_CASE("type_from_distances small examples") {
    const SubsetType v = SubsetType::from_distances(3, {{0}});
    CHECK(v == vertex_type(3));
    CHECK(v.size() == 1);

    const SubsetType e = SubsetType::from_distances(3, {{0, 1}, {1, 0}});
    CHECK(e == edge_type(3));

    // three points pairwise at distance 2: the neighbors of a center
    const SubsetType f = SubsetType::from_distances(3, {{0, 2, 2}, {2, 0, 2}, {2, 2, 0}});
    CHECK(f == flower_type(3, 3));
    CHECK(f == sphere_type(3, 1));
    CHECK_FALSE(f.connected_marking());
    CHECK(edge_type(3).connected_marking());
}

TEST_CASE("type_from_distances rejections") {
    // 4-cycle metric violates the four-point condition
    CHECK_THROWS_WITH_AS(SubsetType::from_distances(
                             3, {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}}),
                         doctest::Contains("four-point"), std::invalid_argument);
    // unit triangle has odd perimeter
    CHECK_THROWS_WITH_AS(SubsetType::from_distances(3, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}),
                         doctest::Contains("odd triangle"), std::invalid_argument);
    // four pairwise-distance-2 points need a degree-4 center
    CHECK_THROWS_WITH_AS(
        SubsetType::from_distances(
            3, {{0, 2, 2, 2}, {2, 0, 2, 2}, {2, 2, 0, 2}, {2, 2, 2, 0}}),
        doctest::Contains("degree"), std::invalid_argument);
    CHECK_NOTHROW(SubsetType::from_distances(
        4, {{0, 2, 2, 2}, {2, 0, 2, 2}, {2, 2, 0, 2}, {2, 2, 2, 0}}));
    // duplicate marked vertices
    CHECK_THROWS_WITH_AS(SubsetType::from_distances(3, {{0, 0}, {0, 0}}),
                         doctest::Contains("distance 0"), std::invalid_argument);
    CHECK_THROWS_AS(SubsetType::from_distances(3, {{0, 1}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(SubsetType::from_distances(2, {{0}}), std::invalid_argument);
}

TEST_CASE("canonicalization is a congruence and idempotent") {
    Rng rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 3 + static_cast<int>(uniform_below(rng, 3));
        const DistMatrix dist = random_tree_metric(rng, d, 10, 6);
        const SubsetType t = SubsetType::from_distances(d, dist);
        const auto perm = random_permutation(rng, static_cast<int>(dist.size()));
        const SubsetType t2 = SubsetType::from_distances(d, permuted(dist, perm));
        CHECK(t == t2);
        // stored form is a fixed point
        CHECK(SubsetType::from_distances(d, t.distances()) == t);
    }
}

TEST_CASE("canonical matrix is lexicographically minimal on small instances") {
    // brute-force check of minimality over all permutations, colex reading
    Rng rng(99);
    const auto colex_seq = [](const DistMatrix& m) {
        std::vector<int> s;
        for (size_t j = 1; j < m.size(); ++j)
            for (size_t i = 0; i < j; ++i) s.push_back(m[i][j]);
        return s;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const DistMatrix dist = random_tree_metric(rng, 3, 7, 5);
        const int n = static_cast<int>(dist.size());
        const SubsetType t = SubsetType::from_distances(3, dist);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::vector<int> best;
        do {
            const auto s = colex_seq(permuted(dist, perm));
            if (best.empty() || s < best) best = s;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(colex_seq(t.distances()) == best);
    }
}

TEST_CASE("ball basics") {
    const SubsetType v = vertex_type(3);
    CHECK(ball(v, 0) == v);
    // star on d+1 vertices: center plus 3 neighbors
    const SubsetType star = SubsetType::from_distances(
        3, {{0, 1, 1, 1}, {1, 0, 2, 2}, {1, 2, 0, 2}, {1, 2, 2, 0}});
    CHECK(ball(v, 1) == star);
    CHECK(ball(edge_type(3), 1).size() == 6);
    CHECK(ball(vertex_type(4), 1).size() == 5);
}

TEST_CASE("ball semigroup law on named shapes") {
    for (const SubsetType& t :
         {vertex_type(3), edge_type(3), pair_type(3, 3), flower_type(3, 2), sphere_type(3, 2)}) {
        CHECK(ball(ball(t, 1), 1) == ball(t, 2));
        CHECK(ball(ball(t, 2), 1) == ball(t, 3));
    }
    // the 2-ball of the radius-2 sphere fills in the whole 4-ball
    CHECK(ball(sphere_type(3, 2), 2) == ball(vertex_type(3), 4));
}

TEST_CASE("ball_size closed forms at d=3") {
    CHECK(ball_size(vertex_type(3), 0) == 1);
    CHECK(ball_size(vertex_type(3), 1) == 4);
    for (int r = 0; r <= 8; ++r) {
        CHECK(ball_size(vertex_type(3), r) == 3 * (1LL << r) - 2);
        CHECK(ball_size(edge_type(3), r) == 2 * ((1LL << (r + 1)) - 1));
    }
    for (int r = 1; r <= 6; ++r) {
        CHECK(ball_size(vertex_type(3), r) == ball(vertex_type(3), r).size());
        CHECK(ball_size(edge_type(3), r - 1) == ball(edge_type(3), r - 1).size());
    }
}

TEST_CASE("ball_size monotonicity and subadditivity") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 3 + static_cast<int>(uniform_below(rng, 2));
        const SubsetType t =
            SubsetType::from_distances(d, random_tree_metric(rng, d, 8, 4));
        long long prev = -1;
        for (int k = 0; k <= 4; ++k) {
            const long long s = ball_size(t, k);
            CHECK(s > prev);
            CHECK(s <= t.size() * ball_size(vertex_type(d), k));
            prev = s;
        }
    }
}

TEST_CASE("display names") {
    CHECK(type_display_name(vertex_type(3)) == "vertex");
    CHECK(type_display_name(edge_type(3)) == "edge");
    CHECK(type_display_name(pair_type(3, 3)) == "dist3");
    CHECK(type_display_name(path_type(3, 3)) == "P3");
    CHECK(type_display_name(sphere_type(3, 2)) == "S2");
    CHECK(type_display_name(flower_type(3, 2)) == "dist2");
    CHECK(type_display_name(flower_type(4, 3)) == "flower3");
    CHECK(type_display_name(flower_type(3, 3)) == "S1");
    CHECK(type_display_name(ball(vertex_type(3), 1)) == "star");
    CHECK(type_display_name(ball(edge_type(3), 2)) == "B2(edge)");
}

TEST_CASE("cross-degree comparison is forbidden") {
    CHECK_THROWS_AS((void)(vertex_type(3) == vertex_type(4)), std::invalid_argument);
}
