#pragma once

#include <vector>

namespace fiid {

using DistMatrix = std::vector<std::vector<int>>;

/// Unit-edge tree spanned by a finite set of marked points (possibly with
/// unmarked interior vertices). Realizes a tree metric inside T_d.
struct MetricTree {
    std::vector<std::vector<int>> adj;
    std::vector<int> point_of_node;  // point index, or -1 for unmarked nodes
    std::vector<int> node_of_point;  // point index -> node

    int size() const { return static_cast<int>(adj.size()); }
    int add_node(int point = -1);
    void add_edge(int a, int b);
    std::vector<int> dist_from(int src) const;
    std::vector<int> dist_from_set(const std::vector<int>& srcs) const;
};

void check_metric_basics(const DistMatrix& d);
/// Four-point condition over all index 4-tuples with repeats (covers the
/// triangle inequality); order-independent.
void check_four_point(const DistMatrix& d);
/// Perimeter of every index triple must be even, else unit-edge medians
/// do not exist.
void check_parity(const DistMatrix& d);

/// Reconstructs the unit-edge Steiner tree realizing the metric. Throws
/// std::invalid_argument when the matrix is not a tree metric.
MetricTree steiner_tree_from_metric(const DistMatrix& d);

/// Expands `tree` so that every T_d vertex within distance k of a marked point
/// is present, and re-points it at the ball: marked points of the result are
/// exactly the nodes within distance k of the original marked set, indexed in
/// node order. Tree degree d is assumed valid for the input.
void grow_ball(MetricTree& tree, int d, int k);

/// Pairwise distances of the tree's marked points, in point order.
DistMatrix marked_distances(const MetricTree& tree);

/// Lexicographically minimal distance matrix over all simultaneous row/column
/// permutations, reading the upper triangle column by column. Branch-and-bound
/// over orderings; candidates tying on their distance column are deduplicated
/// via rooted canonical codes of the Steiner tree, which prunes the otherwise
/// factorial tie explosion on symmetric types.
DistMatrix canonical_min_matrix(const DistMatrix& d, const MetricTree& tree);
DistMatrix canonical_min_matrix(const DistMatrix& d);

}  // namespace fiid
