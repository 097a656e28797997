#include "fiid/subset_type.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace fiid {

namespace {

void check_steiner_degrees(const MetricTree& t, int d) {
    for (int x = 0; x < t.size(); ++x)
        if (static_cast<int>(t.adj[x].size()) > d)
            throw std::invalid_argument("not realizable in T_" + std::to_string(d) +
                                        ": Steiner tree vertex of degree " +
                                        std::to_string(t.adj[x].size()));
}

}  // namespace

SubsetType SubsetType::from_distances(int d, const DistMatrix& dist) {
    if (d < 3) throw std::invalid_argument("subset type: tree degree must be >= 3");
    check_metric_basics(dist);
    check_parity(dist);
    check_four_point(dist);
    MetricTree tree = steiner_tree_from_metric(dist);
    check_steiner_degrees(tree, d);
    return SubsetType(d, canonical_min_matrix(dist, tree));
}

int SubsetType::diameter() const {
    int m = 0;
    for (const auto& row : dist_)
        for (const int x : row) m = std::max(m, x);
    return m;
}

bool SubsetType::connected_marking() const {
    const MetricTree t = steiner();
    for (int x = 0; x < t.size(); ++x)
        if (t.point_of_node[x] < 0) return false;
    return true;
}

MetricTree SubsetType::steiner() const { return steiner_tree_from_metric(dist_); }

bool SubsetType::operator==(const SubsetType& other) const {
    if (d_ != other.d_)
        throw std::invalid_argument("subset types of different tree degrees are not comparable");
    return dist_ == other.dist_;
}

bool SubsetType::operator<(const SubsetType& other) const {
    if (d_ != other.d_) return d_ < other.d_;
    if (size() != other.size()) return size() < other.size();
    return dist_ < other.dist_;
}

SubsetType ball(const SubsetType& t, int k) {
    if (k < 0) throw std::invalid_argument("ball: negative radius");
    if (k == 0) return t;
    MetricTree tree = t.steiner();
    grow_ball(tree, t.degree(), k);
    const DistMatrix d = marked_distances(tree);
    return SubsetType(t.degree(), canonical_min_matrix(d, tree));
}

long long ball_size(const SubsetType& t, int k) {
    if (k < 0) throw std::invalid_argument("ball_size: negative radius");
    if (k == 0) return t.size();
    MetricTree tree = t.steiner();
    grow_ball(tree, t.degree(), k);
    return static_cast<long long>(tree.node_of_point.size());
}

SubsetType vertex_type(int d) { return SubsetType::from_distances(d, {{0}}); }

SubsetType pair_type(int d, int k) {
    if (k < 1) throw std::invalid_argument("pair_type: distance must be >= 1");
    return SubsetType::from_distances(d, {{0, k}, {k, 0}});
}

SubsetType edge_type(int d) { return pair_type(d, 1); }

SubsetType path_type(int d, int num_edges) {
    if (num_edges < 0) throw std::invalid_argument("path_type: negative length");
    const int n = num_edges + 1;
    DistMatrix dist(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dist[i][j] = std::abs(i - j);
    return SubsetType::from_distances(d, dist);
}

SubsetType flower_type(int d, int i) {
    if (i < 1 || i > d) throw std::invalid_argument("flower_type: need 1 <= i <= d");
    DistMatrix dist(i, std::vector<int>(i, 2));
    for (int a = 0; a < i; ++a) dist[a][a] = 0;
    return SubsetType::from_distances(d, dist);
}

SubsetType sphere_type(int d, int k) {
    if (k < 0) throw std::invalid_argument("sphere_type: negative radius");
    if (k == 0) return vertex_type(d);
    // mark the level-k vertices of the k-ball tree
    MetricTree tree;
    const int root = tree.add_node();
    struct Item {
        int node, depth;
    };
    std::queue<Item> q;
    q.push({root, 0});
    int next_point = 0;
    while (!q.empty()) {
        const auto [x, depth] = q.front();
        q.pop();
        if (depth == k) {
            tree.point_of_node[x] = next_point++;
            tree.node_of_point.push_back(x);
            continue;
        }
        const int children = (depth == 0) ? d : d - 1;
        for (int c = 0; c < children; ++c) {
            const int y = tree.add_node();
            tree.add_edge(x, y);
            q.push({y, depth + 1});
        }
    }
    const DistMatrix dist = marked_distances(tree);
    return SubsetType::from_distances(d, dist);
}

std::string type_display_name(const SubsetType& t) {
    const int d = t.degree();
    const int n = t.size();
    if (n == 1) return "vertex";
    if (n == 2) {
        const int k = t.distances()[0][1];
        return k == 1 ? "edge" : "dist" + std::to_string(k);
    }
    // i points pairwise at distance 2: flower_i (S1 when i = d)
    {
        bool all2 = true;
        for (int i = 0; i < n && all2; ++i)
            for (int j = 0; j < n && all2; ++j)
                if (i != j && t.distances()[i][j] != 2) all2 = false;
        if (all2 && n <= d) return n == d ? "S1" : "flower" + std::to_string(n);
    }
    if (t == path_type(d, n - 1)) return "P" + std::to_string(n - 1);
    // spheres: |S_k| = d(d-1)^(k-1)
    {
        long long sz = d;
        for (int k = 1; k <= 12 && sz <= n; ++k) {
            if (sz == n && t == sphere_type(d, k)) return "S" + std::to_string(k);
            sz *= d - 1;
        }
    }
    // balls around the small named shapes; size filter avoids canonicalizing
    // large candidates needlessly
    for (int k = 1; k <= 6; ++k) {
        for (const char* base : {"vertex", "edge"}) {
            const SubsetType seed = base[0] == 'v' ? vertex_type(d) : edge_type(d);
            if (ball_size(seed, k) != n) continue;
            if (t == ball(seed, k)) {
                if (base[0] == 'v' && k == 1) return "star";
                return "B" + std::to_string(k) + "(" + base + ")";
            }
        }
    }
    // fallback: upper-triangle dump
    std::ostringstream os;
    os << "type{n=" << n << ";";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) os << " " << t.distances()[i][j];
    os << "}";
    return os.str();
}

}  // namespace fiid
