#pragma once

#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fiid {

struct EdgeRec {
    int id = 0;
    int u = 0;
    int v = 0;
};

/// Finite multigraph without loops, the object being lifted and covered.
/// Vertex ids are dense 0..V-1, edge ids dense 0..E-1. Edges are undirected;
/// an edge id may be traversed either way.
class BaseGraph {
public:
    BaseGraph() = default;
    BaseGraph(int num_vertices, std::vector<EdgeRec> edges);

    int vertex_count() const { return num_vertices_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const EdgeRec& edge(int id) const { return edges_[id]; }
    const std::vector<EdgeRec>& edges() const { return edges_; }

    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    /// adjacency entries: (edge id, other endpoint)
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }
    /// endpoint of `edge_id` opposite to `v`; throws if `v` is not an endpoint
    int other_end(int edge_id, int v) const;
    bool incident(int edge_id, int v) const;

    bool is_connected() const;
    /// returns the common degree if regular, nullopt otherwise
    std::optional<int> regular_degree() const;

private:
    int num_vertices_ = 0;
    std::vector<EdgeRec> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

/// Checks all BaseGraph invariants: connected, loop-free, min degree >= 1.
/// (Dense unique ids are enforced structurally at construction.)
void validate_graph(const BaseGraph& g);

/// Non-backtracking walk: consecutive steps never repeat an edge id.
struct Walk {
    int start = 0;
    std::vector<int> steps;

    int length() const { return static_cast<int>(steps.size()); }
};

/// walks[v] lists the walks assigned to vertex v, order significant.
using WalkAssignment = std::vector<std::vector<Walk>>;

/// Throws unless the walk is traversable from its start and non-backtracking.
void validate_walk(const BaseGraph& g, const Walk& w);

/// Final vertex of a traversable walk.
int walk_end(const BaseGraph& g, const Walk& w);

/// Free reduction: repeatedly deletes adjacent equal edge-id pairs. The result
/// is the geodesic in the universal cover between the walk's endpoints.
/// `start` is needed only to check traversability.
std::vector<int> reduce_walk(const BaseGraph& g, int start, const std::vector<int>& steps);

/// Distance in the universal cover between the lifted endpoints of w1 and w2.
/// Without a bridge both walks must share their start vertex; with a bridge
/// the bridge edge must join w1.start to w2.start.
int walk_distance(const BaseGraph& g, const Walk& w1, const Walk& w2,
                  std::optional<int> bridge = std::nullopt);

/// All non-backtracking walks from v of length <= max_len, ordered by length
/// then lexicographically by edge ids.
std::vector<Walk> enumerate_nb_walks(const BaseGraph& g, int v, int max_len);

/// Fills missing entries with the single empty walk and validates every walk.
WalkAssignment normalize_walks(const BaseGraph& g, WalkAssignment walks);

// ---------------------------------------------------------------------------
// Text format, line oriented:
//   v <id>
//   e <id> <u> <v>
//   walk <vertex> [<edge-id> ...]
// '#' starts a comment line. This is the interchange format for the CLI.

struct GraphFile {
    BaseGraph graph;
    WalkAssignment walks;  // empty-walk defaults applied
    bool had_walk_lines = false;
};

GraphFile parse_graph_text(std::istream& in);
GraphFile parse_graph_text(const std::string& text);
GraphFile load_graph_file(const std::string& path);
std::string format_graph_text(const BaseGraph& g, const WalkAssignment* walks = nullptr);

}  // namespace fiid
