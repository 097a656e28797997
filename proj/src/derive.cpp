#include "fiid/derive.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "fiid/prng.hpp"

namespace fiid {

namespace {

using ReducedPath = std::vector<int>;

// Distance in the universal cover between endpoints of two reduced paths from
// a common origin: |p| + |q| - 2 * (common prefix length).
int reduced_distance(const ReducedPath& p, const ReducedPath& q) {
    size_t c = 0;
    while (c < p.size() && c < q.size() && p[c] == q[c]) ++c;
    return static_cast<int>(p.size() + q.size() - 2 * c);
}

SubsetType type_of_endpoints(int d, const std::vector<ReducedPath>& pts) {
    const int n = static_cast<int>(pts.size());
    DistMatrix dist(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = reduced_distance(pts[i], pts[j]);
    return SubsetType::from_distances(d, dist);
}

void push_unique(std::vector<ReducedPath>& pts, ReducedPath p) {
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
}

// Incremental graph assembly for the built-in constructions.
class GraphBuilder {
public:
    int add_vertex() { return num_vertices_++; }
    int add_edge(int u, int v) {
        const int id = static_cast<int>(edges_.size());
        edges_.push_back({id, u, v});
        return id;
    }
    BaseGraph build() const { return BaseGraph(num_vertices_, edges_); }
    int vertex_count() const { return num_vertices_; }

private:
    int num_vertices_ = 0;
    std::vector<EdgeRec> edges_;
};

// Rooted tree isomorphic to the k-ball of T_d; level k vertices are leaves.
struct BallTree {
    std::vector<std::vector<int>> levels;      // levels[i] = vertex ids at depth i
    std::map<int, std::pair<int, int>> parent; // vertex -> (parent vertex, edge id)
    int root = -1;
};

BallTree build_ball_tree(GraphBuilder& gb, int d, int k) {
    BallTree t;
    t.root = gb.add_vertex();
    t.levels.assign(k + 1, {});
    t.levels[0].push_back(t.root);
    for (int depth = 1; depth <= k; ++depth) {
        for (const int p : t.levels[depth - 1]) {
            const int children = (depth == 1) ? d : d - 1;
            for (int c = 0; c < children; ++c) {
                const int v = gb.add_vertex();
                const int e = gb.add_edge(p, v);
                t.levels[depth].push_back(v);
                t.parent[v] = {p, e};
            }
        }
    }
    return t;
}

// Walk along tree edges from v up to the root.
Walk path_to_root(const BallTree& t, int v) {
    Walk w;
    w.start = v;
    int at = v;
    while (at != t.root) {
        const auto [p, e] = t.parent.at(at);
        w.steps.push_back(e);
        at = p;
    }
    return w;
}

// Tree path from v to leaf b (up to the lowest common ancestor, then down).
Walk tree_path(const BallTree& t, int v, int b) {
    const auto ancestors = [&](int x) {
        std::vector<std::pair<int, int>> up;  // (vertex, edge to parent)
        while (x != t.root) {
            const auto [p, e] = t.parent.at(x);
            up.emplace_back(x, e);
            x = p;
        }
        up.emplace_back(t.root, -1);
        return up;
    };
    const auto av = ancestors(v);
    const auto ab = ancestors(b);
    // trim the common tail
    size_t i = av.size(), j = ab.size();
    while (i > 1 && j > 1 && av[i - 2].first == ab[j - 2].first) {
        --i;
        --j;
    }
    Walk w;
    w.start = v;
    for (size_t a = 0; a + 1 < i; ++a) w.steps.push_back(av[a].second);
    for (size_t a = j - 1; a-- > 0;) w.steps.push_back(ab[a].second);
    return w;
}

Construction make_edge_vertex(int d) {
    GraphBuilder gb;
    const int u = gb.add_vertex();
    const int v = gb.add_vertex();
    for (int i = 0; i < d; ++i) gb.add_edge(u, v);
    BaseGraph g = gb.build();
    WalkAssignment walks = normalize_walks(g, {});
    EntropyInequality ineq = derive_inequality(g, walks);
    ineq.set_name("edge_vertex");
    return {std::move(g), std::move(walks), std::move(ineq)};
}

Construction make_path_edge(int d) {
    GraphBuilder gb;
    const int u = gb.add_vertex();
    const int v = gb.add_vertex();
    for (int i = 0; i < d; ++i) gb.add_edge(u, v);
    BaseGraph g = gb.build();
    WalkAssignment walks(2);
    walks[u] = {Walk{u, {}}, Walk{u, {0}}};
    walks[v] = {Walk{v, {}}, Walk{v, {0}}};
    EntropyInequality ineq = derive_inequality(g, walks);
    ineq.set_name("path_edge");
    return {std::move(g), std::move(walks), std::move(ineq)};
}

Construction make_flower(int d, int i) {
    if (i < 1 || i >= d) throw std::invalid_argument("flower: need 1 <= i < d");
    GraphBuilder gb;
    const int u = gb.add_vertex();
    const int v = gb.add_vertex();
    for (int j = 0; j < d; ++j) gb.add_edge(u, v);
    BaseGraph g = gb.build();
    WalkAssignment walks(2);
    for (int j = 0; j < i; ++j) walks[u].push_back(Walk{u, {j}});
    walks[v] = {Walk{v, {}}};
    EntropyInequality ineq = derive_inequality(g, walks);
    ineq.set_name("flower_step_" + std::to_string(i));
    return {std::move(g), std::move(walks), std::move(ineq)};
}

Construction make_complete_graph(int d) {
    GraphBuilder gb;
    std::vector<int> vs(d + 1);
    for (int i = 0; i <= d; ++i) vs[i] = gb.add_vertex();
    std::map<std::pair<int, int>, int> eid;
    for (int i = 0; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) eid[{i, j}] = gb.add_edge(vs[i], vs[j]);
    BaseGraph g = gb.build();
    WalkAssignment walks(d + 1);
    walks[0] = {Walk{0, {}}};
    for (int i = 1; i <= d; ++i) walks[i] = {Walk{i, {eid[{0, i}]}}};
    EntropyInequality ineq = derive_inequality(g, walks);
    ineq.set_name("complete_graph");
    return {std::move(g), std::move(walks), std::move(ineq)};
}

Construction make_sphere(int d, int k) {
    if (k < 1) throw std::invalid_argument("sphere: need k >= 1");
    GraphBuilder gb;
    // shared boundary
    const int boundary_size = [&] {
        int b = d;
        for (int i = 1; i < k; ++i) b *= d - 1;
        return b;
    }();
    std::vector<int> boundary(boundary_size);
    for (int& b : boundary) b = gb.add_vertex();

    WalkAssignment walks;
    std::vector<std::vector<Walk>> interior_walks;  // collected per copy
    struct CopyInfo {
        BallTree tree;                 // levels 0..k-1 are fresh; level k = boundary
    };
    std::vector<CopyInfo> copies(d);
    for (int c = 0; c < d; ++c) {
        BallTree t;
        t.root = gb.add_vertex();
        t.levels.assign(k + 1, {});
        t.levels[0].push_back(t.root);
        for (int depth = 1; depth < k; ++depth) {
            for (const int p : t.levels[depth - 1]) {
                const int children = (depth == 1) ? d : d - 1;
                for (int ch = 0; ch < children; ++ch) {
                    const int v = gb.add_vertex();
                    const int e = gb.add_edge(p, v);
                    t.levels[depth].push_back(v);
                    t.parent[v] = {p, e};
                }
            }
        }
        // attach the shared boundary as level k, consecutive blocks per parent
        int next = 0;
        for (const int p : t.levels[k - 1]) {
            const int children = (k == 1) ? d : d - 1;
            for (int ch = 0; ch < children; ++ch) {
                const int b = boundary[next++];
                const int e = gb.add_edge(p, b);
                t.levels[k].push_back(b);
                t.parent[b] = {p, e};
            }
        }
        copies[c].tree = std::move(t);
    }
    BaseGraph g = gb.build();
    walks.assign(g.vertex_count(), {});
    for (int c = 0; c < d; ++c) {
        const BallTree& t = copies[c].tree;
        for (int depth = 0; depth < k; ++depth)
            for (const int v : t.levels[depth])
                for (const int b : boundary) walks[v].push_back(tree_path(t, v, b));
    }
    WalkAssignment norm = normalize_walks(g, std::move(walks));
    EntropyInequality ineq = derive_inequality(g, norm);
    ineq.set_name("sphere_" + std::to_string(k));
    return {std::move(g), std::move(norm), std::move(ineq)};
}

Construction make_mutual_info(int d, int k) {
    if (k < 1) throw std::invalid_argument("mutual_info: need k >= 1");
    GraphBuilder gb;
    WalkAssignment walks;
    if (k == 1) {
        Construction c = make_edge_vertex(d);
        c.inequality.set_name("mutual_info_1");
        return c;
    }
    const int l = k / 2;
    std::vector<BallTree> trees;
    std::vector<int> left, right;  // boundary lists joined by the extra edges
    if (k % 2 == 1) {
        trees.push_back(build_ball_tree(gb, d, l));
        trees.push_back(build_ball_tree(gb, d, l));
        left = trees[0].levels[l];
        right = trees[1].levels[l];
    } else {
        trees.push_back(build_ball_tree(gb, d, l));
        left = trees[0].levels[l];
        for (int c = 0; c < d - 1; ++c) {
            trees.push_back(build_ball_tree(gb, d, l - 1));
            const auto& lv = trees.back().levels[l - 1];
            right.insert(right.end(), lv.begin(), lv.end());
        }
    }
    // canonical boundary matching: (d-1)-regular circulant on sorted lists
    const int rs = static_cast<int>(right.size());
    for (int i = 0; i < static_cast<int>(left.size()); ++i)
        for (int j = 0; j < d - 1; ++j) gb.add_edge(left[i], right[(i + j) % rs]);
    BaseGraph g = gb.build();
    walks.assign(g.vertex_count(), {});
    for (const BallTree& t : trees)
        for (const auto& level : t.levels)
            for (const int v : level) walks[v] = {path_to_root(t, v)};
    WalkAssignment norm = normalize_walks(g, std::move(walks));
    EntropyInequality ineq = derive_inequality(g, norm);
    ineq.set_name("mutual_info_" + std::to_string(k));
    return {std::move(g), std::move(norm), std::move(ineq)};
}

}  // namespace

EntropyInequality derive_inequality(const BaseGraph& g, const WalkAssignment& walks_in) {
    validate_graph(g);
    const std::optional<int> deg = g.regular_degree();
    if (!deg) throw std::invalid_argument("derive: graph is not regular");
    const int d = *deg;
    if (d < 3) throw std::invalid_argument("derive: tree degree must be >= 3, got " +
                                           std::to_string(d));
    const WalkAssignment walks = normalize_walks(g, walks_in);

    // lifted endpoints per vertex, as reduced paths from that vertex's lift
    std::vector<std::vector<ReducedPath>> endpoints(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        for (const Walk& w : walks[v])
            push_unique(endpoints[v], reduce_walk(g, v, w.steps));

    std::map<SubsetType, mpq_class> terms;
    for (int v = 0; v < g.vertex_count(); ++v)
        terms[type_of_endpoints(d, endpoints[v])] -= d - 1;
    for (const EdgeRec& e : g.edges()) {
        std::vector<ReducedPath> pts = endpoints[e.u];
        for (const ReducedPath& q : endpoints[e.v]) {
            // route v's endpoint through the bridge edge
            ReducedPath p;
            if (!q.empty() && q.front() == e.id)
                p.assign(q.begin() + 1, q.end());
            else {
                p.reserve(q.size() + 1);
                p.push_back(e.id);
                p.insert(p.end(), q.begin(), q.end());
            }
            push_unique(pts, std::move(p));
        }
        terms[type_of_endpoints(d, pts)] += 1;
    }
    return EntropyInequality(d, std::move(terms));
}

Construction builtin_construction(const std::string& name, int d, int param) {
    if (d < 3) throw std::invalid_argument("builtin: tree degree must be >= 3");
    if (name == "edge_vertex") return make_edge_vertex(d);
    if (name == "path_edge") return make_path_edge(d);
    if (name == "flower") return make_flower(d, param);
    if (name == "complete_graph") return make_complete_graph(d);
    if (name == "sphere") return make_sphere(d, param);
    if (name == "mutual_info") return make_mutual_info(d, param);
    throw std::invalid_argument("unknown builtin construction '" + name + "'");
}

EntropyInequality builtin_inequality(const std::string& name, int d, int param) {
    if (name == "star_edge") {
        if (d < 3) throw std::invalid_argument("builtin: tree degree must be >= 3");
        // H(B_1(vertex)) >= (d/2) H(edge); known inequality, outside the recipe
        std::map<SubsetType, mpq_class> terms;
        terms[ball(vertex_type(d), 1)] = 2;
        terms[edge_type(d)] = -d;
        return EntropyInequality(d, std::move(terms), "star_edge");
    }
    return builtin_construction(name, d, param).inequality;
}

std::vector<std::string> builtin_construction_names() {
    return {"edge_vertex", "path_edge", "flower", "complete_graph", "sphere", "mutual_info"};
}

std::vector<std::string> builtin_inequality_names() {
    auto names = builtin_construction_names();
    names.push_back("star_edge");
    return names;
}

EntropyInequality blow_up(const EntropyInequality& ineq, int k) {
    if (k < 0) throw std::invalid_argument("blow_up: negative radius");
    if (k == 0) return ineq;
    std::map<SubsetType, mpq_class> terms;
    for (const auto& [t, c] : ineq.terms()) terms[ball(t, k)] += c;
    EntropyInequality out(ineq.degree(), std::move(terms));
    if (!ineq.name().empty()) out.set_name(ineq.name() + "_B" + std::to_string(k));
    return out;
}

BaseGraph lift_base(const BaseGraph& g, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("lift_base: fold count must be >= 1");
    validate_graph(g);
    Rng rng(seed);
    constexpr int kMaxAttempts = 256;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<EdgeRec> edges;
        edges.reserve(static_cast<size_t>(g.edge_count()) * n);
        for (const EdgeRec& e : g.edges()) {
            const std::vector<int> perm = random_permutation(rng, n);
            for (int i = 0; i < n; ++i)
                edges.push_back({e.id * n + i, e.u * n + i, e.v * n + perm[i]});
        }
        BaseGraph lift(g.vertex_count() * n, std::move(edges));
        if (lift.is_connected()) return lift;
    }
    throw std::runtime_error("lift_base: no connected lift found within retry budget");
}

}  // namespace fiid
