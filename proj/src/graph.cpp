#include "fiid/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace fiid {

BaseGraph::BaseGraph(int num_vertices, std::vector<EdgeRec> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
    if (num_vertices_ < 0) throw std::invalid_argument("graph: negative vertex count");
    adj_.assign(num_vertices_, {});
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        const EdgeRec& e = edges_[i];
        if (e.id != i)
            throw std::invalid_argument("graph: edge ids must be dense and unique, got id " +
                                        std::to_string(e.id) + " at position " + std::to_string(i));
        if (e.u < 0 || e.u >= num_vertices_ || e.v < 0 || e.v >= num_vertices_)
            throw std::invalid_argument("graph: edge " + std::to_string(e.id) +
                                        " references unknown vertex");
        adj_[e.u].emplace_back(e.id, e.v);
        if (e.v != e.u) adj_[e.v].emplace_back(e.id, e.u);
    }
}

int BaseGraph::other_end(int edge_id, int v) const {
    const EdgeRec& e = edges_.at(edge_id);
    if (e.u == v) return e.v;
    if (e.v == v) return e.u;
    throw std::invalid_argument("edge " + std::to_string(edge_id) + " is not incident to vertex " +
                                std::to_string(v));
}

bool BaseGraph::incident(int edge_id, int v) const {
    const EdgeRec& e = edges_.at(edge_id);
    return e.u == v || e.v == v;
}

bool BaseGraph::is_connected() const {
    if (num_vertices_ == 0) return true;
    std::vector<char> seen(num_vertices_, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        for (const auto& [eid, y] : adj_[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                q.push(y);
            }
        }
    }
    return reached == num_vertices_;
}

std::optional<int> BaseGraph::regular_degree() const {
    if (num_vertices_ == 0) return std::nullopt;
    const int d = degree(0);
    for (int v = 1; v < num_vertices_; ++v)
        if (degree(v) != d) return std::nullopt;
    return d;
}

void validate_graph(const BaseGraph& g) {
    for (const EdgeRec& e : g.edges())
        if (e.u == e.v)
            throw std::invalid_argument("graph: loop edge " + std::to_string(e.id) +
                                        " at vertex " + std::to_string(e.u));
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0)
            throw std::invalid_argument("graph: isolated vertex " + std::to_string(v));
    if (!g.is_connected()) throw std::invalid_argument("graph: not connected");
}

void validate_walk(const BaseGraph& g, const Walk& w) {
    if (w.start < 0 || w.start >= g.vertex_count())
        throw std::invalid_argument("walk: unknown start vertex " + std::to_string(w.start));
    int at = w.start;
    for (size_t i = 0; i < w.steps.size(); ++i) {
        const int eid = w.steps[i];
        if (eid < 0 || eid >= g.edge_count())
            throw std::invalid_argument("walk: unknown edge id " + std::to_string(eid));
        if (!g.incident(eid, at))
            throw std::invalid_argument("walk: edge " + std::to_string(eid) +
                                        " not traversable from vertex " + std::to_string(at));
        if (i > 0 && w.steps[i] == w.steps[i - 1])
            throw std::invalid_argument("walk: backtracking on edge " + std::to_string(eid));
        at = g.other_end(eid, at);
    }
}

int walk_end(const BaseGraph& g, const Walk& w) {
    int at = w.start;
    for (const int eid : w.steps) at = g.other_end(eid, at);
    return at;
}

std::vector<int> reduce_walk(const BaseGraph& g, int start, const std::vector<int>& steps) {
    // traversability check
    int at = start;
    for (const int eid : steps) {
        if (eid < 0 || eid >= g.edge_count() || !g.incident(eid, at))
            throw std::invalid_argument("reduce_walk: sequence not traversable at edge " +
                                        std::to_string(eid));
        at = g.other_end(eid, at);
    }
    // free reduction via a stack; confluent, so this is the unique normal form
    std::vector<int> out;
    out.reserve(steps.size());
    for (const int eid : steps) {
        if (!out.empty() && out.back() == eid)
            out.pop_back();
        else
            out.push_back(eid);
    }
    return out;
}

int walk_distance(const BaseGraph& g, const Walk& w1, const Walk& w2, std::optional<int> bridge) {
    validate_walk(g, w1);
    validate_walk(g, w2);
    if (!bridge) {
        if (w1.start != w2.start)
            throw std::invalid_argument("walk_distance: walks start at different vertices and no bridge given");
    } else {
        const int b = *bridge;
        if (b < 0 || b >= g.edge_count())
            throw std::invalid_argument("walk_distance: unknown bridge edge");
        const EdgeRec& e = g.edge(b);
        const bool ok = (e.u == w1.start && e.v == w2.start) || (e.v == w1.start && e.u == w2.start);
        if (!ok)
            throw std::invalid_argument("walk_distance: bridge edge does not join the walk starts");
    }
    std::vector<int> word(w1.steps.rbegin(), w1.steps.rend());
    if (bridge) word.push_back(*bridge);
    word.insert(word.end(), w2.steps.begin(), w2.steps.end());
    const std::vector<int> reduced = reduce_walk(g, walk_end(g, w1), word);
    return static_cast<int>(reduced.size());
}

std::vector<Walk> enumerate_nb_walks(const BaseGraph& g, int v, int max_len) {
    if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("enumerate_nb_walks: unknown vertex");
    if (max_len < 0) throw std::invalid_argument("enumerate_nb_walks: negative max_len");
    std::vector<Walk> out;
    std::vector<Walk> frontier{Walk{v, {}}};
    out.push_back(frontier[0]);
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Walk> next;
        for (const Walk& w : frontier) {
            const int at = walk_end(g, w);
            std::vector<std::pair<int, int>> exits(g.neighbors(at));
            std::sort(exits.begin(), exits.end());
            for (const auto& [eid, _] : exits) {
                if (!w.steps.empty() && w.steps.back() == eid) continue;
                Walk w2 = w;
                w2.steps.push_back(eid);
                next.push_back(std::move(w2));
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const Walk& a, const Walk& b) { return a.steps < b.steps; });
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

WalkAssignment normalize_walks(const BaseGraph& g, WalkAssignment walks) {
    walks.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (walks[v].empty()) walks[v].push_back(Walk{v, {}});
        for (const Walk& w : walks[v]) {
            if (w.start != v)
                throw std::invalid_argument("walk assignment: walk listed under vertex " +
                                            std::to_string(v) + " starts at " +
                                            std::to_string(w.start));
            validate_walk(g, w);
        }
    }
    return walks;
}

// ---------------------------------------------------------------------------

GraphFile parse_graph_text(std::istream& in) {
    std::vector<int> vertex_ids;
    std::vector<EdgeRec> edges;
    struct WalkLine {
        int vertex;
        std::vector<int> steps;
    };
    std::vector<WalkLine> walk_lines;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("graph text line " + std::to_string(lineno) + ": " + msg);
        };
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == '#') continue;
        if (tok == "v") {
            int id;
            if (!(ls >> id)) fail("expected 'v <id>'");
            vertex_ids.push_back(id);
        } else if (tok == "e") {
            EdgeRec e;
            if (!(ls >> e.id >> e.u >> e.v)) fail("expected 'e <id> <u> <v>'");
            edges.push_back(e);
        } else if (tok == "walk") {
            WalkLine wl;
            if (!(ls >> wl.vertex)) fail("expected 'walk <vertex> [steps...]'");
            int s;
            while (ls >> s) wl.steps.push_back(s);
            walk_lines.push_back(std::move(wl));
        } else {
            fail("unknown directive '" + tok + "'");
        }
    }

    std::sort(vertex_ids.begin(), vertex_ids.end());
    for (int i = 0; i < static_cast<int>(vertex_ids.size()); ++i)
        if (vertex_ids[i] != i)
            throw std::invalid_argument("graph text: vertex ids must be dense 0..V-1");
    std::sort(edges.begin(), edges.end(), [](const EdgeRec& a, const EdgeRec& b) { return a.id < b.id; });

    GraphFile out;
    out.graph = BaseGraph(static_cast<int>(vertex_ids.size()), std::move(edges));
    WalkAssignment walks(out.graph.vertex_count());
    for (const auto& wl : walk_lines) {
        if (wl.vertex < 0 || wl.vertex >= out.graph.vertex_count())
            throw std::invalid_argument("graph text: walk for unknown vertex " +
                                        std::to_string(wl.vertex));
        walks[wl.vertex].push_back(Walk{wl.vertex, wl.steps});
        out.had_walk_lines = true;
    }
    out.walks = normalize_walks(out.graph, std::move(walks));
    return out;
}

GraphFile parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    return parse_graph_text(in);
}

GraphFile load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return parse_graph_text(in);
}

std::string format_graph_text(const BaseGraph& g, const WalkAssignment* walks) {
    std::ostringstream out;
    for (int v = 0; v < g.vertex_count(); ++v) out << "v " << v << "\n";
    for (const EdgeRec& e : g.edges()) out << "e " << e.id << " " << e.u << " " << e.v << "\n";
    if (walks) {
        for (int v = 0; v < static_cast<int>(walks->size()); ++v) {
            for (const Walk& w : (*walks)[v]) {
                out << "walk " << v;
                for (const int s : w.steps) out << " " << s;
                out << "\n";
            }
        }
    }
    return out.str();
}

}  // namespace fiid
