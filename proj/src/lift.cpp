#include "fiid/lift.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "fiid/prng.hpp"

namespace fiid {

LiftGraph::LiftGraph(BaseGraph base, int n, std::vector<std::vector<int>> matchings)
    : base_(std::move(base)), n_(n), matchings_(std::move(matchings)) {
    if (n_ < 1) throw std::invalid_argument("lift: fold count must be >= 1");
    validate_graph(base_);
    if (static_cast<int>(matchings_.size()) != base_.edge_count())
        throw std::invalid_argument("lift: need one permutation per base edge");
    for (const auto& perm : matchings_) {
        if (static_cast<int>(perm.size()) != n_)
            throw std::invalid_argument("lift: permutation size differs from fold count");
        std::vector<char> seen(n_, 0);
        for (const int x : perm) {
            if (x < 0 || x >= n_ || seen[x])
                throw std::invalid_argument("lift: matching is not a permutation");
            seen[x] = 1;
        }
    }
    adj_.assign(static_cast<size_t>(vertex_count()), {});
    for (const EdgeRec& e : base_.edges()) {
        const auto& perm = matchings_[e.id];
        for (int i = 0; i < n_; ++i) {
            const int le = e.id * n_ + i;
            const int a = lift_vertex(e.u, i);
            const int b = lift_vertex(e.v, perm[i]);
            adj_[a].emplace_back(le, b);
            adj_[b].emplace_back(le, a);
        }
    }
}

std::pair<int, int> LiftGraph::edge_endpoints(int lift_edge) const {
    const int e = lift_edge / n_;
    const int i = lift_edge % n_;
    const EdgeRec& er = base_.edge(e);
    return {lift_vertex(er.u, i), lift_vertex(er.v, matchings_[e][i])};
}

BaseGraph LiftGraph::as_base_graph() const {
    std::vector<EdgeRec> edges;
    edges.reserve(static_cast<size_t>(edge_instance_count()));
    for (const EdgeRec& e : base_.edges())
        for (int i = 0; i < n_; ++i) {
            const auto [a, b] = edge_endpoints(e.id * n_ + i);
            edges.push_back({e.id * n_ + i, a, b});
        }
    return BaseGraph(vertex_count(), std::move(edges));
}

LiftGraph random_lift(const BaseGraph& g, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_lift: fold count must be >= 1");
    validate_graph(g);
    Rng rng(seed);
    std::vector<std::vector<int>> matchings;
    matchings.reserve(static_cast<size_t>(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) matchings.push_back(random_permutation(rng, n));
    return LiftGraph(g, n, std::move(matchings));
}

namespace {

// reusable BFS scratch keyed by visit stamps, so repeated ball scans stay O(ball)
struct BallScratch {
    std::vector<int> stamp;
    std::vector<int> dist;
    std::vector<int> order;
    int round = 0;

    explicit BallScratch(int n) : stamp(n, 0), dist(n, 0) {}

    // collects the ball around the seeds; returns true iff the induced
    // subgraph is a tree
    bool ball_is_tree(const LiftGraph& lg, const std::vector<int>& seeds, int r) {
        ++round;
        order.clear();
        size_t head = 0;
        for (const int s : seeds) {
            if (stamp[s] == round) continue;
            stamp[s] = round;
            dist[s] = 0;
            order.push_back(s);
        }
        while (head < order.size()) {
            const int x = order[head++];
            if (dist[x] == r) continue;
            for (const auto& [le, y] : lg.neighbors(x)) {
                if (stamp[y] == round) continue;
                stamp[y] = round;
                dist[y] = dist[x] + 1;
                order.push_back(y);
            }
        }
        long long endpoint_hits = 0;
        for (const int x : order)
            for (const auto& [le, y] : lg.neighbors(x))
                if (stamp[y] == round) ++endpoint_hits;
        const long long induced_edges = endpoint_hits / 2;
        return induced_edges == static_cast<long long>(order.size()) - 1;
    }
};

}  // namespace

std::vector<char> r_nice_vertices(const LiftGraph& lg, int r) {
    if (r < 0) throw std::invalid_argument("r_nice: negative radius");
    std::vector<char> out(static_cast<size_t>(lg.vertex_count()), 0);
    BallScratch scratch(lg.vertex_count());
    std::vector<int> seeds(1);
    for (int v = 0; v < lg.vertex_count(); ++v) {
        seeds[0] = v;
        out[v] = scratch.ball_is_tree(lg, seeds, r) ? 1 : 0;
    }
    return out;
}

NiceFlags r_nice_flags(const LiftGraph& lg, int r) {
    if (r < 0) throw std::invalid_argument("r_nice: negative radius");
    NiceFlags out;
    out.vertices = r_nice_vertices(lg, r);
    out.edges.assign(static_cast<size_t>(lg.edge_instance_count()), 0);
    BallScratch scratch(lg.vertex_count());
    std::vector<int> seeds(2);
    for (int le = 0; le < lg.edge_instance_count(); ++le) {
        const auto [a, b] = lg.edge_endpoints(le);
        seeds[0] = a;
        seeds[1] = b;
        out.edges[le] = scratch.ball_is_tree(lg, seeds, r) ? 1 : 0;
    }
    return out;
}

namespace {

class IidRule final : public LocalRule {
public:
    std::string name() const override { return "iid"; }
    int radius() const override { return 0; }
    int num_states() const override { return 2; }
    int evaluate(const RootedBall& ball) const override {
        return static_cast<int>(ball.labels[0] >> 63);
    }
};

class MajorityRule final : public LocalRule {
public:
    explicit MajorityRule(int radius) : radius_(radius) {}
    std::string name() const override { return "majority"; }
    int radius() const override { return radius_; }
    int num_states() const override { return 2; }
    int evaluate(const RootedBall& ball) const override {
        long long ones = 0;
        for (const std::uint64_t l : ball.labels) ones += static_cast<long long>(l >> 63);
        const long long zeros = static_cast<long long>(ball.labels.size()) - ones;
        if (ones == zeros) return static_cast<int>(ball.labels[0] >> 63);
        return ones > zeros ? 1 : 0;
    }

private:
    int radius_;
};

class ParityRule final : public LocalRule {
public:
    explicit ParityRule(int radius) : radius_(radius) {}
    std::string name() const override { return "parity"; }
    int radius() const override { return radius_; }
    int num_states() const override { return 2; }
    int evaluate(const RootedBall& ball) const override {
        std::uint64_t x = 0;
        for (const std::uint64_t l : ball.labels) x ^= l >> 63;
        return static_cast<int>(x);
    }

private:
    int radius_;
};

}  // namespace

std::unique_ptr<LocalRule> LocalRule::make(const std::string& name, int radius) {
    if (radius < 0) throw std::invalid_argument("local rule: negative radius");
    if (name == "iid") {
        if (radius != 0) throw std::invalid_argument("local rule 'iid' has radius 0");
        return std::make_unique<IidRule>();
    }
    if (name == "majority") return std::make_unique<MajorityRule>(radius);
    if (name == "parity") return std::make_unique<ParityRule>(radius);
    throw std::invalid_argument("unknown local rule '" + name + "'");
}

Coloring project_rule_with_labels(const LiftGraph& lg, const LocalRule& rule,
                                  const std::vector<std::uint64_t>& labels) {
    if (static_cast<int>(labels.size()) != lg.vertex_count())
        throw std::invalid_argument("project_rule: one label per lift vertex required");
    const int r = rule.radius();
    Coloring out(static_cast<size_t>(lg.vertex_count()), rule.default_state());
    if (r == 0) {
        RootedBall ball;
        ball.labels.resize(1);
        ball.depth = {0};
        ball.parent = {-1};
        for (int v = 0; v < lg.vertex_count(); ++v) {
            ball.labels[0] = labels[v];
            out[v] = rule.evaluate(ball);
        }
        return out;
    }
    const std::vector<char> nice = r_nice_vertices(lg, r);
    std::vector<int> stamp(lg.vertex_count(), 0), pos(lg.vertex_count(), 0);
    int round = 0;
    std::vector<int> order;
    for (int v = 0; v < lg.vertex_count(); ++v) {
        if (!nice[v]) continue;
        ++round;
        order.clear();
        order.push_back(v);
        stamp[v] = round;
        pos[v] = 0;
        RootedBall ball;
        ball.labels.push_back(labels[v]);
        ball.depth.push_back(0);
        ball.parent.push_back(-1);
        size_t head = 0;
        while (head < order.size()) {
            const int x = order[head++];
            const int xpos = pos[x];
            if (ball.depth[xpos] == r) continue;
            for (const auto& [le, y] : lg.neighbors(x)) {
                if (stamp[y] == round) continue;
                stamp[y] = round;
                pos[y] = static_cast<int>(order.size());
                order.push_back(y);
                ball.labels.push_back(labels[y]);
                ball.depth.push_back(ball.depth[xpos] + 1);
                ball.parent.push_back(xpos);
            }
        }
        out[v] = rule.evaluate(ball);
    }
    return out;
}

Coloring project_rule(const LiftGraph& lg, const LocalRule& rule, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint64_t> labels(static_cast<size_t>(lg.vertex_count()));
    for (auto& l : labels) l = rng();
    return project_rule_with_labels(lg, rule, labels);
}

LocalStats local_stats(const LiftGraph& lg, const Coloring& c, int num_states) {
    if (static_cast<int>(c.size()) != lg.vertex_count())
        throw std::invalid_argument("local_stats: coloring size mismatch");
    int m = num_states;
    if (m <= 0) {
        m = 1;
        for (const int s : c) m = std::max(m, s + 1);
    }
    for (const int s : c)
        if (s < 0 || s >= m) throw std::invalid_argument("local_stats: color out of range");
    LocalStats out;
    out.num_states = m;
    out.fold = lg.fold();
    out.vertex_counts.assign(static_cast<size_t>(lg.base().vertex_count()),
                             std::vector<long long>(m, 0));
    out.edge_counts.assign(static_cast<size_t>(lg.base().edge_count()),
                           std::vector<long long>(static_cast<size_t>(m) * m, 0));
    for (int lv = 0; lv < lg.vertex_count(); ++lv)
        ++out.vertex_counts[lg.base_of_vertex(lv)][c[lv]];
    for (int le = 0; le < lg.edge_instance_count(); ++le) {
        const auto [a, b] = lg.edge_endpoints(le);
        ++out.edge_counts[le / lg.fold()][c[a] * m + c[b]];
    }
    return out;
}

std::vector<double> LocalStats::vertex_distribution(int v) const {
    std::vector<double> out(vertex_counts[v].size());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<double>(vertex_counts[v][i]) / fold;
    return out;
}

std::vector<double> LocalStats::edge_distribution(int e) const {
    std::vector<double> out(edge_counts[e].size());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<double>(edge_counts[e][i]) / fold;
    return out;
}

EntropyEstimate estimate_type_entropy(const LiftGraph& lg, const Coloring& c, const SubsetType& t,
                                      long long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("estimate_type_entropy: need samples >= 1");
    if (static_cast<int>(c.size()) != lg.vertex_count())
        throw std::invalid_argument("estimate_type_entropy: coloring size mismatch");
    const std::optional<int> dreg = lg.base().regular_degree();
    if (!dreg || *dreg != t.degree())
        throw std::invalid_argument(
            "estimate_type_entropy: lift base is not regular of the type's degree");

    const int r = t.diameter();
    const std::vector<char> nice = r_nice_vertices(lg, r);

    const MetricTree tree = t.steiner();
    const int nodes = tree.size();
    std::vector<int> order, parent(nodes, -1);
    {
        std::vector<char> seen(nodes, 0);
        std::queue<int> q;
        const int root = tree.node_of_point[0];
        q.push(root);
        seen[root] = 1;
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            order.push_back(x);
            for (const int y : tree.adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    parent[y] = x;
                    q.push(y);
                }
        }
    }

    Rng rng(seed);
    std::map<std::vector<int>, long long> counts;
    std::vector<int> image(nodes, -1);
    std::vector<char> embedded(nodes, 0);
    std::vector<int> candidates;
    std::vector<int> tuple(t.size());
    long long done = 0;
    long long attempts = 0;
    const long long max_attempts = samples * 50 + 1000;
    while (done < samples && attempts < max_attempts) {
        ++attempts;
        const int bv = static_cast<int>(uniform_below(rng, lg.base().vertex_count()));
        const int copy = static_cast<int>(uniform_below(rng, lg.fold()));
        const int root_lv = lg.lift_vertex(bv, copy);
        if (!nice[root_lv]) continue;
        std::fill(embedded.begin(), embedded.end(), 0);
        image[order[0]] = root_lv;
        embedded[order[0]] = 1;
        for (size_t i = 1; i < order.size(); ++i) {
            const int x = order[i];
            const int p = parent[x];
            candidates.clear();
            for (const auto& [le, y] : lg.neighbors(image[p])) {
                bool taken = false;
                for (const int q : tree.adj[p])
                    if (embedded[q] && image[q] == y) taken = true;
                if (!taken) candidates.push_back(y);
            }
            image[x] = candidates[uniform_below(rng, candidates.size())];
            embedded[x] = 1;
        }
        for (int i = 0; i < t.size(); ++i) tuple[i] = c[image[tree.node_of_point[i]]];
        ++counts[tuple];
        ++done;
    }
    if (done < samples)
        throw std::invalid_argument("estimate_type_entropy: too few " + std::to_string(r) +
                                    "-nice positions (achieved " + std::to_string(done) + " of " +
                                    std::to_string(samples) + " samples)");
    EntropyEstimate out;
    out.samples = done;
    double mean = 0.0, mean_sq = 0.0;
    for (const auto& [key, cnt] : counts) {
        const double p = static_cast<double>(cnt) / static_cast<double>(done);
        const double lp = std::log(p);
        mean += p * lp;
        mean_sq += p * lp * lp;
    }
    out.entropy = -mean;
    const double var = std::max(0.0, mean_sq - mean * mean);
    out.std_error = std::sqrt(var / static_cast<double>(done));
    return out;
}

double evaluate_slack(const EntropyInequality& ineq, const std::map<SubsetType, double>& h) {
    double slack = 0.0;
    for (const auto& [t, coef] : ineq.terms()) {
        const auto it = h.find(t);
        if (it == h.end())
            throw std::invalid_argument("evaluate_slack: no entropy value for type " +
                                        type_display_name(t));
        slack += coef.get_d() * it->second;
    }
    return slack;
}

mpq_class sharpness_ratio(const EntropyInequality& ineq, int r) {
    if (r < 0) throw std::invalid_argument("sharpness_ratio: negative radius");
    mpq_class pos = 0, neg = 0;
    for (const auto& [t, coef] : ineq.terms()) {
        const mpq_class contribution = coef * mpq_class(static_cast<long>(ball_size(t, r)));
        if (coef > 0)
            pos += contribution;
        else
            neg -= contribution;
    }
    if (pos == 0 || neg == 0)
        throw std::invalid_argument("sharpness_ratio: inequality must have terms of both signs");
    mpq_class ratio = pos / neg;
    ratio.canonicalize();
    return ratio;
}

GreedyColoring greedy_distance_coloring(const std::vector<std::vector<int>>& adjacency, int L) {
    if (L < 1) throw std::invalid_argument("greedy_distance_coloring: need L >= 1");
    const int n = static_cast<int>(adjacency.size());
    GreedyColoring out;
    out.coloring.assign(n, -1);
    std::vector<int> stamp(n, 0), dist(n, 0), order;
    std::vector<int> seen_colors;
    int round = 0;
    for (int v = 0; v < n; ++v) {
        ++round;
        order.clear();
        order.push_back(v);
        stamp[v] = round;
        dist[v] = 0;
        seen_colors.clear();
        size_t head = 0;
        while (head < order.size()) {
            const int x = order[head++];
            if (dist[x] == L) continue;
            for (const int y : adjacency[x]) {
                if (stamp[y] == round) continue;
                stamp[y] = round;
                dist[y] = dist[x] + 1;
                order.push_back(y);
                if (out.coloring[y] >= 0) seen_colors.push_back(out.coloring[y]);
            }
        }
        std::sort(seen_colors.begin(), seen_colors.end());
        int color = 0;
        for (const int sc : seen_colors) {
            if (sc > color) break;
            if (sc == color) ++color;
        }
        out.coloring[v] = color;
        out.num_colors = std::max(out.num_colors, color + 1);
    }
    return out;
}

GreedyColoring greedy_distance_coloring(const LiftGraph& lg, int L) {
    std::vector<std::vector<int>> adjacency(static_cast<size_t>(lg.vertex_count()));
    for (int v = 0; v < lg.vertex_count(); ++v)
        for (const auto& [le, y] : lg.neighbors(v)) adjacency[v].push_back(y);
    return greedy_distance_coloring(adjacency, L);
}

}  // namespace fiid
