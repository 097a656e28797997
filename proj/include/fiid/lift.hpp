#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fiid/graph.hpp"
#include "fiid/inequality.hpp"
#include "fiid/subset_type.hpp"

namespace fiid {

/// n-fold lift of a base graph given by one permutation per base edge:
/// lift vertex (v, i) = v*n + i, and edge e=(u,v) with permutation s connects
/// (u, i) to (v, s[i]). Lift edge instances are indexed e*n + i (i on the u
/// side). The projection (v, i) -> v is a graph covering by construction.
class LiftGraph {
public:
    LiftGraph(BaseGraph base, int n, std::vector<std::vector<int>> matchings);

    const BaseGraph& base() const { return base_; }
    int fold() const { return n_; }
    int vertex_count() const { return base_.vertex_count() * n_; }
    int edge_instance_count() const { return base_.edge_count() * n_; }

    int lift_vertex(int base_v, int copy) const { return base_v * n_ + copy; }
    int base_of_vertex(int lv) const { return lv / n_; }
    int copy_of_vertex(int lv) const { return lv % n_; }

    /// endpoints (lift vertices) of lift edge instance base_e*n + i
    std::pair<int, int> edge_endpoints(int lift_edge) const;
    /// adjacency entries: (lift edge instance, neighbor lift vertex)
    const std::vector<std::pair<int, int>>& neighbors(int lv) const { return adj_[lv]; }
    const std::vector<std::vector<int>>& matchings() const { return matchings_; }

    /// the lift as a standalone base graph (for repeated lifting)
    BaseGraph as_base_graph() const;

private:
    BaseGraph base_;
    int n_;
    std::vector<std::vector<int>> matchings_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

/// Uniform independent permutation per base edge, from a seeded generator;
/// fully deterministic given (g, n, seed).
LiftGraph random_lift(const BaseGraph& g, int n, std::uint64_t seed);

struct NiceFlags {
    std::vector<char> vertices;  // per lift vertex
    std::vector<char> edges;     // per lift edge instance
};

/// A vertex (edge) is r-nice when the induced subgraph on its r-neighborhood
/// (joint r-neighborhood of both endpoints) is a tree.
NiceFlags r_nice_flags(const LiftGraph& lg, int r);
std::vector<char> r_nice_vertices(const LiftGraph& lg, int r);

using Coloring = std::vector<int>;

/// Rooted labeled neighborhood handed to local rules; vertices in BFS order
/// from the root (index 0), with parent links into the same arrays.
struct RootedBall {
    std::vector<std::uint64_t> labels;
    std::vector<int> depth;
    std::vector<int> parent;
};

/// Finite-radius rule: the output may depend only on the labeled ball up to
/// root-preserving isomorphism. Labels are uniform 64-bit integers (the
/// integer form keeps runs bit-reproducible across platforms).
class LocalRule {
public:
    virtual ~LocalRule() = default;
    virtual std::string name() const = 0;
    virtual int radius() const = 0;
    virtual int num_states() const = 0;
    int default_state() const { return 0; }
    virtual int evaluate(const RootedBall& ball) const = 0;

    /// built-ins: iid (radius 0), majority, parity
    static std::unique_ptr<LocalRule> make(const std::string& name, int radius);
};

/// IID labels per lift vertex from the seed; r-nice vertices get the rule
/// value on their ball, all others the default state.
Coloring project_rule(const LiftGraph& lg, const LocalRule& rule, std::uint64_t seed);
Coloring project_rule_with_labels(const LiftGraph& lg, const LocalRule& rule,
                                  const std::vector<std::uint64_t>& labels);

/// Exact per-base-vertex / per-base-edge color frequencies over the n lifts.
struct LocalStats {
    int num_states = 0;
    int fold = 0;
    std::vector<std::vector<long long>> vertex_counts;  // [base v][m]
    std::vector<std::vector<long long>> edge_counts;    // [base e][m*m], row = u side

    std::vector<double> vertex_distribution(int v) const;
    std::vector<double> edge_distribution(int e) const;
};

/// num_states 0 infers max color + 1.
LocalStats local_stats(const LiftGraph& lg, const Coloring& c, int num_states = 0);

struct EntropyEstimate {
    double entropy = 0.0;
    double std_error = 0.0;
    long long samples = 0;
};

/// Plug-in entropy of the type's joint colors over uniformly sampled
/// embeddings rooted at diam(t)-nice lift vertices; embeddings hitting
/// non-nice roots are rejected and resampled within a bounded retry budget.
EntropyEstimate estimate_type_entropy(const LiftGraph& lg, const Coloring& c, const SubsetType& t,
                                      long long samples, std::uint64_t seed);

/// sum coef * h(type); every term's type must be present in h.
double evaluate_slack(const EntropyInequality& ineq, const std::map<SubsetType, double>& h);

/// (positive part) / (negative part) of sum coef * ball_size(type, r),
/// as an exact rational. Requires terms of both signs.
mpq_class sharpness_ratio(const EntropyInequality& ineq, int r);

struct GreedyColoring {
    Coloring coloring;
    int num_colors = 0;
};

/// Greedy proper coloring of the L-th graph power: same-color vertices end up
/// at distance > L.
GreedyColoring greedy_distance_coloring(const std::vector<std::vector<int>>& adjacency, int L);
GreedyColoring greedy_distance_coloring(const LiftGraph& lg, int L);

}  // namespace fiid
