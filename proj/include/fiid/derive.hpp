#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiid/graph.hpp"
#include "fiid/inequality.hpp"

namespace fiid {

/// Runs the base-graph/walk recipe: lifts each vertex's walks to the universal
/// cover, types the endpoint tuples (vertex tuples, and edge tuples joined
/// through the bridge edge), and returns
///   sum_e H(type_e) - (d-1) sum_v H(type_v) >= 0
/// with like types collected and coefficients reduced. Duplicate lifted
/// endpoints within one tuple are merged before typing.
EntropyInequality derive_inequality(const BaseGraph& g, const WalkAssignment& walks);

struct Construction {
    BaseGraph graph;
    WalkAssignment walks;
    EntropyInequality inequality;
};

/// Recipe constructions: edge_vertex, path_edge, flower (param = i),
/// complete_graph, sphere (param = k), mutual_info (param = k).
/// The returned inequality always equals derive_inequality(graph, walks).
Construction builtin_construction(const std::string& name, int d, int param = 0);

/// All recipe names plus star_edge, which is a known inequality that the walk
/// recipe cannot produce directly.
EntropyInequality builtin_inequality(const std::string& name, int d, int param = 0);

std::vector<std::string> builtin_construction_names();
std::vector<std::string> builtin_inequality_names();

/// Replaces every term's type by its radius-k ball, merging like terms.
EntropyInequality blow_up(const EntropyInequality& ineq, int k);

/// Connected n-fold lift of g drawn from seeded random permutations
/// (re-drawn until connected, bounded retries).
BaseGraph lift_base(const BaseGraph& g, int n, std::uint64_t seed);

}  // namespace fiid
