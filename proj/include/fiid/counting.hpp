#pragma once

#include <gmpxx.h>

#include <istream>
#include <string>
#include <vector>

#include "fiid/graph.hpp"

namespace fiid {

/// Per-vertex distributions on M and per-edge distributions on M x M whose
/// marginals match exactly (rational arithmetic end to end). Edge entries are
/// row-major with the row index being the state on the edge's u endpoint.
struct ConsistentCollection {
    int num_states = 0;
    std::vector<std::vector<mpq_class>> vertex_dist;  // [v][m]
    std::vector<std::vector<mpq_class>> edge_dist;    // [e][m1 * num_states + m2]
};

void validate_collection(const BaseGraph& g, const ConsistentCollection& c);

/// Number of bijections L_u -> L_v realizing the given color pair counts:
///   prod_m1 [cu(m1)! / prod_m2 k(m1,m2)!] * prod_m2 cv(m2)!
/// The matching probability is this divided by N!.
mpz_class matching_count(const std::vector<long long>& cu, const std::vector<long long>& cv,
                         const std::vector<std::vector<long long>>& pair_counts);

/// Expected number of colorings of a random n-fold lift whose edge statistics
/// equal the collection exactly. Returns 0 when some mass times n is not an
/// integer. Exact big-rational arithmetic.
mpq_class expected_colorings(const BaseGraph& g, const ConsistentCollection& c, int n);

/// sum_e H(mu_e) - sum_v (deg v - 1) H(mu_v) in nats.
double collection_rate(const BaseGraph& g, const ConsistentCollection& c);

/// Independent oracle: exhaustive enumeration over all per-edge permutations
/// and all colorings. Guarded by |M|^(n|V|) * (n!)^|E| <= 1e8.
mpq_class brute_force_expected_colorings(const BaseGraph& g, const ConsistentCollection& c,
                                         int n);

ConsistentCollection product_collection(const BaseGraph& g,
                                        const std::vector<std::vector<mpq_class>>& vertex_dists);
ConsistentCollection uniform_product_collection(const BaseGraph& g, int num_states);

double entropy_nats(const std::vector<mpq_class>& dist);

/// Natural log of a positive rational, accurate for huge numerators and
/// denominators (mantissa/exponent split).
double log_rational(const mpq_class& q);

// Text format: 'M <m>' then one 'v <id> <m masses>' per vertex and one
// 'e <id> <m*m masses>' per edge; masses are exact rationals like 1/4.
ConsistentCollection parse_collection(std::istream& in, const BaseGraph& g);
ConsistentCollection load_collection_file(const std::string& path, const BaseGraph& g);
std::string format_collection(const ConsistentCollection& c);

}  // namespace fiid
