#pragma once

#include <compare>
#include <string>
#include <vector>

#include "fiid/steiner.hpp"

namespace fiid {

/// Isomorphism type of a finite vertex set of the d-regular tree, represented
/// by the canonical (lexicographically minimal under simultaneous index
/// permutation) pairwise distance matrix of the marked vertices. Steiner
/// vertices are reconstructed on demand, never stored.
class SubsetType {
public:
    /// Validates that `dist` is a tree metric realizable in T_d (four-point
    /// condition, triple parity, Steiner degrees <= d) and canonicalizes.
    static SubsetType from_distances(int d, const DistMatrix& dist);

    int degree() const { return d_; }
    int size() const { return static_cast<int>(dist_.size()); }
    const DistMatrix& distances() const { return dist_; }
    int diameter() const;
    /// true when the marked set spans its Steiner tree (no unmarked vertices)
    bool connected_marking() const;
    /// unit-edge Steiner tree; node_of_point maps canonical indices to nodes
    MetricTree steiner() const;

    bool operator==(const SubsetType& other) const;
    bool operator!=(const SubsetType& other) const { return !(*this == other); }
    /// total order usable as a map key (orders by degree, size, matrix)
    bool operator<(const SubsetType& other) const;

private:
    SubsetType(int d, DistMatrix canonical) : d_(d), dist_(std::move(canonical)) {}
    friend SubsetType ball(const SubsetType&, int);

    int d_;
    DistMatrix dist_;
};

/// Type of B_k(V) = {u : dist(u, V) <= k} for any realization V.
SubsetType ball(const SubsetType& t, int k);

/// |B_k(V)|, computed by explicit enumeration in the grown tree.
long long ball_size(const SubsetType& t, int k);

// Named constructions.
SubsetType vertex_type(int d);
SubsetType pair_type(int d, int k);              // two vertices at distance k (k=1: edge)
SubsetType edge_type(int d);
SubsetType path_type(int d, int num_edges);      // path with num_edges+1 vertices
SubsetType flower_type(int d, int i);            // i neighbors of a fixed vertex, 1 <= i <= d
SubsetType sphere_type(int d, int k);            // all vertices at distance k from a vertex

/// Compact human name: vertex, edge, dist3, P3, S2, flower2, star, B2(edge), ...
std::string type_display_name(const SubsetType& t);

}  // namespace fiid
