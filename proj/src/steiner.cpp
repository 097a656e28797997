#include "fiid/steiner.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace fiid {

int MetricTree::add_node(int point) {
    adj.emplace_back();
    point_of_node.push_back(point);
    if (point >= 0) {
        if (static_cast<int>(node_of_point.size()) <= point) node_of_point.resize(point + 1, -1);
        node_of_point[point] = size() - 1;
    }
    return size() - 1;
}

void MetricTree::add_edge(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
}

std::vector<int> MetricTree::dist_from(int src) const { return dist_from_set({src}); }

std::vector<int> MetricTree::dist_from_set(const std::vector<int>& srcs) const {
    std::vector<int> dist(size(), -1);
    std::queue<int> q;
    for (const int s : srcs) {
        dist[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        for (const int y : adj[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
    }
    return dist;
}

void check_metric_basics(const DistMatrix& d) {
    const int n = static_cast<int>(d.size());
    if (n == 0) throw std::invalid_argument("distance matrix: empty");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(d[i].size()) != n)
            throw std::invalid_argument("distance matrix: not square");
        if (d[i][i] != 0) throw std::invalid_argument("distance matrix: nonzero diagonal");
        for (int j = 0; j < n; ++j) {
            if (d[i][j] != d[j][i]) throw std::invalid_argument("distance matrix: not symmetric");
            if (d[i][j] < 0) throw std::invalid_argument("distance matrix: negative entry");
            if (i != j && d[i][j] == 0)
                throw std::invalid_argument(
                    "not a tree metric: distinct marked vertices at distance 0 (indices " +
                    std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

void check_four_point(const DistMatrix& d) {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                for (int l = k; l < n; ++l) {
                    int s1 = d[i][j] + d[k][l];
                    int s2 = d[i][k] + d[j][l];
                    int s3 = d[i][l] + d[j][k];
                    if (s1 > s2) std::swap(s1, s2);
                    if (s2 > s3) std::swap(s2, s3);
                    if (s1 > s2) std::swap(s1, s2);
                    if (s2 != s3)
                        throw std::invalid_argument(
                            "not a tree metric: four-point condition fails on indices (" +
                            std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                            "," + std::to_string(l) + ")");
                }
}

void check_parity(const DistMatrix& d) {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if ((d[i][j] + d[i][k] + d[j][k]) % 2 != 0)
                    throw std::invalid_argument(
                        "not a tree metric: odd triangle perimeter on indices (" +
                        std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                        ")");
}

MetricTree steiner_tree_from_metric(const DistMatrix& d) {
    check_metric_basics(d);
    const int n = static_cast<int>(d.size());
    MetricTree t;
    t.add_node(0);
    for (int x = 1; x < n; ++x) {
        if (x == 1) {
            // path of d[0][1] unit edges from point 0 to point 1
            int prev = t.node_of_point[0];
            for (int s = 1; s <= d[0][1]; ++s) {
                const int nd = t.add_node(s == d[0][1] ? 1 : -1);
                t.add_edge(prev, nd);
                prev = nd;
            }
            if (d[0][1] == 0) throw std::invalid_argument("not a tree metric: duplicate points");
            continue;
        }
        // distances from every placed point to every node
        std::vector<std::vector<int>> pd(x);
        for (int i = 0; i < x; ++i) pd[i] = t.dist_from(t.node_of_point[i]);
        // unique attachment node: d[x][i] == L + dist(node, p_i) for all i
        int best_node = -1, best_len = -1;
        for (int node = 0; node < t.size(); ++node) {
            const int len = d[x][0] - pd[0][node];
            if (len < 0) continue;
            bool ok = true;
            for (int i = 1; i < x && ok; ++i) ok = (d[x][i] == len + pd[i][node]);
            if (ok) {
                best_node = node;
                best_len = len;
                break;  // unique when it exists (leaves are marked points)
            }
        }
        if (best_node < 0)
            throw std::invalid_argument("not a tree metric: no consistent attachment for index " +
                                        std::to_string(x));
        if (best_len == 0) {
            if (t.point_of_node[best_node] >= 0)
                throw std::invalid_argument("not a tree metric: duplicate points");
            t.point_of_node[best_node] = x;
            if (static_cast<int>(t.node_of_point.size()) <= x) t.node_of_point.resize(x + 1, -1);
            t.node_of_point[x] = best_node;
        } else {
            int prev = best_node;
            for (int s = 1; s <= best_len; ++s) {
                const int nd = t.add_node(s == best_len ? x : -1);
                t.add_edge(prev, nd);
                prev = nd;
            }
        }
    }
    // full verification (catches four-point violations not caught incrementally)
    for (int i = 0; i < n; ++i) {
        const std::vector<int> di = t.dist_from(t.node_of_point[i]);
        for (int j = 0; j < n; ++j)
            if (di[t.node_of_point[j]] != d[i][j])
                throw std::invalid_argument("not a tree metric: reconstruction mismatch at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return t;
}

void grow_ball(MetricTree& tree, int d, int k) {
    std::vector<int> marked_nodes;
    for (int x = 0; x < tree.size(); ++x)
        if (tree.point_of_node[x] >= 0) marked_nodes.push_back(x);
    std::vector<int> dist = tree.dist_from_set(marked_nodes);
    for (int x = 0; x < tree.size(); ++x) {
        if (dist[x] >= k) continue;
        while (static_cast<int>(tree.adj[x].size()) < d) {
            const int c = tree.add_node();
            dist.push_back(dist[x] + 1);
            tree.add_edge(x, c);
        }
    }
    // re-point at the ball: everything within distance k, in node order
    tree.node_of_point.clear();
    int next = 0;
    for (int x = 0; x < tree.size(); ++x) {
        if (dist[x] <= k) {
            tree.point_of_node[x] = next++;
            tree.node_of_point.push_back(x);
        } else {
            tree.point_of_node[x] = -1;
        }
    }
}

DistMatrix marked_distances(const MetricTree& tree) {
    const int n = static_cast<int>(tree.node_of_point.size());
    DistMatrix d(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        const std::vector<int> di = tree.dist_from(tree.node_of_point[i]);
        for (int j = 0; j < n; ++j) d[i][j] = di[tree.node_of_point[j]];
    }
    return d;
}

namespace {

// Rooted canonical codes (AHU with interning). Node labels encode marking and,
// for already-placed points, their position in the current prefix; equal root
// codes certify an automorphism fixing the prefix pointwise.
class CodeTable {
public:
    int intern(std::int64_t label, std::vector<int> children) {
        std::sort(children.begin(), children.end());
        const auto key = std::make_pair(label, std::move(children));
        const auto it = table_.find(key);
        if (it != table_.end()) return it->second;
        const int id = static_cast<int>(table_.size());
        table_.emplace(key, id);
        return id;
    }

private:
    std::map<std::pair<std::int64_t, std::vector<int>>, int> table_;
};

int rooted_code(const MetricTree& tree, const std::vector<int>& position_of_point, int root,
                CodeTable& codes) {
    // iterative post-order to avoid deep recursion on path-like trees
    struct Frame {
        int node = -1;
        int parent = -1;
        size_t next_child = 0;
        std::vector<int> child_codes;
    };
    std::vector<Frame> stack;
    Frame first;
    first.node = root;
    stack.push_back(std::move(first));
    int result = -1;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_child < tree.adj[f.node].size()) {
            const int c = tree.adj[f.node][f.next_child++];
            if (c != f.parent) {
                Frame next;
                next.node = c;
                next.parent = f.node;
                stack.push_back(std::move(next));
            }
        } else {
            const int p = tree.point_of_node[f.node];
            std::int64_t label = 0;  // unmarked
            if (p >= 0) label = (position_of_point[p] >= 0) ? 2 + position_of_point[p] : 1;
            const int code = codes.intern(label, std::move(f.child_codes));
            stack.pop_back();
            if (stack.empty())
                result = code;
            else
                stack.back().child_codes.push_back(code);
        }
    }
    return result;
}

}  // namespace

DistMatrix canonical_min_matrix(const DistMatrix& d, const MetricTree& tree) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return d;

    std::vector<int> perm;
    perm.reserve(n);
    std::vector<char> used(n, 0);
    std::vector<int> position_of_point(n, -1);
    std::vector<int> curseq, bestseq, bestperm;
    CodeTable codes;

    const auto dfs = [&](const auto& self) -> void {
        const int k = static_cast<int>(perm.size());
        if (k == n) {
            if (bestseq.empty() || curseq < bestseq) {
                bestseq = curseq;
                bestperm = perm;
            }
            return;
        }
        // minimal next column among unused candidates
        std::vector<int> mincol;
        std::vector<int> argmin;
        std::vector<int> col(k);
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            for (int i = 0; i < k; ++i) col[i] = d[perm[i]][v];
            if (argmin.empty() || col < mincol) {
                mincol = col;
                argmin.assign(1, v);
            } else if (col == mincol) {
                argmin.push_back(v);
            }
        }
        // deduplicate ties by rooted canonical code
        std::set<int> seen;
        for (const int v : argmin) {
            const int sig = rooted_code(tree, position_of_point, tree.node_of_point[v], codes);
            if (!seen.insert(sig).second) continue;
            used[v] = 1;
            position_of_point[v] = k;
            perm.push_back(v);
            curseq.insert(curseq.end(), mincol.begin(), mincol.end());
            self(self);
            curseq.resize(curseq.size() - mincol.size());
            perm.pop_back();
            position_of_point[v] = -1;
            used[v] = 0;
        }
    };
    dfs(dfs);

    DistMatrix out(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = d[bestperm[i]][bestperm[j]];
    return out;
}

DistMatrix canonical_min_matrix(const DistMatrix& d) {
    return canonical_min_matrix(d, steiner_tree_from_metric(d));
}

}  // namespace fiid
