#include "fiid/counting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fiid {

namespace {

mpz_class factorial(long long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// exact integer n * q, throws tag if not integral
bool integral_scale(const mpq_class& q, int n, long long* out) {
    const mpq_class scaled = q * n;
    if (scaled.get_den() != 1) return false;
    *out = scaled.get_num().get_si();
    return true;
}

double entropy_term(const mpq_class& q) {
    const double p = q.get_d();
    return p > 0 ? -p * std::log(p) : 0.0;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

void validate_collection(const BaseGraph& g, const ConsistentCollection& c) {
    const int m = c.num_states;
    if (m < 1) throw std::invalid_argument("collection: need at least one state");
    if (static_cast<int>(c.vertex_dist.size()) != g.vertex_count())
        throw std::invalid_argument("collection: vertex distribution count mismatch");
    if (static_cast<int>(c.edge_dist.size()) != g.edge_count())
        throw std::invalid_argument("collection: edge distribution count mismatch");
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& mu = c.vertex_dist[v];
        if (static_cast<int>(mu.size()) != m)
            throw std::invalid_argument("collection: vertex " + std::to_string(v) +
                                        " distribution has wrong size");
        mpq_class sum = 0;
        for (const auto& q : mu) {
            if (q < 0 || q > 1)
                throw std::invalid_argument("collection: vertex " + std::to_string(v) +
                                            " mass outside [0,1]");
            sum += q;
        }
        if (sum != 1)
            throw std::invalid_argument("collection: vertex " + std::to_string(v) +
                                        " distribution does not sum to 1");
    }
    for (const EdgeRec& e : g.edges()) {
        const auto& mu = c.edge_dist[e.id];
        if (static_cast<int>(mu.size()) != m * m)
            throw std::invalid_argument("collection: edge " + std::to_string(e.id) +
                                        " distribution has wrong size");
        mpq_class sum = 0;
        for (const auto& q : mu) {
            if (q < 0 || q > 1)
                throw std::invalid_argument("collection: edge " + std::to_string(e.id) +
                                            " mass outside [0,1]");
            sum += q;
        }
        if (sum != 1)
            throw std::invalid_argument("collection: edge " + std::to_string(e.id) +
                                        " distribution does not sum to 1");
        for (int m1 = 0; m1 < m; ++m1) {
            mpq_class row = 0;
            for (int m2 = 0; m2 < m; ++m2) row += mu[m1 * m + m2];
            if (row != c.vertex_dist[e.u][m1])
                throw std::invalid_argument("collection: edge " + std::to_string(e.id) +
                                            " row marginal differs from vertex " +
                                            std::to_string(e.u));
        }
        for (int m2 = 0; m2 < m; ++m2) {
            mpq_class col = 0;
            for (int m1 = 0; m1 < m; ++m1) col += mu[m1 * m + m2];
            if (col != c.vertex_dist[e.v][m2])
                throw std::invalid_argument("collection: edge " + std::to_string(e.id) +
                                            " column marginal differs from vertex " +
                                            std::to_string(e.v));
        }
    }
}

mpz_class matching_count(const std::vector<long long>& cu, const std::vector<long long>& cv,
                         const std::vector<std::vector<long long>>& pair_counts) {
    const int m1 = static_cast<int>(cu.size());
    const int m2 = static_cast<int>(cv.size());
    long long total_u = 0, total_v = 0;
    for (const long long x : cu) total_u += x;
    for (const long long x : cv) total_v += x;
    if (total_u != total_v) throw std::invalid_argument("matching_count: |L_u| != |L_v|");
    if (static_cast<int>(pair_counts.size()) != m1)
        throw std::invalid_argument("matching_count: pair count rows mismatch");
    for (int a = 0; a < m1; ++a) {
        if (static_cast<int>(pair_counts[a].size()) != m2)
            throw std::invalid_argument("matching_count: pair count columns mismatch");
        long long row = 0;
        for (int b = 0; b < m2; ++b) {
            if (pair_counts[a][b] < 0)
                throw std::invalid_argument("matching_count: negative pair count");
            row += pair_counts[a][b];
        }
        if (row != cu[a])
            throw std::invalid_argument("matching_count: row sums inconsistent with cu");
    }
    for (int b = 0; b < m2; ++b) {
        long long col = 0;
        for (int a = 0; a < m1; ++a) col += pair_counts[a][b];
        if (col != cv[b])
            throw std::invalid_argument("matching_count: column sums inconsistent with cv");
    }
    mpz_class count = 1;
    for (int a = 0; a < m1; ++a) {
        count *= factorial(cu[a]);
        for (int b = 0; b < m2; ++b) count /= factorial(pair_counts[a][b]);
    }
    for (int b = 0; b < m2; ++b) count *= factorial(cv[b]);
    return count;
}

mpq_class expected_colorings(const BaseGraph& g, const ConsistentCollection& c, int n) {
    validate_collection(g, c);
    if (n < 1) throw std::invalid_argument("expected_colorings: fold count must be >= 1");
    const int m = c.num_states;

    std::vector<std::vector<long long>> vcount(g.vertex_count(), std::vector<long long>(m));
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int s = 0; s < m; ++s)
            if (!integral_scale(c.vertex_dist[v][s], n, &vcount[v][s])) return 0;

    mpq_class expectation = 1;
    // number of colorings with the prescribed vertex statistics
    for (int v = 0; v < g.vertex_count(); ++v) {
        mpz_class multinomial = factorial(n);
        for (int s = 0; s < m; ++s) multinomial /= factorial(vcount[v][s]);
        expectation *= multinomial;
    }
    // per-edge matching probabilities, independent across edges
    const mpz_class n_fact = factorial(n);
    for (const EdgeRec& e : g.edges()) {
        std::vector<std::vector<long long>> k(m, std::vector<long long>(m));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (!integral_scale(c.edge_dist[e.id][a * m + b], n, &k[a][b])) return 0;
        mpq_class prob(matching_count(vcount[e.u], vcount[e.v], k), n_fact);
        prob.canonicalize();
        expectation *= prob;
    }
    return expectation;
}

double collection_rate(const BaseGraph& g, const ConsistentCollection& c) {
    validate_collection(g, c);
    double rate = 0.0;
    for (const auto& mu : c.edge_dist) rate += entropy_nats(mu);
    for (int v = 0; v < g.vertex_count(); ++v)
        rate -= (g.degree(v) - 1) * entropy_nats(c.vertex_dist[v]);
    return rate;
}

mpq_class brute_force_expected_colorings(const BaseGraph& g, const ConsistentCollection& c,
                                         int n) {
    validate_collection(g, c);
    if (n < 1) throw std::invalid_argument("brute force: fold count must be >= 1");
    const int m = c.num_states;
    const int V = g.vertex_count();
    const int E = g.edge_count();

    double cost = 1;
    for (int i = 0; i < n * V; ++i) cost *= m;
    double n_fact_d = 1;
    for (int i = 2; i <= n; ++i) n_fact_d *= i;
    for (int e = 0; e < E; ++e) cost *= n_fact_d;
    if (cost > 1e8)
        throw std::invalid_argument("brute force: instance exceeds enumeration guard");

    // target integer statistics; non-integral masses admit no exact coloring
    std::vector<std::vector<long long>> ecount(E, std::vector<long long>(m * m));
    for (int e = 0; e < E; ++e)
        for (int s = 0; s < m * m; ++s)
            if (!integral_scale(c.edge_dist[e][s], n, &ecount[e][s])) return 0;

    const std::vector<std::vector<int>> perms = all_permutations(n);
    const long long num_perms = static_cast<long long>(perms.size());

    std::vector<int> perm_idx(E, 0);    // odometer over lifts
    std::vector<int> color(n * V, 0);   // odometer over colorings
    mpz_class matches = 0;

    bool lifts_done = false;
    while (!lifts_done) {
        std::fill(color.begin(), color.end(), 0);
        bool colors_done = false;
        while (!colors_done) {
            // edge statistics only: vertex statistics are their marginals
            bool good = true;
            for (int e = 0; e < E && good; ++e) {
                const EdgeRec& er = g.edge(e);
                std::vector<long long> stat(m * m, 0);
                const std::vector<int>& sigma = perms[perm_idx[e]];
                for (int i = 0; i < n; ++i)
                    ++stat[color[er.u * n + i] * m + color[er.v * n + sigma[i]]];
                good = (stat == ecount[e]);
            }
            if (good) ++matches;
            // advance coloring odometer
            int pos = 0;
            while (pos < n * V && ++color[pos] == m) color[pos++] = 0;
            colors_done = (pos == n * V);
        }
        int pos = 0;
        while (pos < E && ++perm_idx[pos] == num_perms) perm_idx[pos++] = 0;
        lifts_done = (pos == E);
    }

    mpz_class denom = 1;
    const mpz_class num_perms_z(static_cast<long>(num_perms));
    for (int e = 0; e < E; ++e) denom *= num_perms_z;
    mpq_class out(matches, denom);
    out.canonicalize();
    return out;
}

ConsistentCollection product_collection(const BaseGraph& g,
                                        const std::vector<std::vector<mpq_class>>& vertex_dists) {
    ConsistentCollection c;
    if (vertex_dists.empty()) throw std::invalid_argument("product_collection: no distributions");
    c.num_states = static_cast<int>(vertex_dists.front().size());
    c.vertex_dist = vertex_dists;
    const int m = c.num_states;
    c.edge_dist.resize(g.edge_count());
    for (const EdgeRec& e : g.edges()) {
        auto& mu = c.edge_dist[e.id];
        mu.resize(m * m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) mu[a * m + b] = vertex_dists[e.u][a] * vertex_dists[e.v][b];
    }
    validate_collection(g, c);
    return c;
}

ConsistentCollection uniform_product_collection(const BaseGraph& g, int num_states) {
    std::vector<std::vector<mpq_class>> vd(
        g.vertex_count(), std::vector<mpq_class>(num_states, mpq_class(1, num_states)));
    return product_collection(g, vd);
}

double entropy_nats(const std::vector<mpq_class>& dist) {
    double h = 0.0;
    for (const auto& q : dist) h += entropy_term(q);
    return h;
}

double log_rational(const mpq_class& q) {
    if (q <= 0) throw std::invalid_argument("log_rational: argument must be positive");
    signed long int en, ed;
    const double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return std::log(mn) - std::log(md) + std::log(2.0) * static_cast<double>(en - ed);
}

ConsistentCollection parse_collection(std::istream& in, const BaseGraph& g) {
    ConsistentCollection c;
    c.vertex_dist.resize(g.vertex_count());
    c.edge_dist.resize(g.edge_count());
    std::string line;
    int lineno = 0;
    const auto parse_mass = [&](const std::string& tok) {
        mpq_class q;
        if (q.set_str(tok, 10) != 0)
            throw std::invalid_argument("collection text line " + std::to_string(lineno) +
                                        ": bad rational '" + tok + "' (use p/q)");
        q.canonicalize();
        return q;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == '#') continue;
        if (tok == "M") {
            if (!(ls >> c.num_states) || c.num_states < 1)
                throw std::invalid_argument("collection text line " + std::to_string(lineno) +
                                            ": expected 'M <states>'");
        } else if (tok == "v" || tok == "e") {
            int id;
            if (!(ls >> id))
                throw std::invalid_argument("collection text line " + std::to_string(lineno) +
                                            ": expected id");
            std::vector<mpq_class> masses;
            std::string w;
            while (ls >> w) masses.push_back(parse_mass(w));
            if (tok == "v") {
                if (id < 0 || id >= g.vertex_count())
                    throw std::invalid_argument("collection text: unknown vertex " +
                                                std::to_string(id));
                c.vertex_dist[id] = std::move(masses);
            } else {
                if (id < 0 || id >= g.edge_count())
                    throw std::invalid_argument("collection text: unknown edge " +
                                                std::to_string(id));
                c.edge_dist[id] = std::move(masses);
            }
        } else {
            throw std::invalid_argument("collection text line " + std::to_string(lineno) +
                                        ": unknown directive '" + tok + "'");
        }
    }
    validate_collection(g, c);
    return c;
}

ConsistentCollection load_collection_file(const std::string& path, const BaseGraph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open collection file: " + path);
    return parse_collection(in, g);
}

std::string format_collection(const ConsistentCollection& c) {
    std::ostringstream os;
    os << "M " << c.num_states << "\n";
    for (size_t v = 0; v < c.vertex_dist.size(); ++v) {
        os << "v " << v;
        for (const auto& q : c.vertex_dist[v]) os << " " << q.get_num() << "/" << q.get_den();
        os << "\n";
    }
    for (size_t e = 0; e < c.edge_dist.size(); ++e) {
        os << "e " << e;
        for (const auto& q : c.edge_dist[e]) os << " " << q.get_num() << "/" << q.get_den();
        os << "\n";
    }
    return os.str();
}

}  // namespace fiid
