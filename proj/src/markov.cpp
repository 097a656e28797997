#include "fiid/markov.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace fiid {

namespace {

constexpr double kRowTol = 1e-12;
constexpr double kStatTol = 1e-10;
constexpr double kRevTol = 1e-10;

double nlogn(double p) { return p > 0 ? -p * std::log(p) : 0.0; }

}  // namespace

MarkovChain::MarkovChain(std::vector<std::vector<double>> transition,
                         std::vector<double> stationary)
    : p_(std::move(transition)), pi_(std::move(stationary)) {
    const int m = static_cast<int>(pi_.size());
    if (m < 1) throw std::invalid_argument("markov chain: empty state space");
    if (static_cast<int>(p_.size()) != m)
        throw std::invalid_argument("markov chain: transition matrix size mismatch");
    double pi_sum = 0.0;
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(p_[i].size()) != m)
            throw std::invalid_argument("markov chain: transition row " + std::to_string(i) +
                                        " has wrong length");
        double row = 0.0;
        for (int j = 0; j < m; ++j) {
            if (p_[i][j] < 0)
                throw std::invalid_argument("markov chain: negative transition entry (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            row += p_[i][j];
        }
        if (std::abs(row - 1.0) > kRowTol)
            throw std::invalid_argument("markov chain: row " + std::to_string(i) +
                                        " sums to " + std::to_string(row));
        if (pi_[i] <= 0)
            throw std::invalid_argument("markov chain: stationary mass of state " +
                                        std::to_string(i) + " must be positive");
        pi_sum += pi_[i];
    }
    if (std::abs(pi_sum - 1.0) > kStatTol)
        throw std::invalid_argument("markov chain: stationary law sums to " +
                                    std::to_string(pi_sum));
    for (int j = 0; j < m; ++j) {
        double x = 0.0;
        for (int i = 0; i < m; ++i) x += pi_[i] * p_[i][j];
        if (std::abs(x - pi_[j]) > kStatTol)
            throw std::invalid_argument("markov chain: law is not stationary at state " +
                                        std::to_string(j));
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (std::abs(pi_[i] * p_[i][j] - pi_[j] * p_[j][i]) > kRevTol)
                throw std::invalid_argument("markov chain: not reversible on pair (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
}

double vertex_entropy(const MarkovChain& mc) {
    double h = 0.0;
    for (int i = 0; i < mc.num_states(); ++i) h += nlogn(mc.stationary(i));
    return h;
}

double edge_entropy(const MarkovChain& mc) {
    double h = 0.0;
    for (int i = 0; i < mc.num_states(); ++i)
        for (int j = 0; j < mc.num_states(); ++j)
            h += nlogn(mc.stationary(i) * mc.transition(i, j));
    return h;
}

double connected_set_entropy(const MarkovChain& mc, const SubsetType& t) {
    if (!t.connected_marking())
        throw std::invalid_argument(
            "connected_set_entropy: marked set has unmarked Steiner vertices");
    const int n = t.size();
    return (n - 1) * edge_entropy(mc) - (n - 2) * vertex_entropy(mc);
}

double exact_subset_entropy(const MarkovChain& mc, const SubsetType& t) {
    const int m = mc.num_states();
    const int n = t.size();
    double table = 1;
    for (int i = 0; i < n; ++i) {
        table *= m;
        if (table > 1e7)
            throw std::invalid_argument("exact_subset_entropy: |M|^n exceeds enumeration guard");
    }

    const MetricTree tree = t.steiner();
    const int nodes = tree.size();
    // BFS order from node 0 so children precede parents when walked backwards
    std::vector<int> order, parent(nodes, -1);
    {
        std::vector<char> seen(nodes, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
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

    std::vector<int> assignment(n, 0);
    std::vector<std::vector<double>> msg(nodes, std::vector<double>(m, 1.0));
    double entropy = 0.0;
    bool done = false;
    while (!done) {
        // upward sum-product with marked nodes clamped to the assignment
        for (int idx = nodes; idx-- > 0;) {
            const int x = order[idx];
            auto& mx = msg[x];
            const int px = tree.point_of_node[x];
            for (int s = 0; s < m; ++s) mx[s] = (px < 0 || assignment[px] == s) ? 1.0 : 0.0;
            for (const int y : tree.adj[x]) {
                if (parent[y] != x) continue;
                for (int s = 0; s < m; ++s) {
                    if (mx[s] == 0.0) continue;
                    double acc = 0.0;
                    for (int s2 = 0; s2 < m; ++s2) acc += mc.transition(s, s2) * msg[y][s2];
                    mx[s] *= acc;
                }
            }
        }
        double prob = 0.0;
        for (int s = 0; s < m; ++s) prob += mc.stationary(s) * msg[order[0]][s];
        entropy += nlogn(prob);

        int pos = 0;
        while (pos < n && ++assignment[pos] == m) assignment[pos++] = 0;
        done = (pos == n);
    }
    return entropy;
}

double check_inequality(const MarkovChain& mc, const EntropyInequality& ineq) {
    double slack = 0.0;
    for (const auto& [t, c] : ineq.terms()) slack += c.get_d() * exact_subset_entropy(mc, t);
    return slack;
}

std::vector<double> scan_regime(const std::function<MarkovChain(double)>& family,
                                const EntropyInequality& ineq, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("scan_regime: need lo < hi");
    if (!(tol > 0)) throw std::invalid_argument("scan_regime: need tol > 0");
    const auto slack = [&](double x) { return check_inequality(family(x), ineq); };
    constexpr int kGrid = 128;
    std::vector<double> thresholds;
    double x0 = lo, f0 = slack(lo);
    for (int i = 1; i <= kGrid; ++i) {
        const double x1 = lo + (hi - lo) * i / kGrid;
        const double f1 = slack(x1);
        if (f0 == 0.0) thresholds.push_back(x0);
        if ((f0 < 0 && f1 > 0) || (f0 > 0 && f1 < 0)) {
            double a = x0, b = x1, fa = f0;
            while (b - a > tol) {
                const double mid = 0.5 * (a + b);
                const double fm = slack(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fa < 0) == (fm < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            thresholds.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) thresholds.push_back(x0);
    if (thresholds.empty())
        throw std::invalid_argument("scan_regime: no sign change of the slack on the interval");
    return thresholds;
}

std::pair<double, bool> spectral_bound(const MarkovChain& mc, int d) {
    if (d < 3) throw std::invalid_argument("spectral_bound: tree degree must be >= 3");
    const int m = mc.num_states();
    if (m == 1) return {0.0, true};
    // reversible chains are similar to a symmetric matrix via D^(1/2)
    Eigen::MatrixXd s(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            s(i, j) = std::sqrt(mc.stationary(i) / mc.stationary(j)) * mc.transition(i, j);
    s = 0.5 * (s + s.transpose());  // symmetrize away roundoff
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
    std::vector<double> abs_eigs(m);
    for (int i = 0; i < m; ++i) abs_eigs[i] = std::abs(solver.eigenvalues()[i]);
    std::sort(abs_eigs.rbegin(), abs_eigs.rend());
    const double rho = abs_eigs[1];
    return {rho, rho <= 1.0 / std::sqrt(static_cast<double>(d - 1)) + 1e-12};
}

MarkovChain binary_symmetric_chain(double eps) {
    if (eps < 0 || eps > 1)
        throw std::invalid_argument("binary_symmetric_chain: flip probability outside [0,1]");
    return MarkovChain({{1 - eps, eps}, {eps, 1 - eps}}, {0.5, 0.5});
}

MarkovChain parse_chain(std::istream& in) {
    int m = -1;
    std::vector<std::vector<double>> p;
    std::vector<double> pi;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == '#') continue;
        const auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("chain text line " + std::to_string(lineno) + ": " + msg);
        };
        if (tok == "states") {
            if (!(ls >> m) || m < 1) fail("expected 'states <m>'");
        } else if (tok == "p" || tok == "pi") {
            if (m < 1) fail("row before 'states'");
            std::vector<double> row;
            double x;
            while (ls >> x) row.push_back(x);
            if (static_cast<int>(row.size()) != m) fail("expected " + std::to_string(m) + " entries");
            if (tok == "p")
                p.push_back(std::move(row));
            else
                pi = std::move(row);
        } else {
            fail("unknown directive '" + tok + "'");
        }
    }
    if (m < 1 || static_cast<int>(p.size()) != m || pi.empty())
        throw std::invalid_argument("chain text: need 'states', m transition rows, and 'pi'");
    return MarkovChain(std::move(p), std::move(pi));
}

MarkovChain load_chain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open chain file: " + path);
    return parse_chain(in);
}

}  // namespace fiid
