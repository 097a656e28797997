// Acceptance suite: one line per headline criterion, timed, exit code equal
// to the number of failing criteria. Thresholds are pinned in code.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "fiid/counting.hpp"
#include "fiid/derive.hpp"
#include "fiid/lift.hpp"
#include "fiid/markov.hpp"
#include "property_suites.hpp"
#include "test_util.hpp"

using namespace fiid;
using namespace fiid::testutil;

namespace {

int failures = 0;

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

void run(int id, const std::string& title, const std::function<void(Checker&)>& body,
         double budget_seconds = 0.0) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_seconds > 0)
        c.require(secs < budget_seconds,
                  "runtime " + std::to_string(secs) + "s exceeds budget " +
                      std::to_string(budget_seconds) + "s");
    std::ostringstream line;
    line << (c.ok ? "[PASS] " : "[FAIL] ") << id << " " << title;
    if (!c.ok) line << ": " << c.detail.str();
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << secs << " s)";
    std::cout << line.str() << "\n";
    if (!c.ok) ++failures;
}

EntropyInequality terms_ineq(int d, std::map<SubsetType, mpq_class> terms) {
    return EntropyInequality(d, std::move(terms));
}

EntropyInequality flower_step_expected(int d, int i) {
    std::map<SubsetType, mpq_class> t;
    t[flower_type(d, i + 1)] += d - i;
    t[flower_type(d, i)] += -(d - i - 1);
    t[vertex_type(d)] += -(d - 1);
    return terms_ineq(d, std::move(t));
}

EntropyInequality flower_closed_expected(int d, int i) {
    std::map<SubsetType, mpq_class> t;
    t[flower_type(d, i)] += d - 1;
    t[vertex_type(d)] += -(i * d - 2 * i + 1);
    return terms_ineq(d, std::move(t));
}

void criterion_1_flower(Checker& c) {
    for (int d = 3; d <= 6; ++d) {
        for (int i = 1; i < d; ++i)
            c.require(builtin_inequality("flower", d, i) == flower_step_expected(d, i),
                      "step inequality mismatch at d=" + std::to_string(d) +
                          " i=" + std::to_string(i));
        EntropyInequality closed = builtin_inequality("flower", d, 1);
        c.require(closed == flower_closed_expected(d, 2),
                  "closed form base mismatch at d=" + std::to_string(d));
        for (int i = 2; i < d; ++i) {
            const EntropyInequality step = builtin_inequality("flower", d, i);
            const auto it = step.terms().find(flower_type(d, i));
            mpq_class w = 0;
            if (it != step.terms().end())
                w = -it->second / closed.terms().at(flower_type(d, i));
            closed = combine({{step, 1}, {closed, w}});
            c.require(closed == flower_closed_expected(d, i + 1),
                      "closed form mismatch at d=" + std::to_string(d) +
                          " i=" + std::to_string(i + 1));
        }
    }
}

void criterion_2_path_edge(Checker& c) {
    for (int d = 3; d <= 5; ++d) {
        const EntropyInequality pe = builtin_inequality("path_edge", d);
        const mpq_class coef =
            -pe.terms().at(edge_type(d)) / pe.terms().at(path_type(d, 3));
        c.require(coef == rat(2 * d - 3, d - 1),
                  "coefficient mismatch at d=" + std::to_string(d));
    }
    c.require(render_inequality(builtin_inequality("path_edge", 3)) ==
                  "H(P3) >= 3/2 H(edge)",
              "rendering mismatch at d=3");
}

void criterion_3_complete_graph(Checker& c) {
    for (int d = 3; d <= 5; ++d) {
        const EntropyInequality kg = builtin_inequality("complete_graph", d);
        const mpq_class bound =
            -kg.terms().at(vertex_type(d)) / kg.terms().at(pair_type(d, 3));
        c.require(bound == 2 - rat(2, d * (d - 1)),
                  "bound mismatch at d=" + std::to_string(d));
    }
    const EntropyInequality k4 = builtin_inequality("complete_graph", 3);
    c.require(-k4.terms().at(vertex_type(3)) / k4.terms().at(pair_type(3, 3)) ==
                  rat(5, 3),
              "bound at d=3 is not 5/3");
}

void criterion_4_sphere_mutual_info(Checker& c) {
    for (int d = 3; d <= 4; ++d) {
        long long coef = 1;
        for (int k = 1; k <= 3; ++k) {
            coef *= d - 1;
            std::map<SubsetType, mpq_class> t;
            t[sphere_type(d, k)] = 1;
            t[vertex_type(d)] = -static_cast<long>(coef);
            c.require(builtin_inequality("sphere", d, k) == terms_ineq(d, std::move(t)),
                      "sphere mismatch at d=" + std::to_string(d) + " k=" + std::to_string(k));
        }
    }
    for (int k = 1; k <= 4; ++k) {
        const EntropyInequality mi = builtin_inequality("mutual_info", 3, k);
        long long pw = 1;
        for (int i = 0; i < k / 2; ++i) pw *= 2;  // (d-1)^l at d=3
        const mpq_class expected = (k % 2 == 1) ? rat(2, 3 * pw) : rat(1, pw);
        // normalized mutual information bound: 2 minus the coefficient ratio
        const mpq_class got =
            2 + mi.terms().at(vertex_type(3)) / mi.terms().at(pair_type(3, k));
        c.require(got == expected,
                  "mutual information bound mismatch at k=" + std::to_string(k));
    }
}

void criterion_5_oracle_equality(Checker& c) {
    const BaseGraph k4 = complete_graph(4);
    // the full 16384-case instance: 2^6 lifts x 2^8 colorings
    const ConsistentCollection uniform = uniform_product_collection(k4, 2);
    c.require(expected_colorings(k4, uniform, 2) ==
                  brute_force_expected_colorings(k4, uniform, 2),
              "K_4 n=2 uniform instance mismatch");

    Rng rng(50505);
    const std::vector<BaseGraph> graphs = {
        BaseGraph(2, {{0, 0, 1}}), BaseGraph(2, {{0, 0, 1}, {1, 0, 1}}), multi_edge_graph(3),
        complete_graph(3), complete_graph(4)};
    int done = 0;
    while (done < 20) {
        const BaseGraph& g = graphs[uniform_below(rng, graphs.size())];
        const int n = 1 + static_cast<int>(uniform_below(rng, 3));
        // stay inside the brute-force guard
        double cost = 1;
        for (int i = 0; i < n * g.vertex_count(); ++i) cost *= 2;
        double nf = 1;
        for (int i = 2; i <= n; ++i) nf *= i;
        for (int e = 0; e < g.edge_count(); ++e) cost *= nf;
        if (cost > 1e8) continue;
        // random exact collection realized by one coloring + one matching per edge
        std::vector<std::vector<int>> colors(g.vertex_count(), std::vector<int>(n));
        for (auto& cu : colors)
            for (auto& x : cu) x = static_cast<int>(uniform_below(rng, 2));
        ConsistentCollection col;
        col.num_states = 2;
        col.vertex_dist.resize(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) {
            std::vector<long long> cnt(2, 0);
            for (const int x : colors[v]) ++cnt[x];
            col.vertex_dist[v] = {rat(cnt[0], n), rat(cnt[1], n)};
        }
        col.edge_dist.resize(g.edge_count());
        for (const EdgeRec& e : g.edges()) {
            const auto sigma = random_permutation(rng, n);
            std::vector<long long> k(4, 0);
            for (int i = 0; i < n; ++i) ++k[colors[e.u][i] * 2 + colors[e.v][sigma[i]]];
            col.edge_dist[e.id].resize(4);
            for (int i = 0; i < 4; ++i)
                col.edge_dist[e.id][i] = rat(k[i], n);
        }
        const mpq_class exact = expected_colorings(g, col, n);
        const mpq_class brute = brute_force_expected_colorings(g, col, n);
        c.require(exact == brute, "randomized instance " + std::to_string(done) + " mismatch");
        c.require(exact > 0, "randomized instance " + std::to_string(done) +
                                 " unexpectedly has zero expectation");
        ++done;
    }
}

void criterion_6_rate_convergence(Checker& c) {
    const BaseGraph k4 = complete_graph(4);
    const ConsistentCollection col = uniform_product_collection(k4, 2);
    const double rate = collection_rate(k4, col);
    std::vector<double> diffs;
    for (const int n : {24, 60, 120}) {
        const mpq_class e = expected_colorings(k4, col, n);
        diffs.push_back(std::abs(log_rational(e) / n - rate));
    }
    std::ostringstream seen;
    seen.precision(6);
    seen << "|diff| = " << diffs[0] << ", " << diffs[1] << ", " << diffs[2]
         << " at n = 24, 60, 120";
    c.require(diffs[0] > diffs[1] && diffs[1] > diffs[2],
              "differences not decreasing (" + seen.str() + ")");
    c.require(diffs[2] < 0.1, "final difference not below 0.1 nats (" + seen.str() + ")");
}

void criterion_7_markov_regimes(Checker& c) {
    const auto family = [](double e) { return binary_symmetric_chain(e); };
    const EntropyInequality ev = builtin_inequality("edge_vertex", 3);

    const std::vector<double> ev_lo = scan_regime(family, ev, 1e-4, 0.5, 1e-9);
    c.require(ev_lo.size() == 1, "expected one edge-vertex threshold below 1/2");
    const double th = ev_lo.front();
    const auto h_bits = [](double e) {
        const auto t = [](double p) { return p > 0 ? -p * std::log2(p) : 0.0; };
        return t(e) + t(1 - e);
    };
    c.require(std::abs(h_bits(th) - 1.0 / 3.0) < 1e-6,
              "binary entropy at the threshold is not 1/3 bits");
    c.require(std::abs(th - 0.0615) < 1e-3, "threshold not near 0.0615");

    // spectral baseline: |1-2e| = 1/sqrt(2)
    double lo = 0.0, hi = 0.5;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (spectral_bound(binary_symmetric_chain(mid), 3).first > 1.0 / std::sqrt(2.0) ? lo : hi) =
            mid;
    }
    c.require(std::abs(lo - (1.0 - 1.0 / std::sqrt(2.0)) / 2.0) < 1e-6,
              "spectral threshold not at (1 - 1/sqrt(2))/2");
    c.require(std::abs(lo - 0.1464) < 1e-3, "spectral threshold not near 0.1464");

    // sphere k=2 admissible interval strictly inside the edge-vertex interval
    const EntropyInequality s2 = builtin_inequality("sphere", 3, 2);
    const std::vector<double> s2_lo = scan_regime(family, s2, 1e-4, 0.5, 1e-9);
    const std::vector<double> ev_hi = scan_regime(family, ev, 0.5, 1 - 1e-4, 1e-9);
    const std::vector<double> s2_hi = scan_regime(family, s2, 0.5, 1 - 1e-4, 1e-9);
    c.require(s2_lo.size() == 1 && ev_hi.size() == 1 && s2_hi.size() == 1,
              "unexpected threshold counts");
    c.require(s2_lo.front() > th + 1e-6 && s2_hi.front() < ev_hi.front() - 1e-6,
              "sphere-2 interval not strictly inside the edge-vertex interval");

    // the k=1 blow-up is threshold-equivalent to edge-vertex
    const std::vector<double> b1_lo =
        scan_regime(family, blow_up(ev, 1), 1e-4, 0.5, 1e-9);
    c.require(b1_lo.size() == 1 && std::abs(b1_lo.front() - th) < 1e-6,
              "blow-up threshold differs from the edge-vertex threshold");
}

void criterion_8_simulation_fidelity(Checker& c) {
    const BaseGraph k4 = complete_graph(4);
    const int n = 100000;
    const std::uint64_t seed = 2024;
    const LiftGraph lift = random_lift(k4, n, seed);

    const NiceFlags nice = r_nice_flags(lift, 2);
    long long bad = 0;
    for (const char b : nice.edges) bad += (b == 0);
    const double frac = static_cast<double>(bad) / static_cast<double>(nice.edges.size());
    c.require(frac < 0.01, "non-2-nice edge fraction " + std::to_string(frac) + " >= 1%");

    const auto rule = LocalRule::make("iid", 0);
    const Coloring coloring = project_rule(lift, *rule, seed);

    const std::vector<EntropyInequality> builtins = {
        builtin_inequality("edge_vertex", 3),     builtin_inequality("star_edge", 3),
        builtin_inequality("path_edge", 3),       builtin_inequality("complete_graph", 3),
        builtin_inequality("flower", 3, 1),       builtin_inequality("flower", 3, 2),
        builtin_inequality("sphere", 3, 1),       builtin_inequality("sphere", 3, 2),
        builtin_inequality("mutual_info", 3, 2),  builtin_inequality("mutual_info", 3, 3),
        builtin_inequality("mutual_info", 3, 4)};

    std::map<SubsetType, double> h;
    long long task = 0;
    for (const EntropyInequality& ineq : builtins)
        for (const auto& [t, coef] : ineq.terms())
            if (!h.count(t)) {
                ++task;
                h[t] = estimate_type_entropy(lift, coloring, t, 150000,
                                             seed + 90001ULL * task)
                           .entropy;
            }

    const double he = h.at(edge_type(3));
    c.require(std::abs(he - 2 * std::log(2)) < 0.02,
              "edge entropy " + std::to_string(he) + " not within 0.02 of 2 ln 2");
    for (const EntropyInequality& ineq : builtins) {
        const double slack = evaluate_slack(ineq, h);
        c.require(slack >= -0.02, "slack of " + ineq.name() + " is " + std::to_string(slack));
    }
}

void criterion_9_sharpness(Checker& c) {
    const EntropyInequality ev = builtin_inequality("edge_vertex", 3);
    for (int r = 0; r <= 8; ++r) {
        const long long p = 6LL << r;
        c.require(sharpness_ratio(ev, r) ==
                      rat(p - 3, p - 4),
                  "edge-vertex ratio mismatch at r=" + std::to_string(r));
    }
    c.require(std::abs(sharpness_ratio(ev, 8).get_d() - 1.0) < 1e-3,
              "edge-vertex ratio at r=8 not within 1e-3 of 1");

    const std::vector<std::pair<std::string, EntropyInequality>> others = {
        {"star_edge", builtin_inequality("star_edge", 3)},
        {"path_edge", builtin_inequality("path_edge", 3)},
        {"sphere_2", builtin_inequality("sphere", 3, 2)},
        {"flower", builtin_inequality("flower", 3, 2)}};  // merged closed form at d=3
    for (const auto& [name, ineq] : others) {
        c.require(sharpness_ratio(ineq, 4).get_d() <= 1.2,
                  name + " ratio at r=4 above 1.2");
        mpq_class prev = sharpness_ratio(ineq, 4);
        for (int r = 5; r <= 6; ++r) {
            const mpq_class cur = sharpness_ratio(ineq, r);
            c.require(cur > 1 && cur < prev,
                      name + " ratio not monotonically approaching 1 at r=" + std::to_string(r));
            prev = cur;
        }
    }
}

void criterion_10_property_suites(Checker& c) {
    c.require(suite_canonicalization_congruence(1000) == 0, "canonicalization congruence");
    c.require(suite_ball_semigroup(1000) == 0, "ball semigroup");
    c.require(suite_local_stats_marginals(1000) == 0, "local stats marginals");
    c.require(suite_matching_total_probability(1000) == 0, "matching total probability");
}

}  // namespace

int main() {
    run(1, "two-vertex constructions give the neighbor-set inequalities, 3<=d<=6",
        criterion_1_flower, 1.0);
    run(2, "path-edge coefficient (2d-3)/(d-1), d in {3,4,5}", criterion_2_path_edge);
    run(3, "complete-graph bound 2 - 2/(d(d-1))", criterion_3_complete_graph);
    run(4, "sphere (d-1)^k and mutual-information bounds", criterion_4_sphere_mutual_info);
    run(5, "counting oracle equals brute force on 20+ random instances",
        criterion_5_oracle_equality, 30.0);
    run(6, "rate convergence for the uniform product collection on K_4",
        criterion_6_rate_convergence, 10.0);
    run(7, "binary symmetric chain regimes and spectral baseline",
        criterion_7_markov_regimes);
    run(8, "simulation fidelity on a 10^5-fold lift of K_4", criterion_8_simulation_fidelity,
        60.0);
    run(9, "sharpness ratios from exact ball sizes", criterion_9_sharpness);
    run(10, "property suites: 1000 randomized cases each", criterion_10_property_suites);
    if (failures != 0) std::cout << failures << " criterion(s) failed\n";
    return failures;
}
