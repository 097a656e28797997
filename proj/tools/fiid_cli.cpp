// Command line front end: derive / blowup / lift / simulate / markov /
// oracle / sharpness over the text formats of the library.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fiid/counting.hpp"
#include "fiid/derive.hpp"
#include "fiid/graph.hpp"
#include "fiid/inequality.hpp"
#include "fiid/lift.hpp"
#include "fiid/markov.hpp"

namespace {

using namespace fiid;

// "builtin:NAME", "builtin:NAME:k=2", "builtin:NAME:i=1", or a file path
EntropyInequality resolve_ineq_spec(const std::string& spec, int d) {
    if (spec.rfind("builtin:", 0) != 0) return load_inequality_file(spec);
    if (d < 3)
        throw std::invalid_argument("builtin inequality '" + spec + "' requires --d >= 3");
    std::string rest = spec.substr(8);
    int param = 0;
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
        const std::string p = rest.substr(colon + 1);
        rest = rest.substr(0, colon);
        if (p.rfind("k=", 0) == 0 || p.rfind("i=", 0) == 0)
            param = std::stoi(p.substr(2));
        else
            throw std::invalid_argument("bad builtin parameter '" + p + "' (use k=<int> or i=<int>)");
    }
    return builtin_inequality(rest, d, param);
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write output file: " + out_path);
    f << content;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

int cmd_derive(const std::string& graph_path, const std::string& builtin, int d, int k, int i,
               const std::string& out, const std::string& graph_out) {
    EntropyInequality ineq = [&] {
        if (!builtin.empty()) {
            const int param = (builtin == "sphere" || builtin == "mutual_info") ? k : i;
            Construction c = builtin_construction(builtin, d, param);
            if (!graph_out.empty())
                write_output(graph_out, format_graph_text(c.graph, &c.walks));
            return c.inequality;
        }
        GraphFile gf = load_graph_file(graph_path);
        return derive_inequality(gf.graph, gf.walks);
    }();
    std::cout << render_inequality(ineq) << "\n";
    std::string text = "# " + render_inequality(ineq) + "\n" + format_inequality(ineq);
    if (!out.empty())
        write_output(out, text);
    else
        std::cout << text;
    return 0;
}

int cmd_blowup(const std::string& spec, int d, int k, const std::string& out) {
    const EntropyInequality ineq = blow_up(resolve_ineq_spec(spec, d), k);
    std::cout << render_inequality(ineq) << "\n";
    std::string text = "# " + render_inequality(ineq) + "\n" + format_inequality(ineq);
    if (!out.empty())
        write_output(out, text);
    else
        std::cout << text;
    return 0;
}

int cmd_lift(const std::string& graph_path, int n, std::uint64_t seed, const std::string& out) {
    const GraphFile gf = load_graph_file(graph_path);
    const BaseGraph lifted = lift_base(gf.graph, n, seed);
    std::ostringstream os;
    os << "# fiid lift seed=" << seed << " n=" << n << "\n";
    os << format_graph_text(lifted);
    write_output(out, os.str());
    return 0;
}

int cmd_simulate(const std::string& graph_path, int n, std::uint64_t seed,
                 const std::string& rule_name, int radius, const std::string& ineq_spec,
                 long long samples, const std::string& out) {
    const GraphFile gf = load_graph_file(graph_path);
    const std::optional<int> d = gf.graph.regular_degree();
    if (!d || *d < 3)
        throw std::invalid_argument("simulate: graph must be d-regular with d >= 3");
    const EntropyInequality ineq = resolve_ineq_spec(ineq_spec, *d);
    const LiftGraph lift = random_lift(gf.graph, n, seed);
    const std::unique_ptr<LocalRule> rule = LocalRule::make(rule_name, radius);
    const Coloring coloring = project_rule(lift, *rule, seed);

    std::ostringstream os;
    os << "# fiid simulate seed=" << seed << " n=" << n << " rule=" << rule_name
       << " radius=" << radius << " samples=" << samples << " ineq=" << ineq_spec << "\n";
    os << "# term\ttype\tn\tcoef\tentropy_nats\tstd_error\tsamples\n";
    std::map<SubsetType, double> h;
    double slack_var = 0.0;
    long long task = 0;
    for (const auto& [t, coef] : ineq.terms()) {
        ++task;
        const EntropyEstimate est =
            estimate_type_entropy(lift, coloring, t, samples, seed + 1000003ULL * task);
        h[t] = est.entropy;
        slack_var += coef.get_d() * coef.get_d() * est.std_error * est.std_error;
        os << "term\t" << type_display_name(t) << "\t" << t.size() << "\t" << coef.get_num()
           << "/" << coef.get_den() << "\t" << fmt(est.entropy) << "\t" << fmt(est.std_error)
           << "\t" << est.samples << "\n";
    }
    os << "slack\t" << fmt(evaluate_slack(ineq, h)) << "\t" << fmt(std::sqrt(slack_var)) << "\n";
    write_output(out, os.str());
    return 0;
}

int cmd_markov(const std::string& chain_path, const std::string& family, double eps, int d,
               const std::string& ineq_spec, const std::vector<double>& scan, bool spectral,
               const std::string& out) {
    const EntropyInequality ineq = resolve_ineq_spec(ineq_spec, d);
    std::ostringstream os;
    os << "# fiid markov d=" << d << " ineq=" << ineq_spec << "\n";
    if (!scan.empty()) {
        if (family != "binary-symmetric")
            throw std::invalid_argument("markov --scan requires --family binary-symmetric");
        const auto fam = [](double x) { return binary_symmetric_chain(x); };
        const std::vector<double> thresholds =
            scan_regime(fam, ineq, scan[0], scan[1], scan[2]);
        for (const double t : thresholds) os << "threshold\t" << fmt(t) << "\n";
    } else {
        const MarkovChain mc = [&] {
            if (!chain_path.empty()) return load_chain_file(chain_path);
            if (family == "binary-symmetric") return binary_symmetric_chain(eps);
            throw std::invalid_argument("markov: give --chain or --family binary-symmetric");
        }();
        const double slack = check_inequality(mc, ineq);
        os << "slack_nats\t" << fmt(slack) << "\n";
        os << "slack_bits\t" << fmt(slack / std::log(2.0)) << "\n";
        if (spectral) {
            const auto [rho, pass] = spectral_bound(mc, d);
            os << "rho\t" << fmt(rho) << "\tpass\t" << (pass ? 1 : 0) << "\n";
        }
    }
    write_output(out, os.str());
    return 0;
}

int cmd_oracle(const std::string& graph_path, const std::string& collection_path, int n,
               bool brute, const std::string& out) {
    const GraphFile gf = load_graph_file(graph_path);
    const ConsistentCollection c = load_collection_file(collection_path, gf.graph);
    const mpq_class expected = expected_colorings(gf.graph, c, n);
    std::ostringstream os;
    os << "# fiid oracle n=" << n << "\n";
    os << "expected\t" << expected.get_num() << "/" << expected.get_den() << "\n";
    if (expected > 0) os << "log_over_n\t" << fmt(log_rational(expected) / n) << "\n";
    os << "rate\t" << fmt(collection_rate(gf.graph, c)) << "\n";
    if (brute) {
        const mpq_class bf = brute_force_expected_colorings(gf.graph, c, n);
        os << "brute\t" << bf.get_num() << "/" << bf.get_den() << "\n";
        os << "match\t" << (bf == expected ? "exact" : "MISMATCH") << "\n";
    }
    write_output(out, os.str());
    return 0;
}

int cmd_sharpness(const std::string& ineq_spec, int d, int r, const std::string& out) {
    const EntropyInequality ineq = resolve_ineq_spec(ineq_spec, d);
    std::ostringstream os;
    os << "# fiid sharpness ineq=" << ineq_spec << "\n";
    os << "# r\tratio\tfloat\n";
    for (int i = 0; i <= r; ++i) {
        const mpq_class ratio = sharpness_ratio(ineq, i);
        os << i << "\t" << ratio.get_num() << "/" << ratio.get_den() << "\t"
           << fmt(ratio.get_d()) << "\n";
    }
    write_output(out, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy inequalities for factor-of-IID processes on regular trees"};
    app.require_subcommand(1);

    // derive
    std::string d_graph, d_builtin, d_out, d_graph_out;
    int d_d = 3, d_k = 1, d_i = 1;
    auto* derive_cmd = app.add_subcommand("derive", "derive an inequality from a graph + walks");
    derive_cmd->add_option("--graph", d_graph, "graph file (with walk lines)");
    derive_cmd->add_option("--builtin", d_builtin,
                           "builtin construction: edge_vertex, path_edge, flower, "
                           "complete_graph, sphere, mutual_info");
    derive_cmd->add_option("--d", d_d, "tree degree (builtin mode)");
    derive_cmd->add_option("--k", d_k, "radius/distance parameter (sphere, mutual_info)");
    derive_cmd->add_option("--i", d_i, "petal count parameter (flower)");
    derive_cmd->add_option("--out", d_out, "write the inequality file here");
    derive_cmd->add_option("--graph-out", d_graph_out, "write the builtin's graph file here");

    // blowup
    std::string b_ineq, b_out;
    int b_d = 3, b_k = 1;
    auto* blowup_cmd = app.add_subcommand("blowup", "replace each type by its radius-k ball");
    blowup_cmd->add_option("--ineq", b_ineq, "inequality file or builtin:<name>[:k=|i=]")
        ->required();
    blowup_cmd->add_option("--k", b_k, "blow-up radius")->required();
    blowup_cmd->add_option("--d", b_d, "tree degree for builtin specs");
    blowup_cmd->add_option("--out", b_out, "output file");

    // lift
    std::string l_graph, l_out;
    int l_n = 2;
    std::uint64_t l_seed = 0;
    auto* lift_cmd = app.add_subcommand("lift", "connected random n-fold lift of a base graph");
    lift_cmd->add_option("--graph", l_graph, "graph file")->required();
    lift_cmd->add_option("--n", l_n, "fold count")->required();
    lift_cmd->add_option("--seed", l_seed, "PRNG seed")->required();
    lift_cmd->add_option("--out", l_out, "output file");

    // simulate
    std::string s_graph, s_rule = "iid", s_ineq, s_out;
    int s_n = 1000, s_radius = 0;
    long long s_samples = 100000;
    std::uint64_t s_seed = 0;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "project a local rule onto a random lift and estimate term entropies");
    sim_cmd->add_option("--graph", s_graph, "base graph file")->required();
    sim_cmd->add_option("--n", s_n, "fold count")->required();
    sim_cmd->add_option("--seed", s_seed, "PRNG seed")->required();
    sim_cmd->add_option("--rule", s_rule, "local rule: iid, majority, parity");
    sim_cmd->add_option("--radius", s_radius, "rule radius");
    sim_cmd->add_option("--ineq", s_ineq, "inequality file or builtin spec")->required();
    sim_cmd->add_option("--samples", s_samples, "embedding samples per term");
    sim_cmd->add_option("--out", s_out, "output file");

    // markov
    std::string m_chain, m_family, m_ineq, m_out;
    double m_eps = 0.5;
    int m_d = 3;
    std::vector<double> m_scan;
    bool m_spectral = false;
    auto* markov_cmd =
        app.add_subcommand("markov", "exact tree-indexed Markov chain checks and scans");
    markov_cmd->add_option("--chain", m_chain, "chain file (states/p/pi)");
    markov_cmd->add_option("--family", m_family, "parameterized family: binary-symmetric");
    markov_cmd->add_option("--eps", m_eps, "family parameter");
    markov_cmd->add_option("--d", m_d, "tree degree")->required();
    markov_cmd->add_option("--ineq", m_ineq, "inequality file or builtin spec")->required();
    markov_cmd->add_option("--scan", m_scan, "scan slack zeros: <lo> <hi> <tol>")
        ->expected(3);
    markov_cmd->add_flag("--spectral", m_spectral, "also print the spectral radius check");
    markov_cmd->add_option("--out", m_out, "output file");

    // oracle
    std::string o_graph, o_collection, o_out;
    int o_n = 2;
    bool o_brute = false;
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "exact expected coloring counts on random lifts and the rate");
    oracle_cmd->add_option("--graph", o_graph, "graph file")->required();
    oracle_cmd->add_option("--collection", o_collection, "collection file")->required();
    oracle_cmd->add_option("--n", o_n, "fold count")->required();
    oracle_cmd->add_flag("--brute-force", o_brute, "cross-check by exhaustive enumeration");
    oracle_cmd->add_option("--out", o_out, "output file");

    // sharpness
    std::string sh_ineq, sh_out;
    int sh_d = 3, sh_r = 4;
    auto* sharp_cmd =
        app.add_subcommand("sharpness", "ball-size sharpness ratios of an inequality");
    sharp_cmd->add_option("--ineq", sh_ineq, "inequality file or builtin spec")->required();
    sharp_cmd->add_option("--d", sh_d, "tree degree for builtin specs");
    sharp_cmd->add_option("--r", sh_r, "maximum radius")->required();
    sharp_cmd->add_option("--out", sh_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (derive_cmd->parsed()) {
            if (d_graph.empty() == d_builtin.empty())
                throw std::invalid_argument("derive: give exactly one of --graph or --builtin");
            return cmd_derive(d_graph, d_builtin, d_d, d_k, d_i, d_out, d_graph_out);
        }
        if (blowup_cmd->parsed()) return cmd_blowup(b_ineq, b_d, b_k, b_out);
        if (lift_cmd->parsed()) return cmd_lift(l_graph, l_n, l_seed, l_out);
        if (sim_cmd->parsed())
            return cmd_simulate(s_graph, s_n, s_seed, s_rule, s_radius, s_ineq, s_samples, s_out);
        if (markov_cmd->parsed())
            return cmd_markov(m_chain, m_family, m_eps, m_d, m_ineq, m_scan, m_spectral, m_out);
        if (oracle_cmd->parsed()) return cmd_oracle(o_graph, o_collection, o_n, o_brute, o_out);
        if (sharp_cmd->parsed()) return cmd_sharpness(sh_ineq, sh_d, sh_r, sh_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
