#pragma once

#include <functional>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "fiid/inequality.hpp"
#include "fiid/subset_type.hpp"

namespace fiid {

/// Reversible transition kernel with stationary law; defines the Aut-invariant
/// tree-indexed process started from a stationary root state. Reversibility is
/// enforced at construction (the invariant process is ill-defined without it).
class MarkovChain {
public:
    MarkovChain(std::vector<std::vector<double>> transition, std::vector<double> stationary);

    int num_states() const { return static_cast<int>(pi_.size()); }
    double transition(int i, int j) const { return p_[i][j]; }
    double stationary(int i) const { return pi_[i]; }
    const std::vector<std::vector<double>>& transition_matrix() const { return p_; }
    const std::vector<double>& stationary_law() const { return pi_; }

private:
    std::vector<std::vector<double>> p_;
    std::vector<double> pi_;
};

double vertex_entropy(const MarkovChain& mc);
double edge_entropy(const MarkovChain& mc);

/// (n-1) H(edge) - (n-2) H(vertex); requires the marked set to span its
/// Steiner tree (no unmarked interior vertices).
double connected_set_entropy(const MarkovChain& mc, const SubsetType& t);

/// Joint entropy of the marked set, with unmarked Steiner vertices summed out
/// exactly (tree sum-product per marked assignment). Guarded by |M|^n <= 1e7.
double exact_subset_entropy(const MarkovChain& mc, const SubsetType& t);

/// Slack sum coef * exact_subset_entropy; negative slack certifies the chain
/// is not realizable as an Aut(T_d)-factor of IID.
double check_inequality(const MarkovChain& mc, const EntropyInequality& ineq);

/// Zeros of the slack along a one-parameter chain family, located by a grid
/// scan plus bisection to tolerance tol. Throws when no sign change exists.
std::vector<double> scan_regime(const std::function<MarkovChain(double)>& family,
                                const EntropyInequality& ineq, double lo, double hi, double tol);

/// (second-largest |eigenvalue| of the transition matrix, rho <= 1/sqrt(d-1)).
std::pair<double, bool> spectral_bound(const MarkovChain& mc, int d);

MarkovChain binary_symmetric_chain(double eps);

// Text format: 'states <m>', m lines 'p <m row entries>', then 'pi <m entries>'.
MarkovChain parse_chain(std::istream& in);
MarkovChain load_chain_file(const std::string& path);

}  // namespace fiid
