#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "fiid/subset_type.hpp"

namespace fiid {

/// Linear form sum coef * H(type) asserted >= 0 for every Aut(T_d)-factor of
/// IID process. Stored in primitive integer form: zero coefficients dropped,
/// remaining ones scaled by lcm(denominators)/gcd(numerators).
class EntropyInequality {
public:
    EntropyInequality(int d, std::map<SubsetType, mpq_class> terms, std::string name = "");

    int degree() const { return d_; }
    const std::map<SubsetType, mpq_class>& terms() const { return terms_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    /// equality of degree and normalized terms (name ignored)
    bool operator==(const EntropyInequality& other) const;
    bool operator!=(const EntropyInequality& other) const { return !(*this == other); }

private:
    int d_;
    std::map<SubsetType, mpq_class> terms_;
    std::string name_;
};

/// Conic combination: all inequalities share d, all scalars >= 0.
EntropyInequality combine(const std::vector<std::pair<EntropyInequality, mpq_class>>& parts);

// Text format:
//   ineq d=<d> [name=<label>]
//   term <num>/<den> <n> <upper-triangular distances, row major>
std::string format_inequality(const EntropyInequality& ineq);
EntropyInequality parse_inequality(std::istream& in);
EntropyInequality parse_inequality(const std::string& text);
EntropyInequality load_inequality_file(const std::string& path);

/// Human-readable rendering, e.g. "H(P3) >= 3/2 H(edge)". The positive term
/// with the most marked vertices is isolated on the left.
std::string render_inequality(const EntropyInequality& ineq);

}  // namespace fiid
