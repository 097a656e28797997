#include "fiid/inequality.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fiid {

namespace {

std::string format_coef(const mpq_class& q) {
    std::ostringstream os;
    if (q.get_den() == 1)
        os << q.get_num();
    else
        os << q.get_num() << "/" << q.get_den();
    return os.str();
}

}  // namespace

EntropyInequality::EntropyInequality(int d, std::map<SubsetType, mpq_class> terms,
                                     std::string name)
    : d_(d), terms_(std::move(terms)), name_(std::move(name)) {
    if (d_ < 3) throw std::invalid_argument("inequality: tree degree must be >= 3");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.degree() != d_)
            throw std::invalid_argument("inequality: term degree differs from inequality degree");
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
    if (terms_.empty()) return;
    mpz_class lcm_den = 1;
    for (const auto& [t, c] : terms_) {
        mpz_class den = c.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
        lcm_den = lcm_den / g * den;
    }
    mpz_class gcd_num = 0;
    for (const auto& [t, c] : terms_) {
        mpz_class scaled = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_mpz_t());
    }
    const mpq_class scale(lcm_den, gcd_num);
    for (auto& [t, c] : terms_) {
        c *= scale;
        c.canonicalize();
    }
}

bool EntropyInequality::operator==(const EntropyInequality& other) const {
    return d_ == other.d_ && terms_ == other.terms_;
}

EntropyInequality combine(const std::vector<std::pair<EntropyInequality, mpq_class>>& parts) {
    if (parts.empty()) throw std::invalid_argument("combine: empty combination");
    const int d = parts.front().first.degree();
    std::map<SubsetType, mpq_class> terms;
    for (const auto& [ineq, scalar] : parts) {
        if (ineq.degree() != d)
            throw std::invalid_argument("combine: mixed tree degrees");
        if (scalar < 0) throw std::invalid_argument("combine: negative scalar");
        for (const auto& [t, c] : ineq.terms()) terms[t] += scalar * c;
    }
    return EntropyInequality(d, std::move(terms));
}

std::string format_inequality(const EntropyInequality& ineq) {
    std::ostringstream os;
    os << "ineq d=" << ineq.degree();
    if (!ineq.name().empty()) os << " name=" << ineq.name();
    os << "\n";
    for (const auto& [t, c] : ineq.terms()) {
        os << "term " << c.get_num() << "/" << c.get_den() << " " << t.size();
        for (int i = 0; i < t.size(); ++i)
            for (int j = i + 1; j < t.size(); ++j) os << " " << t.distances()[i][j];
        os << "\n";
    }
    return os.str();
}

EntropyInequality parse_inequality(std::istream& in) {
    std::string line;
    int lineno = 0;
    int d = -1;
    std::string name;
    std::map<SubsetType, mpq_class> terms;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("inequality text line " + std::to_string(lineno) + ": " +
                                        msg);
        };
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == '#') continue;
        if (tok == "ineq") {
            std::string kv;
            while (ls >> kv) {
                if (kv.rfind("d=", 0) == 0)
                    d = std::stoi(kv.substr(2));
                else if (kv.rfind("name=", 0) == 0)
                    name = kv.substr(5);
                else
                    fail("unknown attribute '" + kv + "'");
            }
            if (d < 3) fail("missing or invalid d");
        } else if (tok == "term") {
            if (d < 0) fail("term before ineq header");
            std::string coef_str;
            int n;
            if (!(ls >> coef_str >> n) || n < 1) fail("expected 'term <num>/<den> <n> ...'");
            mpq_class coef;
            if (coef.set_str(coef_str, 10) != 0) fail("bad coefficient '" + coef_str + "'");
            coef.canonicalize();
            DistMatrix dist(n, std::vector<int>(n, 0));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    int x;
                    if (!(ls >> x)) fail("expected " + std::to_string(n * (n - 1) / 2) +
                                         " distance entries");
                    dist[i][j] = dist[j][i] = x;
                }
            std::string extra;
            if (ls >> extra) fail("unexpected trailing token '" + extra + "'");
            terms[SubsetType::from_distances(d, dist)] += coef;
        } else {
            fail("unknown directive '" + tok + "'");
        }
    }
    if (d < 0) throw std::invalid_argument("inequality text: missing 'ineq' header");
    return EntropyInequality(d, std::move(terms), std::move(name));
}

EntropyInequality parse_inequality(const std::string& text) {
    std::istringstream in(text);
    return parse_inequality(in);
}

EntropyInequality load_inequality_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open inequality file: " + path);
    return parse_inequality(in);
}

std::string render_inequality(const EntropyInequality& ineq) {
    if (ineq.terms().empty()) return "0 >= 0";
    // left side: positive term with the most marked vertices
    const SubsetType* lhs = nullptr;
    for (const auto& [t, c] : ineq.terms()) {
        if (c <= 0) continue;
        if (!lhs || t.size() > lhs->size() ||
            (t.size() == lhs->size() && t.diameter() > lhs->diameter()))
            lhs = &t;
    }
    std::ostringstream os;
    if (!lhs) {
        // no positive term; render the raw form
        bool first = true;
        for (const auto& [t, c] : ineq.terms()) {
            os << (first ? "" : " + ") << format_coef(c) << " H(" << type_display_name(t) << ")";
            first = false;
        }
        os << " >= 0";
        return os.str();
    }
    const mpq_class lead = ineq.terms().at(*lhs);
    os << "H(" << type_display_name(*lhs) << ")";
    // remaining positive terms stay on the left, negative move right
    for (const auto& [t, c] : ineq.terms()) {
        if (&t == lhs || c <= 0) continue;
        const mpq_class r = c / lead;
        os << " + " << (r == 1 ? "" : format_coef(r) + " ") << "H(" << type_display_name(t) << ")";
    }
    os << " >=";
    bool any = false;
    for (const auto& [t, c] : ineq.terms()) {
        if (c >= 0) continue;
        mpq_class r = -c / lead;
        os << (any ? " + " : " ") << (r == 1 ? "" : format_coef(r) + " ") << "H("
           << type_display_name(t) << ")";
        any = true;
    }
    if (!any) os << " 0";
    return os.str();
}

}  // namespace fiid
