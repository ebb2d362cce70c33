#include "qmassey/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qm {

// ---------------------------------------------------------------- lattice

Class class_add(const Class& a, const Class& b) {
    Class c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

Class class_sub(const Class& a, const Class& b) {
    Class c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

std::string coords_string(const Class& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s;
}

long HomologyLattice::chern(const Class& a) const {
    long s = 0;
    for (std::size_t i = 0; i < rank; ++i) s += c1[i] * a[i];
    return s;
}

bool HomologyLattice::is_effective(const Class& a) const {
    if (a == zero()) return true;
    // c1 is positive on every generator for the targets we handle; this
    // bounds the search depth.
    long target = chern(a);
    if (target <= 0) return false;
    std::function<bool(std::size_t, Class)> rec = [&](std::size_t g, Class rest) -> bool {
        if (rest == zero()) return true;
        if (g == effective_generators.size()) return false;
        const Class& gen = effective_generators[g];
        long cg = chern(gen);
        if (cg <= 0) throw std::logic_error("effectivity search needs c1 > 0 on generators");
        Class cur = rest;
        for (long m = 0; chern(cur) >= 0; ++m) {
            if (rec(g + 1, cur)) return true;
            cur = class_sub(cur, gen);
            if (m > 64) break;
        }
        return false;
    };
    return rec(0, a);
}

std::vector<Class> HomologyLattice::effective_up_to(long bound) const {
    std::set<Class> seen;
    std::function<void(std::size_t, Class)> rec = [&](std::size_t g, Class cur) {
        if (g == effective_generators.size()) {
            seen.insert(cur);
            return;
        }
        Class c = cur;
        while (chern(c) <= bound) {
            rec(g + 1, c);
            c = class_add(c, effective_generators[g]);
        }
    };
    rec(0, zero());
    std::vector<Class> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [&](const Class& x, const Class& y) { return less(x, y); });
    return out;
}

bool HomologyLattice::less(const Class& a, const Class& b) const {
    long ca = chern(a), cb = chern(b);
    if (ca != cb) return ca < cb;
    return a < b;
}

Class HomologyLattice::parse_class(const std::string& raw) const {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty class");
    if (s.find(',') != std::string::npos) {
        Class c;
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ',')) c.push_back(std::stol(part));
        if (c.size() != rank) throw std::invalid_argument("class has wrong rank: " + raw);
        return c;
    }
    Class total = zero();
    std::size_t p = 0;
    while (p < s.size()) {
        int sign = 1;
        if (s[p] == '+' || s[p] == '-') {
            sign = s[p] == '-' ? -1 : 1;
            ++p;
        }
        long mult = 1;
        std::size_t q = p;
        while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
        if (q > p) mult = std::stol(s.substr(p, q - p));
        if (q < s.size() && s[q] == '*') ++q;
        std::size_t r = q;
        while (r < s.size() && (std::isalpha(static_cast<unsigned char>(s[r])) || s[r] == '_')) ++r;
        std::string name = s.substr(q, r - q);
        if (name.empty()) {
            if (q == p) throw std::invalid_argument("bad class expression: " + raw);
            if (mult != 0) throw std::invalid_argument("bare integer class must be 0: " + raw);
        } else {
            auto it = names.find(name);
            if (it == names.end()) throw std::invalid_argument("unknown class name: " + name);
            for (std::size_t i = 0; i < rank; ++i) total[i] += sign * mult * it->second[i];
        }
        p = r;
    }
    return total;
}

std::string HomologyLattice::class_name(const Class& a) const {
    if (a == zero()) return "0";
    for (const auto& [n, c] : names)
        if (c == a) return n;
    for (const auto& [n, c] : names)
        for (long m = 2; m <= 6; ++m) {
            Class mc(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) mc[i] = m * c[i];
            if (mc == a) return std::to_string(m) + n;
        }
    return "(" + coords_string(a) + ")";
}

// ---------------------------------------------------------------- algebra

std::size_t GradedAlgebra::at(const std::string& label) const {
    auto it = index.find(label);
    if (it == index.end()) throw std::invalid_argument("unknown basis label: " + label);
    return it->second;
}

void GradedAlgebra::add_basis(const std::string& label, int degree) {
    if (index.count(label)) throw std::invalid_argument("duplicate basis label: " + label);
    std::size_t old = size();
    index[label] = old;
    labels.push_back(label);
    degrees.push_back(degree);
    std::size_t n = old + 1;
    std::vector<Vec> t(n * n, zeros(n));
    for (std::size_t i = 0; i < old; ++i)
        for (std::size_t j = 0; j < old; ++j) {
            Vec v = table[i * old + j];
            v.push_back(Q(0));
            t[i * n + j] = v;
        }
    table = std::move(t);
    Matrix p(n, n);
    for (std::size_t i = 0; i < old; ++i)
        for (std::size_t j = 0; j < old; ++j) p(i, j) = pairing(i, j);
    pairing = p;
}

void GradedAlgebra::set_product(std::size_t i, std::size_t j, const Vec& v) { table[i * size() + j] = v; }

Vec GradedAlgebra::element(const std::string& lincomb) const {
    Vec v = zeros(size());
    for (const auto& [l, q] : parse_lincomb(lincomb)) v[at(l)] += q;
    return v;
}

Vec GradedAlgebra::mul(const Vec& x, const Vec& y) const {
    std::size_t n = size();
    Vec r = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(y[j]) == 0) continue;
            axpy(r, x[i] * y[j], table[i * n + j]);
        }
    }
    return r;
}

Q GradedAlgebra::pair(const Vec& x, const Vec& y) const {
    Q s = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < size(); ++j)
            if (sgn(y[j]) != 0 && sgn(pairing(i, j)) != 0) s += x[i] * y[j] * pairing(i, j);
    }
    return s;
}

std::optional<int> GradedAlgebra::degree_of(const Vec& x) const {
    std::optional<int> d;
    for (std::size_t i = 0; i < size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        if (d && *d != degrees[i]) return std::nullopt;
        d = degrees[i];
    }
    return d;
}

std::vector<std::size_t> GradedAlgebra::basis_of_degree(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (degrees[i] == d) out.push_back(i);
    return out;
}

int GradedAlgebra::max_degree() const {
    int m = 0;
    for (int d : degrees) m = std::max(m, d);
    return m;
}

std::string GradedAlgebra::render(const Vec& x) const {
    std::string s;
    for (std::size_t i = 0; i < size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        Q q = x[i];
        bool neg = sgn(q) < 0;
        if (neg) q = -q;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (q != 1) s += to_string(q) + "*";
        s += labels[i];
    }
    return s.empty() ? "0" : s;
}

Q GradedAlgebra::divisor_value(std::size_t i, const Class& a) const {
    auto it = divisor_eval.find(i);
    if (it == divisor_eval.end()) throw std::invalid_argument("no lattice evaluation declared for " + labels[i]);
    Q s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += Q(it->second[k] * a[k]);
    return s;
}

// ---------------------------------------------------------------- parsing

static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::map<std::string, Q> parse_lincomb(const std::string& raw) {
    std::map<std::string, Q> out;
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty linear combination");
    std::size_t p = 0;
    while (p < s.size()) {
        int sign = 1;
        while (p < s.size() && (s[p] == '+' || s[p] == '-')) {
            if (s[p] == '-') sign = -sign;
            ++p;
        }
        std::size_t q = p;
        while (q < s.size() && s[q] != '+' && s[q] != '-') ++q;
        std::string term = s.substr(p, q - p);
        if (term.empty()) throw std::invalid_argument("bad linear combination: " + raw);
        Q coef = 1;
        std::string label;
        auto star = term.find('*');
        if (star != std::string::npos) {
            coef = parse_rational(term.substr(0, star));
            label = term.substr(star + 1);
        } else if (std::isdigit(static_cast<unsigned char>(term[0]))) {
            coef = parse_rational(term);
            if (coef != 0) throw std::invalid_argument("scalar term without label: " + raw);
        } else {
            label = term;
        }
        if (!label.empty()) {
            out[label] += sign * coef;
            if (out[label] == 0) out.erase(label);
        }
        p = q;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

static std::vector<long> parse_ints(std::istringstream& ss) {
    std::vector<long> v;
    long x;
    while (ss >> x) v.push_back(x);
    return v;
}

GradedAlgebra parse_algebra(const std::string& text) {
    GradedAlgebra a;
    struct Pending {
        std::string kind, l, r, rhs;
        int line;
    };
    std::vector<Pending> pending;
    std::string poincare_label;
    HomologyLattice lat;
    bool has_lattice = false;
    std::vector<std::pair<std::string, std::vector<long>>> evals;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string kw;
        ss >> kw;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + why);
        };
        if (kw == "basis") {
            std::string l;
            int d;
            if (!(ss >> l >> d)) fail("expected: basis <label> <degree>");
            a.add_basis(l, d);
        } else if (kw == "unit") {
            std::string l;
            ss >> l;
            a.unit = a.at(l);
            a.has_unit = true;
        } else if (kw == "cup" || kw == "pair") {
            std::string l, r, eq;
            if (!(ss >> l >> r >> eq) || eq != "=") fail("expected: " + kw + " <label> <label> = <value>");
            std::string rhs;
            std::getline(ss, rhs);
            pending.push_back({kw, l, r, trim(rhs), lineno});
        } else if (kw == "poincare") {
            ss >> poincare_label;
        } else if (kw == "lattice") {
            ss >> lat.rank;
            has_lattice = true;
        } else if (kw == "c1") {
            lat.c1 = parse_ints(ss);
        } else if (kw == "effective") {
            lat.effective_generators.push_back(parse_ints(ss));
        } else if (kw == "class") {
            std::string name;
            ss >> name;
            lat.names[name] = parse_ints(ss);
        } else if (kw == "eval") {
            std::string l;
            ss >> l;
            evals.push_back({l, parse_ints(ss)});
        } else {
            fail("unknown statement '" + kw + "'");
        }
    }
    std::size_t n = a.size();
    std::set<std::pair<std::size_t, std::size_t>> declared;
    bool explicit_pairing = false;
    for (const auto& p : pending) {
        std::size_t i = a.at(p.l), j = a.at(p.r);
        if (p.kind == "cup") {
            a.set_product(i, j, a.element(p.rhs));
            declared.insert({i, j});
        } else {
            a.pairing(i, j) = parse_rational(p.rhs);
            explicit_pairing = true;
        }
    }
    if (a.has_unit) {
        // unit products that were not written out explicitly
        for (std::size_t k = 0; k < n; ++k) {
            if (!declared.count({a.unit, k})) a.set_product(a.unit, k, a.basis_vec(k));
            if (!declared.count({k, a.unit})) a.set_product(k, a.unit, a.basis_vec(k));
        }
    }
    if (!poincare_label.empty()) {
        std::size_t top = a.at(poincare_label);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a.pairing(i, j) = a.product(i, j)[top];
        a.poincare = true;
    } else if (explicit_pairing) {
        a.poincare = true;
    }
    if (has_lattice) {
        if (lat.c1.size() != lat.rank) throw std::invalid_argument("c1 has wrong length");
        for (const auto& g : lat.effective_generators)
            if (g.size() != lat.rank) throw std::invalid_argument("effective generator has wrong rank");
        a.lattice = lat;
        for (const auto& [l, v] : evals) {
            if (v.size() != lat.rank) throw std::invalid_argument("eval has wrong rank for " + l);
            a.divisor_eval[a.at(l)] = v;
        }
    }
    return a;
}

GradedAlgebra load_algebra(const std::string& path) { return parse_algebra(read_file(path)); }

// ---------------------------------------------------------------- checks

std::vector<Violation> verify_algebra(const GradedAlgebra& a) {
    std::vector<Violation> out;
    std::size_t n = a.size();
    auto L = [&](std::size_t i) { return a.labels[i]; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vec& p = a.product(i, j);
            if (!is_zero(p)) {
                auto d = a.degree_of(p);
                if (!d || *d != a.degrees[i] + a.degrees[j])
                    out.push_back({"degree", {L(i), L(j)}, "product " + a.render(p) + " is not of degree " +
                                                               std::to_string(a.degrees[i] + a.degrees[j])});
            }
            if (j < i) continue;
            int s = (a.degrees[i] * a.degrees[j]) % 2 ? -1 : 1;
            if (a.product(i, j) != scaled(a.product(j, i), Q(s)))
                out.push_back({"commutativity", {L(i), L(j)},
                               a.render(a.product(i, j)) + " vs " + a.render(a.product(j, i))});
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec l = a.mul(a.product(i, j), a.basis_vec(k));
                Vec r = a.mul(a.basis_vec(i), a.product(j, k));
                if (l != r)
                    out.push_back({"associativity", {L(i), L(j), L(k)}, a.render(l) + " vs " + a.render(r)});
            }
    if (a.has_unit) {
        for (std::size_t k = 0; k < n; ++k)
            if (a.product(a.unit, k) != a.basis_vec(k) || a.product(k, a.unit) != a.basis_vec(k))
                out.push_back({"unit", {L(a.unit), L(k)}, "unit does not act as identity"});
    }
    if (a.poincare) {
        if (rank(a.pairing) != n) out.push_back({"pairing", {}, "pairing is degenerate"});
        // Frobenius compatibility of the pairing with the product
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Q l = a.pair(a.product(i, j), a.basis_vec(k));
                    Q r = a.pair(a.basis_vec(i), a.product(j, k));
                    if (l != r)
                        out.push_back({"pairing", {L(i), L(j), L(k)}, to_string(l) + " vs " + to_string(r)});
                }
    }
    return out;
}

GradedAlgebra exterior_algebra(int g) {
    GradedAlgebra a;
    // basis: subsets of generators in binary order
    int n = 1 << g;
    auto label = [&](int mask) {
        if (mask == 0) return std::string("1");
        std::string s;
        for (int b = 0; b < g; ++b)
            if (mask & (1 << b)) s += "x" + std::to_string(b + 1);
        return s;
    };
    for (int m = 0; m < n; ++m) a.add_basis(label(m), __builtin_popcount(m));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x & y) continue;
            // sign of merging sorted generator lists
            int inv = 0;
            for (int b = 0; b < g; ++b)
                if (y & (1 << b))
                    for (int c = b + 1; c < g; ++c)
                        if (x & (1 << c)) ++inv;
            a.set_product(x, y, scaled(a.basis_vec(x | y), Q(inv % 2 ? -1 : 1)));
        }
    a.unit = 0;
    a.has_unit = true;
    return a;
}

} // namespace qm
