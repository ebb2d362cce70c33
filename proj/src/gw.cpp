#include "qmassey/gw.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qm {

// ---------------------------------------------------------------- table

std::pair<Insertions, int> GWTable::canonical(const Insertions& ins) const {
    Insertions v = ins;
    int sign = 1;
    // insertion sort; swapping two odd classes costs a sign
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            if (alg.degrees[v[j - 1]] % 2 && alg.degrees[v[j]] % 2) sign = -sign;
            std::swap(v[j - 1], v[j]);
        }
    return {v, sign};
}

std::string GWTable::describe(const Class& a, const Insertions& ins) const {
    std::string s = "GW_{" + lattice().class_name(a) + "," + std::to_string(ins.size()) + "}(";
    for (std::size_t i = 0; i < ins.size(); ++i) s += (i ? "," : "") + alg.labels[ins[i]];
    return s + ")";
}

void GWTable::add(const Class& a, const Insertions& ins, const Q& value) {
    auto [c, sign] = canonical(ins);
    // two equal odd insertions force the invariant to vanish
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] == c[i - 1] && alg.degrees[c[i]] % 2 && sgn(value) != 0)
            throw std::invalid_argument("nonzero value for antisymmetric repeat in " + describe(a, ins));
    Q v = value * sign;
    auto key = std::make_pair(a, c);
    auto it = entries.find(key);
    if (it != entries.end() && it->second != v)
        throw std::invalid_argument("conflicting values for " + describe(a, ins) + ": " + to_string(it->second) +
                                    " vs " + to_string(v));
    entries[key] = v;
}

std::optional<Q> GWTable::stored(const Class& a, const Insertions& ins) const {
    auto [c, sign] = canonical(ins);
    auto it = entries.find({a, c});
    if (it == entries.end()) return std::nullopt;
    return it->second * sign;
}

static bool pattern_match(const GradedAlgebra& alg, const std::vector<PatternSlot>& pat, const Insertions& ins) {
    std::vector<bool> used(ins.size(), false);
    std::function<bool(std::size_t)> rec = [&](std::size_t p) -> bool {
        if (p == pat.size()) return true;
        for (std::size_t i = 0; i < ins.size(); ++i) {
            if (used[i]) continue;
            bool ok = pat[p].wildcard ? alg.degrees[ins[i]] == pat[p].degree : ins[i] == pat[p].index;
            if (!ok) continue;
            used[i] = true;
            if (rec(p + 1)) return true;
            used[i] = false;
        }
        return false;
    };
    return rec(0);
}

bool GWTable::vanishes_by_rule(const Class& a, const Insertions& ins) const {
    for (const auto& r : rules) {
        if (r.cls != a) continue;
        if (r.containing.empty() || pattern_match(alg, r.containing, ins)) return true;
    }
    return false;
}

bool GWTable::grading_ok(const Class& a, const Insertions& ins) const {
    long total = 0;
    for (auto i : ins) total += alg.degrees[i];
    long k = static_cast<long>(ins.size());
    return total == 2 * dim_n + 2 * lattice().chern(a) + 2 * k - 6;
}

Insertions GWTable::parse_insertions(const std::string& raw) const {
    std::string s;
    for (char c : raw)
        if (c != '(' && c != ')' && c != ' ') s += c;
    Insertions out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(alg.at(part));
    return out;
}

GWTable parse_gw_table(const GradedAlgebra& alg, const std::string& text) {
    if (!alg.lattice) throw std::invalid_argument("GW table needs an algebra with a lattice");
    GWTable t;
    t.alg = alg;
    t.dim_n = alg.max_degree() / 2;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line;
        auto q1 = body.find('"');
        std::string reason;
        if (q1 != std::string::npos) {
            auto q2 = body.find('"', q1 + 1);
            reason = body.substr(q1 + 1, q2 == std::string::npos ? std::string::npos : q2 - q1 - 1);
            body = body.substr(0, q1);
        }
        auto hash = body.find('#');
        if (hash != std::string::npos) body = body.substr(0, hash);
        std::istringstream ss(body);
        std::string kw;
        if (!(ss >> kw)) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("gw table line " + std::to_string(lineno) + ": " + why);
        };
        std::string cls;
        ss >> cls;
        Class a = alg.lattice->parse_class(cls);
        if (kw == "gw") {
            std::string rest;
            std::getline(ss, rest);
            auto eq = rest.find('=');
            if (eq == std::string::npos) fail("missing '='");
            Insertions ins = t.parse_insertions(rest.substr(0, eq));
            std::string val = rest.substr(eq + 1);
            val.erase(std::remove(val.begin(), val.end(), ' '), val.end());
            t.add(a, ins, parse_rational(val));
        } else if (kw == "gw-zero") {
            ZeroRule r;
            r.cls = a;
            r.reason = reason;
            std::string w;
            ss >> w;
            if (w == "containing") {
                std::string pat;
                std::getline(ss, pat);
                auto open = pat.find('('), close = pat.find(')');
                if (open == std::string::npos || close == std::string::npos) fail("bad pattern");
                std::stringstream ps(pat.substr(open + 1, close - open - 1));
                std::string slot;
                while (std::getline(ps, slot, ',')) {
                    slot.erase(std::remove(slot.begin(), slot.end(), ' '), slot.end());
                    PatternSlot p;
                    if (!slot.empty() && slot[0] == '*') {
                        p.wildcard = true;
                        p.degree = std::stoi(slot.substr(1));
                    } else {
                        p.index = alg.at(slot);
                    }
                    r.containing.push_back(p);
                }
            } else if (!w.empty() && w != "reason") {
                fail("expected 'containing' or 'reason'");
            }
            t.rules.push_back(r);
        } else {
            fail("unknown statement '" + kw + "'");
        }
    }
    return t;
}

GWTable load_gw_table(const GradedAlgebra& alg, const std::string& path) {
    return parse_gw_table(alg, read_file(path));
}

// ---------------------------------------------------------------- reduction

static Q lift_lookup(const GWTable& t, const Class& a, const Insertions& ins, bool& found) {
    for (std::size_t i = 0; i < t.alg.size(); ++i) {
        if (t.alg.degrees[i] != 2 || !t.alg.divisor_eval.count(i)) continue;
        Q v = t.alg.divisor_value(i, a);
        if (sgn(v) == 0) continue;
        Insertions ext = ins;
        ext.push_back(i);
        if (auto s = t.stored(a, ext)) {
            found = true;
            return *s / v;
        }
        if (t.vanishes_by_rule(a, ext)) {
            found = true;
            return 0;
        }
    }
    found = false;
    return 0;
}

Q km_reduce(const GWTable& t, const Class& a, const Insertions& ins) {
    const auto& lat = t.lattice();
    if (!lat.is_effective(a)) return 0;
    if (!t.grading_ok(a, ins)) return 0;
    if (a == lat.zero()) {
        if (ins.size() != 3) return 0;
        const auto& g = t.alg;
        return g.pair(g.mul(g.basis_vec(ins[0]), g.basis_vec(ins[1])), g.basis_vec(ins[2]));
    }
    if (auto s = t.stored(a, ins)) return *s;
    if (ins.size() < 3) {
        bool found = false;
        Q v = lift_lookup(t, a, ins, found);
        if (found) return v;
    }
    auto [c, sign] = t.canonical(ins);
    for (std::size_t p = 0; p < c.size(); ++p) {
        std::size_t alpha = c[p];
        if (t.alg.degrees[alpha] != 2 || !t.alg.divisor_eval.count(alpha)) continue;
        Insertions rest = c;
        rest.erase(rest.begin() + static_cast<long>(p));
        Q v = t.alg.divisor_value(alpha, a);
        if (sgn(v) == 0) return 0;
        return sign * v * km_reduce(t, a, rest);
    }
    if (t.vanishes_by_rule(a, ins)) return 0;
    throw UnknownInvariant(a, ins, "unknown invariant " + t.describe(a, ins));
}

// ---------------------------------------------------------------- quantum ring

QuantumRing::QuantumRing(const GWTable& t, const IdealSpec& I, bool left) : table(&t), truncation(I), gamma_left(left) {
    classes = surviving_classes(t.lattice(), I);
    auto inv = inverse(left ? t.alg.pairing : t.alg.pairing.transpose());
    if (!inv) throw std::invalid_argument("pairing is degenerate");
    inv_pairing_t = *inv;
}

const Vec& QuantumRing::star_basis(const Class& a, std::size_t i, std::size_t j) const {
    auto key = std::make_tuple(a, i, j);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const auto& alg = table->alg;
    Vec g = zeros(alg.size());
    for (std::size_t k = 0; k < alg.size(); ++k) g[k] = km_reduce(*table, a, {i, j, k});
    return cache[key] = inv_pairing_t.apply(g);
}

Vec QuantumRing::star(const Class& a, const Vec& x, const Vec& y) const {
    std::size_t n = table->alg.size();
    Vec r = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(y[j]) != 0) axpy(r, x[i] * y[j], star_basis(a, i, j));
    }
    return r;
}

std::map<Class, Vec> QuantumRing::product(const Vec& x, const Vec& y) const {
    std::map<Class, Vec> out;
    for (const auto& a : classes) {
        Vec v = star(a, x, y);
        if (!is_zero(v)) out[a] = v;
    }
    return out;
}

// ---------------------------------------------------------------- WDVV

static Q half_sum(const GWTable& t, const Class& a, const Insertions& xbar, std::size_t m1, std::size_t m2,
                  std::size_t m3, std::size_t m4, const Matrix& ginv) {
    const auto& lat = t.lattice();
    const auto& alg = t.alg;
    std::size_t n = alg.size();
    Q total = 0;
    for (const auto& a1 : lat.effective_up_to(lat.chern(a))) {
        Class a2 = class_sub(a, a1);
        if (!lat.is_effective(a2)) continue;
        std::size_t k = xbar.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
            Insertions left, right;
            for (std::size_t p = 0; p < k; ++p) ((mask >> p) & 1 ? left : right).push_back(xbar[p]);
            left.push_back(m1);
            left.push_back(m2);
            right.push_back(m3);
            right.push_back(m4);
            for (std::size_t i = 0; i < n; ++i) {
                Insertions li = left;
                li.push_back(i);
                std::optional<Q> lv;
                std::optional<UnknownInvariant> lerr;
                try {
                    lv = km_reduce(t, a1, li);
                } catch (const UnknownInvariant& e) {
                    lerr = e;
                }
                if (lv && sgn(*lv) == 0) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (sgn(ginv(i, j)) == 0) continue;
                    Insertions ri = right;
                    ri.push_back(j);
                    Q rv = km_reduce(t, a2, ri); // an unknown here propagates unless the left factor is 0
                    if (sgn(rv) == 0) continue;
                    if (lerr) throw *lerr;
                    total += *lv * ginv(i, j) * rv;
                }
            }
        }
    }
    return total;
}

Q wdvv_residual(const GWTable& t, const Class& a, const Insertions& xbar, const std::array<std::size_t, 4>& mu) {
    const auto& alg = t.alg;
    long total = 0;
    for (auto x : xbar) total += alg.degrees[x];
    for (auto m : mu) total += alg.degrees[m];
    long need = 2 * t.dim_n + 2 * t.lattice().chern(a) + 2 * static_cast<long>(xbar.size());
    if (total != need)
        throw std::invalid_argument("WDVV degree balance fails: " + std::to_string(total) + " != " + std::to_string(need));
    auto inv = inverse(alg.pairing);
    if (!inv) throw std::invalid_argument("pairing is degenerate");
    return half_sum(t, a, xbar, mu[0], mu[1], mu[2], mu[3], *inv) -
           half_sum(t, a, xbar, mu[0], mu[2], mu[1], mu[3], *inv);
}

Solved wdvv_solve(const GWTable& t, const Class& a, const Insertions& xbar, const std::array<std::size_t, 4>& mu,
                  const Class& ucls, const Insertions& uins) {
    auto eval = [&](const Q& x) {
        GWTable w = t;
        w.add(ucls, uins, x);
        return wdvv_residual(w, a, xbar, mu);
    };
    Q r0 = eval(0), r1 = eval(1);
    Q slope = r1 - r0;
    if (sgn(slope) == 0) throw std::runtime_error("relation does not determine " + t.describe(ucls, uins));
    Q x = -r0 / slope;
    if (eval(2) != r0 + 2 * slope) throw std::logic_error("WDVV residual is not affine in the unknown");
    if (sgn(eval(x)) != 0) throw std::logic_error("WDVV solve failed to zero the residual");
    return {ucls, uins, x};
}

// ---------------------------------------------------------------- Gathmann

std::vector<GathmannTerm> gathmann_step(const GWTable& t, long a, const Insertions& xbar) {
    const auto& lat = t.lattice();
    const auto& alg = t.alg;
    Class L = lat.names.at("L"), F = lat.names.at("F");
    std::size_t f = alg.at("f"), l = alg.at("l");
    for (auto x : xbar)
        if (alg.degrees[x] == 2) throw std::invalid_argument("Gathmann identity excludes degree-2 insertions");
    Class A = L;
    for (std::size_t i = 0; i < A.size(); ++i) A[i] += a * F[i];
    Class AF = class_add(A, F);
    long b = std::count(xbar.begin(), xbar.end(), f);
    std::vector<GathmannTerm> terms;
    terms.push_back({Q(a + b), A, xbar, true});
    // pairs of odd insertions, in written order
    for (std::size_t p = 0; p < xbar.size(); ++p)
        for (std::size_t q = p + 1; q < xbar.size(); ++q) {
            if (alg.degrees[xbar[p]] % 2 == 0 || alg.degrees[xbar[q]] % 2 == 0) continue;
            Q s = -alg.pair(alg.basis_vec(xbar[p]), alg.basis_vec(xbar[q]));
            if (sgn(s) == 0) continue;
            Insertions y;
            for (std::size_t r = 0; r < xbar.size(); ++r)
                if (r != p && r != q) y.push_back(xbar[r]);
            y.push_back(f);
            terms.push_back({s, A, y, false});
        }
    Insertions xf = xbar, xl = xbar;
    xf.push_back(f);
    xl.push_back(l);
    terms.push_back({Q(-6 * (7 + 2 * a)), AF, xf, false});
    terms.push_back({Q(-((a + 1) * (a + 1) - 6)), AF, xl, false});
    return terms;
}

Solved gathmann_solve(const GWTable& t, long a, const Insertions& xbar) {
    auto terms = gathmann_step(t, a, xbar);
    Q lhs_coef = 0, rest = 0;
    for (const auto& term : terms) {
        if (term.lhs) {
            lhs_coef = term.coefficient;
            continue;
        }
        Q v = km_reduce(t, term.cls, term.insertions);
        rest += term.coefficient * v;
    }
    if (sgn(lhs_coef) == 0) throw std::runtime_error("Gathmann identity does not determine the invariant (a+b = 0)");
    return {terms.front().cls, xbar, -rest / lhs_coef};
}

// ---------------------------------------------------------------- divisor checks

std::vector<DivisorInconsistency> divisor_consistency(const GWTable& t) {
    std::vector<DivisorInconsistency> out;
    const auto& alg = t.alg;
    for (const auto& [key, value] : t.entries) {
        const auto& [a, ins] = key;
        if (a == t.lattice().zero() || ins.size() != 3) continue;
        for (std::size_t p = 0; p < ins.size(); ++p) {
            std::size_t alpha = ins[p];
            if (alg.degrees[alpha] != 2 || !alg.divisor_eval.count(alpha)) continue;
            Insertions rest = ins;
            rest.erase(rest.begin() + static_cast<long>(p));
            Q av = alg.divisor_value(alpha, a);
            for (std::size_t beta = 0; beta < alg.size(); ++beta) {
                if (alg.degrees[beta] != 2 || !alg.divisor_eval.count(beta)) continue;
                Q bv = alg.divisor_value(beta, a);
                if (sgn(bv) == 0) continue;
                Insertions ext = rest;
                ext.push_back(beta);
                std::optional<Q> s = t.stored(a, ext);
                if (!s && t.vanishes_by_rule(a, ext)) s = Q(0);
                if (!s) continue;
                // removing an even class from the canonical list is sign-free
                Q via = av * (*s / bv);
                if (via != value) out.push_back({a, ins, value, alpha, beta, via});
            }
        }
    }
    return out;
}

} // namespace qm
