#include "qmassey/ainfinity.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qm {

namespace {

int parity(long x) { return static_cast<int>(((x % 2) + 2) % 2); }
Q sign(long x) { return parity(x) ? Q(-1) : Q(1); }

// Calls f on every tuple of length s over n letters.
template <class F>
void for_each_tuple(std::size_t n, std::size_t s, F f) {
    Tuple t(s, 0);
    if (s > 0 && n == 0) return;
    while (true) {
        f(static_cast<const Tuple&>(t));
        std::size_t k = s;
        while (k > 0) {
            --k;
            if (++t[k] < n) break;
            t[k] = 0;
            if (k == 0) return;
        }
        if (s == 0) return;
    }
}

int tuple_degree(const GradedModule& m, const Tuple& x) {
    int d = 0;
    for (auto i : x) d += m.degrees[i];
    return d;
}

// φ applied to (prefix, v, suffix) with basis prefix/suffix, accumulated into out.
void apply_slot(const MultiMap& phi, Tuple& t, std::size_t pos, const Vec& v, const Q& c, Vec& out) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (sgn(v[k]) == 0) continue;
        t[pos] = k;
        if (const Vec* r = phi.find(t)) axpy(out, c * v[k], *r);
    }
}

// Σ_i (-1)^{|ψ|'·✠_i} φ(x_r, ..., ψ(x_{i+j}, ..., x_{i+1}), x_i, ..., x_1)
// with an explicit sign exponent per insertion. Shared by Gerstenhaber and
// the A∞-equations.
Vec insertion_sum(const MultiMap& outer, const MultiMap& inner, const GradedModule& m, const Tuple& x,
                  long inner_reduced) {
    Vec out = zeros(m.size());
    std::size_t r = x.size(), j = inner.arity;
    if (j > r) return out;
    if (outer.arity != r - j + 1) return out;
    for (std::size_t i = 0; i + j <= r; ++i) {
        // written positions of x_{i+j} .. x_{i+1}
        std::size_t lo = r - i - j;
        Tuple sub(x.begin() + static_cast<long>(lo), x.begin() + static_cast<long>(lo + j));
        const Vec* v = inner.find(sub);
        if (!v) continue;
        Tuple t;
        t.reserve(outer.arity);
        t.insert(t.end(), x.begin(), x.begin() + static_cast<long>(lo));
        t.push_back(0);
        t.insert(t.end(), x.begin() + static_cast<long>(lo + j), x.end());
        Q c = sign(inner_reduced * maltese(m, x, i));
        apply_slot(outer, t, lo, *v, c, out);
    }
    return out;
}

} // namespace

GradedModule GradedModule::of(const GradedAlgebra& a) { return {a.labels, a.degrees}; }

std::string GradedModule::render(const Vec& x) const {
    std::string s;
    for (std::size_t i = 0; i < size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        Q q = x[i];
        bool neg = sgn(q) < 0;
        if (neg) q = -q;
        s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (q != 1) s += to_string(q) + "*";
        s += labels[i];
    }
    return s.empty() ? "0" : s;
}

int maltese(const GradedModule& m, const Tuple& x, std::size_t i) {
    int s = 0;
    for (std::size_t k = 0; k < i; ++k) s += m.degrees[x[x.size() - 1 - k]] - 1;
    return s;
}

const Vec* MultiMap::find(const Tuple& x) const {
    auto it = values.find(x);
    return it == values.end() ? nullptr : &it->second;
}

void MultiMap::add(const Tuple& x, const Vec& v, const Q& c) {
    if (sgn(c) == 0 || qm::is_zero(v)) return;
    auto it = values.find(x);
    if (it == values.end()) {
        values.emplace(x, scaled(v, c));
        return;
    }
    axpy(it->second, c, v);
    if (qm::is_zero(it->second)) values.erase(it);
}

bool MultiMap::is_zero() const { return values.empty(); }

Vec MultiMap::apply(const std::vector<Vec>& args, std::size_t dim) const {
    if (args.size() != arity) throw std::invalid_argument("arity mismatch in multilinear evaluation");
    Vec out = zeros(dim);
    for (const auto& [t, v] : values) {
        Q c = 1;
        for (std::size_t k = 0; k < arity && sgn(c) != 0; ++k) c *= args[k][t[k]];
        if (sgn(c) != 0) axpy(out, c, v);
    }
    return out;
}

MultiMap combine(const MultiMap& a, const Q& ca, const MultiMap& b, const Q& cb) {
    if (a.arity != b.arity) throw std::invalid_argument("combining cochains of different length");
    MultiMap r(a.arity, a.degree);
    for (const auto& [t, v] : a.values) r.add(t, v, ca);
    for (const auto& [t, v] : b.values) r.add(t, v, cb);
    return r;
}

bool operator==(const MultiMap& a, const MultiMap& b) { return a.arity == b.arity && a.values == b.values; }

MultiMap gerstenhaber(const MultiMap& phi, const MultiMap& psi, const GradedModule& m) {
    if (phi.arity == 0) return MultiMap(psi.arity == 0 ? 0 : psi.arity - 1, phi.degree + psi.degree);
    std::size_t r = phi.arity + psi.arity - 1;
    MultiMap out(r, phi.degree + psi.degree);
    for_each_tuple(m.size(), r, [&](const Tuple& x) {
        Vec v = insertion_sum(phi, psi, m, x, psi.reduced_degree());
        out.add(x, v);
    });
    return out;
}

MultiMap bracket(const MultiMap& phi, const MultiMap& psi, const GradedModule& m) {
    if (phi.arity == 0 && psi.arity == 0) return MultiMap(0, phi.degree + psi.degree);
    MultiMap a = gerstenhaber(phi, psi, m);
    MultiMap b = gerstenhaber(psi, phi, m);
    return combine(a, 1, b, -sign(phi.reduced_degree() * psi.reduced_degree()));
}

MultiMap packed_product(const GradedAlgebra& a) {
    MultiMap mu(2, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) mu.add({i, j}, a.product(i, j), sign(a.degrees[j]));
    return mu;
}

MultiMap packed_differential(const GradedModule& m, const Matrix& d) {
    MultiMap mu(1, 1);
    for (std::size_t i = 0; i < m.size(); ++i) mu.add({i}, d.col(i), sign(m.degrees[i]));
    return mu;
}

// ---------------------------------------------------------------- cochains

Vec CochainSpace::flatten(const MultiMap& mm) const {
    Vec v = zeros(dim());
    for (const auto& [t, val] : mm.values)
        for (std::size_t k = 0; k < val.size(); ++k) {
            if (sgn(val[k]) == 0) continue;
            auto it = index.find({t, k});
            if (it == index.end())
                throw std::invalid_argument("cochain entry outside bidegree (" + std::to_string(s) + "," + std::to_string(this->t) + ")");
            v[it->second] = val[k];
        }
    return v;
}

MultiMap CochainSpace::unflatten(const Vec& v) const {
    MultiMap mm(s, t);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        mm.add(coords[i].first, unit_vec(out_dim, coords[i].second), v[i]);
    }
    return mm;
}

CochainSpace cochain_space(const GradedModule& m, std::size_t s, int t) {
    CochainSpace cs;
    cs.s = s;
    cs.t = t;
    cs.out_dim = m.size();
    for_each_tuple(m.size(), s, [&](const Tuple& x) {
        int d = tuple_degree(m, x) + t;
        for (std::size_t k = 0; k < m.size(); ++k)
            if (m.degrees[k] == d) {
                cs.index[{x, k}] = cs.coords.size();
                cs.coords.push_back({x, k});
            }
    });
    return cs;
}

Matrix hochschild_matrix(const MultiMap& mu2, const GradedModule& m, std::size_t s, int t) {
    CochainSpace src = cochain_space(m, s, t), dst = cochain_space(m, s + 1, t);
    Matrix d(dst.dim(), src.dim());
    for (std::size_t c = 0; c < src.dim(); ++c) {
        MultiMap e = src.unflatten(unit_vec(src.dim(), c));
        Vec col = dst.flatten(bracket(mu2, e, m));
        for (std::size_t r = 0; r < dst.dim(); ++r) d(r, c) = col[r];
    }
    return d;
}

HHResult hochschild_cohomology(const GradedAlgebra& a, std::size_t s, int t) {
    GradedModule m = GradedModule::of(a);
    MultiMap mu2 = packed_product(a);
    CochainSpace cs = cochain_space(m, s, t);
    Matrix out = hochschild_matrix(mu2, m, s, t);
    std::vector<Vec> ker = out.rows ? nullspace(out) : std::vector<Vec>{};
    if (!out.rows)
        for (std::size_t i = 0; i < cs.dim(); ++i) ker.push_back(unit_vec(cs.dim(), i));
    std::vector<Vec> im;
    if (s > 0) {
        Matrix in = hochschild_matrix(mu2, m, s - 1, t);
        for (std::size_t c = 0; c < in.cols; ++c) im.push_back(in.col(c));
    }
    HHResult r;
    r.cocycles = ker.size();
    r.coboundaries = span_basis(im, cs.dim()).size();
    r.dim = r.cocycles - r.coboundaries;
    std::vector<Vec> span = im;
    std::size_t base = span_basis(span, cs.dim()).size();
    for (const auto& k : ker) {
        span.push_back(k);
        std::size_t now = span_basis(span, cs.dim()).size();
        if (now > base) {
            r.representatives.push_back(cs.unflatten(k));
            base = now;
        } else {
            span.pop_back();
        }
    }
    return r;
}

bool HHClass::is_zero() const { return span_membership(coboundaries, representative).member; }

bool HHClass::equals(const HHClass& o) const {
    if (representative.size() != o.representative.size()) return false;
    return span_membership(coboundaries, sub(representative, o.representative)).member;
}

HHClass hh_class(const GradedAlgebra& a, const MultiMap& cochain) {
    GradedModule m = GradedModule::of(a);
    MultiMap mu2 = packed_product(a);
    HHClass c;
    c.space = cochain_space(m, cochain.arity, cochain.degree);
    c.representative = c.space.flatten(cochain);
    c.cocycle = bracket(mu2, cochain, m).is_zero();
    if (cochain.arity > 0) {
        Matrix in = hochschild_matrix(mu2, m, cochain.arity - 1, cochain.degree);
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < in.cols; ++j) cols.push_back(in.col(j));
        c.coboundaries = span_basis(cols, c.space.dim());
    }
    return c;
}

MultiMap random_cochain(const GradedModule& m, std::size_t s, int t, std::mt19937_64& rng, int range) {
    CochainSpace cs = cochain_space(m, s, t);
    std::uniform_int_distribution<int> dist(-range, range);
    Vec v = zeros(cs.dim());
    for (auto& x : v) x = dist(rng);
    return cs.unflatten(v);
}

// ---------------------------------------------------------------- A∞

void AInfStructure::set(std::size_t d, const Class& a, MultiMap mm) {
    int want = 2 - static_cast<int>(d) - 2 * static_cast<int>(chern(a));
    mm.arity = d;
    mm.degree = want;
    for (const auto& [t, v] : mm.values) {
        if (t.size() != d) throw std::invalid_argument("mu entry of wrong arity");
        int out = tuple_degree(module, t) + want;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (sgn(v[k]) != 0 && module.degrees[k] != out) {
                std::string in;
                for (auto i : t) in += (in.empty() ? "" : ",") + module.labels[i];
                throw std::invalid_argument("mu^" + std::to_string(d) + " entry (" + in + ") has output " +
                                            module.labels[k] + " outside degree " + std::to_string(out));
            }
    }
    maps[{d, a}] = std::move(mm);
}

const MultiMap* AInfStructure::get(std::size_t d, const Class& a) const {
    auto it = maps.find({d, a});
    return it == maps.end() ? nullptr : &it->second;
}

std::vector<AInfResidual> ainfty_check(const AInfStructure& s, std::size_t max_reports) {
    std::vector<AInfResidual> out;
    std::vector<Class> classes;
    for (const auto& [k, v] : s.maps)
        if (std::find(classes.begin(), classes.end(), k.second) == classes.end()) classes.push_back(k.second);
    std::map<Class, std::vector<std::pair<Class, Class>>> splits;
    for (const auto& a : classes)
        for (const auto& b : classes) {
            Class sum = a.empty() ? b : class_add(a, b);
            if (s.truncation && s.lattice && ideal_contains(*s.lattice, *s.truncation, sum)) continue;
            splits[sum].push_back({a, b});
        }
    std::size_t n = s.module.size();
    for (const auto& [b, pairs] : splits)
        for (std::size_t len = 1; len <= s.arity_cap; ++len) {
            // skip lengths where no term can appear
            bool any = false;
            for (const auto& [a1, a2] : pairs)
                for (std::size_t m = 1; m <= len; ++m)
                    if (s.get(len - m + 1, a1) && s.get(m, a2)) any = true;
            if (!any) continue;
            for_each_tuple(n, len, [&](const Tuple& x) {
                if (out.size() >= max_reports) return;
                Vec res = zeros(n);
                for (const auto& [a1, a2] : pairs)
                    for (std::size_t m = 1; m <= len; ++m) {
                        const MultiMap* outer = s.get(len - m + 1, a1);
                        const MultiMap* inner = s.get(m, a2);
                        if (!outer || !inner) continue;
                        // A∞ sign is (-1)^{✠_n}: reduced degree 1 for every μ
                        res = add(res, insertion_sum(*outer, *inner, s.module, x, 1));
                    }
                if (!qm::is_zero(res)) out.push_back({b, len, x, res});
            });
        }
    return out;
}

AInfStructure dg_structure(const GradedAlgebra& a, const std::optional<Matrix>& d) {
    AInfStructure s;
    s.module = GradedModule::of(a);
    s.arity_cap = 3;
    s.set(2, {}, packed_product(a));
    if (d && !d->is_zero()) s.set(1, {}, packed_differential(s.module, *d));
    return s;
}

AInfStructure parse_ainf(const std::string& text) {
    std::istringstream in(text);
    std::string line, alg_text;
    std::vector<std::string> mu_lines;
    while (std::getline(in, line)) {
        auto p = line.find_first_not_of(" \t");
        if (p != std::string::npos && line.compare(p, 3, "mu ") == 0)
            mu_lines.push_back(line.substr(p));
        else
            alg_text += line + "\n";
    }
    GradedAlgebra a = parse_algebra(alg_text);
    AInfStructure s;
    s.module = GradedModule::of(a);
    s.lattice = a.lattice;
    std::map<std::pair<std::size_t, Class>, MultiMap> pending;
    for (const auto& l : mu_lines) {
        // mu <d> <class> (<labels>) = <lincomb>
        auto open = l.find('('), close = l.find(')'), eq = l.find('=', close == std::string::npos ? 0 : close);
        if (open == std::string::npos || close == std::string::npos || eq == std::string::npos)
            throw std::invalid_argument("malformed mu line: " + l);
        std::istringstream head(l.substr(3, open - 3));
        std::size_t d;
        std::string cls_text;
        head >> d >> cls_text;
        Class cls;
        if (s.lattice)
            cls = s.lattice->parse_class(cls_text);
        else if (cls_text != "0")
            throw std::invalid_argument("energy class without a lattice: " + l);
        Tuple t;
        std::string inside = l.substr(open + 1, close - open - 1), tok;
        std::istringstream toks(inside);
        while (std::getline(toks, tok, ',')) {
            tok.erase(0, tok.find_first_not_of(" \t"));
            tok.erase(tok.find_last_not_of(" \t") + 1);
            if (!tok.empty()) t.push_back(a.at(tok));
        }
        if (t.size() != d) throw std::invalid_argument("arity mismatch: " + l);
        auto& mm = pending[{d, cls}];
        mm.arity = d;
        mm.add(t, a.element(l.substr(eq + 1)));
    }
    for (auto& [k, mm] : pending) s.set(k.first, k.second, mm);
    return s;
}

AInfStructure parse_dga(const std::string& text, GradedAlgebra* algebra) {
    std::istringstream in(text);
    std::string line, alg_text;
    std::vector<std::string> d_lines, mu_lines;
    while (std::getline(in, line)) {
        auto p = line.find_first_not_of(" \t");
        if (p != std::string::npos && line.compare(p, 2, "d ") == 0)
            d_lines.push_back(line.substr(p + 2));
        else if (p != std::string::npos && line.compare(p, 3, "mu ") == 0)
            mu_lines.push_back(line.substr(p));
        else
            alg_text += line + "\n";
    }
    GradedAlgebra a = parse_algebra(alg_text);
    std::size_t n = a.size();
    Matrix d(n, n);
    for (const auto& l : d_lines) {
        auto eq = l.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed d line: " + l);
        std::string x = l.substr(0, eq);
        x.erase(0, x.find_first_not_of(" \t"));
        x.erase(x.find_last_not_of(" \t") + 1);
        std::size_t col = a.at(x);
        Vec v = a.element(l.substr(eq + 1));
        for (std::size_t r = 0; r < n; ++r) {
            if (sgn(v[r]) != 0 && a.degrees[r] != a.degrees[col] + 1)
                throw std::invalid_argument("differential of " + x + " is not of degree +1");
            d(r, col) = v[r];
        }
    }
    if (!(d * d).is_zero()) throw std::invalid_argument("differential does not square to zero");
    AInfStructure s = dg_structure(a, d);
    s.arity_cap = 3;
    std::map<std::size_t, MultiMap> higher;
    for (const auto& l : mu_lines) {
        auto open = l.find('('), close = l.find(')'), eq = l.find('=', close == std::string::npos ? 0 : close);
        if (open == std::string::npos || close == std::string::npos || eq == std::string::npos)
            throw std::invalid_argument("malformed mu line: " + l);
        std::istringstream head(l.substr(3, open - 3));
        std::size_t ar;
        std::string cls;
        head >> ar >> cls;
        if (ar < 3 || cls != "0") throw std::invalid_argument("only class 0 maps of arity >= 3: " + l);
        Tuple t;
        std::string inside = l.substr(open + 1, close - open - 1), tok;
        std::istringstream toks(inside);
        while (std::getline(toks, tok, ',')) {
            tok.erase(0, tok.find_first_not_of(" \t"));
            tok.erase(tok.find_last_not_of(" \t") + 1);
            if (!tok.empty()) t.push_back(a.at(tok));
        }
        if (t.size() != ar) throw std::invalid_argument("arity mismatch: " + l);
        auto& mm = higher[ar];
        mm.arity = ar;
        mm.add(t, a.element(l.substr(eq + 1)));
        s.arity_cap = std::max(s.arity_cap, ar + 1);
    }
    for (auto& [ar, mm] : higher) s.set(ar, {}, mm);
    if (algebra) *algebra = a;
    return s;
}

MultiMap gauge_mu3(const MultiMap& mu3, const MultiMap& mu2, const MultiMap& g2, const GradedModule& m) {
    std::size_t n = m.size();
    MultiMap out(3, mu3.degree);
    if (mu3.arity == 3) out = mu3;
    out.arity = 3;
    out.degree = -1;
    auto basis = [&](std::size_t i) { return unit_vec(n, i); };
    for_each_tuple(n, 3, [&](const Tuple& x) {
        std::size_t a3 = x[0], a2 = x[1], a1 = x[2];
        Vec v = zeros(n);
        v = add(v, g2.apply({basis(a3), mu2.apply({basis(a2), basis(a1)}, n)}, n));
        axpy(v, sign(m.degrees[a1] - 1), g2.apply({mu2.apply({basis(a3), basis(a2)}, n), basis(a1)}, n));
        v = sub(v, mu2.apply({basis(a3), g2.apply({basis(a2), basis(a1)}, n)}, n));
        v = sub(v, mu2.apply({g2.apply({basis(a3), basis(a2)}, n), basis(a1)}, n));
        out.add(x, v);
    });
    return out;
}

HHClass universal_massey(const AInfStructure& s, const GradedAlgebra& a) {
    const MultiMap* mu1 = s.get(1);
    if (mu1 && !mu1->is_zero()) throw std::invalid_argument("universal Massey product needs mu^1 = 0");
    const MultiMap* mu2 = s.get(2);
    if (!mu2 || !(*mu2 == packed_product(a)))
        throw std::invalid_argument("mu^2 does not agree with the product of the algebra");
    const MultiMap* mu3 = s.get(3);
    MultiMap m3 = mu3 ? *mu3 : MultiMap(3, -1);
    m3.degree = -1;
    return hh_class(a, m3);
}

// ---------------------------------------------------------------- transfer

Matrix differential_matrix(const AInfStructure& b) {
    std::size_t n = b.module.size();
    Matrix d(n, n);
    if (const MultiMap* mu1 = b.get(1))
        for (const auto& [t, v] : mu1->values)
            for (std::size_t r = 0; r < n; ++r) d(r, t[0]) = v[r];
    return d;
}

std::vector<std::string> check_homotopy_data(const AInfStructure& b, const GradedModule& a, const HomotopyData& hd) {
    std::vector<std::string> out;
    Matrix d = differential_matrix(b);
    std::size_t nb = b.module.size(), na = a.size();
    if (hd.lambda.rows != nb || hd.lambda.cols != na || hd.pi.rows != na || hd.pi.cols != nb || hd.h.rows != nb ||
        hd.h.cols != nb) {
        out.push_back("homotopy data has wrong shape");
        return out;
    }
    if (!(hd.pi * d).is_zero()) out.push_back("pi mu1 != 0");
    if (!(d * hd.lambda).is_zero()) out.push_back("mu1 lambda != 0");
    if (!(hd.pi * hd.lambda == Matrix::identity(na))) out.push_back("pi lambda != id");
    Matrix lhs = hd.lambda * hd.pi - Matrix::identity(nb);
    Matrix rhs = d * hd.h;
    Matrix hd_ = hd.h * d;
    for (std::size_t i = 0; i < rhs.a.size(); ++i) rhs.a[i] += hd_.a[i];
    if (!(lhs == rhs)) out.push_back("lambda pi - id != mu1 h + h mu1");
    // degrees: λ, π degree 0, h degree -1
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            if (sgn(hd.h(i, j)) != 0 && b.module.degrees[i] != b.module.degrees[j] - 1)
                out.push_back("h is not of degree -1 at " + b.module.labels[j]);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j)
            if (sgn(hd.lambda(i, j)) != 0 && b.module.degrees[i] != a.degrees[j])
                out.push_back("lambda is not of degree 0 at " + a.labels[j]);
    return out;
}

Transfer standard_homotopy(const AInfStructure& b) {
    Matrix d = differential_matrix(b);
    if (!(d * d).is_zero()) throw std::invalid_argument("mu1 does not square to zero");
    std::size_t n = b.module.size();
    std::vector<Vec> cocycles = nullspace(d);
    // complement C of the cocycles, chosen among basis vectors
    std::vector<Vec> span = cocycles, comp;
    std::size_t r = span_basis(span, n).size();
    for (std::size_t i = 0; i < n && r < n; ++i) {
        span.push_back(unit_vec(n, i));
        std::size_t now = span_basis(span, n).size();
        if (now > r) {
            comp.push_back(unit_vec(n, i));
            r = now;
        } else {
            span.pop_back();
        }
    }
    std::vector<Vec> bounds;
    for (const auto& c : comp) bounds.push_back(d.apply(c));
    // harmonic part H: cocycles not in the boundaries, preferring basis-aligned choices
    std::vector<Vec> harm;
    span = bounds;
    r = span_basis(span, n).size();
    std::vector<Vec> candidates;
    for (std::size_t i = 0; i < n; ++i)
        if (d.apply(unit_vec(n, i)) == zeros(n)) candidates.push_back(unit_vec(n, i));
    for (const auto& z : cocycles) candidates.push_back(z);
    for (const auto& z : candidates) {
        span.push_back(z);
        std::size_t now = span_basis(span, n).size();
        if (now > r) {
            harm.push_back(z);
            r = now;
        } else {
            span.pop_back();
        }
    }
    // order H by degree then first support index
    auto deg_of = [&](const Vec& v) {
        for (std::size_t i = 0; i < n; ++i)
            if (sgn(v[i]) != 0) return b.module.degrees[i];
        return 0;
    };
    std::stable_sort(harm.begin(), harm.end(), [&](const Vec& x, const Vec& y) { return deg_of(x) < deg_of(y); });

    Transfer t;
    std::size_t na = harm.size(), nc = comp.size();
    for (std::size_t k = 0; k < na; ++k) {
        const Vec& v = harm[k];
        std::size_t support = 0, first = n;
        for (std::size_t i = 0; i < n; ++i)
            if (sgn(v[i]) != 0) {
                ++support;
                if (first == n) first = i;
            }
        std::string label = (support == 1 && v[first] == 1) ? b.module.labels[first] : "[" + std::to_string(k) + "]";
        t.cohomology.labels.push_back(label);
        t.cohomology.degrees.push_back(deg_of(v));
    }
    // coordinates in the basis (H, B, C)
    std::vector<Vec> full = harm;
    full.insert(full.end(), bounds.begin(), bounds.end());
    full.insert(full.end(), comp.begin(), comp.end());
    auto change = inverse(Matrix::from_columns(full, n));
    if (!change) throw std::logic_error("splitting of the complex is not a basis");
    t.data.lambda = Matrix::from_columns(harm, n);
    t.data.pi = Matrix(na, n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < n; ++j) t.data.pi(i, j) = (*change)(i, j);
    // h(μ¹ c_k) = -c_k, zero on H and C
    Matrix hb(n, n); // in (H,B,C) coordinates
    for (std::size_t k = 0; k < nc; ++k) hb(na + nc + k, na + k) = -1;
    Matrix basis = Matrix::from_columns(full, n);
    t.data.h = basis * hb * (*change);
    return t;
}

MultiMap homotopy_transfer_mu3(const AInfStructure& b, const GradedModule& a, const HomotopyData& hd) {
    auto bad = check_homotopy_data(b, a, hd);
    if (!bad.empty()) throw std::invalid_argument("invalid homotopy data: " + bad.front());
    std::size_t nb = b.module.size(), na = a.size();
    const MultiMap* mu2 = b.get(2);
    const MultiMap* mu3 = b.get(3);
    MultiMap out(3, -1);
    for_each_tuple(na, 3, [&](const Tuple& x) {
        Vec b3 = hd.lambda.col(x[0]), b2 = hd.lambda.col(x[1]), b1 = hd.lambda.col(x[2]);
        Vec v = zeros(nb);
        if (mu3) v = add(v, mu3->apply({b3, b2, b1}, nb));
        if (mu2) {
            v = add(v, mu2->apply({hd.h.apply(mu2->apply({b3, b2}, nb)), b1}, nb));
            v = add(v, mu2->apply({b3, hd.h.apply(mu2->apply({b2, b1}, nb))}, nb));
        }
        out.add(x, hd.pi.apply(v));
    });
    return out;
}

GradedAlgebra transferred_algebra(const AInfStructure& b, const GradedModule& a, const HomotopyData& hd) {
    std::size_t nb = b.module.size();
    GradedAlgebra h;
    for (std::size_t i = 0; i < a.size(); ++i) h.add_basis(a.labels[i], a.degrees[i]);
    const MultiMap* mu2 = b.get(2);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            Vec v = zeros(a.size());
            if (mu2) v = hd.pi.apply(mu2->apply({hd.lambda.col(i), hd.lambda.col(j)}, nb));
            h.set_product(i, j, scaled(v, sign(a.degrees[j])));
        }
    for (std::size_t u = 0; u < h.size(); ++u) {
        bool unit = true;
        for (std::size_t x = 0; x < h.size() && unit; ++x)
            unit = h.product(u, x) == h.basis_vec(x) && h.product(x, u) == h.basis_vec(x);
        if (unit) {
            h.unit = u;
            h.has_unit = true;
            break;
        }
    }
    return h;
}

GradedAlgebra cohomology_algebra(const AInfStructure& b) {
    Transfer t = standard_homotopy(b);
    return transferred_algebra(b, t.cohomology, t.data);
}

} // namespace qm
