#include "qmassey/massey.hpp"

#include <memory>
#include <sstream>

namespace qm {

namespace {

Q sign(long x) { return (x % 2 + 2) % 2 ? Q(-1) : Q(1); }

std::optional<int> degree_in(const GradedModule& m, const Vec& v) {
    std::optional<int> d;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        if (d && *d != m.degrees[i]) return std::nullopt;
        d = m.degrees[i];
    }
    return d;
}

std::optional<int> matrix_degree(const GradedModule& m, const MatrixElement& x) {
    std::optional<int> d;
    for (const auto& e : x.e) {
        auto de = degree_in(m, e);
        if (!de) continue;
        if (d && *d != *de) throw std::invalid_argument("matrix entries are not of a common degree");
        d = de;
    }
    return d;
}

// μ¹ restricted to one degree, kernel embedded back into the module
std::vector<Vec> cocycles_of_degree(const GradedModule& m, const Matrix& d, int deg) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.degrees[i] == deg) cols.push_back(i);
    std::vector<Vec> out;
    if (cols.empty()) return out;
    Matrix sub(d.rows, cols.size());
    for (std::size_t r = 0; r < d.rows; ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) sub(r, c) = d(r, cols[c]);
    for (const auto& k : nullspace(sub)) {
        Vec v = zeros(m.size());
        for (std::size_t c = 0; c < cols.size(); ++c) v[cols[c]] = k[c];
        out.push_back(v);
    }
    return out;
}

std::string entry_name(std::size_t n, std::size_t e) {
    return "(" + std::to_string(e / n + 1) + "," + std::to_string(e % n + 1) + ")";
}

} // namespace

std::vector<Vec> MasseyCoset::basis() const {
    std::vector<Vec> g;
    for (const auto& x : generators) g.push_back(x.value);
    return span_basis(g, representative.size());
}

std::string render_matrix(const MatrixElement& x, const GradedModule& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.n; ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < x.n; ++j) s += (j ? ", " : "") + m.render(x(i, j));
    }
    return s + "]";
}

std::string MasseyCoset::render(const GradedModule& m) const {
    if (n == 0) return m.render(representative);
    return render_matrix(MatrixElement::unflatten(representative, n, dim), m);
}

Certificate coset_nontrivial(const MasseyCoset& c, const GradedModule& m) {
    std::vector<Vec> gens;
    for (const auto& g : c.generators) gens.push_back(g.value);
    Membership mem = span_membership(gens, c.representative);
    Certificate cert;
    cert.nontrivial = !mem.member;
    std::ostringstream os;
    auto coord = [&](std::size_t k) {
        if (c.n == 0) return m.labels[k];
        return m.labels[k % c.dim] + " at " + entry_name(c.n, k / c.dim);
    };
    if (mem.member) {
        cert.witness = mem.coefficients;
        os << "representative lies in the ambiguity span:";
        bool any = false;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (sgn(mem.coefficients[i]) != 0) {
                os << " " << (any ? "+ " : "") << to_string(mem.coefficients[i]) << "*[" << c.generators[i].provenance
                   << "]";
                any = true;
            }
        if (!any) os << " zero representative";
    } else {
        cert.functional = mem.functional;
        os << "functional vanishing on every generator:";
        bool first = true;
        for (std::size_t k = 0; k < mem.functional.size(); ++k)
            if (sgn(mem.functional[k]) != 0) {
                os << (first ? " " : " + ") << to_string(mem.functional[k]) << "*coef(" << coord(k) << ")";
                first = false;
            }
        os << "; its value on the representative is " << to_string(dot(mem.functional, c.representative));
    }
    cert.text = os.str();
    return cert;
}

bool same_coset(const MasseyCoset& a, const MasseyCoset& b) {
    if (a.representative.size() != b.representative.size()) return false;
    std::vector<Vec> gens;
    for (const auto& g : a.generators) gens.push_back(g.value);
    for (const auto& g : b.generators) gens.push_back(g.value);
    if (span_basis(gens, a.representative.size()).size() != a.basis().size() ||
        a.basis().size() != b.basis().size())
        return false;
    return span_membership(gens, sub(a.representative, b.representative)).member;
}

// ---------------------------------------------------------------- classical

ChoiceFamily classical_choice_family(const AInfStructure& b, const Transfer& t, const Vec& a3, const Vec& a2,
                                     const Vec& a1) {
    ChoiceFamily f;
    Matrix d = differential_matrix(b);
    int p = degree_in(t.cohomology, a3).value_or(0), q = degree_in(t.cohomology, a2).value_or(0),
        r = degree_in(t.cohomology, a1).value_or(0);
    for (int deg : {p, q, r}) {
        std::vector<Vec> dirs;
        for (std::size_t i = 0; i < b.module.size(); ++i)
            if (b.module.degrees[i] == deg - 1) dirs.push_back(unit_vec(b.module.size(), i));
        f.b_dirs.push_back(dirs);
    }
    f.h1_dirs = cocycles_of_degree(b.module, d, q + r - 1);
    f.h2_dirs = cocycles_of_degree(b.module, d, p + q - 1);
    return f;
}

MasseyCoset classical_massey(const AInfStructure& b, const Transfer& t, const Vec& a3, const Vec& a2, const Vec& a1,
                             const ClassicalChoice& choice) {
    const GradedModule& am = t.cohomology;
    const HomotopyData& hd = t.data;
    std::size_t nb = b.module.size(), na = am.size();
    const MultiMap* mu2 = b.get(2);
    const MultiMap* mu3 = b.get(3);
    if (!mu2) throw std::invalid_argument("structure has no mu^2");
    auto m2 = [&](const Vec& x, const Vec& y) { return mu2->apply({x, y}, nb); };
    auto m2a = [&](const Vec& x, const Vec& y) { return hd.pi.apply(m2(hd.lambda.apply(x), hd.lambda.apply(y))); };
    if (!is_zero(m2a(a3, a2)))
        throw UndefinedProduct("vanishing condition fails: mu2(a3,a2) = " + am.render(m2a(a3, a2)));
    if (!is_zero(m2a(a2, a1)))
        throw UndefinedProduct("vanishing condition fails: mu2(a2,a1) = " + am.render(m2a(a2, a1)));

    Matrix d = differential_matrix(b);
    std::vector<Vec> bs;
    const Vec* as[3] = {&a3, &a2, &a1};
    for (int k = 0; k < 3; ++k) {
        Vec v = hd.lambda.apply(*as[k]);
        if (static_cast<std::size_t>(k) < choice.b_shift.size() && !choice.b_shift[k].empty())
            v = add(v, d.apply(choice.b_shift[k]));
        bs.push_back(v);
    }
    const Vec &b3 = bs[0], &b2 = bs[1], &b1 = bs[2];
    auto bound = [&](const Vec& target, const char* which) {
        auto h = solve(d, target);
        if (!h) throw UndefinedProduct(std::string("no bounding cochain for ") + which);
        return *h;
    };
    Vec h1 = bound(m2(b2, b1), "mu2(b2,b1)");
    Vec h2 = bound(m2(b3, b2), "mu2(b3,b2)");
    if (!choice.h1_shift.empty()) {
        if (!is_zero(d.apply(choice.h1_shift))) throw std::invalid_argument("h1 shift is not a cocycle");
        h1 = add(h1, choice.h1_shift);
    }
    if (!choice.h2_shift.empty()) {
        if (!is_zero(d.apply(choice.h2_shift))) throw std::invalid_argument("h2 shift is not a cocycle");
        h2 = add(h2, choice.h2_shift);
    }
    Vec c = zeros(nb);
    if (mu3) c = mu3->apply({b3, b2, b1}, nb);
    c = sub(c, m2(h2, b1));
    c = sub(c, m2(b3, h1));
    if (!is_zero(d.apply(c))) throw std::logic_error("Massey cochain is not closed");
    int q = degree_in(am, a2).value_or(0);
    MasseyCoset out;
    out.dim = na;
    out.representative = scaled(hd.pi.apply(c), sign(q));
    int p = degree_in(am, a3).value_or(0), r = degree_in(am, a1).value_or(0);
    int target = p + q + r - 1;
    for (std::size_t e = 0; e < na; ++e) {
        Vec ev = unit_vec(na, e);
        Vec left = m2a(a3, ev), right = m2a(ev, a1);
        if (!is_zero(left) && degree_in(am, left) == target) out.generators.push_back({"a3*" + am.labels[e], left});
        if (!is_zero(right) && degree_in(am, right) == target)
            out.generators.push_back({am.labels[e] + "*a1", right});
    }
    return out;
}

// ---------------------------------------------------------------- matrix systems

MatrixSystem y_main_system(const TorusAlgebra& ta, const QuantumRing& ring, Convention c, const Class& pivot) {
    MatrixSystem s;
    s.module = GradedModule::of(ta.alg);
    const HomologyLattice& lat = *ta.base->lattice;
    for (const auto& cls : ring.classes) {
        EnergyProduct p;
        p.name = lat.class_name(cls);
        p.c1 = lat.chern(cls);
        p.product = [&ta, &ring, cls](const Vec& x, const Vec& z) { return torus_product(ta, ring, cls, x, z); };
        s.products.push_back(p);
    }
    auto table = std::make_shared<MainTermTable>(mu3_main_table(ta, c));
    s.mu3 = [&ta, table](const Vec& x3, const Vec& x2, const Vec& x1) { return mu3_apply(ta, *table, x3, x2, x1); };
    s.pivot = lat.class_name(pivot);
    s.pivot_c1 = lat.chern(pivot);
    s.convention = convention_name(c);
    return s;
}

GradedAlgebra surface_algebra(int genus) {
    GradedAlgebra a;
    a.add_basis("m+", 0);
    for (int i = 1; i <= genus; ++i) a.add_basis("a" + std::to_string(i), 1);
    for (int i = 1; i <= genus; ++i) a.add_basis("b" + std::to_string(i), 1);
    a.add_basis("m-", 2);
    std::size_t n = a.size(), top = n - 1;
    for (std::size_t x = 0; x < n; ++x) {
        a.set_product(0, x, a.basis_vec(x));
        a.set_product(x, 0, a.basis_vec(x));
    }
    for (int i = 1; i <= genus; ++i) {
        std::size_t ai = a.at("a" + std::to_string(i)), bi = a.at("b" + std::to_string(i));
        a.set_product(ai, bi, a.basis_vec(top));
        a.set_product(bi, ai, scaled(a.basis_vec(top), Q(-1)));
    }
    a.unit = 0;
    a.has_unit = true;
    a.pairing = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.pairing(i, j) = a.product(i, j)[top];
    a.poincare = true;
    return a;
}

MatrixSystem surface_system(const TorusAlgebra& ta, Convention c) {
    MatrixSystem s;
    s.module = GradedModule::of(ta.alg);
    s.products.push_back({"0", 0, [&ta](const Vec& x, const Vec& z) { return ta.alg.mul(x, z); }});
    auto table = std::make_shared<MainTermTable>(mu3_main_table(ta, c, "a", "b"));
    s.mu3 = [&ta, table](const Vec& x3, const Vec& x2, const Vec& x1) { return mu3_apply(ta, *table, x3, x2, x1); };
    s.pivot = "0";
    s.convention = convention_name(c);
    return s;
}

MatrixInputs parse_matrix_inputs(const TorusAlgebra& ta, const std::string& text) {
    MatrixInputs in;
    std::istringstream is(text);
    std::string line;
    int seen = 0;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string name = line.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        std::vector<std::vector<std::string>> rows;
        std::istringstream rs(line.substr(eq + 1));
        std::string row;
        while (std::getline(rs, row, ';')) {
            std::vector<std::string> cells;
            std::istringstream cs(row);
            std::string cell;
            while (std::getline(cs, cell, ',')) cells.push_back(cell);
            rows.push_back(cells);
        }
        std::size_t n = rows.size();
        MatrixElement m(n, ta.alg.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw std::invalid_argument("matrix " + name + " is not square");
            for (std::size_t j = 0; j < n; ++j) m(i, j) = ta.alg.element(rows[i][j]);
        }
        if (name == "X3")
            in.x3 = m;
        else if (name == "X2")
            in.x2 = m;
        else if (name == "X1")
            in.x1 = m;
        else
            throw std::invalid_argument("unknown matrix name " + name);
        ++seen;
    }
    if (seen != 3 || in.x3.n != in.x2.n || in.x2.n != in.x1.n)
        throw std::invalid_argument("inputs need X3, X2, X1 of one size");
    return in;
}

VanishingReport vanishing_report(const MatrixSystem& s, const MatrixInputs& x) {
    VanishingReport rep;
    std::size_t n = x.x3.n, dim = s.module.size();
    std::vector<bool> vanishes;
    for (const auto& p : s.products) {
        bool z = true;
        for (std::size_t a = 0; a < dim && z; ++a)
            for (std::size_t b = 0; b < dim && z; ++b) z = is_zero(p.product(unit_vec(dim, a), unit_vec(dim, b)));
        vanishes.push_back(z);
    }
    for (int which = 0; which < 2; ++which)
        for (std::size_t pi = 0; pi < s.products.size(); ++pi) {
            const auto& p = s.products[pi];
            const MatrixElement& l = which == 0 ? x.x3 : x.x2;
            const MatrixElement& r = which == 0 ? x.x2 : x.x1;
            rep.displays.push_back({which == 0 ? "X3*X2" : "X2*X1", p.name, matrix_mul(l, r, p.product), vanishes[pi]});
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    VanishingEntry e;
                    e.cls = p.name;
                    e.pair = which == 0 ? "X3*X2" : "X2*X1";
                    e.i = i;
                    e.j = j;
                    e.total = zeros(dim);
                    for (std::size_t k = 0; k < n; ++k) {
                        if (is_zero(l(i, k)) || is_zero(r(k, j))) continue;
                        Vec v = p.product(l(i, k), r(k, j));
                        if (is_zero(v)) continue;
                        e.terms.push_back({k, v});
                        e.total = add(e.total, v);
                    }
                    if (!is_zero(e.total)) {
                        rep.all_zero = false;
                        rep.failures.push_back(e.pair + " at class " + e.cls + " entry " + entry_name(n, i * n + j) +
                                               " = " + s.module.render(e.total));
                    }
                    if (!e.terms.empty()) rep.entries.push_back(e);
                }
        }
    return rep;
}

std::vector<AmbiguityGenerator> ambiguity_generators(const MatrixSystem& s, const MatrixInputs& x, int degree) {
    std::vector<AmbiguityGenerator> out;
    std::size_t n = x.x3.n, dim = s.module.size();
    int p = matrix_degree(s.module, x.x3).value_or(0), r = matrix_degree(s.module, x.x1).value_or(0);
    for (const auto& prod : s.products)
        for (int side = 0; side < 2; ++side) {
            int want = degree - (side == 0 ? p : r) + 2 * static_cast<int>(prod.c1);
            for (std::size_t w = 0; w < dim; ++w) {
                if (s.module.degrees[w] != want) continue;
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        MatrixElement z(n, dim);
                        z(k, l) = unit_vec(dim, w);
                        MatrixElement g = side == 0 ? matrix_mul(x.x3, z, prod.product) : matrix_mul(z, x.x1, prod.product);
                        if (g.is_zero()) continue;
                        std::string e = "E" + std::to_string(k + 1) + std::to_string(l + 1) + "(" + s.module.labels[w] + ")";
                        std::string prov = side == 0 ? "X3 *_" + prod.name + " " + e : e + " *_" + prod.name + " X1";
                        out.push_back({prov, g.flatten()});
                    }
            }
        }
    return out;
}

MatrixMasseyResult quantum_matrix_massey(const MatrixSystem& s, const MatrixInputs& x) {
    MatrixMasseyResult res;
    res.vanishing = vanishing_report(s, x);
    if (!res.vanishing.all_zero) throw UndefinedProduct("vanishing condition fails: " + res.vanishing.failures.front());
    int p = matrix_degree(s.module, x.x3).value_or(0), q = matrix_degree(s.module, x.x2).value_or(0),
        r = matrix_degree(s.module, x.x1).value_or(0);
    res.degree = p + q + r - 1 - 2 * static_cast<int>(s.pivot_c1);
    // minimal model: the bounding cochains vanish, so only μ̃³ at the pivot remains
    res.theta = matrix_mu3(x.x3, x.x2, x.x1, s.mu3);
    res.coset.n = x.x3.n;
    res.coset.dim = s.module.size();
    res.coset.representative = res.theta.flatten();
    res.coset.generators = ambiguity_generators(s, x, res.degree);
    return res;
}

MatrixElement theta_as_displayed(const MatrixSystem& s, const MatrixInputs& x) {
    std::size_t n = x.x3.n, dim = s.module.size();
    MatrixElement out(n, dim);
    for (std::size_t i3 = 0; i3 < n; ++i3)
        for (std::size_t i0 = 0; i0 < n; ++i0)
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t i1 = 0; i1 < n; ++i1)
                    out(i3, i0) = add(out(i3, i0), s.mu3(x.x3(i3, 0), x.x2(i2, i1), x.x1(i1, i0)));
    return out;
}

std::vector<Vec> t_part_generators(const std::vector<AmbiguityGenerator>& gens, const GradedModule& m, std::size_t n) {
    std::vector<Vec> out;
    std::size_t dim = m.size();
    for (const auto& g : gens) {
        bool t_only = true;
        for (std::size_t k = 0; k < g.value.size() && t_only; ++k)
            if (sgn(g.value[k]) != 0 && m.labels[k % dim].rfind("t.", 0) != 0) t_only = false;
        if (t_only) out.push_back(g.value);
    }
    (void)n;
    return out;
}

PatternMatch compare_span(const std::vector<Vec>& computed, const std::vector<Vec>& pattern) {
    PatternMatch pm;
    std::size_t len = !computed.empty() ? computed[0].size() : (!pattern.empty() ? pattern[0].size() : 0);
    pm.computed_rank = span_basis(computed, len).size();
    pm.pattern_rank = span_basis(pattern, len).size();
    std::vector<Vec> all = computed;
    all.insert(all.end(), pattern.begin(), pattern.end());
    pm.joint_rank = span_basis(all, len).size();
    return pm;
}

std::vector<Vec> row_and_linked_patterns(const GradedModule& m, const std::string& r1, const std::string& r2,
                                         const std::string& l1, const std::string& l2) {
    std::size_t dim = m.size(), n = 2;
    auto idx = [&](const std::string& s) {
        for (std::size_t i = 0; i < dim; ++i)
            if (m.labels[i] == s) return i;
        throw std::invalid_argument("unknown label " + s);
    };
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * dim + k; };
    std::vector<Vec> out;
    for (std::size_t col = 0; col < n; ++col)
        for (const auto& r : {r1, r2}) {
            Vec v = zeros(n * n * dim);
            v[at(0, col, idx(r))] = 1;
            out.push_back(v);
        }
    for (std::size_t row = 0; row < n; ++row) {
        Vec v = zeros(n * n * dim);
        v[at(row, 0, idx(l1))] = 1;
        v[at(row, 1, idx(l2))] = 1;
        out.push_back(v);
    }
    return out;
}

} // namespace qm
