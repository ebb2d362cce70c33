#include "qmassey/y.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#ifndef QMASSEY_DATA_DIR
#define QMASSEY_DATA_DIR "data"
#endif

namespace qm {

std::string data_dir() {
    if (const char* env = std::getenv("QMASSEY_DATA"); env && *env) return env;
    return QMASSEY_DATA_DIR;
}

std::string data_path(const std::string& name) { return data_dir() + "/" + name; }

YData build_y_from(const std::string& alg_path, const std::string& gw_path) {
    YData y;
    y.alg = load_algebra(alg_path);
    y.table = load_gw_table(y.alg, gw_path);
    return y;
}

YData build_y() { return build_y_from(data_path("y.alg"), data_path("y_tables.gw")); }

ChernData chern_data(const GradedAlgebra& y) {
    return {y.element("4*h + u"), y.element("12*l + 24*f")};
}

bool cone_contains(const HomologyLattice& lat, const Class& a) { return lat.is_effective(a); }

// ---------------------------------------------------------------- printed tables

std::vector<StarCell> parse_star_tables(const GradedAlgebra& alg, const std::string& text) {
    std::vector<StarCell> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string kw, cls, x, y, eq;
        if (!(ss >> kw)) continue;
        if (kw != "star" || !(ss >> cls >> x >> y >> eq) || eq != "=")
            throw std::invalid_argument("bad table line: " + line);
        std::string rhs;
        std::getline(ss >> std::ws, rhs);
        while (!rhs.empty() && std::isspace(static_cast<unsigned char>(rhs.back()))) rhs.pop_back();
        StarCell c;
        c.cls = alg.lattice->parse_class(cls);
        c.x = alg.at(x);
        c.y = alg.at(y);
        c.value = alg.element(rhs);
        c.text = rhs;
        out.push_back(c);
    }
    return out;
}

std::vector<CellMismatch> compare_tables(const QuantumRing& ring, const std::vector<StarCell>& cells) {
    std::vector<CellMismatch> out;
    for (const auto& c : cells) {
        const Vec& v = ring.star_basis(c.cls, c.x, c.y);
        if (v != c.value) out.push_back({c, v});
    }
    return out;
}

std::vector<PDMismatch> pd_roundtrip(const QuantumRing& ring, const std::vector<Class>& classes) {
    std::vector<PDMismatch> out;
    const GWTable& t = *ring.table;
    const auto& alg = t.alg;
    for (const auto& [key, value] : t.entries) {
        const auto& [a, ins] = key;
        if (ins.size() != 3 || std::find(classes.begin(), classes.end(), a) == classes.end()) continue;
        Vec prod = ring.star_basis(a, ins[0], ins[1]);
        Q got = alg.pair(prod, alg.basis_vec(ins[2]));
        if (got != value) out.push_back({a, ins, value, got});
    }
    return out;
}

// ---------------------------------------------------------------- torus algebra

TorusAlgebra::TorusAlgebra(const GradedAlgebra& b) : base(&b), n(b.size()) {
    for (std::size_t i = 0; i < n; ++i) alg.add_basis(b.labels[i], b.degrees[i]);
    for (std::size_t i = 0; i < n; ++i) alg.add_basis("t." + b.labels[i], b.degrees[i] + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vec& p = b.product(i, j);
            alg.set_product(i, j, lift(p));
            alg.set_product(i, n + j, t_times(p));
            alg.set_product(n + i, j, t_times(p));
        }
    alg.unit = b.unit;
    alg.has_unit = b.has_unit;
    // pairing against the top class t.pt
    std::size_t top = n + b.at(b.labels[b.size() - 1]);
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = 0; j < 2 * n; ++j) alg.pairing(i, j) = alg.product(i, j)[top];
    alg.poincare = true;
}

std::pair<Vec, Vec> TorusAlgebra::split(const Vec& w) const {
    return {Vec(w.begin(), w.begin() + static_cast<long>(n)), Vec(w.begin() + static_cast<long>(n), w.end())};
}

Vec TorusAlgebra::join(const Vec& w1, const Vec& w2) const {
    Vec r = w1;
    r.insert(r.end(), w2.begin(), w2.end());
    return r;
}

Vec torus_product(const TorusAlgebra& ta, const QuantumRing& ring, const Class& a, const Vec& x, const Vec& z) {
    auto [x1, x2] = ta.split(x);
    auto [z1, z2] = ta.split(z);
    Vec lead = ring.star(a, x1, z1);
    Vec tpart = add(ring.star(a, x1, z2), ring.star(a, x2, z1));
    return ta.join(lead, tpart);
}

std::string convention_name(Convention c) { return c == Convention::PaperTable ? "paper-table" : "paper-theorem"; }

Convention parse_convention(const std::string& s) {
    if (s == "paper-table") return Convention::PaperTable;
    if (s == "paper-theorem") return Convention::PaperTheorem;
    throw std::invalid_argument("unknown convention: " + s);
}

MainTermTable mu3_main_table(const TorusAlgebra& ta, Convention c, const std::string& ap, const std::string& bp) {
    MainTermTable m;
    m.convention = c;
    m.a_prefix = ap;
    m.b_prefix = bp;
    const auto& b = *ta.base;
    auto A = [&](int i) { return b.at(ap + std::to_string(i)); };
    auto B = [&](int i) { return b.at(bp + std::to_string(i)); };
    auto tv = [&](std::size_t idx, int s) { return scaled(ta.t_times(b.basis_vec(idx)), Q(s)); };
    for (int i = 1; i <= 2; ++i)
        for (int j = 3; j <= 4; ++j) {
            m.values[{A(i), B(i), A(j)}] = tv(B(j), 1);
            if (c == Convention::PaperTable)
                m.values[{A(i), B(i), B(j)}] = tv(A(j), -1);
            else
                m.values[{A(i), B(i), B(j)}] = tv(B(j), 1);
            m.values[{A(j), A(i), B(i)}] = tv(B(j), 1);
            m.values[{B(j), B(i), A(i)}] = tv(A(j), -1);
        }
    return m;
}

Vec mu3_apply(const TorusAlgebra& ta, const MainTermTable& m, const Vec& x3, const Vec& x2, const Vec& x1) {
    Vec r = zeros(2 * ta.n);
    for (const auto& [key, val] : m.values) {
        auto [i3, i2, i1] = key;
        Q c = x3[i3] * x2[i2] * x1[i1];
        if (sgn(c) != 0) axpy(r, c, val);
    }
    return r;
}

// ---------------------------------------------------------------- mapping cone

std::vector<std::size_t> ConeResult::betti() const {
    std::vector<std::size_t> b;
    for (const auto& d : degrees) b.push_back(d.dim);
    return b;
}

std::map<int, Matrix> identity_action(const GradedAlgebra& a) {
    std::map<int, Matrix> phi;
    for (int d = 0; d <= a.max_degree(); ++d) {
        std::size_t k = a.basis_of_degree(d).size();
        if (k) phi[d] = Matrix::identity(k);
    }
    return phi;
}

std::map<int, Matrix> parse_phi(const GradedAlgebra& a, const std::string& text) {
    std::map<int, Matrix> phi = identity_action(a);
    std::istringstream in(text);
    std::string line;
    int current = -1;
    std::vector<Vec> rows;
    auto flush = [&]() {
        if (current < 0) return;
        std::size_t k = a.basis_of_degree(current).size();
        if (rows.size() != k) throw std::invalid_argument("phi*: degree " + std::to_string(current) + " needs " +
                                                          std::to_string(k) + " rows");
        Matrix m(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            if (rows[i].size() != k) throw std::invalid_argument("phi*: non-square block in degree " + std::to_string(current));
            for (std::size_t j = 0; j < k; ++j) m(i, j) = rows[i][j];
        }
        phi[current] = m;
        rows.clear();
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string kw;
        if (!(ss >> kw)) continue;
        if (kw == "identity") continue;
        if (kw == "degree") {
            flush();
            ss >> current;
            if (a.basis_of_degree(current).empty()) throw std::invalid_argument("phi*: no classes in degree " + std::to_string(current));
        } else if (kw == "row") {
            if (current < 0) throw std::invalid_argument("phi*: row before degree");
            Vec r;
            std::string tok;
            while (ss >> tok) r.push_back(parse_rational(tok));
            rows.push_back(r);
        } else {
            throw std::invalid_argument("phi*: unknown statement " + kw);
        }
    }
    flush();
    return phi;
}

ConeResult mapping_cone_cohomology(const GradedAlgebra& a, const std::map<int, Matrix>& phi) {
    int top = a.max_degree();
    std::map<int, Matrix> m; // id - φ* per degree
    for (int d = 0; d <= top; ++d) {
        std::size_t k = a.basis_of_degree(d).size();
        auto it = phi.find(d);
        if (it == phi.end()) {
            if (k) throw std::invalid_argument("phi*: missing degree " + std::to_string(d));
            continue;
        }
        if (it->second.rows != k || it->second.cols != k)
            throw std::invalid_argument("phi*: block in degree " + std::to_string(d) + " is not " + std::to_string(k) + "x" +
                                        std::to_string(k));
        m[d] = Matrix::identity(k) - it->second;
    }
    for (const auto& [d, _] : phi)
        if (d < 0 || d > top || a.basis_of_degree(d).empty())
            throw std::invalid_argument("phi*: degree-mixing block at degree " + std::to_string(d));
    ConeResult res;
    for (int k = 0; k <= top + 1; ++k) {
        ConeDegree cd;
        cd.degree = k;
        if (m.count(k)) cd.kernel = nullspace(m[k]);
        if (m.count(k - 1)) {
            const Matrix& prev = m[k - 1];
            std::vector<Vec> image;
            for (std::size_t j = 0; j < prev.cols; ++j) image.push_back(prev.col(j));
            auto basis = span_basis(image, prev.rows);
            // extend the image basis by standard vectors
            for (std::size_t i = 0; i < prev.rows; ++i) {
                auto trial = basis;
                trial.push_back(unit_vec(prev.rows, i));
                if (span_basis(trial, prev.rows).size() > basis.size()) {
                    basis.push_back(unit_vec(prev.rows, i));
                    cd.cokernel.push_back(unit_vec(prev.rows, i));
                }
            }
        }
        cd.dim = cd.kernel.size() + cd.cokernel.size();
        res.degrees.push_back(cd);
    }
    return res;
}

// ---------------------------------------------------------------- extensions

ExtensionReport verify_extension(const Deformation& d, const HomologyLattice& lat, const ProductFamily& psi,
                                 const ProductFamily& psi_tilde, const std::vector<Class>& hard) {
    ExtensionReport rep;
    const GradedAlgebra& R = *d.base;
    const GradedAlgebra& Rt = *d.tilde;
    std::size_t nt = Rt.size(), nb = R.size();

    // the deformation itself: t^2 = 0, j onto, ker j = t R̃
    if (!is_zero(Rt.mul(d.t, d.t))) rep.violations.push_back({0, "t", "t^2 != 0"});
    if (d.j.rows != nb || d.j.cols != nt || rank(d.j) != nb)
        rep.violations.push_back({0, "j", "j is not surjective"});
    std::vector<Vec> tr;
    for (std::size_t i = 0; i < nt; ++i) {
        Vec v = Rt.mul(d.t, Rt.basis_vec(i));
        if (!is_zero(d.j.apply(v))) rep.violations.push_back({0, Rt.labels[i], "t*x not in ker j"});
        tr.push_back(v);
    }
    if (nt - rank(d.j) != span_basis(tr, nt).size())
        rep.violations.push_back({0, "ker j", "kernel of j differs from t R-tilde"});

    Class zero = lat.zero();
    auto has = [](const std::vector<Class>& v, const Class& c) { return std::find(v.begin(), v.end(), c) != v.end(); };

    // (1)
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t k = 0; k < nt; ++k) {
            Vec got = psi_tilde.apply(zero, Rt.basis_vec(i), Rt.basis_vec(k));
            if (got != Rt.product(i, k))
                rep.violations.push_back({1, Rt.labels[i] + "," + Rt.labels[k], Rt.render(got) + " vs cup " + Rt.render(Rt.product(i, k))});
        }

    // (2)
    for (const auto& B : psi_tilde.classes) {
        std::vector<std::pair<Class, Class>> splits;
        for (const auto& A : psi_tilde.classes) {
            Class A2 = class_sub(B, A);
            if (has(psi_tilde.classes, A2)) splits.push_back({A, A2});
        }
        // products of basis pairs at each class, cached per call
        std::map<std::tuple<Class, std::size_t, std::size_t>, Vec> cache;
        auto prod = [&](const Class& A, std::size_t i, std::size_t k) -> const Vec& {
            auto key = std::make_tuple(A, i, k);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            return cache[key] = psi_tilde.apply(A, Rt.basis_vec(i), Rt.basis_vec(k));
        };
        auto apply_left = [&](const Class& A, const Vec& v, std::size_t k) {
            Vec r = zeros(nt);
            for (std::size_t i = 0; i < nt; ++i)
                if (sgn(v[i]) != 0) axpy(r, v[i], prod(A, i, k));
            return r;
        };
        auto apply_right = [&](const Class& A, std::size_t i, const Vec& v) {
            Vec r = zeros(nt);
            for (std::size_t k = 0; k < nt; ++k)
                if (sgn(v[k]) != 0) axpy(r, v[k], prod(A, i, k));
            return r;
        };
        bool is_hard = has(hard, B);
        for (std::size_t x = 0; x < nt; ++x)
            for (std::size_t y = 0; y < nt; ++y)
                for (std::size_t z = 0; z < nt; ++z) {
                    Vec diff = zeros(nt);
                    for (const auto& [A, A2] : splits) {
                        axpy(diff, Q(1), apply_left(A2, prod(A, x, y), z));
                        axpy(diff, Q(-1), apply_right(A, x, prod(A2, y, z)));
                    }
                    if (!is_zero(diff)) {
                        ExtensionViolation v{2, lat.class_name(B) + ":" + Rt.labels[x] + "," + Rt.labels[y] + "," + Rt.labels[z],
                                             "residual " + Rt.render(diff)};
                        (is_hard ? rep.violations : rep.report_mode).push_back(v);
                    }
                }
    }

    // (3) degree-2 classes of R̃ that pair trivially with A
    std::vector<std::size_t> deg2 = Rt.basis_of_degree(2);
    for (const auto& A : psi_tilde.classes) {
        if (A == zero) continue;
        Matrix ev(1, deg2.size());
        for (std::size_t c = 0; c < deg2.size(); ++c) {
            Vec jb = d.j.apply(Rt.basis_vec(deg2[c]));
            Q s = 0;
            for (std::size_t i = 0; i < nb; ++i)
                if (sgn(jb[i]) != 0) s += jb[i] * R.divisor_value(i, A);
            ev(0, c) = s;
        }
        for (const auto& kv : nullspace(ev)) {
            Vec u = zeros(nt);
            for (std::size_t c = 0; c < deg2.size(); ++c) u[deg2[c]] = kv[c];
            for (std::size_t x = 0; x < nt; ++x) {
                Vec got = psi_tilde.apply(A, u, Rt.basis_vec(x));
                if (!is_zero(got))
                    rep.violations.push_back({3, lat.class_name(A) + ":(" + Rt.render(u) + ")," + Rt.labels[x], Rt.render(got)});
            }
        }
    }

    // (4)
    for (const auto& A : psi_tilde.classes) {
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t k = 0; k < nt; ++k) {
                Vec lhs = d.j.apply(psi_tilde.apply(A, Rt.basis_vec(i), Rt.basis_vec(k)));
                Vec rhs = psi.apply(A, d.j.apply(Rt.basis_vec(i)), d.j.apply(Rt.basis_vec(k)));
                if (lhs != rhs)
                    rep.violations.push_back({4, lat.class_name(A) + ":" + Rt.labels[i] + "," + Rt.labels[k], R.render(lhs) + " vs " + R.render(rhs)});
            }
    }
    return rep;
}

TorusExtension torus_extension(const TorusAlgebra& ta, const QuantumRing& ring) {
    TorusExtension e;
    e.deformation.tilde = &ta.alg;
    e.deformation.base = ta.base;
    e.deformation.t = ta.t_times(ta.base->basis_vec(ta.base->unit));
    e.deformation.j = Matrix(ta.n, 2 * ta.n);
    for (std::size_t i = 0; i < ta.n; ++i) e.deformation.j(i, i) = 1;
    e.psi.classes = ring.classes;
    e.psi.dim = ta.n;
    e.psi.apply = [&ring](const Class& a, const Vec& x, const Vec& y) { return ring.star(a, x, y); };
    e.psi_tilde.classes = ring.classes;
    e.psi_tilde.dim = 2 * ta.n;
    e.psi_tilde.apply = [&ta, &ring](const Class& a, const Vec& x, const Vec& y) { return torus_product(ta, ring, a, x, y); };
    return e;
}

} // namespace qm

namespace qm {

bool DeriveResult::all_expected() const {
    for (const auto& v : values)
        if (v.value.value != v.expected) return false;
    return true;
}

DeriveResult derive_y(const GWTable& recursion, const GWTable& tables) {
    DeriveResult res;
    GWTable w = recursion;
    const auto& alg = w.alg;
    const auto& lat = w.lattice();
    Class L = lat.names.at("L"), F = lat.names.at("F");
    auto cls = [&](long a) {
        Class c = L;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += a * F[i];
        return c;
    };
    std::size_t l = alg.at("l"), f = alg.at("f"), pt = alg.at("pt"), h = alg.at("h"), u = alg.at("u");

    auto record = [&](const std::string& stage, const Solved& s, const Q& expected) {
        w.add(s.cls, s.insertions, s.value);
        res.values.push_back({stage, s, expected});
    };
    record("wdvv L(l,l;h,h|u,f)", wdvv_solve(w, L, {l, l}, {h, h, u, f}, cls(-1), {f, l, l}), 1);
    record("wdvv L(pt;h,h|u,f)", wdvv_solve(w, L, {pt}, {h, h, u, f}, cls(-1), {f, pt}), 1);

    std::vector<std::size_t> odd;
    for (std::size_t i = 0; i < alg.size(); ++i)
        if (alg.degrees[i] == 3) odd.push_back(i);
    // deg(z2 z1) for x = u z: ua_i ∪ ub_i = -pt while a_i b_i = +1
    auto sigma = [&](std::size_t x2, std::size_t x1) -> Q { return -alg.pair(alg.basis_vec(x2), alg.basis_vec(x1)); };

    for (auto x2 : odd)
        for (auto x1 : odd) record("gathmann a=-1 (l,l,x2,x1)", gathmann_solve(w, -1, {l, l, x2, x1}), sigma(x2, x1));
    for (auto x2 : odd)
        for (auto x1 : odd) record("gathmann a=-2 (f,x2,x1)", gathmann_solve(w, -2, {f, x2, x1}), sigma(x2, x1));
    for (auto x2 : odd)
        for (auto x1 : odd) record("gathmann a=-2 (l,x2,x1)", gathmann_solve(w, -2, {l, x2, x1}), 5 * sigma(x2, x1));
    for (auto x2 : odd)
        for (auto x1 : odd) record("gathmann a=-3 (x2,x1)", gathmann_solve(w, -3, {x2, x1}), 2 * sigma(x2, x1));

    // compare with the tabulated lists
    for (const auto& v : res.values) {
        const Solved& s = v.value;
        if (s.cls == cls(-2) && s.insertions.size() == 3) {
            Q tab = km_reduce(tables, s.cls, s.insertions);
            res.checks.push_back({tables.describe(s.cls, s.insertions), s.value, tab, tab == s.value});
        }
        if (s.cls == cls(-3) && s.insertions.size() == 2) {
            for (std::size_t alpha : {h, u}) {
                Insertions ext = s.insertions;
                ext.push_back(alpha);
                Q tab = km_reduce(tables, s.cls, ext) / alg.divisor_value(alpha, s.cls);
                res.checks.push_back({tables.describe(s.cls, s.insertions) + " from " + tables.describe(s.cls, ext),
                                      s.value, tab, tab == s.value});
            }
        }
    }
    return res;
}

} // namespace qm
