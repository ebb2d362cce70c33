#include "qmassey/trees.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace qm {

namespace {

void encode_into(const TreeNode& t, bool root, std::string& out) {
    if (t.leaf) {
        out += 'x';
        return;
    }
    bool br = t.broken && !root;
    out += br ? '[' : '(';
    for (const auto& k : t.kids) encode_into(k, false, out);
    out += br ? ']' : ')';
}

TreeNode decode_at(const std::string& s, std::size_t& i) {
    if (i >= s.size()) throw std::invalid_argument("truncated tree code");
    TreeNode t;
    if (s[i] == 'x') {
        ++i;
        return t;
    }
    if (s[i] != '(' && s[i] != '[') throw std::invalid_argument("bad tree code " + s);
    char close = s[i] == '(' ? ')' : ']';
    t.leaf = false;
    t.broken = s[i] == '[';
    ++i;
    while (i < s.size() && s[i] != close) t.kids.push_back(decode_at(s, i));
    if (i >= s.size()) throw std::invalid_argument("unbalanced tree code " + s);
    ++i;
    if (t.kids.size() < 2) throw std::invalid_argument("unstable vertex in " + s);
    return t;
}

// internal vertices in preorder, root first
void preorder(TreeNode& t, std::vector<TreeNode*>& out) {
    if (t.leaf) return;
    out.push_back(&t);
    for (auto& k : t.kids) preorder(k, out);
}

std::size_t count_leaves(const TreeNode& t) {
    if (t.leaf) return 1;
    std::size_t n = 0;
    for (const auto& k : t.kids) n += count_leaves(k);
    return n;
}

std::size_t vertex_degree_sum(const TreeNode& t) {
    if (t.leaf) return 0;
    std::size_t n = t.kids.size() - 2;
    for (const auto& k : t.kids) n += vertex_degree_sum(k);
    return n;
}

// find the parent of the k-th non-root internal vertex
bool collapse_at(TreeNode& t, std::size_t& k) {
    for (std::size_t i = 0; i < t.kids.size(); ++i) {
        TreeNode& c = t.kids[i];
        if (c.leaf) continue;
        if (k == 0) {
            std::vector<TreeNode> kids = std::move(c.kids);
            t.kids.erase(t.kids.begin() + static_cast<long>(i));
            t.kids.insert(t.kids.begin() + static_cast<long>(i), kids.begin(), kids.end());
            return true;
        }
        --k;
        if (collapse_at(c, k)) return true;
    }
    return false;
}

void collapse_all_finite(TreeNode& t) {
    if (t.leaf) return;
    for (auto& k : t.kids) collapse_all_finite(k);
    std::vector<TreeNode> kids;
    for (auto& k : t.kids) {
        if (!k.leaf && !k.broken)
            kids.insert(kids.end(), k.kids.begin(), k.kids.end());
        else
            kids.push_back(std::move(k));
    }
    t.kids = std::move(kids);
}

void mark_all(TreeNode& t, bool broken) {
    if (t.leaf) return;
    t.broken = broken;
    for (auto& k : t.kids) mark_all(k, broken);
}

std::vector<TreeNode> shapes(std::size_t d);

std::mutex tree_mutex;

std::vector<TreeNode> shapes(std::size_t d) {
    static std::map<std::size_t, std::vector<TreeNode>> cache;
    {
        std::lock_guard<std::mutex> lock(tree_mutex);
        auto it = cache.find(d);
        if (it != cache.end()) return it->second;
    }
    std::vector<TreeNode> out;
    if (d == 1)
        out.push_back(TreeNode{});
    else {
        // compositions of d into at least two parts
        std::vector<std::size_t> parts;
        std::function<void(std::size_t)> rec = [&](std::size_t left) {
            if (left == 0) {
                if (parts.size() < 2) return;
                std::vector<std::vector<TreeNode>> opts;
                for (auto p : parts) opts.push_back(shapes(p));
                std::vector<std::size_t> idx(parts.size(), 0);
                for (;;) {
                    TreeNode t;
                    t.leaf = false;
                    for (std::size_t i = 0; i < parts.size(); ++i) t.kids.push_back(opts[i][idx[i]]);
                    out.push_back(t);
                    std::size_t i = 0;
                    while (i < idx.size() && ++idx[i] == opts[i].size()) idx[i++] = 0;
                    if (i == idx.size()) break;
                }
                return;
            }
            for (std::size_t p = 1; p <= left; ++p) {
                if (p == d) continue;
                parts.push_back(p);
                rec(left - p);
                parts.pop_back();
            }
        };
        rec(d);
    }
    std::lock_guard<std::mutex> lock(tree_mutex);
    return cache.emplace(d, out).first->second;
}

void add_to(Chain& c, const std::string& k, long v) {
    if (v == 0) return;
    long& x = c[k];
    x += v;
    if (x == 0) c.erase(k);
}

std::size_t cell_dim_face(const RibbonTree& t) { return vertex_degree_sum(decode(t.code)); }

} // namespace

std::string encode(const TreeNode& t) {
    std::string out;
    encode_into(t, true, out);
    return out;
}

TreeNode decode(const std::string& s) {
    std::size_t i = 0;
    TreeNode t = decode_at(s, i);
    if (i != s.size()) throw std::invalid_argument("trailing characters in tree code " + s);
    t.broken = false;
    return t;
}

RibbonTree canonical(const std::string& code) { return {encode(decode(code))}; }

std::size_t RibbonTree::leaves() const { return count_leaves(decode(code)); }

std::size_t RibbonTree::internal_edges() const {
    std::size_t n = 0;
    for (char c : code) n += c == '(' || c == '[';
    return n - 1;
}

std::size_t RibbonTree::broken_edges() const { return static_cast<std::size_t>(std::count(code.begin(), code.end(), '[')); }

bool RibbonTree::trivalent() const {
    TreeNode t = decode(code);
    std::vector<TreeNode*> vs;
    preorder(t, vs);
    for (auto* v : vs)
        if (v->kids.size() != 2) return false;
    return true;
}

const std::vector<RibbonTree>& enumerate_stable_trees(std::size_t d) {
    static std::map<std::size_t, std::vector<RibbonTree>> cache;
    if (d < 2) throw std::invalid_argument("need d >= 2");
    auto sh = shapes(d);
    std::lock_guard<std::mutex> lock(tree_mutex);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    std::vector<RibbonTree> out;
    for (const auto& t : sh) out.push_back({encode(t)});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return cache.emplace(d, std::move(out)).first->second;
}

std::size_t count_trivalent(std::size_t d) {
    std::size_t n = 0;
    for (const auto& t : enumerate_stable_trees(d)) n += t.trivalent();
    return n;
}

std::size_t catalan(std::size_t n) {
    std::size_t c = 1;
    for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

RibbonTree corolla(std::size_t d) {
    if (d < 2) throw std::invalid_argument("need d >= 2");
    return {"(" + std::string(d, 'x') + ")"};
}

RibbonTree graft(const RibbonTree& t1, std::size_t j, const RibbonTree& t2) {
    std::size_t n = 0, pos = std::string::npos;
    for (std::size_t i = 0; i < t1.code.size(); ++i)
        if (t1.code[i] == 'x' && ++n == j) {
            pos = i;
            break;
        }
    if (j == 0 || pos == std::string::npos) throw std::out_of_range("graft position out of range");
    std::string inner = t2.code;
    inner.front() = '[';
    inner.back() = ']';
    std::string out = t1.code;
    out.replace(pos, 1, inner);
    return {out};
}

RibbonTree collapse_edge(const RibbonTree& t, std::size_t k) {
    TreeNode n = decode(t.code);
    std::size_t kk = k;
    if (!collapse_at(n, kk)) throw std::out_of_range("no internal edge " + std::to_string(k));
    return {encode(n)};
}

RibbonTree collapse_finite(const RibbonTree& t) {
    TreeNode n = decode(t.code);
    collapse_all_finite(n);
    return {encode(n)};
}

RibbonTree all_broken(const RibbonTree& t) {
    TreeNode n = decode(t.code);
    mark_all(n, true);
    return {encode(n)};
}

int boundary_sign(std::size_t d1, std::size_t d2, std::size_t k) {
    std::size_t e = (d1 - k) * d2 + d2 + k;
    return e % 2 ? -1 : 1;
}

std::size_t facet_slots(std::size_t d) {
    std::size_t n = 0;
    for (std::size_t d1 = 2; d1 + 1 <= d; ++d1) n += d1;
    return n;
}

Chain FaceComplex::boundary(const RibbonTree& t) const {
    Chain out;
    TreeNode base = decode(t.code);
    std::vector<TreeNode*> vs;
    preorder(base, vs);
    std::size_t before = 0; // Σ degrees of earlier vertices
    for (std::size_t j = 0; j < vs.size(); ++j) {
        std::size_t n = vs[j]->kids.size();
        for (std::size_t s = 2; s + 1 <= n; ++s)
            for (std::size_t r = 0; r + s <= n; ++r) {
                TreeNode copy = base;
                std::vector<TreeNode*> cv;
                preorder(copy, cv);
                TreeNode* v = cv[j];
                std::size_t p = 0;
                for (std::size_t i = 0; i < r; ++i) p += vertex_degree_sum(v->kids[i]);
                TreeNode inner;
                inner.leaf = false;
                inner.broken = true;
                inner.kids.assign(v->kids.begin() + static_cast<long>(r), v->kids.begin() + static_cast<long>(r + s));
                v->kids.erase(v->kids.begin() + static_cast<long>(r), v->kids.begin() + static_cast<long>(r + s));
                v->kids.insert(v->kids.begin() + static_cast<long>(r), inner);
                long sign = boundary_sign(n - s + 1, s, r);
                if (before % 2) sign = -sign;
                if (((s - 2) * p) % 2) sign = -sign;
                add_to(out, encode(copy), sign);
            }
        before += n - 2;
    }
    return out;
}

long FaceComplex::euler() const {
    long e = 0;
    for (std::size_t k = 0; k < cells.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long>(cells[k].size());
    return e;
}

FaceComplex face_complex(std::size_t d) {
    FaceComplex c;
    c.d = d;
    c.cells.resize(d - 1);
    for (const auto& t : enumerate_stable_trees(d)) {
        RibbonTree b = all_broken(t);
        c.cells[cell_dim_face(b)].push_back(b);
    }
    return c;
}

Chain CubicalComplex::boundary(const RibbonTree& t) const {
    Chain out;
    TreeNode base = decode(t.code);
    std::vector<TreeNode*> vs;
    preorder(base, vs);
    std::size_t i = 0;
    for (std::size_t k = 1; k < vs.size(); ++k) {
        if (vs[k]->broken) continue;
        long sign = i % 2 ? -1 : 1;
        vs[k]->broken = true;
        add_to(out, encode(base), sign);
        vs[k]->broken = false;
        add_to(out, collapse_edge(t, k - 1).code, -sign);
        ++i;
    }
    return out;
}

long CubicalComplex::euler() const {
    long e = 0;
    for (std::size_t k = 0; k < cells.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long>(cells[k].size());
    return e;
}

CubicalComplex cubical_complex(std::size_t d) {
    CubicalComplex c;
    c.d = d;
    c.cells.resize(d - 1);
    for (const auto& t : enumerate_stable_trees(d)) {
        TreeNode base = decode(t.code);
        std::vector<TreeNode*> vs;
        preorder(base, vs);
        std::size_t e = vs.size() - 1;
        for (std::size_t mask = 0; mask < (std::size_t{1} << e); ++mask) {
            for (std::size_t k = 0; k < e; ++k) vs[k + 1]->broken = (mask >> k) & 1;
            RibbonTree cell{encode(base)};
            c.cells[cell.finite_edges()].push_back(cell);
        }
    }
    for (auto& v : c.cells) std::sort(v.begin(), v.end());
    return c;
}

namespace {

template <class Complex>
SquareCheck square(const Complex& c) {
    SquareCheck r;
    for (const auto& layer : c.cells)
        for (const auto& t : layer) {
            ++r.cells;
            Chain dd;
            for (const auto& [k, v] : c.boundary(t))
                for (const auto& [k2, v2] : c.boundary(RibbonTree{k})) add_to(dd, k2, v * v2);
            if (!dd.empty()) {
                ++r.failures;
                if (r.examples.size() < 5) r.examples.push_back(t.code + " -> " + render_chain(dd));
            }
        }
    return r;
}

} // namespace

SquareCheck check_square(const FaceComplex& c) { return square(c); }
SquareCheck check_square(const CubicalComplex& c) { return square(c); }

SubdivisionCheck check_subdivision(const FaceComplex& f, const CubicalComplex& c) {
    SubdivisionCheck r;
    // trivalent cubes grouped by the face they fill
    std::map<std::string, std::vector<std::string>> fills;
    for (const auto& layer : c.cells)
        for (const auto& cell : layer)
            if (cell.trivalent()) fills[collapse_finite(cell).code].push_back(cell.code);
    auto sub = [&](const Chain& x) {
        Chain out;
        for (const auto& [face, v] : x)
            for (const auto& [cube, e] : r.epsilon.at(face)) add_to(out, cube, v * e);
        return out;
    };
    for (const auto& layer : f.cells)
        for (const auto& face : layer) {
            ++r.faces;
            auto& eps = r.epsilon[face.code];
            Chain fb = f.boundary(face);
            bool bad = false;
            for (const auto& cube : fills[face.code]) {
                std::optional<int> e;
                for (const auto& [term, v] : c.boundary(RibbonTree{cube})) {
                    RibbonTree tt{term};
                    if (!tt.trivalent()) continue; // interior wall
                    std::string facet = collapse_finite(tt).code;
                    auto fit = fb.find(facet);
                    long coef = fit == fb.end() ? 0 : fit->second;
                    auto& eps2 = r.epsilon.at(facet);
                    long want = coef * eps2.at(term);
                    if (want != v && want != -v) {
                        bad = true;
                        continue;
                    }
                    int cand = want == v ? 1 : -1;
                    if (e && *e != cand) bad = true;
                    e = cand;
                }
                eps[cube] = e.value_or(1);
            }
            Chain lhs;
            for (const auto& [cube, e] : eps)
                for (const auto& [k, v] : c.boundary(RibbonTree{cube})) add_to(lhs, k, e * v);
            Chain rhs = sub(fb);
            for (const auto& [k, v] : rhs) add_to(lhs, k, -v);
            if (bad || !lhs.empty()) {
                ++r.failures;
                if (r.examples.size() < 5) r.examples.push_back(face.code + " residual " + render_chain(lhs));
            }
        }
    return r;
}

std::string render_chain(const Chain& c) {
    if (c.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, v] : c) {
        if (v < 0)
            out += first ? "-" : " - ";
        else if (!first)
            out += " + ";
        long a = v < 0 ? -v : v;
        if (a != 1) out += std::to_string(a) + "*";
        out += k;
        first = false;
    }
    return out;
}

} // namespace qm
