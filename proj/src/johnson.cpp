#include "qmassey/johnson.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>

namespace qm {

SymplecticModule::SymplecticModule(int genus) : g(genus) {
    if (g < 1) throw std::invalid_argument("genus must be positive");
}

std::string SymplecticModule::name(int x) const {
    return (x < g ? "A" : "B") + std::to_string(x % g + 1);
}

int SymplecticModule::parse_letter(const std::string& s) const {
    if (s.size() < 2 || (s[0] != 'A' && s[0] != 'B')) throw std::invalid_argument("bad generator " + s);
    int i = std::stoi(s.substr(1));
    if (i < 1 || i > g) throw std::invalid_argument("generator index out of range: " + s);
    return s[0] == 'A' ? A(i) : B(i);
}

Q SymplecticModule::form(int x, int y) const {
    if (x < g && y == x + g) return 1;
    if (x >= g && y == x - g) return -1;
    return 0;
}

namespace {

void poly_add(Poly& p, const Word& w, const Q& c) {
    if (sgn(c) == 0) return;
    Q& v = p[w];
    v += c;
    if (sgn(v) == 0) p.erase(w);
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            poly_add(out, w, cu * cv);
        }
    return out;
}

// longest proper Lyndon suffix gives the standard factorization
std::pair<Word, Word> standard_factorization(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word v(w.begin() + i, w.end());
        if (is_lyndon(v)) return {Word(w.begin(), w.begin() + i), v};
    }
    throw std::logic_error("standard factorization of a letter");
}

std::mutex cache_mutex;

} // namespace

void TensorElement::add(int x, const FreeLieElement& xi, const Q& c) {
    if (xi.is_zero() || sgn(c) == 0) return;
    if (coords.empty()) degree = xi.degree;
    if (xi.degree != degree) throw std::invalid_argument("mixed degrees in H ⊗ L");
    for (const auto& [w, q] : xi.coords) {
        auto key = std::make_pair(x, w);
        Q& v = coords[key];
        v += c * q;
        if (sgn(v) == 0) coords.erase(key);
    }
}

TensorElement operator+(const TensorElement& a, const TensorElement& b) {
    TensorElement out = a;
    if (out.coords.empty()) out.degree = b.degree;
    for (const auto& [k, c] : b.coords) {
        Q& v = out.coords[k];
        v += c;
        if (sgn(v) == 0) out.coords.erase(k);
    }
    return out;
}

TensorElement scaled(const TensorElement& a, const Q& c) {
    TensorElement out;
    out.degree = a.degree;
    if (sgn(c) == 0) return out;
    for (const auto& [k, v] : a.coords) out.coords[k] = v * c;
    return out;
}

TensorElement operator-(const TensorElement& a, const TensorElement& b) { return a + scaled(b, -1); }

bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!(w < Word(w.begin() + i, w.end()))) return false;
    return true;
}

const std::vector<Word>& lyndon_words(int n, std::size_t k) {
    static std::map<std::pair<int, std::size_t>, std::vector<Word>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(n, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // Duval's generation, lexicographic
    std::vector<Word> out;
    if (n > 0 && k > 0) {
        Word w{-1};
        while (!w.empty()) {
            ++w.back();
            if (w.size() == k) out.push_back(w);
            std::size_t m = w.size();
            while (w.size() < k) w.push_back(w[w.size() - m]);
            while (!w.empty() && w.back() == n - 1) w.pop_back();
        }
    }
    return cache.emplace(key, std::move(out)).first->second;
}

std::string lyndon_bracket(const SymplecticModule& h, const Word& w) {
    if (w.size() == 1) return h.name(w[0]);
    auto [u, v] = standard_factorization(w);
    return "[" + lyndon_bracket(h, u) + "," + lyndon_bracket(h, v) + "]";
}

Poly poly_letter(int x) { return Poly{{Word{x}, Q(1)}}; }

Poly poly_bracket(const Poly& a, const Poly& b) {
    Poly out = poly_mul(a, b);
    for (const auto& [w, c] : poly_mul(b, a)) poly_add(out, w, -c);
    return out;
}

const Poly& lyndon_poly(const Word& w) {
    static std::map<Word, Poly> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(w);
        if (it != cache.end()) return it->second;
    }
    Poly p;
    if (w.size() == 1)
        p = poly_letter(w[0]);
    else {
        auto [u, v] = standard_factorization(w);
        p = poly_bracket(lyndon_poly(u), lyndon_poly(v));
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(w, std::move(p)).first->second;
}

Poly to_poly(const FreeLieElement& x) {
    Poly out;
    for (const auto& [w, c] : x.coords)
        for (const auto& [u, cu] : lyndon_poly(w)) poly_add(out, u, c * cu);
    return out;
}

FreeLieElement lie_normal_form(const Poly& p) {
    FreeLieElement out;
    Poly rest = p;
    if (!rest.empty()) out.degree = rest.begin()->first.size();
    // the smallest word of P(w) is w itself, with coefficient 1
    while (!rest.empty()) {
        auto [w, c] = *rest.begin();
        if (w.size() != out.degree) throw std::invalid_argument("inhomogeneous Lie polynomial");
        if (!is_lyndon(w)) throw std::invalid_argument("not a Lie element");
        Q coef = c;
        out.coords[w] = coef;
        for (const auto& [u, cu] : lyndon_poly(w)) poly_add(rest, u, -coef * cu);
    }
    return out;
}

FreeLieElement lie_letter(int x) {
    FreeLieElement out;
    out.degree = 1;
    out.coords[Word{x}] = 1;
    return out;
}

FreeLieElement lie_bracket(const FreeLieElement& a, const FreeLieElement& b) {
    FreeLieElement out = lie_normal_form(poly_bracket(to_poly(a), to_poly(b)));
    if (out.is_zero()) out.degree = a.degree + b.degree;
    return out;
}

FreeLieElement lie_add(const FreeLieElement& a, const FreeLieElement& b, const Q& cb) {
    FreeLieElement out = a;
    if (out.coords.empty()) out.degree = b.degree;
    if (!b.coords.empty() && !a.coords.empty() && a.degree != b.degree)
        throw std::invalid_argument("adding Lie elements of different degrees");
    for (const auto& [w, c] : b.coords) {
        Q& v = out.coords[w];
        v += cb * c;
        if (sgn(v) == 0) out.coords.erase(w);
    }
    return out;
}

namespace {

struct LieParser {
    const SymplecticModule& h;
    const std::string& s;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("bracket expression: " + what + " at position " + std::to_string(i));
    }
    Poly atom() {
        ws();
        if (i < s.size() && s[i] == '[') {
            ++i;
            Poly a = expr();
            ws();
            if (i >= s.size() || s[i] != ',') fail("expected ','");
            ++i;
            Poly b = expr();
            ws();
            if (i >= s.size() || s[i] != ']') fail("expected ']'");
            ++i;
            return poly_bracket(a, b);
        }
        std::size_t j = i;
        while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) fail("expected generator");
        std::string tok = s.substr(i, j - i);
        i = j;
        return poly_letter(h.parse_letter(tok));
    }
    Poly term() {
        ws();
        std::size_t j = i;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
        Q c = 1;
        if (j > i) {
            std::size_t k = j;
            while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
            if (k >= s.size() || s[k] != '*') fail("expected '*'");
            c = parse_rational(s.substr(i, j - i));
            i = k + 1;
        }
        Poly a = atom();
        for (auto& [w, v] : a) v *= c;
        return a;
    }
    Poly expr() {
        ws();
        Q sign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        Poly out;
        for (const auto& [w, c] : term()) poly_add(out, w, sign * c);
        for (;;) {
            ws();
            if (i >= s.size() || (s[i] != '+' && s[i] != '-')) break;
            Q sg = s[i] == '-' ? -1 : 1;
            ++i;
            for (const auto& [w, c] : term()) poly_add(out, w, sg * c);
        }
        return out;
    }
};

std::string coef_prefix(const Q& c, bool first) {
    std::string out;
    Q a = c;
    if (sgn(c) < 0) {
        out = first ? "-" : " - ";
        a = -c;
    } else if (!first)
        out = " + ";
    if (a != 1) out += to_string(a) + "*";
    return out;
}

} // namespace

FreeLieElement parse_lie(const SymplecticModule& h, const std::string& text) {
    LieParser p{h, text};
    Poly x = p.expr();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return lie_normal_form(x);
}

std::string render(const SymplecticModule& h, const FreeLieElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : x.coords) {
        out += coef_prefix(c, first) + lyndon_bracket(h, w);
        first = false;
    }
    return out;
}

std::string render(const SymplecticModule& h, const TensorElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : x.coords) {
        out += coef_prefix(c, first) + h.name(k.first) + "⊗" + lyndon_bracket(h, k.second);
        first = false;
    }
    return out;
}

std::pair<Q, int> dualize(const SymplecticModule& h, int x) {
    if (x < h.g) return {Q(1), x + h.g};
    return {Q(-1), x - h.g};
}

FreeLieElement wedge2(int x, int y) {
    FreeLieElement out = lie_bracket(lie_letter(x), lie_letter(y));
    out.degree = 2;
    return out;
}

TensorElement embed_wedge3(int a, int b, int c) {
    TensorElement out;
    out.degree = 2;
    out.add(a, wedge2(b, c));
    out.add(b, wedge2(c, a));
    out.add(c, wedge2(a, b));
    return out;
}

FreeLieElement bracket_map(const TensorElement& x) {
    FreeLieElement out;
    out.degree = x.degree + 1;
    Poly p;
    for (const auto& [k, c] : x.coords) {
        Poly b = poly_bracket(poly_letter(k.first), lyndon_poly(k.second));
        for (const auto& [w, v] : b) poly_add(p, w, c * v);
    }
    FreeLieElement r = lie_normal_form(p);
    if (r.is_zero()) return out;
    return r;
}

Vec tensor_coords(const SymplecticModule& h, const TensorElement& x) {
    const auto& words = lyndon_words(h.rank(), x.degree);
    std::map<Word, std::size_t> idx;
    for (std::size_t i = 0; i < words.size(); ++i) idx[words[i]] = i;
    Vec v = zeros(h.rank() * words.size());
    for (const auto& [k, c] : x.coords) v[k.first * words.size() + idx.at(k.second)] = c;
    return v;
}

Matrix bracket_matrix(const SymplecticModule& h, std::size_t k) {
    const auto& dom = lyndon_words(h.rank(), k);
    const auto& cod = lyndon_words(h.rank(), k + 1);
    std::map<Word, std::size_t> idx;
    for (std::size_t i = 0; i < cod.size(); ++i) idx[cod[i]] = i;
    Matrix m(cod.size(), h.rank() * dom.size());
    for (int x = 0; x < h.rank(); ++x)
        for (std::size_t j = 0; j < dom.size(); ++j) {
            TensorElement t;
            t.degree = k;
            t.coords[{x, dom[j]}] = 1;
            for (const auto& [w, c] : bracket_map(t).coords) m(idx.at(w), x * dom.size() + j) = c;
        }
    return m;
}

KernelResult kernel_Dk(const SymplecticModule& h, std::size_t k) {
    Matrix m = bracket_matrix(h, k);
    KernelResult r;
    r.domain = m.cols;
    r.codomain = m.rows;
    const auto& dom = lyndon_words(h.rank(), k);
    auto ker = nullspace(m);
    r.rank = r.domain - ker.size();
    for (const auto& v : ker) {
        TensorElement t;
        t.degree = k;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0) t.coords[{static_cast<int>(i / dom.size()), dom[i % dom.size()]}] = v[i];
        r.basis.push_back(t);
    }
    return r;
}

std::size_t witt_dimension(std::size_t n, std::size_t k) {
    auto mobius = [](std::size_t d) {
        int m = 1;
        for (std::size_t p = 2; p * p <= d; ++p)
            if (d % p == 0) {
                d /= p;
                if (d % p == 0) return 0;
                m = -m;
            }
        if (d > 1) m = -m;
        return m;
    };
    long long total = 0;
    for (std::size_t d = 1; d <= k; ++d)
        if (k % d == 0) {
            long long pw = 1;
            for (std::size_t i = 0; i < k / d; ++i) pw *= static_cast<long long>(n);
            total += mobius(d) * pw;
        }
    return static_cast<std::size_t>(total / static_cast<long long>(k));
}

std::size_t necklace_count(std::size_t n, std::size_t k) {
    // words strictly smaller than every nontrivial rotation
    std::size_t total = 1, count = 0;
    for (std::size_t i = 0; i < k; ++i) total *= n;
    Word w(k);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = k; i-- > 0;) {
            w[i] = static_cast<int>(c % n);
            c /= n;
        }
        bool minimal = true;
        for (std::size_t r = 1; r < k && minimal; ++r) {
            Word rot(w.begin() + r, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + r);
            if (!(w < rot)) minimal = false;
        }
        count += minimal;
    }
    return count;
}

namespace {
void check_range(const SymplecticModule& h, int genus_h) {
    if (genus_h < 1 || genus_h >= h.g) throw std::invalid_argument("need 1 <= h < g");
}
} // namespace

TensorElement tau1_bp(const SymplecticModule& h, int genus_h) {
    check_range(h, genus_h);
    TensorElement out;
    out.degree = 2;
    for (int i = 1; i <= genus_h; ++i) out = out + embed_wedge3(h.A(i), h.B(i), h.B(genus_h + 1));
    return out;
}

TensorElement tau1_bp_expansion(const SymplecticModule& h, int genus_h) {
    check_range(h, genus_h);
    TensorElement out;
    out.degree = 2;
    int b = h.B(genus_h + 1);
    for (int i = 1; i <= genus_h; ++i) {
        out.add(h.B(i), wedge2(b, h.A(i)));
        out.add(h.A(i), wedge2(b, h.B(i)), -1);
        out.add(b, wedge2(h.A(i), h.B(i)));
    }
    return out;
}

FreeLieElement omega(const SymplecticModule& h, int genus_h) {
    FreeLieElement w;
    w.degree = 2;
    for (int i = 1; i <= genus_h; ++i) w = lie_add(w, wedge2(h.A(i), h.B(i)));
    return w;
}

TensorElement tau2_bscc(const SymplecticModule& h, int genus_h) {
    check_range(h, genus_h);
    FreeLieElement w = omega(h, genus_h);
    TensorElement out;
    out.degree = 3;
    for (int i = 1; i <= genus_h; ++i) {
        out.add(h.B(i), lie_bracket(lie_letter(h.A(i)), w));
        out.add(h.A(i), lie_bracket(lie_letter(h.B(i)), w), -1);
    }
    return out;
}

TensorElement wedge_pair_image(const WedgePair& t) {
    TensorElement out;
    out.degree = 3;
    for (const auto& [k, c] : t) {
        auto [x, y] = k.first;
        FreeLieElement xi = wedge2(k.second.first, k.second.second);
        out.add(x, lie_bracket(lie_letter(y), xi), c);
        out.add(y, lie_bracket(lie_letter(x), xi), -c);
    }
    return out;
}

WedgePair minus_omega_squared(const SymplecticModule& h, int genus_h) {
    check_range(h, genus_h);
    WedgePair t;
    for (int i = 1; i <= genus_h; ++i)
        for (int j = 1; j <= genus_h; ++j) t[{{h.A(i), h.B(i)}, {h.A(j), h.B(j)}}] = -1;
    return t;
}

bool integral(const TensorElement& x) {
    for (const auto& [k, c] : x.coords)
        if (c.get_den() != 1) return false;
    return true;
}

} // namespace qm
