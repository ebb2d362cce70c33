#include "qmassey/gamma.hpp"

#include <algorithm>
#include <stdexcept>

namespace qm {

GammaElement gamma_monomial(const Class& a, const Q& q) {
    GammaElement g;
    if (sgn(q) != 0) g[a] = q;
    return g;
}

GammaElement gamma_add(const GammaElement& x, const GammaElement& y) {
    GammaElement r = x;
    for (const auto& [c, q] : y) {
        r[c] += q;
        if (sgn(r[c]) == 0) r.erase(c);
    }
    return r;
}

GammaElement gamma_mul(const HomologyLattice& lat, const GammaElement& x, const GammaElement& y) {
    GammaElement r;
    for (const auto& [a, p] : x)
        for (const auto& [b, q] : y) {
            Class c = class_add(a, b);
            if (!lat.is_effective(c)) throw std::logic_error("gamma_mul: effective monoid not closed at " + coords_string(c));
            r[c] += p * q;
            if (sgn(r[c]) == 0) r.erase(c);
        }
    return r;
}

bool ideal_contains(const HomologyLattice& lat, const IdealSpec& I, const Class& b) {
    long cb = lat.chern(b);
    if (I.kind == IdealSpec::Level) return cb > I.level;
    long ca = lat.chern(I.pivot);
    return (cb == ca && b != I.pivot) || cb > ca;
}

GammaElement truncate(const HomologyLattice& lat, const GammaElement& x, const IdealSpec& I) {
    GammaElement r;
    for (const auto& [c, q] : x)
        if (!ideal_contains(lat, I, c)) r[c] = q;
    return r;
}

std::vector<Class> surviving_classes(const HomologyLattice& lat, const IdealSpec& I) {
    long bound = I.kind == IdealSpec::Level ? I.level : lat.chern(I.pivot);
    std::vector<Class> out;
    for (const auto& c : lat.effective_up_to(bound))
        if (!ideal_contains(lat, I, c)) out.push_back(c);
    return out;
}

bool MatrixElement::is_zero() const {
    for (const auto& v : e)
        if (!qm::is_zero(v)) return false;
    return true;
}

Vec MatrixElement::flatten() const {
    Vec out;
    out.reserve(n * n * dim);
    for (const auto& v : e) out.insert(out.end(), v.begin(), v.end());
    return out;
}

MatrixElement MatrixElement::unflatten(const Vec& v, std::size_t n, std::size_t dim) {
    MatrixElement m(n, dim);
    for (std::size_t k = 0; k < n * n; ++k) m.e[k] = Vec(v.begin() + k * dim, v.begin() + (k + 1) * dim);
    return m;
}

MatrixElement matrix_mul(const MatrixElement& x, const MatrixElement& z, const Bilinear& product) {
    if (x.n != z.n || x.dim != z.dim) throw std::invalid_argument("matrix_mul: size mismatch");
    MatrixElement y(x.n, x.dim);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j)
            for (std::size_t k = 0; k < x.n; ++k) {
                if (qm::is_zero(x(i, k)) || qm::is_zero(z(k, j))) continue;
                axpy(y(i, j), Q(1), product(x(i, k), z(k, j)));
            }
    return y;
}

MatrixElement matrix_mu3(const MatrixElement& x3, const MatrixElement& x2, const MatrixElement& x1,
                         const Trilinear& mu3) {
    if (x3.n != x2.n || x2.n != x1.n) throw std::invalid_argument("matrix_mu3: size mismatch");
    std::size_t n = x3.n;
    MatrixElement y(n, x3.dim);
    for (std::size_t i3 = 0; i3 < n; ++i3)
        for (std::size_t i0 = 0; i0 < n; ++i0)
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t i1 = 0; i1 < n; ++i1) {
                    const Vec &a = x3(i3, i2), &b = x2(i2, i1), &c = x1(i1, i0);
                    if (qm::is_zero(a) || qm::is_zero(b) || qm::is_zero(c)) continue;
                    axpy(y(i3, i0), Q(1), mu3(a, b, c));
                }
    return y;
}

} // namespace qm
