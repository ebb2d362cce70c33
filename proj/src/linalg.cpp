#include "qmassey/linalg.hpp"

#include <stdexcept>

namespace qm {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cs, std::size_t height) {
    Matrix m(height, cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j) {
        if (cs[j].size() != height) throw std::invalid_argument("column height mismatch");
        for (std::size_t i = 0; i < height; ++i) m(i, j) = cs[j][i];
    }
    return m;
}

Vec Matrix::row(std::size_t i) const {
    return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols);
}

Vec Matrix::col(std::size_t j) const {
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols) throw std::invalid_argument("apply: size mismatch");
    Vec y(rows, Q(0));
    for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(x[j]) == 0) continue;
        for (std::size_t i = 0; i < rows; ++i)
            if (sgn((*this)(i, j)) != 0) y[i] += (*this)(i, j) * x[j];
    }
    return y;
}

Matrix Matrix::transpose() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product: size mismatch");
    Matrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Q& xik = x(i, k);
            if (sgn(xik) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (sgn(y(k, j)) != 0) z(i, j) += xik * y(k, j);
        }
    return z;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix difference: size mismatch");
    Matrix z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

Echelon rref(Matrix m) {
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && sgn(m(p, c)) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        Q inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            Q f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.r = std::move(m);
    return e;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> nullspace(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols, Q(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows) throw std::invalid_argument("solve: size mismatch");
    Matrix aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    Echelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols) return std::nullopt;
    Vec x(m.cols, Q(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.r(i, m.cols);
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
    std::size_t n = m.rows;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.r(i, n + j);
    return inv;
}

std::vector<Vec> span_basis(const std::vector<Vec>& gens, std::size_t n) {
    Matrix m(gens.size(), n);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = gens[i][j];
    Echelon e = rref(m);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) out.push_back(e.r.row(i));
    return out;
}

Membership span_membership(const std::vector<Vec>& gens, const Vec& v) {
    Membership res;
    std::size_t n = v.size();
    if (gens.empty()) {
        if (is_zero(v)) {
            res.member = true;
            return res;
        }
        // any coordinate where v is nonzero serves as a functional
        for (std::size_t i = 0; i < n; ++i)
            if (sgn(v[i]) != 0) {
                res.functional = unit_vec(n, i);
                break;
            }
        return res;
    }
    Matrix g = Matrix::from_columns(gens, n);
    if (auto x = solve(g, v)) {
        res.member = true;
        res.coefficients = *x;
        return res;
    }
    // left kernel of g: functionals vanishing on every generator
    for (const auto& phi : nullspace(g.transpose())) {
        if (sgn(dot(phi, v)) != 0) {
            res.functional = phi;
            return res;
        }
    }
    throw std::logic_error("span_membership: inconsistent solve");
}

} // namespace qm
