#pragma once

#include "qmassey/rational.hpp"

#include <optional>
#include <vector>

namespace qm {

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Q> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Q(0)) {}

    Q& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Q& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n);
    // Columns are the given vectors.
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t height);

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    Vec apply(const Vec& x) const;
    Matrix transpose() const;
    bool is_zero() const;
};

Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
bool operator==(const Matrix& x, const Matrix& y);

struct Echelon {
    Matrix r;                       // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);
std::vector<Vec> nullspace(const Matrix& m);
std::optional<Vec> solve(const Matrix& m, const Vec& b);
std::optional<Matrix> inverse(const Matrix& m);

// Row-reduced basis of span(gens); vectors all of length n.
std::vector<Vec> span_basis(const std::vector<Vec>& gens, std::size_t n);

// Either coefficients expressing v in span(gens) or a functional that kills
// every generator but not v.
struct Membership {
    bool member = false;
    Vec coefficients;
    Vec functional;
};
Membership span_membership(const std::vector<Vec>& gens, const Vec& v);

} // namespace qm
