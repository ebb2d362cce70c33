#pragma once

#include "qmassey/algebra.hpp"

#include <functional>
#include <map>

namespace qm {

// Element of the monoid ring Γ: class -> coefficient. Zero is the empty map.
using GammaElement = std::map<Class, Q>;

GammaElement gamma_monomial(const Class& a, const Q& q = 1);
GammaElement gamma_mul(const HomologyLattice& lat, const GammaElement& x, const GammaElement& y);
GammaElement gamma_add(const GammaElement& x, const GammaElement& y);

struct IdealSpec {
    enum Kind { Level, Pivot } kind = Pivot;
    long level = 0;
    Class pivot;

    static IdealSpec at_level(long c) { return {Level, c, {}}; }
    static IdealSpec at_class(const Class& a) { return {Pivot, 0, a}; }
};

bool ideal_contains(const HomologyLattice& lat, const IdealSpec& I, const Class& b);
GammaElement truncate(const HomologyLattice& lat, const GammaElement& x, const IdealSpec& I);
// Effective classes not in I, ordered by (c1, coords).
std::vector<Class> surviving_classes(const HomologyLattice& lat, const IdealSpec& I);

// n×n matrices with entries in a based module.
struct MatrixElement {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<Vec> e; // row-major

    MatrixElement() = default;
    MatrixElement(std::size_t n_, std::size_t dim_) : n(n_), dim(dim_), e(n_ * n_, zeros(dim_)) {}

    Vec& operator()(std::size_t i, std::size_t j) { return e[i * n + j]; }
    const Vec& operator()(std::size_t i, std::size_t j) const { return e[i * n + j]; }
    bool is_zero() const;
    // Flatten to a single coordinate vector (entry-major).
    Vec flatten() const;
    static MatrixElement unflatten(const Vec& v, std::size_t n, std::size_t dim);
    bool operator==(const MatrixElement& o) const { return n == o.n && e == o.e; }
};

using Bilinear = std::function<Vec(const Vec&, const Vec&)>;
using Trilinear = std::function<Vec(const Vec&, const Vec&, const Vec&)>;

MatrixElement matrix_mul(const MatrixElement& x, const MatrixElement& z, const Bilinear& product);
MatrixElement matrix_mu3(const MatrixElement& x3, const MatrixElement& x2, const MatrixElement& x1,
                         const Trilinear& mu3);

} // namespace qm
