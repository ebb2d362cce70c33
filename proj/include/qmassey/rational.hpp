#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qm {

using Q = mpq_class;
using Vec = std::vector<Q>;

// Canonical rendering: "p" for integers, "p/q" otherwise, always reduced.
std::string to_string(const Q& q);
Q parse_rational(const std::string& s);

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

inline Vec zeros(std::size_t n) { return Vec(n, Q(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n, Q(0));
    v[i] = 1;
    return v;
}

inline void axpy(Vec& y, const Q& a, const Vec& x) {
    if (sgn(a) == 0) return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0) y[i] += a * x[i];
}

inline Vec scaled(const Vec& x, const Q& a) {
    Vec r = x;
    for (auto& e : r) e *= a;
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    axpy(r, Q(1), b);
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r = a;
    axpy(r, Q(-1), b);
    return r;
}

inline Q dot(const Vec& a, const Vec& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

} // namespace qm
