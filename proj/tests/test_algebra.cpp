#include "doctest.h"

#include "qmassey/algebra.hpp"
#include "qmassey/gamma.hpp"
#include "qmassey/linalg.hpp"
#include "qmassey/y.hpp"

using namespace qm;

TEST_CASE("rationals render reduced") {
    CHECK(to_string(Q(6, 4)) == "3/2");
    CHECK(to_string(Q(-4, 2)) == "-2");
    CHECK(parse_rational("-10/4") == Q(-5, 2));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("rref, rank and nullspace") {
    Matrix m(3, 3);
    m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
    m(1, 0) = 2, m(1, 1) = 4, m(1, 2) = 6;
    m(2, 0) = 1, m(2, 1) = 0, m(2, 2) = 1;
    CHECK(rank(m) == 2);
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(m.apply(ns[0])));
    CHECK_FALSE(inverse(m).has_value());

    Matrix a(2, 2);
    a(0, 0) = 2, a(0, 1) = 1, a(1, 0) = 1, a(1, 1) = 1;
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(*inv * a == Matrix::identity(2));
    auto x = solve(a, Vec{Q(3), Q(2)});
    REQUIRE(x.has_value());
    CHECK(*x == Vec{Q(1), Q(1)});
}

TEST_CASE("span membership gives coefficients or a separating functional") {
    std::vector<Vec> gens{{Q(1), Q(1), Q(0)}, {Q(0), Q(1), Q(1)}};
    auto in = span_membership(gens, Vec{Q(1), Q(2), Q(1)});
    CHECK(in.member);
    CHECK(in.coefficients == Vec{Q(1), Q(1)});
    auto out = span_membership(gens, Vec{Q(0), Q(0), Q(1)});
    CHECK_FALSE(out.member);
    for (const auto& g : gens) CHECK(sgn(dot(out.functional, g)) == 0);
    CHECK(sgn(dot(out.functional, Vec{Q(0), Q(0), Q(1)})) != 0);
}

TEST_CASE("linear combinations parse with rational coefficients") {
    auto m = parse_lincomb("30*f - 6*l + 1/2*h - u");
    CHECK(m.at("f") == 30);
    CHECK(m.at("l") == -6);
    CHECK(m.at("h") == Q(1, 2));
    CHECK(m.at("u") == -1);
    CHECK(parse_lincomb("0").empty());
}

TEST_CASE("exterior algebra is graded commutative and associative") {
    GradedAlgebra e = exterior_algebra(3);
    CHECK(e.size() == 8);
    CHECK(verify_algebra(e).empty());
}

TEST_CASE("verify_algebra names a broken product") {
    GradedAlgebra e = exterior_algebra(2);
    std::size_t i = e.basis_of_degree(1)[0];
    std::size_t j = e.basis_of_degree(1)[1];
    e.set_product(j, i, e.product(i, j)); // should be the negative
    auto v = verify_algebra(e);
    REQUIRE_FALSE(v.empty());
    bool named = false;
    for (const auto& x : v) named |= x.kind == "commutativity";
    CHECK(named);
}

TEST_CASE("the cohomology of Y is a Poincare duality algebra") {
    YData y = build_y();
    CHECK(y.alg.size() == 14);
    CHECK(y.alg.poincare);
    CHECK(verify_algebra(y.alg).empty());
    Vec hh = y.alg.mul(y.alg.element("h"), y.alg.element("h"));
    CHECK(hh == y.alg.element("l"));
    Vec uu = y.alg.mul(y.alg.element("u"), y.alg.element("u"));
    CHECK(uu == y.alg.element("30*f - 6*l"));
    CHECK(y.alg.pair(y.alg.element("ua1"), y.alg.element("ub1")) == -1);
    CHECK(y.alg.pair(y.alg.element("ub1"), y.alg.element("ua1")) == 1);
}

TEST_CASE("lattice classes parse and truncate") {
    YData y = build_y();
    const HomologyLattice& lat = *y.alg.lattice;
    Class f = lat.parse_class("F");
    CHECK(lat.class_name(lat.parse_class("2F")) == "2F");
    CHECK(lat.is_effective(f));
    CHECK(lat.chern(class_add(f, f)) == 2 * lat.chern(f));
    IdealSpec i2f = IdealSpec::at_class(lat.parse_class("2F"));
    CHECK_FALSE(ideal_contains(lat, i2f, lat.parse_class("2F")));
    CHECK_FALSE(ideal_contains(lat, i2f, lat.zero()));
    CHECK(ideal_contains(lat, i2f, lat.parse_class("3F")));
    for (const auto& c : surviving_classes(lat, i2f)) CHECK_FALSE(ideal_contains(lat, i2f, c));
    GammaElement x = gamma_add(gamma_monomial(lat.zero()), gamma_monomial(f));
    GammaElement sq = truncate(lat, gamma_mul(lat, x, x), i2f);
    CHECK(sq.at(lat.zero()) == 1);
    CHECK(sq.at(f) == 2);
    CHECK(sq.at(lat.parse_class("2F")) == 1);
    GammaElement cube = truncate(lat, gamma_mul(lat, sq, x), i2f);
    CHECK(cube.count(lat.parse_class("3F")) == 0);
}

TEST_CASE("I_A is an ideal and truncation is multiplicative") {
    YData y = build_y();
    const HomologyLattice& lat = *y.alg.lattice;
    std::vector<Class> eff;
    for (long a = -5; a <= 5; ++a)
        for (long b = -5; b <= 5; ++b) {
            Class c{a, b};
            if (lat.is_effective(c)) eff.push_back(c);
        }
    for (const char* piv : {"F", "2F", "T", "R"}) {
        IdealSpec I = IdealSpec::at_class(lat.parse_class(piv));
        for (const auto& b : eff)
            if (ideal_contains(lat, I, b))
                for (const auto& c : eff)
                    if (lat.chern(c) > 0) CHECK(ideal_contains(lat, I, class_add(b, c)));
        GammaElement x, z;
        for (std::size_t k = 0; k < eff.size(); k += 3) x = gamma_add(x, gamma_monomial(eff[k], Q(long(k) + 1)));
        for (std::size_t k = 1; k < eff.size(); k += 4) z = gamma_add(z, gamma_monomial(eff[k], Q(1, long(k) + 1)));
        CHECK(truncate(lat, gamma_mul(lat, x, z), I) ==
              truncate(lat, gamma_mul(lat, truncate(lat, x, I), truncate(lat, z, I)), I));
    }
}

TEST_CASE("matrix products use the supplied bilinear map") {
    GradedAlgebra e = exterior_algebra(2);
    std::size_t x = e.basis_of_degree(1)[0], y = e.basis_of_degree(1)[1];
    MatrixElement a(2, e.size()), b(2, e.size());
    a(0, 0) = e.basis_vec(x);
    b(0, 1) = e.basis_vec(y);
    MatrixElement p = matrix_mul(a, b, [&](const Vec& u, const Vec& v) { return e.mul(u, v); });
    CHECK(p(0, 1) == e.mul(e.basis_vec(x), e.basis_vec(y)));
    CHECK(is_zero(p(0, 0)));
    CHECK(MatrixElement::unflatten(p.flatten(), 2, e.size()) == p);
}
