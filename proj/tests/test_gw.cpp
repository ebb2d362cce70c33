#include "doctest.h"

#include "qmassey/gw.hpp"
#include "qmassey/y.hpp"

#include <algorithm>

using namespace qm;

namespace {

// Quantum cohomology of the projective plane, with the line count as the
// only stored invariant.
const char* plane_alg = R"(
basis 1 0
basis H 2
basis P 4
unit 1
cup H H = P
poincare P
lattice 1
c1 3
effective 1
class D 1
eval H 1
)";

struct Plane {
    GradedAlgebra alg = parse_algebra(plane_alg);
    GWTable table = parse_gw_table(alg, "gw D (P,P) = 1\n"
                                          "gw-zero D containing (1) reason \"unit insertion\"\n"
                                          "gw-zero 2D containing (1) reason \"unit insertion\"\n");
    std::size_t H = alg.at("H"), P = alg.at("P");
};

} // namespace

TEST_CASE("divisor axiom reduces three-point invariants of the plane") {
    Plane p;
    Class d1{1};
    CHECK(km_reduce(p.table, d1, {p.P, p.P}) == 1);
    CHECK(km_reduce(p.table, d1, {p.H, p.P, p.P}) == 1);
    CHECK(km_reduce(p.table, d1, {p.H, p.H, p.P, p.P}) == 1);
    // grading forces these to vanish
    CHECK(km_reduce(p.table, d1, {p.H, p.H, p.P}) == 0);
    CHECK(km_reduce(p.table, Class{-1}, {p.P, p.P}) == 0);
}

TEST_CASE("WDVV recovers the count of conics through five points") {
    Plane p;
    Solved s = wdvv_solve(p.table, Class{2}, {p.P, p.P}, {p.H, p.H, p.P, p.P}, Class{2},
                          {p.P, p.P, p.P, p.P, p.P});
    CHECK(s.value == 1);
    p.table.add(Class{2}, {p.P, p.P, p.P, p.P, p.P}, s.value);
    CHECK(wdvv_residual(p.table, Class{2}, {p.P, p.P}, {p.H, p.H, p.P, p.P}) == 0);
    CHECK(wdvv_residual(p.table, Class{2}, {p.P, p.P}, {p.H, p.P, p.H, p.P}) == 0);
}

TEST_CASE("quantum product of the plane") {
    Plane p;
    QuantumRing ring(p.table, IdealSpec::at_level(3));
    Class d1{1};
    CHECK(ring.star(Class{0}, p.alg.basis_vec(p.H), p.alg.basis_vec(p.H)) == p.alg.basis_vec(p.P));
    CHECK(ring.star(d1, p.alg.basis_vec(p.H), p.alg.basis_vec(p.P)) == p.alg.basis_vec(p.alg.at("1")));
    CHECK(ring.star(d1, p.alg.basis_vec(p.P), p.alg.basis_vec(p.P)) == p.alg.basis_vec(p.H));
}

TEST_CASE("restating an invariant with a different value is rejected") {
    Plane p;
    CHECK_THROWS(p.table.add(Class{1}, {p.P, p.P}, 2));
    CHECK_NOTHROW(p.table.add(Class{1}, {p.P, p.P}, 1));
}

TEST_CASE("odd insertions anticommute in the table") {
    YData y = build_y();
    std::size_t a1 = y.alg.at("ua1"), b1 = y.alg.at("ub1"), u = y.alg.at("u");
    Class f = y.alg.lattice->parse_class("F");
    Q v = km_reduce(y.table, f, {a1, b1, u});
    CHECK(v == 1);
    CHECK(km_reduce(y.table, f, {b1, a1, u}) == -v);
    CHECK(km_reduce(y.table, f, {a1, u, b1}) == v);
}

TEST_CASE("unknown invariants are reported by name") {
    YData y = build_y();
    Class l = y.alg.lattice->parse_class("L");
    std::size_t pt = y.alg.at("pt");
    try {
        km_reduce(y.table, l, {pt, pt});
        FAIL("expected an unknown invariant");
    } catch (const UnknownInvariant& e) {
        CHECK(std::string(e.what()).find("GW_{L,2}(pt,pt)") != std::string::npos);
    }
}

TEST_CASE("recursion reproduces the odd invariants") {
    YData y = build_y();
    GWTable rec = load_gw_table(y.alg, data_path("y_recursion.gw"));
    DeriveResult r = derive_y(rec, y.table);
    CHECK(r.all_expected());
    std::size_t wdvv = 0;
    for (const auto& v : r.values)
        if (v.stage.rfind("wdvv", 0) == 0) {
            ++wdvv;
            CHECK(v.value.value == 1);
        }
    CHECK(wdvv == 2);
}

TEST_CASE("Gathmann step is linear in the unknown") {
    YData y = build_y();
    GWTable rec = load_gw_table(y.alg, data_path("y_recursion.gw"));
    DeriveResult r = derive_y(rec, y.table);
    for (const auto& v : r.values) rec.add(v.value.cls, v.value.insertions, v.value.value);
    std::size_t a1 = y.alg.at("ua1"), b1 = y.alg.at("ub1"), f = y.alg.at("f");
    auto terms = gathmann_step(rec, -2, {f, a1, b1});
    Q total = 0;
    for (const auto& t : terms) total += t.coefficient * km_reduce(rec, t.cls, t.insertions);
    CHECK(total == 0);
}
