#include "doctest.h"

#include "qmassey/trees.hpp"

#include <set>

using namespace qm;

TEST_CASE("codes round trip") {
    for (const char* c : {"x", "(xx)", "((xx)x)", "(x[xx]x)", "([x(xx)]x)"}) CHECK(encode(decode(c)) == c);
    CHECK_THROWS(decode("(x)"));
    CHECK_THROWS(decode("(xx"));
}

TEST_CASE("stable tree counts are the little Schroeder numbers") {
    std::vector<std::size_t> want{1, 3, 11, 45, 197, 903};
    for (std::size_t d = 2; d <= 7; ++d) {
        CAPTURE(d);
        const auto& trees = enumerate_stable_trees(d);
        CHECK(trees.size() == want[d - 2]);
        std::set<std::string> codes;
        for (const auto& t : trees) {
            codes.insert(t.code);
            CHECK(t.leaves() == d);
            CHECK(t.broken_edges() == 0);
        }
        CHECK(codes.size() == trees.size());
    }
}

TEST_CASE("trivalent trees are counted by Catalan numbers") {
    for (std::size_t d = 2; d <= 7; ++d) CHECK(count_trivalent(d) == catalan(d - 1));
    CHECK(catalan(5) == 42);
}

TEST_CASE("grafting and collapsing") {
    RibbonTree t = graft(corolla(3), 2, corolla(2));
    CHECK(t.code == "(x[xx]x)");
    CHECK(t.leaves() == 4);
    CHECK(t.broken_edges() == 1);
    CHECK(collapse_edge(t, 0).code == "(xxxx)");
    RibbonTree u = canonical("((xx)[xx])");
    CHECK(collapse_finite(u).code == "(xx[xx])");
    CHECK(all_broken(u).code == "([xx][xx])");
}

TEST_CASE("boundary of the corolla uses the operadic sign") {
    for (std::size_t d = 3; d <= 6; ++d) {
        FaceComplex f = face_complex(d);
        Chain b = f.boundary(corolla(d));
        CHECK(b.size() == facet_slots(d));
        std::size_t slots = 0;
        for (std::size_t d1 = 2; d1 < d; ++d1) {
            std::size_t d2 = d + 1 - d1;
            slots += d1;
            for (std::size_t k = 0; k < d1; ++k) {
                RibbonTree facet = graft(corolla(d1), k + 1, corolla(d2));
                REQUIRE(b.count(facet.code) == 1);
                CHECK(b.at(facet.code) == boundary_sign(d1, d2, k));
            }
        }
        CHECK(slots == facet_slots(d));
    }
    CHECK(boundary_sign(3, 2, 0) == 1);
    CHECK(boundary_sign(2, 3, 0) == -1);
    CHECK(boundary_sign(3, 2, 1) == -1);
}

TEST_CASE("face and cubical complexes") {
    for (std::size_t d = 2; d <= 6; ++d) {
        CAPTURE(d);
        FaceComplex f = face_complex(d);
        CubicalComplex c = cubical_complex(d);
        CHECK(f.euler() == 1);
        CHECK(c.euler() == 1);
        CHECK(check_square(f).ok());
        CHECK(check_square(c).ok());
    }
}

TEST_CASE("cubical subdivision is a chain map") {
    for (std::size_t d = 3; d <= 6; ++d) {
        SubdivisionCheck s = check_subdivision(face_complex(d), cubical_complex(d));
        CHECK(s.ok());
        CHECK(s.faces > 0);
    }
}

TEST_CASE("chains render with signs") {
    Chain c{{"(x[xx])", -1}, {"([xx]x)", 1}};
    CHECK(render_chain(c) == "([xx]x) - (x[xx])");
}
