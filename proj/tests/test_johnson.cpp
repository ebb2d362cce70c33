#include "doctest.h"

#include "qmassey/johnson.hpp"

using namespace qm;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("Lyndon words, Witt formula and necklaces agree") {
    for (std::size_t n : {2, 4, 6, 8})
        for (std::size_t k = 1; k <= 4; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            std::size_t w = witt_dimension(n, k);
            CHECK(lyndon_words(static_cast<int>(n), k).size() == w);
            CHECK(necklace_count(n, k) == w);
            for (const auto& word : lyndon_words(static_cast<int>(n), k)) CHECK(is_lyndon(word));
        }
    CHECK(witt_dimension(2, 6) == 9);
    CHECK_FALSE(is_lyndon({1, 0}));
    CHECK_FALSE(is_lyndon({0, 0}));
    CHECK(is_lyndon({0, 0, 1}));
}

TEST_CASE("standard bracketing of Lyndon words") {
    SymplecticModule h(2);
    CHECK(lyndon_bracket(h, {0, 0, 1}) == "[A1,[A1,A2]]");
    CHECK(lyndon_bracket(h, {0, 1, 1}) == "[[A1,A2],A2]");
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi in normal form") {
    SymplecticModule h(2);
    FreeLieElement a = lie_letter(h.A(1)), b = lie_letter(h.B(1)), c = lie_letter(h.A(2));
    CHECK(lie_add(lie_bracket(a, b), lie_bracket(b, a)).is_zero());
    CHECK(lie_bracket(a, a).is_zero());
    FreeLieElement j = lie_add(lie_add(lie_bracket(a, lie_bracket(b, c)), lie_bracket(b, lie_bracket(c, a))),
                               lie_bracket(c, lie_bracket(a, b)));
    CHECK(j.is_zero());
    FreeLieElement ab = lie_bracket(a, b);
    FreeLieElement x = lie_bracket(ab, lie_bracket(c, ab));
    CHECK(lie_normal_form(to_poly(x)) == x);
}

TEST_CASE("normal form rejects non-Lie tensors") {
    Poly p;
    p[{0, 1}] = 1;
    CHECK_THROWS(lie_normal_form(p));
}

TEST_CASE("Lie elements parse and render") {
    SymplecticModule h(3);
    FreeLieElement x = parse_lie(h, "[A1,[A1,B1]] + 2*[B2,[A3,B3]]");
    CHECK(x.degree == 3);
    CHECK(parse_lie(h, render(h, x)) == x);
    CHECK(parse_lie(h, "[A1,B1] + [B1,A1]").is_zero());
    CHECK_THROWS(parse_lie(h, "[A1,C1]"));
}

TEST_CASE("symplectic form and dualization") {
    SymplecticModule h(2);
    CHECK(h.form(h.A(1), h.B(1)) == 1);
    CHECK(h.form(h.B(1), h.A(1)) == -1);
    CHECK(h.form(h.A(1), h.B(2)) == 0);
    CHECK(dualize(h, h.A(2)) == std::pair<Q, int>{Q(1), h.B(2)});
    CHECK(dualize(h, h.B(2)) == std::pair<Q, int>{Q(-1), h.A(2)});
}

TEST_CASE("D_2 is the image of the third exterior power") {
    for (int g = 1; g <= 4; ++g) {
        CAPTURE(g);
        SymplecticModule h(g);
        KernelResult k = kernel_Dk(h, 2);
        CHECK(k.dim() == binom(static_cast<std::size_t>(2 * g), 3));
        std::vector<Vec> image;
        for (int a = 0; a < h.rank(); ++a)
            for (int b = a + 1; b < h.rank(); ++b)
                for (int c = b + 1; c < h.rank(); ++c) {
                    TensorElement t = embed_wedge3(a, b, c);
                    CHECK(bracket_map(t).is_zero());
                    image.push_back(tensor_coords(h, t));
                }
        std::size_t n = k.domain;
        CHECK(span_basis(image, n).size() == k.dim());
        std::vector<Vec> joint = image;
        for (const auto& b : k.basis) joint.push_back(tensor_coords(h, b));
        CHECK(span_basis(joint, n).size() == k.dim());
    }
}

TEST_CASE("tau_1 of a bounding pair twist") {
    SymplecticModule h(2);
    TensorElement t = tau1_bp(h, 1);
    CHECK(t == tau1_bp_expansion(h, 1));
    CHECK(render(h, t) == "A1⊗[B1,B2] - B1⊗[A1,B2] + B2⊗[A1,B1]");
    CHECK(bracket_map(t).is_zero());
    for (int g = 3; g <= 4; ++g) {
        SymplecticModule hg(g);
        for (int k = 1; k < g; ++k) CHECK(tau1_bp(hg, k) == tau1_bp_expansion(hg, k));
    }
}

TEST_CASE("tau_2 of a separating twist is the image of minus omega squared") {
    for (auto [g, k] : {std::pair{2, 1}, std::pair{4, 1}, std::pair{4, 2}, std::pair{3, 2}}) {
        CAPTURE(g);
        CAPTURE(k);
        SymplecticModule h(g);
        TensorElement t = tau2_bscc(h, k);
        CHECK_FALSE(t.is_zero());
        CHECK(t == wedge_pair_image(minus_omega_squared(h, k)));
        CHECK(bracket_map(t).is_zero());
        CHECK(integral(t));
    }
}

TEST_CASE("omega is the sum of symplectic brackets") {
    SymplecticModule h(3);
    CHECK(omega(h, 2) == parse_lie(h, "[A1,B1] + [A2,B2]"));
}

TEST_CASE("rank of D_3 in genus two") {
    SymplecticModule h(2);
    KernelResult k = kernel_Dk(h, 3);
    CHECK(k.domain == 4 * witt_dimension(4, 3));
    CHECK(k.codomain == witt_dimension(4, 4));
    CHECK(k.dim() == 20);
}
