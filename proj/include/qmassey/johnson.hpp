#pragma once

#include "qmassey/linalg.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qm {

// Letters 0..g-1 are A_1..A_g, letters g..2g-1 are B_1..B_g.
using Word = std::vector<int>;
// Element of the tensor algebra T(H): word -> coefficient.
using Poly = std::map<Word, Q>;

struct SymplecticModule {
    int g = 0;

    explicit SymplecticModule(int genus);
    int rank() const { return 2 * g; }
    int A(int i) const { return i - 1; }
    int B(int i) const { return g + i - 1; }
    std::string name(int letter) const;
    int parse_letter(const std::string& s) const;
    // intersection form: A_i·B_i = 1, B_i·A_i = -1
    Q form(int x, int y) const;
};

// Free Lie element in the Lyndon basis: Lyndon word -> coefficient, all words
// of one length.
struct FreeLieElement {
    std::size_t degree = 0;
    std::map<Word, Q> coords;

    bool is_zero() const { return coords.empty(); }
    bool operator==(const FreeLieElement& o) const { return coords == o.coords; }
};

// H ⊗ 𝓛_k: (letter, Lyndon word) -> coefficient.
struct TensorElement {
    std::size_t degree = 0; // k
    std::map<std::pair<int, Word>, Q> coords;

    void add(int x, const FreeLieElement& xi, const Q& c = 1);
    bool is_zero() const { return coords.empty(); }
    bool operator==(const TensorElement& o) const { return coords == o.coords; }
};
TensorElement operator+(const TensorElement& a, const TensorElement& b);
TensorElement operator-(const TensorElement& a, const TensorElement& b);
TensorElement scaled(const TensorElement& a, const Q& c);

bool is_lyndon(const Word& w);
// Lyndon words of length k over n letters, lexicographic.
const std::vector<Word>& lyndon_words(int n, std::size_t k);
// Standard bracketing of a Lyndon word, as a bracket string over letter names.
std::string lyndon_bracket(const SymplecticModule& h, const Word& w);

Poly poly_bracket(const Poly& a, const Poly& b);
Poly poly_letter(int x);
// tensor expansion of the standard bracketing of a Lyndon word
const Poly& lyndon_poly(const Word& w);
Poly to_poly(const FreeLieElement& x);

// Triangular reduction against the Lyndon basis; throws if p is not a Lie element.
FreeLieElement lie_normal_form(const Poly& p);
FreeLieElement lie_bracket(const FreeLieElement& a, const FreeLieElement& b);
FreeLieElement lie_letter(int x);
FreeLieElement lie_add(const FreeLieElement& a, const FreeLieElement& b, const Q& cb = 1);
// Parses "[A1,[A1,B1]]", sums like "[A1,B1] + 2*[A2,B2]".
FreeLieElement parse_lie(const SymplecticModule& h, const std::string& text);
std::string render(const SymplecticModule& h, const FreeLieElement& x);
std::string render(const SymplecticModule& h, const TensorElement& x);

// A_i -> B_i -> -A_i
std::pair<Q, int> dualize(const SymplecticModule& h, int x);

// X∧Y read as [X,Y] in 𝓛_2
FreeLieElement wedge2(int x, int y);
TensorElement embed_wedge3(int a, int b, int c);

FreeLieElement bracket_map(const TensorElement& x);
Matrix bracket_matrix(const SymplecticModule& h, std::size_t k);
struct KernelResult {
    std::size_t domain = 0, codomain = 0, rank = 0;
    std::vector<TensorElement> basis;
    std::size_t dim() const { return domain - rank; }
};
KernelResult kernel_Dk(const SymplecticModule& h, std::size_t k);
Vec tensor_coords(const SymplecticModule& h, const TensorElement& x);

// Witt formula and a brute-force aperiodic necklace count.
std::size_t witt_dimension(std::size_t n, std::size_t k);
std::size_t necklace_count(std::size_t n, std::size_t k);

TensorElement tau1_bp(const SymplecticModule& h, int genus_h);
// Σ_i B_i⊗(B_{h+1}∧A_i) − A_i⊗(B_{h+1}∧B_i) + B_{h+1}⊗(A_i∧B_i)
TensorElement tau1_bp_expansion(const SymplecticModule& h, int genus_h);
FreeLieElement omega(const SymplecticModule& h, int genus_h);
TensorElement tau2_bscc(const SymplecticModule& h, int genus_h);

// ∧²H ⊗ ∧²H -> H ⊗ 𝓛_3: (X∧Y)⊗ξ ↦ X⊗[Y,ξ] − Y⊗[X,ξ]
using WedgePair = std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, Q>;
TensorElement wedge_pair_image(const WedgePair& t);
WedgePair minus_omega_squared(const SymplecticModule& h, int genus_h);

bool integral(const TensorElement& x);

} // namespace qm
