#pragma once

#include "qmassey/ainfinity.hpp"
#include "qmassey/gamma.hpp"
#include "qmassey/y.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qm {

struct UndefinedProduct : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmbiguityGenerator {
    std::string provenance;
    Vec value;
};

// Representative modulo the span of the generators. For matrix products the
// vectors are flattened entry-major (n×n blocks of dim coordinates).
struct MasseyCoset {
    std::size_t n = 0; // 0 for scalar products
    std::size_t dim = 0;
    Vec representative;
    std::vector<AmbiguityGenerator> generators;

    std::vector<Vec> basis() const;
    std::string render(const GradedModule& m) const;
};

struct Certificate {
    bool nontrivial = false;
    Vec witness;    // coefficients over the generators when trivial
    Vec functional; // kills the ambiguity, not the representative
    std::string text;
};
Certificate coset_nontrivial(const MasseyCoset& c, const GradedModule& m);
bool same_coset(const MasseyCoset& a, const MasseyCoset& b);

// ---- classical triple products on a dg or A∞ model (class 0 maps)
struct ClassicalChoice {
    std::vector<Vec> b_shift; // e_3, e_2, e_1: b_i = λ a_i + μ¹ e_i
    Vec h1_shift, h2_shift;   // cocycles added to the bounding cochains
};
struct ChoiceFamily {
    std::vector<std::vector<Vec>> b_dirs; // per slot (3, 2, 1)
    std::vector<Vec> h1_dirs, h2_dirs;
};
ChoiceFamily classical_choice_family(const AInfStructure& b, const Transfer& t, const Vec& a3, const Vec& a2,
                                     const Vec& a1);
// (-1)^{|a2|}[μ³(b3,b2,b1) - μ²(h2,b1) - μ²(b3,h1)] modulo a3·A + A·a1
MasseyCoset classical_massey(const AInfStructure& b, const Transfer& t, const Vec& a3, const Vec& a2, const Vec& a1,
                             const ClassicalChoice& choice = {});

// ---- matrix products over a torus algebra
struct EnergyProduct {
    std::string name; // class name
    long c1 = 0;
    Bilinear product;
};
struct MatrixSystem {
    GradedModule module;
    std::vector<EnergyProduct> products; // classes outside the truncation ideal
    Trilinear mu3;                       // μ̃³ at the pivot
    std::string pivot;
    long pivot_c1 = 0;
    std::string convention;
};
MatrixSystem y_main_system(const TorusAlgebra& ta, const QuantumRing& ring, Convention c, const Class& pivot);
GradedAlgebra surface_algebra(int genus);
MatrixSystem surface_system(const TorusAlgebra& ta, Convention c);

struct MatrixInputs {
    MatrixElement x3, x2, x1;
};
// Rows separated by ';', entries by ','; labels of the base algebra, lifted to the torus.
MatrixInputs parse_matrix_inputs(const TorusAlgebra& ta, const std::string& text);

struct VanishingTerm {
    std::size_t k;
    Vec value;
};
struct VanishingEntry {
    std::string cls;
    std::string pair; // "X3*X2" or "X2*X1"
    std::size_t i, j;
    std::vector<VanishingTerm> terms;
    Vec total;
};
// One matrix product X3*X2 or X2*X1 at one class, X3*X2 first, classes in ring order.
struct VanishingDisplay {
    std::string pair, cls;
    MatrixElement product;
    bool class_vanishes = false; // the product of this class is identically zero
};
struct VanishingReport {
    std::vector<VanishingDisplay> displays;
    std::vector<VanishingEntry> entries; // nonempty-term entries only
    bool all_zero = true;
    std::vector<std::string> failures;
};
VanishingReport vanishing_report(const MatrixSystem& s, const MatrixInputs& x);

std::vector<AmbiguityGenerator> ambiguity_generators(const MatrixSystem& s, const MatrixInputs& x, int degree);

struct MatrixMasseyResult {
    VanishingReport vanishing;
    MatrixElement theta;
    MasseyCoset coset;
    int degree = 0; // internal degree of the entries
};
MatrixMasseyResult quantum_matrix_massey(const MatrixSystem& s, const MatrixInputs& x);

// Θ with every entry of the first matrix replaced by the first entry of its
// row, i.e. X3 = (ua1 ua1; 0 0) for the main inputs. This reproduces the
// two-term expansion of Θ12 that the hand computation writes down.
MatrixElement theta_as_displayed(const MatrixSystem& s, const MatrixInputs& x);

// Span comparison against hand-written generator patterns.
struct PatternMatch {
    std::size_t computed_rank = 0, pattern_rank = 0, joint_rank = 0;
    bool equal() const { return computed_rank == pattern_rank && pattern_rank == joint_rank; }
};
// Generators supported on the t-part only.
std::vector<Vec> t_part_generators(const std::vector<AmbiguityGenerator>& gens, const GradedModule& m, std::size_t n);
PatternMatch compare_span(const std::vector<Vec>& computed, const std::vector<Vec>& pattern);
// Row patterns x1·(…) in row 1 and the linked (y1 at (k,1), y2 at (k,2)) pattern.
std::vector<Vec> row_and_linked_patterns(const GradedModule& m, const std::string& r1, const std::string& r2,
                                         const std::string& l1, const std::string& l2);

std::string render_matrix(const MatrixElement& x, const GradedModule& m);

} // namespace qm
