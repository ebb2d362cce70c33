#pragma once

#include "qmassey/algebra.hpp"
#include "qmassey/gamma.hpp"
#include "qmassey/gw.hpp"

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace qm {

// Directory holding the bundled datasets; QMASSEY_DATA overrides it.
std::string data_dir();
std::string data_path(const std::string& name);

struct YData {
    GradedAlgebra alg;
    GWTable table; // tabulated three-point lists for F, T, R
};

YData build_y();
YData build_y_from(const std::string& alg_path, const std::string& gw_path);

struct ChernData {
    Vec c1, c2;
};
ChernData chern_data(const GradedAlgebra& y);
bool cone_contains(const HomologyLattice& lat, const Class& a);

// ---- printed tables
struct StarCell {
    Class cls;
    std::size_t x, y;
    Vec value;
    std::string text;
};
std::vector<StarCell> parse_star_tables(const GradedAlgebra& alg, const std::string& text);

struct CellMismatch {
    StarCell cell;
    Vec computed;
};
std::vector<CellMismatch> compare_tables(const QuantumRing& ring, const std::vector<StarCell>& cells);

struct PDMismatch {
    Class cls;
    Insertions insertions;
    Q stored, computed;
};
// ∫(x ⋆_A z) ∪ w against every stored three-point entry of the listed classes
std::vector<PDMismatch> pd_roundtrip(const QuantumRing& ring, const std::vector<Class>& classes);

// ---- mapping torus algebra H(Y)[t]/(t^2)
struct TorusAlgebra {
    const GradedAlgebra* base = nullptr;
    GradedAlgebra alg; // basis: x then t.x
    std::size_t n = 0; // base size

    explicit TorusAlgebra(const GradedAlgebra& b);
    std::size_t t_index(std::size_t i) const { return n + i; }
    // split an element into (w', w'')
    std::pair<Vec, Vec> split(const Vec& w) const;
    Vec join(const Vec& w1, const Vec& w2) const;
    Vec lift(const Vec& base_vec) const { return join(base_vec, zeros(n)); }
    Vec t_times(const Vec& base_vec) const { return join(zeros(n), base_vec); }
};

// (w1' + t w1'') ⋆̃_A (w2' + t w2'') = w1'⋆w2' + t(w1'⋆w2'' + w1''⋆w2')
Vec torus_product(const TorusAlgebra& ta, const QuantumRing& ring, const Class& a, const Vec& x, const Vec& z);

enum class Convention { PaperTable, PaperTheorem };
std::string convention_name(Convention c);
Convention parse_convention(const std::string& s);

// t-part of μ̃³_{2F} on degree-3 classes (torus basis in and out). The
// labels of the odd classes are <prefix>a<i>, <prefix>b<j>.
struct MainTermTable {
    Convention convention = Convention::PaperTable;
    std::string a_prefix = "ua", b_prefix = "ub";
    // (i3, i2, i1) base indices -> value in the torus basis
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Vec> values;
    std::size_t support_size() const { return values.size(); }
};
MainTermTable mu3_main_table(const TorusAlgebra& ta, Convention c, const std::string& a_prefix = "ua",
                             const std::string& b_prefix = "ub");
Vec mu3_apply(const TorusAlgebra& ta, const MainTermTable& m, const Vec& x3, const Vec& x2, const Vec& x1);

// ---- mapping cone of id - φ*
struct ConeDegree {
    int degree = 0;
    std::size_t dim = 0;
    std::vector<Vec> kernel;   // in H^k, ker(id - φ*)
    std::vector<Vec> cokernel; // representatives in H^{k-1}, coker(id - φ*)
};
struct ConeResult {
    std::vector<ConeDegree> degrees;
    std::vector<std::size_t> betti() const;
};
// phi maps degree -> square matrix on the basis of that degree (declaration order)
ConeResult mapping_cone_cohomology(const GradedAlgebra& a, const std::map<int, Matrix>& phi);
std::map<int, Matrix> identity_action(const GradedAlgebra& a);
std::map<int, Matrix> parse_phi(const GradedAlgebra& a, const std::string& text);

// ---- extension axioms
struct ExtensionViolation {
    int axiom;
    std::string where;
    std::string detail;
};
struct ExtensionReport {
    std::vector<ExtensionViolation> violations;
    // energy-split associativity at classes outside the hard-check set
    std::vector<ExtensionViolation> report_mode;
    std::vector<std::string> notes;
};

// ψ̃ family: class -> bilinear map on the deformed algebra; ψ the same on R.
struct ProductFamily {
    std::vector<Class> classes;
    std::function<Vec(const Class&, const Vec&, const Vec&)> apply;
    std::size_t dim = 0;
};

struct Deformation {
    const GradedAlgebra* tilde = nullptr; // R̃
    const GradedAlgebra* base = nullptr;  // R
    Vec t;                                // t ∈ R̃
    Matrix j;                             // R̃ -> R
};

ExtensionReport verify_extension(const Deformation& d, const HomologyLattice& lat, const ProductFamily& psi,
                                 const ProductFamily& psi_tilde, const std::vector<Class>& hard_classes);

// Torus deformation of H(Y) with the product family from the quantum ring.
struct TorusExtension {
    Deformation deformation;
    ProductFamily psi, psi_tilde;
};
TorusExtension torus_extension(const TorusAlgebra& ta, const QuantumRing& ring);

} // namespace qm

namespace qm {

// Recursion for the odd invariants: WDVV for L-F, then the Gathmann identity
// for L-F, T and R, cross-checked against the tabulated lists.
struct DerivedValue {
    std::string stage;
    Solved value;
    Q expected; // closed form: 1 for WDVV, multiples of deg(z2 z1) otherwise
};
struct CrossCheck {
    std::string what;
    Q derived, tabulated;
    bool agrees;
};
struct DeriveResult {
    std::vector<DerivedValue> values;
    std::vector<CrossCheck> checks;
    bool all_expected() const;
};
DeriveResult derive_y(const GWTable& recursion, const GWTable& tables);

} // namespace qm
