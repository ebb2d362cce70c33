#pragma once

#include "qmassey/algebra.hpp"
#include "qmassey/gamma.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qm {

struct GradedModule {
    std::vector<std::string> labels;
    std::vector<int> degrees;

    std::size_t size() const { return labels.size(); }
    static GradedModule of(const GradedAlgebra& a);
    std::string render(const Vec& x) const;
};

// Basis tuple in written order (x_s, ..., x_1): element 0 is x_s.
using Tuple = std::vector<std::size_t>;

// ✠ of the last i entries of a tuple: Σ_{k≤i} (|x_k| - 1)
int maltese(const GradedModule& m, const Tuple& x, std::size_t i);

// Multilinear map A^{⊗s} -> A of internal degree t, stored on basis tuples.
struct MultiMap {
    std::size_t arity = 0;
    int degree = 0;
    std::map<Tuple, Vec> values;

    MultiMap() = default;
    MultiMap(std::size_t s, int t) : arity(s), degree(t) {}

    int reduced_degree() const { return static_cast<int>(arity) + degree - 1; }
    const Vec* find(const Tuple& x) const;
    void add(const Tuple& x, const Vec& v, const Q& c = 1);
    bool is_zero() const;
    Vec apply(const std::vector<Vec>& args, std::size_t dim) const;
};
MultiMap combine(const MultiMap& a, const Q& ca, const MultiMap& b, const Q& cb);
bool operator==(const MultiMap& a, const MultiMap& b);

// Gerstenhaber product and bracket on single-length cochains.
MultiMap gerstenhaber(const MultiMap& phi, const MultiMap& psi, const GradedModule& m);
MultiMap bracket(const MultiMap& phi, const MultiMap& psi, const GradedModule& m);

// dg packing: μ²(x2, x1) = (-1)^{|x1|} x2·x1, μ¹(x) = (-1)^{|x|} d x
MultiMap packed_product(const GradedAlgebra& a);
MultiMap packed_differential(const GradedModule& m, const Matrix& d);

// ---- Hochschild cochains of a fixed bidegree
struct CochainSpace {
    std::size_t s = 0;
    int t = 0;
    std::size_t out_dim = 0;
    std::vector<std::pair<Tuple, std::size_t>> coords;
    std::map<std::pair<Tuple, std::size_t>, std::size_t> index;

    std::size_t dim() const { return coords.size(); }
    Vec flatten(const MultiMap& m) const;
    MultiMap unflatten(const Vec& v) const;
};
CochainSpace cochain_space(const GradedModule& m, std::size_t s, int t);
// matrix of ∂ = [μ², ·] from CC(s,t) to CC(s+1,t)
Matrix hochschild_matrix(const MultiMap& mu2, const GradedModule& m, std::size_t s, int t);

struct HHResult {
    std::size_t dim = 0, cocycles = 0, coboundaries = 0;
    std::vector<MultiMap> representatives;
};
HHResult hochschild_cohomology(const GradedAlgebra& a, std::size_t s, int t);

// Class in HH(A,A): representative plus a basis of coboundaries.
struct HHClass {
    CochainSpace space;
    Vec representative;
    std::vector<Vec> coboundaries;
    bool cocycle = true;

    bool is_zero() const;
    bool equals(const HHClass& o) const;
};
HHClass hh_class(const GradedAlgebra& a, const MultiMap& cochain);

MultiMap random_cochain(const GradedModule& m, std::size_t s, int t, std::mt19937_64& rng, int range = 3);

// ---- A∞-structures with energy classes
struct AInfStructure {
    GradedModule module;
    std::optional<HomologyLattice> lattice;
    std::optional<IdealSpec> truncation;
    std::size_t arity_cap = 4;
    std::map<std::pair<std::size_t, Class>, MultiMap> maps;

    Class zero_class() const { return lattice ? lattice->zero() : Class{}; }
    long chern(const Class& a) const { return lattice ? lattice->chern(a) : 0; }
    // Rejects entries whose degree is not Σ|x| + 2 - d - 2c1(A).
    void set(std::size_t d, const Class& a, MultiMap m);
    const MultiMap* get(std::size_t d, const Class& a) const;
    const MultiMap* get(std::size_t d) const { return get(d, zero_class()); }
};

struct AInfResidual {
    Class cls;
    std::size_t arity;
    Tuple inputs;
    Vec residual;
};
std::vector<AInfResidual> ainfty_check(const AInfStructure& s, std::size_t max_reports = 50);

AInfStructure dg_structure(const GradedAlgebra& a, const std::optional<Matrix>& d = std::nullopt);
// Text format: algebra statements plus `mu <d> <class> (<labels>) = <lincomb>`.
AInfStructure parse_ainf(const std::string& text);
// Algebra statements, `d <label> = <lincomb>` for the differential and optional
// `mu <d> 0 (...)` lines (d >= 3) added to the dg packing.
AInfStructure parse_dga(const std::string& text, GradedAlgebra* algebra = nullptr);

// μ³ after the gauge transformation with 𝒢¹ = id and the given 𝒢².
MultiMap gauge_mu3(const MultiMap& mu3, const MultiMap& mu2, const MultiMap& g2, const GradedModule& m);

// [μ³] ∈ HH²(A,A)^{-1}; requires μ¹ = 0 and μ² = μ_A.
HHClass universal_massey(const AInfStructure& s, const GradedAlgebra& a);

// ---- homotopy transfer
struct HomotopyData {
    Matrix lambda; // A -> B
    Matrix pi;     // B -> A
    Matrix h;      // B -> B[-1]
};
Matrix differential_matrix(const AInfStructure& b);
std::vector<std::string> check_homotopy_data(const AInfStructure& b, const GradedModule& a, const HomotopyData& hd);

struct Transfer {
    GradedModule cohomology;
    HomotopyData data;
};
// Splitting B = H ⊕ im μ¹ ⊕ C with h(μ¹ c) = -c.
Transfer standard_homotopy(const AInfStructure& b);
MultiMap homotopy_transfer_mu3(const AInfStructure& b, const GradedModule& a, const HomotopyData& hd);
// [x2]·[x1] = (-1)^{|x1|} π μ²(λ x2, λ x1)
GradedAlgebra transferred_algebra(const AInfStructure& b, const GradedModule& a, const HomotopyData& hd);
GradedAlgebra cohomology_algebra(const AInfStructure& b);

} // namespace qm
