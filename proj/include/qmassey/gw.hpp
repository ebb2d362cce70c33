#pragma once

#include "qmassey/algebra.hpp"
#include "qmassey/gamma.hpp"

#include <array>
#include <map>
#include <optional>
#include <tuple>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qm {

using Insertions = std::vector<std::size_t>;

struct UnknownInvariant : std::runtime_error {
    Class cls;
    Insertions insertions;
    UnknownInvariant(const Class& a, const Insertions& ins, const std::string& what)
        : std::runtime_error(what), cls(a), insertions(ins) {}
};

// One slot of a zero-rule pattern: a fixed basis index or any class of a degree.
struct PatternSlot {
    bool wildcard = false;
    std::size_t index = 0;
    int degree = 0;
};

struct ZeroRule {
    Class cls;
    std::vector<PatternSlot> containing; // empty: every unlisted invariant of the class vanishes
    std::string reason;
};

struct GWTable {
    GradedAlgebra alg;
    int dim_n = 3; // complex dimension
    std::map<std::pair<Class, Insertions>, Q> entries; // canonical insertion order
    std::vector<ZeroRule> rules;

    const HomologyLattice& lattice() const { return *alg.lattice; }
    // Canonical order (sorted by basis index) and the Koszul sign of reaching it.
    std::pair<Insertions, int> canonical(const Insertions& ins) const;
    // Stores a value given in the written order; conflicting restatements throw.
    void add(const Class& a, const Insertions& ins, const Q& value);
    std::optional<Q> stored(const Class& a, const Insertions& ins) const;
    bool vanishes_by_rule(const Class& a, const Insertions& ins) const;
    bool grading_ok(const Class& a, const Insertions& ins) const;
    std::string describe(const Class& a, const Insertions& ins) const;
    Insertions parse_insertions(const std::string& s) const;
};

GWTable parse_gw_table(const GradedAlgebra& alg, const std::string& text);
GWTable load_gw_table(const GradedAlgebra& alg, const std::string& path);

// Axiom reduction down to stored data. Throws UnknownInvariant if the query
// cannot be resolved.
Q km_reduce(const GWTable& t, const Class& a, const Insertions& ins);

struct QuantumRing {
    const GWTable* table = nullptr;
    IdealSpec truncation;
    std::vector<Class> classes; // surviving effective classes
    Matrix inv_pairing_t;       // (P^T)^{-1}
    mutable std::map<std::tuple<Class, std::size_t, std::size_t>, Vec> cache;

    bool gamma_left = false;

    // gamma_left selects ∫γ∪(x⋆y) = GW(x,y,γ) instead of ∫(x⋆y)∪γ.
    QuantumRing(const GWTable& t, const IdealSpec& I, bool gamma_left = false);
    // x ⋆_A y on basis elements
    const Vec& star_basis(const Class& a, std::size_t i, std::size_t j) const;
    Vec star(const Class& a, const Vec& x, const Vec& y) const;
    std::map<Class, Vec> product(const Vec& x, const Vec& y) const;
};

// WDVV relation ℰ_A(x̄; μ1,μ2 | μ3,μ4)
Q wdvv_residual(const GWTable& t, const Class& a, const Insertions& xbar, const std::array<std::size_t, 4>& mu);

struct Solved {
    Class cls;
    Insertions insertions;
    Q value;
};

// Solves the relation for a single unknown invariant, using that the residual
// is affine in it.
Solved wdvv_solve(const GWTable& t, const Class& a, const Insertions& xbar, const std::array<std::size_t, 4>& mu,
                  const Class& unknown_cls, const Insertions& unknown_ins);

struct GathmannTerm {
    Q coefficient;
    Class cls;
    Insertions insertions;
    bool lhs = false;
};

// Linear identity for A = L + aF and insertions without degree-2 classes:
// (a+b)GW_A(x̄) + Σ± GW_A(ȳ,f) = 6(7+2a)GW_{A+F}(x̄,f) + ((a+1)²-6)GW_{A+F}(x̄,ℓ)
// All terms are moved to the left, so the identity reads Σ coefficient·GW = 0.
std::vector<GathmannTerm> gathmann_step(const GWTable& t, long a, const Insertions& xbar);
// Solves for GW_A(x̄).
Solved gathmann_solve(const GWTable& t, long a, const Insertions& xbar);

struct DivisorInconsistency {
    Class cls;
    Insertions stored_insertions;
    Q direct;
    std::size_t peeled, lifted;
    Q via_peel;
};
std::vector<DivisorInconsistency> divisor_consistency(const GWTable& t);

} // namespace qm
