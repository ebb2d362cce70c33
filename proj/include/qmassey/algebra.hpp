#pragma once

#include "qmassey/linalg.hpp"
#include "qmassey/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qm {

using Class = std::vector<long>;

struct HomologyLattice {
    std::size_t rank = 0;
    std::vector<long> c1;
    std::vector<Class> effective_generators;
    std::map<std::string, Class> names; // L, F, T, R, ...

    long chern(const Class& a) const;
    // Nonnegative integer combination of the generators (or zero).
    bool is_effective(const Class& a) const;
    Class zero() const { return Class(rank, 0); }
    // "2F", "L-F", "0", "1,-2", "T"
    Class parse_class(const std::string& s) const;
    std::string class_name(const Class& a) const;
    // All effective classes with c1 ≤ bound.
    std::vector<Class> effective_up_to(long c1_bound) const;
    // Classes ordered by (c1, coordinates)
    bool less(const Class& a, const Class& b) const;
};

Class class_add(const Class& a, const Class& b);
Class class_sub(const Class& a, const Class& b);
std::string coords_string(const Class& a);

struct GradedAlgebra {
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::map<std::string, std::size_t> index;
    std::vector<Vec> table; // n*n, table[i*n+j] = e_i · e_j
    Matrix pairing;
    bool poincare = false;
    std::size_t unit = 0;
    bool has_unit = false;

    std::optional<HomologyLattice> lattice;
    // degree-2 basis index -> evaluation on lattice basis
    std::map<std::size_t, std::vector<long>> divisor_eval;

    std::size_t size() const { return labels.size(); }
    std::size_t at(const std::string& label) const;
    void add_basis(const std::string& label, int degree);
    void set_product(std::size_t i, std::size_t j, const Vec& v);
    const Vec& product(std::size_t i, std::size_t j) const { return table[i * size() + j]; }

    Vec basis_vec(std::size_t i) const { return unit_vec(size(), i); }
    Vec element(const std::string& lincomb) const;
    Vec mul(const Vec& x, const Vec& y) const;
    Q pair(const Vec& x, const Vec& y) const;
    // Degree of a homogeneous nonzero element; nullopt if zero or mixed.
    std::optional<int> degree_of(const Vec& x) const;
    std::vector<std::size_t> basis_of_degree(int d) const;
    int max_degree() const;
    std::string render(const Vec& x) const;
    // ∫_A α for a degree-2 basis class
    Q divisor_value(std::size_t i, const Class& a) const;
};

// Linear combination text "30*f - 6*l", "-u", "1/2*h + pt", "0".
std::map<std::string, Q> parse_lincomb(const std::string& s);

GradedAlgebra parse_algebra(const std::string& text);
GradedAlgebra load_algebra(const std::string& path);
std::string read_file(const std::string& path);

struct Violation {
    std::string kind;   // commutativity, associativity, unit, degree, pairing
    std::vector<std::string> labels;
    std::string detail;
};

std::vector<Violation> verify_algebra(const GradedAlgebra& a);

// Exterior algebra on generators of degree 1 (used in tests and fixtures).
GradedAlgebra exterior_algebra(int generators);

} // namespace qm
