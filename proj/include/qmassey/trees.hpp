#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace qm {

// Planar rooted tree. Leaves are inputs, read left to right; every internal
// vertex has at least two children. Internal edges are finite or broken
// (infinite length); the root edge and leaf edges carry no type.
struct TreeNode {
    bool leaf = true;
    bool broken = false; // type of the edge above this vertex
    std::vector<TreeNode> kids;
};

// Canonical form: "x" for a leaf, "(...)" for a vertex under a finite edge or
// at the root, "[...]" under a broken edge. Children in planar order.
std::string encode(const TreeNode& t);
TreeNode decode(const std::string& s);

struct RibbonTree {
    std::string code;

    std::size_t leaves() const;
    std::size_t internal_edges() const;
    std::size_t broken_edges() const;
    std::size_t finite_edges() const { return internal_edges() - broken_edges(); }
    bool trivalent() const;
    bool operator<(const RibbonTree& o) const { return code < o.code; }
    bool operator==(const RibbonTree& o) const { return code == o.code; }
};
RibbonTree canonical(const std::string& code);

// All stable trees with d leaves, internal edges finite, sorted by code.
const std::vector<RibbonTree>& enumerate_stable_trees(std::size_t d);
std::size_t count_trivalent(std::size_t d);
std::size_t catalan(std::size_t n);
RibbonTree corolla(std::size_t d);

// Attach the root of t2 to input j (1-based) of t1 through a new broken edge.
RibbonTree graft(const RibbonTree& t1, std::size_t j, const RibbonTree& t2);
// Collapse the internal edge above the k-th internal vertex in preorder (0-based, root excluded).
RibbonTree collapse_edge(const RibbonTree& t, std::size_t k);
// Collapse all finite edges: the tree T^∞ of the cubical cell.
RibbonTree collapse_finite(const RibbonTree& t);
RibbonTree all_broken(const RibbonTree& t);

// (-1)^{(d1-k)d2 + d2 + k}
int boundary_sign(std::size_t d1, std::size_t d2, std::size_t k);
// number of (d1, d2, k) with d1 + d2 = d + 1, d1, d2 >= 2, 0 <= k < d1
std::size_t facet_slots(std::size_t d);

using Chain = std::map<std::string, long>;

// Face complex of K_d: cells are trees with broken internal edges, degree
// Σ_v (|v| - 2), oriented by the preorder of vertices with Koszul signs.
struct FaceComplex {
    std::size_t d = 0;
    std::vector<std::vector<RibbonTree>> cells; // by dimension
    Chain boundary(const RibbonTree& t) const;
    long euler() const;
};
FaceComplex face_complex(std::size_t d);

// Cubical complex: every stable tree with every finite/broken marking;
// dimension = number of finite edges, coordinates ordered by preorder.
struct CubicalComplex {
    std::size_t d = 0;
    std::vector<std::vector<RibbonTree>> cells;
    Chain boundary(const RibbonTree& t) const;
    long euler() const;
};
CubicalComplex cubical_complex(std::size_t d);

struct SquareCheck {
    std::size_t cells = 0, failures = 0;
    std::vector<std::string> examples;
    bool ok() const { return failures == 0; }
};
SquareCheck check_square(const FaceComplex& c);
SquareCheck check_square(const CubicalComplex& c);

// Signs ε_F(T) with sub(F) = Σ ε_F(T)·(T, edges of F) over trivalent
// refinements T of F, fixed from the facet terms; reports any failure of
// ∂ sub = sub ∂.
struct SubdivisionCheck {
    std::map<std::string, std::map<std::string, int>> epsilon;
    std::size_t faces = 0, failures = 0;
    std::vector<std::string> examples;
    bool ok() const { return failures == 0; }
};
SubdivisionCheck check_subdivision(const FaceComplex& f, const CubicalComplex& c);

std::string render_chain(const Chain& c);

} // namespace qm
