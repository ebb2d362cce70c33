#include "doctest.h"

#include "qmassey/massey.hpp"
#include "qmassey/pipeline.hpp"

using namespace qm;

namespace {

struct Classical {
    GradedAlgebra alg;
    AInfStructure s;
    Transfer t;
    explicit Classical(const std::string& name) : s(parse_dga(read_file(data_path(name)), &alg)), t(standard_homotopy(s)) {}
    Vec cls(const std::string& label) const {
        for (std::size_t i = 0; i < t.cohomology.size(); ++i)
            if (t.cohomology.labels[i] == label) return unit_vec(t.cohomology.size(), i);
        throw std::invalid_argument(label);
    }
};

// Runs every single-direction change of choice and returns how many changed the coset.
std::size_t moved_by_choices(const Classical& c, const Vec& a3, const Vec& a2, const Vec& a1, std::size_t& tried) {
    MasseyCoset base = classical_massey(c.s, c.t, a3, a2, a1);
    ChoiceFamily fam = classical_choice_family(c.s, c.t, a3, a2, a1);
    std::size_t moved = 0;
    tried = 0;
    auto run = [&](const ClassicalChoice& ch) {
        ++tried;
        if (!same_coset(base, classical_massey(c.s, c.t, a3, a2, a1, ch))) ++moved;
    };
    for (std::size_t slot = 0; slot < 3; ++slot)
        for (const auto& dir : fam.b_dirs[slot]) {
            ClassicalChoice ch;
            ch.b_shift.assign(3, {});
            ch.b_shift[slot] = scaled(dir, Q(-3, 2));
            run(ch);
        }
    for (const auto& dir : fam.h1_dirs) run({{}, scaled(dir, 5), {}});
    for (const auto& dir : fam.h2_dirs) run({{}, {}, scaled(dir, -2)});
    // all directions at once
    ClassicalChoice all;
    all.b_shift.assign(3, {});
    for (std::size_t slot = 0; slot < 3; ++slot)
        for (const auto& dir : fam.b_dirs[slot])
            all.b_shift[slot] = all.b_shift[slot].empty() ? dir : add(all.b_shift[slot], dir);
    for (const auto& dir : fam.h1_dirs) all.h1_shift = all.h1_shift.empty() ? dir : add(all.h1_shift, dir);
    for (const auto& dir : fam.h2_dirs) all.h2_shift = all.h2_shift.empty() ? dir : add(all.h2_shift, dir);
    run(all);
    return moved;
}

} // namespace

TEST_CASE("certificates separate the representative from the ambiguity") {
    GradedModule m;
    m.labels = {"p", "q", "r"};
    m.degrees = {2, 2, 2};
    MasseyCoset c;
    c.dim = 3;
    c.representative = {Q(1), Q(1), Q(0)};
    c.generators = {{"g1", {Q(1), Q(0), Q(0)}}};
    Certificate cert = coset_nontrivial(c, m);
    CHECK(cert.nontrivial);
    CHECK(sgn(dot(cert.functional, c.generators[0].value)) == 0);
    CHECK(sgn(dot(cert.functional, c.representative)) != 0);
    c.generators.push_back({"g2", {Q(0), Q(2), Q(0)}});
    cert = coset_nontrivial(c, m);
    CHECK_FALSE(cert.nontrivial);
    CHECK(cert.witness == Vec{Q(1), Q(1, 2)});

    MasseyCoset d = c;
    d.representative = add(c.representative, scaled(c.generators[1].value, 7));
    CHECK(same_coset(c, d));
    d.representative[2] = 1;
    CHECK_FALSE(same_coset(c, d));
}

TEST_CASE("Heisenberg triple product is nonzero and well defined") {
    Classical c("heisenberg.dga");
    Vec x = c.cls("x"), y = c.cls("y");
    MasseyCoset m = classical_massey(c.s, c.t, x, x, y);
    CHECK(coset_nontrivial(m, c.t.cohomology).nontrivial);
    std::size_t tried = 0;
    CHECK(moved_by_choices(c, x, x, y, tried) == 0);
    CHECK(tried > 1);
}

TEST_CASE("engineered nonformal fixture") {
    Classical c("nonformal.dga");
    Vec a = c.cls("a"), b = c.cls("b"), cc = c.cls("c");
    MasseyCoset m = classical_massey(c.s, c.t, a, b, cc);
    CHECK(m.generators.size() == 1);
    CHECK(coset_nontrivial(m, c.t.cohomology).nontrivial);
    std::size_t tried = 0;
    CHECK(moved_by_choices(c, a, b, cc, tried) == 0);
    CHECK(tried > 1);
}

TEST_CASE("formal fixture has zero triple product") {
    Classical c("formal.dga");
    Vec x1 = c.cls("x1"), x2 = c.cls("x2");
    for (const auto& [p, q, r] : {std::tuple{x1, x1, x2}, std::tuple{x2, x1, x1}, std::tuple{x1, x2, x2}}) {
        MasseyCoset m = classical_massey(c.s, c.t, p, q, r);
        CHECK_FALSE(coset_nontrivial(m, c.t.cohomology).nontrivial);
        std::size_t tried = 0;
        CHECK(moved_by_choices(c, p, q, r, tried) == 0);
    }
}

TEST_CASE("undefined triple products are rejected") {
    Classical c("heisenberg.dga");
    Vec x = c.cls("x"), yz = c.cls("yz");
    // x·yz is the top class
    CHECK_THROWS_AS(classical_massey(c.s, c.t, x, yz, x), UndefinedProduct);
    CHECK_THROWS_AS(classical_massey(c.s, c.t, yz, x, yz), UndefinedProduct);
}

TEST_CASE("main system on the mapping torus") {
    RunConfig cfg = RunConfig::bundled();
    YData y = build_y_from(cfg.alg_path, cfg.gw_path);
    const auto& lat = *y.alg.lattice;
    Class pivot = lat.parse_class("2F");
    QuantumRing ring(y.table, IdealSpec::at_class(pivot));
    TorusAlgebra ta(y.alg);
    MatrixInputs in = parse_matrix_inputs(ta, read_file(cfg.inputs_path));
    for (Convention conv : {Convention::PaperTable, Convention::PaperTheorem}) {
        MatrixSystem sys = y_main_system(ta, ring, conv, pivot);
        VanishingReport vr = vanishing_report(sys, in);
        CHECK(vr.all_zero);
        // 2F also survives the truncation, but its product is identically zero
        std::vector<VanishingDisplay> shown;
        for (const auto& d : vr.displays) {
            CHECK(d.product.is_zero());
            if (d.cls == "2F")
                CHECK(d.class_vanishes);
            else
                shown.push_back(d);
        }
        REQUIRE(shown.size() == 6);
        const char* order[6][2] = {{"X3*X2", "0"}, {"X3*X2", "F"}, {"X3*X2", "R"},
                                   {"X2*X1", "0"}, {"X2*X1", "F"}, {"X2*X1", "R"}};
        for (std::size_t k = 0; k < 6; ++k) {
            CHECK(shown[k].pair == order[k][0]);
            CHECK(shown[k].cls == order[k][1]);
            CHECK_FALSE(shown[k].class_vanishes);
        }
        // the pairwise cancellations pt, f and l + 3f
        std::vector<std::string> cancelled;
        for (const auto& e : vr.entries) {
            REQUIRE(e.terms.size() == 2);
            CHECK(is_zero(e.total));
            CHECK(add(e.terms[0].value, e.terms[1].value) == zeros(sys.module.size()));
            cancelled.push_back(sys.module.render(e.terms[0].value));
        }
        CHECK(cancelled.size() >= 3);

        MatrixMasseyResult r = quantum_matrix_massey(sys, in);
        CHECK(r.degree == 4);
        CHECK(r.coset.generators.size() == 40);
        CHECK(r.coset.basis().size() == 14);
        // with the product as implemented every entry of Theta vanishes
        CHECK(r.theta.is_zero());
        CHECK_FALSE(coset_nontrivial(r.coset, sys.module).nontrivial);

        MatrixElement disp = theta_as_displayed(sys, in);
        CHECK(is_zero(disp(0, 0)));
        CHECK(is_zero(disp(1, 0)));
        CHECK(is_zero(disp(1, 1)));
        CHECK_FALSE(is_zero(disp(0, 1)));
        MasseyCoset dc = r.coset;
        dc.representative = disp.flatten();
        CHECK(coset_nontrivial(dc, sys.module).nontrivial);

        auto tp = t_part_generators(r.coset.generators, sys.module, 2);
        auto pm = compare_span(tp, row_and_linked_patterns(sys.module, "t.ua1", "t.ua2", "t.ub1", "t.ub3"));
        CHECK(pm.equal());
        CHECK(pm.computed_rank == 6);
    }
}

TEST_CASE("the displayed first matrix breaks the vanishing condition") {
    RunConfig cfg = RunConfig::bundled();
    YData y = build_y_from(cfg.alg_path, cfg.gw_path);
    Class pivot = y.alg.lattice->parse_class("2F");
    QuantumRing ring(y.table, IdealSpec::at_class(pivot));
    TorusAlgebra ta(y.alg);
    MatrixInputs in = parse_matrix_inputs(ta, "X3 = ua1, ua1; 0, 0\nX2 = ub1, 0; -ub2, 0\nX1 = ub1, ub3; 0, 0\n");
    MatrixSystem sys = y_main_system(ta, ring, Convention::PaperTable, pivot);
    VanishingReport vr = vanishing_report(sys, in);
    CHECK_FALSE(vr.all_zero);
    CHECK_FALSE(vr.failures.empty());
    CHECK_THROWS(quantum_matrix_massey(sys, in));
}

TEST_CASE("surface system") {
    GradedAlgebra surface = surface_algebra(4);
    CHECK(verify_algebra(surface).empty());
    TorusAlgebra ta(surface);
    MatrixInputs in = parse_matrix_inputs(ta, read_file(data_path("surface_system.txt")));
    for (Convention conv : {Convention::PaperTable, Convention::PaperTheorem}) {
        MatrixSystem sys = surface_system(ta, conv);
        MatrixMasseyResult r = quantum_matrix_massey(sys, in);
        CHECK(r.vanishing.all_zero);
        CHECK(r.coset.generators.size() == 14);
        CHECK(r.theta.is_zero());
        CHECK_FALSE(coset_nontrivial(r.coset, sys.module).nontrivial);
        auto tp = t_part_generators(r.coset.generators, sys.module, 2);
        CHECK(compare_span(tp, row_and_linked_patterns(sys.module, "t.a1", "t.a2", "t.b1", "t.b3")).equal());
        MasseyCoset dc = r.coset;
        dc.representative = theta_as_displayed(sys, in).flatten();
        CHECK(coset_nontrivial(dc, sys.module).nontrivial);
    }
}

TEST_CASE("matrix inputs are validated") {
    GradedAlgebra surface = surface_algebra(2);
    TorusAlgebra ta(surface);
    CHECK_THROWS(parse_matrix_inputs(ta, "X3 = a1, a2\nX2 = b1, 0; 0, 0\nX1 = b1, 0; 0, 0\n"));
    CHECK_THROWS(parse_matrix_inputs(ta, "X3 = a1, q9; 0, 0\nX2 = b1, 0; 0, 0\nX1 = b1, 0; 0, 0\n"));
}

TEST_CASE("replication pipeline runs every stage") {
    Theorem1Run run = replicate_theorem1(RunConfig::bundled());
    CHECK(run.completed());
    REQUIRE(run.stages.size() == 6);
    CHECK(run.stages[0].name == "build_y");
    CHECK(run.stages[1].ok);
    CHECK_FALSE(run.stages[2].ok); // printed tables disagree, reported
    CHECK(run.stages[4].ok);
    CHECK(run.verdicts.size() == 2);
    CHECK_FALSE(run.all_passed());
    CHECK(run.transcript().find("verdict [paper-table]: trivial") != std::string::npos);
}

TEST_CASE("replication halts on a broken invariant list") {
    RunConfig cfg = RunConfig::bundled();
    cfg.gw_path = data_path("does_not_exist.gw");
    Theorem1Run run = replicate_theorem1(cfg);
    CHECK_FALSE(run.completed());
    CHECK(run.halted_at == "build_y");
    CHECK(run.verdicts.empty());
}
