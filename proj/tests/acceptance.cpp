// One PASS/FAIL line per acceptance criterion, followed by indented details.
// Exit status is the number of failing criteria.

#include "qmassey/ainfinity.hpp"
#include "qmassey/johnson.hpp"
#include "qmassey/massey.hpp"
#include "qmassey/pipeline.hpp"
#include "qmassey/trees.hpp"
#include "qmassey/y.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace qm;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void note(const std::string& s) { notes.push_back("     " + s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << s << " s";
    return os.str();
}

int failures = 0;

void run(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.notes.push_back(std::string("FAIL exception: ") + e.what());
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "\n";
    for (const auto& l : o.notes) std::cout << "    " << l << "\n";
    std::cout.flush();
    failures += !o.pass;
}

std::size_t binom(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool is_cancellation(const GradedModule& m, const VanishingEntry& e, const std::string& term) {
    if (e.terms.size() != 2 || !is_zero(e.total)) return false;
    std::string a = m.render(e.terms[0].value), b = m.render(e.terms[1].value);
    return a == term || b == term;
}

} // namespace

int main() {
    const RunConfig cfg = RunConfig::bundled();
    const YData y = build_y_from(cfg.alg_path, cfg.gw_path);
    const HomologyLattice& lat = *y.alg.lattice;

    run(1, "quantum tables rebuilt from the invariant lists", [&](Outcome& o) {
        auto t0 = std::chrono::steady_clock::now();
        QuantumRing ring(y.table, IdealSpec::at_level(2));
        auto cells = parse_star_tables(y.alg, read_file(cfg.tables_path));
        auto mism = compare_tables(ring, cells);
        double dt = seconds_since(t0);
        o.require(cells.size() == 3 * 14 * 14, std::to_string(cells.size()) + " printed cells");
        o.require(mism.empty(), std::to_string(mism.size()) + " cells differ from the rebuilt products");
        o.require(dt < 1.0, "runtime " + fmt_seconds(dt));
        for (std::size_t i = 0; i < mism.size() && i < 6; ++i) {
            const auto& c = mism[i].cell;
            o.note(y.alg.labels[c.x] + " *_" + lat.class_name(c.cls) + " " + y.alg.labels[c.y] + ": printed " +
                   c.text + ", rebuilt " + y.alg.render(mism[i].computed));
        }
        QuantumRing left(y.table, IdealSpec::at_level(2), true);
        o.note("with the class inserted on the left instead: " + std::to_string(compare_tables(left, cells).size()) +
               " differing cells");
    });

    run(2, "Poincare duality round trip", [&](Outcome& o) {
        auto t0 = std::chrono::steady_clock::now();
        QuantumRing ring(y.table, IdealSpec::at_level(2));
        std::vector<Class> cls{lat.parse_class("F"), lat.parse_class("T"), lat.parse_class("R")};
        auto m = pd_roundtrip(ring, cls);
        double dt = seconds_since(t0);
        std::size_t stored = 0;
        for (const auto& [k, v] : y.table.entries)
            if (k.second.size() == 3 && std::find(cls.begin(), cls.end(), k.first) != cls.end()) ++stored;
        o.require(m.empty(), std::to_string(stored) + " stored invariants, " + std::to_string(m.size()) + " mismatches");
        o.require(dt < 1.0, "runtime " + fmt_seconds(dt));
    });

    run(3, "WDVV and Gathmann derived values", [&](Outcome& o) {
        GWTable rec = load_gw_table(y.alg, data_path("y_recursion.gw"));
        DeriveResult r = derive_y(rec, y.table);
        std::size_t wdvv = 0, gath = 0, wrong = 0;
        for (const auto& v : r.values) {
            (v.stage.rfind("wdvv", 0) == 0 ? wdvv : gath)++;
            if (v.value.value != v.expected) {
                ++wrong;
                o.note(v.stage + ": " + rec.describe(v.value.cls, v.value.insertions) + " = " +
                       to_string(v.value.value) + ", expected " + to_string(v.expected));
            }
        }
        for (const auto& v : r.values)
            if (v.stage.rfind("wdvv", 0) == 0)
                o.require(v.value.value == 1, rec.describe(v.value.cls, v.value.insertions) + " = " +
                                                  to_string(v.value.value));
        o.require(gath > 0 && wrong == 0,
                  std::to_string(gath) + " Gathmann instances, " + std::to_string(wrong) + " off the closed forms");
        std::size_t disagree = 0;
        for (const auto& c : r.checks) disagree += !c.agrees;
        o.note(std::to_string(r.checks.size()) + " cross-checks against the tabulated lists, " +
               std::to_string(disagree) + " disagreements (see criterion 10)");
    });

    run(4, "main matrix Massey product on the mapping torus of Y", [&](Outcome& o) {
        auto t0 = std::chrono::steady_clock::now();
        Theorem1Run r = replicate_theorem1(cfg);
        double dt = seconds_since(t0);
        o.require(r.completed(), r.completed() ? "pipeline completed" : "halted at " + r.halted_at);

        Class pivot = lat.parse_class(cfg.pivot);
        QuantumRing ring(y.table, IdealSpec::at_class(pivot));
        TorusAlgebra ta(y.alg);
        MatrixInputs in = parse_matrix_inputs(ta, read_file(cfg.inputs_path));
        MatrixSystem sys = y_main_system(ta, ring, cfg.conventions.front(), pivot);
        VanishingReport vr = vanishing_report(sys, in);
        std::size_t shown = 0, zero = 0;
        for (const auto& d : vr.displays)
            if (!d.class_vanishes) {
                ++shown;
                zero += d.product.is_zero();
            }
        o.require(shown == 6 && zero == 6, std::to_string(zero) + " of " + std::to_string(shown) +
                                               " vanishing displays are zero");
        bool pt = false, f = false, lf = false;
        for (const auto& e : vr.entries) {
            pt |= e.cls == "0" && is_cancellation(sys.module, e, "pt");
            f |= e.cls == "F" && is_cancellation(sys.module, e, "f");
            lf |= e.cls == "R" && is_cancellation(sys.module, e, "l + 3*f");
        }
        o.require(pt && f && lf, "cancellations pt, f, l + 3f at 0, F, R");

        for (const auto& v : r.verdicts) {
            const MatrixElement& th = v.theta;
            bool shape = th.n == 2 && is_zero(th(0, 0)) && is_zero(th(1, 0)) && is_zero(th(1, 1)) &&
                         !is_zero(th(0, 1));
            o.require(shape, "[" + v.convention + "] Theta = " + render_matrix(th, r.module) +
                                 " (want a single nonzero entry at (1,2))");
            o.require(v.nontrivial, "[" + v.convention + "] coset " + (v.nontrivial ? "nontrivial" : "trivial") +
                                        ": " + v.certificate);
            o.note("[" + v.convention + "] " + std::to_string(v.generators) + " ambiguity generators of rank " +
                   std::to_string(v.ambiguity_rank));
            o.note("[" + v.convention + "] hand expansion " + render_matrix(v.displayed, r.module) + " is " +
                   (v.displayed_nontrivial ? "outside" : "inside") + " the ambiguity span");
        }
        MatrixInputs disp_in = in;
        disp_in.x3(0, 1) = disp_in.x3(0, 0);
        VanishingReport dv = vanishing_report(sys, disp_in);
        o.note(std::string("with X3 = (ua1 ua1; 0 0), the form the hand expansion uses, the vanishing condition ") +
               (dv.all_zero ? "holds" : "fails: " + dv.failures.front()));
        o.require(dt < 1.0, "runtime " + fmt_seconds(dt));
    });

    run(5, "surface matrix Massey product", [&](Outcome& o) {
        GradedAlgebra s = surface_algebra(4);
        TorusAlgebra ta(s);
        MatrixInputs in = parse_matrix_inputs(ta, read_file(data_path("surface_system.txt")));
        for (Convention c : cfg.conventions) {
            MatrixSystem sys = surface_system(ta, c);
            MatrixMasseyResult r = quantum_matrix_massey(sys, in);
            Certificate cert = coset_nontrivial(r.coset, sys.module);
            o.require(cert.nontrivial, "[" + sys.convention + "] Theta = " + render_matrix(r.theta, sys.module) +
                                           ", coset " + (cert.nontrivial ? "nontrivial" : "trivial"));
            auto tp = t_part_generators(r.coset.generators, sys.module, 2);
            PatternMatch pm = compare_span(tp, row_and_linked_patterns(sys.module, "t.a1", "t.a2", "t.b1", "t.b3"));
            o.require(pm.equal(), "[" + sys.convention + "] t-part ambiguity rank " +
                                      std::to_string(pm.computed_rank) + ", row and linked patterns rank " +
                                      std::to_string(pm.pattern_rank) + ", joint " + std::to_string(pm.joint_rank));
            MasseyCoset dc = r.coset;
            dc.representative = theta_as_displayed(sys, in).flatten();
            o.note("[" + sys.convention + "] hand expansion " +
                   render_matrix(theta_as_displayed(sys, in), sys.module) + " is " +
                   (coset_nontrivial(dc, sys.module).nontrivial ? "outside" : "inside") + " the ambiguity span");
        }
    });

    run(6, "Johnson homomorphism values", [&](Outcome& o) {
        SymplecticModule h2(2);
        TensorElement t1 = tau1_bp(h2, 1);
        o.require(t1 == tau1_bp_expansion(h2, 1), "tau1(2,1) = " + render(h2, t1));
        for (auto [g, k] : {std::pair{2, 1}, std::pair{4, 1}, std::pair{4, 2}}) {
            SymplecticModule h(g);
            TensorElement t2 = tau2_bscc(h, k);
            bool eq = !t2.is_zero() && t2 == wedge_pair_image(minus_omega_squared(h, k));
            o.require(eq, "tau2(" + std::to_string(g) + "," + std::to_string(k) + ") equals the image of -omega⊗omega (" +
                              std::to_string(t2.coords.size()) + " terms)");
        }
        for (int g = 1; g <= 4; ++g) {
            SymplecticModule h(g);
            KernelResult ker = kernel_Dk(h, 2);
            std::vector<Vec> image, joint;
            for (int a = 0; a < h.rank(); ++a)
                for (int b = a + 1; b < h.rank(); ++b)
                    for (int c = b + 1; c < h.rank(); ++c) image.push_back(tensor_coords(h, embed_wedge3(a, b, c)));
            joint = image;
            for (const auto& v : ker.basis) joint.push_back(tensor_coords(h, v));
            std::size_t ri = span_basis(image, ker.domain).size(), rj = span_basis(joint, ker.domain).size();
            std::size_t want = binom(static_cast<std::size_t>(2 * g), 3);
            o.require(ri == want && ker.dim() == want && rj == want,
                      "g=" + std::to_string(g) + ": wedge3 image rank " + std::to_string(ri) + ", kernel dim " +
                          std::to_string(ker.dim()) + ", binom " + std::to_string(want));
        }
    });

    run(7, "A-infinity property suite", [&](Outcome& o) {
        std::size_t bad_packings = 0;
        std::vector<std::string> names;
        for (const char* f : {"heisenberg.dga", "formal.dga", "nonformal.dga", "cubic.dga"}) {
            bad_packings += !ainfty_check(parse_dga(read_file(data_path(f)))).empty();
            names.push_back(f);
        }
        for (int g = 1; g <= 3; ++g) bad_packings += !ainfty_check(dg_structure(exterior_algebra(g))).empty();
        bad_packings += !ainfty_check(dg_structure(y.alg)).empty();
        bad_packings += !ainfty_check(dg_structure(surface_algebra(2))).empty();
        o.require(bad_packings == 0, "dg packings of 9 verified algebras: " + std::to_string(bad_packings) +
                                         " with nonzero residuals");

        std::mt19937_64 rng(20240601);
        std::size_t d2 = 0;
        GradedAlgebra e = exterior_algebra(2);
        GradedModule m = GradedModule::of(e);
        MultiMap mu2 = packed_product(e);
        for (int k = 0; k < 200; ++k) {
            MultiMap phi = random_cochain(m, 1 + static_cast<std::size_t>(k % 3), (k % 5) - 2, rng);
            d2 += !bracket(mu2, bracket(mu2, phi, m), m).is_zero();
        }
        o.require(d2 == 0, "d^2 = 0 on 200 seeded cochains over a rank 4 module (" + std::to_string(d2) + " failures)");

        GradedAlgebra cubic;
        AInfStructure cs = parse_dga(read_file(data_path("cubic.dga")), &cubic);
        HHClass base = universal_massey(cs, cubic);
        std::size_t moved = 0;
        for (int k = 0; k < 100; ++k) {
            MultiMap g = random_cochain(cs.module, 2, -1, rng);
            AInfStructure s2 = cs;
            s2.set(3, {}, gauge_mu3(*cs.get(3), *cs.get(2), g, cs.module));
            moved += !universal_massey(s2, cubic).equals(base);
        }
        o.require(!base.is_zero() && moved == 0, std::string("universal Massey class ") +
                                                     (base.is_zero() ? "zero" : "nonzero") + ", moved by " +
                                                     std::to_string(moved) + " of 100 gauge transformations");

        GradedAlgebra r3;
        r3.add_basis("a", 1);
        r3.add_basis("b", 1);
        r3.add_basis("c", 2);
        r3.set_product(0, 1, r3.element("c"));
        r3.set_product(1, 0, r3.element("-c"));
        AInfStructure b;
        b.module = GradedModule::of(r3);
        b.set(2, {}, packed_product(r3));
        HHClass ref = hh_class(r3, MultiMap(3, -1));
        std::size_t grid = 0, differ = 0, nonzero = 0;
        for (int alpha = -3; alpha <= 3; ++alpha)
            for (int beta = -3; beta <= 3; ++beta) {
                HomotopyData hd{Matrix::identity(3), Matrix::identity(3), Matrix(3, 3)};
                hd.h(0, 2) = alpha;
                hd.h(1, 2) = beta;
                MultiMap mu3 = homotopy_transfer_mu3(b, b.module, hd);
                ++grid;
                nonzero += !mu3.is_zero();
                differ += !hh_class(r3, mu3).equals(ref);
            }
        o.require(differ == 0, "rank 3 fixture: transferred mu3 class constant over " + std::to_string(grid) +
                                   " homotopies (" + std::to_string(nonzero) + " with nonzero mu3)");
    });

    run(8, "classical Massey products independent of choices", [&](Outcome& o) {
        struct Fixture {
            const char* file;
            const char *a3, *a2, *a1;
            bool want_nontrivial;
        };
        for (const Fixture& f : {Fixture{"formal.dga", "x1", "x1", "x2", false},
                                 Fixture{"nonformal.dga", "a", "b", "c", true}}) {
            AInfStructure s = parse_dga(read_file(data_path(f.file)));
            Transfer t = standard_homotopy(s);
            auto cls = [&](const std::string& l) {
                for (std::size_t i = 0; i < t.cohomology.size(); ++i)
                    if (t.cohomology.labels[i] == l) return unit_vec(t.cohomology.size(), i);
                throw std::invalid_argument("no class " + l);
            };
            Vec a3 = cls(f.a3), a2 = cls(f.a2), a1 = cls(f.a1);
            MasseyCoset base = classical_massey(s, t, a3, a2, a1);
            bool nontrivial = coset_nontrivial(base, t.cohomology).nontrivial;
            ChoiceFamily fam = classical_choice_family(s, t, a3, a2, a1);
            std::size_t tried = 0, same = 0;
            // every direction of the family with weights 1 and -2, then all of them together
            ClassicalChoice all;
            all.b_shift.assign(3, {});
            for (Q w : {Q(1), Q(-2)}) {
                for (std::size_t slot = 0; slot < 3; ++slot)
                    for (const auto& dir : fam.b_dirs[slot]) {
                        ClassicalChoice ch;
                        ch.b_shift.assign(3, {});
                        ch.b_shift[slot] = scaled(dir, w);
                        ++tried;
                        same += same_coset(base, classical_massey(s, t, a3, a2, a1, ch));
                        all.b_shift[slot] = all.b_shift[slot].empty() ? dir : add(all.b_shift[slot], dir);
                    }
                for (const auto& dir : fam.h1_dirs) {
                    ++tried;
                    same += same_coset(base, classical_massey(s, t, a3, a2, a1, {{}, scaled(dir, w), {}}));
                }
                for (const auto& dir : fam.h2_dirs) {
                    ++tried;
                    same += same_coset(base, classical_massey(s, t, a3, a2, a1, {{}, {}, scaled(dir, w)}));
                }
            }
            ++tried;
            same += same_coset(base, classical_massey(s, t, a3, a2, a1, all));
            std::string name = std::string(f.file) + " <" + f.a3 + "," + f.a2 + "," + f.a1 + ">";
            o.require(nontrivial == f.want_nontrivial,
                      name + " = " + base.render(t.cohomology) + ", " + (nontrivial ? "nonzero" : "zero") + " coset");
            o.require(same == tried, name + " unchanged under " + std::to_string(same) + " of " +
                                         std::to_string(tried) + " choices");
        }
    });

    run(9, "Stasheff trees and the cubical complex", [&](Outcome& o) {
        auto t0 = std::chrono::steady_clock::now();
        bool cat = true;
        for (std::size_t d = 2; d <= 7; ++d) cat &= count_trivalent(d) == catalan(d - 1);
        o.require(cat, "trivalent trees = Catalan(d-1) for d <= 7");
        bool facets = true, signs = true;
        std::size_t sign_checks = 0;
        for (std::size_t d = 3; d <= 6; ++d) {
            FaceComplex f = face_complex(d);
            Chain b = f.boundary(corolla(d));
            std::size_t slots = 0;
            for (std::size_t d1 = 2; d1 < d; ++d1) {
                slots += d1;
                std::size_t d2 = d + 1 - d1;
                for (std::size_t k = 0; k < d1; ++k) {
                    RibbonTree facet = graft(corolla(d1), k + 1, corolla(d2));
                    auto it = b.find(facet.code);
                    ++sign_checks;
                    signs &= it != b.end() && it->second == boundary_sign(d1, d2, k);
                }
            }
            facets &= b.size() == slots && slots == facet_slots(d);
        }
        o.require(facets, "facet counts = sum of d1 over admissible (d1, d2), d <= 6");
        o.require(signs, "boundary signs (-1)^{(d1-k)d2+d2+k} on " + std::to_string(sign_checks) + " facets");
        bool square = true, sub = true;
        std::size_t cells = 0;
        for (std::size_t d = 2; d <= 6; ++d) {
            CubicalComplex c = cubical_complex(d);
            SquareCheck sc = check_square(c);
            square &= sc.ok();
            cells += sc.cells;
            sub &= check_subdivision(face_complex(d), c).ok();
        }
        o.require(square, "d^2 = 0 on the signed cubical complex, " + std::to_string(cells) + " cells, d <= 6");
        o.require(sub, "cubical subdivision commutes with the boundary, d <= 6");
        double dt = seconds_since(t0);
        o.require(dt < 10.0, "runtime " + fmt_seconds(dt));
    });

    run(10, "mapping cone and the torus extension", [&](Outcome& o) {
        ConeResult c = mapping_cone_cohomology(y.alg, identity_action(y.alg));
        auto b = c.betti();
        std::string bs;
        for (auto x : b) bs += (bs.empty() ? "" : " ") + std::to_string(x);
        o.require(b == std::vector<std::size_t>{1, 1, 2, 10, 10, 2, 1, 1}, "Betti numbers " + bs);

        auto check = [&](const YData& data, const std::string& label, bool hard) {
            QuantumRing ring(data.table, IdealSpec::at_class(lat.parse_class("2F")));
            TorusAlgebra ta(data.alg);
            TorusExtension ext = torus_extension(ta, ring);
            ExtensionReport rep = verify_extension(ext.deformation, lat, ext.psi, ext.psi_tilde,
                                                   {lat.zero(), lat.parse_class("F")});
            std::string msg = label + ": " + std::to_string(rep.violations.size()) + " violations, " +
                              std::to_string(rep.report_mode.size()) + " report-mode associativity residuals";
            if (hard)
                o.require(rep.violations.empty(), msg);
            else
                o.note(msg);
            for (std::size_t i = 0; i < rep.violations.size() && i < 3; ++i)
                o.note("axiom " + std::to_string(rep.violations[i].axiom) + " at " + rep.violations[i].where + ": " +
                       rep.violations[i].detail);
            for (std::size_t i = 0; i < rep.report_mode.size() && i < 2; ++i)
                o.note("report " + rep.report_mode[i].where + ": " + rep.report_mode[i].detail);
        };
        check(y, "tabulated lists", true);
        check(build_y_from(cfg.alg_path, data_path("y_tables_corrected.gw")), "recursion-consistent ruling list",
              false);
    });

    std::cout << failures << " of 10 criteria failed\n";
    return failures;
}
