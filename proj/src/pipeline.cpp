#include "qmassey/pipeline.hpp"

#include <sstream>

namespace qm {

RunConfig RunConfig::bundled() {
    RunConfig c;
    c.alg_path = data_path("y.alg");
    c.gw_path = data_path("y_tables.gw");
    c.tables_path = data_path("y_quantum_tables.txt");
    c.inputs_path = data_path("main_system.txt");
    return c;
}

bool Theorem1Run::all_passed() const {
    if (!completed() || verdicts.empty()) return false;
    for (const auto& s : stages)
        if (!s.ok) return false;
    for (const auto& v : verdicts)
        if (!v.nontrivial) return false;
    return true;
}

std::string Theorem1Run::transcript() const {
    std::ostringstream os;
    for (const auto& s : stages) {
        os << "== " << s.name << ": " << (s.ok ? "ok" : (s.halting ? "FAILED" : "failed (reported)")) << "\n";
        for (const auto& l : s.lines) os << "   " << l << "\n";
    }
    if (!completed()) os << "halted at " << halted_at << "\n";
    for (const auto& v : verdicts)
        os << "verdict [" << v.convention << "]: " << (v.nontrivial ? "nontrivial" : "trivial") << "\n";
    return os.str();
}

namespace {

std::string display_terms(const GradedModule& m, const VanishingEntry& e) {
    std::string out;
    for (std::size_t i = 0; i < e.terms.size(); ++i) out += (i ? " + (" : "(") + m.render(e.terms[i].value) + ")";
    return out + " = " + m.render(e.total);
}

} // namespace

Theorem1Run replicate_theorem1(const RunConfig& cfg) {
    Theorem1Run run;
    auto halt = [&](Stage& s, const std::string& why) {
        s.ok = false;
        s.lines.push_back(why);
        run.stages.push_back(s);
        run.halted_at = s.name;
        return run;
    };

    Stage st{"build_y"};
    YData y;
    try {
        y = build_y_from(cfg.alg_path, cfg.gw_path);
    } catch (const std::exception& e) {
        return halt(st, e.what());
    }
    auto viol = verify_algebra(y.alg);
    if (!viol.empty()) return halt(st, viol.front().kind + ": " + viol.front().detail);
    const HomologyLattice& lat = *y.alg.lattice;
    st.lines.push_back("H*(Y) rank " + std::to_string(y.alg.size()) + ", " + std::to_string(y.table.entries.size()) +
                       " stored three-point invariants");
    run.stages.push_back(st);

    Class pivot;
    try {
        pivot = lat.parse_class(cfg.pivot);
    } catch (const std::exception& e) {
        Stage s{"pivot"};
        return halt(s, e.what());
    }

    Stage pd{"pd_consistency"};
    QuantumRing full(y.table, IdealSpec::at_level(2));
    std::vector<Class> listed{lat.parse_class("F"), lat.parse_class("T"), lat.parse_class("R")};
    std::vector<PDMismatch> pdm;
    try {
        pdm = pd_roundtrip(full, listed);
    } catch (const std::exception& e) {
        return halt(pd, e.what());
    }
    if (!pdm.empty()) {
        const auto& m = pdm.front();
        return halt(pd, std::to_string(pdm.size()) + " mismatches, first " + y.table.describe(m.cls, m.insertions) +
                            ": stored " + to_string(m.stored) + ", computed " + to_string(m.computed));
    }
    pd.lines.push_back("every stored invariant of F, T, R equals the pairing of the rebuilt product");
    run.stages.push_back(pd);

    Stage tab{"printed_tables"};
    tab.halting = false;
    try {
        auto cells = parse_star_tables(y.alg, read_file(cfg.tables_path));
        auto mism = compare_tables(full, cells);
        tab.ok = mism.empty();
        tab.lines.push_back(std::to_string(cells.size()) + " printed cells, " + std::to_string(mism.size()) +
                            " disagree with the rebuilt products");
        for (std::size_t i = 0; i < mism.size() && i < 3; ++i) {
            const auto& c = mism[i].cell;
            tab.lines.push_back(y.alg.labels[c.x] + " *_" + lat.class_name(c.cls) + " " + y.alg.labels[c.y] +
                                ": printed " + c.text + ", rebuilt " + y.alg.render(mism[i].computed));
        }
    } catch (const std::exception& e) {
        tab.ok = false;
        tab.lines.push_back(e.what());
    }
    auto div = divisor_consistency(y.table);
    if (!div.empty()) {
        tab.ok = false;
        tab.lines.push_back(std::to_string(div.size()) + " stored invariants conflict with the divisor axiom");
    }
    run.stages.push_back(tab);

    Stage tor{"torus_product"};
    TorusAlgebra ta(y.alg);
    QuantumRing ring(y.table, IdealSpec::at_class(pivot));
    std::string classes;
    for (const auto& c : ring.classes) classes += (classes.empty() ? "" : ", ") + lat.class_name(c);
    tor.lines.push_back("H*(Y)[t]/(t^2) of rank " + std::to_string(ta.alg.size()) + ", classes outside I_" +
                        cfg.pivot + ": " + classes);
    run.stages.push_back(tor);
    run.module = GradedModule::of(ta.alg);

    Stage van{"vanishing_report"};
    MatrixInputs in;
    try {
        in = parse_matrix_inputs(ta, read_file(cfg.inputs_path));
    } catch (const std::exception& e) {
        return halt(van, e.what());
    }
    MatrixSystem sys0 = y_main_system(ta, ring, cfg.conventions.front(), pivot);
    VanishingReport vr = vanishing_report(sys0, in);
    for (const auto& dsp : vr.displays)
        van.lines.push_back(dsp.pair + " at " + dsp.cls + " = " + render_matrix(dsp.product, run.module) +
                            (dsp.class_vanishes ? " (product of the class is identically zero)" : ""));
    for (const auto& e : vr.entries)
        van.lines.push_back("  cancellation in " + e.pair + " at " + e.cls + ", entry (" + std::to_string(e.i + 1) + "," +
                            std::to_string(e.j + 1) + "): " + display_terms(run.module, e));
    if (!vr.all_zero) return halt(van, vr.failures.front());
    van.lines.push_back("all products X3*X2 and X2*X1 vanish at every class outside the ideal");
    run.stages.push_back(van);

    Stage mm{"quantum_matrix_massey"};
    for (Convention c : cfg.conventions) {
        MatrixSystem sys = y_main_system(ta, ring, c, pivot);
        MatrixMasseyResult r = quantum_matrix_massey(sys, in);
        ConventionVerdict v;
        v.convention = sys.convention;
        v.theta = r.theta;
        v.generators = r.coset.generators.size();
        v.ambiguity_rank = r.coset.basis().size();
        Certificate cert = coset_nontrivial(r.coset, sys.module);
        v.nontrivial = cert.nontrivial;
        v.certificate = cert.text;
        v.displayed = theta_as_displayed(sys, in);
        MasseyCoset disp = r.coset;
        disp.representative = v.displayed.flatten();
        Certificate dc = coset_nontrivial(disp, sys.module);
        v.displayed_nontrivial = dc.nontrivial;
        v.displayed_certificate = dc.text;
        mm.lines.push_back("[" + v.convention + "] entries of degree " + std::to_string(r.degree) +
                           ", Theta = " + render_matrix(r.theta, sys.module));
        mm.lines.push_back("[" + v.convention + "] ambiguity: " + std::to_string(v.generators) + " generators, rank " +
                           std::to_string(v.ambiguity_rank));
        mm.lines.push_back("[" + v.convention + "] coset " + (v.nontrivial ? "nontrivial" : "trivial") + ": " +
                           v.certificate);
        mm.lines.push_back("[" + v.convention + "] hand expansion " + render_matrix(v.displayed, sys.module) + " is " +
                           (v.displayed_nontrivial ? "outside" : "inside") + " the ambiguity span");
        if (!v.nontrivial) mm.ok = false;
        run.verdicts.push_back(v);
    }
    mm.halting = false;
    run.stages.push_back(mm);
    return run;
}

} // namespace qm
