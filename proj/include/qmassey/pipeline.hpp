#pragma once

#include "qmassey/massey.hpp"
#include "qmassey/y.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qm {

struct RunConfig {
    std::string alg_path, gw_path, tables_path, inputs_path;
    std::string pivot = "2F";
    std::vector<Convention> conventions{Convention::PaperTable, Convention::PaperTheorem};

    // bundled files under data_dir()
    static RunConfig bundled();
};

struct Stage {
    explicit Stage(std::string n = {}) : name(std::move(n)) {}
    std::string name;
    bool ok = true;
    bool halting = true; // a failure stops the run
    std::vector<std::string> lines;
};

struct ConventionVerdict {
    std::string convention;
    MatrixElement theta;
    std::size_t generators = 0, ambiguity_rank = 0;
    bool nontrivial = false;
    std::string certificate;
    // the expansion as written by hand, see theta_as_displayed
    MatrixElement displayed;
    bool displayed_nontrivial = false;
    std::string displayed_certificate;
};

struct Theorem1Run {
    std::vector<Stage> stages;
    std::string halted_at; // empty when every halting stage passed
    std::vector<ConventionVerdict> verdicts;
    GradedModule module;

    bool completed() const { return halted_at.empty(); }
    // every stage passed and Θ is nontrivial under each convention
    bool all_passed() const;
    std::string transcript() const;
};

Theorem1Run replicate_theorem1(const RunConfig& cfg);

} // namespace qm
