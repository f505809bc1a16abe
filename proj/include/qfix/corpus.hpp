#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfix/blocks.hpp"
#include "qfix/quasifix.hpp"

namespace qfix {

struct NamedSubstitution {
    std::string name;
    std::string text;  // substitution-file contents
    Substitution phi;
    std::optional<Coding> coding;
};

// thue-morse, remark, fiber, r-example, appendix, constant, fibonacci, club-base
std::vector<std::string> corpus_names();
NamedSubstitution corpus_entry(const std::string& name);
std::vector<NamedSubstitution> corpus();

// A length-5 substitution phi with a nonperiodic point x fixed by phi^2
// (phi has no left-prolongable letter, so no point is fixed by phi itself),
// and the substitution theta on {c} + A + A' with A' the 2-blocks of phi:
//   theta(c) = c c a a' c, theta = phi on A, theta = phi-hat_2 on A'.
// The coding sends c to c, A to itself and a 2-block to its second letter.
struct ClubExample {
    Substitution base;
    bool used_fallback = false;  // base needed the second candidate
    Qfp x;                       // point of base
    BlockPresentation blocks;
    Substitution theta;
    Coding tau;
    Qfp x_shifted;  // T(x), read in theta
    Qfp x_lifted;   // iota_2(x), read in theta
};

ClubExample club_example();

struct ExampleCheck {
    std::string anchor;
    bool ok = false;
    std::string detail;
};

struct ExampleReport {
    std::string name;
    std::string title;
    std::vector<ExampleCheck> checks;
    bool ok() const;
};

// thue-morse, remark, fiber, r-example, appendix, club
std::vector<std::string> paper_example_names();
std::vector<ExampleReport> run_paper_examples(const std::optional<std::string>& only = std::nullopt);

}  // namespace qfix
