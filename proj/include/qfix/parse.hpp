#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qfix/substitution.hpp"

namespace qfix {

struct ParseOptions {
    bool allow_nongrowing = false;
};

struct SubstitutionFile {
    Substitution substitution;
    std::optional<Coding> coding;
};

// Line-oriented format; '#' starts a comment.
//
//   alphabet: 0 1
//   map 0 -> 0 1
//   map 1 -> 1 0
//   coding 0 -> a        (optional; target alphabet in order of first use)
SubstitutionFile parse_substitution(std::string_view text, const ParseOptions& opts = {});
SubstitutionFile load_substitution(const std::string& path, const ParseOptions& opts = {});

std::string format_substitution(const Substitution& phi, const Coding* coding = nullptr);

std::string read_file(const std::string& path);

}  // namespace qfix
