#pragma once
// Conversions between library values and the plain strings of oracles.hpp.

#include <string>

#include "oracles.hpp"
#include "qfix/parse.hpp"
#include "qfix/substitution.hpp"

namespace testing_support {

inline std::string str(const qfix::Word& w) {
    std::string s;
    for (qfix::Letter a : w) s += char('0' + a);
    return s;
}

inline oracle::Win win(const qfix::Window& w) { return {w.lo, str(w.letters)}; }

inline oracle::Images images(const qfix::Substitution& phi) {
    oracle::Images out;
    for (const auto& w : phi.images()) out.push_back(str(w));
    return out;
}

inline qfix::Substitution sub(const std::string& text) { return qfix::parse_substitution(text).substitution; }

inline qfix::Substitution thue_morse() {
    return sub("alphabet: 0 1\nmap 0 -> 0 1\nmap 1 -> 1 0\n");
}

}  // namespace testing_support
