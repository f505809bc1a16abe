#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfix/desub.hpp"
#include "qfix/kernel.hpp"
#include "qfix/language.hpp"
#include "qfix/quasifix.hpp"

namespace qfix {

// The r-block substitution over the alphabet of length-r words of the
// language: the image of w is the list of the first |phi(w_0)| length-r
// factors of phi(w).
struct BlockPresentation {
    unsigned r = 1;
    std::vector<Word> blocks;  // letter id -> word over the base alphabet
    std::map<Word, Letter> index;
    Substitution hat;
};

BlockPresentation block_substitution(const Substitution& phi, unsigned r);

// Letters of iota_r(w): the successive length-r factors. Throws Error when a
// factor is not a block letter.
Word iota(const BlockPresentation& bp, const Word& w);
Window iota(const BlockPresentation& bp, const Window& w);

struct BlockLawReport {
    bool ok = true;
    std::size_t samples = 0;
    std::size_t checks = 0;
    std::vector<std::string> failures;
};

// iota_r(phi^n(w)) = hat^n(iota_r(w)) for n <= max_power, language equality
// up to max_len, and transfer of primitivity and constant length.
BlockLawReport verify_block_laws(const Substitution& phi, unsigned r, const std::vector<Window>& samples,
                                 unsigned max_power = 3, std::size_t max_len = 10);

// Deterministic random windows of length `len` from the language, placed at
// varying offsets around 0.
std::vector<Window> sample_windows(const Substitution& phi, std::size_t count, std::size_t len, unsigned seed);

// Sliding block code of radius n: y_i = rule(x_{[i-n, i+n]}).
struct SlidingBlockCode {
    unsigned radius = 0;
    Alphabet source;
    Alphabet target;
    std::map<Word, Letter> rule;

    Letter operator()(const Word& w) const;
    // Window over [lo + n, hi - n].
    Window apply(const Window& x) const;
};

// `code radius=<n>` then `rule <w> -> <tok>` lines covering every length
// 2n+1 word of the language.
SlidingBlockCode parse_sliding_code(const Substitution& phi, std::string_view text);
SlidingBlockCode code_from_coding(const Substitution& phi, const Coding& tau);

// iota_r(z) as a quasi-fixed point of the r-block substitution, same relation.
Qfp lift_qfp(const Substitution& phi, const BlockPresentation& bp, const Qfp& q);

// Exact handle on pi(z): a kernel automaton on the (2n+1)-block lift,
// shifted so that position i reads x_{[i-n, i+n]}.
struct AutomaticHandle {
    BlockPresentation presentation;
    Qfp lifted;
    KernelAutomaton automaton;

    Letter at(std::int64_t n) const { return eval(automaton, n); }
    Window window(std::int64_t lo, std::int64_t hi) const { return eval_window(automaton, lo, hi); }
};

AutomaticHandle push_qfp(const Substitution& phi, const SlidingBlockCode& code, const Qfp& q);

// Windows u of the language over [lo - n, hi + n] with code(u) = target.
struct FiberResult {
    std::vector<Window> windows;
    bool truncated = false;  // cap reached
    bool exact_language = true;  // false: membership checked on factors only
};

FiberResult fiber_windows(const Substitution& phi, const SlidingBlockCode& code, const Window& target,
                          std::size_t cap = 100000);

struct FiberBranch {
    Window window;
    Detection kind = Detection::NoRepetition;
    std::optional<Qfp> qfp;
};

struct FiberCertificate {
    bool target_periodic = false;
    bool truncated = false;
    std::vector<FiberBranch> branches;
};

// Runs detect_qfp on every preimage window of the target window.
FiberCertificate certify_fiber_qfp(const Substitution& phi, const SlidingBlockCode& code, const Window& target,
                                   std::size_t depth, std::size_t cap = 64);

struct MinimalSubsystem {
    Letter b = 0;
    std::vector<Letter> letters;  // A_b
    Substitution restricted;
    std::vector<Letter> coded;    // tau(A_b) when a coding is given
};

struct SubsystemReport {
    unsigned power = 1;  // subsystems are read off phi^power
    std::vector<MinimalSubsystem> subsystems;
};

SubsystemReport minimal_subsystems(const Substitution& phi, const Coding* tau = nullptr);

}  // namespace qfix
