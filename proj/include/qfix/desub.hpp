#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfix/kadic.hpp"
#include "qfix/language.hpp"
#include "qfix/quasifix.hpp"

namespace qfix {

// w = T^c(phi(pred)) on the window, with 0 <= c < |phi(pred_0)|. Position 0
// of pred is the letter whose image holds position 0 of w.
struct DesubStep {
    std::int64_t c = 0;
    Window pred;
    bool operator==(const DesubStep&) const = default;
};

// Every consistent step, ordered by c then predecessor letters. Empty when w
// is not in the language (or shorter than one image). Predecessors are
// checked for admissibility on factors of length `check_len`.
std::vector<DesubStep> desubstitute_window(const Substitution& phi, const Window& w);
std::vector<DesubStep> desubstitute_window(LanguageTable& lang, const Window& w, std::size_t check_len = 12);

// Chain of a quasi-fixed point z: z^0 = z, z^j = T^{c_j}(phi(z^{j+1})),
// eventually periodic. Chain element j is T^{S}(phi^{J}(y)) for the seed
// point y and states[j] = (J, S).
struct DesubChain {
    unsigned base = 2;
    std::vector<unsigned> digits;
    std::vector<std::pair<unsigned, std::int64_t>> states;
    std::size_t transient = 0;
    std::size_t cycle = 0;

    std::size_t next(std::size_t j) const { return j + 1 == transient + cycle ? transient : j + 1; }
};

DesubChain desub_chain(const Substitution& phi, const Qfp& q);

// Reads letters of chain elements without materializing them.
class ChainView {
public:
    ChainView(const Substitution& phi, const Qfp& q);

    const DesubChain& chain() const { return chain_; }
    Letter letter(std::size_t j, std::int64_t n);
    Window window(std::size_t j, std::int64_t lo, std::int64_t hi);

private:
    Letter seed_letter(std::int64_t n);

    Substitution phi_;
    Qfp q_;
    DesubChain chain_;
    std::vector<Substitution> powers_;  // phi^0 .. phi^m
    Window seed_;
};

struct DesubDigits {
    DigitExpansion digits;
    bool periodic = false;  // shift-periodic point: digits need not be unique
};

DesubDigits desub_digits(const Substitution& phi, const Qfp& q);

// c / (1 - k^m) for the relation z = T^c(phi^m(z)).
KAdicRational kappa(const Substitution& phi, const Qfp& q);

enum class TraceStop { Depth, TooShort, Ambiguous, NotInLanguage };

struct DesubTrace {
    std::vector<unsigned> digits;
    std::vector<Window> windows;      // windows[0] is the input
    TraceStop stop = TraceStop::Depth;
    std::vector<DesubStep> branches;  // surviving steps when ambiguous
};

DesubTrace desub_trace(const Substitution& phi, const Window& w, std::size_t depth);

enum class Detection { Found, Ambiguous, NoRepetition, NotInLanguage };

struct DetectResult {
    Detection kind = Detection::NoRepetition;
    std::optional<Qfp> qfp;
    Relation relation;
    std::size_t preperiod = 0;  // level at which the repetition starts
    DesubTrace trace;
};

DetectResult detect_qfp(const Substitution& phi, const Window& w, std::size_t depth);

std::string to_string(Detection d);

struct FactorizationCount {
    std::size_t count = 0;
    std::vector<std::vector<std::int64_t>> witnesses;  // absolute cut positions
    std::size_t factorizations = 0;                    // all cut sets found
    bool periodic = false;                             // period <= span/2 found
    bool truncated = false;                            // search cap reached
};

// Largest family of pairwise disjoint W-factorizations visible on the window.
// A cut at position p separates p-1 and p. The first piece is a proper suffix
// of a word of W and the last one a proper prefix.
FactorizationCount disjoint_factorization_count(const Window& y, const std::vector<Word>& W);

}  // namespace qfix
