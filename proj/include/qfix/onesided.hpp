#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfix/desub.hpp"
#include "qfix/quasifix.hpp"

namespace qfix {

// The one-sided sequence (z_{start+n})_{n>=0} of a two-sided point z.
struct OneSidedQfp {
    Qfp parent;
    std::int64_t start = 0;
};

Word materialize(const Substitution& phi, const OneSidedQfp& x, std::size_t len);

// The one-sided point x with x = T^c(phi^m(x)), grown from a prefix v.
// For c >= 0 this needs |phi^m(v)| > c + |v|; for c < 0, x = w phi^m(x)
// with w the first |c| letters of v.
Word prolong_one_sided(const Substitution& phi, unsigned m, std::int64_t c, const Word& v, std::size_t len);

// A two-sided quasi-fixed point with x as a suffix, searched among the seeds
// of periods m, 2m, ... up to the ambi-idempotent power of phi^m. The match
// is checked on `check_len` letters. nullopt when nothing fits.
std::optional<OneSidedQfp> prolong_two_sided(const Substitution& phi, unsigned m, std::int64_t c, const Word& v,
                                             std::size_t check_len = 1000);

// All (c, pred) with y = T^c(phi(pred)) on the prefix; pred starts at 0.
std::vector<DesubStep> onesided_desub(const Substitution& phi, const Word& y);

// Pairwise disjoint W-interpretations of a one-sided prefix; the first block
// is a proper suffix of a word of W.
FactorizationCount interpretation_count(const Word& y, const std::vector<Word>& W);

// `start=<p> <letters>`
std::string render_one_sided(const Alphabet& alpha, const Word& y, std::int64_t start);

}  // namespace qfix
