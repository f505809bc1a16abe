#pragma once

#include <map>
#include <set>
#include <utility>

#include "qfix/substitution.hpp"

namespace qfix {

using PairSet = std::set<std::pair<Letter, Letter>>;
using WordSet = std::set<Word>;

// Length-two words of the two-sided subshift X_phi: the largest set S of
// reachable pairs such that every pair in S is a factor of phi(ab) for some
// ab in S.
PairSet pair_language(const Substitution& phi);

// All words of length 1..max_len in the language of X_phi.
WordSet language(const Substitution& phi, std::size_t max_len);
bool contains(const Substitution& phi, const Word& w);

// Memoized language queries for one substitution. Not thread-safe; keep one
// per thread.
class LanguageTable {
public:
    explicit LanguageTable(Substitution phi) : phi_(std::move(phi)) {}

    const Substitution& substitution() const { return phi_; }
    const PairSet& pairs();
    std::set<Letter> letters();
    // Words of exactly `len` letters.
    const WordSet& words_of_length(std::size_t len);
    bool contains(const Word& w);
    // Every factor of length min(|w|, check_len) lies in the language. Exact
    // when |w| <= check_len.
    bool locally_admissible(const Word& w, std::size_t check_len);

private:
    void ensure(std::size_t len);

    Substitution phi_;
    std::optional<PairSet> pairs_;
    std::size_t computed_ = 0;
    std::map<std::size_t, WordSet> by_length_;
};

}  // namespace qfix
