#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qfix/word.hpp"

namespace qfix {

using BigInt = boost::multiprecision::cpp_int;

// A non-erasing substitution over a finite alphabet.
class Substitution {
public:
    Substitution(Alphabet alphabet, std::vector<Word> images);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return alphabet_.size(); }
    const Word& image(Letter a) const { return images_.at(a); }
    const std::vector<Word>& images() const { return images_; }

    std::optional<std::size_t> constant_length() const { return constant_length_; }
    std::size_t max_image_length() const { return max_len_; }
    std::size_t min_image_length() const { return min_len_; }

    // M[a][b] = number of occurrences of b in the image of a.
    const std::vector<std::vector<std::uint64_t>>& incidence() const { return incidence_; }

    Letter first(Letter a) const { return images_[a].front(); }
    Letter last(Letter a) const { return images_[a].back(); }

    Word apply(const Word& w) const;
    // Image of a two-sided window. The window must reach position 0 (or end at
    // -1) so that the absolute position of the image is determined.
    Window apply(const Window& w) const;

    // Signed length of the image of w[0, s) (s >= 0) or minus that of w[s, 0).
    std::int64_t image_offset(const Window& w, std::int64_t s) const;

    bool operator==(const Substitution& o) const {
        return alphabet_ == o.alphabet_ && images_ == o.images_;
    }

private:
    Alphabet alphabet_;
    std::vector<Word> images_;
    std::optional<std::size_t> constant_length_;
    std::size_t max_len_ = 0;
    std::size_t min_len_ = 0;
    std::vector<std::vector<std::uint64_t>> incidence_;
};

Substitution identity_substitution(const Alphabet& alpha);
// outer ∘ inner
Substitution compose(const Substitution& outer, const Substitution& inner);
Substitution power(const Substitution& phi, unsigned n);

// The restriction to a letter set closed under the substitution. The
// restricted alphabet keeps the original tokens in their original order.
Substitution restrict(const Substitution& phi, const std::vector<Letter>& letters);

// Letter-to-letter map between two alphabets.
class Coding {
public:
    Coding(Alphabet source, Alphabet target, std::vector<Letter> map);

    const Alphabet& source() const { return source_; }
    const Alphabet& target() const { return target_; }
    Letter operator()(Letter a) const { return map_.at(a); }
    const std::vector<Letter>& map() const { return map_; }

    Word apply(const Word& w) const;
    Window apply(const Window& w) const;

private:
    Alphabet source_;
    Alphabet target_;
    std::vector<Letter> map_;
};

Coding identity_coding(const Alphabet& alpha);

// Letter map a -> f[a]; composition (f ∘ g)[a] = f[g[a]].
using LetterMap = std::vector<Letter>;
LetterMap compose_maps(const LetterMap& f, const LetterMap& g);
LetterMap identity_map(std::size_t n);

struct ProlongabilityProfile {
    LetterMap first_letter;  // F
    LetterMap last_letter;   // G
    std::vector<Letter> right_prolongable;
    std::vector<Letter> left_prolongable;
    unsigned ambi_idempotent_power = 1;  // least n with F^2n = F^n and G^2n = G^n
    BigInt factorial_bound;              // |A|!
};

struct Analysis {
    ProlongabilityProfile profile;
    bool growing = false;
    std::vector<Letter> bounded_letters;
    bool primitive = false;
    std::optional<std::size_t> constant_length;
};

ProlongabilityProfile prolongability(const Substitution& phi);
Analysis analyze(const Substitution& phi);
bool is_growing(const Substitution& phi);
bool is_primitive(const Substitution& phi);
bool is_ambi_idempotent(const Substitution& phi);

// Least set containing b and closed under taking letters of images.
std::vector<Letter> reachable_alphabet(const Substitution& phi, Letter b);

}  // namespace qfix
