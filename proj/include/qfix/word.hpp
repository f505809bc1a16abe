#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qfix {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

// Ordered set of letter tokens. Letters are dense ids into `tokens()`.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> tokens);

    std::size_t size() const { return tokens_.size(); }
    const std::string& token(Letter a) const { return tokens_.at(a); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    std::optional<Letter> find(std::string_view tok) const;
    Letter at(std::string_view tok) const;  // throws on unknown token

    // True when every token is one character, so words print without separators.
    bool compact() const { return compact_; }

    std::string render(const Word& w) const;
    // Accepts whitespace-separated tokens, or a run of single-character
    // tokens when the alphabet is compact.
    Word parse_word(std::string_view text) const;

    bool operator==(const Alphabet& o) const { return tokens_ == o.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, Letter> index_;
    bool compact_ = true;
};

// Finite piece of a two-sided sequence, carrying absolute positions.
struct Window {
    std::int64_t lo = 0;
    Word letters;

    std::int64_t hi() const { return lo + static_cast<std::int64_t>(letters.size()) - 1; }
    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }
    bool covers(std::int64_t pos) const { return pos >= lo && pos <= hi(); }
    bool covers(std::int64_t a, std::int64_t b) const { return a > b || (covers(a) && covers(b)); }
    Letter at(std::int64_t pos) const { return letters.at(static_cast<std::size_t>(pos - lo)); }
    Window slice(std::int64_t a, std::int64_t b) const;

    bool operator==(const Window&) const = default;
};

// `pos=<lo> <letters>`
std::string render_window(const Alphabet& alpha, const Window& w);
Window parse_window(const Alphabet& alpha, std::string_view text);

// Letters on which both windows are defined agree.
bool agree_on_overlap(const Window& a, const Window& b);

// Smallest p in [1, limit] with w[i] == w[i+p] everywhere, if any.
std::optional<std::size_t> smallest_period(const Word& w, std::size_t limit);

std::vector<Word> factors_of_length(const Word& w, std::size_t len);

}  // namespace qfix
