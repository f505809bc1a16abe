#include "qfix/word.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "qfix/error.hpp"

namespace qfix {

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw Error("alphabet must not be empty");
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        const auto& t = tokens_[i];
        if (t.empty()) throw Error("empty letter token");
        if (std::any_of(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }))
            throw Error("letter token contains whitespace: '" + t + "'");
        if (!index_.emplace(t, static_cast<Letter>(i)).second)
            throw Error("duplicate letter '" + t + "'");
        if (t.size() != 1) compact_ = false;
    }
}

std::optional<Letter> Alphabet::find(std::string_view tok) const {
    auto it = index_.find(std::string(tok));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Letter Alphabet::at(std::string_view tok) const {
    if (auto a = find(tok)) return *a;
    throw Error("undeclared letter '" + std::string(tok) + "'");
}

std::string Alphabet::render(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!compact_ && i) out += ' ';
        out += token(w[i]);
    }
    return out;
}

Word Alphabet::parse_word(std::string_view text) const {
    Word w;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        if (auto a = find(tok)) {
            w.push_back(*a);
        } else if (compact_) {
            for (char c : tok) w.push_back(at(std::string_view(&c, 1)));
        } else {
            throw Error("undeclared letter '" + tok + "'");
        }
    }
    return w;
}

Window Window::slice(std::int64_t a, std::int64_t b) const {
    if (a > b) return Window{a, {}};
    if (!covers(a) || !covers(b)) throw Error("window slice out of range");
    Window out{a, {}};
    out.letters.assign(letters.begin() + (a - lo), letters.begin() + (b - lo + 1));
    return out;
}

std::string render_window(const Alphabet& alpha, const Window& w) {
    return "pos=" + std::to_string(w.lo) + " " + alpha.render(w.letters);
}

Window parse_window(const Alphabet& alpha, std::string_view text) {
    Window w;
    auto s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    if (s.rfind("pos=", 0) == 0) {
        s.remove_prefix(4);
        const char* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(s.data(), end, w.lo);
        if (ec != std::errc{}) throw Error("bad window position in '" + std::string(text) + "'");
        s.remove_prefix(static_cast<std::size_t>(p - s.data()));
    }
    w.letters = alpha.parse_word(s);
    return w;
}

bool agree_on_overlap(const Window& a, const Window& b) {
    const auto lo = std::max(a.lo, b.lo);
    const auto hi = std::min(a.hi(), b.hi());
    for (auto p = lo; p <= hi; ++p)
        if (a.at(p) != b.at(p)) return false;
    return true;
}

std::optional<std::size_t> smallest_period(const Word& w, std::size_t limit) {
    for (std::size_t p = 1; p <= limit && p < w.size(); ++p) {
        bool ok = true;
        for (std::size_t i = 0; i + p < w.size(); ++i) {
            if (w[i] != w[i + p]) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    return std::nullopt;
}

std::vector<Word> factors_of_length(const Word& w, std::size_t len) {
    std::vector<Word> out;
    if (len > w.size()) return out;
    for (std::size_t i = 0; i + len <= w.size(); ++i)
        out.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(i),
                         w.begin() + static_cast<std::ptrdiff_t>(i + len));
    return out;
}

}  // namespace qfix
