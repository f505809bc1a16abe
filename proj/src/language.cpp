#include "qfix/language.hpp"

#include <deque>

namespace qfix {

namespace {

void add_pairs_of(const Word& w, PairSet& out) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) out.emplace(w[i], w[i + 1]);
}

PairSet pairs_of_image(const Substitution& phi, const PairSet& p) {
    PairSet out;
    for (auto [a, b] : p) add_pairs_of(phi.apply(Word{a, b}), out);
    return out;
}

}  // namespace

PairSet pair_language(const Substitution& phi) {
    // Reachable pairs: least fixpoint from the pairs inside single images.
    PairSet reach;
    for (Letter a = 0; a < phi.size(); ++a) add_pairs_of(phi.image(a), reach);
    for (;;) {
        PairSet next = reach;
        for (const auto& p : pairs_of_image(phi, reach)) next.insert(p);
        if (next == reach) break;
        reach = std::move(next);
    }
    // Greatest fixpoint inside the reachable pairs: a pair survives when it
    // sits in the image of a surviving pair and extends to both sides by
    // surviving pairs.
    PairSet s = reach;
    for (;;) {
        const PairSet img = pairs_of_image(phi, s);
        std::set<Letter> starts, ends;
        for (auto [a, b] : s) {
            starts.insert(a);
            ends.insert(b);
        }
        PairSet next;
        for (const auto& p : s)
            if (img.count(p) && ends.count(p.first) && starts.count(p.second)) next.insert(p);
        if (next == s) break;
        s = std::move(next);
    }
    return s;
}

const PairSet& LanguageTable::pairs() {
    if (!pairs_) pairs_ = pair_language(phi_);
    return *pairs_;
}

std::set<Letter> LanguageTable::letters() {
    std::set<Letter> out;
    for (auto [a, b] : pairs()) {
        out.insert(a);
        out.insert(b);
    }
    return out;
}

void LanguageTable::ensure(std::size_t len) {
    if (len <= computed_) return;
    // The set of factors of length <= L of phi(u) only depends on the factors
    // of u of length <= L, so the language is the closure of the pair set
    // under u -> factors_{<=L}(phi(u)).
    WordSet all;
    std::deque<Word> work;
    auto push = [&](Word w) {
        if (all.insert(w).second) work.push_back(std::move(w));
    };
    for (auto [a, b] : pairs()) {
        push(Word{a});
        push(Word{b});
        if (len >= 2) push(Word{a, b});
    }
    while (!work.empty()) {
        Word u = std::move(work.front());
        work.pop_front();
        const Word img = phi_.apply(u);
        for (std::size_t l = 1; l <= len; ++l)
            for (auto& f : factors_of_length(img, l)) push(std::move(f));
    }
    by_length_.clear();
    for (auto& w : all) by_length_[w.size()].insert(w);
    for (std::size_t l = 1; l <= len; ++l) by_length_[l];
    computed_ = len;
}

const WordSet& LanguageTable::words_of_length(std::size_t len) {
    ensure(len);
    return by_length_[len];
}

bool LanguageTable::contains(const Word& w) {
    if (w.empty()) return true;
    return words_of_length(w.size()).count(w) > 0;
}

bool LanguageTable::locally_admissible(const Word& w, std::size_t check_len) {
    if (w.size() <= check_len) return contains(w);
    const auto& words = words_of_length(check_len);
    for (std::size_t i = 0; i + check_len <= w.size(); ++i) {
        Word f(w.begin() + static_cast<std::ptrdiff_t>(i),
               w.begin() + static_cast<std::ptrdiff_t>(i + check_len));
        if (!words.count(f)) return false;
    }
    return true;
}

WordSet language(const Substitution& phi, std::size_t max_len) {
    LanguageTable table(phi);
    WordSet out;
    for (std::size_t l = 1; l <= max_len; ++l) {
        const auto& ws = table.words_of_length(l);
        out.insert(ws.begin(), ws.end());
    }
    return out;
}

bool contains(const Substitution& phi, const Word& w) {
    LanguageTable table(phi);
    return table.contains(w);
}

}  // namespace qfix
