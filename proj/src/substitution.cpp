#include "qfix/substitution.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qfix/error.hpp"

namespace qfix {

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
    if (images_.size() != alphabet_.size())
        throw Error("substitution needs exactly one image per letter");
    const auto n = alphabet_.size();
    incidence_.assign(n, std::vector<std::uint64_t>(n, 0));
    min_len_ = images_.empty() ? 0 : images_.front().size();
    for (Letter a = 0; a < n; ++a) {
        const auto& img = images_[a];
        if (img.empty()) throw Error("empty image for letter '" + alphabet_.token(a) + "'");
        for (Letter b : img) {
            if (b >= n) throw Error("image letter out of range");
            ++incidence_[a][b];
        }
        max_len_ = std::max(max_len_, img.size());
        min_len_ = std::min(min_len_, img.size());
    }
    if (max_len_ == min_len_) constant_length_ = max_len_;
}

Word Substitution::apply(const Word& w) const {
    Word out;
    if (constant_length_) out.reserve(w.size() * *constant_length_);
    for (Letter a : w) {
        const auto& img = images_.at(a);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

Window Substitution::apply(const Window& w) const {
    if (w.lo > 0 || w.hi() < -1)
        throw Error("window must reach position 0 to be substituted");
    Window out;
    out.letters = apply(w.letters);
    out.lo = image_offset(w, w.lo);
    return out;
}

std::int64_t Substitution::image_offset(const Window& w, std::int64_t s) const {
    std::int64_t len = 0;
    if (s >= 0) {
        for (std::int64_t p = 0; p < s; ++p) len += static_cast<std::int64_t>(images_.at(w.at(p)).size());
        return len;
    }
    for (std::int64_t p = s; p < 0; ++p) len += static_cast<std::int64_t>(images_.at(w.at(p)).size());
    return -len;
}

Substitution identity_substitution(const Alphabet& alpha) {
    std::vector<Word> images;
    for (Letter a = 0; a < alpha.size(); ++a) images.push_back({a});
    return Substitution(alpha, std::move(images));
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
    if (!(outer.alphabet() == inner.alphabet())) throw Error("alphabet mismatch in composition");
    std::vector<Word> images;
    images.reserve(inner.size());
    for (const auto& img : inner.images()) images.push_back(outer.apply(img));
    return Substitution(inner.alphabet(), std::move(images));
}

Substitution power(const Substitution& phi, unsigned n) {
    Substitution result = identity_substitution(phi.alphabet());
    for (unsigned i = 0; i < n; ++i) result = compose(phi, result);
    return result;
}

Substitution restrict(const Substitution& phi, const std::vector<Letter>& letters) {
    std::vector<Letter> sorted = letters;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::map<Letter, Letter> remap;
    std::vector<std::string> tokens;
    for (Letter a : sorted) {
        remap[a] = static_cast<Letter>(tokens.size());
        tokens.push_back(phi.alphabet().token(a));
    }
    std::vector<Word> images;
    for (Letter a : sorted) {
        Word img;
        for (Letter b : phi.image(a)) {
            auto it = remap.find(b);
            if (it == remap.end())
                throw Error("letter set is not closed under the substitution: '" +
                            phi.alphabet().token(a) + "' maps outside it");
            img.push_back(it->second);
        }
        images.push_back(std::move(img));
    }
    return Substitution(Alphabet(std::move(tokens)), std::move(images));
}

Coding::Coding(Alphabet source, Alphabet target, std::vector<Letter> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (map_.size() != source_.size()) throw Error("coding must be total on its source alphabet");
    for (Letter b : map_)
        if (b >= target_.size()) throw Error("coding target out of range");
}

Word Coding::apply(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (Letter a : w) out.push_back(map_.at(a));
    return out;
}

Window Coding::apply(const Window& w) const { return Window{w.lo, apply(w.letters)}; }

Coding identity_coding(const Alphabet& alpha) {
    return Coding(alpha, alpha, identity_map(alpha.size()));
}

LetterMap compose_maps(const LetterMap& f, const LetterMap& g) {
    LetterMap out(g.size());
    for (std::size_t a = 0; a < g.size(); ++a) out[a] = f[g[a]];
    return out;
}

LetterMap identity_map(std::size_t n) {
    LetterMap out(n);
    for (std::size_t a = 0; a < n; ++a) out[a] = static_cast<Letter>(a);
    return out;
}

ProlongabilityProfile prolongability(const Substitution& phi) {
    ProlongabilityProfile p;
    const auto n = phi.size();
    for (Letter a = 0; a < n; ++a) {
        p.first_letter.push_back(phi.first(a));
        p.last_letter.push_back(phi.last(a));
        if (phi.first(a) == a) p.right_prolongable.push_back(a);
        if (phi.last(a) == a) p.left_prolongable.push_back(a);
    }
    p.factorial_bound = 1;
    for (std::size_t i = 2; i <= n; ++i) p.factorial_bound *= i;

    // F^n is idempotent for n = |A|!, so the search terminates well before that.
    LetterMap fn = p.first_letter, gn = p.last_letter;
    for (unsigned e = 1;; ++e) {
        if (compose_maps(fn, fn) == fn && compose_maps(gn, gn) == gn) {
            p.ambi_idempotent_power = e;
            break;
        }
        fn = compose_maps(p.first_letter, fn);
        gn = compose_maps(p.last_letter, gn);
        if (BigInt(e) > p.factorial_bound) throw InvariantError("ambi-idempotent search overran |A|!");
    }
    return p;
}

bool is_ambi_idempotent(const Substitution& phi) {
    return prolongability(phi).ambi_idempotent_power == 1;
}

namespace {

using LetterSet = std::vector<bool>;

LetterSet letters_of_images(const Substitution& phi, const LetterSet& s) {
    LetterSet out(phi.size(), false);
    for (Letter a = 0; a < phi.size(); ++a)
        if (s[a])
            for (Letter b : phi.image(a)) out[b] = true;
    return out;
}

// Letters whose iterated images stay of length one forever.
LetterSet length_one_core(const Substitution& phi) {
    LetterSet core(phi.size(), false);
    for (Letter a = 0; a < phi.size(); ++a) core[a] = phi.image(a).size() == 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (Letter a = 0; a < phi.size(); ++a)
            if (core[a] && !core[phi.image(a).front()]) {
                core[a] = false;
                changed = true;
            }
    }
    return core;
}

std::vector<Letter> bounded_letters(const Substitution& phi) {
    const LetterSet core = length_one_core(phi);
    std::vector<Letter> bounded;
    for (Letter a = 0; a < phi.size(); ++a) {
        // S_n = letters(phi^n(a)) is eventually periodic; a is bounded iff
        // every set on the cycle lies in the length-one core.
        std::map<LetterSet, std::size_t> seen;
        std::vector<LetterSet> seq;
        LetterSet s(phi.size(), false);
        s[a] = true;
        while (!seen.count(s)) {
            seen[s] = seq.size();
            seq.push_back(s);
            s = letters_of_images(phi, s);
        }
        bool inside = true;
        for (std::size_t i = seen[s]; i < seq.size() && inside; ++i)
            for (Letter b = 0; b < phi.size(); ++b)
                if (seq[i][b] && !core[b]) inside = false;
        if (inside) bounded.push_back(a);
    }
    return bounded;
}

}  // namespace

bool is_growing(const Substitution& phi) { return bounded_letters(phi).empty(); }

bool is_primitive(const Substitution& phi) {
    const auto n = phi.size();
    using Matrix = std::vector<std::vector<bool>>;
    Matrix m(n, std::vector<bool>(n, false));
    for (Letter a = 0; a < n; ++a)
        for (Letter b = 0; b < n; ++b) m[a][b] = phi.incidence()[a][b] > 0;
    // Wielandt: a primitive n x n matrix has M^((n-1)^2+1) > 0.
    const std::size_t e = (n - 1) * (n - 1) + 1;
    Matrix p = m;
    for (std::size_t i = 1; i < e; ++i) {
        Matrix next(n, std::vector<bool>(n, false));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < n; ++c)
                if (p[a][c])
                    for (std::size_t b = 0; b < n; ++b)
                        if (m[c][b]) next[a][b] = true;
        p = std::move(next);
    }
    for (const auto& row : p)
        for (bool x : row)
            if (!x) return false;
    return true;
}

Analysis analyze(const Substitution& phi) {
    Analysis out;
    out.profile = prolongability(phi);
    out.bounded_letters = bounded_letters(phi);
    out.growing = out.bounded_letters.empty();
    out.primitive = is_primitive(phi);
    out.constant_length = phi.constant_length();
    return out;
}

std::vector<Letter> reachable_alphabet(const Substitution& phi, Letter b) {
    LetterSet s(phi.size(), false);
    s[b] = true;
    for (bool changed = true; changed;) {
        changed = false;
        LetterSet next = letters_of_images(phi, s);
        for (Letter a = 0; a < phi.size(); ++a)
            if (next[a] && !s[a]) {
                s[a] = true;
                changed = true;
            }
    }
    std::vector<Letter> out;
    for (Letter a = 0; a < phi.size(); ++a)
        if (s[a]) out.push_back(a);
    return out;
}

}  // namespace qfix
