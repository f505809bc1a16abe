#include "qfix/desub.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qfix/error.hpp"

namespace qfix {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct Block {
    Letter letter;
    std::int64_t start;  // absolute position of the first letter of its image
};

void parse_blocks(const Substitution& phi, LanguageTable& lang, std::size_t check_len, const Window& w,
                  std::int64_t pos, std::vector<Block>& blocks, std::vector<std::vector<Block>>& out) {
    if (pos > w.hi()) {
        out.push_back(blocks);
        return;
    }
    for (Letter b = 0; b < phi.size(); ++b) {
        const auto& img = phi.image(b);
        bool ok = true;
        for (std::size_t i = 0; i < img.size() && pos + static_cast<std::int64_t>(i) <= w.hi() && ok; ++i)
            ok = img[i] == w.at(pos + static_cast<std::int64_t>(i));
        if (!ok) continue;
        blocks.push_back({b, pos});
        Word tail;
        const std::size_t from = blocks.size() > check_len ? blocks.size() - check_len : 0;
        for (std::size_t i = from; i < blocks.size(); ++i) tail.push_back(blocks[i].letter);
        if (lang.contains(tail))
            parse_blocks(phi, lang, check_len, w, pos + static_cast<std::int64_t>(img.size()), blocks, out);
        blocks.pop_back();
    }
}

}  // namespace

std::vector<DesubStep> desubstitute_window(const Substitution& phi, const Window& w) {
    LanguageTable lang(phi);
    return desubstitute_window(lang, w);
}

std::vector<DesubStep> desubstitute_window(LanguageTable& lang, const Window& w, std::size_t check_len) {
    const Substitution& phi = lang.substitution();
    if (w.lo > 0 || w.hi() < 0) throw Error("window must contain position 0");
    std::vector<DesubStep> steps;
    if (w.size() < phi.max_image_length()) return steps;
    std::set<std::pair<std::int64_t, Word>> seen;
    for (Letter b = 0; b < phi.size(); ++b) {
        const auto& img = phi.image(b);
        for (std::size_t off = 0; off < img.size(); ++off) {
            // First block: image of b entered at offset `off`.
            bool ok = true;
            for (std::size_t i = off; i < img.size() && w.lo + static_cast<std::int64_t>(i - off) <= w.hi() && ok; ++i)
                ok = img[i] == w.at(w.lo + static_cast<std::int64_t>(i - off));
            if (!ok) continue;
            std::vector<Block> blocks{{b, w.lo - static_cast<std::int64_t>(off)}};
            std::vector<std::vector<Block>> parses;
            parse_blocks(phi, lang, check_len, w, blocks.front().start + static_cast<std::int64_t>(img.size()),
                         blocks, parses);
            for (const auto& p : parses) {
                std::size_t zero = 0;
                while (!(p[zero].start <= 0 && 0 < p[zero].start + static_cast<std::int64_t>(
                                                          phi.image(p[zero].letter).size())))
                    ++zero;
                DesubStep s;
                s.c = -p[zero].start;
                s.pred.lo = -static_cast<std::int64_t>(zero);
                for (const auto& blk : p) s.pred.letters.push_back(blk.letter);
                if (!lang.locally_admissible(s.pred.letters, check_len)) continue;
                if (seen.insert({s.c, s.pred.letters}).second) steps.push_back(std::move(s));
            }
        }
    }
    std::sort(steps.begin(), steps.end(), [](const DesubStep& x, const DesubStep& y) {
        return std::tie(x.c, x.pred.lo, x.pred.letters) < std::tie(y.c, y.pred.lo, y.pred.letters);
    });
    return steps;
}

DesubChain desub_chain(const Substitution& phi, const Qfp& q) {
    const auto k = phi.constant_length();
    if (!k) throw Error("digit sequences need a constant-length substitution");
    const std::int64_t kk = static_cast<std::int64_t>(*k);
    const unsigned m = q.seed.m;
    const std::int64_t c0 = seed_offset(q.seed);
    DesubChain ch;
    ch.base = static_cast<unsigned>(*k);
    // State (J, S) is the point T^S(phi^J(y)); z = T^t(y) = T^{t + c0}(phi^m(y)).
    std::pair<unsigned, std::int64_t> st{m, q.shift + c0};
    std::map<std::pair<unsigned, std::int64_t>, std::size_t> seen;
    while (!seen.count(st)) {
        seen[st] = ch.states.size();
        ch.states.push_back(st);
        const auto [J, S] = st;
        const std::int64_t s2 = floor_div(S, kk);
        ch.digits.push_back(static_cast<unsigned>(S - s2 * kk));
        st = J == 1 ? std::pair<unsigned, std::int64_t>{m, s2 + c0} : std::pair<unsigned, std::int64_t>{J - 1, s2};
    }
    ch.transient = seen[st];
    ch.cycle = ch.states.size() - ch.transient;
    return ch;
}

ChainView::ChainView(const Substitution& phi, const Qfp& q)
    : phi_(phi), q_(q), chain_(desub_chain(phi, q)) {
    powers_.push_back(identity_substitution(phi.alphabet()));
    for (unsigned j = 1; j <= q.seed.m; ++j) powers_.push_back(compose(phi, powers_.back()));
    seed_ = materialize(phi, Qfp{q.seed, 0}, -8, 8);
}

Letter ChainView::seed_letter(std::int64_t n) {
    while (!seed_.covers(n)) {
        const std::int64_t r = 2 * std::max(-seed_.lo, seed_.hi()) + 2;
        seed_ = materialize(phi_, Qfp{q_.seed, 0}, -r, r);
    }
    return seed_.at(n);
}

Letter ChainView::letter(std::size_t j, std::int64_t n) {
    const auto [J, S] = chain_.states.at(j);
    const auto& img = powers_.at(J);
    const std::int64_t len = static_cast<std::int64_t>(*img.constant_length());
    const std::int64_t p = n + S;
    const std::int64_t block = floor_div(p, len);
    return img.image(seed_letter(block))[static_cast<std::size_t>(p - block * len)];
}

Window ChainView::window(std::size_t j, std::int64_t lo, std::int64_t hi) {
    Window w{lo, {}};
    for (std::int64_t n = lo; n <= hi; ++n) w.letters.push_back(letter(j, n));
    return w;
}

DesubDigits desub_digits(const Substitution& phi, const Qfp& q) {
    const DesubChain ch = desub_chain(phi, q);
    DigitExpansion d;
    d.base = ch.base;
    d.pre.assign(ch.digits.begin(), ch.digits.begin() + static_cast<std::ptrdiff_t>(ch.transient));
    d.cycle.assign(ch.digits.begin() + static_cast<std::ptrdiff_t>(ch.transient), ch.digits.end());
    DesubDigits out;
    out.digits = d.canonical();
    const Window z = materialize(phi, q, -512, 512);
    out.periodic = smallest_period(z.letters, 512).has_value();
    return out;
}

KAdicRational kappa(const Substitution& phi, const Qfp& q) {
    const auto k = phi.constant_length();
    if (!k) throw Error("kappa needs a constant-length substitution");
    const Relation r = relation_offset(phi, q);
    return from_relation(r.c, r.m, static_cast<unsigned>(*k));
}

DesubTrace desub_trace(const Substitution& phi, const Window& w, std::size_t depth) {
    LanguageTable lang(phi);
    DesubTrace tr;
    tr.windows.push_back(w);
    for (std::size_t level = 0; level < depth; ++level) {
        const Window& cur = tr.windows.back();
        if (cur.size() < 2 * phi.max_image_length()) {
            tr.stop = TraceStop::TooShort;
            return tr;
        }
        auto steps = desubstitute_window(lang, cur);
        if (steps.empty()) {
            tr.stop = TraceStop::NotInLanguage;
            return tr;
        }
        if (steps.size() > 1) {
            tr.stop = TraceStop::Ambiguous;
            tr.branches = std::move(steps);
            return tr;
        }
        tr.digits.push_back(static_cast<unsigned>(steps.front().c));
        tr.windows.push_back(std::move(steps.front().pred));
    }
    tr.stop = TraceStop::Depth;
    return tr;
}

std::string to_string(Detection d) {
    switch (d) {
        case Detection::Found: return "found";
        case Detection::Ambiguous: return "ambiguous";
        case Detection::NoRepetition: return "no repetition";
        case Detection::NotInLanguage: return "not in language";
    }
    return "?";
}

DetectResult detect_qfp(const Substitution& phi, const Window& w, std::size_t depth) {
    const auto k = phi.constant_length();
    if (!k) throw Error("detection needs a constant-length substitution");
    DetectResult res;
    res.trace = desub_trace(phi, w, depth);
    const auto& tr = res.trace;
    if (tr.stop == TraceStop::NotInLanguage && tr.digits.empty()) {
        res.kind = Detection::NotInLanguage;
        return res;
    }
    if (tr.stop == TraceStop::Ambiguous && tr.digits.empty()) {
        res.kind = Detection::Ambiguous;
        return res;
    }
    const std::size_t levels = tr.windows.size();
    const std::int64_t kk = static_cast<std::int64_t>(*k);
    // Smallest period first, then the earliest level.
    for (std::size_t m = 1; m < levels; ++m) {
        for (std::size_t p = 0; p + m < levels; ++p) {
            const Window& a = tr.windows[p];
            const Window& b = tr.windows[p + m];
            const std::int64_t lo = std::max(a.lo, b.lo), hi = std::min(a.hi(), b.hi());
            if (hi - lo < 2 || !agree_on_overlap(a, b)) continue;
            std::int64_t s = 0, scale = 1;
            for (std::size_t i = 0; i < m; ++i) {
                s += static_cast<std::int64_t>(tr.digits[p + i]) * scale;
                scale *= kk;
            }
            try {
                Qfp cand = normalize(phi, static_cast<unsigned>(m), s, a);
                for (std::size_t i = p; i-- > 0;)
                    cand = shift(substitute(phi, cand), static_cast<std::int64_t>(tr.digits[i]));
                if (!(materialize(phi, cand, w.lo, w.hi()) == w)) continue;
                if (!verify(phi, cand, 256)) continue;
                res.kind = Detection::Found;
                res.qfp = cand;
                res.relation = relation_offset(phi, cand);
                res.preperiod = p;
                return res;
            } catch (const Error&) {
                continue;
            }
        }
    }
    res.kind = tr.stop == TraceStop::Ambiguous ? Detection::Ambiguous : Detection::NoRepetition;
    return res;
}

namespace {

bool proper_suffix_of_some(const Word& y, std::size_t len, const std::vector<Word>& W) {
    for (const auto& w : W) {
        if (len >= w.size()) continue;
        if (std::equal(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(len),
                       w.end() - static_cast<std::ptrdiff_t>(len)))
            return true;
    }
    return false;
}

bool proper_prefix_of_some(const Word& y, std::size_t from, const std::vector<Word>& W) {
    const std::size_t len = y.size() - from;
    for (const auto& w : W) {
        if (len >= w.size()) continue;
        if (std::equal(y.begin() + static_cast<std::ptrdiff_t>(from), y.end(), w.begin())) return true;
    }
    return false;
}

constexpr std::size_t kMaxFactorizations = 4096;

void extend(const Word& y, const std::vector<Word>& W, std::vector<std::size_t>& cuts,
            std::vector<std::vector<std::size_t>>& out, bool& truncated) {
    if (out.size() >= kMaxFactorizations) {
        truncated = true;
        return;
    }
    const std::size_t pos = cuts.back();
    if (proper_prefix_of_some(y, pos, W)) out.push_back(cuts);
    for (const auto& w : W) {
        if (pos + w.size() > y.size()) continue;
        if (!std::equal(w.begin(), w.end(), y.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
        cuts.push_back(pos + w.size());
        extend(y, W, cuts, out, truncated);
        cuts.pop_back();
    }
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return true;
}

void best_family(const std::vector<std::vector<bool>>& ok, std::vector<std::size_t>& cur,
                 std::size_t next, std::vector<std::size_t>& best) {
    if (cur.size() > best.size()) best = cur;
    for (std::size_t v = next; v < ok.size(); ++v) {
        if (cur.size() + (ok.size() - v) <= best.size()) return;
        bool fits = true;
        for (std::size_t u : cur) fits = fits && ok[u][v];
        if (!fits) continue;
        cur.push_back(v);
        best_family(ok, cur, v + 1, best);
        cur.pop_back();
    }
}

}  // namespace

FactorizationCount disjoint_factorization_count(const Window& y, const std::vector<Word>& W) {
    if (W.empty()) throw Error("W must be non-empty");
    for (const auto& w : W)
        if (w.empty()) throw Error("W may not contain the empty word");
    FactorizationCount res;
    const Word& letters = y.letters;
    res.periodic = smallest_period(letters, letters.size() / 2).has_value();
    std::size_t maxlen = 0;
    for (const auto& w : W) maxlen = std::max(maxlen, w.size());

    std::vector<std::vector<std::size_t>> sets;
    for (std::size_t first = 0; first < maxlen && first <= letters.size(); ++first) {
        if (first > 0 && !proper_suffix_of_some(letters, first, W)) continue;
        std::vector<std::size_t> cuts{first};
        extend(letters, W, cuts, sets, res.truncated);
    }
    res.factorizations = sets.size();
    std::vector<std::vector<bool>> ok(sets.size(), std::vector<bool>(sets.size(), false));
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j) ok[i][j] = i != j && disjoint(sets[i], sets[j]);
    std::vector<std::size_t> cur, best;
    best_family(ok, cur, 0, best);
    res.count = best.size();
    for (std::size_t i : best) {
        std::vector<std::int64_t> abs;
        for (std::size_t c : sets[i]) abs.push_back(y.lo + static_cast<std::int64_t>(c));
        res.witnesses.push_back(std::move(abs));
    }
    return res;
}

}  // namespace qfix
