#include "qfix/blocks.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "qfix/error.hpp"

namespace qfix {

namespace {

std::string block_token(const Alphabet& alpha, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!alpha.compact() && i) s += '.';
        s += alpha.token(w[i]);
    }
    return s;
}

Word slice_word(const Word& w, std::size_t from, std::size_t len) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(from + len));
}

}  // namespace

BlockPresentation block_substitution(const Substitution& phi, unsigned r) {
    if (r < 1) throw Error("block length must be at least 1");
    LanguageTable lang(phi);
    const auto& words = lang.words_of_length(r);
    std::vector<Word> blocks(words.begin(), words.end());
    std::map<Word, Letter> index;
    std::vector<std::string> tokens;
    for (const auto& w : blocks) {
        index[w] = static_cast<Letter>(tokens.size());
        tokens.push_back(block_token(phi.alphabet(), w));
    }
    std::vector<Word> images;
    for (const auto& w : blocks) {
        const Word img = phi.apply(w);
        Word out;
        for (std::size_t i = 0; i < phi.image(w.front()).size(); ++i) {
            auto it = index.find(slice_word(img, i, r));
            if (it == index.end()) throw InvariantError("block image leaves the language");
            out.push_back(it->second);
        }
        images.push_back(std::move(out));
    }
    return BlockPresentation{r, std::move(blocks), std::move(index),
                             Substitution(Alphabet(std::move(tokens)), std::move(images))};
}

Word iota(const BlockPresentation& bp, const Word& w) {
    Word out;
    for (std::size_t i = 0; i + bp.r <= w.size(); ++i) {
        auto it = bp.index.find(slice_word(w, i, bp.r));
        if (it == bp.index.end()) throw Error("factor is not in the block alphabet");
        out.push_back(it->second);
    }
    return out;
}

Window iota(const BlockPresentation& bp, const Window& w) { return Window{w.lo, iota(bp, w.letters)}; }

std::vector<Window> sample_windows(const Substitution& phi, std::size_t count, std::size_t len, unsigned seed) {
    if (len < 2) throw Error("sample length must be at least 2");
    LanguageTable lang(phi);
    const auto& words = lang.words_of_length(len);
    std::vector<Word> pool(words.begin(), words.end());
    std::mt19937 rng(seed);
    std::vector<Window> out;
    for (std::size_t i = 0; i < count; ++i) {
        const Word& w = pool[rng() % pool.size()];
        const auto lo = -static_cast<std::int64_t>(rng() % (len / 2));
        out.push_back(Window{lo, w});
    }
    return out;
}

BlockLawReport verify_block_laws(const Substitution& phi, unsigned r, const std::vector<Window>& samples,
                                 unsigned max_power, std::size_t max_len) {
    BlockLawReport rep;
    const BlockPresentation bp = block_substitution(phi, r);
    auto fail = [&](std::string what) {
        rep.ok = false;
        if (rep.failures.size() < 20) rep.failures.push_back(std::move(what));
    };
    const auto& alpha = phi.alphabet();

    for (const auto& x : samples) {
        ++rep.samples;
        Window base = x;
        Window lifted;
        try {
            lifted = iota(bp, x);
        } catch (const Error&) {
            fail("sample " + render_window(alpha, x) + " has a factor outside the language");
            continue;
        }
        if (lifted.empty() || lifted.lo > 0 || lifted.hi() < -1) {
            fail("sample " + render_window(alpha, x) + " too short to lift");
            continue;
        }
        Window hat_img = lifted;
        for (unsigned n = 1; n <= max_power; ++n) {
            base = phi.apply(base);
            hat_img = bp.hat.apply(hat_img);
            ++rep.checks;
            Window lhs;
            try {
                lhs = iota(bp, base);
            } catch (const Error&) {
                fail("phi^" + std::to_string(n) + " of " + render_window(alpha, x) + " leaves the language");
                continue;
            }
            if (hat_img.lo != lhs.lo || !lhs.covers(hat_img.lo, hat_img.hi()) ||
                !(lhs.slice(hat_img.lo, hat_img.hi()) == hat_img))
                fail("iota_r(phi^" + std::to_string(n) + "(w)) != hat^" + std::to_string(n) + "(iota_r(w)) for w = " +
                     render_window(alpha, x));
        }
    }

    LanguageTable base_lang(phi), hat_lang(bp.hat);
    for (std::size_t len = 1; len <= max_len; ++len) {
        ++rep.checks;
        WordSet lifted;
        for (const auto& u : base_lang.words_of_length(len + r - 1)) lifted.insert(iota(bp, u));
        if (lifted != hat_lang.words_of_length(len))
            fail("languages differ at length " + std::to_string(len));
    }
    ++rep.checks;
    if (is_primitive(phi) && !is_primitive(bp.hat)) fail("primitivity not transferred");
    ++rep.checks;
    if (phi.constant_length() != bp.hat.constant_length()) fail("constant length not transferred");
    return rep;
}

Letter SlidingBlockCode::operator()(const Word& w) const {
    auto it = rule.find(w);
    if (it == rule.end()) throw Error("no rule for block '" + source.render(w) + "'");
    return it->second;
}

Window SlidingBlockCode::apply(const Window& x) const {
    const auto n = static_cast<std::int64_t>(radius);
    Window out{x.lo + n, {}};
    for (std::int64_t i = x.lo + n; i + n <= x.hi(); ++i)
        out.letters.push_back((*this)(x.slice(i - n, i + n).letters));
    return out;
}

SlidingBlockCode parse_sliding_code(const Substitution& phi, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::optional<unsigned> radius;
    std::vector<std::string> targets;
    std::map<std::string, Letter> tindex;
    SlidingBlockCode code;
    code.source = phi.alphabet();
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks[0] == "code") {
            if (radius) throw ParseError(line_no, "code declared twice");
            if (toks.size() != 2 || toks[1].rfind("radius=", 0) != 0) throw ParseError(line_no, "expected 'code radius=<n>'");
            try {
                radius = static_cast<unsigned>(std::stoul(toks[1].substr(7)));
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad radius");
            }
        } else if (toks[0] == "rule") {
            if (!radius) throw ParseError(line_no, "rule before 'code radius=<n>'");
            auto arrow = std::find(toks.begin(), toks.end(), "->");
            if (arrow == toks.end() || arrow + 2 != toks.end()) throw ParseError(line_no, "expected 'rule <w> -> <tok>'");
            std::string lhs;
            for (auto it = toks.begin() + 1; it != arrow; ++it) lhs += (lhs.empty() ? "" : " ") + *it;
            Word w;
            try {
                w = phi.alphabet().parse_word(lhs);
            } catch (const Error& e) {
                throw ParseError(line_no, e.what());
            }
            if (w.size() != 2 * *radius + 1)
                throw ParseError(line_no, "rule word must have length " + std::to_string(2 * *radius + 1));
            auto [it, fresh] = tindex.emplace(*(arrow + 1), static_cast<Letter>(targets.size()));
            if (fresh) targets.push_back(*(arrow + 1));
            if (!code.rule.emplace(w, it->second).second) throw ParseError(line_no, "duplicate rule");
        } else {
            throw ParseError(line_no, "unknown directive '" + toks[0] + "'");
        }
    }
    if (!radius) throw ParseError(line_no, "missing 'code radius=<n>'");
    if (targets.empty()) throw ParseError(line_no, "no rules");
    code.radius = *radius;
    code.target = Alphabet(std::move(targets));
    LanguageTable lang(phi);
    for (const auto& w : lang.words_of_length(2 * *radius + 1))
        if (!code.rule.count(w)) throw Error("code has no rule for block '" + phi.alphabet().render(w) + "'");
    return code;
}

SlidingBlockCode code_from_coding(const Substitution& phi, const Coding& tau) {
    if (!(tau.source() == phi.alphabet())) throw Error("coding source does not match the substitution");
    SlidingBlockCode code;
    code.radius = 0;
    code.source = phi.alphabet();
    code.target = tau.target();
    for (Letter a = 0; a < phi.size(); ++a) code.rule[{a}] = tau(a);
    return code;
}

Qfp lift_qfp(const Substitution& phi, const BlockPresentation& bp, const Qfp& q) {
    const Relation rel = relation_offset(phi, q);
    return normalize(bp.hat, rel.m, rel.c, [&](std::int64_t r) {
        return iota(bp, materialize(phi, q, -r, r + static_cast<std::int64_t>(bp.r) - 1));
    });
}

AutomaticHandle push_qfp(const Substitution& phi, const SlidingBlockCode& code, const Qfp& q) {
    if (!phi.constant_length()) throw Error("pushing a point through a code needs constant length");
    BlockPresentation bp = block_substitution(phi, 2 * code.radius + 1);
    const Qfp lifted = lift_qfp(phi, bp, q);
    std::vector<Letter> map;
    for (const auto& w : bp.blocks) map.push_back(code(w));
    const Coding pi(bp.hat.alphabet(), code.target, std::move(map));
    // y_i = pi(x_{[i-n, i+n]}) = pi_r(iota_r(x)_{i-n}), i.e. y = pi_r(T^{-n} iota_r(x)).
    const Qfp placed = shift(lifted, -static_cast<std::int64_t>(code.radius));
    KernelAutomaton a = minimize(build_kernel_automaton(bp.hat, placed, &pi));
    return AutomaticHandle{std::move(bp), placed, std::move(a)};
}

namespace {

struct FiberSearch {
    const SlidingBlockCode& code;
    LanguageTable& lang;
    const Window& target;
    std::size_t total;
    std::size_t cap;
    std::size_t check_len;
    Word cur;
    std::vector<Word> found;
    bool truncated = false;

    void run() {
        if (found.size() >= cap) {
            truncated = true;
            return;
        }
        if (cur.size() == total) {
            found.push_back(cur);
            return;
        }
        const std::size_t r = 2 * code.radius + 1;
        for (Letter a = 0; a < code.source.size(); ++a) {
            cur.push_back(a);
            bool ok = true;
            if (cur.size() >= r) {
                const Word blk = slice_word(cur, cur.size() - r, r);
                auto it = code.rule.find(blk);
                ok = it != code.rule.end() && it->second == target.letters[cur.size() - r];
            }
            if (ok) {
                const std::size_t l = std::min(cur.size(), check_len);
                ok = lang.contains(slice_word(cur, cur.size() - l, l));
            }
            if (ok) run();
            cur.pop_back();
            if (truncated) return;
        }
    }
};

}  // namespace

FiberResult fiber_windows(const Substitution& phi, const SlidingBlockCode& code, const Window& target,
                          std::size_t cap) {
    if (!(code.source == phi.alphabet())) throw Error("code source does not match the substitution");
    if (target.empty()) throw Error("empty target window");
    LanguageTable lang(phi);
    const std::size_t total = target.size() + 2 * code.radius;
    constexpr std::size_t kExactLimit = 24;
    FiberSearch s{code, lang, target, total, cap, std::min(total, kExactLimit), {}, {}, false};
    s.run();
    FiberResult res;
    res.truncated = s.truncated;
    res.exact_language = total <= kExactLimit;
    const std::int64_t lo = target.lo - static_cast<std::int64_t>(code.radius);
    for (auto& w : s.found) res.windows.push_back(Window{lo, std::move(w)});
    return res;
}

FiberCertificate certify_fiber_qfp(const Substitution& phi, const SlidingBlockCode& code, const Window& target,
                                   std::size_t depth, std::size_t cap) {
    FiberCertificate cert;
    cert.target_periodic = smallest_period(target.letters, target.size() / 2).has_value();
    const FiberResult fib = fiber_windows(phi, code, target, cap);
    cert.truncated = fib.truncated;
    for (const auto& w : fib.windows) {
        FiberBranch br;
        br.window = w;
        if (w.lo <= 0 && w.hi() >= 0) {
            const DetectResult d = detect_qfp(phi, w, depth);
            br.kind = d.kind;
            br.qfp = d.qfp;
        }
        cert.branches.push_back(std::move(br));
    }
    return cert;
}

SubsystemReport minimal_subsystems(const Substitution& phi, const Coding* tau) {
    SubsystemReport rep;
    rep.power = prolongability(phi).ambi_idempotent_power;
    const Substitution psi = power(phi, rep.power);
    std::set<std::vector<Letter>> seen;
    for (Letter b = 0; b < psi.size(); ++b) {
        auto letters = reachable_alphabet(psi, b);
        if (seen.count(letters)) continue;
        Substitution rest = restrict(psi, letters);
        if (!is_primitive(rest)) continue;
        seen.insert(letters);
        std::vector<Letter> coded;
        if (tau) {
            std::set<Letter> c;
            for (Letter a : letters) c.insert((*tau)(a));
            coded.assign(c.begin(), c.end());
        }
        rep.subsystems.push_back(MinimalSubsystem{b, std::move(letters), std::move(rest), std::move(coded)});
    }
    return rep;
}

}  // namespace qfix
