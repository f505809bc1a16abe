#include "qfix/corpus.hpp"

#include <algorithm>
#include <map>

#include "qfix/desub.hpp"
#include "qfix/error.hpp"
#include "qfix/kadic.hpp"
#include "qfix/language.hpp"
#include "qfix/onesided.hpp"
#include "qfix/parse.hpp"

namespace qfix {

namespace {

const std::map<std::string, std::string>& corpus_texts() {
    static const std::map<std::string, std::string> texts = {
        {"thue-morse",
         "# Thue-Morse\n"
         "alphabet: 0 1\n"
         "map 0 -> 0 1\n"
         "map 1 -> 1 0\n"},
        {"remark",
         "# the language of the subshift misses the letter 0\n"
         "alphabet: 0 1 2\n"
         "map 0 -> 1 2\n"
         "map 1 -> 2 2\n"
         "map 2 -> 1 1\n"},
        {"fiber",
         "# identifying 2 and 3 collapses a Thue-Morse subsystem\n"
         "alphabet: 0 1 2 3\n"
         "map 0 -> 0 1 2 3\n"
         "map 1 -> 1 0 3 1\n"
         "map 2 -> 2 3 3 2\n"
         "map 3 -> 3 2 2 3\n"
         "coding 0 -> 0\n"
         "coding 1 -> 1\n"
         "coding 2 -> 2\n"
         "coding 3 -> 2\n"},
        {"r-example",
         "alphabet: 0 1 2 3 4\n"
         "map 0 -> 0 1 3 0\n"
         "map 1 -> 3 4 4 3\n"
         "map 2 -> 4 3 3 4\n"
         "map 3 -> 1 2 2 1\n"
         "map 4 -> 2 1 1 2\n"
         "coding 0 -> 0\n"
         "coding 1 -> 1\n"
         "coding 2 -> 2\n"
         "coding 3 -> 3\n"
         "coding 4 -> 3\n"},
        {"appendix",
         "# one-sided example\n"
         "alphabet: 0 1 2 3\n"
         "map 0 -> 1 0 2 3\n"
         "map 1 -> 1 2 0 1\n"
         "map 2 -> 2 3 3 2\n"
         "map 3 -> 3 2 2 3\n"
         "coding 0 -> 0\n"
         "coding 1 -> 1\n"
         "coding 2 -> 0\n"
         "coding 3 -> 0\n"},
        {"constant",
         "alphabet: a\n"
         "map a -> a a\n"},
        {"fibonacci",
         "# not of constant length\n"
         "alphabet: 0 1\n"
         "map 0 -> 0 1\n"
         "map 1 -> 0\n"},
        {"club-base",
         "# length 5, primitive; no letter is left-prolongable\n"
         "alphabet: 0 1\n"
         "map 0 -> 0 0 1 0 1\n"
         "map 1 -> 1 1 0 1 0\n"},
    };
    return texts;
}

const char* kClubFallback =
    "alphabet: 0 1\n"
    "map 0 -> 0 0 0 1 1\n"
    "map 1 -> 1 1 1 0 0\n";

std::string digits_prefix(const DigitExpansion& d, std::size_t n) {
    std::string s = "(";
    for (std::size_t i = 0; i < n; ++i) s += std::to_string(d.digit(i)) + ",";
    return s + "...)";
}

struct Reporter {
    ExampleReport rep;
    void check(std::string anchor, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(anchor), ok, std::move(detail)});
    }
    // A check whose evaluation may throw; the exception text becomes the detail.
    template <class F>
    void guard(const std::string& anchor, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            check(anchor, false, std::string("exception: ") + e.what());
        }
    }
};

Window code_window(const Coding& tau, const Window& w) { return tau.apply(w); }

bool all_equal_to(const Word& w, Letter a) {
    return std::all_of(w.begin(), w.end(), [a](Letter b) { return b == a; });
}

ExampleReport thue_morse_example() {
    Reporter r;
    r.rep.name = "thue-morse";
    r.rep.title = "Thue-Morse quasi-fixed point T^5(φ^4(z))=z";
    const auto e = corpus_entry("thue-morse");
    const auto& phi = e.phi;
    const auto& A = phi.alphabet();
    r.guard("φ^4(0), φ^4(1)", [&] {
        const Substitution p4 = power(phi, 4);
        r.check("φ^4(0)=0110100110010110", A.render(p4.image(0)) == "0110100110010110", A.render(p4.image(0)));
        r.check("φ^4(1)=1001011001101001", A.render(p4.image(1)) == "1001011001101001", A.render(p4.image(1)));
    });
    r.guard("z", [&] {
        const Qfp z = parse_seed(phi, "interior a=0 i=5 m=4");
        const std::string v = A.render(materialize(phi, z, -5, -1).letters);
        const std::string w = A.render(materialize(phi, z, 1, 10).letters);
        r.check("v=01101", v == "01101", v);
        r.check("w=0110010110", w == "0110010110", w);
        const Relation rel = relation_offset(phi, z);
        r.check("T^5(φ^4(z))=z", rel == Relation{4, 5} && verify(phi, z, 10000),
                render_relation(rel) + " on [-10000,10000]");
        const KAdicRational k = kappa(phi, z);
        r.check("z is not a φ-periodic point nor its shift", k.den() != 1,
                "kappa(z) = " + render_fraction(k) + " is not an integer");
        const auto dig = desub_digits(phi, z).digits;
        r.check("kappa(z) = -1/3 with digits 1,0,1,0,...",
                k == KAdicRational(-1, 3, 2) && expansion(k) == dig && render(dig) == "pre= cyc=10", render(dig));
        const KAdicRational k1 = kappa(phi, shift(z, 1));
        r.check("kappa(Tz) = kappa(z) + 1 = 2/3", k1 == KAdicRational(2, 3, 2) && k1 == add_one(k), render(k1));
    });
    return r.rep;
}

ExampleReport remark_example() {
    Reporter r;
    r.rep.name = "remark";
    r.rep.title = "the letters of the subshift may be different than the alphabet";
    const auto e = corpus_entry("remark");
    const auto& A = e.phi.alphabet();
    r.guard("language", [&] {
        LanguageTable lang(e.phi);
        std::string letters;
        for (Letter a : lang.letters()) letters += A.token(a);
        r.check("L^1 = {1,2}", letters == "12", "{" + letters + "}");
        std::string pairs;
        for (auto [a, b] : lang.pairs()) pairs += (pairs.empty() ? "" : ",") + A.token(a) + A.token(b);
        r.check("L^2 = {11,12,21,22}", pairs == "11,12,21,22", "{" + pairs + "}");
        r.check("0 is not in the language", !lang.contains({0}));
        r.check("not primitive", !is_primitive(e.phi));
    });
    return r.rep;
}

ExampleReport fiber_example() {
    Reporter r;
    r.rep.name = "fiber";
    r.rep.title = "identifying the letters 2,3: the fiber over the constant sequence";
    const auto e = corpus_entry("fiber");
    const auto& phi = e.phi;
    const auto& tau = *e.coding;
    r.guard("A_2", [&] {
        const auto a2 = reachable_alphabet(phi, 2);
        r.check("A_2 = {2,3}", a2 == std::vector<Letter>{2, 3});
        r.check("φ|{2,3} is primitive (a Thue-Morse system)", is_primitive(restrict(phi, a2)));
        const auto subs = minimal_subsystems(phi, &tau);
        bool has = false;
        for (const auto& s : subs.subsystems) has = has || s.letters == std::vector<Letter>{2, 3};
        r.check("minimal subsystem generated by φ|{2,3}", has);
    });
    r.guard("constant 2", [&] {
        const Qfp q = parse_seed(phi, "bridge b=2 a=2 m=1");
        const auto h = push_qfp(phi, code_from_coding(phi, tau), q);
        const Window y = h.window(-1000, 1000);
        r.check("the constant sequence z of 2's belongs to τ(X_φ)", q.seed.in_system && all_equal_to(y.letters, tau.target().at("2")),
                "pushed Bridge{2,2} through τ on [-1000,1000]");
    });
    r.guard("fiber", [&] {
        const auto code = code_from_coding(phi, tau);
        std::vector<std::size_t> counts;
        for (std::size_t len : {4, 8, 12, 16}) {
            const Window target{0, Word(len, tau.target().at("2"))};
            counts.push_back(fiber_windows(phi, code, target).windows.size());
        }
        std::string detail;
        for (std::size_t i = 0; i < counts.size(); ++i) detail += (i ? "," : "") + std::to_string(counts[i]);
        const bool growing = std::is_sorted(counts.begin(), counts.end()) && counts.front() < counts.back();
        r.check("τ^-1(z) is uncountable: preimage windows keep growing", growing && counts.back() > 8,
                "preimage windows at L=4,8,12,16: " + detail);
    });
    return r.rep;
}

ExampleReport r_example() {
    Reporter r;
    r.rep.name = "r-example";
    r.rep.title = "R_φ(x')=x'' between two Thue-Morse points";
    const auto e = corpus_entry("r-example");
    const auto& phi = e.phi;
    const auto& tau = *e.coding;
    r.guard("R", [&] {
        const Qfp x1 = parse_seed(phi, "bridge b=1 a=2 m=2");
        const Qfp x2 = parse_seed(phi, "bridge b=3 a=4 m=2");
        r.check("x' and x'' lie in X_φ", x1.seed.in_system && x2.seed.in_system);
        const Window w1 = materialize(phi, x1, -1000, 1000);
        const auto steps = desubstitute_window(phi, w1);
        bool match = steps.size() == 1 && steps[0].c == 0;
        if (match) {
            const Window& p = steps[0].pred;
            match = materialize(phi, x2, p.lo, p.hi()) == p;
        }
        r.check("R_φ(x')=x''", match, std::to_string(steps.size()) + " desubstitution step(s) on radius 1000");
        const Window y1 = code_window(tau, w1);
        const Window y2 = code_window(tau, materialize(phi, x2, -1000, 1000));
        r.check("τ(x') is nonperiodic", !smallest_period(y1.letters, 1000).has_value());
        r.check("τ(x'') is the constant sequence of 3's", all_equal_to(y2.letters, tau.target().at("3")));
    });
    return r.rep;
}

ExampleReport appendix_example() {
    Reporter r;
    r.rep.name = "appendix";
    r.rep.title = "one-sided: τ(x)=10^ω is not periodic while τ(x')=0^ω is";
    const auto e = corpus_entry("appendix");
    const auto& phi = e.phi;
    const auto& tau = *e.coding;
    const auto& A = phi.alphabet();
    r.guard("appendix", [&] {
        r.check("φ(0)=w0v with w=1, v=23", A.render(phi.image(0)) == "1023");
        const std::size_t n = 1000;
        const auto xp = prolong_two_sided(phi, 1, 1, A.parse_word("0"), n);
        const auto x = prolong_two_sided(phi, 1, 4, A.parse_word("10"), n);
        r.check("x' = T(φ(x')) has a two-sided parent", xp.has_value(),
                xp ? render_seed(A, xp->parent) : "undetermined");
        r.check("x = T^4(φ(x)) has a two-sided parent", x.has_value(), x ? render_seed(A, x->parent) : "undetermined");
        if (!x || !xp) return;
        const Word wx = materialize(phi, *x, n + 4);
        const Word wxp = materialize(phi, *xp, n + 4);
        r.check("x = 10vφ(v)φ^2(v)...", A.render(Word(wx.begin(), wx.begin() + 8)) == "10232332",
                A.render(Word(wx.begin(), wx.begin() + 8)));
        r.check("x' = T(x)", std::equal(wxp.begin(), wxp.begin() + n, wx.begin() + 1));
        const Word phx = phi.apply(wxp);
        r.check("x = φ(x')", std::equal(wx.begin(), wx.begin() + n, phx.begin()));
        r.check("x' = T(φ(x'))", std::equal(wxp.begin(), wxp.begin() + n, phx.begin() + 1));
        const Word px(wx.begin(), wx.begin() + n), pxp(wxp.begin(), wxp.begin() + n);
        bool chain1 = false, chain2 = false;
        for (const auto& s : onesided_desub(phi, px))
            chain1 = chain1 || (s.c == 0 && std::equal(s.pred.letters.begin(), s.pred.letters.end(), wxp.begin()));
        for (const auto& s : onesided_desub(phi, pxp))
            chain2 = chain2 || (s.c == 1 && std::equal(s.pred.letters.begin(), s.pred.letters.end(), wxp.begin()));
        r.check("(x, x', x', ...) lies in R_φ(x)", chain1 && chain2);
        const Word tx = tau.apply(px), txp = tau.apply(pxp);
        const Letter one = tau.target().at("1"), zero = tau.target().at("0");
        r.check("τ(x)=10^ω is not periodic", tx[0] == one && all_equal_to(Word(tx.begin() + 1, tx.end()), zero),
                "checked to length 1000");
        r.check("τ(x')=0^ω is periodic", all_equal_to(txp, zero), "checked to length 1000");
    });
    return r.rep;
}

ExampleReport club_report() {
    Reporter r;
    r.rep.name = "club";
    r.rep.title = "automatic system not conjugate to a purely automatic one: c_ϑ(x') ≠ c_ϑ(x'')";
    r.guard("club", [&] {
        const ClubExample ex = club_example();
        const auto& th = ex.theta;
        r.check("φ is primitive of length 5 with a nonperiodic point",
                is_primitive(ex.base) && ex.base.constant_length() == std::size_t{5} &&
                    !smallest_period(materialize(ex.base, ex.x, -1000, 1000).letters, 1000).has_value(),
                ex.used_fallback ? "fallback substitution" : "φ(0)=00101, φ(1)=11010");
        r.check("x' and x'' lie in X_ϑ", ex.x_shifted.seed.in_system && ex.x_lifted.seed.in_system);
        const Window y1 = ex.tau.apply(materialize(th, ex.x_shifted, -1000, 1000));
        const Window y2 = ex.tau.apply(materialize(th, ex.x_lifted, -1000, 1000));
        const Window tx = materialize(ex.base, shift(ex.x, 1), -1000, 1000);
        bool same = y1 == y2;
        for (std::size_t i = 0; same && i < tx.size(); ++i)
            same = ex.tau.target().token(y1.letters[i]) == ex.base.alphabet().token(tx.letters[i]);
        r.check("τ(x')=τ(x'')=x'", same, "radius 1000");
        const auto d1 = desub_digits(th, ex.x_shifted).digits;
        const auto d2 = desub_digits(th, ex.x_lifted).digits;
        r.check("c_ϑ(x') = (1,0,0,...)", render(d1) == "pre=1 cyc=0", digits_prefix(d1, 5));
        r.check("c_ϑ(x'') = (0,0,0,...)", render(d2) == "pre= cyc=0", digits_prefix(d2, 5));
    });
    return r.rep;
}

}  // namespace

std::vector<std::string> corpus_names() {
    return {"thue-morse", "remark", "fiber", "r-example", "appendix", "constant", "fibonacci", "club-base"};
}

NamedSubstitution corpus_entry(const std::string& name) {
    const auto& texts = corpus_texts();
    auto it = texts.find(name);
    if (it == texts.end()) throw Error("unknown corpus entry '" + name + "'");
    auto file = parse_substitution(it->second);
    return NamedSubstitution{name, it->second, std::move(file.substitution), std::move(file.coding)};
}

std::vector<NamedSubstitution> corpus() {
    std::vector<NamedSubstitution> out;
    for (const auto& n : corpus_names()) out.push_back(corpus_entry(n));
    return out;
}

ClubExample club_example() {
    auto pick = [](const Substitution& phi) -> std::optional<Qfp> {
        if (!is_primitive(phi)) return std::nullopt;
        for (const auto& s : enumerate_seeds(phi, 2)) {
            if (s.form != SeedForm::Bridge || !s.in_system) continue;
            const Qfp q{s, 0};
            if (!smallest_period(materialize(phi, q, -1000, 1000).letters, 1000)) return q;
        }
        return std::nullopt;
    };
    Substitution base = corpus_entry("club-base").phi;
    bool fallback = false;
    auto x = pick(base);
    if (!x) {
        base = parse_substitution(kClubFallback).substitution;
        fallback = true;
        x = pick(base);
        if (!x) throw InvariantError("no nonperiodic point for the club example");
    }
    BlockPresentation bp = block_substitution(base, 2);
    const auto na = static_cast<Letter>(base.size());
    const Letter off_a = 1, off_b = 1 + na;
    std::vector<std::string> tokens{"c"};
    for (const auto& t : base.alphabet().tokens()) tokens.push_back(t);
    for (const auto& t : bp.hat.alphabet().tokens()) tokens.push_back(t);
    const Alphabet B(tokens);
    std::vector<Word> images;
    images.push_back({0, 0, off_a + 0, off_b + 0, 0});
    for (Letter a = 0; a < na; ++a) {
        Word w;
        for (Letter b : base.image(a)) w.push_back(b + off_a);
        images.push_back(w);
    }
    for (Letter a = 0; a < bp.hat.size(); ++a) {
        Word w;
        for (Letter b : bp.hat.image(a)) w.push_back(b + off_b);
        images.push_back(w);
    }
    Substitution theta(B, std::move(images));
    std::vector<std::string> ttokens{"c"};
    for (const auto& t : base.alphabet().tokens()) ttokens.push_back(t);
    std::vector<Letter> map{0};
    for (Letter a = 0; a < na; ++a) map.push_back(a + 1);
    for (const auto& w : bp.blocks) map.push_back(w[1] + 1);
    Coding tau(B, Alphabet(ttokens), std::move(map));

    LanguageTable lang(theta);
    auto embed = [&](const Qfp& q, Letter off) {
        Qfp out = q;
        out.seed.a += off;
        out.seed.b += off;
        if (out.seed.form == SeedForm::Bridge) out.seed.in_system = lang.pairs().count({out.seed.b, out.seed.a}) > 0;
        validate_seed(theta, out.seed);
        return out;
    };
    Qfp shifted = embed(shift(*x, 1), off_a);
    Qfp lifted = embed(lift_qfp(base, bp, *x), off_b);
    return ClubExample{std::move(base), fallback, *x, std::move(bp), std::move(theta), std::move(tau), shifted, lifted};
}

bool ExampleReport::ok() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.ok; });
}

std::vector<std::string> paper_example_names() {
    return {"thue-morse", "remark", "fiber", "r-example", "appendix", "club"};
}

std::vector<ExampleReport> run_paper_examples(const std::optional<std::string>& only) {
    using Fn = ExampleReport (*)();
    const std::vector<std::pair<std::string, Fn>> all = {
        {"thue-morse", thue_morse_example}, {"remark", remark_example},     {"fiber", fiber_example},
        {"r-example", r_example},           {"appendix", appendix_example}, {"club", club_report},
    };
    std::vector<ExampleReport> out;
    for (const auto& [name, fn] : all)
        if (!only || *only == name) out.push_back(fn());
    if (only && out.empty()) throw Error("unknown example '" + *only + "'");
    return out;
}

}  // namespace qfix
