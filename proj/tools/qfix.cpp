// qfix: command-line front end.
#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfix/blocks.hpp"
#include "qfix/corpus.hpp"
#include "qfix/desub.hpp"
#include "qfix/error.hpp"
#include "qfix/kadic.hpp"
#include "qfix/kernel.hpp"
#include "qfix/language.hpp"
#include "qfix/onesided.hpp"
#include "qfix/parse.hpp"
#include "qfix/quasifix.hpp"

using namespace qfix;
using nlohmann::ordered_json;

namespace {

struct Options {
    bool json = false;
    bool no_timing = false;
};

// Text lines and the JSON object are filled side by side.
struct Report {
    std::string command;
    std::vector<std::string> lines;
    std::vector<std::string> warnings;
    ordered_json data = ordered_json::object();
    bool failed = false;

    void line(const std::string& s) { lines.push_back(s); }
    void warn(const std::string& s) { warnings.push_back(s); }
};

std::string letters_of(const Alphabet& A, const std::vector<Letter>& ls) {
    std::string s;
    for (Letter a : ls) s += (s.empty() ? "" : ",") + A.token(a);
    return "{" + s + "}";
}

std::string map_of(const Alphabet& A, const LetterMap& f) {
    std::string s;
    for (Letter a = 0; a < f.size(); ++a) s += (a ? " " : "") + A.token(a) + "->" + A.token(f[a]);
    return s;
}

std::string words_of(const Alphabet& A, const WordSet& ws) {
    std::string s;
    for (const auto& w : ws) s += (s.empty() ? "" : ",") + A.render(w);
    return "{" + s + "}";
}

std::string digits_text(const std::vector<unsigned>& d) {
    std::string s;
    for (unsigned x : d) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

// --- analyze -------------------------------------------------------------

void cmd_analyze(Report& rep, const std::string& file) {
    const auto sf = load_substitution(file, ParseOptions{true});
    const auto& phi = sf.substitution;
    const auto& A = phi.alphabet();
    const Analysis an = analyze(phi);
    const auto& pr = an.profile;
    rep.line("alphabet: " + letters_of(A, [&] {
                 std::vector<Letter> v(A.size());
                 for (Letter a = 0; a < A.size(); ++a) v[a] = a;
                 return v;
             }()));
    rep.line("constant length: " + (an.constant_length ? std::to_string(*an.constant_length) : std::string("no")));
    rep.line(std::string("growing: ") + (an.growing ? "yes" : "no"));
    if (!an.bounded_letters.empty()) rep.line("bounded letters: " + letters_of(A, an.bounded_letters));
    rep.line(std::string("primitive: ") + (an.primitive ? "yes" : "no"));
    rep.line("F: " + map_of(A, pr.first_letter));
    rep.line("G: " + map_of(A, pr.last_letter));
    rep.line("right-prolongable: " + letters_of(A, pr.right_prolongable));
    rep.line("left-prolongable: " + letters_of(A, pr.left_prolongable));
    rep.line("ambi-idempotent power: " + std::to_string(pr.ambi_idempotent_power) + " (bound |A|! = " +
             pr.factorial_bound.str() + ")");
    rep.data["alphabet"] = A.tokens();
    rep.data["constant_length"] = an.constant_length ? ordered_json(*an.constant_length) : ordered_json(nullptr);
    rep.data["growing"] = an.growing;
    rep.data["primitive"] = an.primitive;
    rep.data["ambi_idempotent_power"] = pr.ambi_idempotent_power;
    rep.data["factorial_bound"] = pr.factorial_bound.str();
    if (!an.growing) {
        rep.warn("substitution is not growing; quasi-fixed point machinery requires growing substitutions");
        return;
    }
    LanguageTable lang(phi);
    const auto letter_set = lang.letters();
    const std::vector<Letter> l1(letter_set.begin(), letter_set.end());
    rep.line("L^1: " + letters_of(A, l1));
    WordSet l2;
    for (auto [a, b] : lang.pairs()) l2.insert(Word{a, b});
    rep.line("L^2: " + words_of(A, l2));
    ordered_json jl1 = ordered_json::array(), jl2 = ordered_json::array();
    for (Letter a : l1) jl1.push_back(A.token(a));
    for (const auto& w : l2) jl2.push_back(A.render(w));
    rep.data["L1"] = jl1;
    rep.data["L2"] = jl2;
    if (l1.size() != A.size()) rep.warn("the subshift does not use every letter of the alphabet");
    if (an.constant_length) {
        const unsigned n = column_constant_power(phi);
        const bool ok = is_column_constant(power(phi, n));
        rep.line("column-constant power: " + std::to_string(n) + (ok ? "" : " (post-hoc check FAILED)"));
        rep.data["column_constant_power"] = n;
        rep.data["column_constant_check"] = ok;
        if (!ok) rep.failed = true;
    }
    const auto subs = minimal_subsystems(phi, sf.coding ? &*sf.coding : nullptr);
    rep.line("minimal subsystems (read off φ^" + std::to_string(subs.power) + "):");
    ordered_json js = ordered_json::array();
    for (const auto& s : subs.subsystems) {
        std::string l = "  A_" + A.token(s.b) + " = " + letters_of(A, s.letters);
        if (sf.coding) {
            std::string c;
            for (Letter x : s.coded) c += (c.empty() ? "" : ",") + sf.coding->target().token(x);
            l += "  coded {" + c + "}";
        }
        rep.line(l);
        ordered_json o;
        o["b"] = A.token(s.b);
        o["letters"] = ordered_json::array();
        for (Letter a : s.letters) o["letters"].push_back(A.token(a));
        js.push_back(o);
    }
    rep.data["minimal_subsystems"] = js;
}

// --- language ------------------------------------------------------------

void cmd_language(Report& rep, const std::string& file, std::size_t max_len, const std::optional<std::string>& w) {
    const auto phi = load_substitution(file).substitution;
    const auto& A = phi.alphabet();
    LanguageTable lang(phi);
    ordered_json by = ordered_json::object();
    for (std::size_t n = 1; n <= max_len; ++n) {
        const auto& ws = lang.words_of_length(n);
        rep.line("L^" + std::to_string(n) + " (" + std::to_string(ws.size()) + "): " + words_of(A, ws));
        ordered_json arr = ordered_json::array();
        for (const auto& x : ws) arr.push_back(A.render(x));
        by[std::to_string(n)] = arr;
    }
    rep.data["words"] = by;
    if (w) {
        const bool in = lang.contains(A.parse_word(*w));
        rep.line(*w + (in ? " is in the language" : " is not in the language"));
        rep.data["contains"] = in;
    }
}

// --- qfp -----------------------------------------------------------------

ordered_json qfp_json(const Substitution& phi, const Qfp& q) {
    const Relation r = relation_offset(phi, q);
    ordered_json o;
    o["seed"] = render_seed(phi.alphabet(), q);
    o["m"] = r.m;
    o["c"] = r.c;
    o["in_system"] = q.seed.in_system;
    return o;
}

void cmd_qfp_list(Report& rep, const std::string& file, unsigned m, bool do_dedup) {
    const auto phi = load_substitution(file).substitution;
    const auto& A = phi.alphabet();
    std::vector<Qfp> pts;
    for (const auto& s : enumerate_seeds(phi, m)) pts.push_back(Qfp{s, 0});
    ordered_json arr = ordered_json::array();
    for (const auto& q : pts) {
        rep.line(render_seed(A, q) + "  " + render_relation(relation_offset(phi, q)) +
                 (q.seed.in_system ? "" : "  (not in X_φ)"));
        arr.push_back(qfp_json(phi, q));
    }
    rep.data["seeds"] = arr;
    if (!do_dedup) return;
    const auto groups = dedup(phi, pts);
    rep.line(std::to_string(groups.size()) + " distinct point(s):");
    ordered_json ga = ordered_json::array();
    for (const auto& g : groups) {
        std::string l;
        ordered_json gj = ordered_json::array();
        for (const auto& q : g) {
            l += (l.empty() ? "  " : " = ") + render_seed(A, q);
            gj.push_back(render_seed(A, q));
        }
        rep.line(l);
        ga.push_back(gj);
    }
    rep.data["groups"] = ga;
    if (!phi.constant_length()) rep.warn("nonconstant length: equality decided on windows only");
}

void cmd_qfp_show(Report& rep, const std::string& file, const std::string& seed, std::int64_t radius) {
    const auto phi = load_substitution(file).substitution;
    const auto& A = phi.alphabet();
    const Qfp q = parse_seed(phi, seed);
    const Relation r = relation_offset(phi, q);
    const Window w = materialize(phi, q, -radius, radius);
    rep.line(render_seed(A, q));
    rep.line("relation: " + render_relation(r));
    rep.line(std::string("in X_φ: ") + (q.seed.in_system ? "yes" : "no"));
    rep.line("window: " + render_window(A, w));
    rep.data["qfp"] = qfp_json(phi, q);
    rep.data["window"] = render_window(A, w);
    if (phi.constant_length()) {
        const KAdicRational k = kappa(phi, q);
        const auto dd = desub_digits(phi, q);
        rep.line("kappa: " + render(k));
        rep.line("digits: " + render(dd.digits));
        rep.line("minimal period: " + std::to_string(minimal_period(phi, q)));
        rep.data["kappa"] = render_fraction(k);
        rep.data["digits"] = render(dd.digits);
        rep.data["minimal_period"] = minimal_period(phi, q);
        if (dd.periodic) rep.warn("shift-periodic point: the digit stream is one of several");
    }
    const std::int64_t pmax = default_period_bound(phi, q.seed.m);
    const auto p = shift_period(phi, q, pmax);
    rep.line("shift period: " + (p ? std::to_string(*p) : "none up to " + std::to_string(pmax) + " (heuristic bound)"));
    rep.data["shift_period"] = p ? ordered_json(*p) : ordered_json(nullptr);
}

void cmd_qfp_verify(Report& rep, const std::string& file, const std::string& seed, std::int64_t radius) {
    const auto phi = load_substitution(file).substitution;
    const Qfp q = parse_seed(phi, seed);
    const Relation r = relation_offset(phi, q);
    const bool ok = verify(phi, q, radius);
    rep.line((ok ? "OK: " : "FAIL: ") + render_relation(r));
    rep.data["ok"] = ok;
    rep.data["relation"] = render_relation(r);
    rep.data["radius"] = radius;
    rep.failed = !ok;
}

// --- desub ---------------------------------------------------------------

const char* stop_name(TraceStop s) {
    switch (s) {
        case TraceStop::Depth: return "depth";
        case TraceStop::TooShort: return "too-short";
        case TraceStop::Ambiguous: return "ambiguous";
        case TraceStop::NotInLanguage: return "not-in-language";
    }
    return "?";
}

void cmd_desub(Report& rep, const std::string& file, const std::string& wtext, std::size_t depth) {
    const auto phi = load_substitution(file).substitution;
    const auto& A = phi.alphabet();
    const Window w = parse_window(A, wtext);
    const auto steps = desubstitute_window(phi, w);
    rep.line(std::to_string(steps.size()) + " desubstitution step(s)");
    ordered_json js = ordered_json::array();
    for (const auto& s : steps) {
        rep.line("  c=" + std::to_string(s.c) + " " + render_window(A, s.pred));
        js.push_back({{"c", s.c}, {"pred", render_window(A, s.pred)}});
    }
    rep.data["steps"] = js;
    const DesubTrace tr = desub_trace(phi, w, depth);
    rep.line("trace digits: " + digits_text(tr.digits) + " (stop: " + stop_name(tr.stop) + ")");
    rep.data["trace"] = {{"digits", tr.digits}, {"stop", stop_name(tr.stop)}};
    if (!phi.constant_length()) return;
    const DetectResult d = detect_qfp(phi, w, depth);
    rep.line("detection: " + to_string(d.kind));
    rep.data["detection"] = to_string(d.kind);
    if (d.qfp) {
        rep.line("  " + render_seed(A, *d.qfp) + "  " + render_relation(d.relation));
        rep.data["qfp"] = qfp_json(phi, *d.qfp);
    }
    if (d.kind == Detection::Ambiguous) rep.warn("ambiguous desubstitution: the window is too short to decide");
}

// --- kernel --------------------------------------------------------------

void cmd_kernel(Report& rep, const std::string& file, const std::string& seed, bool use_coding,
                const std::optional<std::string>& fmt) {
    const auto sf = load_substitution(file);
    const auto& phi = sf.substitution;
    if (use_coding && !sf.coding) throw Error("--coding given but the file has no coding");
    const Qfp q = parse_seed(phi, seed);
    const KernelAutomaton a = build_kernel_automaton(phi, q, use_coding ? &*sf.coding : nullptr);
    const KernelAutomaton mn = minimize(a);
    rep.line(render_seed(phi.alphabet(), q));
    rep.line("states: " + std::to_string(a.raw_states) + " raw, " + std::to_string(mn.size()) + " minimized");
    rep.data["raw_states"] = a.raw_states;
    rep.data["states"] = mn.size();
    if (fmt) {
        if (*fmt == "text") {
            rep.data["export"] = export_text(mn);
            std::istringstream in(export_text(mn));
            for (std::string l; std::getline(in, l);) rep.line(l);
        } else if (*fmt == "dot") {
            rep.data["export"] = export_dot(mn);
            std::istringstream in(export_dot(mn));
            for (std::string l; std::getline(in, l);) rep.line(l);
        } else {
            throw Error("unknown export format '" + *fmt + "' (text, dot)");
        }
    }
}

// --- kadic ---------------------------------------------------------------

void cmd_kadic(Report& rep, const std::vector<std::string>& relation, const std::vector<std::string>& expand) {
    auto to_int = [](const std::string& s) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw Error("");
            return v;
        } catch (...) {
            throw Error("not an integer: '" + s + "'");
        }
    };
    std::optional<KAdicRational> r;
    if (!relation.empty()) {
        const long long m = to_int(relation[1]), k = to_int(relation[2]);
        if (m < 1 || k < 2) throw Error("need m >= 1 and k >= 2");
        r = from_relation(to_int(relation[0]), static_cast<unsigned>(m), static_cast<unsigned>(k));
    } else if (!expand.empty()) {
        const std::string& f = expand[0];
        const long long k = to_int(expand[1]);
        if (k < 2) throw Error("need k >= 2");
        const auto slash = f.find('/');
        const BigInt p(to_int(f.substr(0, slash)));
        const BigInt q(slash == std::string::npos ? 1 : to_int(f.substr(slash + 1)));
        r = KAdicRational(p, q, static_cast<unsigned>(k));
    } else {
        throw Error("give --relation c m k or --expand p/q k");
    }
    const DigitExpansion d = expansion(*r);
    rep.line(render_fraction(*r) + "; digits " + render(d));
    rep.data["value"] = render_fraction(*r);
    rep.data["base"] = r->base();
    rep.data["pre"] = d.pre;
    rep.data["cycle"] = d.cycle;
}

// --- block ---------------------------------------------------------------

void cmd_block(Report& rep, const std::string& file, unsigned r, bool do_verify) {
    const auto phi = load_substitution(file).substitution;
    const BlockPresentation bp = block_substitution(phi, r);
    const auto& B = bp.hat.alphabet();
    rep.line(std::to_string(bp.blocks.size()) + " block letter(s) of length " + std::to_string(r));
    ordered_json imgs = ordered_json::object();
    for (Letter a = 0; a < B.size(); ++a) {
        std::string img;
        for (Letter b : bp.hat.image(a)) img += (img.empty() ? "" : " ") + B.token(b);
        rep.line("  [" + B.token(a) + "] -> " + img);
        imgs[B.token(a)] = img;
    }
    rep.data["images"] = imgs;
    if (!do_verify) return;
    const auto samples = sample_windows(phi, 100, 24, 1);
    const BlockLawReport lr = verify_block_laws(phi, r, samples);
    rep.line(std::string(lr.ok ? "OK" : "FAIL") + ": block laws, " + std::to_string(lr.checks) + " checks on " +
             std::to_string(lr.samples) + " sampled windows");
    for (const auto& f : lr.failures) rep.line("  " + f);
    rep.data["verify"] = {{"ok", lr.ok}, {"checks", lr.checks}, {"failures", lr.failures}};
    rep.failed = !lr.ok;
}

// --- factor --------------------------------------------------------------

void cmd_factor(Report& rep, const std::string& file, const std::string& code_file,
                const std::optional<std::string>& push, const std::optional<std::string>& fiber, std::int64_t radius,
                std::size_t depth) {
    const auto sf = load_substitution(file);
    const auto& phi = sf.substitution;
    SlidingBlockCode code = [&] {
        if (code_file == "coding") {
            if (!sf.coding) throw Error("the substitution file has no coding");
            return code_from_coding(phi, *sf.coding);
        }
        return parse_sliding_code(phi, read_file(code_file));
    }();
    if (push) {
        const Qfp q = parse_seed(phi, *push);
        const auto h = push_qfp(phi, code, q);
        const Window y = h.window(-radius, radius);
        rep.line("image of " + render_seed(phi.alphabet(), q));
        rep.line("kernel states: " + std::to_string(h.automaton.size()));
        rep.line("window: " + render_window(code.target, y));
        const auto p = smallest_period(y.letters, y.size() / 2);
        rep.line("period on the window: " + (p ? std::to_string(*p) : std::string("none")));
        rep.data["states"] = h.automaton.size();
        rep.data["window"] = render_window(code.target, y);
        rep.data["window_period"] = p ? ordered_json(*p) : ordered_json(nullptr);
    } else if (fiber) {
        const Window t = parse_window(code.target, *fiber);
        const FiberResult fr = fiber_windows(phi, code, t);
        rep.line(std::to_string(fr.windows.size()) + " preimage window(s)" + (fr.truncated ? " (truncated)" : ""));
        if (!fr.exact_language) rep.warn("language membership checked on factors only");
        if (fr.truncated) rep.warn("fiber search cap reached");
        ordered_json ws = ordered_json::array();
        for (const auto& w : fr.windows) ws.push_back(render_window(phi.alphabet(), w));
        if (fr.windows.size() <= 64)
            for (const auto& w : fr.windows) rep.line("  " + render_window(phi.alphabet(), w));
        rep.data["count"] = fr.windows.size();
        rep.data["windows"] = ws;
        if (phi.constant_length() && depth > 0) {
            const FiberCertificate fc = certify_fiber_qfp(phi, code, t, depth);
            rep.line(std::string("target periodic on the window: ") + (fc.target_periodic ? "yes" : "no"));
            ordered_json bs = ordered_json::array();
            for (const auto& b : fc.branches) {
                std::string l = "  " + render_window(phi.alphabet(), b.window) + "  " + to_string(b.kind);
                if (b.qfp) l += "  " + render_seed(phi.alphabet(), *b.qfp);
                rep.line(l);
                bs.push_back({{"window", render_window(phi.alphabet(), b.window)},
                              {"detection", to_string(b.kind)},
                              {"qfp", b.qfp ? ordered_json(render_seed(phi.alphabet(), *b.qfp)) : ordered_json(nullptr)}});
            }
            rep.data["certificate"] = {{"target_periodic", fc.target_periodic}, {"branches", bs}};
        }
    } else {
        throw Error("give --push <seed> or --fiber <window>");
    }
}

// --- onesided ------------------------------------------------------------

void cmd_onesided(Report& rep, const std::string& file, unsigned m, std::int64_t c, const std::string& prefix,
                  std::size_t len, bool do_desub) {
    const auto phi = load_substitution(file).substitution;
    const auto& A = phi.alphabet();
    const Word v = A.parse_word(prefix);
    const Word x = prolong_one_sided(phi, m, c, v, len);
    rep.line("point: " + render_one_sided(A, Word(x.begin(), x.begin() + std::min<std::size_t>(x.size(), 64)), 0));
    rep.data["prefix"] = A.render(x);
    const auto two = prolong_two_sided(phi, m, c, v, std::max<std::size_t>(len, 1000));
    if (two) {
        rep.line("two-sided parent: " + render_seed(A, two->parent) + "  " +
                 render_relation(relation_offset(phi, two->parent)));
        rep.data["parent"] = qfp_json(phi, two->parent);
        if (!two->parent.seed.in_system) rep.warn("the parent is not in X_φ");
    } else {
        rep.line("two-sided parent: none found");
        rep.data["parent"] = nullptr;
    }
    if (!do_desub) return;
    const auto steps = onesided_desub(phi, x);
    rep.line(std::to_string(steps.size()) + " desubstitution step(s)");
    ordered_json js = ordered_json::array();
    for (const auto& s : steps) {
        const Word head(s.pred.letters.begin(), s.pred.letters.begin() + std::min<std::size_t>(s.pred.size(), 64));
        rep.line("  c=" + std::to_string(s.c) + " " + render_one_sided(A, head, 0));
        js.push_back({{"c", s.c}, {"pred", A.render(s.pred.letters)}});
    }
    rep.data["steps"] = js;
    if (steps.size() > 1) rep.warn("one-sided desubstitution is not unique here");
}

// --- paper-examples ------------------------------------------------------

void cmd_paper_examples(Report& rep, const std::optional<std::string>& only) {
    ordered_json arr = ordered_json::array();
    for (const auto& ex : run_paper_examples(only)) {
        rep.line(std::string(ex.ok() ? "PASS " : "FAIL ") + ex.name + ": " + ex.title);
        ordered_json checks = ordered_json::array();
        for (const auto& c : ex.checks) {
            rep.line(std::string("  ") + (c.ok ? "ok   " : "FAIL ") + c.anchor + (c.detail.empty() ? "" : "  [" + c.detail + "]"));
            checks.push_back({{"anchor", c.anchor}, {"ok", c.ok}, {"detail", c.detail}});
        }
        arr.push_back({{"name", ex.name}, {"ok", ex.ok()}, {"checks", checks}});
        if (!ex.ok()) rep.failed = true;
    }
    rep.data["examples"] = arr;
}

void emit(const Report& rep, const Options& opt, double ms) {
    if (opt.json) {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = rep.command;
        j["ok"] = !rep.failed;
        j["result"] = rep.data;
        j["warnings"] = rep.warnings;
        if (!opt.no_timing) j["timing_ms"] = ms;
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& l : rep.lines) std::cout << l << "\n";
    for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
    if (!opt.no_timing) {
        std::ostringstream t;
        t.setf(std::ios::fixed);
        t.precision(1);
        t << ms;
        std::cout << "time: " << t.str() << " ms\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qfix: quasi-fixed points of substitutions and their automatic structure"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--json", opt.json, "Print a JSON report (schema 1)");
    app.add_flag("--no-timing", opt.no_timing, "Omit the timing line");

    std::string file, seed, window, code_file, prefix;
    std::optional<std::string> contains, export_fmt, push, fiber, only;
    std::size_t max_len = 4, depth = 8, len = 64;
    unsigned period = 1, r = 2;
    std::int64_t radius = 32, offset = 0;
    bool do_dedup = false, use_coding = false, do_verify = false, do_desub = false;
    std::vector<std::string> relation, expand;

    auto* analyze_cmd = app.add_subcommand("analyze", "Structural properties and the language of X_φ");
    analyze_cmd->add_option("file", file, "Substitution file")->required();

    auto* lang = app.add_subcommand("language", "Words of the language of X_φ");
    lang->add_option("file", file)->required();
    lang->add_option("--max-len", max_len, "Largest word length")->required();
    lang->add_option("--contains", contains, "Membership query");

    auto* qfp = app.add_subcommand("qfp", "Quasi-fixed points");
    qfp->require_subcommand(1);
    auto* qlist = qfp->add_subcommand("list", "Enumerate seeds of one period");
    qlist->add_option("file", file)->required();
    qlist->add_option("--period,-m", period, "Period m")->required();
    qlist->add_flag("--dedup", do_dedup, "Group equal points");
    auto* qshow = qfp->add_subcommand("show", "Window, relation and address of a point");
    auto* qverify = qfp->add_subcommand("verify", "Check the relation letterwise");
    for (auto* s : {qshow, qverify}) {
        s->add_option("file", file)->required();
        s->add_option("--seed", seed, "e.g. \"interior a=0 i=5 m=4\"")->required();
        s->add_option("--radius", radius, "Window radius");
    }

    auto* desub = app.add_subcommand("desub", "Desubstitute a window and look for a quasi-fixed point");
    desub->add_option("file", file)->required();
    desub->add_option("--window", window, "e.g. \"pos=-4 01101001\"")->required();
    desub->add_option("--depth", depth, "Desubstitution depth");

    auto* kernel = app.add_subcommand("kernel", "Kernel automaton of a point");
    kernel->add_option("file", file)->required();
    kernel->add_option("--seed", seed)->required();
    kernel->add_flag("--coding", use_coding, "Apply the coding of the file");
    kernel->add_option("--export", export_fmt, "text or dot");

    auto* kadic = app.add_subcommand("kadic", "k-adic rationals");
    auto* rel_opt = kadic->add_option("--relation", relation, "c m k: address c/(1-k^m)")->expected(3);
    kadic->add_option("--expand", expand, "p/q k: digit expansion")->expected(2)->excludes(rel_opt);

    auto* block = app.add_subcommand("block", "Higher block presentation");
    block->add_option("file", file)->required();
    block->add_option("--r", r, "Block length")->required();
    block->add_flag("--verify", do_verify, "Check the block laws on sampled windows");

    auto* factor = app.add_subcommand("factor", "Push points through a sliding block code, or list fibers");
    factor->add_option("file", file)->required();
    factor->add_option("--code", code_file, "Code file, or 'coding' for the coding of the substitution file")
        ->required();
    auto* push_opt = factor->add_option("--push", push, "Seed of the point to push");
    factor->add_option("--fiber", fiber, "Target window")->excludes(push_opt);
    factor->add_option("--radius", radius, "Radius of the printed image window");
    factor->add_option("--depth", depth, "Desubstitution depth for fiber certificates (0 skips)");

    auto* onesided = app.add_subcommand("onesided", "One-sided point x = T^c(φ^m(x)) grown from a prefix");
    onesided->add_option("file", file)->required();
    onesided->add_option("--period,-m", period)->required();
    onesided->add_option("--offset,-c", offset, "c (may be negative)")->required()->allow_extra_args(false);
    onesided->add_option("--prefix", prefix, "Prefix evidence v")->required();
    onesided->add_option("--len", len, "Length to grow");
    onesided->add_flag("--desub", do_desub, "List one-sided desubstitution steps");

    auto* paper = app.add_subcommand("paper-examples", "Run the worked examples");
    paper->add_option("--only", only, "thue-morse, remark, fiber, r-example, appendix, club");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    Report rep;
    for (int i = 1; i < argc; ++i) rep.command += (i > 1 ? " " : "") + std::string(argv[i]);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (analyze_cmd->parsed()) cmd_analyze(rep, file);
        else if (lang->parsed()) cmd_language(rep, file, max_len, contains);
        else if (qlist->parsed()) cmd_qfp_list(rep, file, period, do_dedup);
        else if (qshow->parsed()) cmd_qfp_show(rep, file, seed, radius);
        else if (qverify->parsed()) cmd_qfp_verify(rep, file, seed, radius);
        else if (desub->parsed()) cmd_desub(rep, file, window, depth);
        else if (kernel->parsed()) cmd_kernel(rep, file, seed, use_coding, export_fmt);
        else if (kadic->parsed()) cmd_kadic(rep, relation, expand);
        else if (block->parsed()) cmd_block(rep, file, r, do_verify);
        else if (factor->parsed()) cmd_factor(rep, file, code_file, push, fiber, radius, depth);
        else if (onesided->parsed()) cmd_onesided(rep, file, period, offset, prefix, len, do_desub);
        else if (paper->parsed()) cmd_paper_examples(rep, only);
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(rep, opt, ms);
    return rep.failed ? 1 : 0;
}
