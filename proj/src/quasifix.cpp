#include "qfix/quasifix.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qfix/error.hpp"
#include "qfix/language.hpp"

namespace qfix {

namespace {

constexpr int kMaxGrowthSteps = 4096;

Window core_window(const QfpSeed& s) {
    if (s.form == SeedForm::Interior) return Window{0, {s.a}};
    return Window{-1, {s.b, s.a}};
}

// Grows the seed point y on a window containing [lo, hi] by y <- T^c0(psi(y)).
Window grow_seed(const Substitution& psi, const QfpSeed& s, std::int64_t lo, std::int64_t hi) {
    const std::int64_t c0 = seed_offset(s);
    Window y = core_window(s);
    for (int step = 0; !y.covers(lo, hi); ++step) {
        if (step > kMaxGrowthSteps) throw InvariantError("seed window stopped growing");
        Window next = psi.apply(y);
        next.lo -= c0;
        y = std::move(next);
    }
    return y.slice(lo, hi);
}

std::int64_t ipow(std::int64_t base, unsigned e) {
    std::int64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (std::int64_t{1} << 62) / std::max<std::int64_t>(base, 1))
            throw Error("k^m overflows 64-bit offsets");
        r *= base;
    }
    return r;
}

}  // namespace

std::int64_t seed_offset(const QfpSeed& seed) {
    return seed.form == SeedForm::Interior ? static_cast<std::int64_t>(seed.i) : 0;
}

std::vector<QfpSeed> enumerate_seeds(const Substitution& phi, unsigned m) {
    if (m < 1) throw Error("period must be at least 1");
    const Substitution psi = power(phi, m);
    const auto prof = prolongability(psi);
    LanguageTable lang(phi);
    const auto& pairs = lang.pairs();
    std::vector<QfpSeed> out;
    for (Letter b : prof.left_prolongable)
        for (Letter a : prof.right_prolongable) {
            QfpSeed s;
            s.m = m;
            s.form = SeedForm::Bridge;
            s.b = b;
            s.a = a;
            s.in_system = pairs.count({b, a}) > 0;
            out.push_back(s);
        }
    for (Letter a = 0; a < psi.size(); ++a) {
        const auto& img = psi.image(a);
        for (std::size_t i = 1; i + 1 < img.size(); ++i)
            if (img[i] == a) {
                QfpSeed s;
                s.m = m;
                s.form = SeedForm::Interior;
                s.a = a;
                s.i = i;
                out.push_back(s);
            }
    }
    return out;
}

void validate_seed(const Substitution& phi, const QfpSeed& s) {
    if (s.m < 1) throw Error("seed period must be at least 1");
    if (s.a >= phi.size() || (s.form == SeedForm::Bridge && s.b >= phi.size()))
        throw Error("seed letter out of range");
    const Substitution psi = power(phi, s.m);
    const auto& alpha = phi.alphabet();
    if (s.form == SeedForm::Bridge) {
        if (psi.first(s.a) != s.a)
            throw Error("'" + alpha.token(s.a) + "' is not right-prolongable for phi^" + std::to_string(s.m));
        if (psi.last(s.b) != s.b)
            throw Error("'" + alpha.token(s.b) + "' is not left-prolongable for phi^" + std::to_string(s.m));
        return;
    }
    const auto& img = psi.image(s.a);
    if (s.i < 1 || s.i + 1 >= img.size() || img[s.i] != s.a)
        throw Error("no interior occurrence of '" + alpha.token(s.a) + "' at offset " + std::to_string(s.i) +
                    " in phi^" + std::to_string(s.m) + "(" + alpha.token(s.a) + ")");
}

Relation relation_offset(const Substitution& phi, const Qfp& q) {
    const std::int64_t c0 = seed_offset(q.seed);
    const std::int64_t t = q.shift;
    if (auto k = phi.constant_length()) {
        const std::int64_t km = ipow(static_cast<std::int64_t>(*k), q.seed.m);
        return {q.seed.m, c0 + t * (1 - km)};
    }
    // psi(T^t y) = T^{L} psi(y) with L the signed image length of y up to t.
    const Substitution psi = power(phi, q.seed.m);
    const Window y = grow_seed(psi, q.seed, std::min<std::int64_t>(t, 0) - 1, std::max<std::int64_t>(t, 0) + 1);
    return {q.seed.m, c0 + t - psi.image_offset(y, t)};
}

Window materialize(const Substitution& phi, const Qfp& q, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw Error("empty window requested");
    const Substitution psi = power(phi, q.seed.m);
    Window y = grow_seed(psi, q.seed, lo + q.shift, hi + q.shift);
    y.lo -= q.shift;
    return y;
}

bool relation_holds(const Substitution& psi, std::int64_t c, const Window& z, std::int64_t lo, std::int64_t hi) {
    if (!z.covers(lo, hi) || z.lo > 0 || z.hi() < -1) return false;
    Window img = psi.apply(z);
    img.lo -= c;
    if (!img.covers(lo, hi)) return false;
    for (std::int64_t n = lo; n <= hi; ++n)
        if (img.at(n) != z.at(n)) return false;
    return true;
}

bool verify(const Substitution& phi, const Qfp& q, std::int64_t radius) {
    if (radius < 1) throw Error("radius must be at least 1");
    const Relation r = relation_offset(phi, q);
    const std::int64_t reach = radius + (r.c < 0 ? -r.c : r.c) + 1;
    const Window z = materialize(phi, q, -reach, reach);
    return relation_holds(power(phi, r.m), r.c, z, -radius, radius);
}

Qfp shift(const Qfp& q, std::int64_t t) { return Qfp{q.seed, q.shift + t}; }

Qfp normalize(const Substitution& phi, unsigned m, std::int64_t c, const Window& z) {
    if (z.lo > 0 || z.hi() < 0) throw Error("window must contain position 0");
    const Substitution psi = power(phi, m);
    // P[u - lo] = signed start of block u of psi(z).
    const std::size_t n = z.size();
    std::vector<std::int64_t> start(n + 1);
    start[0] = psi.image_offset(z, z.lo);
    for (std::size_t j = 0; j < n; ++j)
        start[j + 1] = start[j] + static_cast<std::int64_t>(psi.image(z.letters[j]).size());

    // y = T^u(z) satisfies y = T^{c''}(psi(y)) with c'' = u + c - P(u), and
    // 0 <= c'' < |psi(y_0)| exactly when u + c falls in block u.
    std::optional<std::int64_t> found;
    for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t u = z.lo + static_cast<std::int64_t>(j);
        const std::int64_t pos = u + c;
        if (pos < start[j] || pos >= start[j + 1]) continue;
        if (pos == start[j]) {
            if (j == 0) continue;  // need y_{-1}
            found = u;
            break;
        }
        if (!found) found = u;
    }
    if (!found) throw Error("window too short or relation does not hold");
    const std::int64_t u = *found;
    const std::size_t j = static_cast<std::size_t>(u - z.lo);
    const std::int64_t cc = u + c - start[j];
    QfpSeed s;
    s.m = m;
    s.a = z.at(u);
    if (cc == 0) {
        s.form = SeedForm::Bridge;
        s.b = z.at(u - 1);
        LanguageTable lang(phi);
        s.in_system = lang.pairs().count({s.b, s.a}) > 0;
    } else {
        s.form = SeedForm::Interior;
        s.i = static_cast<std::size_t>(cc);
    }
    validate_seed(phi, s);
    Qfp q{s, -u};
    // The seed is forced by the relation; every letter of the window must match.
    if (!(materialize(phi, q, z.lo, z.hi()) == z)) throw Error("window does not satisfy the relation");
    return q;
}

Qfp normalize(const Substitution& phi, unsigned m, std::int64_t c,
              const std::function<Window(std::int64_t)>& window) {
    std::int64_t r = (c < 0 ? -c : c) + 16;
    for (int attempt = 0;; ++attempt) {
        const Window z = window(r);
        try {
            return normalize(phi, m, c, z);
        } catch (const Error&) {
            if (attempt >= 12) throw;
        }
        r *= 2;
    }
}

Qfp substitute(const Substitution& phi, const Qfp& q) {
    const Relation rel = relation_offset(phi, q);
    const Substitution psi = power(phi, rel.m);
    // phi(T^c w) = T^{L}(phi(w)) with L the signed image length of w up to c,
    // applied to w = psi(z).
    std::int64_t cp;
    if (auto k = phi.constant_length()) {
        cp = rel.c * static_cast<std::int64_t>(*k);
    } else {
        const std::int64_t r = (rel.c < 0 ? -rel.c : rel.c) + 2;
        const Window pz = psi.apply(materialize(phi, q, -r, r));
        cp = phi.image_offset(pz, rel.c);
    }
    return normalize(phi, rel.m, cp, [&](std::int64_t r) { return phi.apply(materialize(phi, q, -r, r)); });
}

unsigned minimal_period(const Substitution& phi, const Qfp& q) {
    const auto k = phi.constant_length();
    if (!k) throw Error("minimal period needs a constant-length substitution");
    const Relation rel = relation_offset(phi, q);
    const BigInt den = boost::multiprecision::pow(BigInt(*k), rel.m) - 1;
    for (unsigned d = 1; d < rel.m; ++d) {
        if (rel.m % d) continue;
        // Iterating z = T^e(phi^d(z)) m/d times gives c = e (k^m - 1)/(k^d - 1).
        const BigInt num = BigInt(rel.c) * (boost::multiprecision::pow(BigInt(*k), d) - 1);
        if (num % den != 0) continue;
        const auto e = static_cast<std::int64_t>(num / den);
        try {
            const Qfp cand =
                normalize(phi, d, e, [&](std::int64_t r) { return materialize(phi, q, -r, r); });
            if (is_equal(phi, cand, q)) return d;
        } catch (const Error&) {
            // relation fails at period d
        }
    }
    return rel.m;
}

bool is_equal(const Substitution& phi, const Qfp& p, const Qfp& q) { return compare(phi, p, q).equal; }

std::int64_t default_period_bound(const Substitution& phi, unsigned m) {
    const auto n = static_cast<std::int64_t>(phi.size());
    const auto k = static_cast<std::int64_t>(phi.max_image_length());
    return ipow(k, m) * n * n;
}

std::optional<std::int64_t> shift_period(const Substitution& phi, const Qfp& q, std::int64_t pmax) {
    for (std::int64_t p = 1; p <= pmax; ++p)
        if (compare(phi, q, shift(q, p)).equal) return p;
    return std::nullopt;
}

std::vector<std::vector<Qfp>> dedup(const Substitution& phi, const std::vector<Qfp>& points) {
    std::vector<std::vector<Qfp>> groups;
    for (const auto& q : points) {
        bool placed = false;
        for (auto& g : groups)
            if (is_equal(phi, g.front(), q)) {
                g.push_back(q);
                placed = true;
                break;
            }
        if (!placed) groups.push_back({q});
    }
    return groups;
}

std::string render_seed(const Alphabet& alpha, const Qfp& q) {
    std::ostringstream out;
    out << "qfp m=" << q.seed.m;
    if (q.seed.form == SeedForm::Interior)
        out << " form=interior a=" << alpha.token(q.seed.a) << " i=" << q.seed.i;
    else
        out << " form=bridge b=" << alpha.token(q.seed.b) << " a=" << alpha.token(q.seed.a);
    out << " shift=" << q.shift;
    return out.str();
}

Qfp parse_seed(const Substitution& phi, std::string_view text, std::optional<unsigned> default_m) {
    std::istringstream in{std::string(text)};
    std::string tok;
    std::map<std::string, std::string> kv;
    std::optional<SeedForm> form;
    while (in >> tok) {
        if (tok == "qfp") continue;
        if (tok == "interior" || tok == "bridge") {
            kv["form"] = tok;
            continue;
        }
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error("seed: expected key=value, got '" + tok + "'");
        auto key = tok.substr(0, eq);
        if (key == "t") key = "shift";
        if (kv.count(key)) throw Error("seed: duplicate key '" + key + "'");
        kv[key] = tok.substr(eq + 1);
    }
    auto num = [&](const std::string& key) -> std::int64_t {
        try {
            std::size_t used = 0;
            const auto v = std::stoll(kv.at(key), &used);
            if (used != kv.at(key).size()) throw std::invalid_argument(key);
            return v;
        } catch (const std::out_of_range&) {
            throw Error("seed: missing or out-of-range '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw Error("seed: '" + key + "' is not an integer");
        }
    };
    for (const auto& [key, value] : kv)
        if (key != "form" && key != "a" && key != "b" && key != "i" && key != "m" && key != "shift")
            throw Error("seed: unknown key '" + key + "'");
    if (!kv.count("form")) throw Error("seed: form (interior or bridge) is required");
    if (kv["form"] == "interior")
        form = SeedForm::Interior;
    else if (kv["form"] == "bridge")
        form = SeedForm::Bridge;
    else
        throw Error("seed: unknown form '" + kv["form"] + "'");

    Qfp q;
    q.seed.form = *form;
    if (kv.count("m")) {
        const auto m = num("m");
        if (m < 1 || m > 64) throw Error("seed: m out of range");
        q.seed.m = static_cast<unsigned>(m);
    } else if (default_m) {
        q.seed.m = *default_m;
    } else {
        throw Error("seed: period m is required");
    }
    if (!kv.count("a")) throw Error("seed: letter a is required");
    q.seed.a = phi.alphabet().at(kv["a"]);
    if (*form == SeedForm::Bridge) {
        if (!kv.count("b")) throw Error("seed: bridge needs b");
        if (kv.count("i")) throw Error("seed: bridge takes no i");
        q.seed.b = phi.alphabet().at(kv["b"]);
        LanguageTable lang(phi);
        q.seed.in_system = lang.pairs().count({q.seed.b, q.seed.a}) > 0;
    } else {
        if (!kv.count("i")) throw Error("seed: interior needs i");
        if (kv.count("b")) throw Error("seed: interior takes no b");
        const auto i = num("i");
        if (i < 0) throw Error("seed: i must be non-negative");
        q.seed.i = static_cast<std::size_t>(i);
    }
    if (kv.count("shift")) q.shift = num("shift");
    validate_seed(phi, q.seed);
    return q;
}

std::string render_relation(const Relation& r) {
    return "T^" + std::to_string(r.c) + "(φ^" + std::to_string(r.m) + "(z))=z";
}

}  // namespace qfix
