#include "qfix/onesided.hpp"

#include <algorithm>

#include "qfix/error.hpp"

namespace qfix {

Word materialize(const Substitution& phi, const OneSidedQfp& x, std::size_t len) {
    if (len == 0) return {};
    return materialize(phi, x.parent, x.start, x.start + static_cast<std::int64_t>(len) - 1).letters;
}

Word prolong_one_sided(const Substitution& phi, unsigned m, std::int64_t c, const Word& v, std::size_t len) {
    if (v.empty()) throw Error("prefix evidence must be non-empty");
    const Substitution psi = power(phi, m);
    Word x = v;
    const std::size_t lead = c < 0 ? static_cast<std::size_t>(-c) : 0;
    if (lead > v.size()) throw Error("prefix shorter than the negative offset");
    while (x.size() < len) {
        Word next;
        const Word img = psi.apply(x);
        if (c >= 0) {
            if (img.size() <= static_cast<std::size_t>(c) + x.size())
                throw Error("prefix too short: |phi^m(v)| must exceed c + |v|");
            next.assign(img.begin() + c, img.end());
        } else {
            next.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lead));
            next.insert(next.end(), img.begin(), img.end());
            if (next.size() <= x.size()) throw Error("prefix does not grow under the relation");
        }
        if (!std::equal(x.begin(), x.end(), next.begin())) throw Error("prefix is inconsistent with the relation");
        x = std::move(next);
    }
    x.resize(len);
    return x;
}

std::optional<OneSidedQfp> prolong_two_sided(const Substitution& phi, unsigned m, std::int64_t c, const Word& v,
                                             std::size_t check_len) {
    const Word x = prolong_one_sided(phi, m, c, v, check_len);
    const unsigned raise = prolongability(power(phi, m)).ambi_idempotent_power;
    const std::int64_t reach = (c < 0 ? -c : c) + 512;
    const auto n = static_cast<std::int64_t>(x.size());
    std::optional<OneSidedQfp> fallback;
    for (unsigned j = 1; j <= raise; ++j) {
        for (const auto& seed : enumerate_seeds(phi, m * j)) {
            const Window y = materialize(phi, Qfp{seed, 0}, -reach, reach + n);
            // Smallest |p| first, then p >= 0 before p < 0.
            for (std::int64_t d = 0; d <= reach; ++d)
                for (std::int64_t p : {d, -d}) {
                    if (d == 0 && p < 0) continue;
                    if (!std::equal(x.begin(), x.end(), y.letters.begin() + (p - y.lo))) continue;
                    OneSidedQfp o{Qfp{seed, p}, 0};
                    if (seed.in_system) return o;
                    if (!fallback) fallback = o;
                }
        }
        if (fallback) return fallback;
    }
    return fallback;
}

std::vector<DesubStep> onesided_desub(const Substitution& phi, const Word& y) {
    if (y.empty()) throw Error("empty prefix");
    return desubstitute_window(phi, Window{0, y});
}

FactorizationCount interpretation_count(const Word& y, const std::vector<Word>& W) {
    return disjoint_factorization_count(Window{0, y}, W);
}

std::string render_one_sided(const Alphabet& alpha, const Word& y, std::int64_t start) {
    return "start=" + std::to_string(start) + " " + alpha.render(y);
}

}  // namespace qfix
