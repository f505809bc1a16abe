#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfix/substitution.hpp"

namespace qfix {

enum class SeedForm { Bridge, Interior };

// Finite description of a point y with y = T^c0(psi(y)), psi = phi^m.
//   Bridge{b, a}:   y = ^w psi(b) . psi^w(a), c0 = 0, a at position 0.
//   Interior{a, i}: psi(a) = v a v' with |v| = i, y = ...psi(v) v . a v' psi(v')...,
//                   c0 = i, a at position 0.
struct QfpSeed {
    unsigned m = 1;
    SeedForm form = SeedForm::Bridge;
    Letter a = 0;
    Letter b = 0;        // Bridge only
    std::size_t i = 0;   // Interior only
    bool in_system = true;

    bool operator==(const QfpSeed&) const = default;
};

// The point T^shift(y) for the seed point y.
struct Qfp {
    QfpSeed seed;
    std::int64_t shift = 0;

    bool operator==(const Qfp&) const = default;
};

// z = T^c(phi^m(z))
struct Relation {
    unsigned m = 1;
    std::int64_t c = 0;
    bool operator==(const Relation&) const = default;
};

// Bridges ordered by (b, a), then interiors ordered by (a, i).
std::vector<QfpSeed> enumerate_seeds(const Substitution& phi, unsigned m);
void validate_seed(const Substitution& phi, const QfpSeed& seed);  // throws Error

std::int64_t seed_offset(const QfpSeed& seed);  // c0
Relation relation_offset(const Substitution& phi, const Qfp& q);

Window materialize(const Substitution& phi, const Qfp& q, std::int64_t lo, std::int64_t hi);

// z agrees with T^c(psi(z)) on [lo, hi]; false when the window is too short
// to decide.
bool relation_holds(const Substitution& psi, std::int64_t c, const Window& z, std::int64_t lo,
                    std::int64_t hi);
bool verify(const Substitution& phi, const Qfp& q, std::int64_t radius);

Qfp shift(const Qfp& q, std::int64_t t);

// The Qfp equal to a point z with z = T^c(phi^m(z)), read off a window of z
// around 0. Throws Error if the window does not satisfy the relation.
Qfp normalize(const Substitution& phi, unsigned m, std::int64_t c, const Window& z);
// Same, asking `window(r)` for windows of growing radius until one suffices.
Qfp normalize(const Substitution& phi, unsigned m, std::int64_t c,
              const std::function<Window(std::int64_t)>& window);

Qfp substitute(const Substitution& phi, const Qfp& q);  // phi(z)
unsigned minimal_period(const Substitution& phi, const Qfp& q);

struct Comparison {
    bool equal = false;
    bool exact = false;  // false: window comparison only
};
// Exact through kernel automata for constant length, otherwise windows of
// the given radius.
Comparison compare(const Substitution& phi, const Qfp& p, const Qfp& q, std::int64_t radius = 1000);
bool is_equal(const Substitution& phi, const Qfp& p, const Qfp& q);

std::int64_t default_period_bound(const Substitution& phi, unsigned m);
// Least p in [1, pmax] with T^p(z) = z.
std::optional<std::int64_t> shift_period(const Substitution& phi, const Qfp& q, std::int64_t pmax);

// Groups of equal points, in input order.
std::vector<std::vector<Qfp>> dedup(const Substitution& phi, const std::vector<Qfp>& points);

// `qfp m=<m> form=interior a=<tok> i=<i> shift=<t>` or
// `qfp m=<m> form=bridge b=<tok> a=<tok> shift=<t>`.
std::string render_seed(const Alphabet& alpha, const Qfp& q);
// Also accepts the short forms `interior a=0 i=5 m=4` and `bridge b=1 a=0 m=2`.
Qfp parse_seed(const Substitution& phi, std::string_view text, std::optional<unsigned> default_m = {});

// `T^5(φ^4(z))=z`
std::string render_relation(const Relation& r);

}  // namespace qfix
