#include <doctest.h>

#include "qfix/corpus.hpp"
#include "qfix/kernel.hpp"
#include "support.hpp"

using namespace qfix;
using namespace testing_support;

namespace {

// F_{psi,1} straight from the images, without the library.
std::set<std::vector<char>> first_columns(const oracle::Images& psi) {
    std::set<std::vector<char>> out;
    for (std::size_t i = 0; i < psi[0].size(); ++i) {
        std::vector<char> f;
        for (const auto& w : psi) f.push_back(w[i]);
        out.insert(f);
    }
    return out;
}

}  // namespace

TEST_CASE("column maps") {
    const auto phi = thue_morse();
    const ColumnFamily both{LetterMap{0, 1}, LetterMap{1, 0}};
    CHECK(column_maps(phi, 1) == both);
    CHECK(column_maps(phi, 3) == both);
    const auto a = corpus_entry("constant").phi;
    CHECK(column_maps(a, 4) == ColumnFamily{LetterMap{0}});
    CHECK(column_constant_power(phi) == 1);
    CHECK(column_constant_power(a) == 1);
}

TEST_CASE("column-constant power passes its post-hoc check on the corpus") {
    for (const auto& e : corpus()) {
        if (!e.phi.constant_length()) continue;
        CAPTURE(e.name);
        const unsigned n = column_constant_power(e.phi);
        const auto psi = power(e.phi, n);
        CHECK(is_column_constant(psi));
        CHECK(first_columns(images(psi)) == first_columns(images(power(psi, 2))));
    }
}

TEST_CASE("kernel automaton of the Thue-Morse quasi-fixed point") {
    const auto phi = thue_morse();
    const Qfp z = parse_seed(phi, "interior a=0 i=5 m=4");
    const auto a = minimize(build_kernel_automaton(phi, z));
    CHECK(eval_window(a, -10000, 10000) == materialize(phi, z, -10000, 10000));
    CHECK(str(eval_window(a, -5, -1).letters) == "01101");
    CHECK(equal_sequences(a, minimize(build_kernel_automaton(phi, shift(z, 0)))));
    CHECK_FALSE(equal_sequences(a, minimize(build_kernel_automaton(phi, shift(z, 1)))));

    // Brute-force kernel: subsequences n -> z_{2^j n + i}, j <= 6.
    const std::int64_t r = 1000, reach = 64 * (r + 1);
    const Window w = materialize(phi, z, -reach, reach);
    const auto at = [&](long long n) { return char('0' + w.at(n)); };
    CHECK(reachable_within(a, 6) == oracle::kernel_classes(at, 2, 6, r));
}

TEST_CASE("one-sided Thue-Morse has a kernel of two classes") {
    const auto phi = thue_morse();
    const Qfp fp = parse_seed(phi, "bridge b=1 a=0 m=2");
    const auto a = minimize(build_kernel_automaton(phi, fp));
    const auto pos = minimize(one_sided_view(a, false));
    CHECK(kernel_size(pos) == 2);
    const Window w = materialize(phi, fp, 0, 999);
    for (std::int64_t n = 0; n < 1000; ++n) REQUIRE(eval(pos, n) == w.at(n));
    const auto neg = one_sided_view(a, true);
    const Window v = materialize(phi, fp, -1000, -1);
    for (std::int64_t n = 0; n < 1000; ++n) REQUIRE(eval(neg, n) == v.at(-1 - n));
}

TEST_CASE("constant sequences minimize to one state") {
    const auto a = corpus_entry("constant").phi;
    const auto k = minimize(build_kernel_automaton(a, Qfp{enumerate_seeds(a, 1)[0], 0}));
    CHECK(kernel_size(k) == 1);
    CHECK(equal_sequences(k, k));
    const std::string text = export_text(k);
    CHECK(text.find("state 0") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);  // header, output, one state, two edges

    const auto e = corpus_entry("fiber");
    const auto c = minimize(build_kernel_automaton(e.phi, parse_seed(e.phi, "bridge b=2 a=2 m=1"), &*e.coding));
    CHECK(kernel_size(c) == 1);
}

TEST_CASE("eval agrees with materialize for corpus points and their codings") {
    for (const auto& e : corpus()) {
        if (!e.phi.constant_length()) continue;
        for (unsigned m = 1; m <= 2; ++m)
            for (const auto& s : enumerate_seeds(e.phi, m)) {
                const Qfp q{s, 3};
                CAPTURE(e.name);
                CAPTURE(render_seed(e.phi.alphabet(), q));
                const Window w = materialize(e.phi, q, -2000, 2000);
                const auto a = minimize(build_kernel_automaton(e.phi, q));
                CHECK(eval_window(a, -2000, 2000) == w);
                if (e.coding) {
                    const auto c = minimize(build_kernel_automaton(e.phi, q, &*e.coding));
                    CHECK(eval_window(c, -2000, 2000) == e.coding->apply(w));
                }
            }
    }
}

TEST_CASE("export round trip") {
    const auto phi = thue_morse();
    const auto a = minimize(build_kernel_automaton(phi, parse_seed(phi, "interior a=0 i=5 m=4")));
    const auto b = import_text(export_text(a));
    CHECK(eval_window(b, -1000, 1000) == eval_window(a, -1000, 1000));
    CHECK(export_text(b) == export_text(a));
    const std::string dot = export_dot(a);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}'));
    CHECK(static_cast<std::size_t>(std::count(dot.begin(), dot.end(), '>')) >= a.size() * 2);
}
