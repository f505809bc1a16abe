#include <doctest.h>

#include "qfix/corpus.hpp"
#include "qfix/error.hpp"
#include "qfix/quasifix.hpp"
#include "support.hpp"

using namespace qfix;
using namespace testing_support;

namespace {

Qfp tm_z(const Substitution& phi) { return parse_seed(phi, "interior a=0 i=5 m=4"); }

}  // namespace

TEST_CASE("seed enumeration on Thue-Morse") {
    const auto phi = thue_morse();
    CHECK(enumerate_seeds(phi, 1).empty());
    const auto s4 = enumerate_seeds(phi, 4);
    std::vector<std::size_t> zeros, ones;
    std::size_t bridges = 0;
    for (const auto& s : s4) {
        if (s.form == SeedForm::Bridge) {
            ++bridges;
            CHECK(s.in_system);
        } else {
            (s.a == 0 ? zeros : ones).push_back(s.i);
        }
    }
    CHECK(bridges == 4);
    CHECK(zeros == std::vector<std::size_t>{3, 5, 6, 9, 10, 12});
    CHECK(ones.size() == 6);
    const auto c = enumerate_seeds(corpus_entry("constant").phi, 1);
    REQUIRE(c.size() == 1);
    CHECK(c[0].form == SeedForm::Bridge);
}

TEST_CASE("relation offsets") {
    const auto phi = thue_morse();
    const Qfp z = tm_z(phi);
    CHECK(relation_offset(phi, z) == Relation{4, 5});
    CHECK(relation_offset(phi, shift(z, 1)) == Relation{4, -10});
    CHECK(render_relation(relation_offset(phi, z)) == "T^5(φ^4(z))=z");
    for (const auto& s : enumerate_seeds(phi, 2))
        if (s.form == SeedForm::Bridge) CHECK(relation_offset(phi, Qfp{s, 0}) == Relation{2, 0});
}

TEST_CASE("materialization of the Thue-Morse quasi-fixed point") {
    const auto phi = thue_morse();
    const Qfp z = tm_z(phi);
    CHECK(str(materialize(phi, z, 0, 10).letters) == "00110010110");
    CHECK(str(materialize(phi, z, -5, -1).letters) == "01101");
    const Window w = materialize(phi, z, -3000, 3000);
    CHECK(oracle::relation_mismatches(images(power(phi, 4)), 5, win(w)) == 0);
    const auto a = corpus_entry("constant").phi;
    const Window aw = materialize(a, Qfp{enumerate_seeds(a, 1)[0], 0}, -20, 20);
    CHECK(std::all_of(aw.letters.begin(), aw.letters.end(), [](Letter x) { return x == 0; }));
}

TEST_CASE("verification") {
    const auto phi = thue_morse();
    const Qfp z = tm_z(phi);
    CHECK(verify(phi, z, 10000));
    Window w = materialize(phi, z, -200, 200);
    CHECK(relation_holds(power(phi, 4), 5, w, -100, 100));
    w.letters[150] ^= 1;
    CHECK_FALSE(relation_holds(power(phi, 4), 5, w, -100, 100));
}

TEST_CASE("every seed of every corpus substitution verifies") {
    for (const auto& e : corpus())
        for (unsigned m = 1; m <= 2; ++m)
            for (const auto& s : enumerate_seeds(e.phi, m)) {
                CAPTURE(e.name);
                CAPTURE(render_seed(e.phi.alphabet(), Qfp{s, 0}));
                CHECK(verify(e.phi, Qfp{s, 0}, 300));
                CHECK(verify(e.phi, Qfp{s, 3}, 300));
            }
}

TEST_CASE("nonconstant length: Fibonacci") {
    const auto phi = corpus_entry("fibonacci").phi;
    const auto seeds = enumerate_seeds(phi, 2);
    REQUIRE_FALSE(seeds.empty());
    for (const auto& s : seeds)
        for (std::int64_t t : {-3, 0, 2}) {
            const Qfp q{s, t};
            CHECK(verify(phi, q, 500));
            const Relation r = relation_offset(phi, q);
            const Window big = materialize(phi, q, -2000, 2000);
            const Window img = power(phi, r.m).apply(big);
            for (std::int64_t n = -300; n <= 300; ++n) REQUIRE(img.at(n + r.c) == big.at(n));
        }
}

TEST_CASE("normalize recovers the seed from a window") {
    const auto phi = thue_morse();
    const Qfp z = tm_z(phi);
    for (std::int64_t t : {-7, -1, 0, 1, 4}) {
        const Qfp q = shift(z, t);
        const Relation r = relation_offset(phi, q);
        const Qfp back = normalize(phi, r.m, r.c, materialize(phi, q, -400, 400));
        CHECK(back == q);
    }
    Window bad = materialize(phi, z, -400, 400);
    bad.letters[10] ^= 1;
    CHECK_THROWS_AS(normalize(phi, 4, 5, bad), Error);
}

TEST_CASE("substitute, shift and minimal period") {
    const auto phi = thue_morse();
    const Qfp z = tm_z(phi);
    const Qfp pz = substitute(phi, z);
    CHECK(relation_offset(phi, pz) == Relation{4, 10});
    const Window zw = materialize(phi, z, -300, 300);
    const Window img = phi.apply(zw);
    CHECK(materialize(phi, pz, -500, 500) == img.slice(-500, 500));
    CHECK(shift(shift(z, 3), -5) == shift(z, -2));
    CHECK(minimal_period(phi, z) == 4);
    const auto a = corpus_entry("constant").phi;
    CHECK(minimal_period(a, Qfp{enumerate_seeds(a, 3)[0], 0}) == 1);
}

TEST_CASE("equality and dedup") {
    const auto phi = thue_morse();
    const Qfp z = tm_z(phi);
    CHECK(is_equal(phi, z, shift(z, 0)));
    const Qfp b01 = parse_seed(phi, "bridge b=0 a=1 m=2");
    const Qfp b10 = parse_seed(phi, "bridge b=1 a=0 m=2");
    CHECK_FALSE(is_equal(phi, b01, b10));
    const Qfp b00 = parse_seed(phi, "bridge b=0 a=0 m=2");
    const Qfp b00_4 = parse_seed(phi, "bridge b=0 a=0 m=4");
    CHECK(is_equal(phi, b00, b00_4));
    const auto groups = dedup(phi, {b00, b01, b00_4, b10});
    CHECK(groups.size() == 3);
    CHECK(groups[0].size() == 2);
}

TEST_CASE("shift periods") {
    const auto a = corpus_entry("constant").phi;
    CHECK(shift_period(a, Qfp{enumerate_seeds(a, 1)[0], 0}, 10) == std::int64_t{1});
    const auto phi = thue_morse();
    CHECK_FALSE(shift_period(phi, tm_z(phi), default_period_bound(phi, 4)).has_value());
}

TEST_CASE("seed text format") {
    const auto phi = thue_morse();
    const Qfp z = parse_seed(phi, "qfp m=4 form=interior a=0 i=5 shift=2");
    CHECK(render_seed(phi.alphabet(), z) == "qfp m=4 form=interior a=0 i=5 shift=2");
    CHECK(parse_seed(phi, render_seed(phi.alphabet(), z)) == z);
    CHECK(parse_seed(phi, "interior a=0 i=5 t=2", 4u) == z);
    CHECK_THROWS_AS(parse_seed(phi, "interior a=0 i=4 m=4"), Error);  // phi^4(0)[4] = 1
    CHECK_THROWS_AS(parse_seed(phi, "bridge b=0 a=1 m=1"), Error);
    CHECK_THROWS_AS(parse_seed(phi, "interior a=2 i=1 m=1"), Error);
}
