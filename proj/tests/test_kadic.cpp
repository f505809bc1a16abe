#include <doctest.h>

#include "qfix/error.hpp"
#include "qfix/kadic.hpp"
#include "support.hpp"

using namespace qfix;

TEST_CASE("addresses of relations") {
    CHECK(from_relation(5, 4, 2) == KAdicRational(-1, 3, 2));
    CHECK(from_relation(0, 3, 2) == KAdicRational(0, 1, 2));
    CHECK(from_relation(1, 1, 2) == KAdicRational(-1, 1, 2));
    CHECK(render(from_relation(5, 4, 2)) == "-1/3 (base 2)");
    CHECK(render_fraction(KAdicRational(4, 2, 3)) == "2");
}

TEST_CASE("expansions") {
    const auto e = expansion(KAdicRational(-1, 3, 2));
    CHECK(e.pre.empty());
    CHECK(e.cycle == std::vector<unsigned>{1, 0});
    CHECK(render(e) == "pre= cyc=10");
    CHECK(render(expansion(KAdicRational(0, 1, 2))) == "pre= cyc=0");
    CHECK(render(expansion(KAdicRational(-1, 1, 2))) == "pre= cyc=1");
    CHECK(render(expansion(KAdicRational(2, 3, 2))) == "pre=01 cyc=10");
    CHECK_THROWS_AS(KAdicRational(1, 2, 2), Error);
}

TEST_CASE("expansions agree with long division") {
    for (unsigned k : {2u, 3u, 5u, 10u, 12u})
        for (long long q = 1; q <= 40; ++q) {
            if (std::gcd(q, static_cast<long long>(k)) != 1) continue;
            for (long long p = -60; p <= 60; ++p) {
                const KAdicRational r(p, q, k);
                const auto d = expansion(r);
                const auto ref = oracle::kadic_digits(p, q, k, 80);
                for (std::size_t i = 0; i < ref.size(); ++i) REQUIRE(d.digit(i) == ref[i]);
                CHECK(from_expansion(d) == r);
                CHECK(d.canonical() == d);
            }
        }
}

TEST_CASE("arithmetic") {
    const KAdicRational z(-1, 3, 2);
    CHECK(add_one(z) == KAdicRational(2, 3, 2));
    KAdicRational y = z;
    for (int i = 0; i < 4; ++i) y = times_k(y);
    CHECK(add_integer(y, 5) == z);
    CHECK(negate(KAdicRational(0, 1, 7)) == KAdicRational(0, 1, 7));
    CHECK(add(KAdicRational(1, 3, 2), KAdicRational(1, 5, 2)) == KAdicRational(8, 15, 2));
    CHECK_THROWS_AS(add(KAdicRational(1, 3, 2), KAdicRational(1, 3, 5)), Error);
}

TEST_CASE("digit renderings for large bases") {
    const auto d = expansion(KAdicRational(-1, 1, 12));
    CHECK(render(d) == "pre= cyc=11");
    CHECK(render(expansion(KAdicRational(-13, 1, 12))) == "pre=11,10 cyc=11");
}
